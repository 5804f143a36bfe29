//! Telescoping certificates checked as polynomial identities in `(a, k)`.
//!
//! An identity is a list of hypergeometric terms
//! `coeff(a,k) * (-1)^k? * binom(a+da, k+dk)^power` that must sum to zero.
//! When every term carries the same power, dividing by
//! `(-1)^k binom(a,k)^power` turns it into a rational-function identity,
//! decided by expanding the cross-multiplied numerator. A candidate that
//! mixes powers is not rational after division; it is decided by exact
//! evaluation, which can refute but never prove it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub type IntPoly = MultiPoly<BigInt>;
pub type IntRatFunc = RatFunc<BigInt>;

fn c(n: i64) -> IntPoly {
    IntPoly::constant(n.into())
}

fn a() -> IntPoly {
    IntPoly::a()
}

fn k() -> IntPoly {
    IntPoly::k()
}

fn rf(num: IntPoly, den: IntPoly) -> IntRatFunc {
    IntRatFunc::new(num, den)
}

fn poly(p: IntPoly) -> IntRatFunc {
    IntRatFunc::from_poly(p)
}

/// `poch(z, n) = z(z+1)...(z+n-1)`, and `1/((z-1)...(z-|n|))` for `n < 0`.
fn poch(z: &IntPoly, n: i64) -> IntRatFunc {
    let mut prod = IntPoly::one();
    if n >= 0 {
        for i in 0..n {
            prod = prod * (z + &c(i));
        }
        poly(prod)
    } else {
        for i in 1..=-n {
            prod = prod * (z - &c(i));
        }
        rf(IntPoly::one(), prod)
    }
}

/// `binom(a+da, k+dk) / binom(a, k)` as a rational function.
pub fn shift_quotient(da: i64, dk: i64) -> Result<IntRatFunc> {
    if da.abs() > 2 || dk.abs() > 2 {
        return Err(Error::UnsupportedShift(da, dk));
    }
    let a1 = a() + c(1);
    let k1 = k() + c(1);
    let ak1 = a() - k() + c(1);
    Ok(poch(&a1, da) / poch(&k1, dk) / poch(&ak1, da - dk))
}

/// Exact value of a rational function at a rational point.
pub fn numeric_probe(f: &IntRatFunc, a0: &BigRational, k0: &BigRational) -> Result<BigRational> {
    f.eval(a0, k0)
}

/// `coeff(a,k) * (-1)^k [if alternating] * binom(a+da, k+dk)^power`.
#[derive(Debug, Clone)]
pub struct HyperTerm {
    pub coeff: IntRatFunc,
    pub alternating: bool,
    pub da: i64,
    pub dk: i64,
    pub power: u32,
}

impl HyperTerm {
    pub fn new(coeff: IntRatFunc, alternating: bool, da: i64, dk: i64, power: u32) -> Self {
        HyperTerm { coeff, alternating, da, dk, power }
    }

    /// The same term with `k` replaced by `k+1`.
    pub fn shift_k(&self) -> Self {
        let mut coeff = self.coeff.shift(BigInt::zero(), BigInt::one());
        if self.alternating {
            coeff = -coeff;
        }
        HyperTerm { coeff, dk: self.dk + 1, ..self.clone() }
    }

    pub fn negate(&self) -> Self {
        HyperTerm { coeff: -&self.coeff, ..self.clone() }
    }

    /// Exact value at a rational `a` and integer `k`.
    fn value_at(&self, a0: &BigRational, k0: i64) -> Result<BigRational> {
        let kq = BigRational::from_integer(k0.into());
        let mut v = self.coeff.eval(a0, &kq)?;
        if self.alternating && k0.rem_euclid(2) == 1 {
            v = -v;
        }
        let shifted = a0 + BigRational::from_integer(self.da.into());
        let b = binom_exact(&shifted, k0 + self.dk);
        Ok(v * num_traits::pow(b, self.power as usize))
    }

    /// The term at a fixed integer `k0`, as a rational function of `a`.
    fn at_k(&self, k0: i64) -> IntRatFunc {
        let mut v = self.coeff.substitute(&a(), &c(k0));
        if self.alternating && k0.rem_euclid(2) == 1 {
            v = -v;
        }
        let j = k0 + self.dk;
        let b = if j < 0 {
            IntRatFunc::zero()
        } else {
            let x = a() + c(self.da);
            let mut num = IntPoly::one();
            let mut fact = BigInt::one();
            for i in 0..j {
                num = num * (&x - &c(i));
                fact *= i + 1;
            }
            rf(num, IntPoly::constant(fact))
        };
        v * b.pow(self.power as i32)
    }
}

/// `x(x-1)...(x-j+1)/j!`; zero for `j < 0`.
pub fn binom_exact(x: &BigRational, j: i64) -> BigRational {
    if j < 0 {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    for i in 0..j {
        acc = acc * (x - BigRational::from_integer(i.into())) / BigRational::from_integer((i + 1).into());
    }
    acc
}

/// Terms summing to zero, plus optional base cases: at each listed `k0`
/// the given terms must also vanish identically in `a`.
#[derive(Debug, Clone)]
pub struct Identity {
    pub terms: Vec<HyperTerm>,
    pub base_cases: Vec<(i64, Vec<HyperTerm>)>,
}

impl Identity {
    pub fn new(terms: Vec<HyperTerm>) -> Self {
        Identity { terms, base_cases: Vec::new() }
    }

    /// Exact residual of the main identity at `(a0, k0)`.
    pub fn residual(&self, a0: &BigRational, k0: i64) -> Result<BigRational> {
        let mut s = BigRational::zero();
        for t in &self.terms {
            s += t.value_at(a0, k0)?;
        }
        Ok(s)
    }

    fn uniform(&self) -> bool {
        let first = &self.terms[0];
        self.terms
            .iter()
            .all(|t| t.power == first.power && t.alternating == first.alternating)
    }

    /// Sum of the terms divided by `(-1)^k binom(a,k)^power`.
    pub fn reduced(&self) -> Result<IntRatFunc> {
        let mut total = IntRatFunc::zero();
        for t in &self.terms {
            let q = shift_quotient(t.da, t.dk)?.pow(t.power as i32);
            total = total + &t.coeff * &q;
        }
        Ok(total)
    }

    pub fn decide(&self) -> Result<Verdict> {
        for (k0, terms) in &self.base_cases {
            let mut s = IntRatFunc::zero();
            for t in terms {
                s = s + t.at_k(*k0);
            }
            if !s.is_zero() {
                return Ok(Verdict::Refuted);
            }
        }
        if self.uniform() {
            return Ok(if self.reduced()?.is_zero() { Verdict::Verified } else { Verdict::Refuted });
        }
        for (num, den) in [(1, 3), (-2, 7), (5, 2), (11, 5)] {
            let a0 = BigRational::new(num.into(), den.into());
            for k0 in 0..6 {
                if !self.residual(&a0, k0)?.is_zero() {
                    return Ok(Verdict::Refuted);
                }
            }
        }
        Ok(Verdict::Unresolved)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    /// Agreed at every probe but could not be proved symbolically.
    Unresolved,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Unresolved => "unresolved",
        }
    }
}

/// One candidate identity of a certificate.
#[derive(Debug, Clone)]
pub struct Reading {
    pub name: &'static str,
    pub identity: Identity,
}

type Builder = Box<dyn Fn(&[BigInt]) -> Vec<Reading> + Send + Sync>;

/// A named certificate built from a coefficient template; mutation testing
/// perturbs the template one coefficient at a time.
pub struct Certificate {
    pub id: String,
    pub description: &'static str,
    /// Every reading must hold (`All`) or at least one (`Any`).
    pub mode: Mode,
    template: Vec<BigInt>,
    build: Builder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    All,
    Any,
}

#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub id: String,
    pub readings: Vec<(&'static str, Verdict)>,
    pub verified: bool,
}

impl Certificate {
    pub fn readings(&self) -> Vec<Reading> {
        (self.build)(&self.template)
    }

    pub fn template(&self) -> &[BigInt] {
        &self.template
    }

    fn judge(&self, coeffs: &[BigInt]) -> Result<CertificateReport> {
        let mut readings = Vec::new();
        for r in (self.build)(coeffs) {
            readings.push((r.name, r.identity.decide()?));
        }
        let ok = |v: &(&str, Verdict)| v.1 == Verdict::Verified;
        let verified = match self.mode {
            Mode::All => readings.iter().all(ok),
            Mode::Any => readings.iter().any(ok),
        };
        Ok(CertificateReport { id: self.id.clone(), readings, verified })
    }

    pub fn report(&self) -> Result<CertificateReport> {
        self.judge(&self.template)
    }

    pub fn verify(&self) -> Result<bool> {
        Ok(self.report()?.verified)
    }

    /// Outcome of each single-coefficient `+1` mutation (all should be `false`).
    pub fn mutation_outcomes(&self) -> Result<Vec<bool>> {
        let mut out = Vec::with_capacity(self.template.len());
        for i in 0..self.template.len() {
            let mut t = self.template.clone();
            t[i] += 1;
            out.push(self.judge(&t)?.verified);
        }
        Ok(out)
    }

    /// Verify against an explicitly supplied template.
    pub fn verify_with(&self, coeffs: &[BigInt]) -> Result<bool> {
        Ok(self.judge(coeffs)?.verified)
    }
}

impl std::fmt::Debug for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Certificate").field("id", &self.id).field("template", &self.template).finish()
    }
}

fn g_pair(g: &HyperTerm) -> [HyperTerm; 2] {
    // - G(a,k+1) + G(a,k)
    [g.shift_k().negate(), g.clone()]
}

fn wz_f(t: &[BigInt]) -> Vec<Reading> {
    let p = WZ_F_TEMPLATE.with(t);
    let g = HyperTerm::new(rf(-p, a() + c(1)), true, 1, -1, 2);
    let build = |first_power| {
        let mut terms = vec![
            HyperTerm::new(poly(a() + c(2)), true, 2, 0, first_power),
            HyperTerm::new(poly((a() + c(1)) * c(4)), true, 0, 0, 2),
        ];
        terms.extend(g_pair(&g));
        Identity::new(terms)
    };
    vec![
        Reading { name: "squared", identity: build(2) },
        Reading { name: "printed", identity: build(1) },
    ]
}

fn wz_g(t: &[BigInt]) -> Vec<Reading> {
    let p = WZ_G_TEMPLATE.with(t);
    let a1 = a() + c(1);
    let g = HyperTerm::new(rf(-((a() + c(2)) * p), &a1 * &a1), true, 1, -1, 2);
    let mut terms = vec![
        HyperTerm::new(poly(&a1 * &(a() + c(2) - k() * c(2))), true, 2, 0, 2),
        HyperTerm::new(poly((a() + c(2)) * c(4) * (a() - k() * c(2))), true, 0, 0, 2),
    ];
    terms.extend(g_pair(&g));
    vec![Reading { name: "identity", identity: Identity::new(terms) }]
}

fn wz_c(t: &[BigInt]) -> Vec<Reading> {
    let p = WZ_C_TEMPLATE.with(t);
    let g = HyperTerm::new(rf(p, (a() + c(1) - k()).pow(3)), false, 0, 0, 3);
    let mut terms = vec![
        HyperTerm::new(poly(a() - k() * c(2)), false, 0, 0, 3),
        HyperTerm::new(poly(a() + c(1) - k() * c(2)), false, 1, 0, 3),
    ];
    terms.extend(g_pair(&g));
    vec![Reading { name: "identity", identity: Identity::new(terms) }]
}

fn wz_q(t: &[BigInt]) -> Vec<Reading> {
    let p = WZ_Q_TEMPLATE.with(t);
    let g = HyperTerm::new(rf(p, (a() + c(1) - k()).pow(4)), false, 0, 0, 4);
    let mut terms = vec![
        HyperTerm::new(poly((a() + c(1)) * (a() + c(1) - k() * c(2))), false, 1, 0, 4),
        HyperTerm::new(poly((a() * c(2) + c(1)) * c(2) * (a() - k() * c(2))), false, 0, 0, 4),
    ];
    terms.extend(g_pair(&g));
    vec![Reading { name: "identity", identity: Identity::new(terms) }]
}

/// `sum_j t[j] ((a-2k)/a)^j` over the `j` of the given parity.
fn weight_poly(t: &[BigInt], parity: usize) -> IntRatFunc {
    let w = rf(a() - k() * c(2), a());
    let mut s = IntRatFunc::zero();
    for (j, cj) in t.iter().enumerate() {
        if j % 2 == parity {
            s = s + IntRatFunc::constant(cj.clone()) * w.pow(j as i32);
        }
    }
    s
}

fn lem21(m: u32) -> impl Fn(&[BigInt]) -> Vec<Reading> {
    move |t: &[BigInt]| {
        let two = IntRatFunc::constant(BigInt::from(2).pow(m - 1));
        let odd = Identity::new(vec![
            HyperTerm::new(two.clone(), false, -1, 0, m),
            HyperTerm::new(-&two, false, -1, -1, m),
            HyperTerm::new(-weight_poly(t, 1), false, 0, 0, m),
        ]);
        let even = Identity::new(vec![
            HyperTerm::new(two.clone(), true, -1, 0, m),
            HyperTerm::new(two, true, -1, -1, m),
            HyperTerm::new(-weight_poly(t, 0), true, 0, 0, m),
        ]);
        vec![Reading { name: "odd", identity: odd }, Reading { name: "alternating", identity: even }]
    }
}

/// `R(n+1) - R(n) = binom(a,n)^2 (1-2n/a)^s` and `R(1) = 1`.
fn closed_form(r: HyperTerm, s: i32) -> Identity {
    let w = rf(a() - k() * c(2), a()).pow(s);
    let mut id = Identity::new(vec![
        r.shift_k(),
        r.negate(),
        HyperTerm::new(-w, false, 0, 0, 2),
    ]);
    id.base_cases.push((1, vec![r, HyperTerm::new(IntRatFunc::constant((-1).into()), false, 0, 0, 0)]));
    id
}

fn r32_3(t: &[BigInt]) -> Vec<Reading> {
    let p = R32_3_TEMPLATE.with(t);
    let r = HyperTerm::new(rf(p, a() * (a() - c(1))), false, -1, -1, 2);
    vec![Reading { name: "identity", identity: closed_form(r, 3) }]
}

fn r32_5(t: &[BigInt]) -> Vec<Reading> {
    let p = R32_5_TEMPLATE.with(t);
    let den = a().pow(5) * (a() - c(1)) * (a() - c(2));
    let r = HyperTerm::new(rf(k().pow(2) * p, den), false, 0, 0, 2);
    vec![Reading { name: "identity", identity: closed_form(r, 5) }]
}

/// A polynomial given by its support; templates are coefficient lists in
/// the support's key order.
struct Template(fn() -> IntPoly);

impl Template {
    fn base(&self) -> IntPoly {
        (self.0)()
    }

    fn with(&self, t: &[BigInt]) -> IntPoly {
        self.base().with_coefficients(t)
    }

    fn coefficients(&self) -> Vec<BigInt> {
        self.base().coefficients()
    }
}

const WZ_F_TEMPLATE: Template = Template(|| {
    k().pow(2) * c(2) - (a() * c(6) + c(10)) * k() + (a() + c(2)) * (a() * c(5) + c(7))
});
const WZ_G_TEMPLATE: Template = Template(|| {
    -(k().pow(3) * c(4)) + (a() * c(14) + c(22)) * k().pow(2)
        - (a() + c(2)) * (a() * c(16) + c(20)) * k()
        + (a() + c(1)) * (a().pow(2) * c(5) + a() * c(22) + c(23))
});
const WZ_C_TEMPLATE: Template = Template(|| (a() * c(2) + c(2) - k()) * k().pow(3));
const WZ_Q_TEMPLATE: Template = Template(|| {
    let a1 = a() + c(1);
    k().pow(4) * (k().pow(2) * c(2) - &a1 * &(k() * c(6)) + a1.pow(2) * c(5))
});
const R32_3_TEMPLATE: Template = Template(|| {
    k().pow(2) * c(4) - (a() + c(1)) * k() * c(4) + a() * (a() + c(3))
});
const R32_5_TEMPLATE: Template = Template(|| {
    let n = k;
    (a() - c(1)) * c(16) * n().pow(4) - (a().pow(2) - c(1)) * c(32) * n().pow(3)
        + (a().pow(3) * c(24) + a().pow(2) * c(32) - a() * c(48) - c(16)) * n().pow(2)
        + (-(a().pow(4) * c(8)) - a().pow(3) * c(24) + a().pow(2) * c(16) + a() * c(32)) * n()
        + a().pow(5) + a().pow(4) * c(5) + a().pow(3) * c(2) - a().pow(2) * c(16)
});

fn binomial_row(m: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 0..m {
        let next = row[j as usize].clone() * (m - j) / (j + 1);
        row.push(next);
    }
    row
}

/// Every registered certificate, in a fixed order.
pub fn certificates() -> Vec<Certificate> {
    let mut v = vec![
        Certificate {
            id: "WZ-F".into(),
            description: "f_n(a+2) against f_n(a); squared and printed readings",
            mode: Mode::Any,
            template: WZ_F_TEMPLATE.coefficients(),
            build: Box::new(wz_f),
        },
        Certificate {
            id: "WZ-G".into(),
            description: "g_n(a+2) against g_n(a)",
            mode: Mode::All,
            template: WZ_G_TEMPLATE.coefficients(),
            build: Box::new(wz_g),
        },
        Certificate {
            id: "WZ-C".into(),
            description: "C_n(a+1) against C_n(a)",
            mode: Mode::All,
            template: WZ_C_TEMPLATE.coefficients(),
            build: Box::new(wz_c),
        },
        Certificate {
            id: "WZ-Q".into(),
            description: "Q_n(a+1) against Q_n(a)",
            mode: Mode::All,
            template: WZ_Q_TEMPLATE.coefficients(),
            build: Box::new(wz_q),
        },
    ];
    for m in 1..=6u32 {
        v.push(Certificate {
            id: format!("LEM21-{m}"),
            description: "telescoping of binom(a-1,k)^m, plain and alternating",
            mode: Mode::All,
            template: binomial_row(m),
            build: Box::new(lem21(m)),
        });
    }
    v.push(Certificate {
        id: "R32-3".into(),
        description: "closed form of sum binom(a,k)^2 (1-2k/a)^3",
        mode: Mode::All,
        template: R32_3_TEMPLATE.coefficients(),
        build: Box::new(r32_3),
    });
    v.push(Certificate {
        id: "R32-5".into(),
        description: "closed form of sum binom(a,k)^2 (1-2k/a)^5",
        mode: Mode::All,
        template: R32_5_TEMPLATE.coefficients(),
        build: Box::new(r32_5),
    });
    v
}

pub fn certificate(id: &str) -> Result<Certificate> {
    certificates()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCertificate(id.to_string()))
}

pub fn verify_certificate(id: &str) -> Result<bool> {
    certificate(id)?.verify()
}
