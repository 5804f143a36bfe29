//! Every congruence of the suite as an executable check.
//!
//! The left side of a check is always a sum (or a harmonic/binomial value)
//! computed through `sums` or `padic`; the right side is a closed form built
//! from tables, Fermat quotients and quadratic-form data. The two closures of
//! an entry never call each other.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::env::{sign, Param, PrimeEnv};
use crate::error::Result;
use crate::padic::{PadicValue, RationalArg};
use crate::quadform::{thm56_u, thm59_c, QuadForm};
use crate::sums::{c_p, catalan_sum, f_p, g_p, q_n, q_p, s_p, weighted_sum, SumSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Theorem,
    Lemma,
    Corollary,
    Equation,
    Conjecture,
    CitedResult,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Theorem => "theorem",
            Kind::Lemma => "lemma",
            Kind::Corollary => "corollary",
            Kind::Equation => "equation",
            Kind::Conjecture => "conjecture",
            Kind::CitedResult => "cited-result",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Kind::Theorem,
            Kind::Lemma,
            Kind::Corollary,
            Kind::Equation,
            Kind::Conjecture,
            Kind::CitedResult,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub type Values = Result<Vec<PadicValue>>;

type FixedSide = Box<dyn Fn(&PrimeEnv) -> Values + Send + Sync>;
type ParamSide = Box<dyn Fn(&PrimeEnv, &Param) -> Values + Send + Sync>;
type ParamPredicate = Box<dyn Fn(u64, &Param) -> bool + Send + Sync>;

enum Sides {
    Fixed {
        applies: Box<dyn Fn(u64) -> bool + Send + Sync>,
        lhs: FixedSide,
        rhs: FixedSide,
    },
    Sampled {
        applies: ParamPredicate,
        lhs: ParamSide,
        rhs: ParamSide,
    },
}

/// One registered congruence `lhs ≡ rhs (mod p^t)`. Sides are vectors so a
/// single entry can carry a family (e.g. one congruence per `k`); the check
/// passes when every component does.
pub struct CheckSpec {
    pub id: String,
    pub kind: Kind,
    pub statement: String,
    /// Failures are refutations, reported apart from the suite verdict.
    pub isolated: bool,
    modulus: Box<dyn Fn(u64) -> u32 + Send + Sync>,
    sides: Sides,
}

impl fmt::Debug for CheckSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckSpec").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

impl CheckSpec {
    pub fn is_sampled(&self) -> bool {
        matches!(self.sides, Sides::Sampled { .. })
    }

    pub fn modulus(&self, p: u64) -> u32 {
        (self.modulus)(p)
    }

    /// The hypotheses of the statement. Sampled checks need a parameter.
    pub fn applies(&self, p: u64, param: Option<&Param>) -> bool {
        match (&self.sides, param) {
            (Sides::Fixed { applies, .. }, None) => applies(p),
            (Sides::Sampled { applies, .. }, Some(a)) => a.a.is_integral_at(&BigInt::from(p)) && applies(p, a),
            _ => false,
        }
    }

    pub fn lhs(&self, env: &PrimeEnv, param: Option<&Param>) -> Values {
        match (&self.sides, param) {
            (Sides::Fixed { lhs, .. }, _) => lhs(env),
            (Sides::Sampled { lhs, .. }, Some(a)) => lhs(env, a),
            (Sides::Sampled { .. }, None) => Err(crate::Error::NotApplicable { id: self.id.clone(), p: env.p }),
        }
    }

    pub fn rhs(&self, env: &PrimeEnv, param: Option<&Param>) -> Values {
        match (&self.sides, param) {
            (Sides::Fixed { rhs, .. }, _) => rhs(env),
            (Sides::Sampled { rhs, .. }, Some(a)) => rhs(env, a),
            (Sides::Sampled { .. }, None) => Err(crate::Error::NotApplicable { id: self.id.clone(), p: env.p }),
        }
    }
}

pub fn fixed(
    id: impl Into<String>,
    kind: Kind,
    statement: impl Into<String>,
    applies: impl Fn(u64) -> bool + Send + Sync + 'static,
    t: impl Fn(u64) -> u32 + Send + Sync + 'static,
    lhs: impl Fn(&PrimeEnv) -> Values + Send + Sync + 'static,
    rhs: impl Fn(&PrimeEnv) -> Values + Send + Sync + 'static,
) -> CheckSpec {
    CheckSpec {
        id: id.into(),
        kind,
        statement: statement.into(),
        isolated: kind == Kind::Conjecture,
        modulus: Box::new(t),
        sides: Sides::Fixed { applies: Box::new(applies), lhs: Box::new(lhs), rhs: Box::new(rhs) },
    }
}

pub fn sampled(
    id: impl Into<String>,
    kind: Kind,
    statement: impl Into<String>,
    applies: impl Fn(u64, &Param) -> bool + Send + Sync + 'static,
    t: u32,
    lhs: impl Fn(&PrimeEnv, &Param) -> Values + Send + Sync + 'static,
    rhs: impl Fn(&PrimeEnv, &Param) -> Values + Send + Sync + 'static,
) -> CheckSpec {
    CheckSpec {
        id: id.into(),
        kind,
        statement: statement.into(),
        isolated: kind == Kind::Conjecture,
        modulus: Box::new(move |_| t),
        sides: Sides::Sampled { applies: Box::new(applies), lhs: Box::new(lhs), rhs: Box::new(rhs) },
    }
}

fn one(x: Result<PadicValue>) -> Values {
    x.map(|v| vec![v])
}

fn div(x: PadicValue, y: PadicValue) -> Result<PadicValue> {
    x.checked_div(&y)
}

fn q(n: i64, d: i64) -> RationalArg {
    RationalArg::frac(n, d)
}

/// `sum_{k<n} sign^k binom(a,k)^m (1-2k/a)^s`.
fn ws(env: &PrimeEnv, a: RationalArg, m: u32, s: u32, sgn: i8, n: u64) -> Result<PadicValue> {
    weighted_sum(&SumSpec::new(a, m, s, sgn, n), &env.ctx)
}

/// `sum_{k<n} sign^k binom(a,k)^m (c0 + c1 k)^s`.
#[allow(clippy::too_many_arguments)]
fn wl(env: &PrimeEnv, a: RationalArg, m: u32, s: u32, sgn: i8, n: u64, c0: i64, c1: i64) -> Result<PadicValue> {
    let q = |c: i64| BigRational::from_integer(c.into());
    weighted_sum(&SumSpec::new(a, m, s, sgn, n).linear(q(c0), q(c1)), &env.ctx)
}

fn binomial_row(m: u32) -> Vec<i64> {
    let mut row = vec![1i64];
    for j in 0..m as i64 {
        row.push(row[j as usize] * (m as i64 - j) / (j + 1));
    }
    row
}

/// `sum_j c_j S_j` over the `j` of one parity, with `S_j` the weighted sum of
/// weight power `j`.
fn parity_combination(env: &PrimeEnv, a: &RationalArg, m: u32, parity: u32, sgn: i8, n: u64) -> Result<PadicValue> {
    let mut acc = env.zero();
    for (j, c) in binomial_row(m).into_iter().enumerate() {
        if j as u32 % 2 == parity {
            acc = acc + ws(env, a.clone(), m, j as u32, sgn, n)?.mul_int(c);
        }
    }
    Ok(acc)
}

/// `(1 + p x)`.
fn one_plus_p(env: &PrimeEnv, x: PadicValue) -> PadicValue {
    env.int(1) + env.pp(1) * x
}

/// `2^(p-1)`.
fn two_p1(env: &PrimeEnv) -> Result<PadicValue> {
    env.ipow(2, env.p as i64 - 1)
}

/// `(a - <a>_p) / a`.
fn ratio_ar(env: &PrimeEnv, a: &Param) -> Result<PadicValue> {
    let av = env.rational(&a.a);
    div(&av - env.int(a.r as i64), av)
}

fn hypotheses_not(p: u64, a: &Param, residues: &[i64]) -> bool {
    residues.iter().all(|&r| a.r as i64 != r.rem_euclid(p as i64))
}

/// `y + p/(c y) ...`-style helper: `c1 x + c2 p/x + c3 p^2/x^3` for unit `x`.
fn cd_poly(env: &PrimeEnv, x: i64, c: [(i64, i64); 3], pows: [u32; 3]) -> Result<PadicValue> {
    let xv = env.int(x);
    let t1 = env.frac(c[0].0, c[0].1) * env.pp(pows[0]) * &xv;
    let t2 = div(env.frac(c[1].0, c[1].1) * env.pp(pows[1]), xv.clone())?;
    let t3 = div(env.frac(c[2].0, c[2].1) * env.pp(pows[2]), xv.pow(3)?)?;
    Ok(t1 + t2 + t3)
}

/// The full registry in a fixed order (sorted by id).
pub fn list_checks() -> Vec<CheckSpec> {
    let mut v = Vec::new();
    intro(&mut v);
    section2(&mut v);
    section3(&mut v);
    section4(&mut v);
    section5_sums(&mut v);
    section5_forms(&mut v);
    cited(&mut v);
    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

pub fn find_check(id: &str) -> Option<CheckSpec> {
    list_checks().into_iter().find(|c| c.id == id)
}

fn intro(v: &mut Vec<CheckSpec>) {
    v.push(fixed(
        "VH-11",
        Kind::Equation,
        "sum_{k<p} (4k+1) binom(-1/2,k)^3 ≡ (-1)^((p-1)/2) p (mod p^3), p > 3",
        |p| p > 3,
        |_| 3,
        |env| one(ws(env, q(-1, 2), 3, 1, 1, env.p)),
        |env| one(Ok(env.int(env.eps() * env.p as i64))),
    ));
    v.push(fixed(
        "VH-12",
        Kind::Equation,
        "sum_{k<p} (8k+1) binom(-1/4,k)^3 ≡ -p / (Γ_p(1/4) Γ_p(3/4)) (mod p^3), p ≡ 1 (mod 4)",
        |p| p % 4 == 1,
        |_| 3,
        |env| one(ws(env, q(-1, 4), 3, 1, 1, env.p)),
        |env| {
            let g = env.gamma(&q(1, 4), 3)? * env.gamma(&q(3, 4), 3)?;
            one(div(env.int(-(env.p as i64)), g))
        },
    ));
    v.push(fixed(
        "VH-13",
        Kind::Equation,
        "sum_{k<p} (8k+1) binom(-1/4,k)^4 ≡ p Γ_p(1/2) Γ_p(1/4) / Γ_p(3/4) (mod p^3), p ≡ 1 (mod 4)",
        |p| p % 4 == 1,
        |_| 3,
        |env| one(ws(env, q(-1, 4), 4, 1, 1, env.p)),
        |env| {
            let num = env.pp(1) * env.gamma(&q(1, 2), 3)? * env.gamma(&q(1, 4), 3)?;
            one(div(num, env.gamma(&q(3, 4), 3)?))
        },
    ));
    for m in 3..=12i64 {
        v.push(fixed(
            format!("HE-ZERO-{m:02}"),
            Kind::Theorem,
            format!("sum_{{k<p}} ({}k+1) binom(-1/{m},k)^4 ≡ 0 (mod p^2), p ≡ -1 (mod {m}), p > 3", 2 * m),
            move |p| p > 3 && (p as i64 + 1) % m == 0,
            |_| 2,
            move |env| one(ws(env, q(-1, m), 4, 1, 1, env.p)),
            |env| one(Ok(env.zero())),
        ));
    }
    v.push(fixed(
        "GUO-16",
        Kind::Equation,
        "sum_{k<p} (4k+1)^3 binom(-1/2,k)^3 ≡ -3 (-1)^((p-1)/2) p (mod p^3), p > 3",
        |p| p > 3,
        |_| 3,
        |env| one(ws(env, q(-1, 2), 3, 3, 1, env.p)),
        |env| one(Ok(env.int(-3 * env.eps() * env.p as i64))),
    ));
    v.push(fixed(
        "SUN-17",
        Kind::Equation,
        "sum_{k<p} (4k+1) binom(-1/2,k)^3 ≡ (-1)^((p-1)/2) p + p^3 E_{p-3} (mod p^4), p > 3",
        |p| p > 3,
        |_| 4,
        |env| one(ws(env, q(-1, 2), 3, 1, 1, env.p)),
        |env| one(Ok(env.int(env.eps() * env.p as i64) + env.pp(3) * env.euler(env.p as usize - 3)?)),
    ));
    v.push(sampled(
        "EQ-110",
        Kind::Equation,
        "f_p(a) ≡ (-1)^(r/2) binom(a, r/2) (mod p^2), r = <a>_p even, a ≢ 0",
        |_, a| a.r != 0 && a.r % 2 == 0,
        2,
        |env, a| one(f_p(&a.a, &env.ctx)),
        |env, a| one(Ok(env.binom_q(&a.a, a.r as i64 / 2).mul_int(sign(a.r as i64 / 2)))),
    ));
    v.push(sampled(
        "EQ-111",
        Kind::Equation,
        "f_p(a) ≡ (-1)^((p-r)/2-1) 2(a-r) / (a binom(p-r, (p-r)/2)) (mod p^2), r odd",
        |_, a| a.r % 2 == 1,
        2,
        |env, a| one(f_p(&a.a, &env.ctx)),
        |env, a| {
            let (p, r) = (env.p as i64, a.r as i64);
            let b = env.binom(p - r, (p - r) / 2);
            one(div(ratio_ar(env, a)?.mul_int(2 * sign((p - r) / 2 - 1)), b))
        },
    ));
    v.push(sampled(
        "EQ-112",
        Kind::Equation,
        "sum_{k<p} binom(a,k)^2 (-1)^k (1-2k/a) ≡ (-1)^(r/2) 4^r (a-r)/(a binom(r, r/2)) (mod p^2), r even, a ≢ 0, -1",
        |p, a| a.r % 2 == 0 && hypotheses_not(p, a, &[0, -1]),
        2,
        |env, a| one(ws(env, a.a.clone(), 2, 1, -1, env.p)),
        |env, a| {
            let r = a.r as i64;
            let top = ratio_ar(env, a)? * env.ipow(4, r)?.mul_int(sign(r / 2));
            one(div(top, env.binom(r, r / 2)))
        },
    ));
}

fn section2(v: &mut Vec<CheckSpec>) {
    v.push(sampled(
        "EQ-21",
        Kind::Equation,
        "binom(a-1, p-1)/p ≡ (a-r)/(a p) (1 + p H_r) (mod p^2), a ≢ 0",
        |p, a| hypotheses_not(p, a, &[0]),
        2,
        |env, a| one(div(env.binom_q(&a.plus(-1), env.p as i64 - 1), env.pp(1))),
        |env, a| {
            let ap = env.a_prime(&a.a)?;
            one(Ok(div(ap, env.rational(&a.a))? * one_plus_p(env, env.h(a.r))))
        },
    ));
    for m in 1..=4u32 {
        v.push(sampled(
            format!("THM21-{m}"),
            Kind::Theorem,
            format!(
                "odd-weight and alternating even-weight sums of binom(a,k)^{m} ≡ 2^{} ((a-r)/a)^{m} (1 + {m} p H_r) (mod p^{}), a ≢ 0",
                m - 1,
                m + 2
            ),
            |p, a| hypotheses_not(p, a, &[0]),
            m + 2,
            move |env, a| {
                Ok(vec![
                    parity_combination(env, &a.a, m, 1, 1, env.p)?,
                    parity_combination(env, &a.a, m, 0, -1, env.p)?,
                ])
            },
            move |env, a| {
                let base = ratio_ar(env, a)?.pow(m as i64)?.mul_int(1 << (m - 1));
                let x = base * one_plus_p(env, env.h(a.r).mul_int(m as i64));
                Ok(vec![x.clone(), x])
            },
        ));
    }
    // a = -1/2 specializations: binom(2k,k)/(-4)^k = binom(-1/2,k), 1-2k/a = 4k+1
    let h = q(-1, 2);
    v.push(fixed(
        "COR21-1",
        Kind::Corollary,
        "sum_{k<p} (4k+1) binom(2k,k)/(-4)^k ≡ (3 - 2^p) p (mod p^3)",
        |p| p >= 3,
        |_| 3,
        {
            let h = h.clone();
            move |env| one(ws(env, h.clone(), 1, 1, 1, env.p))
        },
        |env| one(Ok((env.int(3) - env.ipow(2, env.p as i64)?) * env.pp(1))),
    ));
    v.push(fixed(
        "COR21-2",
        Kind::Corollary,
        "sum (4k+1) binom(2k,k)^2/16^k ≡ sum (8k^2+4k+1) binom(2k,k)^2/(-16)^k ≡ (5 - 2^(p+1)) p^2 (mod p^4)",
        |p| p >= 3,
        |_| 4,
        {
            let h = h.clone();
            move |env| {
                let first = ws(env, h.clone(), 2, 1, 1, env.p)?;
                let second = div(ws(env, h.clone(), 2, 0, -1, env.p)? + ws(env, h.clone(), 2, 2, -1, env.p)?, env.int(2))?;
                Ok(vec![first, second])
            }
        },
        |env| {
            let x = (env.int(5) - env.ipow(2, env.p as i64 + 1)?) * env.pp(2);
            Ok(vec![x.clone(), x])
        },
    ));
    v.push(fixed(
        "COR21-3",
        Kind::Corollary,
        "sum (3(4k+1)+(4k+1)^3) binom(2k,k)^3/(-64)^k ≡ sum (1+3(4k+1)^2) binom(2k,k)^3/64^k ≡ 4(7 - 6·2^(p-1)) p^3 (mod p^5)",
        |p| p >= 3,
        |_| 5,
        {
            let h = h.clone();
            move |env| {
                let first = ws(env, h.clone(), 3, 1, 1, env.p)?.mul_int(3) + ws(env, h.clone(), 3, 3, 1, env.p)?;
                let second = ws(env, h.clone(), 3, 0, -1, env.p)? + ws(env, h.clone(), 3, 2, -1, env.p)?.mul_int(3);
                Ok(vec![first, second])
            }
        },
        |env| {
            let x = (env.int(7) - two_p1(env)?.mul_int(6)).mul_int(4) * env.pp(3);
            Ok(vec![x.clone(), x])
        },
    ));
    v.push(fixed(
        "COR21-4",
        Kind::Corollary,
        "4 sum ((4k+1)+(4k+1)^3) binom(2k,k)^4/256^k ≡ sum (1+6(4k+1)^2+(4k+1)^4) binom(2k,k)^4/(-256)^k ≡ 8(9 - 2^(p+2)) p^4 (mod p^6)",
        |p| p >= 3,
        |_| 6,
        move |env| {
            let first = (ws(env, h.clone(), 4, 1, 1, env.p)? + ws(env, h.clone(), 4, 3, 1, env.p)?).mul_int(4);
            let second = ws(env, h.clone(), 4, 0, -1, env.p)?
                + ws(env, h.clone(), 4, 2, -1, env.p)?.mul_int(6)
                + ws(env, h.clone(), 4, 4, -1, env.p)?;
            Ok(vec![first, second])
        },
        |env| {
            let x = (env.int(9) - env.ipow(2, env.p as i64 + 2)?).mul_int(8) * env.pp(4);
            Ok(vec![x.clone(), x])
        },
    ));
}

fn section3(v: &mut Vec<CheckSpec>) {
    v.push(sampled(
        "LEM31",
        Kind::Lemma,
        "f_p(a) ≡ -(a+2)/(4(a+1)) f_p(a+2), or (p-(a+2))/2 when a ≡ -2 (mod p^2), a ≢ -1",
        |p, a| hypotheses_not(p, a, &[-1]),
        2,
        |env, a| one(f_p(&a.a, &env.ctx)),
        |env, a| {
            let a2 = env.rational(&a.plus(2));
            if a.r == env.p - 2 {
                return one(div(env.pp(1) - a2, env.int(2)));
            }
            let c = div(-a2, env.rational(&a.plus(1)).mul_int(4))?;
            one(Ok(c * f_p(&a.plus(2), &env.ctx)?))
        },
    ));
    v.push(sampled(
        "LEM32",
        Kind::Lemma,
        "g_p(a) ≡ -(a+1)/(4(a+2)) g_p(a+2), or 1/2 + (a+2)(-1/2 + q_p(2)) when a ≡ -2 (mod p^2), a ≢ -1",
        |p, a| hypotheses_not(p, a, &[-1]),
        2,
        |env, a| one(g_p(&a.a, &env.ctx)),
        |env, a| {
            let a2 = env.rational(&a.plus(2));
            if a.r == env.p - 2 {
                return one(Ok(env.frac(1, 2) + a2 * (env.frac(-1, 2) + env.q(2)?)));
            }
            let c = div(-env.rational(&a.plus(1)), a2.mul_int(4))?;
            one(Ok(c * g_p(&a.plus(2), &env.ctx)?))
        },
    ));
    v.push(sampled(
        "EQ-31",
        Kind::Equation,
        "f_p(a) ≡ (-1)^(r/2) binom(r, r/2) (1 + (a-r)(H_r - H_{r/2})) (mod p^2), r even",
        |_, a| a.r % 2 == 0,
        2,
        |env, a| one(f_p(&a.a, &env.ctx)),
        |env, a| {
            let r = a.r as i64;
            let d = env.rational(&a.plus(-r)) * (env.h(a.r) - env.h(a.r / 2));
            one(Ok(env.binom(r, r / 2).mul_int(sign(r / 2)) * (env.int(1) + d)))
        },
    ));
    // a = 1/2: binom(2k,k)^2 / (16^k (2k-1)^2) = binom(1/2,k)^2
    v.push(fixed(
        "THM32a",
        Kind::Theorem,
        "sum_{k<p} binom(2k,k)^2/((-16)^k (2k-1)^2) ≡ (-1)^((p-1)/4) p/x (mod p^2), p = x^2+4y^2, x ≡ 1 (mod 4)",
        |p| p % 4 == 1,
        |_| 2,
        |env| one(f_p(&q(1, 2), &env.ctx)),
        |env| {
            let x = env.rep(QuadForm::F1)?.x;
            one(div(env.pp(1).mul_int(sign((env.p as i64 - 1) / 4)), env.int(x)))
        },
    ));
    v.push(fixed(
        "THM32b",
        Kind::Theorem,
        "sum_{k<p} binom(2k,k)^2/((-16)^k (2k-1)^2) ≡ (-1)^((p+1)/4) (2p+3-2^(p-1)) binom((p-1)/2, (p-3)/4) (mod p^2), p ≡ 3 (mod 4)",
        |p| p % 4 == 3,
        |_| 2,
        |env| one(f_p(&q(1, 2), &env.ctx)),
        |env| {
            let p = env.p as i64;
            let c = env.int(2 * p + 3) - two_p1(env)?;
            one(Ok(c * env.binom((p - 1) / 2, (p - 3) / 4).mul_int(sign((p + 1) / 4))))
        },
    ));
    v.push(fixed(
        "THM32c",
        Kind::Theorem,
        "sum_{k<p} binom(2k,k)^2/((-16)^k (2k-1)) ≡ (1/2)(-1)^((p-3)/4)(2p+3-2^(p-1)) B - (-1)^((p-3)/4) p/B (mod p^2), B = binom((p-1)/2, (p-3)/4), p ≡ 3 (mod 4)",
        |p| p % 4 == 3,
        |_| 2,
        |env| one(wl(env, q(1, 2), 2, 1, -1, env.p, -1, 2)),
        |env| {
            let p = env.p as i64;
            let s = sign((p - 3) / 4);
            let b = env.binom((p - 1) / 2, (p - 3) / 4);
            let first = div((env.int(2 * p + 3) - two_p1(env)?) * &b, env.int(2))?.mul_int(s);
            let second = div(env.pp(1).mul_int(s), b)?;
            one(Ok(first - second))
        },
    ));
    v.push(sampled(
        "THM33-odd",
        Kind::Theorem,
        "sum_{k<p} binom(a,k)^2 (-1)^k (1-2k/a) ≡ (a+1)/a (-1)^((p-r)/2) 2^(2r+1) binom(p-2-r, (p-2-r)/2) (1 - 2p q_p(2) + (p+a-r)(H_{r+1} - H_{(r+1)/2})) (mod p^2), r odd, a ≢ 0, -1",
        |p, a| a.r % 2 == 1 && hypotheses_not(p, a, &[0, -1]),
        2,
        |env, a| one(ws(env, a.a.clone(), 2, 1, -1, env.p)),
        |env, a| {
            let (p, r) = (env.p as i64, a.r as i64);
            let av = env.rational(&a.a);
            let lead = div(env.rational(&a.plus(1)), av)?;
            let b = env.binom(p - 2 - r, (p - 2 - r) / 2);
            let tail = env.int(1) - env.pp(1) * env.q(2)?.mul_int(2)
                + env.rational(&a.plus(p - r)) * (env.h(a.r + 1) - env.h(a.r.div_ceil(2)));
            one(Ok(lead * env.ipow(2, 2 * r + 1)?.mul_int(sign((p - r) / 2)) * b * tail))
        },
    ));
    v.push(fixed(
        "COR31",
        Kind::Corollary,
        "sum_{k<p} binom(-1/3,k)^2 (-1)^k (6k+1) ≡ (-1)^((p-1)/2) p / (2^((p-1)/3) binom((p-1)/3, (p-1)/6)) if p ≡ 1 (mod 3), (-1)^((p-5)/6) 2^((p+4)/3) binom((p-5)/3, (p-5)/6)(4-p-2^p) if p ≡ 2 (mod 3) (mod p^2)",
        |p| p > 3,
        |_| 2,
        |env| one(ws(env, q(-1, 3), 2, 1, -1, env.p)),
        |env| {
            let p = env.p as i64;
            if p % 3 == 1 {
                let den = env.ipow(2, (p - 1) / 3)? * env.binom((p - 1) / 3, (p - 1) / 6);
                one(div(env.int(env.eps() * p), den))
            } else {
                let b = env.binom((p - 5) / 3, (p - 5) / 6);
                let c = env.int(4 - p) - env.ipow(2, p)?;
                one(Ok(env.ipow(2, (p + 4) / 3)?.mul_int(sign((p - 5) / 6)) * b * c))
            }
        },
    ));
    for s in [3u32, 5] {
        v.push(sampled(
            format!("R32-ZERO-{s}"),
            Kind::Theorem,
            format!("sum_{{k<p}} binom(a,k)^2 (1-2k/a)^{s} ≡ 0 (mod p^2), a ≢ 0, 1, 2"),
            |p, a| hypotheses_not(p, a, &[0, 1, 2]),
            2,
            move |env, a| one(ws(env, a.a.clone(), 2, s, 1, env.p)),
            |env, _| one(Ok(env.zero())),
        ));
    }
    for r in 0..=4u32 {
        v.push(sampled(
            format!("R32-CONJ-{r}"),
            Kind::Conjecture,
            format!("sum_{{k<p}} binom(a,k)^2 (1-2k/a)^{} ≡ 0 (mod p^2), <a>_p > {r}", 2 * r + 1),
            move |_, a| a.r > r as u64,
            2,
            move |env, a| one(ws(env, a.a.clone(), 2, 2 * r + 1, 1, env.p)),
            |env, _| one(Ok(env.zero())),
        ));
    }
}

fn section4(v: &mut Vec<CheckSpec>) {
    v.push(sampled(
        "LEM41",
        Kind::Lemma,
        "C_p(a) + C_p(a+1) ≡ 2(a-r)^3/(r+1)^2 (mod p^4), a ≢ -1",
        |p, a| hypotheses_not(p, a, &[-1]),
        4,
        |env, a| one(Ok(c_p(&a.a, &env.ctx)? + c_p(&a.plus(1), &env.ctx)?)),
        |env, a| {
            let d = env.rational(&a.plus(-(a.r as i64)));
            one(div(d.pow(3)?.mul_int(2), env.int(a.r as i64 + 1).pow(2)?))
        },
    ));
    v.push(sampled(
        "THM41a",
        Kind::Theorem,
        "sum_{k<p} (1-2k/a) binom(a,k)^3 ≡ (-1)^r (a-r)/a + (a-r)^3/a E_{p-3}(-a) (mod p^4), a ≢ 0",
        |p, a| hypotheses_not(p, a, &[0]),
        4,
        |env, a| one(ws(env, a.a.clone(), 3, 1, 1, env.p)),
        |env, a| {
            let av = env.rational(&a.a);
            let d = env.rational(&a.plus(-(a.r as i64)));
            let e = env.euler_poly(env.p as usize - 3, &a.times(-1))?;
            let x = ratio_ar(env, a)?.mul_int(sign(a.r as i64)) + div(d.pow(3)? * e, av)?;
            one(Ok(x))
        },
    ));
    v.push(sampled(
        "THM41b",
        Kind::Theorem,
        "sum_{k<p} (1-2k/a)^3 binom(a,k)^3 ≡ -3(-1)^r (a-r)/a + ((a-r)/a)^3 (4 - 3a^2 E_{p-3}(-a)) (mod p^4), a ≢ 0",
        |p, a| hypotheses_not(p, a, &[0]),
        4,
        |env, a| one(ws(env, a.a.clone(), 3, 3, 1, env.p)),
        |env, a| {
            let av = env.rational(&a.a);
            let ra = ratio_ar(env, a)?;
            let e = env.euler_poly(env.p as usize - 3, &a.times(-1))?;
            let x = ra.mul_int(-3 * sign(a.r as i64)) + ra.pow(3)? * (env.int(4) - av.pow(2)? * e.mul_int(3));
            one(Ok(x))
        },
    ));
    let branch = |env: &PrimeEnv, one_mod3: PadicValue, two_mod3: PadicValue| {
        if env.p % 3 == 1 {
            one_mod3
        } else {
            two_mod3
        }
    };
    let specs: [(&str, &str, i64, i64, u32); 7] = [
        ("THM42-1", "sum (4k+1)^3 binom(2k,k)^3/(-64)^k ≡ -3(-1)^((p-1)/2) p + p^3 (4 - 3E_{p-3})", -1, 2, 3),
        ("THM42-2", "sum (4k-1) binom(2k,k)^3/((-64)^k (2k-1)^3) ≡ (-1)^((p-1)/2) p + p^3 (E_{p-3} - 2)", 1, 2, 1),
        ("THM42-3", "sum (4k-1)^3 binom(2k,k)^3/((-64)^k (2k-1)^3) ≡ -3(-1)^((p-1)/2) p + p^3 (2 - 3E_{p-3})", 1, 2, 3),
        ("THM42-4", "sum (12k+1) binom(-1/6,k)^3 ≡ (-1)^((p-1)/2) p + (5/9) p^3 E_{p-3} or 5(-1)^((p-1)/2) p + (625/9) p^3 E_{p-3}", -1, 6, 1),
        ("THM42-5", "sum (12k+1)^3 binom(-1/6,k)^3 ≡ -3(-1)^((p-1)/2) p + p^3 (4 - (5/3)E_{p-3}) or -15(-1)^((p-1)/2) p + p^3 (500 - (625/3)E_{p-3})", -1, 6, 3),
        ("THM42-6", "sum (6k+1) binom(-1/3,k)^3 ≡ p + p^3 U_{p-3} or -2p + 8p^3 U_{p-3}", -1, 3, 1),
        ("THM42-7", "sum (6k+1)^3 binom(-1/3,k)^3 ≡ -3p + p^3 (4 - 3U_{p-3}) or 6p + 8p^3 (4 - 3U_{p-3})", -1, 3, 3),
    ];
    for (i, (id, statement, num, den, s)) in specs.into_iter().enumerate() {
        v.push(fixed(
            id,
            Kind::Theorem,
            format!("{statement} (mod p^4), p > 3; branches by p mod 3"),
            |p| p > 3,
            |_| 4,
            move |env| one(ws(env, q(num, den), 3, s, 1, env.p)),
            move |env| {
                let p = env.pp(1);
                let p3 = env.pp(3);
                let ep = env.eps();
                let n = env.p as usize - 3;
                let x = match i {
                    0 => p.mul_int(-3 * ep) + p3 * (env.int(4) - env.euler(n)?.mul_int(3)),
                    1 => p.mul_int(ep) + p3 * (env.euler(n)? - env.int(2)),
                    2 => p.mul_int(-3 * ep) + p3 * (env.int(2) - env.euler(n)?.mul_int(3)),
                    3 => {
                        let e = env.euler(n)?;
                        branch(
                            env,
                            p.mul_int(ep) + &p3 * env.frac(5, 9) * &e,
                            p.mul_int(5 * ep) + &p3 * env.frac(625, 9) * &e,
                        )
                    }
                    4 => {
                        let e = env.euler(n)?;
                        branch(
                            env,
                            p.mul_int(-3 * ep) + &p3 * (env.int(4) - env.frac(5, 3) * &e),
                            p.mul_int(-15 * ep) + &p3 * (env.int(500) - env.frac(625, 3) * &e),
                        )
                    }
                    5 => {
                        let u = env.useq(n)?;
                        branch(env, &p + &p3 * &u, p.mul_int(-2) + p3.mul_int(8) * &u)
                    }
                    _ => {
                        let w = env.int(4) - env.useq(n)?.mul_int(3);
                        branch(env, p.mul_int(-3) + &p3 * &w, p.mul_int(6) + p3.mul_int(8) * &w)
                    }
                };
                one(Ok(x))
            },
        ));
    }
}

fn section5_sums(v: &mut Vec<CheckSpec>) {
    v.push(sampled(
        "LEM51",
        Kind::Lemma,
        "(a+1) Q_p(a+1) ≡ -2(2a+1) Q_p(a) (mod p^4), a ≢ -1",
        |p, a| hypotheses_not(p, a, &[-1]),
        4,
        |env, a| one(Ok(env.rational(&a.plus(1)) * q_p(&a.plus(1), &env.ctx)?)),
        |env, a| {
            let c = env.rational(&a.times(2)) + env.int(1);
            one(Ok(c.mul_int(-2) * q_p(&a.a, &env.ctx)?))
        },
    ));
    v.push(sampled(
        "THM51-low",
        Kind::Theorem,
        "Q_p(a) ≡ a'p (-1)^r binom(2r,r) (1 + 2a'p(H_{2r}-H_r) + a'^2 p^2 (2(H_{2r}-H_r)^2 - 2H^(2)_{2r} + H^(2)_r)) (mod p^4), r < p/2, a ≢ 0, -1",
        |p, a| 2 * a.r < p && hypotheses_not(p, a, &[0, -1]),
        4,
        |env, a| one(q_p(&a.a, &env.ctx)),
        |env, a| {
            let r = a.r;
            let ap = env.a_prime(&a.a)?;
            let d = env.h(2 * r) - env.h(r);
            let sq = d.pow(2)?.mul_int(2) - env.h2(2 * r).mul_int(2) + env.h2(r);
            let inner = env.int(1) + env.pp(1) * &ap * d.mul_int(2) + env.pp(2) * ap.pow(2)? * sq;
            one(Ok(ap * env.pp(1) * env.binom(2 * r as i64, r as i64).mul_int(sign(r as i64)) * inner))
        },
    ));
    v.push(sampled(
        "THM51-high",
        Kind::Theorem,
        "Q_p(a) ≡ a'(2a'+1)/(2a+1) p^2 (-1)^((p-1)/2) (-16)^r / binom(2j, j) (1 + p((2a'+1)/(2a+1) + (2a'-1) q_p(2) - (2a'+1)/2 (H_{p-1-r} - H_{j-1}))) (mod p^4), j = r-(p-1)/2, r > p/2, a ≢ -1",
        |p, a| 2 * a.r > p && hypotheses_not(p, a, &[0, -1]),
        4,
        |env, a| one(q_p(&a.a, &env.ctx)),
        |env, a| {
            let (p, r) = (env.p, a.r);
            let j = r - (p - 1) / 2;
            let ap = env.a_prime(&a.a)?;
            let two_a1 = env.rational(&a.times(2)) + env.int(1);
            let two_ap1 = ap.mul_int(2) + env.int(1);
            let c = div(two_ap1.clone(), two_a1.clone())?;
            let tail = &c + (ap.mul_int(2) - env.int(1)) * env.q(2)?
                - div(two_ap1.clone() * (env.h(p - 1 - r) - env.h(j - 1)), env.int(2))?;
            let lead = ap * &c * env.pp(2) * env.ipow(-16, r as i64)?.mul_int(env.eps());
            one(Ok(div(lead, env.binom(2 * j as i64, j as i64))? * one_plus_p(env, tail)))
        },
    ));
    v.push(sampled(
        "EQ-52",
        Kind::Equation,
        "Q_p(a) ≡ (-4)^r (a-r) binom(a-1/2, r)/binom(a, r) (mod p^4), a ≢ 0, -1",
        |p, a| hypotheses_not(p, a, &[0, -1]),
        4,
        |env, a| one(q_p(&a.a, &env.ctx)),
        |env, a| {
            let r = a.r as i64;
            let half = RationalArg(a.a.value() - BigRational::new(1.into(), 2.into()));
            let x = env.ipow(-4, r)? * env.rational(&a.plus(-r)) * env.binom_q(&half, r);
            one(div(x, env.binom_q(&a.a, r)))
        },
    ));
    v.push(sampled(
        "THM52",
        Kind::Theorem,
        "(Q_p(a)/p)^2 ≡ 2^(4r) a'^2 S_p(2a) (1 + 4a'p q_p(2) + 2a'(4a'-1) p^2 q_p(2)^2) (mod p^3), 1 <= r < p/2",
        |p, a| a.r >= 1 && 2 * a.r < p,
        3,
        |env, a| one(div(q_p(&a.a, &env.ctx)?, env.pp(1))?.pow(2)),
        |env, a| {
            let ap = env.a_prime(&a.a)?;
            let q2 = env.q(2)?;
            let tail = env.int(1)
                + env.pp(1) * &ap * &q2 * env.int(4)
                + env.pp(2) * ap.mul_int(2) * (ap.mul_int(4) - env.int(1)) * q2.pow(2)?;
            let s = s_p(&a.times(2), &env.ctx)?;
            one(Ok(env.ipow(2, 4 * a.r as i64)? * ap.pow(2)? * s * tail))
        },
    ));
    let half = || q(-1, 2);
    v.push(fixed(
        "COR51",
        Kind::Corollary,
        "sum_{k<=(p-1)/2} (4k+1) binom(2k,k)^4/256^k ≡ p (mod p^4), p > 3",
        |p| p > 3,
        |_| 4,
        move |env| one(ws(env, half(), 4, 1, 1, env.p.div_ceil(2))),
        |env| one(Ok(env.pp(1))),
    ));
    v.push(fixed(
        "CONJ51",
        Kind::Conjecture,
        "sum_{k<p} (4k+1) binom(2k,k)^4/256^k ≡ sum_{k<=(p-1)/2} ... ≡ p + (7/6) p^4 B_{p-3} (mod p^5), p > 3",
        |p| p > 3,
        |_| 5,
        move |env| Ok(vec![ws(env, half(), 4, 1, 1, env.p)?, ws(env, half(), 4, 1, 1, env.p.div_ceil(2))?]),
        |env| {
            let x = env.pp(1) + env.frac(7, 6) * env.pp(4) * env.bernoulli(env.p as usize - 3)?;
            Ok(vec![x.clone(), x])
        },
    ));
    v.push(fixed(
        "COR52",
        Kind::Corollary,
        "sum_{k<=(p-1)/2} (4k+3) C_k^4/256^k ≡ 16 (mod p^4)",
        |p| p >= 3,
        |_| 4,
        |env| one(catalan_sum(env.p.div_ceil(2), &env.ctx)),
        |env| one(Ok(env.int(16))),
    ));
    let mut rmk = fixed(
        "RMK51",
        Kind::CitedResult,
        "sum_{k<p} (4k+3) C_k^4/256^k ≡ sum_{k<=(p-1)/2} ... ≡ 16 + 80p^4 (mod p^5)",
        |p| p >= 3,
        |_| 5,
        |env| Ok(vec![catalan_sum(env.p, &env.ctx)?, catalan_sum(env.p.div_ceil(2), &env.ctx)?]),
        |env| {
            let x = env.int(16) + env.pp(4).mul_int(80);
            Ok(vec![x.clone(), x])
        },
    );
    rmk.isolated = true;
    v.push(rmk);
    // The k = p-1 term of the full range is a unit, so only the ranges
    // k <= (p-1)/2 and k <= p-2 can carry the p^4 digit; it is -80.
    let mut adj = fixed(
        "RMK51-ADJ",
        Kind::CitedResult,
        "sum_{k<=p-2} (4k+3) C_k^4/256^k ≡ sum_{k<=(p-1)/2} ... ≡ 16 - 80p^4 (mod p^5)",
        |p| p >= 3,
        |_| 5,
        |env| Ok(vec![catalan_sum(env.p - 1, &env.ctx)?, catalan_sum(env.p.div_ceil(2), &env.ctx)?]),
        |env| {
            let x = env.int(16) - env.pp(4).mul_int(80);
            Ok(vec![x.clone(), x])
        },
    );
    adj.isolated = true;
    v.push(adj);
    v.push(fixed(
        "THM53",
        Kind::Theorem,
        "sum_{k<p} (8k+1) binom(-1/4,k)^4 ≡ (-1)^((p-1)/4)(2xp - p^2/(2x) - p^3/(8x^3)) if p = x^2+y^2, 4 | x-1; 3(-1)^((p+1)/4)(2p-1-2^(p-1))p^2/binom((p-1)/2, (p-3)/4) if p ≡ 3 (mod 4) (mod p^4), p > 3",
        |p| p > 3,
        |_| 4,
        |env| one(ws(env, q(-1, 4), 4, 1, 1, env.p)),
        |env| {
            let p = env.p as i64;
            if p % 4 == 1 {
                let x = env.rep(QuadForm::F1)?.x;
                let v = cd_poly(env, x, [(2, 1), (-1, 2), (-1, 8)], [1, 2, 3])?;
                one(Ok(v.mul_int(sign((p - 1) / 4))))
            } else {
                let c = env.int(2 * p - 1) - two_p1(env)?;
                let num = c * env.pp(2).mul_int(3 * sign((p + 1) / 4));
                one(div(num, env.binom((p - 1) / 2, (p - 3) / 4)))
            }
        },
    ));
    v.push(fixed(
        "THM54",
        Kind::Theorem,
        "sum_{k<p} (8k+3) binom(-3/4,k)^4 ≡ (-1)^((p-1)/4)(3p^2/(2x) + 3p^3/(8x^3)) if p ≡ 1 (mod 4); (-1)^((p-3)/4) p binom((p-3)/2, (p-3)/4)(1 - p(1 + q_p(2)/2) + p^2(q_p(2)/2 + 3q_p(2)^2/8 + E_{p-3}/4)) if p ≡ 3 (mod 4) (mod p^4), p > 3",
        |p| p > 3,
        |_| 4,
        |env| one(wl(env, q(-3, 4), 4, 1, 1, env.p, 3, 8)),
        |env| {
            let p = env.p as i64;
            if p % 4 == 1 {
                let x = env.rep(QuadForm::F1)?.x;
                let v = cd_poly(env, x, [(0, 1), (3, 2), (3, 8)], [1, 2, 3])?;
                one(Ok(v.mul_int(sign((p - 1) / 4))))
            } else {
                let q2 = env.q(2)?;
                let tail = env.int(1) - env.pp(1) * (env.int(1) + env.frac(1, 2) * &q2)
                    + env.pp(2)
                        * (env.frac(1, 2) * &q2 + env.frac(3, 8) * q2.pow(2)? + env.frac(1, 4) * env.euler(p as usize - 3)?);
                let b = env.binom((p - 3) / 2, (p - 3) / 4);
                one(Ok(env.pp(1).mul_int(sign((p - 3) / 4)) * b * tail))
            }
        },
    ));
}

fn section5_forms(v: &mut Vec<CheckSpec>) {
    v.push(fixed(
        "THM55",
        Kind::Theorem,
        "sum_{k<p} (6k+1) binom(-1/3,k)^4 ≡ -px + p^2/x + p^3/x^3 if 4p = x^2+27y^2, 3 | x-1; p^2 (-1)^((p-1)/2)(2^(p-1)-p) 2^(-(p-5)/3)/binom((p-2)/3, (p-5)/6) if p ≡ 2 (mod 3) (mod p^4), p > 3",
        |p| p > 3,
        |_| 4,
        |env| one(ws(env, q(-1, 3), 4, 1, 1, env.p)),
        |env| {
            let p = env.p as i64;
            if p % 3 == 1 {
                let x = env.rep(QuadForm::F3)?.x;
                one(cd_poly(env, x, [(-1, 1), (1, 1), (1, 1)], [1, 2, 3]))
            } else {
                let num = env.pp(2).mul_int(env.eps()) * (two_p1(env)? - env.pp(1)) * env.ipow(2, -(p - 5) / 3)?;
                one(div(num, env.binom((p - 2) / 3, (p - 5) / 6)))
            }
        },
    ));
    v.push(fixed(
        "THM56",
        Kind::Theorem,
        "sum_{k<p} (12k+1) binom(-1/6,k)^4 ≡ -pu + p^2/u + p^3/u^3 if p = x^2+3y^2 (u = -2x if 3 | y, else x-3y); 20·2^((p+1)/3)(2^(p-1)+3p-4)p^2/(3 binom(2(p+1)/3, (p+1)/3)) if p ≡ 2 (mod 3) (mod p^4), p > 3",
        |p| p > 3,
        |_| 4,
        |env| one(ws(env, q(-1, 6), 4, 1, 1, env.p)),
        |env| {
            let p = env.p as i64;
            if p % 3 == 1 {
                let u = thm56_u(&env.rep(QuadForm::F4)?);
                one(cd_poly(env, u, [(-1, 1), (1, 1), (1, 1)], [1, 2, 3]))
            } else {
                let c = two_p1(env)? + env.int(3 * p - 4);
                let num = env.ipow(2, (p + 1) / 3)?.mul_int(20) * c * env.pp(2);
                one(div(num, env.binom(2 * (p + 1) / 3, (p + 1) / 3).mul_int(3)))
            }
        },
    ));
    v.push(fixed(
        "THM57",
        Kind::Theorem,
        "sum_{k<p} (16k+1) binom(-1/8,k)^4 ≡ (-1)^(y/2) p(2x - p/(2x) - p^2/(8x^3)) (p ≡ 1 mod 8), 3p(4y - p/(2y) - p^2/(16y^3)) (p ≡ 3 mod 8) (mod p^4); (-1)^((p+3)/8) 20p^2/(3 binom((p+3)/4, (p+3)/8)) (p ≡ 5 mod 8), (-1)^((p-7)/8) 56p^2/binom(3(p+1)/4, 3(p+1)/8) (p ≡ 7 mod 8) (mod p^3); p = x^2+2y^2",
        |p| p > 3,
        |p| if p % 8 == 1 || p % 8 == 3 { 4 } else { 3 },
        |env| one(ws(env, q(-1, 8), 4, 1, 1, env.p)),
        |env| {
            let p = env.p as i64;
            match p % 8 {
                1 => {
                    let r = env.rep(QuadForm::F2)?;
                    let v = cd_poly(env, r.x, [(2, 1), (-1, 2), (-1, 8)], [1, 2, 3])?;
                    one(Ok(v.mul_int(sign(r.y / 2))))
                }
                3 => {
                    let r = env.rep(QuadForm::F2)?;
                    one(Ok(cd_poly(env, r.y, [(4, 1), (-1, 2), (-1, 16)], [1, 2, 3])?.mul_int(3)))
                }
                5 => one(div(
                    env.pp(2).mul_int(20 * sign((p + 3) / 8)),
                    env.binom((p + 3) / 4, (p + 3) / 8).mul_int(3),
                )),
                _ => one(div(env.pp(2).mul_int(56 * sign((p - 7) / 8)), env.binom(3 * (p + 1) / 4, 3 * (p + 1) / 8))),
            }
        },
    ));
    v.push(fixed(
        "THM58",
        Kind::Theorem,
        "sum_{k<p} (16k+3) binom(-3/8,k)^4 ≡ 3p(-1)^(y/2)(2x - p/(2x) - p^2/(8x^3)) (p ≡ 1 mod 8), p(-2y + p/(4y) + p^2/(32y^3)) (p ≡ 3 mod 8) (mod p^4); (-1)^((p-5)/8) 84p^2/binom((3p+1)/4, (3p+1)/8) (p ≡ 5 mod 8), (-1)^((p-7)/8) 10p^2/binom((p+1)/4, (p+1)/8) (p ≡ 7 mod 8) (mod p^3)",
        |p| p > 3,
        |p| if p % 8 == 1 || p % 8 == 3 { 4 } else { 3 },
        |env| one(wl(env, q(-3, 8), 4, 1, 1, env.p, 3, 16)),
        |env| {
            let p = env.p as i64;
            match p % 8 {
                1 => {
                    let r = env.rep(QuadForm::F2)?;
                    let v = cd_poly(env, r.x, [(2, 1), (-1, 2), (-1, 8)], [1, 2, 3])?;
                    one(Ok(v.mul_int(3 * sign(r.y / 2))))
                }
                3 => {
                    let r = env.rep(QuadForm::F2)?;
                    one(cd_poly(env, r.y, [(-2, 1), (1, 4), (1, 32)], [1, 2, 3]))
                }
                5 => one(div(env.pp(2).mul_int(84 * sign((p - 5) / 8)), env.binom((3 * p + 1) / 4, (3 * p + 1) / 8))),
                _ => one(div(env.pp(2).mul_int(10 * sign((p - 7) / 8)), env.binom((p + 1) / 4, (p + 1) / 8))),
            }
        },
    ));
    v.push(fixed(
        "THM59",
        Kind::Theorem,
        "sum_{k<p} (24k+1) binom(-1/12,k)^4 ≡ 2^((p-1)/6) p (1 - (2^(p-1)-1)/6)(2c - p/(2c)) (p ≡ 1 mod 12), 5·2^(-(p-5)/6) p (1 + (2^(p-1)-1)/6)(2c - p/(2c)) (p ≡ 5 mod 12), (-1)^((p-7)/12) 28·2^((p-1)/3) p^2/(5 binom((p+5)/6, (p+5)/12)) (p ≡ 7 mod 12), (-1)^((p-11)/12) 11p^2/(2^((p-11)/3) binom(5(p+1)/6, 5(p+1)/12)) (p ≡ 11 mod 12) (mod p^3); c from p = x^2+y^2",
        |p| p > 3,
        |_| 3,
        |env| one(ws(env, q(-1, 12), 4, 1, 1, env.p)),
        |env| {
            let p = env.p as i64;
            let fq = div(two_p1(env)? - env.int(1), env.int(6));
            match p % 12 {
                1 | 5 => {
                    let c = thm59_c(env.p, &env.rep(QuadForm::F1)?);
                    let core = env.int(2 * c) - div(env.pp(1), env.int(2 * c))?;
                    if p % 12 == 1 {
                        let lead = env.ipow(2, (p - 1) / 6)? * env.pp(1);
                        one(Ok(lead * (env.int(1) - fq?) * core))
                    } else {
                        let lead = env.ipow(2, -(p - 5) / 6)?.mul_int(5) * env.pp(1);
                        one(Ok(lead * (env.int(1) + fq?) * core))
                    }
                }
                7 => {
                    let num = env.ipow(2, (p - 1) / 3)?.mul_int(28 * sign((p - 7) / 12)) * env.pp(2);
                    one(div(num, env.binom((p + 5) / 6, (p + 5) / 12).mul_int(5)))
                }
                _ => {
                    let num = env.pp(2).mul_int(11 * sign((p - 11) / 12));
                    let den = env.ipow(2, (p - 11) / 3)? * env.binom(5 * (p + 1) / 6, 5 * (p + 1) / 12);
                    one(div(num, den))
                }
            }
        },
    ));
}

fn cited(v: &mut Vec<CheckSpec>) {
    let floor = |p: u64, n: u64, d: u64| n * p / d;
    v.push(fixed(
        "LEM52-1",
        Kind::Lemma,
        "H_{(p-1)/2} ≡ -2q_p(2) + p q_p(2)^2 (mod p^2), p > 3",
        |p| p > 3,
        |_| 2,
        |env| one(Ok(env.h((env.p - 1) / 2))),
        |env| {
            let q2 = env.q(2)?;
            one(Ok(q2.mul_int(-2) + env.pp(1) * q2.pow(2)?))
        },
    ));
    v.push(fixed(
        "LEM52-2",
        Kind::Lemma,
        "H^(2)_{(p-1)/2} ≡ 0 (mod p), p > 3",
        |p| p > 3,
        |_| 1,
        |env| one(Ok(env.h2((env.p - 1) / 2))),
        |env| one(Ok(env.zero())),
    ));
    v.push(fixed(
        "LEM52-3",
        Kind::Lemma,
        "H_{[p/4]} ≡ -3q_p(2) + (3/2)p q_p(2)^2 - (-1)^((p-1)/2) p E_{p-3} (mod p^2), p > 3",
        |p| p > 3,
        |_| 2,
        move |env| one(Ok(env.h(floor(env.p, 1, 4)))),
        |env| {
            let q2 = env.q(2)?;
            let e = env.euler(env.p as usize - 3)?;
            one(Ok(q2.mul_int(-3) + env.pp(1) * (env.frac(3, 2) * q2.pow(2)? - e.mul_int(env.eps()))))
        },
    ));
    v.push(fixed(
        "LEM52-4",
        Kind::Lemma,
        "H^(2)_{[p/4]} ≡ 4(-1)^((p-1)/2) E_{p-3} (mod p), p > 3",
        |p| p > 3,
        |_| 1,
        move |env| one(Ok(env.h2(floor(env.p, 1, 4)))),
        |env| one(Ok(env.euler(env.p as usize - 3)?.mul_int(4 * env.eps()))),
    ));
    v.push(fixed(
        "EQ-53",
        Kind::Equation,
        "H_{(p-1)/2} - H_{[p/4]} ≡ q_p(2) - (p/2) q_p(2)^2 + (-1)^((p-1)/2) p E_{p-3} (mod p^2), p > 3",
        |p| p > 3,
        |_| 2,
        move |env| one(Ok(env.h((env.p - 1) / 2) - env.h(floor(env.p, 1, 4)))),
        |env| {
            let q2 = env.q(2)?;
            let e = env.euler(env.p as usize - 3)?;
            one(Ok(&q2 + env.pp(1) * (env.frac(-1, 2) * q2.pow(2)? + e.mul_int(env.eps()))))
        },
    ));
    v.push(fixed(
        "EQ-54",
        Kind::CitedResult,
        "binom((p-1)/2, (p-1)/4) ≡ (2x - p/(2x) - p^2/(8x^3))(1 + (p/2) q_p(2) + (p^2/8)(2E_{p-3} - q_p(2)^2)) (mod p^3), p = x^2+y^2, x ≡ 1 (mod 4)",
        |p| p % 4 == 1,
        |_| 3,
        |env| one(Ok(env.binom((env.p as i64 - 1) / 2, (env.p as i64 - 1) / 4))),
        |env| {
            let x = env.rep(QuadForm::F1)?.x;
            let q2 = env.q(2)?;
            let e = env.euler(env.p as usize - 3)?;
            let main = cd_poly(env, x, [(2, 1), (-1, 2), (-1, 8)], [0, 1, 2])?;
            let tail = env.int(1)
                + env.pp(1) * env.frac(1, 2) * &q2
                + env.pp(2) * env.frac(1, 8) * (e.mul_int(2) - q2.pow(2)?);
            one(Ok(main * tail))
        },
    ));
    v.push(fixed(
        "EQ-56",
        Kind::Equation,
        "(2/p) 2^((p-1)/2) ≡ 1 + (1/2) p q_p(2) - (1/8) p^2 q_p(2)^2 (mod p^3)",
        |p| p >= 3,
        |_| 3,
        |env| one(Ok(env.ipow(2, (env.p as i64 - 1) / 2)?.mul_int(env.legendre(2)))),
        |env| {
            let q2 = env.q(2)?;
            one(Ok(env.int(1) + env.pp(1) * env.frac(1, 2) * &q2 - env.pp(2) * env.frac(1, 8) * q2.pow(2)?))
        },
    ));
    v.push(fixed(
        "EQ-57",
        Kind::CitedResult,
        "binom((p-1)/2, [p/12]) ≡ (2c - p/(2c))(1 + p((3/2) q_p(2) + (5/4) q_p(3) + (1/3) H_{[p/12]})) (mod p^2), p ≡ 1 (mod 4), p > 3",
        |p| p % 4 == 1 && p > 3,
        |_| 2,
        move |env| one(Ok(env.binom((env.p as i64 - 1) / 2, floor(env.p, 1, 12) as i64))),
        move |env| {
            let c = thm59_c(env.p, &env.rep(QuadForm::F1)?);
            let core = env.int(2 * c) - div(env.pp(1), env.int(2 * c))?;
            let tail = env.frac(3, 2) * env.q(2)? + env.frac(5, 4) * env.q(3)? + env.frac(1, 3) * env.h(floor(env.p, 1, 12));
            one(Ok(core * one_plus_p(env, tail)))
        },
    ));
    v.push(fixed(
        "EQ-58",
        Kind::Equation,
        "binom(2k,k) ≡ binom((p-1)/2, k)(-4)^k (1 + p(H_{2k} - H_k/2)) (mod p^2) for 1 <= k <= (p-1)/2",
        |p| p >= 3,
        |_| 2,
        |env| Ok((1..=(env.p as i64 - 1) / 2).map(|k| env.binom(2 * k, k)).collect()),
        |env| {
            let h = (env.p as i64 - 1) / 2;
            (1..=h)
                .map(|k| {
                    let d = env.h(2 * k as u64) - env.frac(1, 2) * env.h(k as u64);
                    Ok(env.binom(h, k) * env.ipow(-4, k)? * one_plus_p(env, d))
                })
                .collect()
        },
    ));
    v.push(fixed(
        "LEM53-1",
        Kind::Lemma,
        "H_{[p/3]} ≡ -(3/2) q_p(3) + (3/4) p q_p(3)^2 - p (p/3) U_{p-3} (mod p^2), p > 3",
        |p| p > 3,
        |_| 2,
        move |env| one(Ok(env.h(floor(env.p, 1, 3)))),
        |env| {
            let q3 = env.q(3)?;
            let u = env.useq(env.p as usize - 3)?.mul_int(jacobi3(env.p));
            one(Ok(env.frac(-3, 2) * &q3 + env.pp(1) * (env.frac(3, 4) * q3.pow(2)? - u)))
        },
    ));
    v.push(fixed(
        "LEM53-2",
        Kind::Lemma,
        "H_{[p/6]} ≡ -2q_p(2) - (3/2) q_p(3) + p(q_p(2)^2 + (3/4) q_p(3)^2) - (5/2) p (p/3) U_{p-3} (mod p^2), p > 3",
        |p| p > 3,
        |_| 2,
        move |env| one(Ok(env.h(floor(env.p, 1, 6)))),
        |env| {
            let (q2, q3) = (env.q(2)?, env.q(3)?);
            let u = env.useq(env.p as usize - 3)?.mul_int(jacobi3(env.p));
            let head = q2.mul_int(-2) + env.frac(-3, 2) * &q3;
            one(Ok(head + env.pp(1) * (q2.pow(2)? + env.frac(3, 4) * q3.pow(2)? - env.frac(5, 2) * u)))
        },
    ));
    v.push(fixed(
        "LEM53-3",
        Kind::Lemma,
        "H_{[2p/3]} ≡ -(3/2) q_p(3) + (3/4) p q_p(3)^2 + 2p (p/3) U_{p-3} (mod p^2), p > 3",
        |p| p > 3,
        |_| 2,
        move |env| one(Ok(env.h(floor(env.p, 2, 3)))),
        |env| {
            let q3 = env.q(3)?;
            let u = env.useq(env.p as usize - 3)?.mul_int(2 * jacobi3(env.p));
            one(Ok(env.frac(-3, 2) * &q3 + env.pp(1) * (env.frac(3, 4) * q3.pow(2)? + u)))
        },
    ));
    v.push(fixed(
        "LEM53-4",
        Kind::Lemma,
        "H^(2)_{[p/3]} ≡ -H^(2)_{[2p/3]} ≡ 3 (p/3) U_{p-3} (mod p), p > 3",
        |p| p > 3,
        |_| 1,
        move |env| Ok(vec![env.h2(floor(env.p, 1, 3)), -env.h2(floor(env.p, 2, 3))]),
        |env| {
            let u = env.useq(env.p as usize - 3)?.mul_int(3 * jacobi3(env.p));
            Ok(vec![u.clone(), u])
        },
    ));
    v.push(fixed(
        "LEM53-5",
        Kind::Lemma,
        "H^(2)_{[p/6]} ≡ 15 (p/3) U_{p-3} (mod p), p > 3",
        |p| p > 3,
        |_| 1,
        move |env| one(Ok(env.h2(floor(env.p, 1, 6)))),
        |env| one(Ok(env.useq(env.p as usize - 3)?.mul_int(15 * jacobi3(env.p)))),
    ));
    v.push(fixed(
        "MORLEY",
        Kind::CitedResult,
        "(-1)^((p-1)/2) binom(p-1, (p-1)/2) ≡ 4^(p-1) (mod p^3), p > 3",
        |p| p > 3,
        |_| 3,
        |env| one(Ok(env.binom(env.p as i64 - 1, (env.p as i64 - 1) / 2).mul_int(env.eps()))),
        |env| one(env.ipow(4, env.p as i64 - 1)),
    ));
    v.push(fixed(
        "STERN",
        Kind::CitedResult,
        "binom((p-1)/2, (p-1)/8) ≡ (-1)^((p-1)/8) 2x (mod p), p = x^2+2y^2 ≡ 1 (mod 8), x ≡ 1 (mod 4)",
        |p| p % 8 == 1,
        |_| 1,
        |env| one(Ok(env.binom((env.p as i64 - 1) / 2, (env.p as i64 - 1) / 8))),
        |env| one(Ok(env.int(2 * env.rep(QuadForm::F2)?.x * sign((env.p as i64 - 1) / 8)))),
    ));
    v.push(fixed(
        "EISEN",
        Kind::CitedResult,
        "binom((p-1)/2, (p-3)/8) ≡ -2(-1)^((p-3)/8) x (mod p), p = x^2+2y^2 ≡ 3 (mod 8), x ≡ y ≡ 1 (mod 4)",
        |p| p % 8 == 3,
        |_| 1,
        |env| one(Ok(env.binom((env.p as i64 - 1) / 2, (env.p as i64 - 3) / 8))),
        |env| one(Ok(env.int(-2 * env.rep(QuadForm::F2)?.x * sign((env.p as i64 - 3) / 8)))),
    ));
    v.push(fixed(
        "BEW",
        Kind::CitedResult,
        "binom((p-1)/2, (p-1)/4) ≡ 2x (mod p), p = x^2+y^2, x ≡ 1 (mod 4)",
        |p| p % 4 == 1,
        |_| 1,
        |env| one(Ok(env.binom((env.p as i64 - 1) / 2, (env.p as i64 - 1) / 4))),
        |env| one(Ok(env.int(2 * env.rep(QuadForm::F1)?.x))),
    ));
    v.push(fixed(
        "SREF",
        Kind::CitedResult,
        "S_p(-1/4) ≡ 4x^2 - 2p - p^2/(4x^2) (mod p^3), p = x^2+2y^2, p ≡ 1, 3 (mod 8)",
        |p| p % 8 == 1 || p % 8 == 3,
        |_| 3,
        |env| one(s_p(&q(-1, 4), &env.ctx)),
        |env| {
            let x = env.rep(QuadForm::F2)?.x;
            let x2 = env.int(x * x);
            one(Ok(x2.mul_int(4) - env.pp(1).mul_int(2) - div(env.pp(2), x2.mul_int(4))?))
        },
    ));
    v.push(fixed(
        "SU3REF",
        Kind::CitedResult,
        "sum_{k<p} binom(2k,k)^2/(-16)^k ≡ (-1)^((p-3)/4) p/binom((p-1)/2, (p-3)/4) (mod p^2), p ≡ 3 (mod 4)",
        |p| p % 4 == 3,
        |_| 2,
        |env| one(f_p(&q(-1, 2), &env.ctx)),
        |env| {
            let p = env.p as i64;
            one(div(env.pp(1).mul_int(sign((p - 3) / 4)), env.binom((p - 1) / 2, (p - 3) / 4)))
        },
    ));
    v.push(fixed(
        "RMK21-1",
        Kind::CitedResult,
        "H_k ≡ H_{p-1-k} (mod p) for 0 <= k <= p-1",
        |p| p >= 3,
        |_| 1,
        |env| Ok((0..env.p).map(|k| env.h(k)).collect()),
        |env| Ok((0..env.p).map(|k| env.h(env.p - 1 - k)).collect()),
    ));
    let rmk21: [(&str, &str, u64, u64, [i64; 4]); 4] = [
        ("RMK21-2", "H_{(p-1)/2} ≡ -2q_p(2) (mod p)", 1, 2, [-2, 1, 0, 1]),
        ("RMK21-3", "H_{[p/4]} ≡ -3q_p(2) (mod p)", 1, 4, [-3, 1, 0, 1]),
        ("RMK21-4", "H_{[p/3]} ≡ -(3/2) q_p(3) (mod p), p > 3", 1, 3, [0, 1, -3, 2]),
        ("RMK21-5", "H_{[p/6]} ≡ -2q_p(2) - (3/2) q_p(3) (mod p), p > 3", 1, 6, [-2, 1, -3, 2]),
    ];
    for (id, statement, n, d, c) in rmk21 {
        v.push(fixed(
            id,
            Kind::CitedResult,
            statement,
            |p| p > 3,
            |_| 1,
            move |env| one(Ok(env.h(floor(env.p, n, d)))),
            move |env| one(Ok(env.frac(c[0], c[1]) * env.q(2)? + env.frac(c[2], c[3]) * env.q(3)?)),
        ));
    }
    let epoly: [(&str, &str, i64, i64); 4] = [
        ("EPOLY-1", "E_{p-3}(1/2) ≡ 4E_{p-3} (mod p), p > 3", 1, 2),
        ("EPOLY-2", "E_{p-3}(-1/2) ≡ 8 - 4E_{p-3} (mod p), p > 3", -1, 2),
        ("EPOLY-3", "E_{p-3}(1/3) ≡ 9U_{p-3} (mod p), p > 3", 1, 3),
        ("EPOLY-4", "E_{p-3}(1/6) ≡ 20E_{p-3} (mod p), p > 3", 1, 6),
    ];
    for (i, (id, statement, n, d)) in epoly.into_iter().enumerate() {
        v.push(fixed(
            id,
            Kind::CitedResult,
            statement,
            |p| p > 3,
            |_| 1,
            move |env| one(env.euler_poly(env.p as usize - 3, &q(n, d))),
            move |env| {
                let m = env.p as usize - 3;
                one(Ok(match i {
                    0 => env.euler(m)?.mul_int(4),
                    1 => env.int(8) - env.euler(m)?.mul_int(4),
                    2 => env.useq(m)?.mul_int(9),
                    _ => env.euler(m)?.mul_int(20),
                }))
            },
        ));
    }
    v.push(fixed(
        "BPOLY-3",
        Kind::CitedResult,
        "B_{p-2}(1/3) ≡ 6U_{p-3} (mod p), p > 3",
        |p| p > 3,
        |_| 1,
        |env| one(env.bernoulli_poly(env.p as usize - 2, &q(1, 3))),
        |env| one(Ok(env.useq(env.p as usize - 3)?.mul_int(6))),
    ));
    v.push(fixed(
        "CD3",
        Kind::CitedResult,
        "binom(2(p-1)/3, (p-1)/3) ≡ (-x + p/x + p^2/x^3)(1 + (1/6) p^2 B_{p-2}(1/3)) (mod p^3), 4p = x^2+27y^2, x ≡ 1 (mod 3)",
        |p| p % 3 == 1,
        |_| 3,
        |env| one(Ok(env.binom(2 * (env.p as i64 - 1) / 3, (env.p as i64 - 1) / 3))),
        |env| {
            let x = env.rep(QuadForm::F3)?.x;
            let main = cd_poly(env, x, [(-1, 1), (1, 1), (1, 1)], [0, 1, 2])?;
            let b = env.bernoulli_poly(env.p as usize - 2, &q(1, 3))?;
            one(Ok(main * (env.int(1) + env.pp(2) * env.frac(1, 6) * b)))
        },
    ));
    v.push(fixed(
        "SD6",
        Kind::CitedResult,
        "binom((p-1)/3, (p-1)/6) ≡ (-1)^((p-1)/6-1)(u - p/u - p^2/u^3)(1 + (2/3) p q_p(2) + p^2(-(1/9) q_p(2)^2 + (1/24) B_{p-2}(1/3))) (mod p^3), p = x^2+3y^2",
        |p| p % 3 == 1,
        |_| 3,
        |env| one(Ok(env.binom((env.p as i64 - 1) / 3, (env.p as i64 - 1) / 6))),
        |env| {
            let p = env.p as i64;
            let u = thm56_u(&env.rep(QuadForm::F4)?);
            let main = cd_poly(env, u, [(1, 1), (-1, 1), (-1, 1)], [0, 1, 2])?;
            let q2 = env.q(2)?;
            let b = env.bernoulli_poly(env.p as usize - 2, &q(1, 3))?;
            let tail = env.int(1)
                + env.pp(1) * env.frac(2, 3) * &q2
                + env.pp(2) * (env.frac(-1, 9) * q2.pow(2)? + env.frac(1, 24) * b);
            one(Ok(main * tail.mul_int(sign((p - 1) / 6 - 1))))
        },
    ));
    v.push(sampled(
        "S6-ALT",
        Kind::CitedResult,
        "sum_{k=1}^{r} (-1)^k/k^2 ≡ (1/2)(-1)^r E_{p-3}(-a) (mod p), a ≢ 0, p > 3",
        |p, a| p > 3 && a.r != 0,
        1,
        |env, a| {
            let mut s = env.zero();
            for k in 1..=a.r as i64 {
                s = s + env.frac(sign(k), k * k);
            }
            one(Ok(s))
        },
        |env, a| one(Ok(env.frac(sign(a.r as i64), 2) * env.euler_poly(env.p as usize - 3, &a.times(-1))?)),
    ));
    // Q_n at n = p through a second entry point, against the telescoped
    // closed form: (a+1) Q_n(a+1) + 2(2a+1) Q_n(a) = G(a, n) checked exactly.
    v.push(sampled(
        "EQ-51",
        Kind::Equation,
        "(a+1) Q_p(a+1) + 2(2a+1) Q_p(a) = (2p^2 - 6(a+1)p + 5(a+1)^2) p^4 binom(a,p)^4/(a+1-p)^4, a ≢ -1",
        |p, a| hypotheses_not(p, a, &[-1]),
        4,
        |env, a| {
            let p = env.p;
            let c = env.rational(&a.times(2)) + env.int(1);
            one(Ok(env.rational(&a.plus(1)) * q_n(&a.plus(1), p, &env.ctx)? + c.mul_int(2) * q_n(&a.a, p, &env.ctx)?))
        },
        |env, a| {
            let p = env.p as i64;
            let a1 = env.rational(&a.plus(1));
            let poly = env.int(2 * p * p) - a1.mul_int(6 * p) + a1.pow(2)?.mul_int(5);
            let num = poly * env.pp(4) * env.binom_q(&a.a, p).pow(4)?;
            one(div(num, env.rational(&a.plus(1 - p)).pow(4)?))
        },
    ));
}

fn jacobi3(p: u64) -> i64 {
    match p % 3 {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}
