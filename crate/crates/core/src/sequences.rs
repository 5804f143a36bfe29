//! Euler, Bernoulli and U numbers, their polynomials, harmonic numbers,
//! Catalan numbers and the Morita p-adic Gamma function.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{reduce_rational, PadicValue, PrimeContext, RationalArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceId {
    Euler,
    Bernoulli,
    USeq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableValues {
    /// Exact integers, or residues modulo `modulus` when one is set.
    Integers { values: Vec<BigInt>, modulus: Option<BigInt> },
    Rationals(Vec<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub id: SequenceId,
    pub n_max: usize,
    pub values: TableValues,
}

impl SequenceTable {
    /// Entry `n` as a p-adic value in `ctx`.
    pub fn padic(&self, n: usize, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
        let first_odd_zero = if self.id == SequenceId::Bernoulli { 3 } else { 1 };
        if n >= first_odd_zero && n % 2 == 1 {
            return Ok(PadicValue::exact_zero(ctx));
        }
        match &self.values {
            TableValues::Integers { values, modulus } => {
                let x = &values[n];
                Ok(match modulus {
                    None => ctx.bigint(x),
                    Some(m) => {
                        let t = valuation_of_modulus(m, ctx);
                        PadicValue::from_residue(ctx, x, t)
                    }
                })
            }
            TableValues::Rationals(values) => {
                let q = &values[n];
                if q.denom().is_multiple_of(ctx.p()) {
                    return Err(Error::BernoulliDenominatorDivisibleByP(n as u64));
                }
                Ok(ctx.rational(q))
            }
        }
    }

    /// Exact integer entries; `None` for rational or reduced tables.
    pub fn integers(&self) -> Option<&[BigInt]> {
        match &self.values {
            TableValues::Integers { values, modulus: None } => Some(values),
            _ => None,
        }
    }
}

fn valuation_of_modulus(m: &BigInt, ctx: &PrimeContext) -> i64 {
    let mut t = 0;
    let mut x = m.clone();
    while x > BigInt::one() {
        x /= ctx.p();
        t += 1;
    }
    t
}

/// Rows of Pascal's triangle up to `n_max`, optionally reduced.
fn pascal(n_max: usize, modulus: Option<&BigInt>) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigInt::one()]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigInt::one());
        for k in 1..n {
            let mut s = &prev[k - 1] + &prev[k];
            if let Some(m) = modulus {
                if &s >= m {
                    s -= m;
                }
            }
            row.push(s);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

/// Shared shape of the Euler and U recurrences:
/// `X_{2n} = -c * sum_{k=1}^{n} binom(2n,2k) X_{2n-2k}`.
fn even_recurrence(n_max: usize, c: i64, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let rows = pascal(n_max, modulus);
    let mut x = vec![BigInt::zero(); n_max + 1];
    x[0] = BigInt::one();
    for n2 in (2..=n_max).step_by(2) {
        let mut s = BigInt::zero();
        for k2 in (2..=n2).step_by(2) {
            s += &rows[n2][k2] * &x[n2 - k2];
        }
        s *= -c;
        if let Some(m) = modulus {
            s = s.mod_floor(m);
        }
        x[n2] = s;
    }
    x
}

fn integer_table(id: SequenceId, n_max: usize, c: i64, ctx: Option<&Arc<PrimeContext>>) -> SequenceTable {
    let modulus = ctx.map(|c| c.pow(c.precision()));
    let values = even_recurrence(n_max, c, modulus.as_ref());
    SequenceTable { id, n_max, values: TableValues::Integers { values, modulus } }
}

/// `E_0..E_{n_max}`; reduced modulo `p^e` when a context is given.
pub fn euler_numbers(n_max: usize, ctx: Option<&Arc<PrimeContext>>) -> SequenceTable {
    integer_table(SequenceId::Euler, n_max, 1, ctx)
}

pub fn u_numbers(n_max: usize, ctx: Option<&Arc<PrimeContext>>) -> SequenceTable {
    integer_table(SequenceId::USeq, n_max, 2, ctx)
}

/// Exact `B_0..B_{n_max}` from `sum_{k<n} binom(n,k) B_k = 0`.
pub fn bernoulli_numbers(n_max: usize) -> SequenceTable {
    let rows = pascal(n_max + 1, None);
    let mut b: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    b.push(BigRational::one());
    for n in 1..=n_max {
        if n >= 3 && n % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let mut s = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                s += bk * BigRational::from_integer(rows[n + 1][k].clone());
            }
        }
        b.push(-s / BigRational::from_integer(BigInt::from(n + 1)));
    }
    SequenceTable { id: SequenceId::Bernoulli, n_max, values: TableValues::Rationals(b) }
}

/// `B_0..B_{n_max}` as residues modulo `p^e`.
///
/// Up to `n = p-2` the recurrence only divides by units and runs directly
/// modulo `p^e`; beyond that the exact table is reduced entry by entry.
pub fn bernoulli_residues(n_max: usize, ctx: &Arc<PrimeContext>) -> Result<SequenceTable> {
    let p = ctx.p_u64().unwrap_or(u64::MAX);
    if (n_max as u64) + 2 > p {
        let exact = bernoulli_numbers(n_max);
        let TableValues::Rationals(b) = &exact.values else { unreachable!() };
        let m = ctx.pow(ctx.precision());
        let mut values = Vec::with_capacity(b.len());
        for (n, q) in b.iter().enumerate() {
            let den = q.denom().mod_floor(&m);
            let inv = den.modinv(&m).ok_or(Error::BernoulliDenominatorDivisibleByP(n as u64))?;
            values.push((q.numer() * inv).mod_floor(&m));
        }
        return Ok(SequenceTable {
            id: SequenceId::Bernoulli,
            n_max,
            values: TableValues::Integers { values, modulus: Some(m) },
        });
    }
    let m = ctx.pow(ctx.precision());
    let rows = pascal(n_max + 1, Some(&m));
    let mut b: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    b.push(BigInt::one());
    for n in 1..=n_max {
        if n >= 3 && n % 2 == 1 {
            b.push(BigInt::zero());
            continue;
        }
        let mut s = BigInt::zero();
        for (k, bk) in b.iter().enumerate() {
            s += bk * &rows[n + 1][k];
        }
        let inv = BigInt::from(n + 1).modinv(&m).expect("n+1 < p");
        b.push((-s * inv).mod_floor(&m));
    }
    Ok(SequenceTable {
        id: SequenceId::Bernoulli,
        n_max,
        values: TableValues::Integers { values: b, modulus: Some(m) },
    })
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

fn check_integral(x: &RationalArg, ctx: &PrimeContext) -> Result<()> {
    if x.is_integral_at(ctx.p()) {
        Ok(())
    } else {
        Err(Error::NotPAdicInteger(x.to_string(), ctx.p().to_string()))
    }
}

/// `E_n(x) = 2^-n sum_k binom(n,k) (2x-1)^(n-k) E_k` against a prebuilt
/// Euler table (at least `n + 1` entries).
pub fn euler_poly_with(table: &SequenceTable, n: usize, x: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    check_integral(x, ctx)?;
    let row = binomial_row(n);
    let t = reduce_rational(&RationalArg(x.value() * BigInt::from(2) - BigRational::one()), ctx);
    let mut power = ctx.one();
    let mut acc = PadicValue::exact_zero(ctx);
    for k in (0..=n).rev() {
        let ek = table.padic(k, ctx)?;
        if !ek.is_exact_zero() {
            acc = acc + ctx.bigint(&row[k]) * &power * ek;
        }
        power = power * &t;
    }
    acc.checked_div(&ctx.int(2).pow(n as i64)?)
}

pub fn euler_poly(n: usize, x: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    euler_poly_with(&euler_numbers(n, Some(ctx)), n, x, ctx)
}

/// `B_n(x) = sum_k binom(n,k) B_k x^(n-k)` against a residue table.
pub fn bernoulli_poly_with(table: &SequenceTable, n: usize, x: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    check_integral(x, ctx)?;
    let row = binomial_row(n);
    let xv = reduce_rational(x, ctx);
    let mut power = ctx.one();
    let mut acc = PadicValue::exact_zero(ctx);
    for k in (0..=n).rev() {
        let bk = table.padic(k, ctx)?;
        if !bk.is_exact_zero() {
            acc = acc + ctx.bigint(&row[k]) * &power * bk;
        }
        power = power * &xv;
    }
    Ok(acc)
}

pub fn bernoulli_poly(n: usize, x: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    bernoulli_poly_with(&bernoulli_residues(n, ctx)?, n, x, ctx)
}

/// Exact `H_n^{(order)}`.
pub fn harmonic_exact(n: u64, order: u32) -> BigRational {
    let mut s = BigRational::zero();
    for k in 1..=n {
        s += BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(k), order as usize));
    }
    s
}

/// `H_n` (order 1) or `H_n^{(2)}` (order 2), or any higher order.
pub fn harmonic(n: u64, order: u32, ctx: &Arc<PrimeContext>) -> PadicValue {
    let below_p = ctx.p_u64().is_some_and(|p| n < p);
    if !below_p {
        return ctx.rational(&harmonic_exact(n, order));
    }
    if n == 0 {
        return PadicValue::exact_zero(ctx);
    }
    // N/D accumulated modulo p^(2e): every k is a unit here, and the extra
    // digits cover the valuation the sum itself may have.
    let t = 2 * ctx.precision();
    let m = ctx.pow(t);
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for k in 1..=n {
        let kp = num_traits::pow(BigInt::from(k), order as usize);
        num = (num * &kp + &den).mod_floor(&m);
        den = (den * kp).mod_floor(&m);
    }
    let inv = den.modinv(&m).expect("unit denominator");
    PadicValue::from_residue(ctx, &(num * inv), t as i64)
}

/// `H_0^{(order)}, ..., H_{n_max}^{(order)}` for `n_max < p`, each known
/// modulo `p^(2e)` like [`harmonic`].
pub fn harmonic_table(n_max: u64, order: u32, ctx: &Arc<PrimeContext>) -> Vec<PadicValue> {
    assert!(ctx.p_u64().is_some_and(|p| n_max < p), "harmonic_table needs n_max < p");
    let t = 2 * ctx.precision();
    let m = ctx.pow(t);
    let mut out = vec![PadicValue::exact_zero(ctx)];
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for k in 1..=n_max {
        let kp = num_traits::pow(BigInt::from(k), order as usize);
        num = (num * &kp + &den).mod_floor(&m);
        den = (den * kp).mod_floor(&m);
        let inv = den.modinv(&m).expect("unit denominator");
        out.push(PadicValue::from_residue(ctx, &(&num * inv), t as i64));
    }
    out
}

pub fn catalan(k: u64) -> BigInt {
    let row = binomial_row(2 * k as usize);
    &row[k as usize] / BigInt::from(k + 1)
}

/// Largest `p^(e-1)` block count the Gamma routine accepts.
const GAMMA_MAX_BLOCKS: u64 = 1 << 28;

/// Morita's `Γ_p(x)` modulo `p^e`.
///
/// With `n0 ≡ x (mod p^e)` in `[0, p^e)`, `Γ_p(x) ≡ (-1)^n0 * prod_{k<n0, p∤k} k`.
/// The product runs over blocks `jp+1 .. jp+p-1`; each block is a polynomial
/// in `jp` whose coefficients are computed once, so the cost is about
/// `p^(e-1) * e` multiplications instead of `p^e`.
pub fn padic_gamma(x: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    check_integral(x, ctx)?;
    let e = ctx.precision();
    let p = ctx.p_u64().ok_or(Error::GammaCostExceeded { e })?;
    let blocks = (p as f64).powi(e as i32 - 1);
    if blocks > GAMMA_MAX_BLOCKS as f64 {
        return Err(Error::GammaCostExceeded { e });
    }
    let m = ctx.pow(e);
    let inv = x.den().mod_floor(&m).modinv(&m).expect("unit denominator");
    let n0 = (x.num() * inv).mod_floor(&m);
    let n0 = n0.to_u64().expect("p^e below the block limit fits a word");
    let r = match m.to_u64() {
        Some(mw) if mw < 1 << 63 => {
            let v = gamma_product::<u128>(p as u128, n0 as u128, mw as u128, e);
            BigInt::from(v)
        }
        _ => gamma_product::<BigInt>(BigInt::from(p), BigInt::from(n0), m.clone(), e),
    };
    let r = if n0 % 2 == 1 { -r } else { r };
    Ok(PadicValue::from_residue(ctx, &r, e as i64))
}

/// `prod_{1<=k<n, p∤k} k mod m`, where `m = p^e`.
fn gamma_product<T>(p: T, n: T, m: T, e: u32) -> T
where
    T: Integer + Clone + From<u64>,
{
    let e = e as usize;
    // coefficients of prod_{i=1}^{p-1} (X + i), truncated at X^e
    let mut poly: Vec<T> = vec![T::zero(); e];
    poly[0] = T::one();
    let mut i = T::one();
    while i < p {
        let mut next = vec![T::zero(); e];
        for d in 0..e {
            next[d] = (next[d].clone() + poly[d].clone() * i.clone()).mod_floor(&m);
            if d + 1 < e {
                next[d + 1] = (next[d + 1].clone() + poly[d].clone()).mod_floor(&m);
            }
        }
        poly = next;
        i = i + T::one();
    }
    let (full, tail) = n.div_rem(&p);
    let mut acc = T::one();
    let mut j = T::zero();
    while j < full {
        let x = (j.clone() * p.clone()).mod_floor(&m);
        // Horner in X = jp
        let mut val = T::zero();
        for d in (0..e).rev() {
            val = (val * x.clone() + poly[d].clone()).mod_floor(&m);
        }
        acc = (acc * val).mod_floor(&m);
        j = j + T::one();
    }
    let base = full * p;
    let mut i = T::one();
    while i < tail {
        acc = (acc * (base.clone() + i.clone())).mod_floor(&m);
        i = i + T::one();
    }
    acc
}
