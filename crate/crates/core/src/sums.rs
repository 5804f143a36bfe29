//! Truncated binomial sums evaluated p-adically.
//!
//! Everything goes through one kernel for
//! `sum_{k<n} sign^k * prod_i binom(a_i, k)^{m_i} * w_k^s`; the named sums of
//! the suite are thin wrappers. Binomials are updated incrementally with the
//! exact factor `(a-k)/(k+1)`, so no term loses relative precision and only
//! the final additions can.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{reduce_rational, PadicValue, PrimeContext, RationalArg};

/// The weight raised to the power `s` in each term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight {
    /// `1 - 2k/a`
    Standard,
    /// `c0 + c1*k`
    Linear { c0: BigRational, c1: BigRational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSpec {
    pub a: RationalArg,
    pub m: u32,
    pub s: u32,
    pub sign: i8,
    pub n: u64,
    pub weight: Weight,
}

impl SumSpec {
    pub fn new(a: RationalArg, m: u32, s: u32, sign: i8, n: u64) -> Self {
        SumSpec { a, m, s, sign, n, weight: Weight::Standard }
    }

    /// Same sum with weight `c0 + c1*k` in place of `1 - 2k/a`.
    pub fn linear(mut self, c0: BigRational, c1: BigRational) -> Self {
        self.weight = Weight::Linear { c0, c1 };
        self
    }
}

fn require_integral(a: &RationalArg, ctx: &PrimeContext) -> Result<()> {
    if a.is_integral_at(ctx.p()) {
        Ok(())
    } else {
        Err(Error::NotPAdicInteger(a.to_string(), ctx.p().to_string()))
    }
}

fn prime_word(ctx: &PrimeContext) -> Result<u64> {
    ctx.p_u64().ok_or_else(|| Error::PrimeTooLarge(ctx.p().to_string()))
}

/// A product of binomials `binom(a, k)` stepped through `k = 0, 1, ...`.
struct BinomialWalk {
    a: BigRational,
    k: i64,
    value: PadicValue,
}

impl BinomialWalk {
    fn new(a: &RationalArg, ctx: &Arc<PrimeContext>) -> Self {
        BinomialWalk { a: a.value().clone(), k: 0, value: ctx.one() }
    }

    fn advance(&mut self, ctx: &Arc<PrimeContext>) {
        let k = BigRational::from_integer(self.k.into());
        let f = (&self.a - &k) / (k + BigRational::one());
        self.value = &self.value * reduce_rational(&RationalArg(f), ctx);
        self.k += 1;
    }
}

/// The individual terms of `sum_{k<n} sign^k prod binom(a_i,k)^{m_i} w_k^s`.
pub fn product_terms(
    factors: &[(RationalArg, u32)],
    sign: i8,
    weight: Option<(&Weight, u32, &RationalArg)>,
    n: u64,
    ctx: &Arc<PrimeContext>,
) -> Result<Vec<PadicValue>> {
    for (a, _) in factors {
        require_integral(a, ctx)?;
    }
    if let Some((Weight::Standard, s, a)) = weight {
        if s >= 1 && (a.num().is_zero() || a.num().is_multiple_of(ctx.p())) {
            return Err(Error::ZeroParameter);
        }
    }
    let mut walks: Vec<BinomialWalk> = factors.iter().map(|(a, _)| BinomialWalk::new(a, ctx)).collect();
    let mut out = Vec::with_capacity(n as usize);
    for k in 0..n {
        let mut term = if sign < 0 && k % 2 == 1 { -ctx.one() } else { ctx.one() };
        for (walk, (_, m)) in walks.iter().zip(factors) {
            term = term * walk.value.pow(*m as i64)?;
        }
        if let Some((w, s, a)) = weight {
            if s > 0 {
                let kq = BigRational::from_integer(BigInt::from(k));
                let wk = match w {
                    Weight::Standard => BigRational::one() - kq * BigInt::from(2) / a.value(),
                    Weight::Linear { c0, c1 } => c0 + c1 * kq,
                };
                term = term * reduce_rational(&RationalArg(wk), ctx).pow(s as i64)?;
            }
        }
        out.push(term);
        for walk in walks.iter_mut() {
            walk.advance(ctx);
        }
    }
    Ok(out)
}

/// Run `f` at the working precision; if the result is not determined even
/// modulo `p`, retry once at doubled precision.
fn with_retry<F>(ctx: &Arc<PrimeContext>, f: F) -> Result<PadicValue>
where
    F: Fn(&Arc<PrimeContext>) -> Result<PadicValue>,
{
    let determined = |x: &PadicValue| x.known_to().is_none_or(|n| n >= 1);
    match f(ctx) {
        Ok(x) if determined(&x) => Ok(x),
        Err(e) if !e.is_precision() => Err(e),
        _ => {
            let wide = ctx.at_precision(2 * ctx.precision())?;
            match f(&wide) {
                Ok(x) if determined(&x) => Ok(x),
                Err(e) if !e.is_precision() => Err(e),
                _ => Err(Error::PrecisionExhausted),
            }
        }
    }
}

fn sum(terms: Vec<PadicValue>, ctx: &Arc<PrimeContext>) -> PadicValue {
    terms.into_iter().fold(PadicValue::exact_zero(ctx), |acc, t| acc + t)
}

pub fn weighted_sum_terms(spec: &SumSpec, ctx: &Arc<PrimeContext>) -> Result<Vec<PadicValue>> {
    product_terms(
        &[(spec.a.clone(), spec.m)],
        spec.sign,
        Some((&spec.weight, spec.s, &spec.a)),
        spec.n,
        ctx,
    )
}

/// `sum_{k<n} sign^k binom(a,k)^m w_k^s`.
pub fn weighted_sum(spec: &SumSpec, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    with_retry(ctx, |c| Ok(sum(weighted_sum_terms(spec, c)?, c)))
}

fn linear(spec: SumSpec, c0: &BigRational, c1: i64) -> SumSpec {
    spec.linear(c0.clone(), BigRational::from_integer(c1.into()))
}

/// `f_p(a) = sum_{k<p} binom(a,k)^2 (-1)^k`.
pub fn f_p(a: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    let p = prime_word(ctx)?;
    weighted_sum(&SumSpec::new(a.clone(), 2, 0, -1, p), ctx)
}

/// `g_p(a) = sum_{k<p} binom(a,k)^2 (-1)^k (a-2k)`.
pub fn g_p(a: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    let p = prime_word(ctx)?;
    weighted_sum(&linear(SumSpec::new(a.clone(), 2, 1, -1, p), a.value(), -2), ctx)
}

/// `C_p(a) = sum_{k<p} (a-2k) binom(a,k)^3`.
pub fn c_p(a: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    let p = prime_word(ctx)?;
    weighted_sum(&linear(SumSpec::new(a.clone(), 3, 1, 1, p), a.value(), -2), ctx)
}

/// `Q_n(a) = sum_{k<n} (a-2k) binom(a,k)^4`.
pub fn q_n(a: &RationalArg, n: u64, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    weighted_sum(&linear(SumSpec::new(a.clone(), 4, 1, 1, n), a.value(), -2), ctx)
}

pub fn q_p(a: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    q_n(a, prime_word(ctx)?, ctx)
}

/// `S_p(x) = sum_{k<p} binom(2k,k) binom(x,k) binom(-1-x,k) / 4^k`, with
/// `binom(2k,k)/4^k` written as `(-1)^k binom(-1/2,k)`.
pub fn s_p(x: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    let p = prime_word(ctx)?;
    let neg = RationalArg(-BigRational::one() - x.value());
    let factors = [(RationalArg::frac(-1, 2), 1), (x.clone(), 1), (neg, 1)];
    with_retry(ctx, |c| Ok(sum(product_terms(&factors, -1, None, p, c)?, c)))
}

/// `sum_{k<n} (4k+3) C_k^4 / 256^k` with `C_k` the Catalan numbers.
pub fn catalan_sum(n: u64, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    with_retry(ctx, |c| {
        let mut acc = PadicValue::exact_zero(c);
        // C_k / 4^k, stepped by (2k+1) / (2(k+2))
        let mut ck = c.one();
        for k in 0..n as i64 {
            acc = acc + c.int(4 * k + 3) * ck.pow(4)?;
            ck = ck * c.ratio(2 * k + 1, 2 * (k + 2));
        }
        Ok(acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> Arc<PrimeContext> {
        PrimeContext::new(p, 8).unwrap()
    }

    #[test]
    fn examples() {
        let c = ctx(5);
        let two = RationalArg::int(2);
        assert!(weighted_sum(&SumSpec::new(two.clone(), 1, 1, 1, 3), &c).unwrap().is_zero());
        let one_term = SumSpec::new(RationalArg::frac(3, 7), 4, 3, -1, 1);
        assert_eq!(weighted_sum(&one_term, &c).unwrap(), c.one());
        assert_eq!(f_p(&two, &c).unwrap(), c.int(-2));
        assert_eq!(f_p(&RationalArg::int(0), &c).unwrap(), c.one());
        // 2*1 - 0*4 + (-2)*1
        assert!(g_p(&two, &c).unwrap().is_zero());
        assert!(g_p(&RationalArg::int(0), &c).unwrap().is_zero());
        assert!(c_p(&RationalArg::int(1), &c).unwrap().is_zero());
        assert!(c_p(&RationalArg::int(0), &c).unwrap().is_zero());
        let half = q_n(&RationalArg::frac(-1, 2), 3, &c).unwrap();
        let lhs = half.mul_int(-2);
        assert!(crate::padic::congruent_mod(&lhs, &c.ratio(6105, 4096), lhs.known_to().unwrap()).unwrap());
        assert!(q_p(&RationalArg::int(0), &c).unwrap().is_zero());
    }

    #[test]
    fn zero_parameter() {
        let c = ctx(7);
        let spec = SumSpec::new(RationalArg::frac(14, 3), 2, 1, 1, 7);
        assert_eq!(weighted_sum(&spec, &c), Err(Error::ZeroParameter));
        let spec = SumSpec::new(RationalArg::frac(14, 3), 2, 0, 1, 7);
        assert!(weighted_sum(&spec, &c).is_ok());
        let spec = SumSpec::new(RationalArg::frac(1, 7), 2, 0, 1, 7);
        assert!(matches!(weighted_sum(&spec, &c), Err(Error::NotPAdicInteger(_, _))));
    }

    #[test]
    fn s_p_prefix() {
        let c = ctx(13);
        let t = product_terms(
            &[(RationalArg::frac(-1, 2), 1), (RationalArg::frac(-1, 4), 1), (RationalArg::frac(-3, 4), 1)],
            -1,
            None,
            1,
            &c,
        )
        .unwrap();
        assert_eq!(t, vec![c.one()]);
    }
}
