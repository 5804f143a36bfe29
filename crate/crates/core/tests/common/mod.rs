//! Exact big-rational oracles. Nothing here goes through the p-adic kernel.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use binomcong::{congruent_mod, PadicValue, PrimeContext};
use std::sync::Arc;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `binom(x, k)` by the falling-factorial product.
pub fn binom(x: &BigRational, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    for j in 0..k {
        acc = acc * (x - qi(j)) / qi(j + 1);
    }
    acc
}

pub fn pow(x: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * x)
}

/// `sum_{k<n} sign^k binom(a,k)^m w(k)^s` with `w` supplied by the caller.
pub fn weighted<W: Fn(&BigRational) -> BigRational>(a: &BigRational, m: u32, s: u32, sign: i8, n: u64, w: W) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 0..n as i64 {
        let kq = qi(k);
        let mut t = pow(&binom(a, k), m) * pow(&w(&kq), s);
        if sign < 0 && k % 2 == 1 {
            t = -t;
        }
        acc += t;
    }
    acc
}

/// The `1 - 2k/a` weight.
pub fn standard(a: &BigRational) -> impl Fn(&BigRational) -> BigRational + '_ {
    move |k| BigRational::one() - qi(2) * k / a
}

pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `v_p(x)`, or `None` at zero.
pub fn qval(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(valuation(x.numer(), p) as i64 - valuation(x.denom(), p) as i64)
}

/// True when `value ≡ exact (mod p^t)`.
pub fn agrees(value: &PadicValue, exact: &BigRational, t: i64) -> bool {
    let ctx = value.ctx().clone();
    congruent_mod(value, &ctx.rational(exact), t).expect("enough digits")
}

pub fn ctx(p: u64, e: u32) -> Arc<PrimeContext> {
    PrimeContext::new(p, e).unwrap()
}

pub fn small_primes(hi: u64) -> Vec<u64> {
    (3..=hi).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// `x mod p` for a rational with unit denominator.
pub fn mod_p(x: &BigRational, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let d = x.denom().modinv(&pb).expect("unit denominator");
    let r = (x.numer() * d) % &pb;
    let r: i64 = r.try_into().unwrap();
    r.rem_euclid(p as i64)
}

/// `x mod p^t` in `[0, p^t)` for a rational with unit denominator.
pub fn residue(x: &BigRational, p: u64, t: u32) -> BigInt {
    let m = BigInt::from(p).pow(t);
    let d = x.denom().modinv(&m).expect("unit denominator");
    let r = (x.numer() * d) % &m;
    if r.is_negative() { r + m } else { r }
}
