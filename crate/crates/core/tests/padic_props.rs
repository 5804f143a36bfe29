mod common;

use binomcong::{binom_rational, congruent_mod, padic_arith, reduce_rational, ArithOp, Error, PadicValue, RationalArg};
use common::{agrees, binom, ctx, q, qval};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 101];

fn rational(max: i64) -> impl Strategy<Value = BigRational> {
    (-max..=max, 1..=max).prop_map(|(n, d)| q(n, d))
}

/// Rationals that are p-adic units, so every operand has known_to = e.
fn unit_at(p: u64) -> impl Strategy<Value = BigRational> {
    (-5000i64..=5000, 1i64..=5000)
        .prop_filter("unit", move |(n, d)| n % p as i64 != 0 && d % p as i64 != 0)
        .prop_map(|(n, d)| q(n, d))
}

fn same_digits(x: &PadicValue, y: &PadicValue, e: u32) -> bool {
    congruent_mod(x, y, e as i64).unwrap()
}

proptest! {
    #[test]
    fn reduce_round_trips(x in rational(1_000_000), pi in 0..PRIMES.len(), e in 1u32..9) {
        let p = PRIMES[pi];
        let c = ctx(p, e);
        let v = reduce_rational(&RationalArg(x.clone()), &c);
        match qval(&x, p) {
            None => prop_assert!(v.is_exact_zero()),
            Some(vx) => {
                prop_assert_eq!(v.valuation(), Some(vx));
                let diff = v.lift() - &x;
                if let Some(vd) = qval(&diff, p) {
                    prop_assert!(vd >= vx + e as i64);
                }
            }
        }
    }

    #[test]
    fn ring_laws((p, e, x, y, z) in units()) {
        let c = ctx(p, e);
        let (x, y, z) = (c.rational(&x), c.rational(&y), c.rational(&z));
        prop_assert!(same_digits(&(&x + &y), &(&y + &x), e));
        prop_assert!(same_digits(&(&x * &y), &(&y * &x), e));
        prop_assert!(same_digits(&((&x + &y) + &z), &(&x + (&y + &z)), e));
        prop_assert!(same_digits(&((&x * &y) * &z), &(&x * (&y * &z)), e));
        prop_assert!(same_digits(&(&x * (&y + &z)), &(&x * &y + &x * &z), e));
        prop_assert!(same_digits(&(&x * &y).checked_div(&y).unwrap(), &x, e));
    }

    #[test]
    fn operations_agree_with_exact_rationals(x in rational(3000), y in rational(3000), pi in 0..PRIMES.len()) {
        let p = PRIMES[pi];
        let c = ctx(p, 6);
        let (px, py) = (c.rational(&x), c.rational(&y));
        let sum = &px + &py;
        let t = sum.known_to().unwrap_or(6);
        prop_assert!(agrees(&sum, &(&x + &y), t));
        let prod = &px * &py;
        prop_assert!(agrees(&prod, &(&x * &y), prod.known_to().unwrap_or(6)));
        if y != q(0, 1) {
            let quot = px.checked_div(&py).unwrap();
            prop_assert!(agrees(&quot, &(&x / &y), quot.known_to().unwrap_or(6)));
        }
    }

    #[test]
    fn congruence_is_monotone(x in rational(2000), y in rational(2000), pi in 0..PRIMES.len(), t in 1i64..6) {
        let p = PRIMES[pi];
        let c = ctx(p, 10);
        let (px, py) = (c.rational(&x), c.rational(&y));
        if congruent_mod(&px, &py, t).unwrap_or(false) {
            for s in 0..t {
                prop_assert!(congruent_mod(&px, &py, s).unwrap());
            }
        }
        prop_assert!(congruent_mod(&px, &px, t).unwrap_or(true));
        prop_assert_eq!(congruent_mod(&px, &py, t).ok(), congruent_mod(&py, &px, t).ok());
    }

    #[test]
    fn congruence_is_transitive(x in rational(50), d1 in rational(50), d2 in rational(50), pi in 0..PRIMES.len(), t in 1i64..5) {
        let p = PRIMES[pi];
        let c = ctx(p, 12);
        let pt = BigRational::from_integer(BigInt::from(p).pow(t as u32));
        let y = &x + &d1 * &pt;
        let z = &y + &d2 * &pt;
        let (px, py, pz) = (c.rational(&x), c.rational(&y), c.rational(&z));
        let ok = |a: &PadicValue, b: &PadicValue| congruent_mod(a, b, t).unwrap_or(false);
        if ok(&px, &py) && ok(&py, &pz) {
            prop_assert!(ok(&px, &pz));
        }
    }

    #[test]
    fn pascal_rule(n in -60i64..60, d in 1i64..13, pi in 1..PRIMES.len(), k in 1i64..100) {
        let p = PRIMES[pi];
        prop_assume!(d % p as i64 != 0);
        let k = k % p as i64;
        let c = ctx(p, 6);
        let a = RationalArg::frac(n, d);
        let a1 = RationalArg(a.value() - q(1, 1));
        let lhs = binom_rational(&a, k, &c);
        let rhs = binom_rational(&a1, k, &c) + binom_rational(&a1, k - 1, &c);
        prop_assert!(same_digits(&lhs, &rhs, 6));
    }
}

type Units = (u64, u32, BigRational, BigRational, BigRational);

fn units() -> impl Strategy<Value = Units> {
    (0..PRIMES.len(), 1u32..7).prop_flat_map(|(pi, e)| {
        let p = PRIMES[pi];
        (Just(p), Just(e), unit_at(p), unit_at(p), unit_at(p))
    })
}

#[test]
fn binomials_match_the_product_formula() {
    let args = [q(1, 2), q(-1, 2), q(1, 3), q(-1, 3), q(1, 4), q(-1, 4), q(1, 6), q(-1, 6), q(5, 7)];
    for p in common::small_primes(31) {
        let c = ctx(p, 8);
        for a in &args {
            if (a.denom() % BigInt::from(p)) == BigInt::from(0) {
                continue;
            }
            for k in 0..p as i64 {
                let v = binom_rational(&RationalArg(a.clone()), k, &c);
                let exact = binom(a, k);
                assert!(agrees(&v, &exact, v.known_to().unwrap_or(8)), "binom({a}, {k}) at p = {p}");
            }
        }
    }
}

#[test]
fn cancellation_loses_digits() {
    let c = ctx(5, 4);
    let x = c.int(1);
    let y = c.rational(&q(1 + 125, 1));
    let d = &y - &x;
    assert_eq!(d.valuation(), Some(3));
    assert_eq!(d.known_to(), Some(4));
    let z = &x - &x;
    assert!(z.is_zero() && !z.is_exact_zero());
    assert!(matches!(
        congruent_mod(&z, &PadicValue::exact_zero(&c), 5),
        Err(Error::InsufficientPrecision { needed: 5, known: 4 })
    ));
}

#[test]
fn mixed_primes_are_rejected() {
    let a = ctx(5, 4).int(3);
    let b = ctx(7, 4).int(3);
    assert!(matches!(padic_arith(ArithOp::Add, &a, &b), Err(Error::ContextMismatch(..))));
}

#[test]
fn spot_values() {
    let c = ctx(5, 4);
    // 6105/4096 ≡ 5 (mod 625)
    let v = c.rational(&q(6105, 4096));
    assert_eq!(v.residue_mod(4).unwrap(), BigInt::from(5));
    assert_eq!(c.ratio(1, 2).residue_mod(4).unwrap(), BigInt::from(313));
    assert!(c.ratio(1, 5).residue_mod(1).is_err());
}
