mod common;

use binomcong::sums::{
    c_p, catalan_sum, f_p, g_p, q_n, q_p, s_p, weighted_sum, weighted_sum_terms, SumSpec,
};
use binomcong::{Error, PadicValue, RationalArg};
use common::{agrees, binom, ctx, pow, q, qi, small_primes, standard, weighted};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const E: u32 = 8;

fn params(p: u64) -> Vec<BigRational> {
    let all = [q(1, 2), q(-1, 2), q(-1, 3), q(-1, 4), q(-3, 4), q(-1, 6), q(-1, 8), q(-3, 8), q(-1, 12), q(5, 7), q(-7, 3), q(13, 1), q(-17, 5)];
    let pb = BigInt::from(p);
    all.into_iter().filter(|a| !(a.denom() % &pb).is_zero()).collect()
}

fn close(v: &PadicValue, exact: &BigRational) -> bool {
    agrees(v, exact, v.known_to().unwrap_or(E as i64).min(E as i64))
}

#[test]
fn named_sums_match_naive_summation() {
    for p in small_primes(31) {
        let c = ctx(p, E);
        for a in params(p) {
            let ra = RationalArg(a.clone());
            let ag = a.clone();
            let weight = move |k: &BigRational| &ag - qi(2) * k;
            assert!(close(&f_p(&ra, &c).unwrap(), &weighted(&a, 2, 0, -1, p, |_| qi(1))), "f_{p}({a})");
            assert!(close(&g_p(&ra, &c).unwrap(), &weighted(&a, 2, 1, -1, p, &weight)), "g_{p}({a})");
            assert!(close(&c_p(&ra, &c).unwrap(), &weighted(&a, 3, 1, 1, p, &weight)), "C_{p}({a})");
            assert!(close(&q_p(&ra, &c).unwrap(), &weighted(&a, 4, 1, 1, p, &weight)), "Q_{p}({a})");
            let neg = -qi(1) - &a;
            let mut s = BigRational::zero();
            for k in 0..p as i64 {
                s += binom(&qi(2 * k), k) * binom(&a, k) * binom(&neg, k) / pow(&qi(4), k as u32);
            }
            assert!(close(&s_p(&ra, &c).unwrap(), &s), "S_{p}({a})");
        }
        for n in [p, p.div_ceil(2)] {
            let mut s = BigRational::zero();
            for k in 0..n as i64 {
                let ck = binom(&qi(2 * k), k) / qi(k + 1);
                s += qi(4 * k + 3) * pow(&ck, 4) / pow(&qi(256), k as u32);
            }
            assert!(close(&catalan_sum(n, &c).unwrap(), &s));
        }
    }
}

#[test]
fn standard_weighted_sums_match_naive_summation() {
    for p in small_primes(31) {
        let c = ctx(p, E);
        for a in params(p) {
            if (a.numer() % BigInt::from(p)).is_zero() {
                continue;
            }
            for m in 1..=4u32 {
                for s in 0..=5u32 {
                    for sign in [1i8, -1] {
                        for n in [p, p.div_ceil(2)] {
                            let spec = SumSpec::new(RationalArg(a.clone()), m, s, sign, n);
                            let got = weighted_sum(&spec, &c).unwrap();
                            let want = weighted(&a, m, s, sign, n, standard(&a));
                            assert!(close(&got, &want), "m={m} s={s} sign={sign} n={n} a={a} p={p}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn linear_weights_match_naive_summation() {
    for (a, c0, c1) in [(q(1, 2), -1, 2), (q(-3, 4), 3, 8), (q(-3, 8), 3, 16)] {
        for p in small_primes(31).into_iter().filter(|&p| p > 3) {
            let c = ctx(p, E);
            let spec = SumSpec::new(RationalArg(a.clone()), 4, 1, 1, p).linear(qi(c0), qi(c1));
            let want = weighted(&a, 4, 1, 1, p, |k| qi(c0) + qi(c1) * k);
            assert!(close(&weighted_sum(&spec, &c).unwrap(), &want));
        }
    }
}

#[test]
fn zero_parameter_is_rejected() {
    let c = ctx(5, 4);
    let spec = SumSpec::new(RationalArg::frac(10, 3), 2, 1, 1, 5);
    assert_eq!(weighted_sum(&spec, &c), Err(Error::ZeroParameter));
    let spec = SumSpec::new(RationalArg::frac(10, 3), 2, 0, 1, 5);
    assert!(weighted_sum(&spec, &c).is_ok());
}

#[test]
fn half_range_quadruple_sum_at_five() {
    // sum_{k<3} (4k+1) binom(-1/2,k)^4
    let exact = weighted(&q(-1, 2), 4, 1, 1, 3, |k| qi(4) * k + qi(1));
    assert_eq!(exact, q(6105, 4096));
    let c = ctx(5, 6);
    let v = weighted_sum(&SumSpec::new(RationalArg::frac(-1, 2), 4, 1, 1, 3), &c).unwrap();
    assert_eq!(v.residue_mod(4).unwrap(), BigInt::from(5));
}

fn binomial_row(m: u32) -> Vec<BigRational> {
    (0..=m as i64).map(|j| binom(&qi(m as i64), j)).collect()
}

fn parity_sum(a: &BigRational, m: u32, parity: u32, sign: i8, n: u64) -> BigRational {
    binomial_row(m)
        .iter()
        .enumerate()
        .filter(|(j, _)| *j as u32 % 2 == parity)
        .map(|(j, c)| c * weighted(a, m, j as u32, sign, n, standard(a)))
        .sum()
}

fn sample_a() -> impl Strategy<Value = BigRational> {
    (-40i64..40, 1i64..10).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| q(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn binomial_combination_identities(a in sample_a(), m in 1u32..=6, n in 1u64..12) {
        let b = pow(&binom(&(&a - qi(1)), n as i64 - 1), m);
        let two = pow(&qi(2), m - 1);
        prop_assert_eq!(parity_sum(&a, m, 1, 1, n), &two * &b);
        let sign = if n % 2 == 1 { qi(1) } else { qi(-1) };
        prop_assert_eq!(parity_sum(&a, m, 0, -1, n), two * sign * b);
    }

    #[test]
    fn odd_weight_closed_forms(a in sample_a(), n in 1u64..12) {
        prop_assume!(a != qi(1) && a != qi(2));
        let b = binom(&(&a - qi(1)), n as i64 - 1);
        let nq = qi(n as i64);
        let s3 = (qi(4) * &nq * &nq - qi(4) * (&a + qi(1)) * &nq + &a * (&a + qi(3))) / (&a * (&a - qi(1))) * &b * &b;
        prop_assert_eq!(weighted(&a, 2, 3, 1, n, standard(&a)), s3);
        let poly = qi(16) * (&a - qi(1)) * pow(&nq, 4)
            - qi(32) * (&a * &a - qi(1)) * pow(&nq, 3)
            + (qi(24) * pow(&a, 3) + qi(32) * &a * &a - qi(48) * &a - qi(16)) * &nq * &nq
            + (qi(-8) * pow(&a, 4) - qi(24) * pow(&a, 3) + qi(16) * &a * &a + qi(32) * &a) * &nq
            + pow(&a, 5) + qi(5) * pow(&a, 4) + qi(2) * pow(&a, 3) - qi(16) * &a * &a;
        let s5 = &nq * &nq * pow(&binom(&a, n as i64), 2) / (pow(&a, 5) * (&a - qi(1)) * (&a - qi(2))) * poly;
        prop_assert_eq!(weighted(&a, 2, 5, 1, n, standard(&a)), s5);
    }

    #[test]
    fn cubic_and_quartic_telescoping(a in sample_a(), n in 1u64..12) {
        let a1 = &a + qi(1);
        prop_assume!(a1.clone() - qi(n as i64) != BigRational::zero());
        let nq = qi(n as i64);
        let lin = |x: &BigRational| { let x = x.clone(); move |k: &BigRational| &x - qi(2) * k };
        let cn = |x: &BigRational| weighted(x, 3, 1, 1, n, lin(x));
        let qn = |x: &BigRational| weighted(x, 4, 1, 1, n, lin(x));
        let d = &a1 - &nq;
        let g3 = (qi(2) * &a + qi(2) - &nq) * pow(&nq, 3) / pow(&d, 3) * pow(&binom(&a, n as i64), 3);
        prop_assert_eq!(cn(&a) + cn(&a1), g3);
        let g4 = (qi(2) * &nq * &nq - qi(6) * &a1 * &nq + qi(5) * &a1 * &a1) / pow(&d, 4) * pow(&nq, 4) * pow(&binom(&a, n as i64), 4);
        prop_assert_eq!(&a1 * qn(&a1) + qi(2) * (qi(2) * &a + qi(1)) * qn(&a), g4);
    }

    #[test]
    fn kernel_agrees_with_closed_forms(a in sample_a(), pi in 0..5usize) {
        let p = [5u64, 7, 11, 13, 17][pi];
        prop_assume!(!(a.denom() % BigInt::from(p)).is_zero() && !(a.numer() % BigInt::from(p)).is_zero());
        let c = ctx(p, E);
        let ra = RationalArg(a.clone());
        let b = binom(&(&a - qi(1)), p as i64 - 1);
        for m in 1..=4u32 {
            let mut acc = c.zero();
            for (j, coef) in binomial_row(m).iter().enumerate() {
                if j % 2 == 1 {
                    let s = weighted_sum(&SumSpec::new(ra.clone(), m, j as u32, 1, p), &c).unwrap();
                    acc = acc + c.rational(coef) * s;
                }
            }
            prop_assert!(close(&acc, &(pow(&qi(2), m - 1) * pow(&b, m))));
        }
        let a1 = &a + qi(1);
        if !(a1.numer() % BigInt::from(p)).is_zero() || a1.numer().is_zero() {
            let lhs = c.rational(&a1) * q_n(&RationalArg(a1.clone()), p, &c).unwrap()
                + c.rational(&(qi(2) * (qi(2) * &a + qi(1)))) * q_n(&ra, p, &c).unwrap();
            let nq = qi(p as i64);
            let d = &a1 - &nq;
            prop_assume!(!d.is_zero());
            let g4 = (qi(2) * &nq * &nq - qi(6) * &a1 * &nq + qi(5) * &a1 * &a1) / pow(&d, 4) * pow(&nq, 4) * pow(&binom(&a, p as i64), 4);
            prop_assert!(close(&lhs, &g4));
        }
    }

    #[test]
    fn summation_order_is_irrelevant(a in sample_a(), m in 1u32..=4, s in 0u32..=3, pi in 0..4usize) {
        let p = [5u64, 7, 11, 13][pi];
        prop_assume!(!(a.denom() % BigInt::from(p)).is_zero() && !(a.numer() % BigInt::from(p)).is_zero());
        let c = ctx(p, E);
        let spec = SumSpec::new(RationalArg(a), m, s, -1, p);
        let terms = weighted_sum_terms(&spec, &c).unwrap();
        let fwd = terms.iter().fold(c.zero(), |acc, t| acc + t);
        let rev = terms.iter().rev().fold(c.zero(), |acc, t| acc + t);
        prop_assert_eq!(fwd, rev);
    }
}

#[test]
fn one_is_the_empty_product() {
    assert_eq!(binom(&q(7, 3), 0), BigRational::one());
}
