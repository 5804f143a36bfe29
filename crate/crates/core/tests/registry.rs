mod common;

use std::collections::HashSet;

use binomcong::congruent_mod;
use binomcong::quadform::{represent, thm59_c, QuadForm};
use binomcong::suite::{
    find_check, fixed, list_checks, run_check, run_range, run_spec, sample_params, sampled, select_checks, CheckResult,
    Kind, PrimeEnv, RunOptions, Sampling, Status,
};
use binomcong::RationalArg;
use common::{agrees, binom, pow, q, qi, residue, small_primes, standard, weighted};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn opts() -> RunOptions {
    RunOptions::default()
}

fn stripped(mut r: Vec<CheckResult>) -> Vec<CheckResult> {
    for x in &mut r {
        x.micros = 0;
    }
    r
}

#[test]
fn registry_shape() {
    let all = list_checks();
    assert!(all.len() >= 55, "{} entries", all.len());
    let ids: HashSet<_> = all.iter().map(|c| c.id.clone()).collect();
    assert_eq!(ids.len(), all.len());
    let mut sorted: Vec<_> = all.iter().map(|c| c.id.clone()).collect();
    sorted.sort();
    assert_eq!(sorted, all.iter().map(|c| c.id.clone()).collect::<Vec<_>>());
    for c in &all {
        assert!(!c.statement.trim().is_empty(), "{}", c.id);
        assert_eq!(Kind::parse(c.kind.as_str()), Some(c.kind));
        if c.kind == Kind::Conjecture {
            assert!(c.isolated, "{}", c.id);
        }
    }
    assert!(find_check("RMK51").unwrap().isolated);
    assert!(find_check("NOPE").is_none());
}

#[test]
fn selection_by_id_and_prefix() {
    let ids = |v: Vec<&str>| select_checks(&v.into_iter().map(String::from).collect::<Vec<_>>());
    assert_eq!(ids(vec!["all"]).unwrap().len(), list_checks().len());
    assert_eq!(ids(vec!["THM42"]).unwrap().len(), 7);
    let picked = ids(vec!["COR51"]).unwrap();
    assert_eq!(picked.iter().map(|c| c.id.as_str()).collect::<Vec<_>>(), ["COR51"]);
    assert_eq!(ids(vec!["RMK51"]).unwrap().len(), 2);
    assert!(ids(vec!["THM99"]).is_err());
}

#[test]
fn quadruple_half_sum_at_five() {
    let r = run_check("COR51", 5, None, &opts()).unwrap();
    let exact = weighted(&q(-1, 2), 4, 1, 1, 3, standard(&q(-1, 2)));
    assert_eq!(r.t, 4);
    assert_eq!(r.lhs, residue(&exact, 5, 4).to_string());
    assert_eq!(r.lhs, "5");
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn cubic_sums_at_five() {
    let a = q(-1, 2);
    let exact = weighted(&a, 3, 1, 1, 5, standard(&a));
    let r = run_check("VH-11", 5, None, &opts()).unwrap();
    assert_eq!(r.lhs, residue(&exact, 5, 3).to_string());
    assert_eq!(r.rhs, "5");
    assert!(r.pass);
    // E_2 = -1: 5 + 125 E_2 = -120
    let r = run_check("SUN-17", 5, None, &opts()).unwrap();
    assert_eq!(r.rhs, residue(&qi(-120), 5, 4).to_string());
    assert_eq!(r.rhs, "505");
    assert_eq!(r.lhs, residue(&exact, 5, 4).to_string());
    assert!(r.pass);
}

#[test]
fn quartic_at_thirteen() {
    assert_eq!(represent(13, QuadForm::F1).unwrap().x, -3);
    let r = run_check("THM53", 13, None, &opts()).unwrap();
    let a = q(-1, 4);
    let exact = weighted(&a, 4, 1, 1, 13, |k| qi(8) * k + qi(1));
    assert_eq!(r.lhs, residue(&exact, 13, 4).to_string());
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn sampled_family_over_small_primes() {
    let specs = select_checks(&["THM41a".to_string()]).unwrap();
    let sampling = Sampling { count: 20, ..Sampling::default() };
    let report = run_range(&specs, 5, 31, &sampling, &opts()).unwrap();
    assert!(report.summary.total >= 100);
    assert_eq!(report.summary.pass, report.summary.total);
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn samples_are_distinct_sorted_and_admissible() {
    let sampling = Sampling::default();
    for spec in list_checks().iter().filter(|c| c.is_sampled()) {
        for p in [5u64, 13, 29] {
            let s = sample_params(spec, p, &sampling);
            assert_eq!(s, sample_params(spec, p, &sampling));
            assert!(s.len() <= sampling.count);
            let mut seen = HashSet::new();
            for w in s.windows(2) {
                assert!(w[0].a.value() < w[1].a.value());
            }
            for x in &s {
                assert!(seen.insert(x.a.clone()));
                let v = x.a.value();
                assert!(!(v.denom() % BigInt::from(p)).is_zero());
                assert!(*v.denom() <= BigInt::from(sampling.den_max));
                assert!(spec.applies(p, Some(x)), "{} at {p}", spec.id);
            }
        }
    }
}

#[test]
fn reports_do_not_depend_on_threads() {
    let specs = select_checks(&["THM42".into(), "VH-11".into(), "R32-ZERO".into(), "LEM52".into()]).unwrap();
    let sampling = Sampling { count: 4, ..Sampling::default() };
    let one = run_range(&specs, 5, 41, &sampling, &RunOptions { jobs: 1, ..opts() }).unwrap();
    let many = run_range(&specs, 5, 41, &sampling, &RunOptions { jobs: 4, ..opts() }).unwrap();
    let again = run_range(&specs, 5, 41, &sampling, &RunOptions { jobs: 3, ..opts() }).unwrap();
    assert_eq!(stripped(one.results.clone()), stripped(many.results));
    assert_eq!(stripped(one.results.clone()), stripped(again.results));
    let keys: Vec<_> = one.results.iter().map(|r| (r.id.clone(), r.p, r.a.as_ref().map(|a| a.value().clone()))).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn exit_codes() {
    let wrong = fixed("X-WRONG", Kind::Theorem, "1 ≡ 2 (mod p)", |_| true, |_| 1, |e| Ok(vec![e.int(1)]), |e| Ok(vec![e.int(2)]));
    let report = run_range(&[wrong], 5, 13, &Sampling::default(), &opts()).unwrap();
    assert_eq!(report.summary.fail, 4);
    assert_eq!(report.exit_code(), 1);

    let guess = fixed("X-GUESS", Kind::Conjecture, "1 ≡ 2 (mod p)", |_| true, |_| 1, |e| Ok(vec![e.int(1)]), |e| Ok(vec![e.int(2)]));
    let fine = fixed("X-FINE", Kind::Lemma, "p ≡ 0 (mod p)", |_| true, |_| 1, |e| Ok(vec![e.pp(1)]), |e| Ok(vec![e.zero()]));
    let report = run_range(&[guess, fine], 5, 13, &Sampling::default(), &opts()).unwrap();
    assert_eq!((report.summary.refuted, report.summary.pass), (4, 4));
    assert_eq!(report.exit_code(), 3);
    assert_eq!(report.failures().count(), 4);

    let fine = fixed("X-FINE", Kind::Lemma, "p ≡ 0 (mod p)", |_| true, |_| 1, |e| Ok(vec![e.pp(1)]), |e| Ok(vec![e.zero()]));
    assert_eq!(run_range(&[fine], 5, 13, &Sampling::default(), &opts()).unwrap().exit_code(), 0);
}

#[test]
fn undecidable_checks_are_errors_not_failures() {
    // a cancelled zero knows e digits, e + 4 after the retry, never 40
    let deep = fixed("X-DEEP", Kind::Lemma, "0 ≡ 0", |_| true, |_| 40, |e| Ok(vec![e.int(1) - e.int(1)]), |e| Ok(vec![e.zero()]));
    let env = PrimeEnv::new(7, 6).unwrap();
    let r = run_spec(&deep, &env, None, &opts()).unwrap();
    assert_eq!(r.status, Status::Error);
    assert!(r.error.is_some());
}

#[test]
fn retry_widens_precision() {
    // dividing out p^3 leaves e - 3 known digits, so e = 4 is too few and e = 8 enough
    let s = sampled(
        "X-RETRY",
        Kind::Lemma,
        "((1 + p^3) - 1)/p^3 ≡ 1 (mod p^4)",
        |_, _| true,
        4,
        |e, _| Ok(vec![((e.int(1) + e.pp(3)) - e.int(1)).checked_div(&e.pp(3))?]),
        |e, _| Ok(vec![e.int(1)]),
    );
    let env = PrimeEnv::new(5, 4).unwrap();
    let param = env.param(&RationalArg::frac(1, 2)).unwrap();
    let r = run_spec(&s, &env, Some(&param), &opts()).unwrap();
    assert_eq!(r.status, Status::Pass);
    let r = run_spec(&s, &env, Some(&param), &RunOptions { retry: false, ..opts() }).unwrap();
    assert_eq!(r.status, Status::Error);
}

fn exact_catalan_sum(n: u64) -> BigRational {
    let mut s = BigRational::zero();
    for k in 0..n as i64 {
        let ck = binom(&qi(2 * k), k) / qi(k + 1);
        s += qi(4 * k + 3) * pow(&ck, 4) / pow(&qi(256), k as u32);
    }
    s
}

#[test]
fn catalan_remark_as_printed_is_refuted() {
    for p in small_primes(61).into_iter().filter(|&p| p >= 5) {
        let r = run_check("RMK51", p, None, &opts()).unwrap();
        assert_eq!(r.status, Status::Refuted, "p = {p}");
        let r = run_check("RMK51-ADJ", p, None, &opts()).unwrap();
        assert_eq!(r.status, Status::Consistent, "p = {p}");
    }
    // independent exact check of the corrected digit
    for p in [5u64, 7, 11, 13] {
        let p4 = BigInt::from(p).pow(4);
        let minus = qi(16) - BigRational::from_integer(&p4 * 80);
        let plus = qi(16) + BigRational::from_integer(&p4 * 80);
        for n in [p - 1, p.div_ceil(2)] {
            let s = exact_catalan_sum(n);
            assert_eq!(residue(&s, p, 5), residue(&minus, p, 5), "n = {n}, p = {p}");
            // 80 p^4 vanishes mod p^5 at p = 5, so the readings only part from 7 on
            if p > 5 {
                assert_ne!(residue(&s, p, 5), residue(&plus, p, 5));
            }
        }
        // the k = p-1 term is a unit, so the full range is not even 16 mod p
        assert_ne!(residue(&exact_catalan_sum(p), p, 1), residue(&qi(16), p, 1));
    }
}

#[test]
fn harmonic_difference_only_holds_mod_p_squared() {
    let spec = find_check("EQ-53").unwrap();
    assert_eq!(spec.modulus(7), 2);
    let (mut fails, mut total) = (0, 0);
    for p in small_primes(199).into_iter().filter(|&p| p > 3) {
        let env = PrimeEnv::new(p, 8).unwrap();
        let l = spec.lhs(&env, None).unwrap();
        let r = spec.rhs(&env, None).unwrap();
        assert!(congruent_mod(&l[0], &r[0], 2).unwrap());
        total += 1;
        if !congruent_mod(&l[0], &r[0], 3).unwrap() {
            fails += 1;
        }
    }
    assert!(fails * 2 > total, "{fails} of {total}");
}

#[test]
fn printed_sign_in_the_twelfth_case_fails() {
    let spec = find_check("THM59").unwrap();
    let mut seen = 0;
    for p in small_primes(199).into_iter().filter(|&p| p % 12 == 1) {
        let env = PrimeEnv::new(p, 8).unwrap();
        let lhs = spec.lhs(&env, None).unwrap().remove(0);
        assert!(congruent_mod(&lhs, &spec.rhs(&env, None).unwrap()[0], 3).unwrap());
        let rep = represent(p, QuadForm::F1).unwrap();
        let printed = if rep.x % 3 == 0 { rep.x } else { -rep.x };
        assert_eq!(printed, -thm59_c(p, &rep));
        let core = env.int(2 * printed) - env.pp(1).checked_div(&env.int(2 * printed)).unwrap();
        let fq = (env.ipow(2, p as i64 - 1).unwrap() - env.int(1)).checked_div(&env.int(6)).unwrap();
        let rhs = env.ipow(2, (p as i64 - 1) / 6).unwrap() * env.pp(1) * (env.int(1) - fq) * core;
        assert!(!congruent_mod(&lhs, &rhs, 3).unwrap(), "p = {p}");
        seen += 1;
    }
    assert!(seen >= 5);
    // the sum itself, exactly, at p = 13
    let exact = weighted(&q(-1, 12), 4, 1, 1, 13, |k| qi(24) * k + qi(1));
    let env = PrimeEnv::new(13, 8).unwrap();
    assert!(agrees(&spec.lhs(&env, None).unwrap()[0], &exact, 3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn low_precision_never_flips_a_verdict(i in 0usize..200, pi in 0usize..20, seed in 0u64..1000) {
        let all = list_checks();
        let spec = &all[i % all.len()];
        let p = small_primes(100).into_iter().filter(|&p| p >= 5).nth(pi).unwrap();
        let sampling = Sampling { count: 3, seed, ..Sampling::default() };
        let strict = RunOptions { retry: false, ..opts() };
        let (low, high) = (PrimeEnv::new(p, 6).unwrap(), PrimeEnv::new(p, 10).unwrap());
        let params: Vec<Option<binomcong::suite::Param>> = if spec.is_sampled() {
            sample_params(spec, p, &sampling).into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for param in &params {
            let (Ok(a), Ok(b)) = (run_spec(spec, &low, param.as_ref(), &strict), run_spec(spec, &high, param.as_ref(), &strict)) else {
                continue;
            };
            if a.status == Status::Error {
                let msg = a.error.unwrap();
                prop_assert!(msg.contains("cannot decide") || msg.contains("not determined"), "{}: {msg}", spec.id);
            } else if b.status != Status::Error {
                prop_assert_eq!(a.pass, b.pass, "{} at p = {}", spec.id, p);
            }
        }
    }
}
