use binomcong::symbolic::{certificate, certificates, numeric_probe, IntPoly, IntRatFunc, Verdict};
use binomcong::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn every_certificate_verifies() {
    let all = certificates();
    assert_eq!(all.len(), 12);
    for cert in &all {
        let report = cert.report().unwrap();
        assert!(report.verified, "{}: {:?}", cert.id, report.readings);
    }
}

#[test]
fn only_the_squared_reading_of_wz_f_holds() {
    let report = certificate("WZ-F").unwrap().report().unwrap();
    assert_eq!(report.readings, vec![("squared", Verdict::Verified), ("printed", Verdict::Refuted)]);
}

#[test]
fn every_single_coefficient_mutation_is_rejected() {
    for cert in certificates() {
        let outcomes = cert.mutation_outcomes().unwrap();
        assert_eq!(outcomes.len(), cert.template().len());
        for (i, ok) in outcomes.iter().enumerate() {
            assert!(!ok, "{} still verifies after bumping coefficient {i}", cert.id);
        }
    }
}

#[test]
fn verified_readings_vanish_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for cert in certificates() {
        for (reading, (_, verdict)) in cert.readings().iter().zip(cert.report().unwrap().readings) {
            if verdict != Verdict::Verified {
                continue;
            }
            let reduced = reading.identity.reduced().unwrap();
            let mut probed = 0;
            while probed < 50 {
                let a0 = q(rng.gen_range(-200..200), rng.gen_range(1..30));
                let k0 = rng.gen_range(0..40i64);
                // direct evaluation of the hypergeometric terms
                assert!(reading.identity.residual(&a0, k0).unwrap().is_zero(), "{} {}", cert.id, reading.name);
                match numeric_probe(&reduced, &a0, &q(k0, 1)) {
                    Ok(v) => {
                        assert!(v.is_zero(), "{} {} at ({a0}, {k0})", cert.id, reading.name);
                        probed += 1;
                    }
                    Err(Error::PoleAtPoint) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn unknown_certificate() {
    assert!(matches!(certificate("WZ-X"), Err(Error::UnknownCertificate(_))));
}

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), -9i64..10), 0..7)
        .prop_map(|ts| IntPoly::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_homomorphism(f in small_poly(), g in small_poly(), an in -30i64..30, ad in 1i64..7, k in -30i64..30) {
        let (a0, k0) = (q(an, ad), q(k, 1));
        let ev = |p: &IntPoly| p.eval(&a0, &k0);
        prop_assert_eq!(ev(&(&f + &g)), ev(&f) + ev(&g));
        prop_assert_eq!(ev(&(&f - &g)), ev(&f) - ev(&g));
        prop_assert_eq!(ev(&(&f * &g)), ev(&f) * ev(&g));
        let sh = f.shift(BigInt::from(2), BigInt::from(-1));
        prop_assert_eq!(sh.eval(&a0, &k0), f.eval(&(&a0 + q(2, 1)), &(&k0 - q(1, 1))));
        if !g.is_zero() {
            let r = IntRatFunc::new(f.clone(), g.clone());
            match numeric_probe(&r, &a0, &k0) {
                Ok(v) => prop_assert_eq!(v * ev(&g), ev(&f)),
                Err(_) => prop_assert!(ev(&g).is_zero()),
            }
            let back = &(&r * &IntRatFunc::from_poly(g.clone())) - &IntRatFunc::from_poly(f.clone());
            prop_assert!(back.is_zero());
        }
    }
}
