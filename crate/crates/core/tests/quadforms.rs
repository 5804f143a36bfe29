use binomcong::arith::is_prime_u64;
use binomcong::quadform::{represent, thm56_u, thm59_c, QuadForm};
use binomcong::Error;

const FORMS: [QuadForm; 4] = [QuadForm::F1, QuadForm::F2, QuadForm::F3, QuadForm::F4];

/// `(d, c)` with the form `x² + d y² = c p`, and which primes it covers.
fn shape(f: QuadForm, p: u64) -> Option<(i64, i64)> {
    match f {
        QuadForm::F1 if p % 4 == 1 => Some((1, 1)),
        QuadForm::F2 if p % 8 == 1 || p % 8 == 3 => Some((2, 1)),
        QuadForm::F3 if p % 3 == 1 => Some((27, 4)),
        QuadForm::F4 if p % 3 == 1 => Some((3, 1)),
        _ => None,
    }
}

fn normalized(f: QuadForm, p: u64, x: i64, y: i64) -> bool {
    let m = |v: i64, n: i64| v.rem_euclid(n);
    match f {
        QuadForm::F1 => m(x, 4) == 1 && y > 0,
        QuadForm::F2 if p % 8 == 1 => m(x, 4) == 1 && y > 0,
        QuadForm::F2 => m(x, 4) == 1 && m(y, 4) == 1,
        QuadForm::F3 => m(x, 3) == 1 && y > 0,
        QuadForm::F4 if m(y, 3) == 0 => m(x, 3) == 1 && y > 0,
        QuadForm::F4 => m(x, 3) == 1 && m(y, 3) == 1,
    }
}

fn brute_force(f: QuadForm, p: u64) -> Vec<(i64, i64)> {
    let (d, c) = shape(f, p).unwrap();
    let b = (4.0 * p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for y in -b..=b {
        let rest = c * p as i64 - d * y * y;
        if rest < 0 {
            continue;
        }
        let r = (rest as f64).sqrt().round() as i64;
        for x in [-r, r] {
            if x * x == rest && normalized(f, p, x, y) && !out.contains(&(x, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

#[test]
fn matches_exhaustive_search_up_to_ten_thousand() {
    let mut checked = 0;
    for p in (3..10_000u64).filter(|&n| is_prime_u64(n)) {
        for f in FORMS {
            match shape(f, p) {
                Some(_) => {
                    let rep = represent(p, f).unwrap();
                    let brute = brute_force(f, p);
                    assert_eq!(brute, vec![(rep.x, rep.y)], "{f:?} at p = {p}");
                    assert!(rep.holds() && rep.is_normalized());
                    checked += 1;
                }
                None => assert!(matches!(represent(p, f), Err(Error::NotRepresentable { .. }))),
            }
        }
    }
    assert!(checked > 1500);
}

#[test]
fn spot_representations() {
    let r = represent(13, QuadForm::F1).unwrap();
    assert_eq!((r.x, r.y), (-3, 2));
    let r = represent(5, QuadForm::F1).unwrap();
    assert_eq!((r.x, r.y), (1, 2));
    let r = represent(7, QuadForm::F3).unwrap();
    assert_eq!((r.x, r.y), (1, 1));
}

fn binom_mod(n: u64, k: u64, p: u64) -> i64 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num = num * (n - i) as u128 % p as u128;
        den = den * (i + 1) as u128 % p as u128;
    }
    let mut inv = 1u128;
    let (mut b, mut e) = (den, p as u128 - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    (num * inv % p as u128) as i64
}

#[test]
fn stern_eisenstein_and_y_parity() {
    for p in (3..10_000u64).filter(|&n| is_prime_u64(n)) {
        let pi = p as i64;
        if p % 8 == 1 {
            let y = represent(p, QuadForm::F1).unwrap().y;
            assert_eq!(y % 2, 0);
            assert_eq!((y / 2).rem_euclid(2), (-y / 2).rem_euclid(2));
            let x = represent(p, QuadForm::F2).unwrap().x;
            let sign = if ((p - 1) / 8) % 2 == 0 { 1 } else { -1 };
            assert_eq!(binom_mod((p - 1) / 2, (p - 1) / 8, p), (sign * 2 * x).rem_euclid(pi), "Stern at {p}");
        }
        if p % 8 == 3 {
            let x = represent(p, QuadForm::F2).unwrap().x;
            let sign = if ((p - 3) / 8) % 2 == 0 { 1 } else { -1 };
            assert_eq!(binom_mod((p - 1) / 2, (p - 3) / 8, p), (-2 * sign * x).rem_euclid(pi), "Eisenstein at {p}");
        }
    }
}

#[test]
fn derived_parameters() {
    for p in (5..2000u64).filter(|&n| is_prime_u64(n)) {
        if p % 3 == 1 {
            let r = represent(p, QuadForm::F4).unwrap();
            let u = thm56_u(&r);
            assert_eq!(u.rem_euclid(3), 1, "u ≡ 1 (mod 3) at {p}");
            assert_eq!(u * u % 3, 1);
        }
        if p % 4 == 1 {
            let r = represent(p, QuadForm::F1).unwrap();
            let c = thm59_c(p, &r);
            if p % 12 == 1 {
                assert_eq!(c.abs(), r.x.abs());
            } else {
                assert_eq!(c.abs(), r.y.abs());
                assert_eq!((c - r.x).rem_euclid(3), 0);
            }
        }
    }
}
