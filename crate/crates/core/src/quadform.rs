//! Representations of primes by `x²+y²`, `x²+2y²`, `x²+27y²` (of `4p`) and
//! `x²+3y²`, with the sign conventions the closed forms depend on.

use num_integer::Roots;

use crate::arith::{is_prime_u64, sqrt_mod_prime};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadForm {
    /// `p = x² + y²`
    F1,
    /// `p = x² + 2y²`
    F2,
    /// `4p = x² + 27y²`
    F3,
    /// `p = x² + 3y²`
    F4,
}

impl QuadForm {
    pub fn name(self) -> &'static str {
        match self {
            QuadForm::F1 => "F1",
            QuadForm::F2 => "F2",
            QuadForm::F3 => "F3",
            QuadForm::F4 => "F4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "F1" | "f1" => Some(QuadForm::F1),
            "F2" | "f2" => Some(QuadForm::F2),
            "F3" | "f3" => Some(QuadForm::F3),
            "F4" | "f4" => Some(QuadForm::F4),
            _ => None,
        }
    }

    /// `(d, c)` with the form reading `c·p = x² + d·y²`.
    fn shape(self) -> (u64, u64) {
        match self {
            QuadForm::F1 => (1, 1),
            QuadForm::F2 => (2, 1),
            QuadForm::F3 => (27, 4),
            QuadForm::F4 => (3, 1),
        }
    }

    pub fn applies_to(self, p: u64) -> bool {
        match self {
            QuadForm::F1 => p % 4 == 1,
            QuadForm::F2 => p % 8 == 1 || p % 8 == 3,
            QuadForm::F3 | QuadForm::F4 => p % 3 == 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadRep {
    pub form: QuadForm,
    pub p: u64,
    pub x: i64,
    pub y: i64,
}

impl QuadRep {
    pub fn holds(&self) -> bool {
        let (d, c) = self.form.shape();
        let lhs = (self.x as i128).pow(2) + d as i128 * (self.y as i128).pow(2);
        lhs == c as i128 * self.p as i128
    }

    /// Verify the sign conventions of [`represent`].
    pub fn is_normalized(&self) -> bool {
        let (x, y, p) = (self.x, self.y, self.p);
        let m = |v: i64, n: i64| v.rem_euclid(n);
        self.holds()
            && match self.form {
                QuadForm::F1 => m(x, 4) == 1 && y > 0,
                QuadForm::F2 if p % 8 == 1 => m(x, 4) == 1 && y > 0,
                QuadForm::F2 => m(x, 4) == 1 && m(y, 4) == 1,
                QuadForm::F3 => m(x, 3) == 1 && y > 0,
                QuadForm::F4 => m(x, 3) == 1 && if m(y, 3) == 0 { y > 0 } else { m(y, 3) == 1 },
            }
    }
}

/// A solution of `x² + d·y² = m`, via Cornacchia when `m` is prime and by
/// search otherwise.
pub fn cornacchia(d: u64, m: u64) -> Option<(u64, u64)> {
    if d == 0 || m == 0 || d >= m {
        return None;
    }
    if !is_prime_u64(m) {
        return search(d, 1, m).map(|(x, y)| (x.unsigned_abs(), y.unsigned_abs()));
    }
    let mut r0 = sqrt_mod_prime((m - d % m) % m, m)?;
    if 2 * r0 < m {
        r0 = m - r0;
    }
    let (mut a, mut b) = (m, r0);
    let bound = m.sqrt();
    while b > bound {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = m - b * b;
    if !rest.is_multiple_of(d) {
        return None;
    }
    let y2 = rest / d;
    let y = y2.sqrt();
    (y * y == y2).then_some((b, y))
}

/// `x² + d·y² = 4p` for `d ≡ 3 (mod 4)` (Cohen's modified Cornacchia).
fn cornacchia_4p(d: u64, p: u64) -> Option<(u64, u64)> {
    let neg_d = (p - d % p) % p;
    let mut x0 = sqrt_mod_prime(neg_d, p)?;
    // x0 must have the parity of -d, i.e. be odd
    if x0 % 2 == 0 {
        x0 = p - x0;
    }
    let (mut a, mut b) = (2 * p, x0);
    let bound = (4 * p).sqrt();
    while b > bound {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = 4 * p - b * b;
    if !rest.is_multiple_of(d) {
        return None;
    }
    let y2 = rest / d;
    let y = y2.sqrt();
    (y * y == y2).then_some((b, y))
}

/// Some `(x, y)` with `x² + d·y² = c·m`, by trying every `y`.
pub fn search(d: u64, c: u64, m: u64) -> Option<(i64, i64)> {
    let target = c * m;
    let mut y = 0u64;
    while d * y * y <= target {
        let rest = target - d * y * y;
        let x = rest.sqrt();
        if x * x == rest {
            return Some((x as i64, y as i64));
        }
        y += 1;
    }
    None
}

fn raw_solution(p: u64, form: QuadForm) -> Option<(i64, i64)> {
    let (d, c) = form.shape();
    let fast = match form {
        QuadForm::F3 => cornacchia_4p(d, p),
        _ => cornacchia(d, p),
    };
    fast.map(|(x, y)| (x as i64, y as i64))
        .filter(|&(x, y)| (x * x) as u64 + d * (y * y) as u64 == c * p)
        .or_else(|| search(d, c, p))
}

/// The normalized representation of `p` by `form`.
pub fn represent(p: u64, form: QuadForm) -> Result<QuadRep> {
    let err = || Error::NotRepresentable { p, form: form.name().to_string() };
    if p < 3 || !is_prime_u64(p) || !form.applies_to(p) {
        return Err(err());
    }
    let (mut x, mut y) = raw_solution(p, form).ok_or_else(err)?;
    if form == QuadForm::F1 && x % 2 == 0 {
        std::mem::swap(&mut x, &mut y);
    }
    let flip_to = |v: i64, n: i64, target: i64| if v.rem_euclid(n) == target { v } else { -v };
    match form {
        QuadForm::F1 => {
            x = flip_to(x, 4, 1);
            y = y.abs();
        }
        QuadForm::F2 => {
            x = flip_to(x, 4, 1);
            y = if p % 8 == 1 { y.abs() } else { flip_to(y, 4, 1) };
        }
        QuadForm::F3 => {
            x = flip_to(x, 3, 1);
            y = y.abs();
        }
        QuadForm::F4 => {
            x = flip_to(x, 3, 1);
            y = if y % 3 == 0 { y.abs() } else { flip_to(y, 3, 1) };
        }
    }
    let rep = QuadRep { form, p, x, y };
    debug_assert!(rep.is_normalized(), "{rep:?}");
    Ok(rep)
}

/// `u = -2x` if `3 | y`, else `x - 3y`, for a normalized F4 representation.
pub fn thm56_u(rep: &QuadRep) -> i64 {
    debug_assert_eq!(rep.form, QuadForm::F4);
    if rep.y % 3 == 0 {
        -2 * rep.x
    } else {
        rep.x - 3 * rep.y
    }
}

/// The `c` attached to an F1 representation of `p ≡ 1 (mod 4)`:
/// `±x` (made prime to 3 by sign) when `p ≡ 1 (mod 12)`, and `y` re-signed to
/// `y ≡ x (mod 3)` when `p ≡ 5 (mod 12)`.
pub fn thm59_c(p: u64, rep: &QuadRep) -> i64 {
    debug_assert_eq!(rep.form, QuadForm::F1);
    if p % 12 == 1 {
        if rep.x % 3 == 0 {
            -rep.x
        } else {
            rep.x
        }
    } else if (rep.y - rep.x).rem_euclid(3) == 0 {
        rep.y
    } else {
        -rep.y
    }
}
