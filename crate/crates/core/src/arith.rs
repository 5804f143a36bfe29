//! Integer helpers shared by the p-adic kernel and the form solvers.
//!
//! The generic routines are written against `num-traits`/`num-integer` so the
//! same code serves machine words and `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// `base^exp mod m` by square-and-multiply, for any integer type.
pub fn pow_mod<T>(base: &T, mut exp: u64, m: &T) -> T
where
    T: Integer + Clone,
{
    let mut result = T::one().mod_floor(m);
    let mut b = base.mod_floor(m);
    while exp > 0 {
        if exp & 1 == 1 {
            result = (result * b.clone()).mod_floor(m);
        }
        b = (b.clone() * b).mod_floor(m);
        exp >>= 1;
    }
    result
}

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod_u64(result, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    result
}

fn miller_rabin_round(n: u64, d: u64, s: u32, a: u64) -> bool {
    let mut x = pow_mod_u64(a % n, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    BASES.iter().all(|&a| miller_rabin_round(n, d, s, a))
}

/// Miller–Rabin over `BigInt` with the first 20 prime bases; probabilistic
/// only beyond 64 bits.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    'bases: for &a in &BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol `(a/m)` for odd positive `m`, by quadratic reciprocity.
pub fn jacobi<T>(a: &T, m: &T) -> i8
where
    T: Integer + Signed + Clone + FromPrimitive,
{
    assert!(m.is_positive() && m.is_odd(), "jacobi: modulus must be odd and positive");
    let three = T::from_u8(3).unwrap();
    let four = T::from_u8(4).unwrap();
    let five = T::from_u8(5).unwrap();
    let eight = T::from_u8(8).unwrap();
    let mut a = a.mod_floor(m);
    let mut m = m.clone();
    let mut sign = 1i8;
    while !a.is_zero() {
        while a.is_even() {
            a = a / (T::one() + T::one());
            let r = m.mod_floor(&eight);
            if r == three || r == five {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a.mod_floor(&four) == three && m.mod_floor(&four) == three {
            sign = -sign;
        }
        a = a.mod_floor(&m);
    }
    if m.is_one() {
        sign
    } else {
        0
    }
}

/// Square root of `n` modulo an odd prime `p` (Tonelli–Shanks), or `None`
/// when `n` is a non-residue.
pub fn sqrt_mod_prime(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(n);
    }
    if pow_mod_u64(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod_u64(n, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod_u64(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod_u64(z, q, p);
    let mut t = pow_mod_u64(n, q, p);
    let mut r = pow_mod_u64(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod_u64(t2, t2, p);
            i += 1;
        }
        let b = pow_mod_u64(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod_u64(b, b, p);
        t = mul_mod_u64(t, c, p);
        r = mul_mod_u64(r, b, p);
    }
    Some(r)
}

/// `v_p(n)` together with the cofactor `n / p^v`. `n` must be nonzero.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

/// `(-1)^n` as an `i64`.
#[inline]
pub fn neg_one_pow(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
