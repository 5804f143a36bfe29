//! p-adic numbers as `p^v * u` with capped relative precision.
//!
//! A nonzero value carries its valuation `v`, a unit residue `u` and the
//! number `r <= e` of p-adic digits of `u` that are actually known, so the
//! value is determined modulo `p^(v + r)`. Multiplication and division keep
//! the smaller relative precision; only additions lose digits, and they report
//! exactly how many. A sum that cancels completely becomes a zero that
//! remembers the absolute precision up to which it is known to vanish.

use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{is_prime_u64, is_probable_prime, split_valuation};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 8;

/// The prime and working precision shared by a family of values.
#[derive(Debug)]
pub struct PrimeContext {
    p: BigInt,
    p64: Option<u64>,
    e: u32,
    powers: Vec<BigInt>,
}

impl PrimeContext {
    pub fn new(p: u64, e: u32) -> Result<Arc<Self>> {
        Self::with_big(BigInt::from(p), e, false)
    }

    /// Construct over an arbitrary-size prime. Primes above 64 bits are
    /// rejected unless `allow_big` is set.
    pub fn with_big(p: BigInt, e: u32, allow_big: bool) -> Result<Arc<Self>> {
        if e == 0 {
            return Err(Error::InvalidPrecision(e));
        }
        let p64 = p.to_u64();
        match p64 {
            Some(small) => {
                if small == 2 || !is_prime_u64(small) {
                    return Err(Error::NotPrime(p.to_string()));
                }
            }
            None => {
                if !allow_big {
                    return Err(Error::PrimeTooLarge(p.to_string()));
                }
                if !is_probable_prime(&p) {
                    return Err(Error::NotPrime(p.to_string()));
                }
            }
        }
        let mut powers = Vec::with_capacity(2 * e as usize + 9);
        let mut acc = BigInt::one();
        for _ in 0..(2 * e as usize + 9) {
            powers.push(acc.clone());
            acc *= &p;
        }
        Ok(Arc::new(PrimeContext { p, p64, e, powers }))
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// The prime as a machine word, when it fits.
    pub fn p_u64(&self) -> Option<u64> {
        self.p64
    }

    pub fn precision(&self) -> u32 {
        self.e
    }

    /// `p^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> BigInt {
        match self.powers.get(n as usize) {
            Some(x) => x.clone(),
            None => num_traits::pow(self.p.clone(), n as usize),
        }
    }

    /// Same prime at a different working precision.
    pub fn at_precision(&self, e: u32) -> Result<Arc<Self>> {
        Self::with_big(self.p.clone(), e, true)
    }

    pub fn zero(self: &Arc<Self>) -> PadicValue {
        PadicValue::exact_zero(self)
    }

    pub fn one(self: &Arc<Self>) -> PadicValue {
        self.int(1)
    }

    pub fn int(self: &Arc<Self>, n: i64) -> PadicValue {
        self.bigint(&BigInt::from(n))
    }

    pub fn bigint(self: &Arc<Self>, n: &BigInt) -> PadicValue {
        reduce_rational(&RationalArg::from(n.clone()), self)
    }

    pub fn ratio(self: &Arc<Self>, num: i64, den: i64) -> PadicValue {
        reduce_rational(&RationalArg::new(num.into(), den.into()), self)
    }

    pub fn rational(self: &Arc<Self>, q: &BigRational) -> PadicValue {
        reduce_rational(&RationalArg(q.clone()), self)
    }
}

/// A rational parameter `num/den` in lowest terms with `den >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalArg(pub BigRational);

impl RationalArg {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        RationalArg(BigRational::new(num, den))
    }

    pub fn int(n: i64) -> Self {
        RationalArg(BigRational::from_integer(n.into()))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num.into(), den.into())
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integral_at(&self, p: &BigInt) -> bool {
        !self.den().is_multiple_of(p)
    }
}

impl From<BigInt> for RationalArg {
    fn from(n: BigInt) -> Self {
        RationalArg(BigRational::from_integer(n))
    }
}

impl From<BigRational> for RationalArg {
    fn from(q: BigRational) -> Self {
        RationalArg(q)
    }
}

impl FromStr for RationalArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedRational(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(RationalArg::new(num, den))
    }
}

impl fmt::Display for RationalArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// `known_to = None` is an exact zero.
    Zero { known_to: Option<i64> },
    Unit { v: i64, u: BigInt, r: u32 },
}

#[derive(Debug, Clone)]
pub struct PadicValue {
    ctx: Arc<PrimeContext>,
    repr: Repr,
}

impl PartialEq for PadicValue {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.p == other.ctx.p && self.repr == other.repr
    }
}

impl Eq for PadicValue {}

fn pick_ctx<'a>(x: &'a Arc<PrimeContext>, y: &'a Arc<PrimeContext>) -> &'a Arc<PrimeContext> {
    assert!(
        x.p == y.p,
        "p-adic operands over different primes ({} vs {})",
        x.p,
        y.p
    );
    if y.e > x.e {
        y
    } else {
        x
    }
}

impl PadicValue {
    pub fn exact_zero(ctx: &Arc<PrimeContext>) -> Self {
        PadicValue { ctx: ctx.clone(), repr: Repr::Zero { known_to: None } }
    }

    /// Zero known only modulo `p^n`.
    pub fn zero_mod(ctx: &Arc<PrimeContext>, n: i64) -> Self {
        PadicValue { ctx: ctx.clone(), repr: Repr::Zero { known_to: Some(n) } }
    }

    /// The value represented by the integer `n`, known modulo `p^known_to`.
    pub fn from_residue(ctx: &Arc<PrimeContext>, n: &BigInt, known_to: i64) -> Self {
        if known_to <= 0 {
            return Self::zero_mod(ctx, known_to);
        }
        let m = ctx.pow(known_to as u32);
        let n = n.mod_floor(&m);
        if n.is_zero() {
            return Self::zero_mod(ctx, known_to);
        }
        let (v, u) = split_valuation(&n, &ctx.p);
        Self::unit(ctx, v, u, min((known_to - v) as u32, ctx.e))
    }

    fn unit(ctx: &Arc<PrimeContext>, v: i64, u: BigInt, r: u32) -> Self {
        let u = u.mod_floor(&ctx.pow(r));
        debug_assert!(!u.is_zero());
        PadicValue { ctx: ctx.clone(), repr: Repr::Unit { v, u, r } }
    }

    pub fn ctx(&self) -> &Arc<PrimeContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { known_to: None })
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Unit { v, .. } => Some(v),
            Repr::Zero { .. } => None,
        }
    }

    pub fn unit_part(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Unit { u, .. } => Some(u),
            Repr::Zero { .. } => None,
        }
    }

    /// Relative precision of a nonzero value.
    pub fn relative_precision(&self) -> Option<u32> {
        match self.repr {
            Repr::Unit { r, .. } => Some(r),
            Repr::Zero { .. } => None,
        }
    }

    /// The value is determined modulo `p^known_to`; `None` means exactly.
    pub fn known_to(&self) -> Option<i64> {
        match self.repr {
            Repr::Zero { known_to } => known_to,
            Repr::Unit { v, r, .. } => Some(v + r as i64),
        }
    }

    /// A rational number in the residue class of the value.
    pub fn lift(&self) -> BigRational {
        match &self.repr {
            Repr::Zero { .. } => BigRational::zero(),
            Repr::Unit { v, u, .. } => {
                let pv = self.ctx.pow(v.unsigned_abs() as u32);
                if *v >= 0 {
                    BigRational::from_integer(u * pv)
                } else {
                    BigRational::new(u.clone(), pv)
                }
            }
        }
    }

    /// The residue in `[0, p^t)`. Needs `t <= known_to` and a p-adic integer.
    pub fn residue_mod(&self, t: i64) -> Result<BigInt> {
        if let Some(n) = self.known_to() {
            if n < t {
                return Err(Error::InsufficientPrecision { needed: t, known: n });
            }
        }
        if t <= 0 {
            return Ok(BigInt::zero());
        }
        match &self.repr {
            Repr::Zero { .. } => Ok(BigInt::zero()),
            Repr::Unit { v, u, .. } => {
                if *v < 0 {
                    return Err(Error::NotPAdicInteger(self.to_string(), self.ctx.p.to_string()));
                }
                if *v >= t {
                    return Ok(BigInt::zero());
                }
                let m = self.ctx.pow(t as u32);
                Ok((u * self.ctx.pow(*v as u32)).mod_floor(&m))
            }
        }
    }

    pub fn checked_div(&self, rhs: &PadicValue) -> Result<PadicValue> {
        let ctx = pick_ctx(&self.ctx, &rhs.ctx);
        match (&self.repr, &rhs.repr) {
            (_, Repr::Zero { known_to: None }) => Err(Error::DivisionByZero),
            (_, Repr::Zero { .. }) => Err(Error::PrecisionExhausted),
            (Repr::Zero { known_to: None }, _) => Ok(Self::exact_zero(ctx)),
            (Repr::Zero { known_to: Some(n) }, Repr::Unit { v, .. }) => {
                Ok(Self::zero_mod(ctx, n - v))
            }
            (Repr::Unit { v: vx, u: ux, r: rx }, Repr::Unit { v: vy, u: uy, r: ry }) => {
                let r = min(*rx, *ry);
                let m = ctx.pow(r);
                let inv = uy.modinv(&m).expect("unit residue is invertible");
                Ok(Self::unit(ctx, vx - vy, ux * inv, r))
            }
        }
    }

    pub fn inv(&self) -> Result<PadicValue> {
        self.ctx.one().checked_div(self)
    }

    pub fn pow(&self, n: i64) -> Result<PadicValue> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.ctx.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Multiply by `p^n` without touching the unit.
    pub fn shift(&self, n: i64) -> PadicValue {
        match &self.repr {
            Repr::Zero { known_to } => PadicValue {
                ctx: self.ctx.clone(),
                repr: Repr::Zero { known_to: known_to.map(|k| k + n) },
            },
            Repr::Unit { v, u, r } => Self::unit(&self.ctx, v + n, u.clone(), *r),
        }
    }

    pub fn mul_int(&self, n: i64) -> PadicValue {
        self * &self.ctx.int(n)
    }

    fn add_impl(&self, rhs: &PadicValue) -> PadicValue {
        let ctx = pick_ctx(&self.ctx, &rhs.ctx);
        let (x, y) = match (&self.repr, &rhs.repr) {
            (Repr::Zero { known_to: None }, _) => return rhs.rebased(ctx),
            (_, Repr::Zero { known_to: None }) => return self.rebased(ctx),
            (Repr::Zero { known_to: Some(n) }, _) => return rhs.truncated(ctx, *n),
            (_, Repr::Zero { known_to: Some(n) }) => return self.truncated(ctx, *n),
            (Repr::Unit { v: vx, u: ux, r: rx }, Repr::Unit { v: vy, u: uy, r: ry }) => {
                ((*vx, ux, *rx), (*vy, uy, *ry))
            }
        };
        let v0 = min(x.0, y.0);
        let n = min(x.0 + x.2 as i64, y.0 + y.2 as i64);
        let m = ctx.pow((n - v0) as u32);
        let s = (x.1 * ctx.pow((x.0 - v0) as u32) + y.1 * ctx.pow((y.0 - v0) as u32)).mod_floor(&m);
        if s.is_zero() {
            return Self::zero_mod(ctx, n);
        }
        let (w, u) = split_valuation(&s, &ctx.p);
        let v = v0 + w;
        Self::unit(ctx, v, u, min((n - v) as u32, ctx.e))
    }

    fn rebased(&self, ctx: &Arc<PrimeContext>) -> PadicValue {
        PadicValue { ctx: ctx.clone(), repr: self.repr.clone() }
    }

    /// Forget everything beyond `p^n`.
    fn truncated(&self, ctx: &Arc<PrimeContext>, n: i64) -> PadicValue {
        match &self.repr {
            Repr::Zero { known_to } => {
                let k = known_to.map_or(n, |k| min(k, n));
                Self::zero_mod(ctx, k)
            }
            Repr::Unit { v, u, r } => {
                if *v >= n {
                    Self::zero_mod(ctx, n)
                } else {
                    let r = min(*r as i64, n - v) as u32;
                    Self::unit(ctx, *v, u.clone(), r)
                }
            }
        }
    }

    fn mul_impl(&self, rhs: &PadicValue) -> PadicValue {
        let ctx = pick_ctx(&self.ctx, &rhs.ctx);
        match (&self.repr, &rhs.repr) {
            (Repr::Zero { known_to: None }, _) | (_, Repr::Zero { known_to: None }) => {
                Self::exact_zero(ctx)
            }
            (Repr::Zero { known_to: Some(a) }, Repr::Zero { known_to: Some(b) }) => {
                Self::zero_mod(ctx, a + b)
            }
            (Repr::Zero { known_to: Some(n) }, Repr::Unit { v, .. })
            | (Repr::Unit { v, .. }, Repr::Zero { known_to: Some(n) }) => Self::zero_mod(ctx, n + v),
            (Repr::Unit { v: vx, u: ux, r: rx }, Repr::Unit { v: vy, u: uy, r: ry }) => {
                Self::unit(ctx, vx + vy, ux * uy, min(*rx, *ry))
            }
        }
    }

    fn neg_impl(&self) -> PadicValue {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { v, u, r } => Self::unit(&self.ctx, *v, -u, *r),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&PadicValue> for &PadicValue {
            type Output = PadicValue;
            fn $method(self, rhs: &PadicValue) -> PadicValue {
                $body(self, rhs)
            }
        }
        impl $trait<PadicValue> for PadicValue {
            type Output = PadicValue;
            fn $method(self, rhs: PadicValue) -> PadicValue {
                $body(&self, &rhs)
            }
        }
        impl $trait<&PadicValue> for PadicValue {
            type Output = PadicValue;
            fn $method(self, rhs: &PadicValue) -> PadicValue {
                $body(&self, rhs)
            }
        }
        impl $trait<PadicValue> for &PadicValue {
            type Output = PadicValue;
            fn $method(self, rhs: PadicValue) -> PadicValue {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |x: &PadicValue, y: &PadicValue| x.add_impl(y));
binop!(Sub, sub, |x: &PadicValue, y: &PadicValue| x.add_impl(&y.neg_impl()));
binop!(Mul, mul, |x: &PadicValue, y: &PadicValue| x.mul_impl(y));

impl Neg for PadicValue {
    type Output = PadicValue;
    fn neg(self) -> PadicValue {
        self.neg_impl()
    }
}

impl Neg for &PadicValue {
    type Output = PadicValue;
    fn neg(self) -> PadicValue {
        self.neg_impl()
    }
}

impl fmt::Display for PadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.ctx.p;
        match &self.repr {
            Repr::Zero { known_to: None } => write!(f, "0 (exact)"),
            Repr::Zero { known_to: Some(n) } => write!(f, "0 (mod {p}^{n})"),
            Repr::Unit { v, u, r } => {
                let n = v + *r as i64;
                write!(f, "{p}^{v} * {u} (mod {p}^{n})")?;
                if *v >= 0 {
                    if let Ok(res) = self.residue_mod(n) {
                        write!(f, " = {res}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary operation; unlike the operator impls this reports a prime
/// mismatch instead of panicking.
pub fn padic_arith(op: ArithOp, x: &PadicValue, y: &PadicValue) -> Result<PadicValue> {
    if x.ctx.p != y.ctx.p {
        return Err(Error::ContextMismatch(x.ctx.p.to_string(), y.ctx.p.to_string()));
    }
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

/// Embed a rational, keeping `e` digits of its unit part.
pub fn reduce_rational(q: &RationalArg, ctx: &Arc<PrimeContext>) -> PadicValue {
    if q.num().is_zero() {
        return PadicValue::exact_zero(ctx);
    }
    let (vn, un) = split_valuation(q.num(), &ctx.p);
    let (vd, ud) = split_valuation(q.den(), &ctx.p);
    let m = ctx.pow(ctx.e);
    let inv = ud.mod_floor(&m).modinv(&m).expect("unit denominator");
    PadicValue::unit(ctx, vn - vd, un * inv, ctx.e)
}

/// `x ≡ y (mod p^t)`, refusing to answer beyond the known precision.
pub fn congruent_mod(x: &PadicValue, y: &PadicValue, t: i64) -> Result<bool> {
    for side in [x, y] {
        if let Some(n) = side.known_to() {
            if n < t {
                return Err(Error::InsufficientPrecision { needed: t, known: n });
            }
        }
    }
    let d = x - y;
    Ok(match d.valuation() {
        None => true,
        Some(v) => v >= t,
    })
}

/// The representative of `a` in `{0, ..., p-1}`.
pub fn canonical_residue(a: &RationalArg, p: &BigInt) -> Result<BigInt> {
    if !a.is_integral_at(p) {
        return Err(Error::NotPAdicInteger(a.to_string(), p.to_string()));
    }
    let inv = a.den().mod_floor(p).modinv(p).expect("den is a unit");
    Ok((a.num() * inv).mod_floor(p))
}

/// `(a - <a>_p) / p`, computed exactly before embedding.
pub fn a_prime(a: &RationalArg, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    let r = canonical_residue(a, &ctx.p)?;
    let q = (a.value() - BigRational::from_integer(r)) / BigRational::from_integer(ctx.p.clone());
    Ok(reduce_rational(&RationalArg(q), ctx))
}

/// Fermat quotient `(b^(p-1) - 1)/p`, known to the full working precision.
pub fn fermat_quotient(b: &BigInt, ctx: &Arc<PrimeContext>) -> Result<PadicValue> {
    if b.is_multiple_of(&ctx.p) {
        return Err(Error::BaseDivisibleByP(b.to_string(), ctx.p.to_string()));
    }
    let m = ctx.pow(ctx.e + 1);
    let t = b.mod_floor(&m).modpow(&(&ctx.p - 1u32), &m) - 1u32;
    Ok(PadicValue::from_residue(ctx, &(t / &ctx.p), ctx.e as i64))
}

/// `binom(a, k) = a(a-1)...(a-k+1)/k!`; zero for negative `k`.
pub fn binom_rational(a: &RationalArg, k: i64, ctx: &Arc<PrimeContext>) -> PadicValue {
    if k < 0 {
        return PadicValue::exact_zero(ctx);
    }
    let below_p = ctx.p64.is_some_and(|p| (k as u64) < p);
    if below_p {
        let mut acc = ctx.one();
        let mut fact = BigInt::one();
        for i in 0..k {
            let f = RationalArg(a.value() - BigRational::from_integer(i.into()));
            acc = acc * reduce_rational(&f, ctx);
            fact *= i + 1;
        }
        return acc
            .checked_div(&ctx.bigint(&fact))
            .expect("k! is a unit for k < p");
    }
    // slow path: exact product, then embed
    let mut q = BigRational::one();
    for i in 0..k {
        q *= (a.value() - BigRational::from_integer(i.into())) / BigRational::from_integer((i + 1).into());
    }
    ctx.rational(&q)
}

/// `true` if `a` is a p-adic integer whose residue is not `r`.
pub fn avoids_residue(a: &RationalArg, p: &BigInt, r: i64) -> bool {
    match canonical_residue(a, p) {
        Ok(res) => res != BigInt::from(r).mod_floor(p),
        Err(_) => false,
    }
}

impl PadicValue {
    pub fn is_negative_valuation(&self) -> bool {
        self.valuation().is_some_and(|v| v < 0)
    }

    pub fn is_p_adic_integer(&self) -> bool {
        !self.is_negative_valuation()
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<PadicValue>();
    check::<PrimeContext>();
}
