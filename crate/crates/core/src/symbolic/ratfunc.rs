use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Num;

use super::poly::{Coeff, MultiPoly};
use crate::error::{Error, Result};

/// `num / den` with no gcd reduction; zero-testing only looks at `num`.
#[derive(Debug, Clone)]
pub struct RatFunc<C> {
    pub num: MultiPoly<C>,
    pub den: MultiPoly<C>,
}

impl<C: Coeff> RatFunc<C> {
    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        RatFunc { num, den }
    }

    pub fn from_poly(p: MultiPoly<C>) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.recip() } else { self.clone() };
        let e = n.unsigned_abs();
        RatFunc { num: base.num.pow(e), den: base.den.pow(e) }
    }

    pub fn substitute(&self, a_img: &MultiPoly<C>, k_img: &MultiPoly<C>) -> Self {
        Self::new(self.num.substitute(a_img, k_img), self.den.substitute(a_img, k_img))
    }

    pub fn shift(&self, da: C, dk: C) -> Self {
        RatFunc {
            num: self.num.shift(da.clone(), dk.clone()),
            den: self.den.shift(da, dk),
        }
    }

    /// Exact evaluation; fails at a pole.
    pub fn eval<T>(&self, a: &T, k: &T) -> Result<T>
    where
        T: Clone + Num + From<C>,
    {
        let d = self.den.eval(a, k);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval(a, k) / d)
    }
}

impl<C: Coeff> From<MultiPoly<C>> for RatFunc<C> {
    fn from(p: MultiPoly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Coeff> Add<&RatFunc<C>> for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn add(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        if self.den == rhs.den {
            return RatFunc { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RatFunc {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl<C: Coeff> Sub<&RatFunc<C>> for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn sub(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Mul<&RatFunc<C>> for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn mul(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        RatFunc { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl<C: Coeff> Div<&RatFunc<C>> for &RatFunc<C> {
    type Output = RatFunc<C>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        self * &rhs.recip()
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl<C: Coeff> $trait<RatFunc<C>> for RatFunc<C> {
            type Output = RatFunc<C>;
            fn $method(self, rhs: RatFunc<C>) -> RatFunc<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coeff> $trait<&RatFunc<C>> for RatFunc<C> {
            type Output = RatFunc<C>;
            fn $method(self, rhs: &RatFunc<C>) -> RatFunc<C> {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl<C: Coeff> Neg for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<C: Coeff> Neg for RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type P = MultiPoly<BigInt>;
    type R = RatFunc<BigInt>;

    fn c(n: i64) -> P {
        P::constant(n.into())
    }

    #[test]
    fn add_without_normalizing() {
        let x = R::new(c(1), P::k() + c(1));
        let y = R::new(P::k(), P::k() + c(1));
        let s = &x + &y;
        assert_eq!(s.num, P::k() + c(1));
        assert_eq!(s.den, P::k() + c(1));
        assert!((&s - &R::one()).is_zero());
    }

    #[test]
    fn product_of_quotients() {
        let x = R::new(P::a() - P::k(), P::k() + c(1));
        let y = R::new(P::a() - P::k() - c(1), P::k() + c(2));
        let z = &x * &y;
        assert_eq!(z.num.degree(), Some(2));
        assert_eq!(z.den, (P::k() + c(1)) * (P::k() + c(2)));
    }

    #[test]
    fn pole_detection() {
        let x = R::new(c(1), P::k() - c(3));
        let q = |n: i64| BigRational::from_integer(n.into());
        assert!(matches!(x.eval(&q(0), &q(3)), Err(Error::PoleAtPoint)));
        assert_eq!(x.eval(&q(0), &q(4)).unwrap(), q(1));
    }
}
