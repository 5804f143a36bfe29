use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Num;

/// Coefficient rings the polynomial code accepts.
pub trait Coeff: Clone + PartialEq + fmt::Display + Num + Neg<Output = Self> {}

impl<T> Coeff for T where T: Clone + PartialEq + fmt::Display + Num + Neg<Output = T> {}

/// Sparse polynomial in `a` and `k`; keys are `(deg_a, deg_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(c: C, da: u32, dk: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((da, dk), c);
        }
        MultiPoly { terms }
    }

    pub fn a() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn k() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (key, c) in it {
            p.add_term(key, c);
        }
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, da: u32, dk: u32) -> C {
        self.terms.get(&(da, dk)).cloned().unwrap_or_else(C::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(key, x)| (*key, x.clone() * c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(a_img, k_img)`.
    pub fn substitute(&self, a_img: &Self, k_img: &Self) -> Self {
        let max_a = self.terms.keys().map(|(i, _)| *i).max().unwrap_or(0);
        let max_k = self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0);
        let powers = |base: &Self, n: u32| {
            let mut v = vec![Self::one()];
            for i in 0..n as usize {
                let next = &v[i] * base;
                v.push(next);
            }
            v
        };
        let pa = powers(a_img, max_a);
        let pk = powers(k_img, max_k);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out = out + (&pa[i as usize] * &pk[j as usize]).scale(c);
        }
        out
    }

    pub fn shift(&self, da: C, dk: C) -> Self {
        self.substitute(&(Self::a() + Self::constant(da)), &(Self::k() + Self::constant(dk)))
    }

    /// Evaluate in any ring the coefficients map into.
    pub fn eval<T>(&self, a: &T, k: &T) -> T
    where
        T: Clone + Num + From<C>,
    {
        let mut acc = T::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = T::from(c.clone());
            for _ in 0..i {
                t = t * a.clone();
            }
            for _ in 0..j {
                t = t * k.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Coefficients in canonical (key) order.
    pub fn coefficients(&self) -> Vec<C> {
        self.terms.values().cloned().collect()
    }

    /// Same support, new coefficients in key order.
    pub fn with_coefficients(&self, cs: &[C]) -> Self {
        assert_eq!(cs.len(), self.terms.len());
        Self::from_terms(self.terms.keys().copied().zip(cs.iter().cloned()))
    }
}

impl<C: Coeff> Add<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.add_term(*key, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.add_term(*key, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = MultiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl<C: Coeff> $trait<MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coeff> $trait<&MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly::from_terms(self.terms.into_iter().map(|(key, c)| (key, -c)))
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -self.clone()
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) => format!("a^{i}"),
                (0, j) => format!("k^{j}"),
                (i, j) => format!("a^{i}*k^{j}"),
            };
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "({c})*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type P = MultiPoly<BigInt>;

    fn c(n: i64) -> P {
        P::constant(n.into())
    }

    #[test]
    fn difference_of_squares() {
        let prod = (P::a() + P::k()) * (P::a() - P::k());
        assert_eq!(prod, P::a().pow(2) - P::k().pow(2));
    }

    #[test]
    fn shift_expands_binomially() {
        let p = P::k().pow(3);
        let s = p.shift(0.into(), 1.into());
        assert_eq!(s, P::k().pow(3) + P::k().pow(2).scale(&3.into()) + P::k().scale(&3.into()) + c(1));
    }

    #[test]
    fn eval_in_rationals() {
        let p = P::a() * P::k() - c(2);
        let v: BigRational = p.eval(&BigRational::new(1.into(), 2.into()), &BigRational::from_integer(6.into()));
        assert_eq!(v, BigRational::from_integer(1.into()));
    }

    #[test]
    fn rational_coefficients() {
        let half = BigRational::new(1.into(), 2.into());
        let p = MultiPoly::<BigRational>::constant(half.clone()) * MultiPoly::a();
        assert_eq!(p.coefficient(1, 0), half);
        assert!((&p - &p).is_zero());
    }
}
