//! Coefficient domains the algebra code is generic over.
//!
//! A [`Scalars`] value is a ring context: the exact ring `R`, a prime field
//! reached through a [`SpecPoint`], or the fraction field of `R`. Elements are
//! plain values; the context carries the modulus and the images of `a, b, c`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::ring::{LaurentCoeff, SpecPoint};

pub trait Scalars: Clone + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// Inverse when it exists in this domain.
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an element of `R`.
    fn embed(&self, x: &LaurentCoeff) -> Self::Elem;
    /// Cost hint for pivot selection; smaller is preferred.
    fn weight(&self, _x: &Self::Elem) -> usize {
        1
    }

    fn a(&self) -> Self::Elem {
        self.embed(&LaurentCoeff::a())
    }
    fn b(&self) -> Self::Elem {
        self.embed(&LaurentCoeff::b())
    }
    fn c(&self) -> Self::Elem {
        self.embed(&LaurentCoeff::c())
    }
    fn c_inv(&self) -> Self::Elem {
        self.embed(&LaurentCoeff::c_inv())
    }
}

/// The ring `R` itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Scalars for Exact {
    type Elem = LaurentCoeff;

    fn zero(&self) -> LaurentCoeff {
        LaurentCoeff::zero()
    }
    fn one(&self) -> LaurentCoeff {
        LaurentCoeff::one()
    }
    fn is_zero(&self, x: &LaurentCoeff) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &LaurentCoeff, y: &LaurentCoeff) -> LaurentCoeff {
        x + y
    }
    fn sub(&self, x: &LaurentCoeff, y: &LaurentCoeff) -> LaurentCoeff {
        x - y
    }
    fn neg(&self, x: &LaurentCoeff) -> LaurentCoeff {
        -x
    }
    fn mul(&self, x: &LaurentCoeff, y: &LaurentCoeff) -> LaurentCoeff {
        x * y
    }
    fn inv(&self, x: &LaurentCoeff) -> Option<LaurentCoeff> {
        x.unit_inverse()
    }
    fn embed(&self, x: &LaurentCoeff) -> LaurentCoeff {
        x.clone()
    }
    fn weight(&self, x: &LaurentCoeff) -> usize {
        x.len()
    }
}

/// `F_p` with `a, b, c` specialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModP {
    pub f: Fp,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl ModP {
    pub fn new(p: u64, a: u64, b: u64, c: u64) -> Result<ModP> {
        let f = Fp::new(p);
        let (a, b, c) = (a % p, b % p, c % p);
        if c == 0 {
            return Err(Error::ZeroC);
        }
        Ok(ModP { f, a, b, c })
    }

    pub fn from_point(pt: &SpecPoint) -> Result<ModP> {
        if pt.p == 0 {
            return Err(Error::BadPoint("a prime modulus is required".into()));
        }
        let (a, b, c) = pt.residues();
        ModP::new(pt.p, a, b, c)
    }

    pub fn point(&self) -> SpecPoint {
        SpecPoint::new(self.f.p(), self.a as i64, self.b as i64, self.c as i64)
            .expect("c is nonzero")
    }

    /// The point whose cubic `X^3 - aX^2 - bX - c` has roots `u0, u1, u2`.
    pub fn from_roots(p: u64, u: [u64; 3]) -> Result<ModP> {
        let f = Fp::new(p);
        let a = f.add(f.add(u[0], u[1]), u[2]);
        let e2 = f.add(
            f.add(f.mul(u[0], u[1]), f.mul(u[0], u[2])),
            f.mul(u[1], u[2]),
        );
        let c = f.mul(f.mul(u[0], u[1]), u[2]);
        ModP::new(p, a, f.neg(e2), c)
    }
}

impl Scalars for ModP {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    #[inline]
    fn add(&self, x: &u64, y: &u64) -> u64 {
        self.f.add(*x, *y)
    }
    #[inline]
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        self.f.sub(*x, *y)
    }
    #[inline]
    fn neg(&self, x: &u64) -> u64 {
        self.f.neg(*x)
    }
    #[inline]
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        self.f.mul(*x, *y)
    }
    fn inv(&self, x: &u64) -> Option<u64> {
        (*x != 0).then(|| self.f.inv(*x))
    }
    fn embed(&self, x: &LaurentCoeff) -> u64 {
        x.eval_mod(&self.f, self.a, self.b, self.c)
    }
    fn a(&self) -> u64 {
        self.a
    }
    fn b(&self) -> u64 {
        self.b
    }
    fn c(&self) -> u64 {
        self.c
    }
    fn c_inv(&self) -> u64 {
        self.f.inv(self.c)
    }
}

/// A quotient `num / den` of elements of `R`, kept without gcd reduction.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: LaurentCoeff,
    pub den: LaurentCoeff,
}

impl RatFunc {
    pub fn new(num: LaurentCoeff, den: LaurentCoeff) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: LaurentCoeff::one(),
            };
        }
        if let Some(u) = den.unit_inverse() {
            return RatFunc {
                num: &num * &u,
                den: LaurentCoeff::one(),
            };
        }
        if num == den {
            return RatFunc {
                num: LaurentCoeff::one(),
                den: LaurentCoeff::one(),
            };
        }
        RatFunc { num, den }
    }

    pub fn from_ring(x: LaurentCoeff) -> RatFunc {
        RatFunc {
            num: x,
            den: LaurentCoeff::one(),
        }
    }

    /// The element of `R` this represents, if the denominator is a unit.
    pub fn to_ring(&self) -> Option<LaurentCoeff> {
        self.den.unit_inverse().map(|u| &self.num * &u)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        &self.num * &o.den == &o.num * &self.den
    }
}

/// The fraction field of `R`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fractions;

impl Scalars for Fractions {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::from_ring(LaurentCoeff::zero())
    }
    fn one(&self) -> RatFunc {
        RatFunc::from_ring(LaurentCoeff::one())
    }
    fn is_zero(&self, x: &RatFunc) -> bool {
        x.num.is_zero()
    }
    fn add(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        if x.den == y.den {
            return RatFunc::new(&x.num + &y.num, x.den.clone());
        }
        RatFunc::new(&(&x.num * &y.den) + &(&y.num * &x.den), &x.den * &y.den)
    }
    fn sub(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        self.add(x, &self.neg(y))
    }
    fn neg(&self, x: &RatFunc) -> RatFunc {
        RatFunc {
            num: -&x.num,
            den: x.den.clone(),
        }
    }
    fn mul(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        RatFunc::new(&x.num * &y.num, &x.den * &y.den)
    }
    fn inv(&self, x: &RatFunc) -> Option<RatFunc> {
        (!x.num.is_zero()).then(|| RatFunc::new(x.den.clone(), x.num.clone()))
    }
    fn embed(&self, x: &LaurentCoeff) -> RatFunc {
        RatFunc::from_ring(x.clone())
    }
    fn weight(&self, x: &RatFunc) -> usize {
        // units first, then short numerators
        if x.num.is_unit() && x.den.is_one() {
            0
        } else {
            x.num.len() + 4 * x.den.len()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_cancel_units() {
        let q = Fractions;
        let x = q.embed(&(&LaurentCoeff::a() * &LaurentCoeff::c()));
        let y = q.inv(&q.embed(&LaurentCoeff::c())).unwrap();
        assert_eq!(q.mul(&x, &y).to_ring().unwrap(), LaurentCoeff::a());
        let ainv = q.inv(&q.a()).unwrap();
        assert!(ainv.to_ring().is_none());
        assert_eq!(q.mul(&ainv, &q.a()), q.one());
    }

    #[test]
    fn modp_roots() {
        // roots 1, 2, 3 of X^3 - 6X^2 + 11X - 6
        let m = ModP::from_roots(101, [1, 2, 3]).unwrap();
        assert_eq!((m.a, m.b, m.c), (6, 101 - 11, 6));
    }
}
