//! Quadratic extensions `K[x] / (x^2 - lin*x - con)` over an exact
//! coefficient field `K`.
//!
//! Elements are written `a + b*x` where `x` is the adjoined root. The same
//! generic type serves two coefficient fields: plain rationals (for
//! computations at specialized parameters) and rational functions (for fully
//! symbolic work). The conjugation `x -> lin - x` swaps the two roots; when
//! `con = -1` the two roots multiply to 1, so conjugation coincides with
//! inversion on the adjoined root — the property that makes these moduli
//! model unimodular weights.

use std::fmt;

use num_traits::Zero;

use super::poly::{rat, Rational};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Exact field operations needed by the quadratic-extension arithmetic.
pub trait CoeffField: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
}

/// Minimal ring surface for determinant-style formulas that must accept
/// both coefficient-field values and quadratic-extension elements.
pub trait RingElem: Clone {
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_is_zero(&self) -> bool;
}

impl<F: CoeffField> RingElem for QuadExt<F> {
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl RingElem for Rational {
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl RingElem for RatFunc {
    fn ring_mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn ring_is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl CoeffField for Rational {
    fn zero() -> Self {
        rat(0)
    }
    fn one() -> Self {
        rat(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::DivisionByZero("rational"));
        }
        Ok(self / rhs)
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl CoeffField for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        RatFunc::div(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
}

/// The defining relation `x^2 = lin*x + con`.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadModulus<F: CoeffField> {
    pub lin: F,
    pub con: F,
}

impl<F: CoeffField> QuadModulus<F> {
    pub fn new(lin: F, con: F) -> Self {
        QuadModulus { lin, con }
    }

    /// The modulus `x^2 = lin*x - 1`, whose roots are mutually inverse.
    /// This is the shape every unimodular weight satisfies.
    pub fn unit_norm(lin: F) -> Self {
        QuadModulus { lin, con: F::one().neg() }
    }

    /// True when the two roots multiply to 1 (`con == -1`).
    pub fn is_unit_norm(&self) -> bool {
        self.con == F::one().neg()
    }
}

/// An element `a + b*x` of a quadratic extension.
///
/// Every element carries its modulus; binary operations panic if the two
/// operands disagree, since mixing extensions is a programming error rather
/// than a data error.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadExt<F: CoeffField> {
    pub a: F,
    pub b: F,
    pub modulus: QuadModulus<F>,
}

impl<F: CoeffField> QuadExt<F> {
    pub fn new(a: F, b: F, modulus: QuadModulus<F>) -> Self {
        QuadExt { a, b, modulus }
    }

    /// Embeds a coefficient-field element.
    pub fn from_base(a: F, modulus: QuadModulus<F>) -> Self {
        QuadExt { a, b: F::zero(), modulus }
    }

    /// The adjoined root `x` itself.
    pub fn root(modulus: QuadModulus<F>) -> Self {
        QuadExt { a: F::zero(), b: F::one(), modulus }
    }

    pub fn zero(modulus: QuadModulus<F>) -> Self {
        Self::from_base(F::zero(), modulus)
    }

    pub fn one(modulus: QuadModulus<F>) -> Self {
        Self::from_base(F::one(), modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the element lies in the coefficient field.
    pub fn is_base(&self) -> bool {
        self.b.is_zero()
    }

    fn check(&self, rhs: &Self) {
        assert!(
            self.modulus == rhs.modulus,
            "quadratic extension arithmetic across different moduli"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        QuadExt {
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
            modulus: self.modulus.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        QuadExt {
            a: self.a.sub(&rhs.a),
            b: self.b.sub(&rhs.b),
            modulus: self.modulus.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        QuadExt { a: self.a.neg(), b: self.b.neg(), modulus: self.modulus.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        // (a1 + b1 x)(a2 + b2 x) with x^2 = lin*x + con
        let bb = self.b.mul(&rhs.b);
        let a = self.a.mul(&rhs.a).add(&bb.mul(&self.modulus.con));
        let b = self
            .a
            .mul(&rhs.b)
            .add(&self.b.mul(&rhs.a))
            .add(&bb.mul(&self.modulus.lin));
        QuadExt { a, b, modulus: self.modulus.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        QuadExt { a: self.a.mul(c), b: self.b.mul(c), modulus: self.modulus.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.modulus.clone());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Galois conjugation `x -> lin - x` (swaps the two roots of the
    /// modulus). A ring automorphism fixing the coefficient field.
    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.add(&self.b.mul(&self.modulus.lin)),
            b: self.b.neg(),
            modulus: self.modulus.clone(),
        }
    }

    /// Field norm `self * conj(self)`, always a coefficient-field element:
    /// `a^2 + a*b*lin - b^2*con`.
    pub fn norm(&self) -> F {
        self.a
            .mul(&self.a)
            .add(&self.a.mul(&self.b).mul(&self.modulus.lin))
            .sub(&self.b.mul(&self.b).mul(&self.modulus.con))
    }

    /// Trace `self + conj(self) = 2a + b*lin`.
    pub fn trace(&self) -> F {
        self.a.add(&self.a).add(&self.b.mul(&self.modulus.lin))
    }

    /// Multiplicative inverse `conj(self) / norm(self)`.
    ///
    /// Errors when the norm vanishes — either the element is zero or the
    /// modulus is reducible and the element is a zero divisor.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero("quadratic extension element with zero norm"));
        }
        let c = self.conj();
        Ok(QuadExt {
            a: c.a.div(&n)?,
            b: c.b.div(&n)?,
            modulus: self.modulus.clone(),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }
}

impl<F: CoeffField + fmt::Display> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*x", self.a, self.b)
    }
}
