//! The four-class association scheme family and its parameters.
//!
//! The family is indexed by a pair `(q, m)` where `q` is a power of two
//! (at least 4) and `m >= 2`; the scheme has `q^{2m} - 1` points. All
//! symbolic work happens in two polynomial variables:
//!
//! * `q` — the field size;
//! * `r` — shorthand for `q^{m-1}`.
//!
//! Every closed form in the scheme's spectral data is polynomial (or
//! rational) in `(q, r)`; substituting `r = q^{m-1}` recovers the value at a
//! concrete parameter pair. The frequently used products are `q*r = q^m`
//! and `q^2*r^2 = q^{2m}`, so the scheme order is `q^2 r^2 - 1`.

pub mod eigen;
pub mod instance;
pub mod tensor;

pub use eigen::{dual_eigenmatrix, eigenmatrix, multiplicities, order_poly, valencies};
pub use instance::{SchemeInstance, TripleMismatch};
pub use tensor::{reference_intersection_matrices, IntersectionTensor};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::poly::{MultiPoly, Rational};

/// Number of non-identity relation classes.
pub const CLASSES: usize = 4;

/// A validated parameter pair `(q, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    q: u64,
    m: u32,
}

impl SchemeParams {
    /// Validates `q` (power of two, at least 4) and `m` (at least 2).
    pub fn new(q: u64, m: u32) -> Result<Self> {
        if q < 4 || !q.is_power_of_two() {
            return Err(Error::BadParameters(format!(
                "q must be a power of two and at least 4, got {q}"
            )));
        }
        if m < 2 {
            return Err(Error::BadParameters(format!("m must be at least 2, got {m}")));
        }
        Ok(SchemeParams { q, m })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `r = q^{m-1}`, the value substituted for the symbolic variable `r`.
    pub fn r(&self) -> BigInt {
        BigInt::from(self.q).pow(self.m - 1)
    }

    /// `q^m`.
    pub fn q_pow_m(&self) -> BigInt {
        BigInt::from(self.q).pow(self.m)
    }

    /// Scheme order `n = q^{2m} - 1`.
    pub fn n(&self) -> BigInt {
        BigInt::from(self.q).pow(2 * self.m) - 1
    }

    /// The `(q, r)` assignment for evaluating symbolic expressions here.
    pub fn assignment(&self) -> Vec<(&'static str, Rational)> {
        vec![
            ("q", Rational::from_integer(BigInt::from(self.q))),
            ("r", Rational::from_integer(self.r())),
        ]
    }

    /// Evaluates a polynomial in `(q, r)` at these parameters.
    pub fn eval(&self, p: &MultiPoly) -> Result<Rational> {
        p.eval(&self.assignment())
    }

    /// Evaluates and insists on an integer value.
    pub fn eval_integer(&self, p: &MultiPoly) -> Result<BigInt> {
        let v = self.eval(p)?;
        if !v.is_integer() {
            return Err(Error::BadParameters(format!(
                "expected an integer value at (q, m) = ({}, {}), got {v}",
                self.q, self.m
            )));
        }
        Ok(v.to_integer())
    }
}

impl std::fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(q, m) = ({}, {})", self.q, self.m)
    }
}

/// The symbolic variable `q`.
pub fn sym_q() -> MultiPoly {
    MultiPoly::var("q")
}

/// The symbolic variable `r`, standing for `q^{m-1}`.
pub fn sym_r() -> MultiPoly {
    MultiPoly::var("r")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat;

    #[test]
    fn parameter_validation() {
        assert!(SchemeParams::new(4, 2).is_ok());
        assert!(SchemeParams::new(64, 3).is_ok());
        assert!(SchemeParams::new(3, 2).is_err());
        assert!(SchemeParams::new(6, 2).is_err());
        assert!(SchemeParams::new(2, 2).is_err());
        assert!(SchemeParams::new(4, 1).is_err());
    }

    #[test]
    fn derived_quantities() {
        let p = SchemeParams::new(4, 2).unwrap();
        assert_eq!(p.r(), BigInt::from(4));
        assert_eq!(p.q_pow_m(), BigInt::from(16));
        assert_eq!(p.n(), BigInt::from(255));
        let p2 = SchemeParams::new(8, 3).unwrap();
        assert_eq!(p2.r(), BigInt::from(64));
        assert_eq!(p2.n(), BigInt::from(262_143));
    }

    #[test]
    fn symbolic_order_specializes() {
        let p = SchemeParams::new(4, 2).unwrap();
        let n = &(&sym_q() * &sym_r()).pow(2) - &MultiPoly::int(1);
        assert_eq!(p.eval(&n).unwrap(), rat(255));
        assert_eq!(p.eval_integer(&n).unwrap(), BigInt::from(255));
    }

    #[test]
    fn non_integer_evaluation_rejected() {
        let p = SchemeParams::new(4, 2).unwrap();
        let half_q = sym_q().scale(&crate::exact::poly::ratio(1, 8));
        assert!(p.eval_integer(&half_q).is_err());
    }
}
