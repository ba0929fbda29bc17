//! High-precision binary fixed-point reals and complex numbers.
//!
//! A [`BigFloat`] stores an integer mantissa `m` at a fixed binary precision
//! `p`; its value is `m / 2^p`. Addition is exact; multiplication, division
//! and square root round to nearest. This is all the numerics the crate
//! needs: every irrational quantity encountered is built from field
//! operations and real square roots, so no transcendental functions appear.
//!
//! All binary operations require both operands to carry the same precision;
//! mixing precisions is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::Rational;
use crate::error::{Error, Result};

/// Smallest precision the public constructors accept. Below this the
/// acceptance tolerances (down to `2^-80`) would be meaningless.
pub const MIN_PRECISION: u32 = 128;

/// Default working precision, comfortably past every tolerance in use.
pub const DEFAULT_PRECISION: u32 = 256;

/// Validates a requested precision.
pub fn check_precision(prec: u32) -> Result<u32> {
    if prec < MIN_PRECISION {
        Err(Error::PrecisionTooLow(prec))
    } else {
        Ok(prec)
    }
}

/// Binary fixed-point real number: value = `mant / 2^prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    prec: u32,
    mant: BigInt,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { prec, mant: BigInt::zero() }
    }

    pub fn one(prec: u32) -> Self {
        BigFloat { prec, mant: BigInt::from(1) << prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        BigFloat { prec, mant: BigInt::from(n) << prec }
    }

    /// Nearest fixed-point value to an exact rational.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let scaled = Rational::new(r.numer() << prec, r.denom().clone());
        BigFloat { prec, mant: scaled.round().to_integer() }
    }

    /// `2^k` for any integer `k` (negative `k` gives sub-unit powers, the
    /// usual shape of tolerances).
    pub fn two_pow(k: i64, prec: u32) -> Self {
        let shift = prec as i64 + k;
        assert!(shift >= 0, "2^{k} underflows precision {prec}");
        BigFloat { prec, mant: BigInt::from(1) << (shift as u64) }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Exact rational value of the stored approximation.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), BigInt::from(1) << self.prec)
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.prec, rhs.prec, "mixed-precision float arithmetic");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        BigFloat { prec: self.prec, mant: &self.mant + &rhs.mant }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        BigFloat { prec: self.prec, mant: &self.mant - &rhs.mant }
    }

    pub fn neg(&self) -> Self {
        BigFloat { prec: self.prec, mant: -&self.mant }
    }

    pub fn abs(&self) -> Self {
        BigFloat { prec: self.prec, mant: self.mant.abs() }
    }

    /// Round-to-nearest product.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let wide = &self.mant * &rhs.mant;
        BigFloat { prec: self.prec, mant: round_shift(wide, self.prec) }
    }

    /// Round-to-nearest quotient. Panics on a zero divisor.
    pub fn div(&self, rhs: &Self) -> Self {
        self.check(rhs);
        assert!(!rhs.mant.is_zero(), "fixed-point division by zero");
        let scaled = Rational::new(&self.mant << self.prec, rhs.mant.clone());
        BigFloat { prec: self.prec, mant: scaled.round().to_integer() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        BigFloat { prec: self.prec, mant: &self.mant * BigInt::from(k) }
    }

    /// Round-to-nearest square root. Panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(
            !self.mant.is_negative(),
            "square root of negative fixed-point value"
        );
        // sqrt(m / 2^p) = sqrt(m * 2^p) / 2^p; integer sqrt gives the floor,
        // a final correction step picks the nearest of floor and floor+1.
        let wide = &self.mant << self.prec;
        let root = wide.sqrt();
        let lo = &root * &root;
        let hi = (&root + 1) * (&root + 1);
        let mant = if &wide - lo <= hi - &wide { root } else { root + 1 };
        BigFloat { prec: self.prec, mant }
    }

    /// Approximate `f64` view, for human-readable output only.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits <= 900 {
            return self.mant.to_f64().unwrap_or(0.0) * (self.prec as f64 * -1.0).exp2();
        }
        let shift = bits - 53;
        let head = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        head * ((shift as f64) - self.prec as f64).exp2()
    }

    /// Decimal rendering with `digits` digits after the point, rounded
    /// toward zero. Suitable for reports; not a parsing format.
    pub fn to_decimal(&self, digits: u32) -> String {
        let sign = if self.mant.is_negative() { "-" } else { "" };
        let scaled: BigInt = (self.mant.abs() * BigInt::from(10u8).pow(digits)) >> self.prec;
        let s = scaled.to_string();
        if digits == 0 {
            return format!("{sign}{s}");
        }
        let d = digits as usize;
        if s.len() <= d {
            format!("{sign}0.{}{}", "0".repeat(d - s.len()), s)
        } else {
            format!("{sign}{}.{}", &s[..s.len() - d], &s[s.len() - d..])
        }
    }
}

/// Divides by `2^shift`, rounding to nearest (ties toward +infinity).
fn round_shift(x: BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return x;
    }
    let half = BigInt::from(1) << (shift - 1);
    (x + half).div_floor(&(BigInt::from(1) << shift))
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.check(other);
        self.mant.cmp(&other.mant)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(40))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{:e}", self.to_decimal(40), self.to_f64())
    }
}

/// Complex number over [`BigFloat`].
#[derive(Clone, PartialEq, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        BigComplex { re: BigFloat::one(prec), im: BigFloat::zero(prec) }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.precision();
        BigComplex { re, im: BigFloat::zero(prec) }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self::from_real(BigFloat::from_rational(r, prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        BigComplex { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        BigComplex { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn abs2(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Modulus. Squares first, so magnitudes below roughly
    /// `2^-(precision/2)` round to exactly zero; treat a zero result as
    /// "smaller than that floor", and keep tolerances well above it.
    pub fn abs(&self) -> BigFloat {
        self.abs2().sqrt()
    }

    /// Division by a real scalar.
    pub fn div_real(&self, d: &BigFloat) -> Self {
        BigComplex { re: self.re.div(d), im: self.im.div(d) }
    }

    /// Full complex division. Panics when `rhs` is exactly zero.
    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.abs2();
        self.mul(&rhs.conj()).div_real(&d)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        BigComplex { re: self.re.scale_int(k), im: self.im.scale_int(k) }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}i", self.re, sign, self.im.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{rat, ratio};
    use proptest::prelude::*;

    const P: u32 = 192;

    #[test]
    fn rational_roundtrip_error_is_below_one_ulp() {
        let third = ratio(1, 3);
        let f = BigFloat::from_rational(&third, P);
        let err = (f.to_rational() - third).abs();
        let ulp = Rational::new(BigInt::from(1), BigInt::from(1) << P);
        assert!(err <= ulp);
    }

    #[test]
    fn sqrt_two_squares_back() {
        let two = BigFloat::from_int(2, 256);
        let s = two.sqrt();
        let back = s.mul(&s);
        let err = (back.to_rational() - rat(2)).abs();
        let tol = Rational::new(BigInt::from(1), BigInt::from(1) << 250u32);
        assert!(err < tol, "sqrt(2)^2 error {err}");
    }

    #[test]
    fn sqrt_of_exact_square_is_exact() {
        let nine = BigFloat::from_int(9, P);
        assert_eq!(nine.sqrt(), BigFloat::from_int(3, P));
    }

    #[test]
    fn tolerance_constructor_matches_rational() {
        let t = BigFloat::two_pow(-80, P);
        assert_eq!(t.to_rational(), Rational::new(BigInt::from(1), BigInt::from(1) << 80u32));
    }

    #[test]
    fn complex_norm_of_three_four() {
        let z = BigComplex::new(BigFloat::from_int(3, P), BigFloat::from_int(4, P));
        assert_eq!(z.abs2().to_rational(), rat(25));
        assert_eq!(z.abs().to_rational(), rat(5));
        let zz = z.mul(&z.conj());
        assert_eq!(zz.re.to_rational(), rat(25));
        assert!(zz.im.is_zero());
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let z = BigComplex::new(BigFloat::from_rational(&ratio(3, 7), P), BigFloat::from_int(-2, P));
        let w = BigComplex::new(BigFloat::from_int(5, P), BigFloat::from_rational(&ratio(1, 3), P));
        let back = z.mul(&w).div(&w);
        let err = back.sub(&z).abs2();
        assert!(err < BigFloat::two_pow(-(P as i64) + 20, P));
    }

    #[test]
    fn decimal_rendering() {
        let f = BigFloat::from_rational(&ratio(-5, 4), P);
        assert_eq!(f.to_decimal(3), "-1.250");
        let g = BigFloat::from_rational(&ratio(1, 8), P);
        assert_eq!(g.to_decimal(4), "0.1250");
    }

    #[test]
    fn precision_gate() {
        assert!(check_precision(64).is_err());
        assert_eq!(check_precision(256).unwrap(), 256);
    }

    fn arb_pos_rational() -> impl Strategy<Value = Rational> {
        (1i64..1_000_000, 1i64..1_000).prop_map(|(n, d)| ratio(n, d))
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1_000_000i64..1_000_000, 1i64..1_000).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn sqrt_squares_within_tolerance(x in arb_pos_rational()) {
            let f = BigFloat::from_rational(&x, P);
            let s = f.sqrt();
            let err = (s.mul(&s).to_rational() - x).abs();
            // error is a few ulps, scaled by the magnitude of x
            let bound = Rational::new(BigInt::from(1) << 40u32, BigInt::from(1) << P);
            prop_assert!(err < bound, "err = {}", err);
        }

        #[test]
        fn product_matches_exact_rational_product(a in arb_rational(), b in arb_rational()) {
            let fa = BigFloat::from_rational(&a, P);
            let fb = BigFloat::from_rational(&b, P);
            let approx = fa.mul(&fb).to_rational();
            let exact = &a * &b;
            let err = (approx - exact).abs();
            let bound = Rational::new(BigInt::from(1) << 42u32, BigInt::from(1) << P);
            prop_assert!(err < bound, "err = {}", err);
        }

        #[test]
        fn addition_is_exact(a in arb_rational(), b in arb_rational()) {
            let fa = BigFloat::from_rational(&a, P);
            let fb = BigFloat::from_rational(&b, P);
            prop_assert_eq!(
                fa.add(&fb).to_rational(),
                fa.to_rational() + fb.to_rational()
            );
        }
    }
}
