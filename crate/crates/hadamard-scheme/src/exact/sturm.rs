//! Exact real-root counting for univariate rational polynomials via Sturm
//! chains.
//!
//! The chain is the Euclidean remainder sequence `p, p', -rem(...)`, which
//! counts *distinct* real roots even for non-squarefree inputs. All
//! arithmetic is rational, so the counts carry no numerical caveats.

use num_traits::{Signed, Zero};

use super::poly::{rat, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first, no trailing zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct RealPoly {
    coeffs: Vec<Rational>,
}

impl RealPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect();
        RealPoly::new(coeffs)
    }

    /// Euclidean remainder of `self` divided by `d`.
    fn rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "polynomial remainder by zero");
        let mut r = self.coeffs.clone();
        let dn = d.coeffs.len();
        let lead = d.coeffs.last().unwrap();
        while r.len() >= dn && !r.is_empty() {
            if r.last().unwrap().is_zero() {
                r.pop();
                continue;
            }
            let k = r.len() - dn;
            let f = r.last().unwrap() / lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                let v = dc * &f;
                r[k + i] -= v;
            }
            // leading term cancels exactly
            r.pop();
        }
        RealPoly::new(r)
    }

    /// Cauchy bound: every real root lies in `(-M, M]` for the returned `M`.
    pub fn root_bound(&self) -> Rational {
        let lead = self.coeffs.last().expect("root bound of zero polynomial");
        let mut max = rat(0);
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let m = (c / lead).abs();
            if m > max {
                max = m;
            }
        }
        max + rat(1)
    }

    /// Sturm chain starting from `self` and its derivative.
    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let next = {
                let r = chain[n - 2].rem(&chain[n - 1]);
                RealPoly::new(r.coeffs.into_iter().map(|c| -c).collect())
            };
            chain.push(next);
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    ///
    /// Errors when `lo >= hi` or when called on the zero polynomial.
    pub fn count_roots_in(&self, lo: &Rational, hi: &Rational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if lo >= hi {
            return Err(Error::BadParameters(format!(
                "empty interval ({lo}, {hi}]"
            )));
        }
        if self.coeffs.len() == 1 {
            return Ok(0); // nonzero constant
        }
        let chain = self.sturm_chain();
        let v_lo = sign_variations(&chain, lo);
        let v_hi = sign_variations(&chain, hi);
        Ok(v_lo - v_hi)
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.coeffs.len() == 1 {
            return Ok(0);
        }
        let m = self.root_bound();
        self.count_roots_in(&-m.clone(), &m)
    }
}

fn sign_variations(chain: &[RealPoly], x: &Rational) -> usize {
    let mut last: Option<bool> = None; // sign as is_positive
    let mut variations = 0;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let sign = v.is_positive();
        if let Some(prev) = last {
            if prev != sign {
                variations += 1;
            }
        }
        last = Some(sign);
    }
    variations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::ratio;
    use proptest::prelude::*;

    #[test]
    fn square_root_of_two_lives_between_zero_and_two() {
        let p = RealPoly::from_ints(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(p.count_roots_in(&rat(0), &rat(2)).unwrap(), 1);
        assert_eq!(p.count_roots_in(&rat(-2), &rat(2)).unwrap(), 2);
        assert_eq!(p.count_roots_in(&rat(2), &rat(9)).unwrap(), 0);
        assert_eq!(p.count_real_roots().unwrap(), 2);
    }

    #[test]
    fn no_real_roots_for_positive_definite() {
        let p = RealPoly::from_ints(&[1, 0, 1]); // x^2 + 1
        assert_eq!(p.count_real_roots().unwrap(), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x - 1)^2 (x + 2)
        let p = RealPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.count_real_roots().unwrap(), 2);
        assert_eq!(p.count_roots_in(&rat(0), &rat(3)).unwrap(), 1);
    }

    #[test]
    fn endpoint_membership_is_half_open() {
        let p = RealPoly::from_ints(&[-1, 1]); // x - 1
        // root at 1: included as upper endpoint, excluded as lower
        assert_eq!(p.count_roots_in(&rat(0), &rat(1)).unwrap(), 1);
        assert_eq!(p.count_roots_in(&rat(1), &rat(2)).unwrap(), 0);
    }

    #[test]
    fn cubic_certificate_has_no_roots_above_threshold() {
        // 5u^3 - 90u^2 + 313u - 128 has all its real roots below 255
        let p = RealPoly::from_ints(&[-128, 313, -90, 5]);
        let bound = p.root_bound();
        assert!(bound <= rat(64)); // 1 + 313/5
        assert_eq!(p.count_roots_in(&rat(255), &rat(1000)).unwrap(), 0);
        assert_eq!(p.count_real_roots().unwrap(), 3);
    }

    #[test]
    fn zero_polynomial_and_empty_interval_rejected() {
        let z = RealPoly::new(vec![]);
        assert!(matches!(z.count_real_roots(), Err(Error::ZeroPolynomial)));
        let p = RealPoly::from_ints(&[-2, 0, 1]);
        assert!(p.count_roots_in(&rat(2), &rat(1)).is_err());
    }

    #[test]
    fn rational_coefficients_are_fine() {
        // (x - 1/2)(x - 3/2) = x^2 - 2x + 3/4
        let p = RealPoly::new(vec![ratio(3, 4), rat(-2), rat(1)]);
        assert_eq!(p.count_roots_in(&rat(0), &rat(1)).unwrap(), 1);
        assert_eq!(p.count_roots_in(&rat(0), &rat(2)).unwrap(), 2);
    }

    fn arb_distinct_roots() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::btree_set(-50i64..50, 1..6).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn counts_match_constructed_roots(
            roots in arb_distinct_roots(),
            multiplicities in proptest::collection::vec(1usize..3, 6),
            lo in -60i64..60,
            width in 1i64..60,
        ) {
            // Build prod (x - r)^m from known integer roots.
            let mut p = RealPoly::from_ints(&[1]);
            for (i, &r) in roots.iter().enumerate() {
                let factor = RealPoly::new(vec![rat(-r), rat(1)]);
                for _ in 0..multiplicities[i % multiplicities.len()] {
                    p = mul(&p, &factor);
                }
            }
            let hi = lo + width;
            // avoid endpoints landing exactly on roots: shift by 1/3
            let lo_q = rat(lo) + ratio(1, 3);
            let hi_q = rat(hi) + ratio(1, 3);
            let expected = roots.iter().filter(|&&r| lo_q < rat(r) && rat(r) <= hi_q).count();
            prop_assert_eq!(p.count_roots_in(&lo_q, &hi_q).unwrap(), expected);
            prop_assert_eq!(p.count_real_roots().unwrap(), roots.len());
        }
    }

    fn mul(a: &RealPoly, b: &RealPoly) -> RealPoly {
        let mut out = vec![rat(0); a.coeffs().len() + b.coeffs().len() - 1];
        for (i, ca) in a.coeffs().iter().enumerate() {
            for (j, cb) in b.coeffs().iter().enumerate() {
                let v = ca * cb;
                out[i + j] += v;
            }
        }
        RealPoly::new(out)
    }
}
