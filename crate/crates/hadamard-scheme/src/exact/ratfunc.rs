//! Rational functions: quotients of [`MultiPoly`] values.
//!
//! Full multivariate gcd is deliberately avoided. Instead every constructor
//! and arithmetic operation applies three cheap normalization probes:
//!
//! 1. **monomial cancellation** — divide numerator and denominator by the
//!    largest monomial dividing both;
//! 2. **denominator content** — rescale so the denominator has coprime
//!    integer coefficients with a positive leading one;
//! 3. **polynomial collapse** — if the denominator divides the numerator
//!    exactly, fold the quotient back into a polynomial over 1.
//!
//! Addition first probes whether one denominator divides the other and
//! reuses the larger one, so sums over a common family of denominator
//! "atoms" do not blow up. [`RatFunc::reduce_by_atoms`] finishes the job by
//! trial division against a caller-supplied factor list.

use std::fmt;

use num_traits::Zero;

use super::poly::{rat, MultiPoly, Rational};
use crate::error::{Error, Result};

/// A quotient of two polynomials with a nonzero denominator.
///
/// Equality is mathematical (cross-multiplication), not representational.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Builds `num / den`. Errors when `den` is the zero polynomial.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("rational function denominator"));
        }
        Ok(RatFunc { num, den }.normalize())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::int(1) }
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the underlying polynomial when the denominator divides the
    /// numerator exactly (after normalization this means `den == 1`, but the
    /// probe is repeated here so the answer never depends on representation).
    pub fn as_poly(&self) -> Option<MultiPoly> {
        self.num.exact_div(&self.den)
    }

    /// Constant value if the function is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        let p = self.as_poly()?;
        p.as_constant()
    }

    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            return RatFunc { num: MultiPoly::zero(), den: MultiPoly::int(1) };
        }
        // Probe 1: shared monomial.
        if let Some(m) = shared_monomial(&self.num, &self.den) {
            if !m.is_constant() {
                self.num = self.num.exact_div(&m).expect("monomial divides numerator");
                self.den = self.den.exact_div(&m).expect("monomial divides denominator");
            }
        }
        // Probe 3: full collapse.
        if let Some(q) = self.num.exact_div(&self.den) {
            return RatFunc { num: q, den: MultiPoly::int(1) };
        }
        // Probe 2: denominator content.
        let c = self.den.content();
        let inv = rat(1) / c;
        RatFunc { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let rnum = if negate { -&rhs.num } else { rhs.num.clone() };
        let (num, den) = if self.den == rhs.den {
            (&self.num + &rnum, self.den.clone())
        } else if let Some(q) = rhs.den.exact_div(&self.den) {
            // self.den divides rhs.den: common denominator is rhs.den
            (&(&self.num * &q) + &rnum, rhs.den.clone())
        } else if let Some(q) = self.den.exact_div(&rhs.den) {
            (&self.num + &(&rnum * &q), self.den.clone())
        } else {
            (&(&self.num * &rhs.den) + &(&rnum * &self.den), &self.den * &rhs.den)
        };
        RatFunc { num, den }.normalize()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // Cross-probes keep products of the form (a/b)·(b/c) small.
        let mut lhs_num = self.num.clone();
        let mut lhs_den = self.den.clone();
        let mut rhs_num = rhs.num.clone();
        let mut rhs_den = rhs.den.clone();
        if !lhs_num.is_zero() {
            if let Some(q) = lhs_num.exact_div(&rhs_den) {
                lhs_num = q;
                rhs_den = MultiPoly::int(1);
            }
        }
        if !rhs_num.is_zero() {
            if let Some(q) = rhs_num.exact_div(&lhs_den) {
                rhs_num = q;
                lhs_den = MultiPoly::int(1);
            }
        }
        RatFunc { num: &lhs_num * &rhs_num, den: &lhs_den * &rhs_den }.normalize()
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("rational function"));
        }
        Ok(RatFunc { num: self.den.clone(), den: self.num.clone() }.normalize())
    }

    /// Exact division. Errors when `rhs` is zero.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }.normalize()
    }

    /// Exact evaluation. Errors when the denominator vanishes at the point.
    pub fn eval(&self, assignment: &[(&str, Rational)]) -> Result<Rational> {
        let d = self.den.eval(assignment)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero("rational function denominator at evaluation point"));
        }
        Ok(self.num.eval(assignment)? / d)
    }

    /// Substitutes a polynomial for one variable in both numerator and
    /// denominator. Errors if the denominator collapses to zero.
    pub fn substitute(&self, var: &str, replacement: &MultiPoly) -> Result<Self> {
        Self::new(self.num.substitute(var, replacement), self.den.substitute(var, replacement))
    }

    /// Repeatedly cancels each `atom` that divides numerator and denominator
    /// simultaneously, then renormalizes. With a complete atom list for the
    /// denominator this produces the fully reduced form without multivariate
    /// gcd computations.
    pub fn reduce_by_atoms(&self, atoms: &[MultiPoly]) -> Self {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if num.is_zero() {
            return Self::zero();
        }
        loop {
            let mut progress = false;
            for atom in atoms {
                if atom.is_constant() {
                    continue;
                }
                while let (Some(nq), Some(dq)) = (num.exact_div(atom), den.exact_div(atom)) {
                    num = nq;
                    den = dq;
                    progress = true;
                    if num.is_zero() {
                        return Self::zero();
                    }
                }
            }
            if !progress {
                break;
            }
        }
        RatFunc { num, den }.normalize()
    }

    /// Evaluates a polynomial with rational-function values for its
    /// variables.
    pub fn eval_poly(p: &MultiPoly, assignment: &[(&str, RatFunc)]) -> Result<RatFunc> {
        for v in p.vars() {
            if !assignment.iter().any(|(name, _)| name == v) {
                return Err(Error::MissingVariable(v.clone()));
            }
        }
        let values: Vec<&RatFunc> = p
            .vars()
            .iter()
            .map(|v| &assignment.iter().find(|(name, _)| name == v).unwrap().1)
            .collect();
        let mut pow_tables: Vec<Vec<RatFunc>> = values.iter().map(|_| vec![RatFunc::one()]).collect();
        for e in 1..=p.total_degree() as usize {
            for (t, v) in pow_tables.iter_mut().zip(&values) {
                let next = t[e - 1].mul(v);
                t.push(next);
            }
        }
        let mut acc = RatFunc::zero();
        for (exps, c) in decompose(p) {
            let mut term = RatFunc::constant(c);
            for (idx, e) in exps.iter().enumerate() {
                if *e > 0 {
                    term = term.mul(&pow_tables[idx][*e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// Exposes a polynomial's terms as (exponents, coefficient) pairs aligned to
/// its variable list.
fn decompose(p: &MultiPoly) -> Vec<(Vec<u32>, Rational)> {
    let mut out = Vec::new();
    // Reconstruct terms via coeffs_in recursion-free walk: evaluate by
    // peeling coefficients one variable at a time.
    fn walk(p: &MultiPoly, prefix: &mut Vec<u32>, depth_vars: &[String], out: &mut Vec<(Vec<u32>, Rational)>) {
        if depth_vars.is_empty() {
            if let Some(c) = p.as_constant() {
                if !c.is_zero() {
                    out.push((prefix.clone(), c));
                }
            }
            return;
        }
        let var = &depth_vars[0];
        for (e, coeff) in p.coeffs_in(var).into_iter().enumerate() {
            prefix.push(e as u32);
            walk(&coeff, prefix, &depth_vars[1..], out);
            prefix.pop();
        }
    }
    let vars = p.vars().to_vec();
    walk(p, &mut Vec::new(), &vars, &mut out);
    out
}

/// Largest monomial (as a polynomial) dividing every term of both arguments,
/// or `None` when either is zero.
fn shared_monomial(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let mut mono = MultiPoly::int(1);
    for v in a.vars() {
        if !b.vars().contains(v) {
            continue;
        }
        let min_a = min_exponent(a, v);
        let min_b = min_exponent(b, v);
        let e = min_a.min(min_b);
        if e > 0 {
            mono = &mono * &MultiPoly::var(v).pow(e);
        }
    }
    Some(mono)
}

fn min_exponent(p: &MultiPoly, var: &str) -> u32 {
    p.coeffs_in(var)
        .iter()
        .position(|c| !c.is_zero())
        .map(|i| i as u32)
        .unwrap_or(0)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.den.as_constant() {
            if c == rat(1) {
                return write!(f, "{}", self.num);
            }
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
