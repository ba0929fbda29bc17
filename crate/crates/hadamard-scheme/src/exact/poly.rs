//! Sparse multivariate polynomials over the rationals.
//!
//! A [`MultiPoly`] stores an ordered variable list and a map from exponent
//! vectors to nonzero rational coefficients. Variables follow one global
//! ordering so that polynomials built independently combine predictably:
//!
//! | rank | variable |
//! |------|----------|
//! | 0..9 | `x01 x02 x03 x04 x12 x13 x14 x23 x24 x34` (pair variables, row-major over index pairs) |
//! | 10   | `q`      |
//! | 11   | `r`      |
//! | 12   | `t`      |
//! | 13.. | anything else, alphabetically |
//!
//! All arithmetic is exact; there is no floating point anywhere in this file.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

const FIXED_ORDER: [&str; 13] = [
    "x01", "x02", "x03", "x04", "x12", "x13", "x14", "x23", "x24", "x34", "q", "r", "t",
];

fn var_rank(name: &str) -> (usize, &str) {
    match FIXED_ORDER.iter().position(|v| *v == name) {
        Some(i) => (i, ""),
        None => (FIXED_ORDER.len(), name),
    }
}

fn var_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    var_rank(a).cmp(&var_rank(b))
}

/// Sparse multivariate polynomial with [`Rational`] coefficients.
///
/// The representation is canonical: the variable list contains exactly the
/// variables that occur with a nonzero exponent, sorted by the global
/// ordering, and no stored coefficient is zero. Two polynomials are equal
/// iff their canonical representations are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    /// The zero polynomial (empty term map).
    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    /// Integer constant convenience.
    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// The polynomial consisting of a single variable.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], rat(1));
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Variables that occur in the polynomial, in global order.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// The value of a constant polynomial, or `None` if any variable occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(rat(0));
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Drops variables whose exponent is zero in every term, keeping the
    /// representation canonical.
    fn compact(mut self) -> Self {
        if self.terms.is_empty() {
            self.vars.clear();
            return self;
        }
        let nvars = self.vars.len();
        let mut used = vec![false; nvars];
        for exps in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(exps.iter()) {
                *u |= e != 0;
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..nvars).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(exps, c)| (keep.iter().map(|&i| exps[i]).collect(), c))
            .collect();
        MultiPoly { vars, terms }
    }

    /// Re-expresses `self` over the variable superset `vars` (which must be
    /// sorted and contain all of `self.vars`).
    fn embed(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("embed: missing variable"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut e = vec![0u32; vars.len()];
                for (src, &dst) in exps.iter().zip(&positions) {
                    e[dst] = *src;
                }
                (e, c.clone())
            })
            .collect();
        MultiPoly { vars: vars.to_vec(), terms }
    }

    /// Merged, sorted variable universe of two polynomials.
    fn union_vars(a: &Self, b: &Self) -> Vec<String> {
        let mut vars = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort_by(|x, y| var_cmp(x, y));
        vars
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let vars = Self::union_vars(self, other);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        let mut terms = a.terms;
        for (exps, c) in b.terms {
            let c = if negate_other { -c } else { c };
            let entry = terms.entry(exps).or_insert_with(|| rat(0));
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms }.compact()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Raises the polynomial to a nonnegative integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::int(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation. Every variable of the polynomial must be assigned.
    pub fn eval(&self, assignment: &[(&str, Rational)]) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            match assignment.iter().find(|(name, _)| name == v) {
                Some((_, val)) => values.push(val.clone()),
                None => return Err(Error::MissingVariable(v.clone())),
            }
        }
        // Per-variable power tables keep the work near-linear in term count.
        let mut max_deg = vec![0u32; self.vars.len()];
        for exps in self.terms.keys() {
            for (m, &e) in max_deg.iter_mut().zip(exps) {
                *m = (*m).max(e);
            }
        }
        let pow_tables: Vec<Vec<Rational>> = values
            .iter()
            .zip(&max_deg)
            .map(|(v, &d)| {
                let mut t = Vec::with_capacity(d as usize + 1);
                t.push(rat(1));
                for i in 1..=d as usize {
                    let next = &t[i - 1] * v;
                    t.push(next);
                }
                t
            })
            .collect();
        let mut total = rat(0);
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term *= &pow_tables[i][e as usize];
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes rationals for a subset of the variables, leaving the rest
    /// symbolic.
    pub fn eval_partial(&self, assignment: &[(&str, Rational)]) -> Self {
        let mut result = Self::zero();
        for (exps, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Self::int(1);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match assignment.iter().find(|(name, _)| *name == self.vars[i]) {
                    Some((_, val)) => {
                        for _ in 0..e {
                            coeff *= val;
                        }
                    }
                    None => {
                        let mut v = Self::var(&self.vars[i]);
                        v = v.pow(e);
                        mono = &mono * &v;
                    }
                }
            }
            result = &result + &mono.scale(&coeff);
        }
        result
    }

    /// Substitutes a polynomial for one variable.
    pub fn substitute(&self, var: &str, replacement: &Self) -> Self {
        let Some(pos) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let max_deg = self.terms.keys().map(|e| e[pos]).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_deg as usize + 1);
        powers.push(Self::int(1));
        for i in 1..=max_deg as usize {
            let next = &powers[i - 1] * replacement;
            powers.push(next);
        }
        let mut result = Self::zero();
        for (exps, c) in &self.terms {
            let mut rest = exps.clone();
            let e = rest[pos];
            rest[pos] = 0;
            let mono = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(rest, c.clone())]),
            }
            .compact();
            result = &result + &(&mono * &powers[e as usize]);
        }
        result
    }

    /// Degree in one variable (0 if the variable does not occur).
    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(pos) => self.terms.keys().map(|e| e[pos]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Total degree (0 for constants and the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficients with respect to one variable, ascending by exponent.
    /// The returned polynomials do not contain `var`.
    pub fn coeffs_in(&self, var: &str) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        let pos = self.vars.iter().position(|v| v == var);
        for (exps, c) in &self.terms {
            let (e, rest) = match pos {
                Some(p) => {
                    let mut rest = exps.clone();
                    let e = rest[p];
                    rest[p] = 0;
                    (e as usize, rest)
                }
                None => (0, exps.clone()),
            };
            let mono = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(rest, c.clone())]),
            }
            .compact();
            out[e] = &out[e] + &mono;
        }
        out
    }

    /// Leading exponent vector and coefficient in the lexicographic order
    /// induced by the variable list. `None` for the zero polynomial.
    fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact polynomial division: returns `Some(quotient)` when
    /// `self = quotient * divisor`, `None` otherwise.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "exact_div by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&(rat(1) / c)));
        }
        let vars = Self::union_vars(self, divisor);
        let mut rem = self.embed(&vars);
        let div = divisor.embed(&vars);
        let (dexp, dc) = {
            let (e, c) = div.leading().unwrap();
            (e.clone(), c.clone())
        };
        let mut quot = MultiPoly { vars: vars.clone(), terms: BTreeMap::new() };
        while !rem.terms.is_empty() {
            let (rexp, rc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            if rexp.iter().zip(&dexp).any(|(re, de)| re < de) {
                return None;
            }
            let qexp: Vec<u32> = rexp.iter().zip(&dexp).map(|(re, de)| re - de).collect();
            let qc = rc / &dc;
            let mono = MultiPoly {
                vars: vars.clone(),
                terms: BTreeMap::from([(qexp.clone(), qc.clone())]),
            };
            // add_impl compacts away unused variables; re-embed so the
            // exponent vectors stay aligned with the fixed universe `vars`.
            rem = rem.add_impl(&(&mono * &div), true).embed(&vars);
            quot.terms.insert(qexp, qc);
        }
        Some(quot.compact())
    }

    /// Rational content: the positive rational `c` such that `self / c` has
    /// coprime integer coefficients, signed so that the lexicographically
    /// leading coefficient of `self / content` is positive. Zero for the
    /// zero polynomial.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return rat(0);
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    /// `self / content`: coprime integer coefficients, positive leading one.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.scale(&(rat(1) / c))
    }

    /// Interprets the polynomial as univariate, returning its variable name
    /// and ascending coefficient list. Constants report variable `"x"`.
    pub fn to_univariate(&self) -> Result<(String, Vec<Rational>)> {
        match self.vars.len() {
            0 => Ok(("x".to_string(), vec![self.as_constant().unwrap_or_else(|| rat(0))])),
            1 => {
                let var = self.vars[0].clone();
                let deg = self.degree_in(&var) as usize;
                let mut coeffs = vec![rat(0); deg + 1];
                for (exps, c) in &self.terms {
                    coeffs[exps[0] as usize] = c.clone();
                }
                Ok((var, coeffs))
            }
            _ => Err(Error::BadParameters(format!(
                "expected a univariate polynomial, got variables {:?}",
                self.vars
            ))),
        }
    }

    /// Sufficient positivity certificate on a product of half-lines: shifts
    /// each listed variable by its lower bound and accepts when the shifted
    /// polynomial has all coefficients nonnegative and a positive constant
    /// term. A `false` return is inconclusive, not a disproof.
    pub fn positive_on_box(&self, bounds: &[(&str, Rational)]) -> bool {
        let mut shifted = self.clone();
        for (var, lo) in bounds {
            let repl = &MultiPoly::var(var) + &MultiPoly::constant(lo.clone());
            shifted = shifted.substitute(var, &repl);
        }
        if shifted.is_zero() {
            return false;
        }
        let const_term = shifted
            .terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| rat(0));
        const_term.is_positive() && shifted.terms.values().all(|c| !c.is_negative())
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_impl(rhs, false)
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_impl(rhs, true)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let vars = MultiPoly::union_vars(self, rhs);
        let a = self.embed(&vars);
        let b = rhs.embed(&vars);
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(exps).or_insert_with(|| rat(0));
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms }.compact()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_term = exps.iter().all(|&e| e == 0);
            if !mag.is_one() || is_const_term {
                write!(f, "{}", mag)?;
                if !is_const_term {
                    write!(f, "*")?;
                }
            }
            let mut need_star = false;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars[i])?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                need_star = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
