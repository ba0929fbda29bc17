//! Unimodular weight families in the Bose-Mesner algebra.
//!
//! A *weight vector* `(w0, ..., w4)` assigns one unimodular complex number to
//! each relation class; the associated matrix `W = sum_i w_i A_i` is the
//! candidate complex Hadamard matrix.  Because the `A_i` have constant row
//! sums and disjoint supports, everything about `W W*` is determined by the
//! *pair sums*
//!
//! ```text
//! a(i, j) = w_i conj(w_j) + w_j conj(w_i) = 2 Re(w_i / w_j)
//! ```
//!
//! together with the intersection numbers of the scheme.  This module builds
//! three families of weight vectors:
//!
//! * **Family I** — only `w2` is nontrivial; it is a root of
//!   `x^2 - a x + 1` with `a = -2 + 4/(qr)^2`.  Exact arithmetic in the
//!   quadratic extension is available for every admissible `(q, m)`.
//! * **Family II** — `w1` generates the quadratic extension and `w2` is a
//!   linear expression in `w1`; again exact for every `(q, m)`.
//! * **Family VI** — exists only at `(q, m) = (4, 2)` and its pair sums
//!   involve nested square roots, so only the high-precision floating-point
//!   construction is provided.  It comes in two sign-coupled branches.
//!
//! Pair sums are always reported in the fixed order [`PAIRS`], matching the
//! variable names `x01, ..., x34` used by the polynomial layer.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    check_precision, rat, BigComplex, BigFloat, MultiPoly, QuadExt, QuadModulus, RatFunc, Rational,
    RealPoly,
};
use crate::scheme::{SchemeParams, CLASSES};

pub mod generators;

pub use generators::{
    e_poly, evaluate_generators, family_residuals, family_residuals_at, g_poly, generator_set,
    h_poly, ordered_quadruple_polynomials, Generator, GeneratorResiduals,
};

/// Number of weights in a weight vector (one per relation class, including
/// the diagonal).
pub const WEIGHTS: usize = CLASSES + 1;

/// The ten unordered pairs `{i, j}` with `0 <= i < j <= 4`, in lexicographic
/// order.  All pair-sum vectors in this crate use this order.
pub const PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

/// Variable names for the ten pair sums, aligned with [`PAIRS`].
pub const PAIR_VARS: [&str; 10] = [
    "x01", "x02", "x03", "x04", "x12", "x13", "x14", "x23", "x24", "x34",
];

/// Position of the unordered pair `{i, j}` in [`PAIRS`].
///
/// # Panics
///
/// Panics if `i >= j` or `j > 4`.
pub fn pair_index(i: usize, j: usize) -> usize {
    assert!(i < j && j <= CLASSES, "invalid pair ({i}, {j})");
    i * (2 * WEIGHTS - i - 1) / 2 + (j - i - 1)
}

/// Polynomial variable name attached to the pair `{i, j}`.
pub fn pair_variable(i: usize, j: usize) -> &'static str {
    PAIR_VARS[pair_index(i, j)]
}

/// The weight families implemented by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Single nontrivial weight `w2`; exact for all `(q, m)`.
    I,
    /// Weights `w1, w2` in one quadratic extension; exact for all `(q, m)`.
    II,
    /// Five distinct weights, only at `(q, m) = (4, 2)`, numeric only.
    VI,
}

impl Family {
    /// All families, in declaration order.
    pub fn all() -> [Family; 3] {
        [Family::I, Family::II, Family::VI]
    }

    /// Short display name.
    pub fn as_str(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::VI => "VI",
        }
    }

    /// Whether exact quadratic-extension weights exist for this family.
    pub fn has_exact_weights(self) -> bool {
        !matches!(self, Family::VI)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Family::I),
            "II" | "2" => Ok(Family::II),
            "VI" | "6" => Ok(Family::VI),
            _ => Err(Error::BadParameters(format!(
                "unknown family `{s}` (expected I, II, or VI)"
            ))),
        }
    }
}

/// Sign branch of the family VI construction.
///
/// The two branches differ by the sign of the inner square root `t`; both
/// yield unimodular weight vectors.  Families I and II have a single branch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// `+t` coupling.
    #[default]
    Top,
    /// `-t` coupling.
    Bottom,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Top => "top",
            Branch::Bottom => "bottom",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "top" | "0" | "+" => Ok(Branch::Top),
            "bottom" | "1" | "-" => Ok(Branch::Bottom),
            _ => Err(Error::BadParameters(format!(
                "unknown branch `{s}` (expected top/0 or bottom/1)"
            ))),
        }
    }
}

/// A weight vector with entries in a quadratic extension of the rational
/// function field in `(q, r)`, valid simultaneously for all admissible
/// parameters.
#[derive(Clone, Debug)]
pub struct SymbolicWeights {
    family: Family,
    modulus: QuadModulus<RatFunc>,
    weights: Vec<QuadExt<RatFunc>>,
    a: Vec<RatFunc>,
}

impl SymbolicWeights {
    pub fn family(&self) -> Family {
        self.family
    }

    /// The quadratic modulus `x^2 = a x - 1` generated by the primary weight.
    pub fn modulus(&self) -> &QuadModulus<RatFunc> {
        &self.modulus
    }

    /// The five weights `(w0, ..., w4)`.
    pub fn weights(&self) -> &[QuadExt<RatFunc>] {
        &self.weights
    }

    /// The ten pair sums in [`PAIRS`] order.
    pub fn pair_sums(&self) -> &[RatFunc] {
        &self.a
    }

    /// The pair sum `a(i, j)`.
    pub fn pair_sum(&self, i: usize, j: usize) -> &RatFunc {
        &self.a[pair_index(i, j)]
    }

    /// Pair sums keyed by their polynomial variable names, ready for
    /// substitution into polynomials over `x01, ..., x34`.
    pub fn substitution(&self) -> Vec<(&'static str, RatFunc)> {
        PAIR_VARS.iter().copied().zip(self.a.iter().cloned()).collect()
    }
}

/// A weight vector with entries in a quadratic extension of the rationals,
/// obtained by specialising the symbolic family at concrete parameters.
#[derive(Clone, Debug)]
pub struct ExactWeights {
    family: Family,
    params: SchemeParams,
    modulus: QuadModulus<Rational>,
    weights: Vec<QuadExt<Rational>>,
    a: Vec<Rational>,
}

impl ExactWeights {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    /// The quadratic modulus `x^2 = a x - 1`; `|a| < 2`, so the extension
    /// embeds into the unit circle.
    pub fn modulus(&self) -> &QuadModulus<Rational> {
        &self.modulus
    }

    /// The five weights `(w0, ..., w4)`.
    pub fn weights(&self) -> &[QuadExt<Rational>] {
        &self.weights
    }

    /// The ten pair sums in [`PAIRS`] order.
    pub fn pair_sums(&self) -> &[Rational] {
        &self.a
    }

    /// The pair sum `a(i, j)`.
    pub fn pair_sum(&self, i: usize, j: usize) -> &Rational {
        &self.a[pair_index(i, j)]
    }

    /// Pair sums keyed by their polynomial variable names.
    pub fn substitution(&self) -> Vec<(&'static str, Rational)> {
        PAIR_VARS.iter().copied().zip(self.a.iter().cloned()).collect()
    }
}

/// A weight vector evaluated in high-precision complex floating point.
#[derive(Clone, Debug)]
pub struct NumericWeights {
    family: Family,
    params: SchemeParams,
    branch: Branch,
    precision: u32,
    weights: Vec<BigComplex>,
}

impl NumericWeights {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The five weights `(w0, ..., w4)`.
    pub fn weights(&self) -> &[BigComplex] {
        &self.weights
    }

    /// Largest deviation `| |w_i| - 1 |` over the five weights.
    pub fn unimodularity_defect(&self) -> BigFloat {
        let one = BigFloat::one(self.precision);
        self.weights
            .iter()
            .map(|w| w.abs().sub(&one).abs())
            .max()
            .expect("weight vector is never empty")
    }

    /// The ten pair sums `w_i conj(w_j) + w_j conj(w_i)` in [`PAIRS`] order.
    /// For genuinely unimodular weights these are real numbers.
    pub fn pair_sums(&self) -> Vec<BigComplex> {
        PAIRS
            .iter()
            .map(|&(i, j)| {
                let ij = self.weights[i].mul(&self.weights[j].conj());
                ij.add(&ij.conj())
            })
            .collect()
    }
}

/// Builds the symbolic weight vector of a family over the rational function
/// field in `(q, r)`.
///
/// Family VI has no symbolic form and returns
/// [`Error::UnsupportedFamily`].
pub fn symbolic_weights(family: Family) -> Result<SymbolicWeights> {
    match family {
        Family::I => Ok(family_one()),
        Family::II => Ok(family_two()),
        Family::VI => Err(Error::UnsupportedFamily {
            family: "VI".into(),
            reason: "pair sums involve nested square roots; only the numeric \
                     construction at (q, m) = (4, 2) is available"
                .into(),
        }),
    }
}

/// Specialises a symbolic family at concrete parameters, yielding exact
/// weights in a quadratic number field.
///
/// Fails with [`Error::UnsupportedFamily`] for family VI and with
/// [`Error::NotUnimodularModulus`] if the specialised modulus has real roots
/// (which does not happen for admissible parameters).
pub fn exact_weights(family: Family, params: &SchemeParams) -> Result<ExactWeights> {
    let symbolic = symbolic_weights(family)?;
    let assign = params.assignment();
    let assign_ref: Vec<(&str, Rational)> =
        assign.iter().map(|(v, x)| (*v, x.clone())).collect();

    let lin = symbolic.modulus.lin.eval(&assign_ref)?;
    let con = symbolic.modulus.con.eval(&assign_ref)?;
    debug_assert_eq!(con, rat(-1), "weight moduli always have constant term -1");
    if lin.clone() * lin.clone() >= rat(4) {
        return Err(Error::NotUnimodularModulus(format!(
            "family {family} at {params}: x^2 = ({lin})x - 1 has real roots"
        )));
    }
    let modulus = QuadModulus::unit_norm(lin);

    let weights: Vec<QuadExt<Rational>> = symbolic
        .weights
        .iter()
        .map(|w| {
            Ok(QuadExt::new(
                w.a.eval(&assign_ref)?,
                w.b.eval(&assign_ref)?,
                modulus.clone(),
            ))
        })
        .collect::<Result<_>>()?;
    let a: Vec<Rational> = symbolic
        .a
        .iter()
        .map(|v| v.eval(&assign_ref))
        .collect::<Result<_>>()?;

    debug_assert!(
        weights.iter().all(|w| w.norm() == rat(1)),
        "family weights are unit-norm by construction"
    );

    Ok(ExactWeights {
        family,
        params: *params,
        modulus,
        weights,
        a,
    })
}

/// Evaluates a weight vector in complex floating point with `precision`
/// mantissa bits.
///
/// * Families I and II work at every admissible `(q, m)`; the branch picks
///   which root of the quadratic modulus is embedded ([`Branch::Top`] takes
///   the root with nonnegative imaginary part, [`Branch::Bottom`] its
///   conjugate), producing two conjugate — and equally valid — realizations.
/// * Family VI requires `(q, m) = (4, 2)`; the branch picks the sign of the
///   inner radical coupling the pair sums.
pub fn numeric_weights(
    family: Family,
    params: &SchemeParams,
    branch: Branch,
    precision: u32,
) -> Result<NumericWeights> {
    let prec = check_precision(precision)?;
    let weights = match family {
        Family::I | Family::II => {
            let exact = exact_weights(family, params)?;
            let root = embed_unit_root(&exact.modulus.lin, prec)?;
            let root = match branch {
                Branch::Top => root,
                Branch::Bottom => root.conj(),
            };
            exact
                .weights
                .iter()
                .map(|w| {
                    BigComplex::from_rational(&w.a, prec)
                        .add(&BigComplex::from_rational(&w.b, prec).mul(&root))
                })
                .collect()
        }
        Family::VI => family_six_weights(params, branch, prec)?,
    };
    Ok(NumericWeights {
        family,
        params: *params,
        branch,
        precision: prec,
        weights,
    })
}

/// The scalar data behind the family VI construction at `(q, m) = (4, 2)`:
/// two nested radicals and the three nontrivial pair sums they determine.
///
/// `s = sqrt(104899)` and `t = sqrt((8s - 2591)/3)` (with `t` negated on the
/// bottom branch) solve the closure conditions of the five-weight system;
/// every pair sum is then linear in `s` and `t`.
#[derive(Clone, Debug)]
pub struct SixParameters {
    /// Outer radical, `s^2 = 104899`.
    pub s: BigFloat,
    /// Inner radical with the branch sign applied, `3 t^2 = 8s - 2591`.
    pub t: BigFloat,
    /// Pair sum `a(0, 1) = -c` where `w1` is a root of `x^2 + c x + 1`.
    pub c: BigFloat,
    /// Pair sum `a(0, 2)`.
    pub a02: BigFloat,
    /// Pair sum `a(1, 3)`.
    pub a13: BigFloat,
}

/// Computes the family VI scalar parameters for one branch.
pub fn six_parameters(branch: Branch, precision: u32) -> Result<SixParameters> {
    let prec = check_precision(precision)?;
    let int = |n: i64| BigFloat::from_int(n, prec);
    let s = int(104899).sqrt();
    let t = s.scale_int(8).sub(&int(2591)).div(&int(3)).sqrt();
    let t = match branch {
        Branch::Top => t,
        Branch::Bottom => t.neg(),
    };
    let c = s
        .scale_int(21)
        .sub(&int(7140))
        .add(&t.scale_int(85))
        .div(&int(176));
    let a02 = s
        .scale_int(43)
        .sub(&int(14620))
        .add(&t.scale_int(85))
        .div(&int(352));
    let a13 = s
        .scale_int(21)
        .sub(&int(1848))
        .sub(&s.scale_int(4).add(&int(1253)).mul(&t))
        .div(&int(2640));
    Ok(SixParameters { s, t, c, a02, a13 })
}

fn family_six_weights(
    params: &SchemeParams,
    branch: Branch,
    prec: u32,
) -> Result<Vec<BigComplex>> {
    if (params.q(), params.m()) != (4, 2) {
        return Err(Error::UnsupportedFamily {
            family: "VI".into(),
            reason: format!("only constructed at (q, m) = (4, 2), got {params}"),
        });
    }
    let p = six_parameters(branch, prec)?;
    let int = |n: i64| BigFloat::from_int(n, prec);
    let one = BigComplex::one(prec);

    // w1 is the root of x^2 + c x + 1 with nonnegative imaginary part.
    let w1 = unit_root(&p.c.neg(), prec)?;
    let w1_sq_m1 = w1.mul(&w1).sub(&one);

    // w2 = -64 (w1^2 - 1) / (127 w1 + 64 a02)
    let den2 = w1
        .scale_int(127)
        .add(&BigComplex::from_real(p.a02.scale_int(64)));
    if den2.abs2().is_zero() {
        return Err(Error::RecoveryDenominatorZero(2));
    }
    let w2 = w1_sq_m1.scale_int(-64).div(&den2);

    // w3 = 90 (w1^2 - 1) / (90 a13 w1 - 4s + 1117)
    let den3 = BigComplex::from_real(p.a13.clone())
        .mul(&w1)
        .scale_int(90)
        .add(&BigComplex::from_real(int(1117).sub(&p.s.scale_int(4))));
    if den3.abs2().is_zero() {
        return Err(Error::RecoveryDenominatorZero(3));
    }
    let w3 = w1_sq_m1.scale_int(90).div(&den3);

    Ok(vec![one.clone(), w1, w2, w3, one])
}

/// Unit-circle root `x = (a + i sqrt(4 - a^2)) / 2` of `x^2 - a x + 1`,
/// choosing the branch with nonnegative imaginary part.
fn unit_root(a: &BigFloat, prec: u32) -> Result<BigComplex> {
    let disc = BigFloat::from_int(4, prec).sub(&a.mul(a));
    if disc.is_negative() || disc.is_zero() {
        return Err(Error::NotUnimodularModulus(format!(
            "x^2 - ({})x + 1 has no strictly complex unit root",
            a.to_decimal(12)
        )));
    }
    let two = BigFloat::from_int(2, prec);
    Ok(BigComplex::new(a.div(&two), disc.sqrt().div(&two)))
}

/// Embeds the abstract unit-norm root of `x^2 = a x - 1` (rational `a` with
/// `|a| < 2`) into the upper half of the unit circle.
fn embed_unit_root(a: &Rational, prec: u32) -> Result<BigComplex> {
    unit_root(&BigFloat::from_rational(a, prec), prec)
}

/// The degree-9 rational polynomial that governs a further five-weight
/// candidate beyond family VI: each of its roots in the open interval
/// `(-2, 2)` is an admissible pair-sum value, i.e. the trace of a unimodular
/// weight.
///
/// It has three real roots but exactly one inside `(-2, 2)`
/// (approximately `1.98414`), which [`RealPoly::count_roots_in`] certifies
/// exactly.
pub fn degree_nine_reference_polynomial() -> RealPoly {
    let frac = |n: i64, d: i64| rat(n) / rat(d);
    RealPoly::new(vec![
        frac(30_888_835_313_436_500, 833),
        frac(-124_583_919_439_776_136, 2499),
        frac(851_886_544_261_448_041, 37_485),
        frac(-696_525_696_876_795_217, 187_425),
        frac(29_740_292_638_491_103, 312_375),
        frac(-12_554_318_926_285_933, 4_685_625),
        frac(33_219_815_829_811, 937_125),
        frac(-17_957_726_593, 62_475),
        frac(-235_721, 1785),
        rat(1),
    ])
}

/// Outcome of re-deriving a weight vector from a putative pair-sum vector.
///
/// Produced by [`recover_weights`]; an inconsistent input is reported through
/// [`RecoveredWeights::violations`] rather than an error, so callers can show
/// exactly which relations fail.
#[derive(Clone, Debug)]
pub struct RecoveredWeights {
    anchor: (usize, usize),
    modulus: QuadModulus<Rational>,
    weights: Vec<QuadExt<Rational>>,
    violations: Vec<RecoveryViolation>,
}

impl RecoveredWeights {
    /// The index pair `(i0, i1)` that generated the quadratic extension:
    /// `w_{i0}` was set to 1 and `w_{i1}` to the root of the modulus.
    pub fn anchor(&self) -> (usize, usize) {
        self.anchor
    }

    pub fn modulus(&self) -> &QuadModulus<Rational> {
        &self.modulus
    }

    pub fn weights(&self) -> &[QuadExt<Rational>] {
        &self.weights
    }

    /// All pair-sum and unit-norm relations violated by the recovered vector.
    /// Empty exactly when the input pair sums are realizable by unimodular
    /// weights in this quadratic extension.
    pub fn violations(&self) -> &[RecoveryViolation] {
        &self.violations
    }

    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A single relation violated by a recovered weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RecoveryViolation {
    /// `w_i conj(w_j) + w_j conj(w_i)` differs from the prescribed `a(i, j)`.
    Pair { i: usize, j: usize },
    /// `w_i` does not have norm 1 in the quadratic extension.
    Norm { i: usize },
}

impl fmt::Display for RecoveryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecoveryViolation::Pair { i, j } => {
                write!(f, "pair sum a({i}, {j}) not reproduced")
            }
            RecoveryViolation::Norm { i } => write!(f, "weight w{i} is not unit-norm"),
        }
    }
}

/// Picks the default anchor pair for [`recover_weights`]: `(0, p)` for the
/// first index `p` with `a(0, p) != ±2`.
///
/// # Errors
///
/// [`Error::DegenerateAnchor`] if every `a(0, p)` is `±2` (all candidate
/// generators collapse to `±1`).
pub fn default_anchor(a: &[Rational]) -> Result<(usize, usize)> {
    check_pair_vector(a)?;
    let two = rat(2);
    (1..=CLASSES)
        .find(|&p| a[pair_index(0, p)].abs() != two)
        .map(|p| (0, p))
        .ok_or_else(|| {
            Error::DegenerateAnchor(
                "every pair sum a(0, j) is ±2, so every candidate generator is ±1".into(),
            )
        })
}

/// Reconstructs a weight vector from its ten pair sums, anchored at the
/// index pair `(i0, i1)`.
///
/// `w_{i0}` is set to 1, `w_{i1}` to the root of `x^2 - a(i0, i1) x + 1`,
/// and every other weight is recovered linearly via
///
/// ```text
/// w_j = (w_{i1}^2 - w_{i0}^2) / (a(i1, j) w_{i1} - a(i0, j) w_{i0}).
/// ```
///
/// Pair sums of unimodular vectors are invariant under a global unimodular
/// scaling, so normalizing `w_{i0}` to 1 loses nothing. After recovery all
/// ten pair sums and the five unit-norm conditions are re-checked; failures
/// are reported as [`RecoveryViolation`]s. [`default_anchor`] picks a valid
/// anchor automatically.
///
/// # Errors
///
/// * [`Error::BadParameters`] if `a` does not have exactly ten entries.
/// * [`Error::ClassOutOfRange`] / [`Error::RepeatedIndex`] for an invalid
///   anchor pair.
/// * [`Error::DegenerateAnchor`] if `a(i0, i1) = ±2` (the anchor generates
///   no quadratic extension).
/// * [`Error::RecoveryDenominatorZero`] if a recovery denominator vanishes
///   or is a zero divisor.
pub fn recover_weights(a: &[Rational], i0: usize, i1: usize) -> Result<RecoveredWeights> {
    check_pair_vector(a)?;
    for idx in [i0, i1] {
        if idx >= WEIGHTS {
            return Err(Error::ClassOutOfRange(idx));
        }
    }
    if i0 == i1 {
        return Err(Error::RepeatedIndex(vec![i0, i1]));
    }
    let anchor_sum = &a[pair_index(i0.min(i1), i0.max(i1))];
    if anchor_sum.abs() == rat(2) {
        return Err(Error::DegenerateAnchor(format!(
            "a({i0}, {i1}) = {anchor_sum} generates no quadratic extension"
        )));
    }

    let modulus = QuadModulus::unit_norm(anchor_sum.clone());
    let one = QuadExt::one(modulus.clone());
    let wp = QuadExt::root(modulus.clone());
    let wp_sq_m1 = wp.mul(&wp).sub(&one);

    let mut weights = vec![one.clone(); WEIGHTS];
    weights[i1] = wp.clone();
    for j in 0..WEIGHTS {
        if j == i0 || j == i1 {
            continue;
        }
        let a1j = &a[pair_index(i1.min(j), i1.max(j))];
        let a0j = &a[pair_index(i0.min(j), i0.max(j))];
        let den = wp
            .scale(a1j)
            .sub(&QuadExt::from_base(a0j.clone(), modulus.clone()));
        if den.is_zero() {
            return Err(Error::RecoveryDenominatorZero(j));
        }
        let inv = den.inv().map_err(|_| Error::RecoveryDenominatorZero(j))?;
        weights[j] = wp_sq_m1.mul(&inv);
    }

    let mut violations = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        if w.norm() != rat(1) {
            violations.push(RecoveryViolation::Norm { i });
        }
    }
    for &(i, j) in PAIRS.iter() {
        let sum = weights[i].mul(&weights[j].conj()).trace();
        if sum != a[pair_index(i, j)] {
            violations.push(RecoveryViolation::Pair { i, j });
        }
    }

    Ok(RecoveredWeights {
        anchor: (i0, i1),
        modulus,
        weights,
        violations,
    })
}

fn check_pair_vector(a: &[Rational]) -> Result<()> {
    if a.len() != PAIRS.len() {
        return Err(Error::BadParameters(format!(
            "pair-sum vector must have {} entries, got {}",
            PAIRS.len(),
            a.len()
        )));
    }
    Ok(())
}

fn q() -> MultiPoly {
    MultiPoly::var("q")
}

fn r() -> MultiPoly {
    MultiPoly::var("r")
}

fn c(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

/// `q^2 r^2`, the square of the matrix order plus one.
fn q2r2() -> MultiPoly {
    let qr = &q() * &r();
    &qr * &qr
}

/// `q r^2`: with `r` standing for `q^(m-1)` this is `q^(2m-1)`.
fn u() -> MultiPoly {
    &q() * &(&r() * &r())
}

fn family_one() -> SymbolicWeights {
    // The only nontrivial pair sum: a(0, 2) = -2 + 4/(qr)^2.
    let x02 = RatFunc::new(&c(4) - &q2r2().scale(&rat(2)), q2r2())
        .expect("q^2 r^2 is not the zero polynomial");
    let modulus = QuadModulus::unit_norm(x02);
    let one = QuadExt::one(modulus.clone());
    let w2 = QuadExt::root(modulus.clone());
    let weights = vec![one.clone(), one.clone(), w2, one.clone(), one];
    finish(Family::I, modulus, weights)
}

fn family_two() -> SymbolicWeights {
    // a(0, 1) = 2 (u^2 - (q + 2) u + 2) / (u (u + q - 2)) with u = q r^2.
    let num01 = (&(&(&u() * &u()) - &(&u() * &(&q() + &c(2)))) + &c(2)).scale(&rat(2));
    let den01 = &u() * &(&(&u() + &q()) - &c(2));
    let a01 = RatFunc::new(num01, den01).expect("denominator of a(0, 1) is nonzero");
    let modulus = QuadModulus::unit_norm(a01);
    let w1 = QuadExt::root(modulus.clone());

    // w2 = -((q - 1) u w1 + u + q - 2) / (q (u - 1)), linear in w1.
    let den = &q() * &(&u() - &c(1));
    let base_part = RatFunc::new((&(&u() + &q()) - &c(2)).scale(&rat(-1)), den.clone())
        .expect("q (u - 1) is not the zero polynomial");
    let root_part = RatFunc::new((&(&q() - &c(1)) * &u()).scale(&rat(-1)), den)
        .expect("q (u - 1) is not the zero polynomial");
    let w2 = QuadExt::new(base_part, root_part, modulus.clone());

    let one = QuadExt::one(modulus.clone());
    let weights = vec![one.clone(), w1, w2, one.clone(), one];
    finish(Family::II, modulus, weights)
}

fn finish(
    family: Family,
    modulus: QuadModulus<RatFunc>,
    weights: Vec<QuadExt<RatFunc>>,
) -> SymbolicWeights {
    debug_assert!(
        weights.iter().all(|w| w.norm() == RatFunc::one()),
        "family weights are unit-norm by construction"
    );
    let a = PAIRS
        .iter()
        .map(|&(i, j)| weights[i].mul(&weights[j].conj()).trace())
        .collect();
    SymbolicWeights {
        family,
        modulus,
        weights,
        a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::prelude::*;

    fn params(q: u64, m: u32) -> SchemeParams {
        SchemeParams::new(q, m).unwrap()
    }

    /// `lo < x < hi` for a high-precision float, with rational endpoints.
    fn between(x: &BigFloat, lo: Rational, hi: Rational) -> bool {
        let v = x.to_rational();
        lo < v && v < hi
    }

    #[test]
    fn pair_index_matches_table() {
        for (idx, &(i, j)) in PAIRS.iter().enumerate() {
            assert_eq!(pair_index(i, j), idx);
            assert_eq!(pair_variable(i, j), PAIR_VARS[idx]);
        }
    }

    #[test]
    fn family_parsing_round_trips() {
        for f in Family::all() {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert_eq!("ii".parse::<Family>().unwrap(), Family::II);
        assert_eq!("6".parse::<Family>().unwrap(), Family::VI);
        assert!("IV".parse::<Family>().is_err());
        assert_eq!("bottom".parse::<Branch>().unwrap(), Branch::Bottom);
        assert_eq!("0".parse::<Branch>().unwrap(), Branch::Top);
        assert!("middle".parse::<Branch>().is_err());
    }

    #[test]
    fn family_one_pair_sums_have_two_values() {
        let fam = symbolic_weights(Family::I).unwrap();
        let x02 = RatFunc::new(&c(4) - &q2r2().scale(&rat(2)), q2r2()).unwrap();
        let two = RatFunc::constant(rat(2));
        // Pairs {0,2}, {1,2}, {2,3}, {2,4} see the nontrivial weight w2.
        for (idx, &(i, j)) in PAIRS.iter().enumerate() {
            let expect = if i == 2 || j == 2 { &x02 } else { &two };
            assert_eq!(&fam.pair_sums()[idx], expect, "pair ({i}, {j})");
        }
        assert_eq!(fam.modulus().lin, x02);
    }

    #[test]
    fn family_two_pair_sums_match_closed_forms() {
        let fam = symbolic_weights(Family::II).unwrap();
        let a01 = fam.modulus().lin.clone();
        // a(0, 2) = -2 (q^2 r^2 - q^2 + 2q - 2) / (q (u + q - 2))
        let a02 = RatFunc::new(
            (&(&q2r2() - &(&q() * &q())) + &(&q().scale(&rat(2)) - &c(2))).scale(&rat(-2)),
            &q() * &(&(&u() + &q()) - &c(2)),
        )
        .unwrap();
        // a(1, 2) = -2 (q^2 r^2 - 2) / (q^2 r^2)
        let a12 = RatFunc::new((&q2r2() - &c(2)).scale(&rat(-2)), q2r2()).unwrap();
        let two = RatFunc::constant(rat(2));

        assert_eq!(fam.pair_sum(0, 1), &a01);
        assert_eq!(fam.pair_sum(0, 2), &a02);
        assert_eq!(fam.pair_sum(1, 2), &a12);
        // w3 = w4 = w0 = 1 collapses the remaining pairs.
        assert_eq!(fam.pair_sum(0, 3), &two);
        assert_eq!(fam.pair_sum(0, 4), &two);
        assert_eq!(fam.pair_sum(3, 4), &two);
        assert_eq!(fam.pair_sum(1, 3), &a01);
        assert_eq!(fam.pair_sum(1, 4), &a01);
        assert_eq!(fam.pair_sum(2, 3), &a02);
        assert_eq!(fam.pair_sum(2, 4), &a02);
    }

    #[test]
    fn family_two_weights_are_unit_norm_symbolically() {
        let fam = symbolic_weights(Family::II).unwrap();
        for (i, w) in fam.weights().iter().enumerate() {
            assert_eq!(w.norm(), RatFunc::one(), "norm of w{i}");
        }
    }

    #[test]
    fn family_two_second_weight_solves_pair_relations() {
        // The linear expression for w2 agrees with the generic recovery
        // formula w2 = (w1^2 - 1) / (a(1,2) w1 - a(0,2)).
        let fam = symbolic_weights(Family::II).unwrap();
        let w1 = &fam.weights()[1];
        let w2 = &fam.weights()[2];
        let one = QuadExt::one(fam.modulus().clone());
        let den = w1
            .scale(fam.pair_sum(1, 2))
            .sub(&QuadExt::from_base(fam.pair_sum(0, 2).clone(), fam.modulus().clone()));
        let recovered = w1.mul(w1).sub(&one).mul(&den.inv().unwrap());
        assert_eq!(&recovered, w2);
    }

    #[test]
    fn exact_weights_at_base_point_match_known_values() {
        let p = params(4, 2);

        let one = exact_weights(Family::I, &p).unwrap();
        assert_eq!(one.pair_sum(0, 2), &ratio(-127, 64));
        assert_eq!(one.pair_sum(0, 1), &rat(2));

        let two = exact_weights(Family::II, &p).unwrap();
        assert_eq!(two.pair_sum(0, 1), &ratio(619, 352));
        assert_eq!(two.pair_sum(0, 2), &ratio(-41, 22));
        assert_eq!(two.pair_sum(1, 2), &ratio(-127, 64));
        assert_eq!(two.modulus().lin, ratio(619, 352));

        // w2 = -(32 w1 + 11)/42 at this parameter point.
        let w2 = &two.weights()[2];
        assert_eq!(w2.a, ratio(-11, 42));
        assert_eq!(w2.b, ratio(-16, 21));

        for w in two.weights() {
            assert_eq!(w.norm(), rat(1));
        }
    }

    #[test]
    fn exact_weights_reject_family_six() {
        let p = params(4, 2);
        assert!(matches!(
            exact_weights(Family::VI, &p),
            Err(Error::UnsupportedFamily { .. })
        ));
        assert!(matches!(
            symbolic_weights(Family::VI),
            Err(Error::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn recovery_reproduces_family_two() {
        let p = params(4, 2);
        let exact = exact_weights(Family::II, &p).unwrap();
        let (i0, i1) = default_anchor(exact.pair_sums()).unwrap();
        assert_eq!((i0, i1), (0, 1));
        let rec = recover_weights(exact.pair_sums(), i0, i1).unwrap();
        assert!(rec.is_consistent(), "violations: {:?}", rec.violations());
        assert_eq!(rec.weights(), exact.weights());
    }

    #[test]
    fn recovery_skips_trivial_anchor_for_family_one() {
        // a(0, 1) = 2 forces the default anchor past index 1.
        let p = params(8, 2);
        let exact = exact_weights(Family::I, &p).unwrap();
        let (i0, i1) = default_anchor(exact.pair_sums()).unwrap();
        assert_eq!((i0, i1), (0, 2));
        let rec = recover_weights(exact.pair_sums(), i0, i1).unwrap();
        assert!(rec.is_consistent(), "violations: {:?}", rec.violations());
        assert_eq!(rec.weights(), exact.weights());
    }

    #[test]
    fn recovery_from_a_nonzero_base_anchor_is_consistent() {
        // Anchoring at (2, 1) instead of (0, 1) recovers a globally rescaled
        // vector with the same pair sums.
        let p = params(4, 2);
        let exact = exact_weights(Family::II, &p).unwrap();
        let rec = recover_weights(exact.pair_sums(), 2, 1).unwrap();
        assert!(rec.is_consistent(), "violations: {:?}", rec.violations());
        assert_eq!(rec.anchor(), (2, 1));
        assert_eq!(rec.weights()[2], QuadExt::one(rec.modulus().clone()));
        assert_ne!(rec.weights(), exact.weights());
    }

    #[test]
    fn recovery_flags_corrupted_pair_sum() {
        let p = params(4, 2);
        let mut a = exact_weights(Family::II, &p).unwrap().pair_sums().to_vec();
        a[pair_index(0, 1)] = rat(2); // corrupt a(0, 1)
        let (i0, i1) = default_anchor(&a).unwrap();
        assert_eq!((i0, i1), (0, 2));
        let rec = recover_weights(&a, i0, i1).unwrap();
        assert!(!rec.is_consistent());
        assert!(rec
            .violations()
            .iter()
            .any(|v| matches!(v, RecoveryViolation::Pair { i: 0, j: 1 })));
        assert!(rec
            .violations()
            .iter()
            .any(|v| matches!(v, RecoveryViolation::Norm { i: 1 })));
    }

    #[test]
    fn recovery_rejects_all_trivial_pair_sums() {
        let a = vec![rat(2); 10];
        assert!(matches!(default_anchor(&a), Err(Error::DegenerateAnchor(_))));
        assert!(matches!(
            recover_weights(&a, 0, 1),
            Err(Error::DegenerateAnchor(_))
        ));
        let a: Vec<Rational> = (0..10)
            .map(|i| if i % 2 == 0 { rat(2) } else { rat(-2) })
            .collect();
        assert!(matches!(default_anchor(&a), Err(Error::DegenerateAnchor(_))));
    }

    #[test]
    fn recovery_rejects_bad_arguments() {
        assert!(matches!(
            recover_weights(&vec![rat(2); 3], 0, 1),
            Err(Error::BadParameters(_))
        ));
        let a = vec![rat(0); 10];
        assert!(matches!(
            recover_weights(&a, 1, 1),
            Err(Error::RepeatedIndex(_))
        ));
        assert!(matches!(
            recover_weights(&a, 0, 5),
            Err(Error::ClassOutOfRange(5))
        ));
    }

    #[test]
    fn numeric_weights_are_unimodular_for_exact_families() {
        let p = params(4, 2);
        let tol = BigFloat::two_pow(-200, 256);
        for family in [Family::I, Family::II] {
            let w = numeric_weights(family, &p, Branch::Top, 256).unwrap();
            assert!(w.unimodularity_defect() < tol, "family {family}");
        }
        let w = numeric_weights(Family::II, &p, Branch::Top, 256).unwrap();
        let sums = w.pair_sums();
        let re01 = sums[pair_index(0, 1)].re.to_rational();
        assert!((re01 - ratio(619, 352)).abs() < BigFloat::two_pow(-200, 256).to_rational());
    }

    #[test]
    fn numeric_branches_are_conjugate_for_exact_families() {
        let p = params(4, 2);
        let tol = BigFloat::two_pow(-200, 256);
        for family in [Family::I, Family::II] {
            let top = numeric_weights(family, &p, Branch::Top, 256).unwrap();
            let bot = numeric_weights(family, &p, Branch::Bottom, 256).unwrap();
            assert!(bot.unimodularity_defect() < tol, "family {family}");
            for (wt, wb) in top.weights().iter().zip(bot.weights()) {
                assert!(wt.conj().sub(wb).abs() < tol, "family {family}");
            }
        }
    }

    #[test]
    fn degree_nine_reference_polynomial_has_one_admissible_root() {
        let poly = degree_nine_reference_polynomial();
        assert_eq!(poly.degree(), 9);
        let bound = poly.root_bound();
        let total = poly.count_roots_in(&-bound.clone(), &bound).unwrap();
        assert_eq!(total, 3);
        assert_eq!(poly.count_roots_in(&rat(-2), &rat(2)).unwrap(), 1);
        // The admissible root sits just below 2.
        assert_eq!(
            poly.count_roots_in(&ratio(198, 100), &ratio(199, 100))
                .unwrap(),
            1
        );
    }

    #[test]
    fn family_six_requires_base_parameters() {
        let p = params(8, 2);
        assert!(matches!(
            numeric_weights(Family::VI, &p, Branch::Top, 256),
            Err(Error::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn family_six_both_branches_are_unimodular() {
        let p = params(4, 2);
        let tol = BigFloat::two_pow(-200, 256);
        for branch in [Branch::Top, Branch::Bottom] {
            let w = numeric_weights(Family::VI, &p, branch, 256).unwrap();
            assert!(w.unimodularity_defect() < tol, "branch {branch}");
        }
    }

    #[test]
    fn family_six_parameters_match_reference_window() {
        let top = six_parameters(Branch::Top, 256).unwrap();
        assert!(between(&top.s, ratio(3238811, 10000), ratio(3238812, 10000)));
        assert!(between(&top.t, ratio(128072, 1000000), ratio(128074, 1000000)));
        assert!(between(&top.c, ratio(-18615, 10000), ratio(-18613, 10000)));
        assert!(between(&top.a02, ratio(-19382, 10000), ratio(-19380, 10000)));
        assert!(between(&top.a13, ratio(17526, 10000), ratio(17528, 10000)));

        // The bottom branch hugs the unimodularity boundary but stays inside.
        let bot = six_parameters(Branch::Bottom, 256).unwrap();
        assert!(between(&bot.a02, rat(-2), ratio(-199998, 100000)));
        assert!(between(&bot.a13, ratio(199995, 100000), rat(2)));
        assert!(between(&bot.c, ratio(-19852, 10000), ratio(-19850, 10000)));
    }

    #[test]
    fn family_six_pair_sums_match_parameters() {
        let p = params(4, 2);
        let tol = BigFloat::two_pow(-200, 256).to_rational();
        for branch in [Branch::Top, Branch::Bottom] {
            let six = six_parameters(branch, 256).unwrap();
            let w = numeric_weights(Family::VI, &p, branch, 256).unwrap();
            let sums = w.pair_sums();
            let checks = [
                (pair_index(0, 1), six.c.neg()),
                (pair_index(0, 2), six.a02.clone()),
                (pair_index(1, 3), six.a13.clone()),
                (pair_index(0, 4), BigFloat::from_int(2, 256)),
                (pair_index(3, 4), sums[pair_index(0, 3)].re.clone()),
            ];
            for (idx, expect) in checks {
                let got = &sums[idx];
                assert!(
                    (got.re.to_rational() - expect.to_rational()).abs() < tol,
                    "branch {branch}, pair {:?}: re {} vs {}",
                    PAIRS[idx],
                    got.re,
                    expect
                );
                assert!(got.im.to_rational().abs() < tol);
            }
        }
    }

    #[test]
    fn numeric_weights_enforce_minimum_precision() {
        let p = params(4, 2);
        assert!(matches!(
            numeric_weights(Family::II, &p, Branch::Top, 64),
            Err(Error::PrecisionTooLow(64))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        /// Specialising either exact family at any admissible grid point
        /// yields unit-norm weights whose pair sums match the symbolic ones,
        /// with a strictly unimodular modulus.
        #[test]
        fn exact_specialisations_are_unimodular(qe in 2u32..7, m in 2u32..5, fam_ii in any::<bool>()) {
            let family = if fam_ii { Family::II } else { Family::I };
            let p = params(1u64 << qe, m);
            let exact = exact_weights(family, &p).unwrap();
            let lin = &exact.modulus().lin;
            prop_assert!(lin.clone() * lin.clone() < rat(4));
            for w in exact.weights() {
                prop_assert_eq!(w.norm(), rat(1));
            }
            let symbolic = symbolic_weights(family).unwrap();
            let assign = p.assignment();
            let assign_ref: Vec<(&str, Rational)> =
                assign.iter().map(|(v, x)| (*v, x.clone())).collect();
            for (idx, sym) in symbolic.pair_sums().iter().enumerate() {
                prop_assert_eq!(&sym.eval(&assign_ref).unwrap(), &exact.pair_sums()[idx]);
            }
        }

        /// Recovery from genuine pair sums is always consistent and
        /// reproduces the weights exactly.
        #[test]
        fn recovery_round_trips_on_grid(qe in 2u32..7, m in 2u32..5, fam_ii in any::<bool>()) {
            let family = if fam_ii { Family::II } else { Family::I };
            let p = params(1u64 << qe, m);
            let exact = exact_weights(family, &p).unwrap();
            let (i0, i1) = default_anchor(exact.pair_sums()).unwrap();
            let rec = recover_weights(exact.pair_sums(), i0, i1).unwrap();
            prop_assert!(rec.is_consistent());
            prop_assert_eq!(rec.weights(), exact.weights());
        }
    }
}
