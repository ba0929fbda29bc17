//! Gram verification for weighted adjacency sums.
//!
//! For a weight vector `(w0, ..., w4)` the matrix `W = sum_i w_i A_i` lies in
//! the Bose-Mesner algebra, and so does `W W*`: whenever the pair `(x, y)` is
//! in relation `k`,
//!
//! ```text
//! (W W*)_{xy} = sum_{i,j} w_i conj(w_j) p(i, j, k) =: S_k .
//! ```
//!
//! `W` is a complex Hadamard matrix of order `n` exactly when the *Gram sums*
//! satisfy `S = (n, 0, 0, 0, 0)`.  For unit-norm weights the sums collapse to
//! an expression in the pair sums `a(i, j) = w_i conj(w_j) + w_j conj(w_i)`:
//!
//! ```text
//! S_k = sum_i p(i, i, k) + sum_{i<j} a(i, j) p(i, j, k),
//! ```
//!
//! which this module evaluates at three levels of rigour:
//!
//! * [`symbolic_gram`] — over the rational function field in `(q, r)`,
//!   proving the identity for every admissible parameter pair at once;
//! * [`exact_gram`] — over the rationals at one specialisation, using the
//!   integer intersection numbers;
//! * [`numeric_gram`] — in high-precision complex floating point, the only
//!   option for weight vectors with irrational pair sums;
//! * [`dense_verify`] — against a concrete realization of the scheme,
//!   recomputing every entry of `W W*` from raw adjacency data.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{BigComplex, BigFloat, RatFunc, Rational};
use crate::families::{
    exact_weights, numeric_weights, symbolic_weights, Branch, Family, NumericWeights, PAIRS,
    WEIGHTS,
};
use crate::scheme::{order_poly, IntersectionTensor, SchemeInstance, SchemeParams};

/// Outcome of the symbolic Gram identity over the function field.
#[derive(Clone, Debug)]
pub struct SymbolicGram {
    /// The five Gram sums `S_0, ..., S_4` as rational functions.
    pub sums: Vec<RatFunc>,
    /// `S - (n, 0, 0, 0, 0)`; all zero exactly when the identity holds.
    pub defects: Vec<RatFunc>,
}

impl SymbolicGram {
    pub fn passed(&self) -> bool {
        self.defects.iter().all(RatFunc::is_zero)
    }

    /// Index of the first nonzero defect, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.defects.iter().position(|d| !d.is_zero())
    }
}

/// Outcome of the exact Gram check at one parameter specialisation.
#[derive(Clone, Debug)]
pub struct ExactGram {
    /// The five Gram sums as exact rationals.
    pub sums: Vec<Rational>,
    /// The matrix order `n`.
    pub order: BigInt,
    /// `S - (n, 0, 0, 0, 0)` as exact rationals.
    pub defects: Vec<Rational>,
}

impl ExactGram {
    pub fn passed(&self) -> bool {
        self.defects.iter().all(Zero::is_zero)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.defects.iter().position(|d| !d.is_zero())
    }
}

/// Outcome of the floating-point Gram check.
#[derive(Clone, Debug)]
pub struct NumericGram {
    /// The five Gram sums.
    pub sums: Vec<BigComplex>,
    /// The matrix order `n`.
    pub order: BigInt,
    /// Moduli `|S_k - n delta_{k0}|`.
    pub defects: Vec<BigFloat>,
}

impl NumericGram {
    /// Largest deviation from `(n, 0, 0, 0, 0)`.
    pub fn max_defect(&self) -> BigFloat {
        self.defects
            .iter()
            .cloned()
            .max()
            .expect("five Gram sums are always present")
    }

    /// Whether every defect is within `tol` (compared exactly, as rationals).
    pub fn passed(&self, tol: &Rational) -> bool {
        self.max_defect().to_rational() <= *tol
    }
}

/// Evaluates the Gram sums over the function field from symbolic pair sums.
///
/// The ten entries of `a` follow [`PAIRS`] order and are assumed to come from
/// unit-norm weights.
pub fn symbolic_gram(a: &[RatFunc], tensor: &IntersectionTensor) -> Result<SymbolicGram> {
    check_pair_count(a.len())?;
    let mut sums = Vec::with_capacity(WEIGHTS);
    for k in 0..WEIGHTS {
        let mut s = RatFunc::zero();
        for i in 0..WEIGHTS {
            s = s.add(&RatFunc::from_poly(tensor.entry(i, i, k).clone()));
        }
        for (idx, &(i, j)) in PAIRS.iter().enumerate() {
            s = s.add(&a[idx].mul(&RatFunc::from_poly(tensor.entry(i, j, k).clone())));
        }
        sums.push(s);
    }
    let order = RatFunc::from_poly(order_poly());
    let defects = sums
        .iter()
        .enumerate()
        .map(|(k, s)| if k == 0 { s.sub(&order) } else { s.clone() })
        .collect();
    Ok(SymbolicGram { sums, defects })
}

/// Evaluates the Gram sums exactly from rational pair sums and specialised
/// integer intersection numbers (`nums[i][j][k] = p(i, j, k)`).
pub fn exact_gram(
    a: &[Rational],
    nums: &[Vec<Vec<BigInt>>],
    order: &BigInt,
) -> Result<ExactGram> {
    check_pair_count(a.len())?;
    check_tensor_shape(nums)?;
    let mut sums = Vec::with_capacity(WEIGHTS);
    for k in 0..WEIGHTS {
        let mut s = Rational::zero();
        for i in 0..WEIGHTS {
            s += Rational::from_integer(nums[i][i][k].clone());
        }
        for (idx, &(i, j)) in PAIRS.iter().enumerate() {
            s += a[idx].clone() * Rational::from_integer(nums[i][j][k].clone());
        }
        sums.push(s);
    }
    let n = Rational::from_integer(order.clone());
    let defects = sums
        .iter()
        .enumerate()
        .map(|(k, s)| if k == 0 { s - &n } else { s.clone() })
        .collect();
    Ok(ExactGram {
        sums,
        order: order.clone(),
        defects,
    })
}

/// Evaluates the Gram sums in complex floating point from explicit weights,
/// without assuming unimodularity.
pub fn numeric_gram(
    weights: &[BigComplex],
    nums: &[Vec<Vec<BigInt>>],
    order: &BigInt,
) -> Result<NumericGram> {
    check_weight_count(weights.len())?;
    check_tensor_shape(nums)?;
    let prec = weights[0].precision();
    let mut sums = Vec::with_capacity(WEIGHTS);
    for k in 0..WEIGHTS {
        let mut s = BigComplex::zero(prec);
        for i in 0..WEIGHTS {
            for j in 0..WEIGHTS {
                let p = BigFloat::from_rational(
                    &Rational::from_integer(nums[i][j][k].clone()),
                    prec,
                );
                let term = weights[i].mul(&weights[j].conj()).mul(&BigComplex::from_real(p));
                s = s.add(&term);
            }
        }
        sums.push(s);
    }
    let n_float = BigFloat::from_rational(&Rational::from_integer(order.clone()), prec);
    let defects = sums
        .iter()
        .enumerate()
        .map(|(k, s)| {
            if k == 0 {
                s.sub(&BigComplex::from_real(n_float.clone())).abs()
            } else {
                s.abs()
            }
        })
        .collect();
    Ok(NumericGram {
        sums,
        order: order.clone(),
        defects,
    })
}

/// Proves `W W* = n I` over the function field for one family.
pub fn verify_family_symbolic(
    family: Family,
    tensor: &IntersectionTensor,
) -> Result<SymbolicGram> {
    let weights = symbolic_weights(family)?;
    symbolic_gram(weights.pair_sums(), tensor)
}

/// Checks `W W* = n I` exactly at one parameter specialisation.
pub fn verify_family_exact(
    family: Family,
    params: &SchemeParams,
    tensor: &IntersectionTensor,
) -> Result<ExactGram> {
    let weights = exact_weights(family, params)?;
    let nums = tensor.specialize(params)?;
    exact_gram(weights.pair_sums(), &nums, &params.n())
}

/// Checks `W W* = n I` in floating point at one parameter specialisation.
pub fn verify_family_numeric(
    family: Family,
    params: &SchemeParams,
    branch: Branch,
    precision: u32,
    tensor: &IntersectionTensor,
) -> Result<(NumericWeights, NumericGram)> {
    let weights = numeric_weights(family, params, branch, precision)?;
    let nums = tensor.specialize(params)?;
    let gram = numeric_gram(weights.weights(), &nums, &params.n())?;
    Ok((weights, gram))
}

/// Outcome of the dense, realization-level verification.
#[derive(Clone, Debug)]
pub struct DenseGram {
    /// Number of points of the realization.
    pub order: usize,
    /// Number of unordered point pairs checked (including diagonal pairs).
    pub pairs_checked: u64,
    /// Largest `| (W W*)_{xx} - n |` over the diagonal.
    pub max_diagonal_defect: BigFloat,
    /// Largest `| (W W*)_{xy} |` off the diagonal.
    pub max_offdiagonal_defect: BigFloat,
    /// A pair attaining the off-diagonal maximum.
    pub worst_pair: Option<(usize, usize)>,
}

impl DenseGram {
    /// Largest deviation from `n I` anywhere in `W W*`.
    pub fn max_defect(&self) -> BigFloat {
        self.max_diagonal_defect
            .clone()
            .max(self.max_offdiagonal_defect.clone())
    }

    /// Whether every entry of `W W*` is within `tol` of `n I` (compared
    /// exactly, as rationals).
    pub fn passed(&self, tol: &Rational) -> bool {
        self.max_defect().to_rational() <= *tol
    }
}

/// Recomputes every entry of `W W*` from a concrete realization of the
/// scheme and measures the worst deviation from `n I`.
///
/// For each point pair `(x, y)` the profile `c_{ij} = #{z : (x,z) in R_i,
/// (y,z) in R_j}` is counted directly from the relation table, and the entry
/// `(W W*)_{xy} = sum c_{ij} w_i conj(w_j)` is accumulated from it.  No
/// intersection numbers are assumed: a realization that fails to be an
/// association scheme shows up as a defect here.
pub fn dense_verify(instance: &SchemeInstance, weights: &[BigComplex]) -> Result<DenseGram> {
    check_weight_count(weights.len())?;
    if instance.classes() + 1 != WEIGHTS {
        return Err(Error::BadParameters(format!(
            "realization has {} relation classes, weight vector expects {}",
            instance.classes(),
            WEIGHTS - 1
        )));
    }
    let n = instance.order();
    let prec = weights[0].precision();

    // w_i conj(w_j) for all 25 ordered pairs.
    let mut gram_terms = Vec::with_capacity(WEIGHTS * WEIGHTS);
    for wi in weights.iter() {
        for wj in weights.iter() {
            gram_terms.push(wi.mul(&wj.conj()));
        }
    }

    // Distinct profiles are rare (five for a genuine scheme), so cache the
    // complex combination per profile and pay only for the raw counting.
    let mut by_profile: HashMap<Vec<u64>, BigComplex> = HashMap::new();
    let n_float = BigFloat::from_rational(&Rational::from_integer(BigInt::from(n)), prec);

    let mut max_diag = BigFloat::zero(prec);
    let mut max_off = BigFloat::zero(prec);
    let mut worst_pair = None;
    let mut pairs_checked = 0u64;

    for x in 0..n {
        for y in x..n {
            let profile = instance.pair_profile(x, y);
            let key: Vec<u64> = profile.iter().flatten().copied().collect();
            let entry = by_profile
                .entry(key)
                .or_insert_with(|| {
                    let mut s = BigComplex::zero(prec);
                    for i in 0..WEIGHTS {
                        for j in 0..WEIGHTS {
                            let count = profile[i][j];
                            if count == 0 {
                                continue;
                            }
                            let c = BigFloat::from_rational(
                                &Rational::from_integer(BigInt::from(count)),
                                prec,
                            );
                            s = s.add(
                                &gram_terms[i * WEIGHTS + j].mul(&BigComplex::from_real(c)),
                            );
                        }
                    }
                    s
                })
                .clone();
            pairs_checked += 1;
            if x == y {
                let defect = entry.sub(&BigComplex::from_real(n_float.clone())).abs();
                if defect > max_diag {
                    max_diag = defect;
                }
            } else {
                let defect = entry.abs();
                if defect > max_off {
                    max_off = defect;
                    worst_pair = Some((x, y));
                }
            }
        }
    }

    Ok(DenseGram {
        order: n,
        pairs_checked,
        max_diagonal_defect: max_diag,
        max_offdiagonal_defect: max_off,
        worst_pair,
    })
}

fn check_pair_count(len: usize) -> Result<()> {
    if len != PAIRS.len() {
        return Err(Error::BadParameters(format!(
            "pair-sum vector must have {} entries, got {len}",
            PAIRS.len()
        )));
    }
    Ok(())
}

fn check_weight_count(len: usize) -> Result<()> {
    if len != WEIGHTS {
        return Err(Error::BadParameters(format!(
            "weight vector must have {WEIGHTS} entries, got {len}"
        )));
    }
    Ok(())
}

fn check_tensor_shape(nums: &[Vec<Vec<BigInt>>]) -> Result<()> {
    let ok = nums.len() == WEIGHTS
        && nums
            .iter()
            .all(|m| m.len() == WEIGHTS && m.iter().all(|row| row.len() == WEIGHTS));
    if ok {
        Ok(())
    } else {
        Err(Error::BadParameters(
            "intersection-number table must be 5 x 5 x 5".into(),
        ))
    }
}
