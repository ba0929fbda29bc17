//! Intersection numbers of the scheme family.
//!
//! The tensor entry `p(i, j, k)` counts, for any pair of points in relation
//! `k`, the common neighbours that are in relation `i` to the first point
//! and relation `j` to the second. It is recovered exactly from the
//! spectral data by
//!
//! ```text
//! p(i, j, k) = ( sum_l m_l P[l][i] P[l][j] P[l][k] ) / ( n * k_k )
//! ```
//!
//! For this scheme family every entry collapses from a rational function to
//! a polynomial in `(q, r)`; the constructor insists on that collapse, so
//! downstream code can work with plain polynomials. The independently
//! tabulated closed forms in [`reference_intersection_matrices`] serve as a
//! cross-check for the computed tensor.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::poly::{MultiPoly, Rational};
use crate::exact::ratfunc::RatFunc;
use crate::scheme::{eigen, SchemeParams, CLASSES};

const R: usize = CLASSES + 1; // relation count including the identity

/// All 125 intersection numbers as polynomials in `(q, r)`.
pub struct IntersectionTensor {
    entries: Vec<MultiPoly>, // index (i * R + j) * R + k
}

impl IntersectionTensor {
    /// Computes the tensor from the eigenmatrix data.
    pub fn compute() -> Result<Self> {
        let p = eigen::eigenmatrix();
        let ms = eigen::multiplicities()?;
        let n = RatFunc::from_poly(eigen::order_poly());
        let mut entries = Vec::with_capacity(R * R * R);
        for i in 0..R {
            for j in 0..R {
                for k in 0..R {
                    let mut acc = RatFunc::zero();
                    for (l, m_l) in ms.iter().enumerate() {
                        let triple = &(&p[l][i] * &p[l][j]) * &p[l][k];
                        acc = acc.add(&m_l.mul(&RatFunc::from_poly(triple)));
                    }
                    let denom = n.mul(&RatFunc::from_poly(p[0][k].clone()));
                    let value = acc.div(&denom)?;
                    let poly = value.as_poly().ok_or_else(|| {
                        Error::BadParameters(format!(
                            "intersection number ({i},{j},{k}) did not reduce to a polynomial"
                        ))
                    })?;
                    entries.push(poly);
                }
            }
        }
        Ok(IntersectionTensor { entries })
    }

    /// A copy with `p(i, j, k)` replaced and everything else untouched.
    /// Useful for studying how downstream checks react to a defective
    /// table.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, value: MultiPoly) -> Self {
        assert!(i < R && j < R && k < R, "relation index out of range");
        let mut entries = self.entries.clone();
        entries[(i * R + j) * R + k] = value;
        IntersectionTensor { entries }
    }

    /// The polynomial `p(i, j, k)`.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> &MultiPoly {
        assert!(i < R && j < R && k < R, "relation index out of range");
        &self.entries[(i * R + j) * R + k]
    }

    /// The matrix `B_i` with rows indexed by `j` and columns by `k`:
    /// `B_i[j][k] = p(i, j, k)`.
    pub fn intersection_matrix(&self, i: usize) -> Vec<Vec<MultiPoly>> {
        (0..R)
            .map(|j| (0..R).map(|k| self.entry(i, j, k).clone()).collect())
            .collect()
    }

    /// Evaluates every entry at concrete parameters, checking that each is
    /// a nonnegative integer (anything else means the parameters are
    /// outside the family).
    pub fn specialize(&self, params: &SchemeParams) -> Result<Vec<Vec<Vec<BigInt>>>> {
        let assign = params.assignment();
        let mut out = vec![vec![vec![BigInt::from(0); R]; R]; R];
        for i in 0..R {
            for j in 0..R {
                for k in 0..R {
                    let v: Rational = self.entry(i, j, k).eval(&assign)?;
                    if !v.is_integer() || v.is_negative() {
                        return Err(Error::BadParameters(format!(
                            "intersection number ({i},{j},{k}) = {v} at {params} \
                             is not a nonnegative integer"
                        )));
                    }
                    out[i][j][k] = v.to_integer();
                }
            }
        }
        Ok(out)
    }

    /// Symbolic associativity of the algebra spanned by the adjacency
    /// matrices: for all `i, j, k, l`,
    /// `sum_s p(i,j,s) p(s,k,l) = sum_s p(j,k,s) p(i,s,l)`.
    /// Returns the first violated index tuple, or `None` if the identity
    /// holds across all 625 instances.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize, usize)> {
        for i in 0..R {
            for j in 0..R {
                for k in 0..R {
                    for l in 0..R {
                        let mut lhs = MultiPoly::zero();
                        let mut rhs = MultiPoly::zero();
                        for s in 0..R {
                            lhs = &lhs + &(self.entry(i, j, s) * self.entry(s, k, l));
                            rhs = &rhs + &(self.entry(j, k, s) * self.entry(i, s, l));
                        }
                        if lhs != rhs {
                            return Some((i, j, k, l));
                        }
                    }
                }
            }
        }
        None
    }

    /// First difference between the computed tensor and the independently
    /// tabulated closed forms: the identity slice must be the Kronecker
    /// delta and the slices `B_1..B_4` must equal
    /// [`reference_intersection_matrices`]. `None` means exact agreement on
    /// all 125 entries.
    pub fn reference_defect(&self) -> Option<(usize, usize, usize)> {
        for j in 0..R {
            for k in 0..R {
                let want = if j == k {
                    MultiPoly::int(1)
                } else {
                    MultiPoly::zero()
                };
                if self.entry(0, j, k) != &want {
                    return Some((0, j, k));
                }
            }
        }
        let refs = reference_intersection_matrices();
        for (i, bi) in refs.iter().enumerate() {
            for (j, row) in bi.iter().enumerate() {
                for (k, want) in row.iter().enumerate() {
                    if self.entry(i + 1, j, k) != want {
                        return Some((i + 1, j, k));
                    }
                }
            }
        }
        None
    }

    /// Symbolic commutativity `p(i,j,k) = p(j,i,k)`; returns the first
    /// violation if any.
    pub fn commutativity_defect(&self) -> Option<(usize, usize, usize)> {
        for i in 0..R {
            for j in i + 1..R {
                for k in 0..R {
                    if self.entry(i, j, k) != self.entry(j, i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
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

fn half(p: MultiPoly) -> MultiPoly {
    p.scale(&crate::exact::poly::ratio(1, 2))
}

fn quarter(p: MultiPoly) -> MultiPoly {
    p.scale(&crate::exact::poly::ratio(1, 4))
}

fn two() -> Rational {
    crate::exact::poly::rat(2)
}

/// Independently tabulated closed forms of the four nontrivial
/// intersection matrices `B_1..B_4` (`B_i[j][k] = p(i, j, k)`). These are
/// the values the computed tensor must reproduce exactly.
pub fn reference_intersection_matrices() -> [Vec<Vec<MultiPoly>>; 4] {
    let qm2 = &q() - &c(2);
    let qm3 = &q() - &c(3);
    let qm4 = &q() - &c(4);
    let r2 = r().pow(2);
    let r2m1 = &r2 - &c(1);
    let qr2 = &q() * &r2; // q r^2
    let q2r2 = &q() * &qr2; // q^2 r^2

    let b1 = vec![
        vec![c(0), c(1), c(0), c(0), c(0)],
        vec![
            half(&qm2 * &qr2),
            quarter(&r2 * &qm2.pow(2)),
            quarter(&r2 * &qm2.pow(2)),
            quarter(&r2 * &qm2.pow(2)),
            quarter(&qm4 * &qr2),
        ],
        vec![
            c(0),
            quarter(&qm2 * &qr2),
            quarter(&qm2 * &qr2),
            quarter(&qm2 * &qr2),
            quarter(q2r2.clone()),
        ],
        vec![
            c(0),
            half(&qm2 * &r2m1),
            half(&qm2 * &r2m1),
            half(&qm2 * &r2),
            c(0),
        ],
        vec![c(0), half(qm4.clone()), half(qm2.clone()), c(0), c(0)],
    ];

    let b2 = vec![
        vec![c(0), c(0), c(1), c(0), c(0)],
        vec![
            c(0),
            quarter(&qm2 * &qr2),
            quarter(&qm2 * &qr2),
            quarter(&qm2 * &qr2),
            quarter(q2r2.clone()),
        ],
        vec![
            half(q2r2.clone()),
            quarter(q2r2.clone()),
            quarter(q2r2.clone()),
            quarter(q2r2.clone()),
            quarter(q2r2.clone()),
        ],
        vec![
            c(0),
            half(&q() * &r2m1),
            half(&q() * &r2m1),
            half(qr2.clone()),
            c(0),
        ],
        vec![c(0), half(q()), half(qm2.clone()), c(0), c(0)],
    ];

    let b3 = vec![
        vec![c(0), c(0), c(0), c(1), c(0)],
        vec![
            c(0),
            half(&qm2 * &r2m1),
            half(&qm2 * &r2m1),
            half(&qm2 * &r2),
            c(0),
        ],
        vec![
            c(0),
            half(&q() * &r2m1),
            half(&q() * &r2m1),
            half(qr2.clone()),
            c(0),
        ],
        vec![
            &q() * &r2m1,
            r2m1.clone(),
            r2m1.clone(),
            &(&r2 - &q().scale(&two())) + &c(1), // r^2 - 2q + 1
            &q() * &r2m1,
        ],
        vec![c(0), c(0), c(0), qm2.clone(), c(0)],
    ];

    let b4 = vec![
        vec![c(0), c(0), c(0), c(0), c(1)],
        vec![c(0), half(qm4.clone()), half(qm2.clone()), c(0), c(0)],
        vec![c(0), half(q()), half(qm2.clone()), c(0), c(0)],
        vec![c(0), c(0), c(0), qm2.clone(), c(0)],
        vec![qm2.clone(), c(0), c(0), c(0), qm3.clone()],
    ];

    [b1, b2, b3, b4]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn tensor() -> &'static IntersectionTensor {
        static T: OnceLock<IntersectionTensor> = OnceLock::new();
        T.get_or_init(|| IntersectionTensor::compute().unwrap())
    }

    #[test]
    fn identity_relation_slice_is_kronecker() {
        let t = tensor();
        for j in 0..R {
            for k in 0..R {
                let want = if j == k { MultiPoly::int(1) } else { MultiPoly::zero() };
                assert_eq!(t.entry(0, j, k), &want, "p(0,{j},{k})");
            }
        }
    }

    #[test]
    fn computed_tensor_matches_reference_matrices() {
        let t = tensor();
        let refs = reference_intersection_matrices();
        for (i, bi) in refs.iter().enumerate() {
            for (j, row) in bi.iter().enumerate() {
                for (k, want) in row.iter().enumerate() {
                    assert_eq!(
                        t.entry(i + 1, j, k),
                        want,
                        "p({},{j},{k}) computed vs reference",
                        i + 1
                    );
                }
            }
        }
    }

    #[test]
    fn reference_defect_reports_full_agreement() {
        assert_eq!(tensor().reference_defect(), None);
    }

    #[test]
    fn algebra_is_associative_symbolically() {
        assert_eq!(tensor().associativity_defect(), None);
    }

    #[test]
    fn algebra_is_commutative_symbolically() {
        assert_eq!(tensor().commutativity_defect(), None);
    }

    #[test]
    fn row_sums_give_valencies() {
        // sum_j p(i, j, k) = k_i for every i, k
        let t = tensor();
        let vals = eigen::valencies();
        for i in 0..R {
            for k in 0..R {
                let mut s = MultiPoly::zero();
                for j in 0..R {
                    s = &s + t.entry(i, j, k);
                }
                assert_eq!(s, vals[i], "sum_j p({i}, j, {k})");
            }
        }
    }

    #[test]
    fn valency_weighted_symmetry() {
        // k_k p(i, j, k) = k_i p(k, j, i)
        let t = tensor();
        let vals = eigen::valencies();
        for i in 0..R {
            for j in 0..R {
                for k in 0..R {
                    let lhs = &vals[k] * t.entry(i, j, k);
                    let rhs = &vals[i] * t.entry(k, j, i);
                    assert_eq!(lhs, rhs, "({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn specialization_at_smallest_parameters() {
        let t = tensor();
        let params = SchemeParams::new(4, 2).unwrap();
        let nums = t.specialize(&params).unwrap();
        // spot values at (q, m) = (4, 2), r = 4
        assert_eq!(nums[1][1][1], BigInt::from(16)); // r^2 (q-2)^2 / 4
        assert_eq!(nums[4][4][4], BigInt::from(1)); // q - 3
        assert_eq!(nums[1][4][1], BigInt::from(0)); // (q-4)/2
        assert_eq!(nums[3][3][3], BigInt::from(9)); // r^2 - 2q + 1
        assert_eq!(nums[2][2][0], BigInt::from(128)); // k_2
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn specializations_are_nonnegative_integers(
            qe in 2u32..6, // q = 2^qe in {4, ..., 32}
            m in 2u32..5,
        ) {
            let params = SchemeParams::new(1u64 << qe, m).unwrap();
            let nums = tensor().specialize(&params).unwrap();
            // row sums against valencies, numerically
            let vals: Vec<BigInt> = eigen::valencies()
                .iter()
                .map(|v| params.eval_integer(v).unwrap())
                .collect();
            for i in 0..R {
                for k in 0..R {
                    let s: BigInt = (0..R).map(|j| nums[i][j][k].clone()).sum();
                    prop_assert_eq!(&s, &vals[i]);
                }
            }
        }
    }
}
