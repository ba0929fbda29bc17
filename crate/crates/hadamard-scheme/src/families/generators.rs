//! Polynomial relations satisfied by the pair sums of unimodular weight
//! vectors.
//!
//! Write `x_ij` for the pair sum `w_i conj(w_j) + w_j conj(w_i)` of a
//! unimodular weight vector. Three shapes of polynomial vanish identically
//! on such vectors, and together they cut out the variety that every family
//! must live on:
//!
//! * [`g_poly`] — the triple trace relation
//!   `x_ij^2 + x_ik^2 + x_jk^2 - x_ij x_ik x_jk - 4 = 0`, an instance of the
//!   Fricke trace identity for commuting unimodular numbers.
//! * [`h_poly`] — a 3x3 determinant in six pair sums. It vanishes because
//!   `x_ij = B(v_i, v_j)` for the rank-2 bilinear form
//!   `B((s, s'), (t, t')) = s t' + s' t` on the vectors `v_i = (w_i, 1/w_i)`,
//!   so every 3x3 matrix of `B`-values is singular.
//! * [`e_poly`] — for each nontrivial eigenspace `k`, the row of the
//!   eigenmatrix contracts the pair sums to
//!   `sum_{i<j} P_ki P_kj x_ij + sum_i P_ki^2 - n`, which vanishes exactly
//!   when eigenspace `k` annihilates `W W* - n I`.
//!
//! [`generator_set`] packages the deduplicated list (10 `g` + 30 `h` + 4
//! `e` = 44 polynomials); [`evaluate_generators`] substitutes any pair-sum
//! assignment and reports one residual per generator.

use crate::error::{Error, Result};
use crate::exact::{rat, MultiPoly, RatFunc, Rational};
use crate::linalg::poly_det;
use crate::scheme::{eigenmatrix, order_poly, SchemeParams, CLASSES};

use super::{exact_weights, pair_variable, symbolic_weights, Family, PAIRS, WEIGHTS};

/// The pair-sum variable `x_ij` (indices in either order).
fn x(i: usize, j: usize) -> MultiPoly {
    MultiPoly::var(pair_variable(i.min(j), i.max(j)))
}

fn check_indices(idx: &[usize]) -> Result<()> {
    for &v in idx {
        if v >= WEIGHTS {
            return Err(Error::ClassOutOfRange(v));
        }
    }
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] == idx[b] {
                return Err(Error::RepeatedIndex(idx.to_vec()));
            }
        }
    }
    Ok(())
}

/// Triple trace relation `x_ij^2 + x_ik^2 + x_jk^2 - x_ij x_ik x_jk - 4`
/// for three distinct indices.
///
/// # Errors
///
/// [`Error::RepeatedIndex`] on repeated indices, [`Error::ClassOutOfRange`]
/// on indices above 4.
pub fn g_poly(i: usize, j: usize, k: usize) -> Result<MultiPoly> {
    check_indices(&[i, j, k])?;
    let (a, b, c) = (x(i, j), x(i, k), x(j, k));
    let squares = &(&(&a * &a) + &(&b * &b)) + &(&c * &c);
    let product = &(&a * &b) * &c;
    Ok(&(&squares - &product) - &MultiPoly::int(4))
}

/// The 3x3 pair-sum determinant based at `(a, b; c, d)`:
///
/// ```text
/// | 2      x_ab    x_ac |
/// | x_ab   2       x_bc |
/// | x_ad   x_bd    x_cd |
/// ```
fn pair_sum_det(a: usize, b: usize, c: usize, d: usize) -> MultiPoly {
    let two = MultiPoly::int(2);
    let rows = vec![
        vec![two.clone(), x(a, b), x(a, c)],
        vec![x(a, b), two, x(b, c)],
        vec![x(a, d), x(b, d), x(c, d)],
    ];
    poly_det(&rows)
}

/// Quadruple determinant relation in the six pair sums of `{i, j, k, l}`,
/// normalized as `-`[the determinant based at `(k, l; i, j)`].
///
/// It is symmetric under `i <-> j` and under `k <-> l`, so the 120 ordered
/// quadruples produce only 30 distinct polynomials
/// (see [`generator_set`] and [`ordered_quadruple_polynomials`]).
///
/// # Errors
///
/// [`Error::RepeatedIndex`] on repeated indices, [`Error::ClassOutOfRange`]
/// on indices above 4.
pub fn h_poly(i: usize, j: usize, k: usize, l: usize) -> Result<MultiPoly> {
    check_indices(&[i, j, k, l])?;
    Ok(pair_sum_det(k, l, i, j).scale(&rat(-1)))
}

/// Eigenrow relation for eigenspace `k` (`1 <= k <= 4`):
///
/// ```text
/// e_k = sum_{i<j} P_ki P_kj x_ij + sum_i P_ki^2 - n
/// ```
///
/// a polynomial in the pair sums and the scheme variables `q, r`. Row 0
/// is excluded: its relation is the rational dependency
/// `sum_k m_k e_k = 0` away from being redundant, and it is never part of
/// the generator set.
///
/// # Errors
///
/// [`Error::ClassOutOfRange`] unless `1 <= k <= 4`.
pub fn e_poly(k: usize) -> Result<MultiPoly> {
    if !(1..=CLASSES).contains(&k) {
        return Err(Error::ClassOutOfRange(k));
    }
    let row = &eigenmatrix()[k];
    let mut acc = MultiPoly::zero();
    for &(i, j) in PAIRS.iter() {
        acc = &acc + &(&(&row[i] * &row[j]) * &x(i, j));
    }
    for entry in row {
        acc = &acc + &(entry * entry);
    }
    Ok(&acc - &order_poly())
}

/// One labeled polynomial from the generator set.
#[derive(Clone, Debug)]
pub struct Generator {
    /// Human-readable label, e.g. `g(0,1,2)`, `h(0,1;2,3)`, `e_3`.
    pub label: String,
    pub poly: MultiPoly,
}

/// The deduplicated generator set: the 10 triple trace relations `g` over
/// all 3-subsets, the 30 distinct quadruple determinant relations `h`, and
/// the 4 eigenrow relations `e_1..e_4` — 44 polynomials in total.
///
/// A pair-sum vector of a unimodular weight vector in the scheme is a
/// common zero of all of them; [`evaluate_generators`] checks this.
pub fn generator_set() -> Vec<Generator> {
    let mut out = Vec::with_capacity(44);
    for i in 0..WEIGHTS {
        for j in i + 1..WEIGHTS {
            for k in j + 1..WEIGHTS {
                out.push(Generator {
                    label: format!("g({i},{j},{k})"),
                    poly: g_poly(i, j, k).expect("distinct indices"),
                });
            }
        }
    }
    // h is symmetric in i <-> j and k <-> l, so (i < j, k < l) enumerates
    // each distinct polynomial exactly once.
    for i in 0..WEIGHTS {
        for j in i + 1..WEIGHTS {
            for k in 0..WEIGHTS {
                if k == i || k == j {
                    continue;
                }
                for l in k + 1..WEIGHTS {
                    if l == i || l == j {
                        continue;
                    }
                    out.push(Generator {
                        label: format!("h({i},{j};{k},{l})"),
                        poly: h_poly(i, j, k, l).expect("distinct indices"),
                    });
                }
            }
        }
    }
    for k in 1..=CLASSES {
        out.push(Generator {
            label: format!("e_{k}"),
            poly: e_poly(k).expect("class in range"),
        });
    }
    out
}

/// All 120 ordered quadruple determinant relations, keyed by their index
/// tuple. Provided for cross-checking the deduplication in
/// [`generator_set`]; as a set of polynomials this list collapses to the
/// 30 distinct `h` generators.
pub fn ordered_quadruple_polynomials() -> Vec<([usize; 4], MultiPoly)> {
    let mut out = Vec::with_capacity(120);
    for i in 0..WEIGHTS {
        for j in 0..WEIGHTS {
            for k in 0..WEIGHTS {
                for l in 0..WEIGHTS {
                    if let Ok(p) = h_poly(i, j, k, l) {
                        out.push(([i, j, k, l], p));
                    }
                }
            }
        }
    }
    out
}

/// Residuals of the full generator set under a pair-sum assignment.
#[derive(Clone, Debug)]
pub struct GeneratorResiduals {
    /// `(label, residual)` for each generator, in [`generator_set`] order.
    pub entries: Vec<(String, RatFunc)>,
}

impl GeneratorResiduals {
    /// True when every generator evaluates to zero.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(_, res)| res.is_zero())
    }

    /// Labels of the generators with nonzero residual.
    pub fn failures(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, res)| !res.is_zero())
            .map(|(label, _)| label.as_str())
            .collect()
    }
}

/// Evaluates every generator at a pair-sum assignment.
///
/// The assignment must cover the ten pair-sum variables `x01..x34` and the
/// scheme variables `q, r` (map `q, r` to themselves to stay symbolic).
pub fn evaluate_generators(assignment: &[(&str, RatFunc)]) -> Result<GeneratorResiduals> {
    let entries = generator_set()
        .into_iter()
        .map(|gen| Ok((gen.label, RatFunc::eval_poly(&gen.poly, assignment)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorResiduals { entries })
}

/// Evaluates the generator set at a family's symbolic pair sums, keeping
/// `q, r` symbolic. All residuals are zero for families I and II — the
/// parameter-independent certificate that their pair sums land on the
/// generator variety.
pub fn family_residuals(family: Family) -> Result<GeneratorResiduals> {
    let weights = symbolic_weights(family)?;
    let mut assignment = weights.substitution();
    assignment.push(("q", RatFunc::var("q")));
    assignment.push(("r", RatFunc::var("r")));
    evaluate_generators(&assignment)
}

/// Evaluates the generator set at a family's exact pair sums for one
/// parameter pair, returning one rational residual per generator.
pub fn family_residuals_at(
    family: Family,
    params: &SchemeParams,
) -> Result<Vec<(String, Rational)>> {
    let weights = exact_weights(family, params)?;
    residuals_at(weights.pair_sums(), params)
}

/// Evaluates the generator set at an explicit rational pair-sum vector.
pub fn residuals_at(a: &[Rational], params: &SchemeParams) -> Result<Vec<(String, Rational)>> {
    if a.len() != PAIRS.len() {
        return Err(Error::BadParameters(format!(
            "pair-sum vector must have {} entries, got {}",
            PAIRS.len(),
            a.len()
        )));
    }
    let mut assignment: Vec<(&str, Rational)> = PAIRS
        .iter()
        .enumerate()
        .map(|(idx, &(i, j))| (pair_variable(i, j), a[idx].clone()))
        .collect();
    assignment.extend(params.assignment());
    generator_set()
        .into_iter()
        .map(|gen| Ok((gen.label, gen.poly.eval(&assignment)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn generator_set_has_expected_shape() {
        let gens = generator_set();
        assert_eq!(gens.len(), 44);
        assert_eq!(
            gens.iter().filter(|g| g.label.starts_with("g(")).count(),
            10
        );
        assert_eq!(
            gens.iter().filter(|g| g.label.starts_with("h(")).count(),
            30
        );
        assert_eq!(
            gens.iter().filter(|g| g.label.starts_with("e_")).count(),
            4
        );
        // The h generators are pairwise distinct as polynomials.
        let hs: Vec<&MultiPoly> = gens
            .iter()
            .filter(|g| g.label.starts_with("h("))
            .map(|g| &g.poly)
            .collect();
        for a in 0..hs.len() {
            for b in a + 1..hs.len() {
                assert_ne!(hs[a], hs[b]);
            }
        }
    }

    #[test]
    fn ordered_quadruples_collapse_to_the_deduplicated_set() {
        let ordered = ordered_quadruple_polynomials();
        assert_eq!(ordered.len(), 120);
        let canonical: Vec<MultiPoly> = generator_set()
            .into_iter()
            .filter(|g| g.label.starts_with("h("))
            .map(|g| g.poly)
            .collect();
        for ([i, j, k, l], poly) in &ordered {
            assert!(
                canonical.iter().any(|c| c == poly),
                "h({i},{j},{k},{l}) missing from canonical set"
            );
        }
        // Symmetries: i <-> j and k <-> l leave the polynomial unchanged.
        let base = h_poly(0, 1, 2, 3).unwrap();
        assert_eq!(h_poly(1, 0, 2, 3).unwrap(), base);
        assert_eq!(h_poly(0, 1, 3, 2).unwrap(), base);
        assert_eq!(h_poly(1, 0, 3, 2).unwrap(), base);
    }

    #[test]
    fn repeated_or_out_of_range_indices_are_rejected() {
        assert!(matches!(g_poly(0, 0, 1), Err(Error::RepeatedIndex(_))));
        assert!(matches!(g_poly(0, 1, 5), Err(Error::ClassOutOfRange(5))));
        assert!(matches!(h_poly(0, 1, 2, 1), Err(Error::RepeatedIndex(_))));
        assert!(matches!(h_poly(0, 1, 2, 9), Err(Error::ClassOutOfRange(9))));
        assert!(matches!(e_poly(0), Err(Error::ClassOutOfRange(0))));
        assert!(matches!(e_poly(5), Err(Error::ClassOutOfRange(5))));
    }

    #[test]
    fn trace_relation_degenerates_when_one_sum_is_two() {
        // g(2, Y, Z) = (Y - Z)^2, so g(2, Y, Y) = 0 for every Y.
        let g = g_poly(0, 1, 2).unwrap();
        let pinned = g.eval_partial(&[("x01", rat(2))]);
        let collapsed = pinned.substitute("x12", &MultiPoly::var("x02"));
        assert!(collapsed.is_zero());
        // And with distinct values it is the square of the difference.
        let value = g
            .eval(&[("x01", rat(2)), ("x02", rat(3)), ("x12", rat(5))])
            .unwrap();
        assert_eq!(value, rat(4));
    }

    #[test]
    fn determinant_relation_vanishes_on_the_all_ones_vector() {
        // All weights equal to 1 give every pair sum 2; the determinant has
        // rank 1 there.
        let all_two: Vec<(&str, Rational)> = super::super::PAIR_VARS
            .iter()
            .map(|v| (*v, rat(2)))
            .collect();
        for gen in generator_set() {
            if gen.label.starts_with("h(") || gen.label.starts_with("g(") {
                assert!(
                    gen.poly.eval(&all_two).unwrap().is_zero(),
                    "{} nonzero on the all-ones weight vector",
                    gen.label
                );
            }
        }
    }

    #[test]
    fn both_exact_families_annihilate_every_generator_symbolically() {
        for family in [Family::I, Family::II] {
            let residuals = family_residuals(family).unwrap();
            assert_eq!(residuals.entries.len(), 44);
            assert!(
                residuals.passed(),
                "family {family} fails {:?}",
                residuals.failures()
            );
        }
    }

    #[test]
    fn exact_specialization_annihilates_every_generator() {
        let p = SchemeParams::new(8, 3).unwrap();
        for family in [Family::I, Family::II] {
            for (label, res) in family_residuals_at(family, &p).unwrap() {
                assert!(res.is_zero(), "family {family}, generator {label}");
            }
        }
    }

    #[test]
    fn corrupted_pair_sum_fails_an_eigenrow_relation() {
        let p = SchemeParams::new(4, 2).unwrap();
        let mut a = exact_weights(Family::II, &p).unwrap().pair_sums().to_vec();
        a[0] = rat(2); // corrupt a(0, 1)
        let residuals = residuals_at(&a, &p).unwrap();
        let failures: Vec<&str> = residuals
            .iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(l, _)| l.as_str())
            .collect();
        assert!(!failures.is_empty());
        assert!(
            failures.iter().any(|l| l.starts_with("e_")),
            "no eigenrow relation failed: {failures:?}"
        );
    }

    #[test]
    fn eigenrow_relation_at_base_point_matches_hand_expansion() {
        // At (q, m) = (4, 2): row 4 of the eigenmatrix is
        // (1, -qr/2, qr/2, 0, -1) = (1, -8, 8, 0, -1).
        let p = SchemeParams::new(4, 2).unwrap();
        let e4 = e_poly(4).unwrap();
        let a = exact_weights(Family::II, &p).unwrap().pair_sums().to_vec();
        let mut assignment: Vec<(&str, Rational)> = PAIRS
            .iter()
            .enumerate()
            .map(|(idx, &(i, j))| (pair_variable(i, j), a[idx].clone()))
            .collect();
        assignment.extend(p.assignment());
        assert!(e4.eval(&assignment).unwrap().is_zero());

        // Hand expansion with row (1, -8, 8, 0, -1) and n = 255:
        // sum of squares = 1 + 64 + 64 + 0 + 1 = 130, so the pair-sum part
        // must equal 125.
        let row = [rat(1), rat(-8), rat(8), rat(0), rat(-1)];
        let mut pair_part = rat(0);
        for (idx, &(i, j)) in PAIRS.iter().enumerate() {
            pair_part = pair_part + row[i].clone() * row[j].clone() * a[idx].clone();
        }
        assert_eq!(pair_part, rat(125));
    }
}
