//! First and second eigenmatrices of the scheme family, as symbolic data in
//! `(q, r)` with `r` standing for `q^{m-1}`.
//!
//! The first eigenmatrix `P` is 5x5: row `l`, column `i` holds the
//! eigenvalue of the `i`-th adjacency matrix on the `l`-th common
//! eigenspace. Row 0 consists of the valencies; column 0 is all ones. The
//! second eigenmatrix is `Q = n * P^{-1}`, computed exactly through the
//! adjugate so that its entries stay honest rational functions; its top row
//! holds the eigenspace multiplicities.

use crate::error::{Error, Result};
use crate::exact::poly::MultiPoly;
use crate::exact::ratfunc::RatFunc;
use crate::linalg::{poly_adjugate, poly_det};

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

/// Scheme order `n = q^2 r^2 - 1` as a polynomial.
pub fn order_poly() -> MultiPoly {
    &(&q() * &r()).pow(2) - &c(1)
}

/// The 5x5 first eigenmatrix `P` with polynomial entries.
pub fn eigenmatrix() -> Vec<Vec<MultiPoly>> {
    let qm2 = &q() - &c(2); // q - 2
    let qm1 = &q() - &c(1); // q - 1
    let r2 = r().pow(2);
    let qr = &q() * &r();
    let qr_half = half(qr.clone());
    let r2m1 = &r2 - &c(1);

    vec![
        vec![
            c(1),
            half(&(&qm2 * &q()) * &r2),
            half(&q().pow(2) * &r2),
            &q() * &r2m1,
            qm2.clone(),
        ],
        vec![
            c(1),
            half(&qm2 * &r()),
            qr_half.clone(),
            -&(&(&r() + &c(1)) * &qm1),
            qm2.clone(),
        ],
        vec![
            c(1),
            -&half(&qm2 * &r()),
            -&qr_half,
            &(&r() - &c(1)) * &qm1,
            qm2.clone(),
        ],
        vec![c(1), qr_half.clone(), -&qr_half, c(0), c(-1)],
        vec![c(1), -&qr_half, qr_half.clone(), c(0), c(-1)],
    ]
}

/// Valencies `k_0..k_4`: the top row of the eigenmatrix.
pub fn valencies() -> Vec<MultiPoly> {
    eigenmatrix().swap_remove(0)
}

/// The second eigenmatrix `Q = n * P^{-1}`, exact rational functions.
pub fn dual_eigenmatrix() -> Result<Vec<Vec<RatFunc>>> {
    let p = eigenmatrix();
    let det = poly_det(&p);
    if det.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let adj = poly_adjugate(&p);
    let n = order_poly();
    adj.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|entry| RatFunc::new(&entry * &n, det.clone()))
                .collect()
        })
        .collect()
}

/// Eigenspace multiplicities `m_0..m_4`: the top row of the dual
/// eigenmatrix.
pub fn multiplicities() -> Result<Vec<RatFunc>> {
    Ok(dual_eigenmatrix()?.swap_remove(0))
}
