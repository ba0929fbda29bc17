//! Resultants of univariate polynomials.
//!
//! Two entry points: a Sylvester-determinant resultant for rational
//! polynomials, and a 2x2 cross-determinant for polynomials of degree at
//! most one whose coefficients live in any exact field (in particular in a
//! quadratic extension). The latter is what the algebra-dimension
//! obstruction needs: there the two polynomials are linear in the free
//! parameter and a nonzero resultant certifies they never vanish together.

use num_traits::Zero;

use super::poly::{rat, Rational};
use super::quadext::RingElem;
use super::sturm::RealPoly;

/// Resultant of linear polynomials `f0 + f1*t` and `g0 + g1*t`, computed as
/// the cross determinant `f0*g1 - f1*g0`. Agrees with the Sylvester
/// resultant up to sign, which is all its users need: the certificate is
/// that the value (equivalently its field norm) is nonzero.
pub fn linear_resultant<F: RingElem>(f: &(F, F), g: &(F, F)) -> F {
    f.0.ring_mul(&g.1).ring_sub(&f.1.ring_mul(&g.0))
}

/// Sylvester resultant of two rational polynomials. Errors are not possible:
/// by convention the resultant involving a zero polynomial is zero, and two
/// nonzero constants have resultant 1.
pub fn sylvester_resultant(p: &RealPoly, q: &RealPoly) -> Rational {
    if p.is_zero() || q.is_zero() {
        return rat(0);
    }
    let m = p.degree();
    let n = q.degree();
    if m == 0 && n == 0 {
        return rat(1);
    }
    if m == 0 {
        return pow(&p.coeffs()[0], n as u32);
    }
    if n == 0 {
        return pow(&q.coeffs()[0], m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![rat(0); size]; size];
    // n rows of p's coefficients (descending), then m rows of q's.
    for row in 0..n {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    determinant(mat)
}

fn pow(base: &Rational, e: u32) -> Rational {
    let mut acc = rat(1);
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Rational Gaussian elimination with partial pivoting by nonzero entry.
fn determinant(mut mat: Vec<Vec<Rational>>) -> Rational {
    let n = mat.len();
    let mut det = rat(1);
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !Zero::is_zero(&mat[r][col])) {
            Some(r) => r,
            None => return rat(0),
        };
        if pivot_row != col {
            mat.swap(pivot_row, col);
            det = -det;
        }
        let pivot = mat[col][col].clone();
        det *= &pivot;
        for row in col + 1..n {
            if Zero::is_zero(&mat[row][col]) {
                continue;
            }
            let factor = &mat[row][col] / &pivot;
            for k in col..n {
                let v = &mat[col][k] * &factor;
                mat[row][k] -= v;
            }
        }
    }
    det
}
