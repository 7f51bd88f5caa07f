//! Polynomials over GF(2) in one and two variables and resultants with
//! respect to `y`.

mod bpoly;
mod parse;
mod upoly;

pub use bpoly::BPoly;
pub use parse::{parse_bpoly, parse_factored, parse_upoly, MAX_EXPONENT};
pub use upoly::{expand_product, UPoly};

use crate::error::{Error, Result};

/// Square matrix with polynomial entries, row-major.
pub type PolyMatrix = Vec<Vec<UPoly>>;

/// Sylvester matrix of `f` and `g` as polynomials in `y`.
///
/// With `p = deg_y f` and `q = deg_y g` the matrix has order `p + q`: the
/// first `q` rows hold the coefficients of `f` from `y^p` down to `y^0`,
/// each row shifted one column right of the previous; the last `p` rows do
/// the same for `g`.
pub fn sylvester(f: &BPoly, g: &BPoly) -> Result<PolyMatrix> {
    let (p, q) = (f.y_degree(), g.y_degree());
    if p == 0 || q == 0 {
        return Err(Error::ConstantInY);
    }
    let order = p + q;
    let mut m = vec![vec![UPoly::zero(); order]; order];
    for (row, shift) in (0..q).map(|i| (i, i)) {
        for (k, c) in f.y_coeffs().iter().rev().enumerate() {
            m[row][shift + k] = c.clone();
        }
    }
    for (row, shift) in (0..p).map(|i| (q + i, i)) {
        for (k, c) in g.y_coeffs().iter().rev().enumerate() {
            m[row][shift + k] = c.clone();
        }
    }
    Ok(m)
}

/// Determinant over GF(2)[x] by Bareiss fraction-free elimination.
pub fn determinant(matrix: &PolyMatrix) -> UPoly {
    let n = matrix.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut m = matrix.clone();
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // row swaps only flip the sign, which is invisible in characteristic 2
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => m.swap(k, i),
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).add(&m[i][k].mul(&m[k][j]));
                let (quot, rem) = num.divrem(&prev).expect("Bareiss pivots are nonzero");
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = quot;
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone()
}

/// Resultant of `f` and `g` with respect to `y`.
///
/// If one input does not involve `y`, it is raised to the `y`-degree of the
/// other (and two `y`-free inputs give 1).
pub fn resultant_y(f: &BPoly, g: &BPoly) -> UPoly {
    if f.is_zero() || g.is_zero() {
        return UPoly::zero();
    }
    match (f.as_upoly(), g.as_upoly()) {
        (Some(_), Some(_)) => UPoly::one(),
        (Some(c), None) => c.pow(g.y_degree() as u32),
        (None, Some(c)) => c.pow(f.y_degree() as u32),
        (None, None) => determinant(&sylvester(f, g).expect("both y-degrees are positive")),
    }
}
