//! Generalized-inverse quality checks.
//!
//! For a candidate inverse G of A the four defining conditions are
//! (1) `A G A = A`, (2) `G A G = G`, (3) `(A G)* = A G`,
//! (4) `(G A)* = G A`. An inverse satisfying all four is the (unique)
//! pseudoinverse. The row-form construction `G = (A')* M` always
//! satisfies {1, 2, 4} and drops (3) exactly when A has deficient row
//! rank; the column-form `G = M (A')*` always satisfies {1, 2, 3} and
//! drops (4) for deficient column rank. Full rank upgrades either to
//! {1, 2, 3, 4}.

use crate::error::{Error, Result};
use crate::factorize::{col_orthonormalize, default_factor_tol, row_orthonormalize};
use crate::matcore::ComplexMatrix;
use crate::solve_batch::{gen_inverse_col, gen_inverse_row};

/// Default defect tolerance for an `m x n` matrix.
pub fn default_penrose_tol(m: usize, n: usize) -> f64 {
    1e-8 * m.max(n) as f64
}

/// Verdict on the four conditions.
///
/// `defects` are scale-free residuals: conditions (1) and (2) divide by
/// the norm of the reproduced matrix, (3) and (4) compare a product with
/// its adjoint on a `max(1, norm)` scale. `holds[k]` is
/// `defects[k] <= tol`, and `class_label` prints the set, e.g. `"{124}"`.
#[derive(Clone, Debug, PartialEq)]
pub struct PenroseReport {
    pub holds: [bool; 4],
    pub defects: [f64; 4],
    pub class_label: String,
    pub tol: f64,
}

impl PenroseReport {
    /// True when all four conditions hold: G is the pseudoinverse.
    pub fn is_pseudoinverse(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

fn relative_defect(diff: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// Measure the four conditions for a candidate inverse `g` of `a`.
/// `g` must have the transposed shape of `a`; `tol` defaults to
/// [`default_penrose_tol`].
pub fn penrose_check(
    a: &ComplexMatrix,
    g: &ComplexMatrix,
    tol: Option<f64>,
) -> Result<PenroseReport> {
    if g.rows() != a.cols() || g.cols() != a.rows() {
        return Err(Error::Dimension(format!(
            "candidate inverse of shape {}x{} does not match matrix {}x{}",
            g.rows(),
            g.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let tol = tol.unwrap_or_else(|| default_penrose_tol(a.rows(), a.cols()));
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Argument(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }

    let ag = a.matmul(g)?;
    let ga = g.matmul(a)?;

    let aga = ag.matmul(a)?;
    let d1 = relative_defect(aga.sub(a)?.frobenius_norm(), a.frobenius_norm());

    let gag = ga.matmul(g)?;
    let d2 = relative_defect(gag.sub(g)?.frobenius_norm(), g.frobenius_norm());

    let d3 = ag.sub(&ag.conj_transpose())?.frobenius_norm() / ag.frobenius_norm().max(1.0);
    let d4 = ga.sub(&ga.conj_transpose())?.frobenius_norm() / ga.frobenius_norm().max(1.0);

    let defects = [d1, d2, d3, d4];
    let holds = [d1 <= tol, d2 <= tol, d3 <= tol, d4 <= tol];
    let mut class_label = String::from("{");
    for (k, &h) in holds.iter().enumerate() {
        if h {
            class_label.push(char::from(b'1' + k as u8));
        }
    }
    class_label.push('}');
    Ok(PenroseReport { holds, defects, class_label, tol })
}

/// Factorize rows, build `G = (A')* M`, and measure it. The construction
/// guarantees {1, 2, 4}; condition (3) additionally holds exactly when
/// A has full row rank.
pub fn classify_row_method(a: &ComplexMatrix, tol: Option<f64>) -> Result<PenroseReport> {
    let f = row_orthonormalize(a, default_factor_tol(a.rows(), a.cols()))?;
    let g = gen_inverse_row(&f)?;
    penrose_check(a, &g, tol)
}

/// Factorize columns, build `G = M (A')*`, and measure it. The
/// construction guarantees {1, 2, 3}; condition (4) additionally holds
/// exactly when A has full column rank.
pub fn classify_col_method(a: &ComplexMatrix, tol: Option<f64>) -> Result<PenroseReport> {
    let f = col_orthonormalize(a, default_factor_tol(a.rows(), a.cols()))?;
    let g = gen_inverse_col(&f)?;
    penrose_check(a, &g, tol)
}
