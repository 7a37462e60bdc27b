//! Batch solvers on top of the factorizations.
//!
//! Row form solves `A x = b` by orthonormalizing rows inside the system:
//! `b' = M b`, then `x_p = (A')* b'` is the minimum-norm solution of the
//! consistent part. Column form orthonormalizes columns with `b` left
//! alone: `x_p = M (A')* b` is a least-squares solution, and
//! `b_c = A' (A')* b` is the projection of `b` onto the column space.
//! Both factorizations also yield an explicit generalized inverse
//! `G = (A')* M` (row) or `G = M (A')*` (column) and the null-space
//! projector `P = 1 - G A`.

use crate::error::{Error, Result};
use crate::factorize::{
    col_orthonormalize, default_factor_tol, row_orthonormalize, Orientation,
    QuasiOrthFactorization,
};
use crate::matcore::{ComplexMatrix, ComplexVector};

/// Options shared by the batch solvers.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Factorization zero tolerance; `None` means
    /// `default_factor_tol(rows, cols)`.
    pub tol: Option<f64>,
    /// Materialize the generalized inverse G.
    pub want_g: bool,
    /// Materialize the null-space projector P.
    pub want_p: bool,
    /// Residual threshold for flagging inconsistency; `None` means
    /// `default_consistency_tol(|b|)`.
    pub consistency_tol: Option<f64>,
}

/// Default residual threshold used by the consistency flag.
pub fn default_consistency_tol(b_norm: f64) -> f64 {
    1e-8 * b_norm.max(1.0)
}

/// Outcome of a single-RHS solve.
#[derive(Clone, Debug)]
pub struct SolveResult {
    /// Particular solution (minimum-norm in row form, a least-squares
    /// solution in column form).
    pub x_p: ComplexVector,
    /// Generalized inverse, when requested.
    pub g: Option<ComplexMatrix>,
    /// Null-space projector, when requested.
    pub p: Option<ComplexMatrix>,
    /// Numerical rank `|S|` of the factorization.
    pub rank: usize,
    /// Row form: `|A x_p - b|`. Column form: `|A x_p - b_c|`, which is
    /// near zero even for inconsistent systems.
    pub residual_norm: f64,
    /// Column form only: `|b - b_c|`, the distance from `b` to the
    /// column space.
    pub b_projected_norm: Option<f64>,
    /// Row form: true when the residual exceeds the consistency
    /// threshold. Always false in column form.
    pub inconsistent: bool,
    /// Factorization tolerance actually used.
    pub factor_tol: f64,
    /// Consistency threshold actually used.
    pub consistency_tol: f64,
}

/// Outcome of a multi-RHS solve `A X = B`; one factorization serves
/// every column.
#[derive(Clone, Debug)]
pub struct MatrixSolveResult {
    pub x_p: ComplexMatrix,
    pub g: ComplexMatrix,
    pub p: ComplexMatrix,
    pub rank: usize,
    /// Factorization tolerance actually used.
    pub factor_tol: f64,
}

/// Minimum-norm solve of `A x = b` via row orthonormalization.
///
/// For consistent systems `x_p` is THE minimum-norm solution; every
/// other solution is `x_p + P y`. For inconsistent systems the result is
/// flagged and `x_p` solves the consistent subsystem selected by S.
pub fn solve_row_minnorm(
    a: &ComplexMatrix,
    b: &ComplexVector,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    if b.dim() != a.rows() {
        return Err(Error::Dimension(format!(
            "rhs has dimension {}, expected {}",
            b.dim(),
            a.rows()
        )));
    }
    let tol = resolve_tol(opts.tol, a)?;
    let f = row_orthonormalize(a, tol)?;
    let b_prime = f.m_matrix().matvec(b)?;
    let a_prime_star = f.a_prime().conj_transpose();
    let x_p = a_prime_star.matvec(&b_prime)?;

    let g = if opts.want_g { Some(a_prime_star.matmul(f.m_matrix())?) } else { None };
    let p = if opts.want_p {
        Some(match &g {
            Some(g) => null_projector(g, a)?,
            // variation without G: P = 1 - (A')* A'
            None => ComplexMatrix::identity(a.cols())
                .sub(&a_prime_star.matmul(f.a_prime())?)?,
        })
    } else {
        None
    };

    let residual_norm = a.matvec(&x_p)?.sub(b)?.norm2();
    let consistency_tol =
        resolve_consistency_tol(opts.consistency_tol, b.norm2())?;
    Ok(SolveResult {
        x_p,
        g,
        p,
        rank: f.rank(),
        residual_norm,
        b_projected_norm: None,
        inconsistent: residual_norm > consistency_tol,
        factor_tol: tol,
        consistency_tol,
    })
}

/// Least-squares solve of `A x = b` via column orthonormalization.
///
/// `x_p` minimizes `|A x - b|`; the minimum value is `b_projected_norm`.
/// Note `x_p` is the least-squares solution reached by in-order column
/// elimination, not necessarily the minimum-norm one.
pub fn solve_col_lsq(
    a: &ComplexMatrix,
    b: &ComplexVector,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    if b.dim() != a.rows() {
        return Err(Error::Dimension(format!(
            "rhs has dimension {}, expected {}",
            b.dim(),
            a.rows()
        )));
    }
    let tol = resolve_tol(opts.tol, a)?;
    let f = col_orthonormalize(a, tol)?;
    let a_prime_star = f.a_prime().conj_transpose();
    let t = a_prime_star.matvec(b)?;
    let x_p = f.m_matrix().matvec(&t)?;
    let b_c = f.a_prime().matvec(&t)?;

    let (g, p) = if opts.want_g || opts.want_p {
        let g = f.m_matrix().matmul(&a_prime_star)?;
        let p = if opts.want_p { Some(null_projector(&g, a)?) } else { None };
        (opts.want_g.then_some(g), p)
    } else {
        (None, None)
    };

    let residual_norm = a.matvec(&x_p)?.sub(&b_c)?.norm2();
    let b_projected_norm = b.sub(&b_c)?.norm2();
    let consistency_tol =
        resolve_consistency_tol(opts.consistency_tol, b.norm2())?;
    Ok(SolveResult {
        x_p,
        g,
        p,
        rank: f.rank(),
        residual_norm,
        b_projected_norm: Some(b_projected_norm),
        inconsistent: false,
        factor_tol: tol,
        consistency_tol,
    })
}

/// Orthogonal projection of `b` onto the column space of the factorized
/// matrix: `b_c = A' (A')* b`. Requires a column-form factorization.
pub fn project_column_space(
    f: &QuasiOrthFactorization,
    b: &ComplexVector,
) -> Result<ComplexVector> {
    if f.orientation() != Orientation::ColumnForm {
        return Err(Error::Argument(
            "column-space projection needs a column-form factorization".into(),
        ));
    }
    if b.dim() != f.a_prime().rows() {
        return Err(Error::Dimension(format!(
            "vector has dimension {}, expected {}",
            b.dim(),
            f.a_prime().rows()
        )));
    }
    let t = f.a_prime().conj_transpose().matvec(b)?;
    f.a_prime().matvec(&t)
}

/// Generalized inverse `G = (A')* M` from a row-form factorization.
/// Satisfies `A G A = A`, `G A G = G` and `(G A)* = G A`; `A G` is
/// Hermitian exactly when A has full row rank.
pub fn gen_inverse_row(f: &QuasiOrthFactorization) -> Result<ComplexMatrix> {
    if f.orientation() != Orientation::RowForm {
        return Err(Error::Argument("expected a row-form factorization".into()));
    }
    f.a_prime().conj_transpose().matmul(f.m_matrix())
}

/// Generalized inverse `G = M (A')*` from a column-form factorization.
/// Satisfies `A G A = A`, `G A G = G` and `(A G)* = A G`; `G A` is
/// Hermitian exactly when A has full column rank.
pub fn gen_inverse_col(f: &QuasiOrthFactorization) -> Result<ComplexMatrix> {
    if f.orientation() != Orientation::ColumnForm {
        return Err(Error::Argument("expected a column-form factorization".into()));
    }
    f.m_matrix().matmul(&f.a_prime().conj_transpose())
}

/// Null-space projector `P = 1_n - G A`. Idempotent, and `A P = 0` to
/// working precision; the homogeneous solutions of `A x = 0` are exactly
/// the vectors `P y`.
pub fn null_projector(g: &ComplexMatrix, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if g.rows() != a.cols() || g.cols() != a.rows() {
        return Err(Error::Dimension(format!(
            "generalized inverse of shape {}x{} does not match matrix {}x{}",
            g.rows(),
            g.cols(),
            a.rows(),
            a.cols()
        )));
    }
    ComplexMatrix::identity(a.cols()).sub(&g.matmul(a)?)
}

/// Homogeneous-space sample `x_h = P y`.
pub fn homogeneous_sample(p: &ComplexMatrix, y: &ComplexVector) -> Result<ComplexVector> {
    if p.rows() != p.cols() {
        return Err(Error::Argument(format!(
            "projector must be square, got {}x{}",
            p.rows(),
            p.cols()
        )));
    }
    p.matvec(y)
}

/// Multi-RHS solve `A X = B`: factorize once, apply to every column of
/// `B` at once. Column `j` of the result is bit-identical to the
/// single-RHS solve of `(A, B e_j)` at the same tolerance.
pub fn solve_matrix_rhs(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    mode: Orientation,
    tol: Option<f64>,
) -> Result<MatrixSolveResult> {
    if b.rows() != a.rows() {
        return Err(Error::Dimension(format!(
            "rhs block has {} rows, expected {}",
            b.rows(),
            a.rows()
        )));
    }
    let tol = resolve_tol(tol, a)?;
    match mode {
        Orientation::RowForm => {
            let f = row_orthonormalize(a, tol)?;
            let a_prime_star = f.a_prime().conj_transpose();
            let b_prime = f.m_matrix().matmul(b)?;
            let x_p = a_prime_star.matmul(&b_prime)?;
            let g = a_prime_star.matmul(f.m_matrix())?;
            let p = null_projector(&g, a)?;
            Ok(MatrixSolveResult { x_p, g, p, rank: f.rank(), factor_tol: tol })
        }
        Orientation::ColumnForm => {
            let f = col_orthonormalize(a, tol)?;
            let a_prime_star = f.a_prime().conj_transpose();
            let t = a_prime_star.matmul(b)?;
            let x_p = f.m_matrix().matmul(&t)?;
            let g = f.m_matrix().matmul(&a_prime_star)?;
            let p = null_projector(&g, a)?;
            Ok(MatrixSolveResult { x_p, g, p, rank: f.rank(), factor_tol: tol })
        }
    }
}

fn resolve_tol(tol: Option<f64>, a: &ComplexMatrix) -> Result<f64> {
    let tol = tol.unwrap_or_else(|| default_factor_tol(a.rows(), a.cols()));
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Error::Argument(format!("tolerance must be positive and finite, got {tol}")))
    }
}

fn resolve_consistency_tol(ctol: Option<f64>, b_norm: f64) -> Result<f64> {
    let ctol = ctol.unwrap_or_else(|| default_consistency_tol(b_norm));
    if ctol.is_finite() && ctol > 0.0 {
        Ok(ctol)
    } else {
        Err(Error::Argument(format!(
            "consistency tolerance must be positive and finite, got {ctol}"
        )))
    }
}
