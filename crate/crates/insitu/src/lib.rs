//! Solvers for `A x = b` that orthonormalize A in place, inside the
//! system, instead of factoring it off to the side.
//!
//! Row form applies an invertible transform M on the left, `M A = A'`,
//! turning the rows of A into a quasi-orthonormal list (unit rows plus
//! exact zero rows where dependence was detected). The transformed
//! system `A' x = M b` then reads off the minimum-norm solution
//! `x_p = (A')* M b` and a generalized inverse `G = (A')* M`. Column
//! form multiplies on the right, `A M = A'`, and yields a least-squares
//! solution `x_p = M (A')* b` with `G = M (A')*`.
//!
//! Because vectors are consumed strictly in order, the same arithmetic
//! runs online: [`solve_online`] consumes one row (or column) at a time
//! and accumulates the solution, with per-step costs available through
//! [`instrument`].
//!
//! Convention fixed crate-wide: complex inner products conjugate the
//! FIRST argument, `inner(u, v) = sum conj(u_k) v_k`.
//!
//! ```
//! use insitu::{solve_row_minnorm, ComplexMatrix, ComplexVector, SolveOptions};
//!
//! // x1 + x2 = 2 has many solutions; the minimum-norm one is (1, 1)
//! let a = ComplexMatrix::from_real(&[&[1.0, 1.0]]).unwrap();
//! let b = ComplexVector::from_real(&[2.0]).unwrap();
//! let r = solve_row_minnorm(&a, &b, &SolveOptions::default()).unwrap();
//! assert!((r.x_p.get(0).re - 1.0).abs() < 1e-12);
//! assert!((r.x_p.get(1).re - 1.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod factorize;
pub mod instrument;
pub mod matcore;
pub mod penrose;
pub mod solve_batch;
pub mod solve_online;

pub use error::{Error, Result};
pub use factorize::{
    col_orthonormalize, default_factor_tol, row_orthonormalize, ColFactorState, Orientation,
    QuasiOrthFactorization, RowFactorState, StepOutcome,
};
pub use instrument::{
    fit_line, profile_col_solver, profile_row_solver, ComplexityReport, LineFit, OpCounter,
    UPPER_BOUND_FACTOR,
};
pub use matcore::{index_matrix, ComplexMatrix, ComplexScalar, ComplexVector, IndexSet};
pub use penrose::{
    classify_col_method, classify_row_method, default_penrose_tol, penrose_check, PenroseReport,
};
pub use solve_batch::{
    default_consistency_tol, gen_inverse_col, gen_inverse_row, homogeneous_sample, null_projector,
    project_column_space, solve_col_lsq, solve_matrix_rhs, solve_row_minnorm, MatrixSolveResult,
    SolveOptions, SolveResult,
};
pub use solve_online::{
    ColPushReport, OnlineColOptions, OnlineColState, OnlineRowOptions, OnlineRowState,
    RowPushReport,
};
