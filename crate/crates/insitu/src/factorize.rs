//! Quasi-orthonormal factorizations `M A = A'` (row form) and
//! `A M = A'` (column form).
//!
//! A' carries the rows (or columns) of A orthonormalized in place by
//! modified Gram-Schmidt: each surviving vector has unit norm, vectors
//! that project to numerical zero are overwritten with exact zeros and
//! stay where they are. Every elementary operation applied to A is
//! mirrored on an identity block, which materializes the invertible
//! triangular transform M (lower-triangular in row form, upper-triangular
//! in column form, positive real diagonal). The set S records which
//! positions survived; `|S|` is the numerical rank.
//!
//! Vectors are consumed strictly in arrival order with no pivoting; the
//! same kernel therefore serves batch calls and the streaming states.

use crate::error::{Error, Result};
use crate::instrument::OpCounter;
use crate::matcore::{
    axpy_sub_counted, dot_conj_counted, norm_counted, scale_div_counted, ComplexMatrix,
    ComplexScalar, IndexSet, C_ONE, C_ZERO,
};

/// Which side of A the transform M acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `M A = A'`: rows are orthonormalized, M is `m x m` lower-triangular.
    RowForm,
    /// `A M = A'`: columns are orthonormalized, M is `n x n` upper-triangular.
    ColumnForm,
}

/// Fraction of the original norm below which a candidate gets one more
/// projection pass before the zero decision. Cheap insurance against a
/// single modified-Gram-Schmidt pass misjudging a nearly dependent vector.
const REORTH_FRACTION: f64 = 1e-3;

/// Default zero tolerance for an `m x n` input.
pub fn default_factor_tol(rows: usize, cols: usize) -> f64 {
    1e-10 * rows.max(cols) as f64
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!("tolerance must be positive and finite, got {tol}")))
    }
}

/// Result of orthonormalizing: `a_prime`, the transform `m_matrix`, and
/// the surviving positions `s_set` (1-based).
///
/// Invariants, verified across the test suite rather than at runtime:
/// rows (columns) of `a_prime` listed in `s_set` are orthonormal, the
/// rest are exactly zero; `m_matrix * a` (`a * m_matrix`) reproduces
/// `a_prime` to factorization tolerance; `m_matrix` is triangular with
/// positive real diagonal, hence invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiOrthFactorization {
    a_prime: ComplexMatrix,
    m_matrix: ComplexMatrix,
    s_set: IndexSet,
    orientation: Orientation,
    tol: f64,
}

impl QuasiOrthFactorization {
    pub fn a_prime(&self) -> &ComplexMatrix {
        &self.a_prime
    }

    pub fn m_matrix(&self) -> &ComplexMatrix {
        &self.m_matrix
    }

    pub fn s_set(&self) -> &IndexSet {
        &self.s_set
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Numerical rank: the number of surviving vectors.
    pub fn rank(&self) -> usize {
        self.s_set.len()
    }
}

/// Outcome of one factorization step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    /// 1-based position of the vector just consumed.
    pub index: usize,
    /// True when the vector was (numerically) dependent and got zeroed.
    pub was_dependent: bool,
}

/// Incremental row-form factorization: feed rows one at a time.
///
/// After `i` steps the state holds exactly the factorization of the
/// `i`-row prefix; already-processed rows are never revisited.
#[derive(Clone, Debug)]
pub struct RowFactorState {
    n: usize,
    tol: f64,
    q_rows: Vec<Vec<ComplexScalar>>,
    // row i keeps its leading i+1 coefficients; the rest are zero
    m_rows: Vec<Vec<ComplexScalar>>,
    nonzero: Vec<bool>,
}

impl RowFactorState {
    pub fn new(n: usize, tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("row length must be at least 1".into()));
        }
        check_tol(tol)?;
        Ok(Self { n, tol, q_rows: Vec::new(), m_rows: Vec::new(), nonzero: Vec::new() })
    }

    /// Row length every step must match.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Rows consumed so far.
    pub fn processed(&self) -> usize {
        self.q_rows.len()
    }

    /// Surviving (orthonormal) rows so far.
    pub fn rank(&self) -> usize {
        self.nonzero.iter().filter(|&&z| z).count()
    }

    /// Orthonormalized row `i` (exact zeros if it was dependent).
    pub fn q_row(&self, i: usize) -> &[ComplexScalar] {
        &self.q_rows[i]
    }

    /// Leading `i + 1` transform coefficients of M row `i`.
    pub fn m_row(&self, i: usize) -> &[ComplexScalar] {
        &self.m_rows[i]
    }

    pub fn is_nonzero_row(&self, i: usize) -> bool {
        self.nonzero[i]
    }

    fn project_out(
        &self,
        v: &mut [ComplexScalar],
        m_row: &mut [ComplexScalar],
        ops: &mut OpCounter,
    ) {
        for k in 0..self.q_rows.len() {
            if !self.nonzero[k] {
                continue;
            }
            let c = dot_conj_counted(&self.q_rows[k], v, ops);
            axpy_sub_counted(v, c, &self.q_rows[k], ops);
            axpy_sub_counted(&mut m_row[..=k], c, &self.m_rows[k], ops);
        }
    }

    /// Consume the next row. Work is reported to `ops`.
    pub fn step(&mut self, row: &[ComplexScalar], ops: &mut OpCounter) -> Result<StepOutcome> {
        if row.len() != self.n {
            return Err(Error::Dimension(format!(
                "expected a row of length {}, got {}",
                self.n,
                row.len()
            )));
        }
        let i = self.q_rows.len();
        let mut v = row.to_vec();
        let mut m_row = vec![C_ZERO; i + 1];
        m_row[i] = C_ONE;

        let orig_norm = norm_counted(&v, ops);
        if !orig_norm.is_finite() {
            return Err(Error::Computation(format!("norm of row {} overflowed", i + 1)));
        }
        self.project_out(&mut v, &mut m_row, ops);
        let mut norm = norm_counted(&v, ops);
        let threshold = self.tol * orig_norm.max(1.0);
        if norm > threshold && norm < REORTH_FRACTION * orig_norm {
            // ambiguous zone only: a vector already at the zero threshold
            // goes straight to the zero decision
            self.project_out(&mut v, &mut m_row, ops);
            norm = norm_counted(&v, ops);
        }
        let dependent = norm <= threshold;
        if dependent {
            v.iter_mut().for_each(|z| *z = C_ZERO);
        } else {
            if !norm.is_finite() {
                return Err(Error::Computation(format!(
                    "projection of row {} overflowed",
                    i + 1
                )));
            }
            scale_div_counted(&mut v, norm, ops);
            scale_div_counted(&mut m_row, norm, ops);
        }
        self.nonzero.push(!dependent);
        self.q_rows.push(v);
        self.m_rows.push(m_row);
        Ok(StepOutcome { index: i + 1, was_dependent: dependent })
    }

    /// Package the state. Errors if no rows were consumed.
    pub fn into_factorization(self) -> Result<QuasiOrthFactorization> {
        let m = self.q_rows.len();
        if m == 0 {
            return Err(Error::State("no rows processed yet".into()));
        }
        let a_prime = ComplexMatrix::from_rows(&self.q_rows)?;
        let mut m_matrix = ComplexMatrix::zeros(m, m);
        for (i, coeffs) in self.m_rows.iter().enumerate() {
            for (k, &c) in coeffs.iter().enumerate() {
                m_matrix.set(i, k, c);
            }
        }
        let members = self.nonzero.iter().enumerate().filter(|(_, &z)| z).map(|(i, _)| i + 1);
        let s_set = IndexSet::new(m, members)?;
        Ok(QuasiOrthFactorization {
            a_prime,
            m_matrix,
            s_set,
            orientation: Orientation::RowForm,
            tol: self.tol,
        })
    }
}

/// Incremental column-form factorization: feed columns one at a time.
#[derive(Clone, Debug)]
pub struct ColFactorState {
    m: usize,
    tol: f64,
    q_cols: Vec<Vec<ComplexScalar>>,
    // column j keeps its leading j+1 coefficients M[0..=j, j]
    m_cols: Vec<Vec<ComplexScalar>>,
    nonzero: Vec<bool>,
}

impl ColFactorState {
    pub fn new(m: usize, tol: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Argument("column length must be at least 1".into()));
        }
        check_tol(tol)?;
        Ok(Self { m, tol, q_cols: Vec::new(), m_cols: Vec::new(), nonzero: Vec::new() })
    }

    /// Column length every step must match.
    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn processed(&self) -> usize {
        self.q_cols.len()
    }

    pub fn rank(&self) -> usize {
        self.nonzero.iter().filter(|&&z| z).count()
    }

    pub fn q_col(&self, j: usize) -> &[ComplexScalar] {
        &self.q_cols[j]
    }

    /// Leading `j + 1` transform coefficients of M column `j`.
    pub fn m_col(&self, j: usize) -> &[ComplexScalar] {
        &self.m_cols[j]
    }

    pub fn is_nonzero_col(&self, j: usize) -> bool {
        self.nonzero[j]
    }

    fn project_out(
        &self,
        v: &mut [ComplexScalar],
        m_col: &mut [ComplexScalar],
        ops: &mut OpCounter,
    ) {
        for k in 0..self.q_cols.len() {
            if !self.nonzero[k] {
                continue;
            }
            let c = dot_conj_counted(&self.q_cols[k], v, ops);
            axpy_sub_counted(v, c, &self.q_cols[k], ops);
            axpy_sub_counted(&mut m_col[..=k], c, &self.m_cols[k], ops);
        }
    }

    /// Consume the next column. Work is reported to `ops`.
    pub fn step(&mut self, col: &[ComplexScalar], ops: &mut OpCounter) -> Result<StepOutcome> {
        if col.len() != self.m {
            return Err(Error::Dimension(format!(
                "expected a column of length {}, got {}",
                self.m,
                col.len()
            )));
        }
        let j = self.q_cols.len();
        let mut v = col.to_vec();
        let mut m_col = vec![C_ZERO; j + 1];
        m_col[j] = C_ONE;

        let orig_norm = norm_counted(&v, ops);
        if !orig_norm.is_finite() {
            return Err(Error::Computation(format!("norm of column {} overflowed", j + 1)));
        }
        self.project_out(&mut v, &mut m_col, ops);
        let mut norm = norm_counted(&v, ops);
        let threshold = self.tol * orig_norm.max(1.0);
        if norm > threshold && norm < REORTH_FRACTION * orig_norm {
            self.project_out(&mut v, &mut m_col, ops);
            norm = norm_counted(&v, ops);
        }
        let dependent = norm <= threshold;
        if dependent {
            v.iter_mut().for_each(|z| *z = C_ZERO);
        } else {
            if !norm.is_finite() {
                return Err(Error::Computation(format!(
                    "projection of column {} overflowed",
                    j + 1
                )));
            }
            scale_div_counted(&mut v, norm, ops);
            scale_div_counted(&mut m_col, norm, ops);
        }
        self.nonzero.push(!dependent);
        self.q_cols.push(v);
        self.m_cols.push(m_col);
        Ok(StepOutcome { index: j + 1, was_dependent: dependent })
    }

    /// Package the state. Errors if no columns were consumed.
    pub fn into_factorization(self) -> Result<QuasiOrthFactorization> {
        let n = self.q_cols.len();
        if n == 0 {
            return Err(Error::State("no columns processed yet".into()));
        }
        let mut a_prime = ComplexMatrix::zeros(self.m, n);
        for (j, col) in self.q_cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                a_prime.set(i, j, z);
            }
        }
        let mut m_matrix = ComplexMatrix::zeros(n, n);
        for (j, coeffs) in self.m_cols.iter().enumerate() {
            for (k, &c) in coeffs.iter().enumerate() {
                m_matrix.set(k, j, c);
            }
        }
        let members = self.nonzero.iter().enumerate().filter(|(_, &z)| z).map(|(j, _)| j + 1);
        let s_set = IndexSet::new(n, members)?;
        Ok(QuasiOrthFactorization {
            a_prime,
            m_matrix,
            s_set,
            orientation: Orientation::ColumnForm,
            tol: self.tol,
        })
    }
}

/// Orthonormalize the rows of `a`: returns M, A', S with `M a = A'`.
pub fn row_orthonormalize(a: &ComplexMatrix, tol: f64) -> Result<QuasiOrthFactorization> {
    let mut state = RowFactorState::new(a.cols(), tol)?;
    let mut ops = OpCounter::new();
    for i in 0..a.rows() {
        state.step(a.row_slice(i), &mut ops)?;
    }
    state.into_factorization()
}

/// Orthonormalize the columns of `a`: returns M, A', S with `a M = A'`.
pub fn col_orthonormalize(a: &ComplexMatrix, tol: f64) -> Result<QuasiOrthFactorization> {
    let mut state = ColFactorState::new(a.rows(), tol)?;
    let mut ops = OpCounter::new();
    for j in 0..a.cols() {
        state.step(&a.col_vec(j), &mut ops)?;
    }
    state.into_factorization()
}
