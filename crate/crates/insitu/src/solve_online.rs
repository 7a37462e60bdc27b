//! Streaming solvers: the factorization, the solution and the
//! generalized inverse are all built one vector at a time.
//!
//! Row mode ingests augmented rows `(a_i, b_i)`. Step `i` orthonormalizes
//! the new row against the processed prefix, forms `b'_i` from the same
//! transform row, and adds the solution increment
//! `x^(i) = conj(q_i) * b'_i`. Increments are mutually orthogonal, so the
//! running solution norm never decreases and the final accumulator equals
//! the batch minimum-norm solution of everything seen. Optionally the
//! generalized inverse accumulates as a sum of outer products
//! `G = sum_i conj(q_i) row_i(M)`.
//!
//! Column mode needs the right-hand side up front. Step `j` extends the
//! solution by one coordinate with increment
//! `x^(j) = col_j(M) * (conj(q_j) . b)`; finalize equals the batch
//! least-squares solve. Column increments are not orthogonal, so no
//! monotone-norm guarantee applies there.
//!
//! Finalizing consumes the state, which makes use-after-finalize
//! unrepresentable; finalizing early is legal and yields the solve of
//! the prefix consumed so far.

use crate::error::{Error, Result};
use crate::factorize::{ColFactorState, RowFactorState};
use crate::instrument::OpCounter;
use crate::matcore::{
    dot_plain_counted, is_finite_scalar, ComplexMatrix, ComplexScalar, ComplexVector, C_ZERO,
};
use crate::solve_batch::{default_consistency_tol, null_projector, SolveResult};

/// Options for [`OnlineRowState`].
#[derive(Clone, Copy, Debug, Default)]
pub struct OnlineRowOptions {
    /// Factorization zero tolerance. `None` means `1e-10 * n`: the
    /// eventual row count is unknown to a stream, so only the row length
    /// enters the default (batch defaults also scale with the larger
    /// dimension; pass an explicit tolerance to match a batch call
    /// exactly when `m > n`).
    pub tol: Option<f64>,
    /// Accumulate the generalized inverse alongside the solution.
    pub track_g: bool,
    /// Threshold on `|b'_i|` for flagging a contradictory dependent row;
    /// `None` means `1e-8 * max(1, |b prefix|)`.
    pub consistency_tol: Option<f64>,
}

/// Options for [`OnlineColState`].
#[derive(Clone, Copy, Debug, Default)]
pub struct OnlineColOptions {
    /// Factorization zero tolerance; `None` means `1e-10 * m`.
    pub tol: Option<f64>,
    /// Accumulate the generalized inverse alongside the solution.
    pub track_g: bool,
}

/// Per-push outcome in row mode.
#[derive(Clone, Debug)]
pub struct RowPushReport {
    /// Solution increment added by this row (exact zeros for a
    /// dependent row).
    pub increment: ComplexVector,
    /// The row was numerically dependent on the prefix.
    pub was_dependent: bool,
    /// The row was dependent AND its transformed right-hand side entry
    /// exceeded the consistency threshold: the stream is contradictory.
    pub inconsistent: bool,
    /// Op units spent on this push.
    pub ops_used: u64,
}

/// Per-push outcome in column mode.
#[derive(Clone, Debug)]
pub struct ColPushReport {
    /// Solution increment; its dimension equals the number of columns
    /// seen, the new coordinate being the last entry (zero for a
    /// dependent column).
    pub increment: ComplexVector,
    pub was_dependent: bool,
    pub ops_used: u64,
}

/// Row-at-a-time solver state for `A x = b` with `[A | b]` streamed.
#[derive(Clone, Debug)]
pub struct OnlineRowState {
    factor: RowFactorState,
    a_rows: Vec<Vec<ComplexScalar>>,
    b: Vec<ComplexScalar>,
    b_norm_sq: f64,
    x_acc: Vec<ComplexScalar>,
    // column k of the accumulating G, length n
    g_cols: Option<Vec<Vec<ComplexScalar>>>,
    norm_history: Vec<f64>,
    consistency_tol: Option<f64>,
    inconsistent: bool,
    counter: OpCounter,
}

impl OnlineRowState {
    /// `n` is the row length (number of unknowns).
    pub fn new(n: usize, opts: OnlineRowOptions) -> Result<Self> {
        let tol = opts.tol.unwrap_or(1e-10 * n as f64);
        let factor = RowFactorState::new(n, tol)?;
        if let Some(ct) = opts.consistency_tol {
            if !(ct.is_finite() && ct > 0.0) {
                return Err(Error::Argument(format!(
                    "consistency tolerance must be positive and finite, got {ct}"
                )));
            }
        }
        Ok(Self {
            factor,
            a_rows: Vec::new(),
            b: Vec::new(),
            b_norm_sq: 0.0,
            x_acc: vec![C_ZERO; n],
            g_cols: opts.track_g.then(Vec::new),
            norm_history: Vec::new(),
            consistency_tol: opts.consistency_tol,
            inconsistent: false,
            counter: OpCounter::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.factor.dim()
    }

    pub fn rows_seen(&self) -> usize {
        self.factor.processed()
    }

    pub fn rank(&self) -> usize {
        self.factor.rank()
    }

    /// Sticky: true once any contradictory dependent row has arrived.
    pub fn inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Running solution norm after each push; non-decreasing because the
    /// increments are mutually orthogonal.
    pub fn norm_history(&self) -> &[f64] {
        &self.norm_history
    }

    /// Arithmetic spent so far, with one per-step entry per push.
    pub fn counter(&self) -> &OpCounter {
        &self.counter
    }

    /// Current solution accumulator (the minimum-norm solution of the
    /// prefix consumed so far).
    pub fn current_solution(&self) -> ComplexVector {
        ComplexVector::from_computed(self.x_acc.clone()).expect("accumulator stays finite")
    }

    /// Ingest one augmented row.
    pub fn push(&mut self, a_row: &ComplexVector, b_i: ComplexScalar) -> Result<RowPushReport> {
        if a_row.dim() != self.dim() {
            return Err(Error::Dimension(format!(
                "expected a row of length {}, got {}",
                self.dim(),
                a_row.dim()
            )));
        }
        if !is_finite_scalar(b_i) {
            return Err(Error::NonFinite("right-hand side entry".into()));
        }
        let i = self.rows_seen();
        let outcome = self.factor.step(a_row.as_slice(), &mut self.counter)?;

        self.a_rows.push(a_row.as_slice().to_vec());
        self.b.push(b_i);
        self.b_norm_sq += b_i.norm_sqr();
        self.counter.record_mul_adds(1);

        // final M row i is ready now, so b'_i is a prefix dot with b
        let b_prime_i = dot_plain_counted(self.factor.m_row(i), &self.b[..=i], &mut self.counter);

        let mut step_inconsistent = false;
        if outcome.was_dependent {
            let ctol = self
                .consistency_tol
                .unwrap_or_else(|| default_consistency_tol(self.b_norm_sq.sqrt()));
            self.counter.record_sqrts(1);
            if b_prime_i.norm() > ctol {
                step_inconsistent = true;
                self.inconsistent = true;
            }
        }

        // increment = conj(q_i) * b'_i; exact zeros when the row was
        // dependent, so a contradictory b'_i never leaks into x
        let q_i = self.factor.q_row(i);
        let mut dx = vec![C_ZERO; self.dim()];
        for (t, &q) in dx.iter_mut().zip(q_i) {
            *t = q.conj() * b_prime_i;
        }
        self.counter.record_mul_adds(self.dim() as u64);
        for (acc, &d) in self.x_acc.iter_mut().zip(&dx) {
            *acc += d;
        }
        self.counter.record_mul_adds(self.dim() as u64);

        if let Some(g_cols) = &mut self.g_cols {
            g_cols.push(vec![C_ZERO; q_i.len()]);
            let m_row = self.factor.m_row(i).to_vec();
            for (k, &coeff) in m_row.iter().enumerate() {
                for (g, &q) in g_cols[k].iter_mut().zip(q_i) {
                    *g += coeff * q.conj();
                }
            }
            self.counter.record_mul_adds(((i + 1) * self.dim()) as u64);
        }

        let mut norm_sq = 0.0;
        for z in &self.x_acc {
            norm_sq += z.norm_sqr();
        }
        self.counter.record_mul_adds(self.dim() as u64);
        self.counter.record_sqrts(1);
        self.norm_history.push(norm_sq.sqrt());

        let ops_used = self.counter.end_step();
        Ok(RowPushReport {
            increment: ComplexVector::from_computed(dx)?,
            was_dependent: outcome.was_dependent,
            inconsistent: step_inconsistent,
            ops_used,
        })
    }

    /// Close the stream. The result equals the batch minimum-norm solve
    /// of all rows seen; with G tracking on, `g` is populated and
    /// `p = 1 - G A` is derived from it. A stream with no rows yields
    /// the zero solution with rank 0.
    pub fn finalize(self) -> Result<SolveResult> {
        let n = self.dim();
        let m = self.rows_seen();
        let rank = self.rank();
        let factor_tol = self.factor.tol();
        let x_p = ComplexVector::from_computed(self.x_acc)?;

        let (residual_norm, g, p) = if m == 0 {
            (0.0, None, None)
        } else {
            let a = ComplexMatrix::from_rows(&self.a_rows)?;
            let ax = a.matvec(&x_p)?;
            let mut acc = 0.0;
            for (i, &bi) in self.b.iter().enumerate() {
                acc += (ax.get(i) - bi).norm_sqr();
            }
            let residual = acc.sqrt();
            let (g, p) = match self.g_cols {
                Some(cols) => {
                    let mut g = ComplexMatrix::zeros(n, m);
                    for (k, col) in cols.iter().enumerate() {
                        for (j, &z) in col.iter().enumerate() {
                            g.set(j, k, z);
                        }
                    }
                    let p = null_projector(&g, &a)?;
                    (Some(g), Some(p))
                }
                None => (None, None),
            };
            (residual, g, p)
        };

        let consistency_tol = self
            .consistency_tol
            .unwrap_or_else(|| default_consistency_tol(self.b_norm_sq.sqrt()));
        Ok(SolveResult {
            x_p,
            g,
            p,
            rank,
            residual_norm,
            b_projected_norm: None,
            inconsistent: self.inconsistent || residual_norm > consistency_tol,
            factor_tol,
            consistency_tol,
        })
    }
}

/// Column-at-a-time solver state; the right-hand side is fixed up front
/// and each push extends the solution by one coordinate.
#[derive(Clone, Debug)]
pub struct OnlineColState {
    factor: ColFactorState,
    b: Vec<ComplexScalar>,
    a_cols: Vec<Vec<ComplexScalar>>,
    x_acc: Vec<ComplexScalar>,
    // row j of the accumulating G, length m
    g_rows: Option<Vec<Vec<ComplexScalar>>>,
    counter: OpCounter,
}

impl OnlineColState {
    pub fn new(b: &ComplexVector, opts: OnlineColOptions) -> Result<Self> {
        let m = b.dim();
        let tol = opts.tol.unwrap_or(1e-10 * m as f64);
        let factor = ColFactorState::new(m, tol)?;
        Ok(Self {
            factor,
            b: b.as_slice().to_vec(),
            a_cols: Vec::new(),
            x_acc: Vec::new(),
            g_rows: opts.track_g.then(Vec::new),
            counter: OpCounter::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.factor.dim()
    }

    pub fn cols_seen(&self) -> usize {
        self.factor.processed()
    }

    pub fn rank(&self) -> usize {
        self.factor.rank()
    }

    pub fn counter(&self) -> &OpCounter {
        &self.counter
    }

    /// Ingest one column of A.
    pub fn push(&mut self, a_col: &ComplexVector) -> Result<ColPushReport> {
        if a_col.dim() != self.dim() {
            return Err(Error::Dimension(format!(
                "expected a column of length {}, got {}",
                self.dim(),
                a_col.dim()
            )));
        }
        let j = self.cols_seen();
        let outcome = self.factor.step(a_col.as_slice(), &mut self.counter)?;
        self.a_cols.push(a_col.as_slice().to_vec());

        // s = conj(q_j) . b, the new coefficient along the j-th direction
        let q_j = self.factor.q_col(j);
        let mut s = C_ZERO;
        for (q, &bv) in q_j.iter().zip(&self.b) {
            s += q.conj() * bv;
        }
        self.counter.record_mul_adds(self.dim() as u64);

        let m_col = self.factor.m_col(j);
        let mut dx = vec![C_ZERO; j + 1];
        for (t, &c) in dx.iter_mut().zip(m_col) {
            *t = c * s;
        }
        self.counter.record_mul_adds((j + 1) as u64);

        self.x_acc.push(C_ZERO);
        for (acc, &d) in self.x_acc.iter_mut().zip(&dx) {
            *acc += d;
        }
        self.counter.record_mul_adds((j + 1) as u64);

        if let Some(g_rows) = &mut self.g_rows {
            g_rows.push(vec![C_ZERO; self.b.len()]);
            let m_col = self.factor.m_col(j).to_vec();
            let q_j = self.factor.q_col(j);
            for (k, &coeff) in m_col.iter().enumerate() {
                for (g, &q) in g_rows[k].iter_mut().zip(q_j) {
                    *g += coeff * q.conj();
                }
            }
            self.counter.record_mul_adds(((j + 1) * self.b.len()) as u64);
        }

        let ops_used = self.counter.end_step();
        Ok(ColPushReport {
            increment: ComplexVector::from_computed(dx)?,
            was_dependent: outcome.was_dependent,
            ops_used,
        })
    }

    /// Close the stream. Equals the batch least-squares solve of the
    /// columns seen; errors if no column was ever pushed (there is no
    /// zero-column system).
    pub fn finalize(self) -> Result<SolveResult> {
        let n = self.cols_seen();
        if n == 0 {
            return Err(Error::State("no columns pushed before finalize".into()));
        }
        let m = self.dim();
        let rank = self.factor.rank();
        let factor_tol = self.factor.tol();
        let x_p = ComplexVector::from_computed(self.x_acc)?;
        let b = ComplexVector::from_computed(self.b.clone())?;

        let mut a = ComplexMatrix::zeros(m, n);
        for (j, col) in self.a_cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                a.set(i, j, z);
            }
        }

        let f = self.factor.into_factorization()?;
        let t = f.a_prime().conj_transpose().matvec(&b)?;
        let b_c = f.a_prime().matvec(&t)?;
        let residual_norm = a.matvec(&x_p)?.sub(&b_c)?.norm2();
        let b_projected_norm = b.sub(&b_c)?.norm2();

        let (g, p) = match self.g_rows {
            Some(rows) => {
                let mut g = ComplexMatrix::zeros(n, m);
                for (j, row) in rows.iter().enumerate() {
                    for (k, &z) in row.iter().enumerate() {
                        g.set(j, k, z);
                    }
                }
                let p = null_projector(&g, &a)?;
                (Some(g), Some(p))
            }
            None => (None, None),
        };

        Ok(SolveResult {
            x_p,
            g,
            p,
            rank,
            residual_norm,
            b_projected_norm: Some(b_projected_norm),
            inconsistent: false,
            factor_tol,
            consistency_tol: default_consistency_tol(b.norm2()),
        })
    }
}
