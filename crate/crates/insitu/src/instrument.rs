//! Deterministic operation counting and complexity profiles.
//!
//! Cost is measured by counting arithmetic, never by wall clock. One op
//! unit is one complex multiply-add; a complex-by-real division and a
//! square root also count one unit each. Every numerical kernel in this
//! crate reports to an [`OpCounter`], so identical inputs always produce
//! identical counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matcore::{ComplexScalar, ComplexVector};
use crate::solve_online::{OnlineColOptions, OnlineColState, OnlineRowOptions, OnlineRowState};

/// Documented slack on the quadratic total-work bound: measured totals
/// must stay below `UPPER_BOUND_FACTOR * 2 * m^2 * n` (row form; `m` and
/// `n` swap roles in column form). Measured constants sit near 0.5; 1.5
/// leaves room for small-dimension overhead without hiding regressions.
pub const UPPER_BOUND_FACTOR: f64 = 1.5;

/// Accumulator for arithmetic work, with optional per-step boundaries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    mul_adds: u64,
    divisions: u64,
    sqrts: u64,
    per_step: Vec<u64>,
    step_mark: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mul_adds(&self) -> u64 {
        self.mul_adds
    }

    pub fn divisions(&self) -> u64 {
        self.divisions
    }

    pub fn sqrts(&self) -> u64 {
        self.sqrts
    }

    /// Total op units so far.
    pub fn total(&self) -> u64 {
        self.mul_adds + self.divisions + self.sqrts
    }

    /// Per-step totals recorded by [`OpCounter::end_step`].
    pub fn per_step(&self) -> &[u64] {
        &self.per_step
    }

    pub(crate) fn record_mul_adds(&mut self, n: u64) {
        self.mul_adds += n;
    }

    pub(crate) fn record_divisions(&mut self, n: u64) {
        self.divisions += n;
    }

    pub(crate) fn record_sqrts(&mut self, n: u64) {
        self.sqrts += n;
    }

    /// Close the current step: append the units spent since the previous
    /// boundary to the per-step record and return them.
    pub fn end_step(&mut self) -> u64 {
        let now = self.total();
        let spent = now - self.step_mark;
        self.per_step.push(spent);
        self.step_mark = now;
        spent
    }
}

/// Least-squares line `y = slope * x + intercept`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Fit a line through `(x_k, y_k)` by ordinary least squares.
/// Needs at least two points.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() {
        return Err(Error::Dimension(format!(
            "fit needs equally many x and y values, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::Argument("line fit needs at least two points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for k in 0..xs.len() {
        let dx = xs[k] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[k] - my);
    }
    if sxx == 0.0 {
        return Err(Error::Argument("line fit needs distinct x values".into()));
    }
    let slope = sxy / sxx;
    Ok(LineFit { slope, intercept: my - slope * mx })
}

/// Outcome of profiling one solver shape over seeded random streams.
///
/// `per_step_fit` is the least-squares line through `(i, units at step i)`
/// restricted to the rising regime `i <= rank`: once every direction is
/// spanned, later steps stop growing and a straight line no longer
/// describes them. For full-rank random streams the fitted slope lands
/// near `2-3x` the stream width, inside the accepted `[2x, 8x]` window
/// around the linear model.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityReport {
    pub per_step_fit: LineFit,
    /// Linear-model floor `4 * m * n` for the full stream.
    pub lower_bound_ops: u64,
    /// Quadratic ceiling `UPPER_BOUND_FACTOR * 2 * m^2 * n` (row form)
    /// or `.. * 2 * m * n^2` (column form).
    pub upper_bound_ops: u64,
    /// True when every trial's slope sits in the window and every trial's
    /// total respects the bounds.
    pub model_consistent: bool,
    /// Largest per-trial total observed.
    pub total_ops: u64,
    /// Per-step units from the first trial.
    pub per_step: Vec<u64>,
    pub steps: usize,
    pub trials: usize,
}

const PROFILE_SEED: u64 = 0x5eed_0b5e_55ab_1e01;

fn trial_seed(m: usize, n: usize, trial: usize) -> u64 {
    PROFILE_SEED
        ^ ((m as u64) << 40)
        ^ ((n as u64) << 20)
        ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn random_scalar(rng: &mut ChaCha8Rng) -> ComplexScalar {
    ComplexScalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> ComplexVector {
    ComplexVector::new((0..dim).map(|_| random_scalar(rng)).collect())
        .expect("random entries are finite")
}

struct TrialOutcome {
    fit: LineFit,
    total: u64,
    rank: usize,
    per_step: Vec<u64>,
}

fn summarize(
    trials: Vec<TrialOutcome>,
    width: f64,
    steps: usize,
    lower: u64,
    upper: u64,
) -> ComplexityReport {
    let k = trials.len() as f64;
    let slope = trials.iter().map(|t| t.fit.slope).sum::<f64>() / k;
    let intercept = trials.iter().map(|t| t.fit.intercept).sum::<f64>() / k;
    let total_ops = trials.iter().map(|t| t.total).max().unwrap_or(0);
    let model_consistent = trials.iter().all(|t| {
        t.fit.slope >= 2.0 * width
            && t.fit.slope <= 8.0 * width
            && t.total <= upper
            && t.total >= lower
    });
    ComplexityReport {
        per_step_fit: LineFit { slope, intercept },
        lower_bound_ops: lower,
        upper_bound_ops: upper,
        model_consistent,
        total_ops,
        per_step: trials.into_iter().next().map(|t| t.per_step).unwrap_or_default(),
        steps,
        trials: k as usize,
    }
}

fn check_profile_args(m: usize, n: usize, trials: usize) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::Argument(format!(
            "profiles need both dimensions at least 2, got {m}x{n}"
        )));
    }
    if trials == 0 {
        return Err(Error::Argument("profiles need at least one trial".into()));
    }
    Ok(())
}

/// Stream `trials` seeded random `m x n` systems through the row-mode
/// online solver and fit the per-step cost model. Identical arguments
/// always yield an identical report.
pub fn profile_row_solver(m: usize, n: usize, trials: usize) -> Result<ComplexityReport> {
    check_profile_args(m, n, trials)?;
    let lower = 4 * (m as u64) * (n as u64);
    let upper = (UPPER_BOUND_FACTOR * 2.0 * (m as f64) * (m as f64) * (n as f64)) as u64;
    let mut outcomes = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(m, n, t));
        let mut state = OnlineRowState::new(n, OnlineRowOptions::default())?;
        for _ in 0..m {
            let row = random_vector(&mut rng, n);
            let b_i = random_scalar(&mut rng);
            state.push(&row, b_i)?;
        }
        let rank = state.rank();
        if rank < 2 {
            return Err(Error::Computation(
                "profile stream degenerated below rank 2".into(),
            ));
        }
        let per_step = state.counter().per_step().to_vec();
        let xs: Vec<f64> = (1..=rank).map(|i| i as f64).collect();
        let ys: Vec<f64> = per_step[..rank].iter().map(|&u| u as f64).collect();
        let fit = fit_line(&xs, &ys)?;
        outcomes.push(TrialOutcome { fit, total: state.counter().total(), rank, per_step });
    }
    debug_assert!(outcomes.iter().all(|t| t.rank == outcomes[0].rank));
    Ok(summarize(outcomes, n as f64, m, lower, upper))
}

/// Column-mode twin of [`profile_row_solver`]: streams `n` columns of
/// length `m`, fits against column length, bounds by `2 * m * n^2`.
pub fn profile_col_solver(m: usize, n: usize, trials: usize) -> Result<ComplexityReport> {
    check_profile_args(m, n, trials)?;
    let lower = 4 * (m as u64) * (n as u64);
    let upper = (UPPER_BOUND_FACTOR * 2.0 * (m as f64) * (n as f64) * (n as f64)) as u64;
    let mut outcomes = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(m, n, t) ^ 0x0c01);
        let b = random_vector(&mut rng, m);
        let mut state = OnlineColState::new(&b, OnlineColOptions::default())?;
        for _ in 0..n {
            let col = random_vector(&mut rng, m);
            state.push(&col)?;
        }
        let rank = state.rank();
        if rank < 2 {
            return Err(Error::Computation(
                "profile stream degenerated below rank 2".into(),
            ));
        }
        let per_step = state.counter().per_step().to_vec();
        let xs: Vec<f64> = (1..=rank).map(|j| j as f64).collect();
        let ys: Vec<f64> = per_step[..rank].iter().map(|&u| u as f64).collect();
        let fit = fit_line(&xs, &ys)?;
        outcomes.push(TrialOutcome { fit, total: state.counter().total(), rank, per_step });
    }
    Ok(summarize(outcomes, m as f64, n, lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_accumulates_and_marks_steps() {
        let mut ops = OpCounter::new();
        ops.record_mul_adds(10);
        ops.record_divisions(2);
        ops.record_sqrts(1);
        assert_eq!(ops.total(), 13);
        assert_eq!(ops.end_step(), 13);
        ops.record_mul_adds(4);
        assert_eq!(ops.end_step(), 4);
        assert_eq!(ops.per_step(), &[13, 4]);
        assert_eq!(ops.total(), 17);
    }

    #[test]
    fn fit_line_exact_points() {
        let fit = fit_line(&[1.0, 2.0, 3.0], &[5.0, 7.0, 9.0]).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 3.0).abs() < 1e-12);
    }

    #[test]
    fn fit_line_rejects_degenerate_input() {
        assert!(fit_line(&[1.0], &[1.0]).is_err());
        assert!(fit_line(&[2.0, 2.0], &[1.0, 3.0]).is_err());
        assert!(fit_line(&[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn profile_rejects_tiny_shapes() {
        assert!(profile_row_solver(1, 4, 1).is_err());
        assert!(profile_row_solver(4, 1, 1).is_err());
        assert!(profile_row_solver(4, 4, 0).is_err());
    }

    #[test]
    fn row_profile_small_is_consistent_and_monotone() {
        let report = profile_row_solver(6, 4, 2).unwrap();
        assert!(report.model_consistent, "report: {report:?}");
        assert_eq!(report.per_step.len(), 6);
        // full-rank prefix costs strictly grow
        for w in report.per_step[..4].windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(report.total_ops >= report.lower_bound_ops);
        assert!(report.total_ops <= report.upper_bound_ops);
    }

    #[test]
    fn col_profile_small_is_consistent() {
        let report = profile_col_solver(4, 6, 2).unwrap();
        assert!(report.model_consistent, "report: {report:?}");
        assert_eq!(report.per_step.len(), 6);
    }

    #[test]
    fn profiles_are_deterministic() {
        let a = profile_row_solver(8, 5, 3).unwrap();
        let b = profile_row_solver(8, 5, 3).unwrap();
        assert_eq!(a, b);
        let c = profile_col_solver(5, 8, 3).unwrap();
        let d = profile_col_solver(5, 8, 3).unwrap();
        assert_eq!(c, d);
    }
}
