//! Dense complex matrices, vectors and index sets.
//!
//! Everything downstream works over `Complex<f64>`. Matrices are dense and
//! row-major. Public constructors reject NaN and infinite entries, so the
//! solvers only ever see finite data; arithmetic that overflows mid-flight
//! surfaces [`Error::Computation`] instead of propagating NaN.
//!
//! Convention used everywhere in this crate: the inner product
//! `inner(u, v) = sum_k conj(u_k) * v_k` is conjugate-linear in its FIRST
//! argument, so `inner(v, v)` is the squared Euclidean norm.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::instrument::OpCounter;

/// Scalar type used throughout: double-precision complex.
pub type ComplexScalar = Complex<f64>;

pub(crate) const C_ZERO: ComplexScalar = Complex::new(0.0, 0.0);
pub(crate) const C_ONE: ComplexScalar = Complex::new(1.0, 0.0);

#[inline]
pub(crate) fn is_finite_scalar(z: ComplexScalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn check_all_finite(data: &[ComplexScalar], what: &str) -> Result<()> {
    if data.iter().all(|&z| is_finite_scalar(z)) {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{what} contains NaN or infinity")))
    }
}

fn check_computed(data: &[ComplexScalar], what: &str) -> Result<()> {
    if data.iter().all(|&z| is_finite_scalar(z)) {
        Ok(())
    } else {
        Err(Error::Computation(format!("{what} overflowed to NaN or infinity")))
    }
}

// ── counted slice kernels ────────────────────────────────────────────────
//
// Every kernel reports its work to an `OpCounter`; one unit is one complex
// multiply-add (divisions and square roots also count one unit each). The
// factorization and the streaming solvers are built exclusively on these,
// which is what makes the profiles deterministic.

/// `sum_k conj(u_k) * v_k`, conjugate-linear in the first argument.
pub(crate) fn dot_conj_counted(
    u: &[ComplexScalar],
    v: &[ComplexScalar],
    ops: &mut OpCounter,
) -> ComplexScalar {
    debug_assert_eq!(u.len(), v.len());
    let mut acc = C_ZERO;
    for k in 0..u.len() {
        acc += u[k].conj() * v[k];
    }
    ops.record_mul_adds(u.len() as u64);
    acc
}

/// Plain (unconjugated) product sum `sum_k u_k * v_k`.
pub(crate) fn dot_plain_counted(
    u: &[ComplexScalar],
    v: &[ComplexScalar],
    ops: &mut OpCounter,
) -> ComplexScalar {
    debug_assert_eq!(u.len(), v.len());
    let mut acc = C_ZERO;
    for k in 0..u.len() {
        acc += u[k] * v[k];
    }
    ops.record_mul_adds(u.len() as u64);
    acc
}

/// `y -= c * x` elementwise.
pub(crate) fn axpy_sub_counted(
    y: &mut [ComplexScalar],
    c: ComplexScalar,
    x: &[ComplexScalar],
    ops: &mut OpCounter,
) {
    debug_assert_eq!(y.len(), x.len());
    for k in 0..y.len() {
        y[k] -= c * x[k];
    }
    ops.record_mul_adds(y.len() as u64);
}

/// Euclidean norm of a slice.
pub(crate) fn norm_counted(v: &[ComplexScalar], ops: &mut OpCounter) -> f64 {
    let mut acc = 0.0f64;
    for z in v {
        acc += z.norm_sqr();
    }
    ops.record_mul_adds(v.len() as u64);
    ops.record_sqrts(1);
    acc.sqrt()
}

/// Divide every entry by a positive real.
pub(crate) fn scale_div_counted(v: &mut [ComplexScalar], d: f64, ops: &mut OpCounter) {
    for z in v.iter_mut() {
        *z /= d;
    }
    ops.record_divisions(v.len() as u64);
}

// ── ComplexMatrix ────────────────────────────────────────────────────────

/// Dense row-major complex matrix with at least one row and one column.
///
/// Entry access is 0-based. All entries are finite by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    /// Build from row-major data. `data.len()` must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<ComplexScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Argument(format!(
                "matrix dimensions must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Argument(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        check_all_finite(&data, "matrix data")?;
        Ok(Self { rows, cols, data })
    }

    /// Internal constructor for data produced by crate arithmetic.
    pub(crate) fn from_computed(rows: usize, cols: usize, data: Vec<ComplexScalar>) -> Result<Self> {
        debug_assert!(rows >= 1 && cols >= 1 && data.len() == rows * cols);
        check_computed(&data, "matrix result")?;
        Ok(Self { rows, cols, data })
    }

    /// Build from complex rows; all rows must have equal nonzero length.
    pub fn from_rows(rows: &[Vec<ComplexScalar>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Argument("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Argument("rows have unequal lengths".into()));
        }
        let data: Vec<ComplexScalar> = rows.iter().flatten().copied().collect();
        Self::new(rows.len(), cols, data)
    }

    /// Build a real-valued matrix from rows of `f64`.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Argument("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Argument("rows have unequal lengths".into()));
        }
        let data: Vec<ComplexScalar> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex::new(x, 0.0)))
            .collect();
        Self::new(rows.len(), cols, data)
    }

    /// All-zero matrix. Panics if a dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be at least 1x1");
        Self { rows, cols, data: vec![C_ZERO; rows * cols] }
    }

    /// Identity of order `n`. Panics if `n` is zero.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C_ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: ComplexScalar) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a contiguous slice.
    pub fn row_slice(&self, i: usize) -> &[ComplexScalar] {
        assert!(i < self.rows, "row {i} out of bounds");
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` copied out.
    pub fn col_vec(&self, j: usize) -> Vec<ComplexScalar> {
        assert!(j < self.cols, "column {j} out of bounds");
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.data
    }

    /// Conjugate transpose `A*`: entry `(i,j)` becomes `conj(A[j,i])`.
    ///
    /// Self-inverse: `a.conj_transpose().conj_transpose()` is bitwise `a`.
    pub fn conj_transpose(&self) -> ComplexMatrix {
        let mut data = vec![C_ZERO; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        ComplexMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product `self * rhs`, accumulating over `k` in ascending
    /// order so results are reproducible bit for bit.
    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut scratch = OpCounter::new();
        self.matmul_counted(rhs, &mut scratch)
    }

    /// [`ComplexMatrix::matmul`] with the work reported to `ops`.
    pub fn matmul_counted(&self, rhs: &ComplexMatrix, ops: &mut OpCounter) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = vec![C_ZERO; self.rows * rhs.cols];
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = C_ZERO;
                for k in 0..self.cols {
                    acc += self.data[i * self.cols + k] * rhs.data[k * rhs.cols + j];
                }
                data[i * rhs.cols + j] = acc;
            }
        }
        ops.record_mul_adds((self.rows * rhs.cols * self.cols) as u64);
        ComplexMatrix::from_computed(self.rows, rhs.cols, data)
    }

    /// Matrix-vector product `self * v` with the same accumulation order
    /// as [`ComplexMatrix::matmul`] on a one-column matrix.
    pub fn matvec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        let mut scratch = OpCounter::new();
        self.matvec_counted(v, &mut scratch)
    }

    /// [`ComplexMatrix::matvec`] with the work reported to `ops`.
    pub fn matvec_counted(&self, v: &ComplexVector, ops: &mut OpCounter) -> Result<ComplexVector> {
        if self.cols != v.dim() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} to a vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let mut data = vec![C_ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = C_ZERO;
            for k in 0..self.cols {
                acc += self.data[i * self.cols + k] * v.data[k];
            }
            data[i] = acc;
        }
        ops.record_mul_adds((self.rows * self.cols) as u64);
        ComplexVector::from_computed(data)
    }

    /// Elementwise difference `self - rhs`.
    pub fn sub(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "cannot subtract {}x{} from {}x{}",
                rhs.rows, rhs.cols, self.rows, self.cols
            )));
        }
        let data: Vec<ComplexScalar> =
            self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect();
        ComplexMatrix::from_computed(self.rows, self.cols, data)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = ComplexScalar;

    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

// ── ComplexVector ────────────────────────────────────────────────────────

/// Dense complex vector with at least one entry, all finite.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    data: Vec<ComplexScalar>,
}

impl ComplexVector {
    pub fn new(data: Vec<ComplexScalar>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Argument("vector needs at least one entry".into()));
        }
        check_all_finite(&data, "vector data")?;
        Ok(Self { data })
    }

    pub(crate) fn from_computed(data: Vec<ComplexScalar>) -> Result<Self> {
        debug_assert!(!data.is_empty());
        check_computed(&data, "vector result")?;
        Ok(Self { data })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// All-zero vector. Panics if `dim` is zero.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "vector dimension must be at least 1");
        Self { data: vec![C_ZERO; dim] }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn get(&self, i: usize) -> ComplexScalar {
        self.data[i]
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.data
    }

    /// Euclidean norm.
    pub fn norm2(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product, conjugate-linear in the FIRST argument:
    /// `sum_k conj(self_k) * other_k`. `v.inner(&v)` is `norm2()^2`.
    pub fn inner(&self, other: &ComplexVector) -> Result<ComplexScalar> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "inner product needs equal dimensions, got {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let mut acc = C_ZERO;
        for k in 0..self.data.len() {
            acc += self.data[k].conj() * other.data[k];
        }
        Ok(acc)
    }

    pub fn add(&self, other: &ComplexVector) -> Result<ComplexVector> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "cannot add vectors of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        ComplexVector::from_computed(data)
    }

    pub fn sub(&self, other: &ComplexVector) -> Result<ComplexVector> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "cannot subtract vectors of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect();
        ComplexVector::from_computed(data)
    }

    pub fn scale(&self, s: ComplexScalar) -> Result<ComplexVector> {
        if !is_finite_scalar(s) {
            return Err(Error::NonFinite("scale factor".into()));
        }
        ComplexVector::from_computed(self.data.iter().map(|&z| z * s).collect())
    }
}

impl std::ops::Index<usize> for ComplexVector {
    type Output = ComplexScalar;

    fn index(&self, i: usize) -> &ComplexScalar {
        &self.data[i]
    }
}

// ── IndexSet ─────────────────────────────────────────────────────────────

/// Subset of `{1, .., universe}` identifying the orthonormal (nonzero)
/// positions of a factorization. Members are 1-based to match the usual
/// row/column numbering in linear-algebra texts; entry access on matrices
/// stays 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    universe: usize,
    members: Vec<usize>,
}

impl IndexSet {
    /// Members may arrive in any order; duplicates and out-of-range
    /// members are argument errors.
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if universe == 0 {
            return Err(Error::Argument("index set universe must be at least 1".into()));
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(&bad) = members.iter().find(|&&i| i == 0 || i > universe) {
            return Err(Error::Argument(format!(
                "index {bad} outside universe 1..={universe}"
            )));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Argument("duplicate index in set".into()));
        }
        Ok(Self { universe, members })
    }

    pub fn empty(universe: usize) -> Result<Self> {
        Self::new(universe, [])
    }

    pub fn full(universe: usize) -> Result<Self> {
        Self::new(universe, 1..=universe)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Sorted 1-based members.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.universe
    }

    /// Membership test for a 1-based index.
    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

/// Diagonal 0/1 selector `I_p^S`: order `p`, ones exactly at the members
/// of `s`. Errors if `s.universe() != p`.
pub fn index_matrix(p: usize, s: &IndexSet) -> Result<ComplexMatrix> {
    if s.universe() != p {
        return Err(Error::Argument(format!(
            "index set universe {} does not match order {p}",
            s.universe()
        )));
    }
    let mut m = ComplexMatrix::zeros(p, p);
    for &i in s.members() {
        m.set(i - 1, i - 1, C_ONE);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        Complex::new(re, im)
    }

    #[test]
    fn conj_transpose_single_entry() {
        let a = ComplexMatrix::new(1, 1, vec![c(2.0, 3.0)]).unwrap();
        let at = a.conj_transpose();
        assert_eq!(at.get(0, 0), c(2.0, -3.0));
    }

    #[test]
    fn conj_transpose_real_matrix_is_plain_transpose() {
        let a = ComplexMatrix::from_real(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]).unwrap();
        let at = a.conj_transpose();
        assert_eq!(at.shape(), (3, 2));
        assert_eq!(at.get(0, 1), c(4.0, 0.0));
        assert_eq!(at.get(2, 0), c(3.0, 0.0));
    }

    #[test]
    fn conj_transpose_identity_fixed() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i3.conj_transpose(), i3);
    }

    #[test]
    fn conj_transpose_twice_is_bitwise_identity() {
        let a = ComplexMatrix::new(
            2,
            3,
            vec![
                c(1.5, -2.25),
                c(0.0, 1.0),
                c(-3.0, 0.125),
                c(4.0, 4.0),
                c(-0.5, -0.5),
                c(2.0, -1.0),
            ],
        )
        .unwrap();
        let back = a.conj_transpose().conj_transpose();
        for (x, y) in a.as_slice().iter().zip(back.as_slice()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn index_matrix_full_and_empty() {
        let full = IndexSet::full(3).unwrap();
        assert_eq!(index_matrix(3, &full).unwrap(), ComplexMatrix::identity(3));
        let empty = IndexSet::empty(3).unwrap();
        assert_eq!(index_matrix(3, &empty).unwrap(), ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn index_matrix_single_member() {
        let s = IndexSet::new(3, [2]).unwrap();
        let m = index_matrix(3, &s).unwrap();
        let expect = ComplexMatrix::from_real(&[
            &[0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(m, expect);
        // idempotent: (I_p^S)^2 = I_p^S
        assert_eq!(m.matmul(&m).unwrap(), m);
        // self-adjoint
        assert_eq!(m.conj_transpose(), m);
    }

    #[test]
    fn index_matrix_universe_mismatch_errors() {
        let s = IndexSet::new(3, [1]).unwrap();
        assert!(matches!(index_matrix(4, &s), Err(Error::Argument(_))));
    }

    #[test]
    fn index_set_rejects_out_of_range_and_duplicates() {
        assert!(IndexSet::new(3, [4]).is_err());
        assert!(IndexSet::new(3, [0]).is_err());
        assert!(IndexSet::new(3, [2, 2]).is_err());
        let s = IndexSet::new(5, [4, 1]).unwrap();
        assert_eq!(s.members(), &[1, 4]);
        assert!(s.contains(4));
        assert!(!s.contains(2));
    }

    #[test]
    fn matmul_identity_and_zero() {
        let a = ComplexMatrix::from_real(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let i = ComplexMatrix::identity(2);
        assert_eq!(a.matmul(&i).unwrap(), a);
        assert_eq!(i.matmul(&a).unwrap(), a);
        let z = ComplexMatrix::zeros(2, 2);
        assert_eq!(a.matmul(&z).unwrap(), z);
    }

    #[test]
    fn matmul_hand_value() {
        let a = ComplexMatrix::from_real(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let v = ComplexVector::from_real(&[1.0, 1.0]).unwrap();
        let av = a.matvec(&v).unwrap();
        assert_eq!(av.get(0), c(3.0, 0.0));
        assert_eq!(av.get(1), c(7.0, 0.0));
    }

    #[test]
    fn matmul_dimension_mismatch_errors() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::Dimension(_))));
        let v = ComplexVector::zeros(2);
        assert!(matches!(a.matvec(&v), Err(Error::Dimension(_))));
    }

    #[test]
    fn identity_product_is_exact() {
        let i = ComplexMatrix::identity(4);
        assert_eq!(i.matmul(&i).unwrap(), i);
    }

    #[test]
    fn inner_product_values() {
        let e1 = ComplexVector::from_real(&[1.0, 0.0]).unwrap();
        let e2 = ComplexVector::from_real(&[0.0, 1.0]).unwrap();
        assert_eq!(e1.inner(&e2).unwrap(), C_ZERO);

        let v = ComplexVector::from_real(&[3.0, 4.0]).unwrap();
        assert_eq!(v.inner(&v).unwrap(), c(25.0, 0.0));

        // first argument conjugated: <(i,0),(i,0)> = conj(i)*i = 1
        let w = ComplexVector::new(vec![c(0.0, 1.0), C_ZERO]).unwrap();
        assert_eq!(w.inner(&w).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn inner_conjugate_symmetry() {
        let u = ComplexVector::new(vec![c(1.0, 2.0), c(-0.5, 0.25)]).unwrap();
        let v = ComplexVector::new(vec![c(0.75, -1.0), c(2.0, 3.0)]).unwrap();
        let uv = u.inner(&v).unwrap();
        let vu = v.inner(&u).unwrap();
        assert!((uv - vu.conj()).norm() < 1e-12);
    }

    #[test]
    fn constructors_reject_non_finite() {
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            ComplexVector::new(vec![c(0.0, f64::INFINITY)]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(ComplexMatrix::new(0, 1, vec![]), Err(Error::Argument(_))));
        assert!(matches!(ComplexVector::new(vec![]), Err(Error::Argument(_))));
    }

    #[test]
    fn matmul_overflow_is_reported() {
        let big = ComplexMatrix::new(1, 1, vec![c(1e308, 0.0)]).unwrap();
        assert!(matches!(big.matmul(&big), Err(Error::Computation(_))));
    }

    #[test]
    fn counted_matmul_reports_exact_work() {
        let a = ComplexMatrix::zeros(3, 4);
        let b = ComplexMatrix::zeros(4, 5);
        let mut ops = OpCounter::new();
        a.matmul_counted(&b, &mut ops).unwrap();
        assert_eq!(ops.mul_adds(), 3 * 5 * 4);
    }
}
