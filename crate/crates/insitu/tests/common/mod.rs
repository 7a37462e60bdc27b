//! Shared helpers for the integration suites: an SVD-backed oracle and
//! seeded random system generators.
//!
//! The oracle is a one-sided Jacobi SVD, a completely independent
//! algorithm family from the triangular elimination under test, and it
//! certifies itself: every decomposition is checked for orthonormal
//! factors and for reconstructing the input before any answer derived
//! from it is returned. Any factorization passing those checks yields a
//! correct pseudoinverse regardless of how it was produced.

#![allow(dead_code)]

use insitu::{ComplexMatrix, ComplexScalar, ComplexVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `A = U diag(sigma) V*` with `sigma` sorted descending. Columns of `u`
/// have length `rows(A)`, columns of `v` length `cols(A)`; a `u` column
/// paired with an exactly zero singular value is the zero vector.
pub struct SvdOracle {
    pub u: Vec<Vec<ComplexScalar>>,
    pub v: Vec<Vec<ComplexScalar>>,
    pub sigma: Vec<f64>,
}

impl SvdOracle {
    /// Threshold below which a singular value counts as zero.
    pub fn eps(&self) -> f64 {
        1e-8 * self.sigma.first().copied().unwrap_or(0.0).max(1.0)
    }

    pub fn rank(&self) -> usize {
        let eps = self.eps();
        self.sigma.iter().filter(|&&s| s > eps).count()
    }
}

fn col_dot(x: &[ComplexScalar], y: &[ComplexScalar]) -> ComplexScalar {
    x.iter().zip(y).fold(ComplexScalar::new(0.0, 0.0), |acc, (a, b)| acc + a.conj() * b)
}

fn col_norm_sq(x: &[ComplexScalar]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum()
}

/// One-sided Jacobi: rotate column pairs of a working copy of `A` until
/// all pairs are mutually orthogonal, accumulating the rotations in `V`.
/// The rotated columns are then `U diag(sigma)`.
pub fn svd_oracle(a: &ComplexMatrix) -> SvdOracle {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<ComplexScalar>> = (0..n).map(|j| a.col_vec(j)).collect();
    let mut v: Vec<Vec<ComplexScalar>> = (0..n)
        .map(|j| {
            let mut e = vec![ComplexScalar::new(0.0, 0.0); n];
            e[j] = ComplexScalar::new(1.0, 0.0);
            e
        })
        .collect();

    // noise floor of a length-m dot product is ~ m * f64 epsilon, so the
    // sweep target must sit above it or the final sweeps spin forever
    let tol = 1e-13;
    // columns this small are rounding debris (when n > rank some columns
    // shrink to ~epsilon * |A|); their pairwise angles are meaningless
    // noise and would stall the sweep, while their contribution is far
    // below the keep threshold either way
    let dead_sq = (1e-14 * a.frobenius_norm()).powi(2);
    let mut converged = false;
    for _sweep in 0..200 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = col_norm_sq(&cols[p]);
                let beta = col_norm_sq(&cols[q]);
                if alpha <= dead_sq || beta <= dead_sq {
                    continue;
                }
                let gamma = col_dot(&cols[p], &cols[q]);
                let g = gamma.norm();
                let rel = g / (alpha * beta).sqrt();
                off = off.max(rel);
                if rel <= tol {
                    continue;
                }
                // diagonalize the 2x2 Gram block [[alpha, gamma], [conj gamma, beta]]
                let phase = gamma / g;
                let tau = (beta - alpha) / (2.0 * g);
                let sgn = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sgn / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let pc = phase.conj();
                for i in 0..m {
                    let x = cols[p][i];
                    let y = cols[q][i];
                    cols[p][i] = c * x - s * pc * y;
                    cols[q][i] = s * x + c * pc * y;
                }
                for i in 0..n {
                    let x = v[p][i];
                    let y = v[q][i];
                    v[p][i] = c * x - s * pc * y;
                    v[q][i] = s * x + c * pc * y;
                }
            }
        }
        if off <= tol {
            converged = true;
            break;
        }
    }
    assert!(converged, "oracle SVD did not converge for a {m}x{n} input");

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = cols.iter().map(|cj| col_norm_sq(cj).sqrt()).collect();
    assert!(norms.iter().all(|s| s.is_finite()));
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());

    let mut u = Vec::with_capacity(n);
    let mut vv = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    for &j in &order {
        let s = norms[j];
        let uj = if s > 0.0 {
            cols[j].iter().map(|x| x / s).collect()
        } else {
            vec![ComplexScalar::new(0.0, 0.0); m]
        };
        u.push(uj);
        vv.push(v[j].clone());
        sigma.push(s);
    }
    let out = SvdOracle { u, v: vv, sigma };
    certify(a, &out);
    out
}

/// Self-check: kept factors orthonormal, full product reconstructs `A`.
fn certify(a: &ComplexMatrix, svd: &SvdOracle) {
    let (m, n) = a.shape();
    let eps = svd.eps();
    for i in 0..n {
        for j in i..n {
            let want = if i == j { 1.0 } else { 0.0 };
            let dv = (col_dot(&svd.v[i], &svd.v[j]).norm() - want).abs();
            assert!(dv <= 1e-10, "oracle V not orthonormal: pair ({i},{j}) off by {dv:.3e}");
            if svd.sigma[i] > eps && svd.sigma[j] > eps {
                let du = (col_dot(&svd.u[i], &svd.u[j]).norm() - want).abs();
                assert!(du <= 1e-10, "oracle U not orthonormal: pair ({i},{j}) off by {du:.3e}");
            }
        }
    }
    let mut err_sq = 0.0f64;
    for i in 0..m {
        for j in 0..n {
            let mut acc = ComplexScalar::new(0.0, 0.0);
            for k in 0..n {
                acc += svd.sigma[k] * svd.u[k][i] * svd.v[k][j].conj();
            }
            err_sq += (acc - a.get(i, j)).norm_sqr();
        }
    }
    let scale = a.frobenius_norm().max(1.0);
    let err = err_sq.sqrt();
    assert!(err <= 1e-10 * scale, "oracle SVD does not reconstruct its input: {err:.3e}");
}

/// Numerical rank by singular values.
pub fn rank_svd(a: &ComplexMatrix) -> usize {
    svd_oracle(a).rank()
}

/// Pseudoinverse via SVD: the sum of `v_k sigma_k^-1 u_k*` over kept values.
pub fn pinv_svd(a: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = a.shape();
    let svd = svd_oracle(a);
    let eps = svd.eps();
    let mut rows = vec![vec![ComplexScalar::new(0.0, 0.0); m]; n];
    for k in 0..svd.sigma.len() {
        if svd.sigma[k] <= eps {
            continue;
        }
        for (i, row) in rows.iter_mut().enumerate() {
            let vk = svd.v[k][i] / svd.sigma[k];
            for (j, entry) in row.iter_mut().enumerate() {
                *entry += vk * svd.u[k][j].conj();
            }
        }
    }
    ComplexMatrix::from_rows(&rows).unwrap()
}

/// Minimum-norm least-squares solution `A^+ b` via SVD.
pub fn pinv_solve_svd(a: &ComplexMatrix, b: &ComplexVector) -> ComplexVector {
    pinv_svd(a).matvec(b).unwrap()
}

/// The least-squares residual value `|b - A A^+ b|` via SVD: the norm of
/// what remains of `b` outside the span of the kept left vectors.
pub fn lsq_residual_svd(a: &ComplexMatrix, b: &ComplexVector) -> f64 {
    let svd = svd_oracle(a);
    let eps = svd.eps();
    let mut rem: Vec<ComplexScalar> = b.as_slice().to_vec();
    for k in 0..svd.sigma.len() {
        if svd.sigma[k] <= eps {
            continue;
        }
        let coef = col_dot(&svd.u[k], &rem);
        for (r, u) in rem.iter_mut().zip(&svd.u[k]) {
            *r -= coef * u;
        }
    }
    col_norm_sq(&rem).sqrt()
}

pub fn rel_vec_err(got: &ComplexVector, want: &ComplexVector) -> f64 {
    got.sub(want).unwrap().norm2() / want.norm2().max(1e-30)
}

pub fn rel_mat_err(got: &ComplexMatrix, want: &ComplexMatrix) -> f64 {
    got.sub(want).unwrap().frobenius_norm() / want.frobenius_norm().max(1e-30)
}

// ── seeded generators ────────────────────────────────────────────────────

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut ChaCha8Rng, complex: bool) -> ComplexScalar {
    let re = rng.random_range(-1.0..1.0);
    let im = if complex { rng.random_range(-1.0..1.0) } else { 0.0 };
    ComplexScalar::new(re, im)
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, complex: bool) -> ComplexVector {
    ComplexVector::new((0..dim).map(|_| random_scalar(rng, complex)).collect()).unwrap()
}

pub fn random_full(rng: &mut ChaCha8Rng, m: usize, n: usize, complex: bool) -> ComplexMatrix {
    let rows: Vec<Vec<ComplexScalar>> =
        (0..m).map(|_| (0..n).map(|_| random_scalar(rng, complex)).collect()).collect();
    ComplexMatrix::from_rows(&rows).unwrap()
}

/// Random `m x n` matrix of rank exactly `r` (a product of full-rank
/// factors; generic draws keep every `r`-subset independent and leave a
/// clean gap between kept and killed singular values).
pub fn random_with_rank(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    r: usize,
    complex: bool,
) -> ComplexMatrix {
    assert!(r >= 1 && r <= m.min(n));
    if r == m.min(n) {
        return random_full(rng, m, n, complex);
    }
    let left = random_full(rng, m, r, complex);
    let right = random_full(rng, r, n, complex);
    left.matmul(&right).unwrap()
}

/// Consistent right-hand side `b = A z` for a random `z`.
pub fn consistent_b(rng: &mut ChaCha8Rng, a: &ComplexMatrix, complex: bool) -> ComplexVector {
    let z = random_vector(rng, a.cols(), complex);
    a.matvec(&z).unwrap()
}

/// One deterministic test case.
pub struct SuiteCase {
    pub label: String,
    pub a: ComplexMatrix,
    pub rank: usize,
    pub complex: bool,
}

/// Deterministic corpus of shapes x rank classes x scalar fields used by
/// the randomized assertions: sizes up to 30x40, ranks full / half / one.
pub fn suite(seed: u64) -> Vec<SuiteCase> {
    let mut out = Vec::new();
    let mut rng = rng(seed);
    let shapes = [
        (2usize, 2usize),
        (3, 5),
        (5, 3),
        (7, 7),
        (10, 4),
        (4, 10),
        (12, 17),
        (17, 12),
        (30, 40),
        (30, 13),
        (21, 40),
        (29, 31),
    ];
    for &(m, n) in &shapes {
        let minmn = m.min(n);
        let mut ranks = vec![minmn];
        if minmn >= 2 {
            ranks.push(minmn.div_ceil(2));
        }
        if minmn >= 3 {
            ranks.push(1);
        }
        ranks.dedup();
        for r in ranks {
            for complex in [false, true] {
                let a = random_with_rank(&mut rng, m, n, r, complex);
                let field = if complex { "complex" } else { "real" };
                out.push(SuiteCase {
                    label: format!("{m}x{n} rank {r} {field}"),
                    a,
                    rank: r,
                    complex,
                });
            }
        }
    }
    out
}
