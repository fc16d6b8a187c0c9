use std::time::{Duration, Instant};

use faer::linalg::solvers::Solve;
use faer::{Mat, Side};

use crate::error::SolveError;
use crate::sparse::SparseMatrix;

/// Relative residual every successful solve must meet.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
const MAX_REFINEMENT: usize = 3;

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: Vec<f64>,
    /// ||A x - F|| / ||F||, or ||A x|| when F = 0.
    pub residual: f64,
    pub refinement_steps: usize,
    pub nnz: usize,
    pub wall_time: Duration,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(a: &SparseMatrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    a.mul_vec(x).iter().zip(b).map(|(ax, bi)| bi - ax).collect()
}

/// Sparse LU with partial pivoting followed by a few steps of iterative
/// refinement.
pub fn solve_sparse(a: &SparseMatrix, b: &[f64]) -> Result<SolveReport, SolveError> {
    assert_eq!(a.nrows(), a.ncols());
    assert_eq!(a.nrows(), b.len());
    let start = Instant::now();
    let n = b.len();
    let lu = a
        .to_faer()
        .sp_lu()
        .map_err(|e| SolveError::SingularMatrix(format!("{e:?}")))?;
    let solve = |rhs: &[f64]| -> Vec<f64> {
        let m = Mat::<f64>::from_fn(n, 1, |i, _| rhs[i]);
        let x = lu.solve(&m);
        (0..n).map(|i| x[(i, 0)]).collect()
    };

    let bnorm = norm(b);
    let scale = if bnorm > 0.0 { bnorm } else { 1.0 };
    let mut x = solve(b);
    if x.iter().any(|v| !v.is_finite()) {
        return Err(SolveError::SingularMatrix("factorization produced non-finite values".into()));
    }
    let mut r = residual(a, &x, b);
    let mut rel = norm(&r) / scale;
    let mut steps = 0;
    while rel > 1e-3 * RESIDUAL_TOLERANCE && steps < MAX_REFINEMENT && bnorm > 0.0 {
        let dx = solve(&r);
        let candidate: Vec<f64> = x.iter().zip(&dx).map(|(a, b)| a + b).collect();
        let rc = residual(a, &candidate, b);
        let relc = norm(&rc) / scale;
        steps += 1;
        if !(relc < rel) {
            break;
        }
        x = candidate;
        r = rc;
        rel = relc;
    }
    if !(rel < RESIDUAL_TOLERANCE) {
        return Err(SolveError::NumericalBreakdown { residual: rel, tolerance: RESIDUAL_TOLERANCE });
    }
    Ok(SolveReport { solution: x, residual: rel, refinement_steps: steps, nnz: a.nnz(), wall_time: start.elapsed() })
}

/// Result of [`check_spd`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdCheck {
    pub is_spd: bool,
    /// Smallest eigenvalue from inverse iteration, when the factorization succeeded.
    pub min_eigenvalue: Option<f64>,
    pub iterations: usize,
}

/// Attempts a sparse Cholesky factorization of a symmetric matrix and, on
/// success, estimates its smallest eigenvalue by inverse iteration
/// (at most 50 steps, 1e-6 relative tolerance).
pub fn check_spd(a: &SparseMatrix) -> SpdCheck {
    let n = a.nrows();
    let failed = SpdCheck { is_spd: false, min_eigenvalue: None, iterations: 0 };
    if n == 0 || a.max_asymmetry() > 1e-12 * a.max_abs() {
        return failed;
    }
    let Ok(llt) = a.to_faer().sp_cholesky(Side::Lower) else {
        return failed;
    };
    // a start vector with components along every eigenvector in practice
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i as f64) * 0.618_033_988_749_895).fract()).collect();
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut estimate = f64::NAN;
    let mut iterations = 0;
    for it in 1..=50 {
        iterations = it;
        let m = Mat::<f64>::from_fn(n, 1, |i, _| x[i]);
        let y = llt.solve(&m);
        let mut y: Vec<f64> = (0..n).map(|i| y[(i, 0)]).collect();
        let ny = norm(&y);
        if !(ny.is_finite() && ny > 0.0) {
            return failed;
        }
        y.iter_mut().for_each(|v| *v /= ny);
        let ay = a.mul_vec(&y);
        let rayleigh: f64 = ay.iter().zip(&y).map(|(p, q)| p * q).sum();
        let done = (rayleigh - estimate).abs() <= 1e-6 * rayleigh.abs();
        estimate = rayleigh;
        x = y;
        if done {
            break;
        }
    }
    SpdCheck { is_spd: estimate > 0.0, min_eigenvalue: Some(estimate), iterations }
}
