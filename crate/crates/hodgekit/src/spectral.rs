//! Self-contained numerical linear algebra: a cyclic Jacobi eigensolver for
//! dense Hermitian matrices (Bloch fibers and desk-scale blocks are small)
//! and a shifted power iteration for operator norms of sparse self-adjoint
//! operators. Jacobi is unconditionally convergent, which keeps the
//! acceptance tolerances honest.

use crate::error::{HodgeError, Result};
use crate::ops::MetricOperator;
use crate::sample::SplitMix64;
use num_complex::Complex64;

/// Iteration caps; both are generous for the sizes this crate handles.
pub const JACOBI_SWEEPS_PER_DIM: usize = 100;
pub const POWER_ITERATION_CAP: usize = 100_000;

/// A dense Hermitian matrix. Construction symmetrizes `(A + A^H)/2` and
/// records the deviation; inputs further than `1e-12` (relative) from
/// Hermitian are rejected.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
    pub deviation: f64,
}

impl HermitianMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<HermitianMatrix> {
        assert_eq!(data.len(), dim * dim, "row-major square data expected");
        let mut deviation = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                deviation = deviation.max((data[i * dim + j] - data[j * dim + i].conj()).norm());
                scale = scale.max(data[i * dim + j].norm());
            }
        }
        if deviation > 1e-12 * (1.0 + scale) {
            return Err(HodgeError::NotHermitian { deviation });
        }
        let mut sym = data;
        for i in 0..dim {
            for j in 0..=i {
                let avg = 0.5 * (sym[i * dim + j] + sym[j * dim + i].conj());
                sym[i * dim + j] = avg;
                sym[j * dim + i] = avg.conj();
            }
            let d = sym[i * dim + i];
            sym[i * dim + i] = Complex64::new(d.re, 0.0);
        }
        Ok(HermitianMatrix { dim, data: sym, deviation })
    }

    /// The Hermitian coordinate form `M^{1/2} A M^{-1/2}` of a self-adjoint
    /// metric operator.
    pub fn from_operator(op: &MetricOperator) -> Result<HermitianMatrix> {
        let rows = op.hermitian_rows()?;
        let dim = rows.len();
        let mut data = vec![Complex64::ZERO; dim * dim];
        for (i, row) in rows.iter().enumerate() {
            for &(j, a) in row {
                data[i * dim + j] += a;
            }
        }
        HermitianMatrix::new(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn eig(&self, tol: f64) -> Result<SpectrumResult> {
        eig_hermitian(self, tol)
    }
}

/// Ascending eigenvalues with the max per-pair residual `|A v - lambda v|`.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub residual: f64,
}

/// Cyclic Jacobi with complex plane rotations. Off-diagonal mass strictly
/// decreases, so the sweep loop terminates for every Hermitian input.
pub fn eig_hermitian(matrix: &HermitianMatrix, tol: f64) -> Result<SpectrumResult> {
    let n = matrix.dim;
    if n == 0 {
        return Ok(SpectrumResult { eigenvalues: Vec::new(), residual: 0.0 });
    }
    let mut a = matrix.data.clone();
    let mut v = vec![Complex64::ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::ONE;
    }

    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let off_target = 1e-15 * scale;
    let max_sweeps = JACOBI_SWEEPS_PER_DIM * n.max(1);

    for _ in 0..max_sweeps {
        let mut off_max = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off_max = off_max.max(a[p * n + q].norm());
            }
        }
        if off_max <= off_target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[p * n + q];
                let m = g.norm();
                if m <= off_target * 1e-2 {
                    continue;
                }
                let phase = g / m; // e^{i phi}
                let alpha = a[p * n + p].re;
                let beta = a[q * n + q].re;
                let rho = (alpha - beta) / (2.0 * m);
                let t = if rho >= 0.0 {
                    1.0 / (rho + (rho * rho + 1.0).sqrt())
                } else {
                    -1.0 / (-rho + (rho * rho + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let s_phase = s * phase; // s e^{i phi}
                let s_conj = s * phase.conj(); // s e^{-i phi}

                // rows p, q of A
                for j in 0..n {
                    let rp = a[p * n + j];
                    let rq = a[q * n + j];
                    a[p * n + j] = c * rp + s_phase * rq;
                    a[q * n + j] = -s_conj * rp + c * rq;
                }
                // columns p, q of A
                for i in 0..n {
                    let cp = a[i * n + p];
                    let cq = a[i * n + q];
                    a[i * n + p] = c * cp + s_conj * cq;
                    a[i * n + q] = -s_phase * cp + c * cq;
                }
                // accumulate eigenvectors
                for i in 0..n {
                    let cp = v[i * n + p];
                    let cq = v[i * n + q];
                    v[i * n + p] = c * cp + s_conj * cq;
                    v[i * n + q] = -s_phase * cp + c * cq;
                }
                a[p * n + q] = Complex64::ZERO;
                a[q * n + p] = Complex64::ZERO;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.partial_cmp(&a[j * n + j].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();

    // residual against the original matrix
    let orig = &matrix.data;
    let mut residual = 0.0f64;
    for (slot, &col) in order.iter().enumerate() {
        let lambda = eigenvalues[slot];
        let mut err = 0.0f64;
        for i in 0..n {
            let mut acc = Complex64::ZERO;
            for j in 0..n {
                acc += orig[i * n + j] * v[j * n + col];
            }
            err += (acc - lambda * v[i * n + col]).norm_sqr();
        }
        residual = residual.max(err.sqrt());
    }
    if residual > tol.max(1e-15) * scale.max(1.0) {
        return Err(HodgeError::NonConvergence { achieved: residual, requested: tol });
    }
    Ok(SpectrumResult { eigenvalues, residual })
}

/// Convenience: full spectrum of a self-adjoint metric operator.
pub fn eigenvalues_of(op: &MetricOperator, tol: f64) -> Result<Vec<f64>> {
    Ok(HermitianMatrix::from_operator(op)?.eig(tol)?.eigenvalues)
}

/// Largest absolute eigenvalue of a self-adjoint metric operator, by power
/// iteration on the shifted Hermitian form. The shift `c` is the max
/// absolute row sum, so both `cI + T` and `cI - T` are positive
/// semidefinite and their dominant eigenvalues recover both spectral ends.
pub fn operator_norm(op: &MetricOperator, tol: f64) -> Result<f64> {
    let (r, c) = op.shape();
    if r == 0 || c == 0 {
        return Ok(0.0);
    }
    let rows = op.hermitian_rows()?;
    let shift = rows
        .iter()
        .map(|row| row.iter().map(|&(_, a)| a.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    if shift == 0.0 {
        return Ok(0.0);
    }
    let hi = power_dominant(&rows, shift, 1.0, tol)? - shift; // lambda_max
    let lo = shift - power_dominant(&rows, shift, -1.0, tol)?; // lambda_min
    Ok(hi.abs().max(lo.abs()))
}

/// Both spectral ends `(lambda_min, lambda_max)` of a self-adjoint operator.
pub fn extreme_eigenvalues(op: &MetricOperator, tol: f64) -> Result<(f64, f64)> {
    let (r, c) = op.shape();
    if r == 0 || c == 0 {
        return Ok((0.0, 0.0));
    }
    let rows = op.hermitian_rows()?;
    let shift = rows
        .iter()
        .map(|row| row.iter().map(|&(_, a)| a.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    if shift == 0.0 {
        return Ok((0.0, 0.0));
    }
    let hi = power_dominant(&rows, shift, 1.0, tol)? - shift;
    let lo = shift - power_dominant(&rows, shift, -1.0, tol)?;
    Ok((lo, hi))
}

/// Dominant eigenvalue of `shift*I + sign*T` for the sparse Hermitian rows
/// of `T`. Deterministic start vector, randomized re-mixing on stagnation.
fn power_dominant(
    rows: &[Vec<(usize, Complex64)>],
    shift: f64,
    sign: f64,
    tol: f64,
) -> Result<f64> {
    let n = rows.len();
    let mut rng = SplitMix64::new(0x5EED ^ n as u64);
    let mut v: Vec<Complex64> = (0..n).map(|_| rng.next_complex()).collect();
    normalize(&mut v);
    let matvec = |v: &[Complex64]| -> Vec<Complex64> {
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                shift * v[i] + sign * row.iter().map(|&(j, a)| a * v[j]).sum::<Complex64>()
            })
            .collect()
    };
    let tol_abs = tol.max(1e-15) * shift.max(1.0);
    let mut checkpoint = f64::INFINITY;
    let mut last_residual = f64::INFINITY;
    for iter in 0..POWER_ITERATION_CAP {
        let w = matvec(&v);
        let mu = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
        let mut residual = 0.0f64;
        for i in 0..n {
            residual += (w[i] - mu * v[i]).norm_sqr();
        }
        let residual = residual.sqrt();
        if residual <= tol_abs {
            return Ok(mu);
        }
        last_residual = residual;
        v = w;
        if iter % 2000 == 1999 {
            // re-mix only on stagnation, to escape a start vector that is
            // orthogonal to the dominant eigenspace
            if residual > 0.9 * checkpoint {
                for x in &mut v {
                    *x += 0.01 * rng.next_complex();
                }
            }
            checkpoint = residual;
        }
        normalize(&mut v);
    }
    Err(HodgeError::NonConvergence { achieved: last_residual, requested: tol_abs })
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}
