//! Dense symmetric eigensolver (cyclic Jacobi rotations).
//!
//! Matrices here are small (at most a few dozen rows during subset
//! enumeration), where Jacobi is robust and accurate to a few ulps.

use crate::error::{Error, Result};

/// Sweeps before giving up. Cyclic Jacobi converges quadratically; ten
/// sweeps are typical for the sizes used here.
pub const MAX_SWEEPS: usize = 100;

/// Convergence threshold on the off-diagonal Frobenius norm, relative to
/// the Frobenius norm of the input.
pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub n: usize,
    /// Eigenvalues, unsorted.
    pub values: Vec<f64>,
    /// Eigenvectors as columns of a row-major `n × n` matrix, when requested.
    pub vectors: Option<Vec<f64>>,
}

impl SymmetricEigen {
    /// Index of the largest eigenvalue.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (k, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = k;
            }
        }
        best
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Option<Vec<f64>> {
        let v = self.vectors.as_ref()?;
        Some((0..self.n).map(|r| v[r * self.n + k]).collect())
    }
}

pub fn frobenius_norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += 2.0 * a[p * n + q] * a[p * n + q];
        }
    }
    s.sqrt()
}

/// Eigen-decomposition of the symmetric row-major `n × n` matrix `a`.
/// Only the upper triangle is trusted to be symmetric with the lower one;
/// the caller guarantees symmetry.
pub fn jacobi_eigen(a: &[f64], n: usize, want_vectors: bool) -> Result<SymmetricEigen> {
    assert_eq!(a.len(), n * n, "matrix has wrong length");
    let mut work = a.to_vec();
    let mut vectors = want_vectors.then(|| {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    });
    let threshold = TOLERANCE * frobenius_norm(a);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&work, n);
        if off <= threshold || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut work, vectors.as_deref_mut(), n, p, q);
            }
        }
    }

    Ok(SymmetricEigen {
        n,
        values: (0..n).map(|i| work[i * n + i]).collect(),
        vectors,
    })
}

/// Annihilates `a[p][q]` with one plane rotation.
#[inline]
fn rotate(a: &mut [f64], v: Option<&mut [f64]>, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * n + p];
        let arq = a[r * n + q];
        let new_rp = arp - s * (arq + tau * arp);
        let new_rq = arq + s * (arp - tau * arq);
        a[r * n + p] = new_rp;
        a[p * n + r] = new_rp;
        a[r * n + q] = new_rq;
        a[q * n + r] = new_rq;
    }
    if let Some(v) = v {
        for r in 0..n {
            let vrp = v[r * n + p];
            let vrq = v[r * n + q];
            v[r * n + p] = vrp - s * (vrq + tau * vrp);
            v[r * n + q] = vrq + s * (vrp - tau * vrq);
        }
    }
}

/// `‖A x − λ x‖₂` for a row-major `n × n` matrix.
pub fn residual(a: &[f64], n: usize, x: &[f64], lambda: f64) -> f64 {
    (0..n)
        .map(|i| {
            let ax: f64 = (0..n).map(|j| a[i * n + j] * x[j]).sum();
            let r = ax - lambda * x[i];
            r * r
        })
        .sum::<f64>()
        .sqrt()
}
