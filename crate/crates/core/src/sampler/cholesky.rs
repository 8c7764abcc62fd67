//! Dense Cholesky factorizations used by the samplers: a Toeplitz-row
//! entry point for the stationary fallback path and a general symmetric
//! entry point for the joint integrated-FBM covariance.

use crate::error::{Error, Result};

/// Lower-triangular factor stored packed row-wise: row i occupies
/// `i(i+1)/2 .. i(i+1)/2 + i + 1`.
pub(crate) struct PackedCholesky {
    pub n: usize,
    pub lower: Vec<f64>,
    pub jitter: f64,
}

impl PackedCholesky {
    /// Factor a symmetric matrix given packed row-wise (lower triangle).
    /// `jitters` are tried in order, each scaled by the largest diagonal
    /// entry, until the pivots stay positive.
    pub fn from_packed(matrix: &[f64], n: usize, jitters: &[f64]) -> Result<Self> {
        assert_eq!(matrix.len(), n * (n + 1) / 2);
        let diag_max = (0..n)
            .map(|i| matrix[i * (i + 1) / 2 + i])
            .fold(0.0f64, f64::max)
            .max(1.0);
        for &j in jitters {
            if let Some(lower) = try_factor(matrix, n, j * diag_max) {
                return Ok(PackedCholesky {
                    n,
                    lower,
                    jitter: j * diag_max,
                });
            }
        }
        Err(Error::Factorization(format!(
            "Cholesky failed for {n}x{n} matrix at maximum jitter"
        )))
    }

    /// Factor the symmetric Toeplitz matrix with first row `row`.
    pub fn from_toeplitz_row(row: &[f64], jitters: &[f64]) -> Result<Self> {
        let n = row.len();
        let mut packed = vec![0.0; n * (n + 1) / 2];
        for i in 0..n {
            let base = i * (i + 1) / 2;
            for j in 0..=i {
                packed[base + j] = row[i - j];
            }
        }
        Self::from_packed(&packed, n, jitters)
    }

    /// out = L z for z of length n.
    pub fn multiply_into(&self, z: &[f64], out: &mut [f64]) {
        debug_assert_eq!(z.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        for i in 0..self.n {
            let base = i * (i + 1) / 2;
            let row = &self.lower[base..base + i + 1];
            let mut acc = 0.0;
            for (lij, zj) in row.iter().zip(z.iter()) {
                acc += lij * zj;
            }
            out[i] = acc;
        }
    }
}

fn try_factor(matrix: &[f64], n: usize, jitter: f64) -> Option<Vec<f64>> {
    let mut l = vec![0.0f64; matrix.len()];
    for i in 0..n {
        let base_i = i * (i + 1) / 2;
        for j in 0..=i {
            let base_j = j * (j + 1) / 2;
            let mut s = matrix[base_i + j];
            if i == j {
                s += jitter;
            }
            for k in 0..j {
                s -= l[base_i + k] * l[base_j + k];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[base_i + j] = s.sqrt();
            } else {
                l[base_i + j] = s / l[base_j + j];
            }
        }
    }
    Some(l)
}
