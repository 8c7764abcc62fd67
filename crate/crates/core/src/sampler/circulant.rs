//! Circulant embedding of a stationary covariance sequence.
//!
//! The even extension of the covariance row is diagonalized by the FFT;
//! one complex FFT per draw yields two independent real paths (real and
//! imaginary parts). When the target horizon leaves the correlation far
//! from zero at the wrap-around point, the minimal embedding of length
//! 2(n−1) is far from nonnegative definite, so callers pass a covariance
//! row extended with padding lags; the first n coordinates of the
//! embedded vector still have exactly the requested Toeplitz covariance.

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

pub(crate) struct CirculantEmbedding {
    /// Number of output coordinates per path.
    n_out: usize,
    /// Embedding length m = 2(cov_len − 1).
    m: usize,
    /// √(λ_j/m) for sampling, with negative λ clipped to zero.
    scale: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
    pub min_eigenvalue: f64,
    /// Σ|clipped λ| / Σλ: fraction of the spectral mass removed.
    pub clipped_mass: f64,
    /// Marginal standard deviation √cov[0] (eigenvalues are computed on
    /// the normalized correlation row).
    amp: f64,
}

impl CirculantEmbedding {
    /// `cov` holds covariances at lags 0..cov.len()−1 with cov.len() > n_out
    /// allowed (padding); `min_eig_floor` is the acceptance threshold on
    /// the smallest correlation eigenvalue (e.g. −1e-9).
    pub fn new(cov: &[f64], n_out: usize, min_eig_floor: f64) -> Result<Self> {
        if cov.len() < 2 || n_out < 2 || n_out > cov.len() {
            return Err(Error::Domain(format!(
                "circulant embedding needs 2 <= n_out <= cov.len(), got {} / {}",
                n_out,
                cov.len()
            )));
        }
        let c0 = cov[0];
        if !(c0 > 0.0) {
            return Err(Error::Domain(format!("cov[0] = {c0} must be > 0")));
        }
        let len = cov.len();
        let m = 2 * (len - 1);
        let mut row: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); m];
        for (k, &c) in cov.iter().enumerate() {
            row[k].re = c / c0;
        }
        for k in 1..len - 1 {
            row[m - k].re = cov[k] / c0;
        }
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(m);
        fft.process(&mut row);

        let mut min_eigenvalue = f64::INFINITY;
        let mut neg_mass = 0.0;
        let mut pos_mass = 0.0;
        let mut scale = Vec::with_capacity(m);
        for v in &row {
            let lam = v.re;
            min_eigenvalue = min_eigenvalue.min(lam);
            if lam < 0.0 {
                neg_mass += -lam;
                scale.push(0.0);
            } else {
                pos_mass += lam;
                scale.push((lam / m as f64).sqrt());
            }
        }
        if min_eigenvalue < min_eig_floor {
            return Err(Error::Factorization(format!(
                "embedding eigenvalue {min_eigenvalue:.3e} below floor {min_eig_floor:.1e}"
            )));
        }
        Ok(CirculantEmbedding {
            n_out,
            m,
            scale,
            fft,
            min_eigenvalue,
            clipped_mass: neg_mass / (neg_mass + pos_mass),
            amp: c0.sqrt(),
        })
    }

    pub fn make_buffers(&self) -> (Vec<Complex<f64>>, Vec<Complex<f64>>) {
        (
            vec![Complex::new(0.0, 0.0); self.m],
            vec![Complex::new(0.0, 0.0); self.fft.get_inplace_scratch_len()],
        )
    }

    /// Draw two independent paths into `out_a` and `out_b` using `rng`.
    ///
    /// With ξ_j = √(λ_j/m)(g_j + i g'_j) and Y = FFT(ξ), the real and
    /// imaginary parts of Y are independent N(0, Σ) vectors.
    pub fn sample_pair_into<R: Rng>(
        &self,
        rng: &mut R,
        buf: &mut [Complex<f64>],
        fft_scratch: &mut [Complex<f64>],
        out_a: &mut [f64],
        out_b: &mut [f64],
    ) {
        debug_assert_eq!(buf.len(), self.m);
        debug_assert!(out_a.len() >= self.n_out && out_b.len() >= self.n_out);
        for (slot, &s) in buf.iter_mut().zip(self.scale.iter()) {
            let g: f64 = rng.sample(StandardNormal);
            let h: f64 = rng.sample(StandardNormal);
            slot.re = s * g;
            slot.im = s * h;
        }
        self.fft.process_with_scratch(buf, fft_scratch);
        for i in 0..self.n_out {
            out_a[i] = self.amp * buf[i].re;
            out_b[i] = self.amp * buf[i].im;
        }
    }
}
