//! Exact fractional Brownian motion on a uniform grid: circulant
//! embedding of the increment (fGn) covariance followed by cumulative
//! summation. B_0 = 0.

use super::cholesky::PackedCholesky;
use super::circulant::CirculantEmbedding;
use super::{
    pair_rng, GridSpec, MethodInfo, MethodKind, PathBatch, PathLaw, JITTERS, MIN_EIG_FLOOR,
};
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Autocovariance of fractional Gaussian noise at integer lag k, unit step.
fn fgn_cov(h: f64, k: usize) -> f64 {
    let k = k as f64;
    0.5 * ((k + 1.0).powf(2.0 * h) - 2.0 * k.powf(2.0 * h) + (k - 1.0).abs().powf(2.0 * h))
}

enum FgnBackend {
    Circulant(CirculantEmbedding),
    Cholesky(PackedCholesky),
    Single(f64),
}

struct FgnSampler {
    backend: FgnBackend,
    n_inc: usize,
    info: MethodInfo,
}

impl FgnSampler {
    fn new(h: f64, delta: f64, n_inc: usize) -> Result<Self> {
        if n_inc == 1 {
            return Ok(FgnSampler {
                backend: FgnBackend::Single(delta.powf(h)),
                n_inc,
                info: MethodInfo {
                    method: MethodKind::Direct,
                    clipped_mass: 0.0,
                    min_eigenvalue: 1.0,
                },
            });
        }
        // fGn decorrelates like k^{2H−2}; the minimal embedding is almost
        // always acceptable, but allow doubling the lag range once. The
        // Δ^{2H} step scale is baked into the covariance row so every
        // backend inherits it.
        let scale = delta.powf(2.0 * h);
        for pad_factor in [1usize, 2, 4] {
            let len = (n_inc * pad_factor).max(n_inc + 1);
            let cov: Vec<f64> = (0..len).map(|k| fgn_cov(h, k) * scale).collect();
            if let Ok(emb) = CirculantEmbedding::new(&cov, n_inc, MIN_EIG_FLOOR) {
                let info = MethodInfo {
                    method: MethodKind::CirculantEmbedding {
                        padded_lags: len - n_inc,
                    },
                    clipped_mass: emb.clipped_mass,
                    min_eigenvalue: emb.min_eigenvalue,
                };
                return Ok(FgnSampler {
                    backend: FgnBackend::Circulant(emb),
                    n_inc,
                    info,
                });
            }
        }
        let cov: Vec<f64> = (0..n_inc).map(|k| fgn_cov(h, k) * scale).collect();
        let chol = PackedCholesky::from_toeplitz_row(&cov, &JITTERS)?;
        let info = MethodInfo {
            method: MethodKind::Cholesky {
                jitter: chol.jitter,
            },
            clipped_mass: 0.0,
            min_eigenvalue: f64::NAN,
        };
        Ok(FgnSampler {
            backend: FgnBackend::Cholesky(chol),
            n_inc,
            info,
        })
    }
}

/// Exact FBM sample paths (values of B^H on the grid, B_0 = 0).
pub fn sample_fbm(h: f64, grid: &GridSpec, n_paths: usize, master_seed: u64) -> Result<PathBatch> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::Domain(format!("sample_fbm: H = {h} outside (0, 1)")));
    }
    if n_paths == 0 {
        return Err(Error::Domain("n_paths must be >= 1".into()));
    }
    let n = grid.points();
    if n == 1 {
        return Ok(PathBatch {
            law: PathLaw::Fbm { h },
            grid: *grid,
            master_seed,
            method: None,
            refinement_gap: None,
            paths: vec![vec![0.0]; n_paths],
        });
    }
    let sampler = FgnSampler::new(h, grid.spacing(), n - 1)?;
    let n_inc = sampler.n_inc;
    let n_pairs = n_paths.div_ceil(2);
    let mut pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    (0..n_pairs)
        .into_par_iter()
        .map_init(
            || match &sampler.backend {
                FgnBackend::Circulant(emb) => {
                    let (buf, scratch) = emb.make_buffers();
                    (buf, scratch, vec![0.0; n_inc])
                }
                _ => (Vec::new(), Vec::new(), vec![0.0; n_inc]),
            },
            |(buf, fft_scratch, z), pair| {
                let mut rng = pair_rng(master_seed, pair as u64);
                let mut inc_a = vec![0.0; n_inc];
                let mut inc_b = vec![0.0; n_inc];
                match &sampler.backend {
                    FgnBackend::Circulant(emb) => {
                        emb.sample_pair_into(&mut rng, buf, fft_scratch, &mut inc_a, &mut inc_b);
                    }
                    FgnBackend::Cholesky(c) => {
                        for zi in z.iter_mut() {
                            *zi = rng.sample(StandardNormal);
                        }
                        c.multiply_into(z, &mut inc_a);
                        for zi in z.iter_mut() {
                            *zi = rng.sample(StandardNormal);
                        }
                        c.multiply_into(z, &mut inc_b);
                    }
                    FgnBackend::Single(amp) => {
                        inc_a[0] = *amp * rng.sample::<f64, _>(StandardNormal);
                        inc_b[0] = *amp * rng.sample::<f64, _>(StandardNormal);
                    }
                }
                (cumsum_from_zero(&inc_a), cumsum_from_zero(&inc_b))
            },
        )
        .collect_into_vec(&mut pairs);

    let mut paths = Vec::with_capacity(n_paths);
    for (a, b) in pairs {
        if paths.len() < n_paths {
            paths.push(a);
        }
        if paths.len() < n_paths {
            paths.push(b);
        }
    }
    Ok(PathBatch {
        law: PathLaw::Fbm { h },
        grid: *grid,
        master_seed,
        method: Some(sampler.info),
        refinement_gap: None,
        paths,
    })
}

fn cumsum_from_zero(inc: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(inc.len() + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for &v in inc {
        acc += v;
        out.push(acc);
    }
    out
}
