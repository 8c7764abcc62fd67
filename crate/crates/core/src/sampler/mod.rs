//! Exact sampling of stationary Gaussian paths from any correlation spec,
//! plus direct path simulation of FBM, integrated FBM, and
//! Riemann-Liouville processes with their Lamperti transforms.
//!
//! Reproducibility contract: one root seed; per-path-pair substreams are
//! derived by a counter-based split (ChaCha stream = pair index), so the
//! values never depend on how work is scheduled across threads.

mod cholesky;
mod circulant;
mod fbm;
mod ifbm;
mod lamperti;
mod rl;

pub use fbm::sample_fbm;
pub use ifbm::{sample_ifbm_lamperti, sample_ifbm_lamperti_with_substep};
pub use lamperti::{ifbm_lamperti_normalizer, lamperti, rl_lamperti_normalizer};
pub use rl::{rl_path_from_increments, rl_values_at, sample_rl, sample_rl_at};

use crate::correlation::CorrelationSpec;
use crate::error::{Error, Result};
use cholesky::PackedCholesky;
use circulant::CirculantEmbedding;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Acceptance floor for embedding eigenvalues: tiny negatives are
/// floating-point noise on smooth correlations and are clipped.
const MIN_EIG_FLOOR: f64 = -1e-9;

/// Padding tails (in units of τ) tried before falling back to Cholesky.
const PAD_TAILS: [f64; 6] = [0.0, 12.0, 24.0, 48.0, 96.0, 192.0];

/// Jitter ladder for the Cholesky fallback, relative to the diagonal.
const JITTERS: [f64; 4] = [0.0, 1e-12, 1e-10, 1e-8];

/// Hard cap on Cholesky fallback size.
const MAX_CHOLESKY_N: usize = 4096;

/// Uniform grid {0, Δ, 2Δ, …, T} with Δ = T/(n−1). The degenerate
/// single-point grid {0} (horizon 0) is allowed for lag-zero sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    horizon: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(horizon: f64, points: usize) -> Result<Self> {
        let ok = (points >= 2 && horizon.is_finite() && horizon > 0.0)
            || (points == 1 && horizon == 0.0);
        if !ok {
            return Err(Error::Domain(format!(
                "grid needs points >= 2 with horizon > 0 (or the degenerate 1-point grid), got {points} points, horizon {horizon}"
            )));
        }
        Ok(GridSpec { horizon, points })
    }

    /// Grid covering [0, T] with spacing Δ (T is rounded to a whole
    /// number of steps).
    pub fn from_step(horizon: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite() && horizon.is_finite() && horizon >= 0.0) {
            return Err(Error::Domain(format!(
                "grid step {delta} and horizon {horizon} must be positive"
            )));
        }
        if horizon == 0.0 {
            return GridSpec::new(0.0, 1);
        }
        let steps = (horizon / delta).round().max(1.0) as usize;
        GridSpec::new(steps as f64 * delta, steps + 1)
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        if self.points < 2 {
            0.0
        } else {
            self.horizon / (self.points - 1) as f64
        }
    }

    pub fn tau(&self, k: usize) -> f64 {
        k as f64 * self.spacing()
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.tau(k)).collect()
    }
}

/// How a batch's covariance was factorized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MethodKind {
    /// FFT of the even circulant extension, with `padded_lags` extra
    /// covariance lags appended so the wrap-around correlation is
    /// negligible.
    CirculantEmbedding { padded_lags: usize },
    /// Dense Cholesky factorization (Toeplitz for the stationary
    /// fallback, general symmetric for the joint integrated-FBM
    /// covariance) with the recorded diagonal jitter.
    Cholesky { jitter: f64 },
    /// Single-point grid: one standard normal per path.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodInfo {
    pub method: MethodKind,
    /// Fraction of spectral mass clipped from negative eigenvalues.
    pub clipped_mass: f64,
    pub min_eigenvalue: f64,
}

/// What law a batch of paths was drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PathLaw {
    Stationary(CorrelationSpec),
    Fbm { h: f64 },
    Rl { h: f64 },
    IfbmLamperti { h: f64 },
}

/// One sampled path of a unit-variance stationary Gaussian process.
#[derive(Debug, Clone, Serialize)]
pub struct StationaryPath {
    pub grid: GridSpec,
    pub values: Vec<f64>,
    /// Root seed of the batch the path came from.
    pub seed: u64,
    /// Counter-based substream (pair index) that generated it.
    pub stream: u64,
    pub spec: CorrelationSpec,
}

/// A batch of paths sharing grid and law, byte-reproducible from
/// (law, grid, master_seed) regardless of worker count.
#[derive(Debug, Clone, Serialize)]
pub struct PathBatch {
    pub law: PathLaw,
    pub grid: GridSpec,
    pub master_seed: u64,
    pub method: Option<MethodInfo>,
    /// Trapezoid refinement-gap estimate (integrated-FBM sampler only);
    /// values above ~1e-3 mean the sub-grid is too coarse.
    pub refinement_gap: Option<f64>,
    paths: Vec<Vec<f64>>,
}

impl PathBatch {
    pub fn n_paths(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, i: usize) -> &[f64] {
        &self.paths[i]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[f64]> {
        self.paths.iter().map(|p| p.as_slice())
    }

    pub fn stationary_path(&self, i: usize) -> Option<StationaryPath> {
        match &self.law {
            PathLaw::Stationary(spec) => Some(StationaryPath {
                grid: self.grid,
                values: self.paths[i].clone(),
                seed: self.master_seed,
                stream: (i / 2) as u64,
                spec: *spec,
            }),
            _ => None,
        }
    }
}

enum Backend {
    Circulant(CirculantEmbedding),
    Cholesky(PackedCholesky),
    /// Single-point grid: each path is one standard normal.
    Direct,
}

/// Reusable factorization of a correlation spec on a grid.
pub struct GspSampler {
    spec: CorrelationSpec,
    grid: GridSpec,
    backend: Backend,
    info: MethodInfo,
}

/// Per-thread scratch buffers for path generation.
pub struct Scratch {
    buf: Vec<Complex<f64>>,
    fft_scratch: Vec<Complex<f64>>,
    z: Vec<f64>,
}

impl GspSampler {
    pub fn new(spec: &CorrelationSpec, grid: &GridSpec) -> Result<Self> {
        let n = grid.points();
        if n == 1 {
            return Ok(GspSampler {
                spec: *spec,
                grid: *grid,
                backend: Backend::Direct,
                info: MethodInfo {
                    method: MethodKind::Direct,
                    clipped_mass: 0.0,
                    min_eigenvalue: 1.0,
                },
            });
        }
        let delta = grid.spacing();

        // Try the circulant embedding with increasing padding: the even
        // extension of length 2(n−1) is far from nonnegative definite
        // whenever the correlation is still large at the horizon, while
        // padding out to a lag where it has decayed restores positivity
        // without changing the law of the first n coordinates.
        let mut cov: Vec<f64> = Vec::new();
        for tail in PAD_TAILS {
            let len = n + (tail / delta).ceil() as usize;
            while cov.len() < len {
                cov.push(spec.eval(cov.len() as f64 * delta)?);
            }
            match CirculantEmbedding::new(&cov, n, MIN_EIG_FLOOR) {
                Ok(emb) => {
                    let info = MethodInfo {
                        method: MethodKind::CirculantEmbedding {
                            padded_lags: cov.len() - n,
                        },
                        clipped_mass: emb.clipped_mass,
                        min_eigenvalue: emb.min_eigenvalue,
                    };
                    return Ok(GspSampler {
                        spec: *spec,
                        grid: *grid,
                        backend: Backend::Circulant(emb),
                        info,
                    });
                }
                Err(_) => continue,
            }
        }

        if n > MAX_CHOLESKY_N {
            return Err(Error::Factorization(format!(
                "circulant embedding failed at maximum padding and n = {n} exceeds the Cholesky fallback limit {MAX_CHOLESKY_N}"
            )));
        }
        let chol = PackedCholesky::from_toeplitz_row(&cov[..n], &JITTERS)?;
        let info = MethodInfo {
            method: MethodKind::Cholesky {
                jitter: chol.jitter,
            },
            clipped_mass: 0.0,
            min_eigenvalue: f64::NAN,
        };
        Ok(GspSampler {
            spec: *spec,
            grid: *grid,
            backend: Backend::Cholesky(chol),
            info,
        })
    }

    pub fn info(&self) -> MethodInfo {
        self.info
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn spec(&self) -> CorrelationSpec {
        self.spec
    }

    pub fn make_scratch(&self) -> Scratch {
        match &self.backend {
            Backend::Circulant(emb) => {
                let (buf, fft_scratch) = emb.make_buffers();
                Scratch {
                    buf,
                    fft_scratch,
                    z: Vec::new(),
                }
            }
            Backend::Cholesky(c) => Scratch {
                buf: Vec::new(),
                fft_scratch: Vec::new(),
                z: vec![0.0; c.n],
            },
            Backend::Direct => Scratch {
                buf: Vec::new(),
                fft_scratch: Vec::new(),
                z: Vec::new(),
            },
        }
    }

    /// Generate the two paths of substream `pair` into `out_a`/`out_b`.
    pub fn sample_pair_into(
        &self,
        master_seed: u64,
        pair: u64,
        scratch: &mut Scratch,
        out_a: &mut [f64],
        out_b: &mut [f64],
    ) {
        let mut rng = pair_rng(master_seed, pair);
        match &self.backend {
            Backend::Circulant(emb) => {
                emb.sample_pair_into(
                    &mut rng,
                    &mut scratch.buf,
                    &mut scratch.fft_scratch,
                    out_a,
                    out_b,
                );
            }
            Backend::Cholesky(c) => {
                for z in scratch.z.iter_mut() {
                    *z = rng.sample(StandardNormal);
                }
                c.multiply_into(&scratch.z, out_a);
                for z in scratch.z.iter_mut() {
                    *z = rng.sample(StandardNormal);
                }
                c.multiply_into(&scratch.z, out_b);
            }
            Backend::Direct => {
                out_a[0] = rng.sample(StandardNormal);
                out_b[0] = rng.sample(StandardNormal);
            }
        }
    }

    /// Convenience single-path access (index selects the pair parity).
    pub fn sample_path(&self, master_seed: u64, index: u64) -> Vec<f64> {
        let n = self.grid.points();
        let mut scratch = self.make_scratch();
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        self.sample_pair_into(master_seed, index / 2, &mut scratch, &mut a, &mut b);
        if index % 2 == 0 {
            a
        } else {
            b
        }
    }
}

/// ChaCha substream for one path pair: the same (seed, pair) always
/// produces the same draws no matter which worker runs it.
pub(crate) fn pair_rng(master_seed: u64, pair: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(pair);
    rng
}

/// Draw `n_paths` exact samples of the stationary Gaussian vector with
/// covariance c_k = A(kΔ) on the grid.
pub fn sample_gsp(
    spec: &CorrelationSpec,
    grid: &GridSpec,
    n_paths: usize,
    master_seed: u64,
) -> Result<PathBatch> {
    if n_paths == 0 {
        return Err(Error::Domain("n_paths must be >= 1".into()));
    }
    let sampler = GspSampler::new(spec, grid)?;
    let paths = generate_pairwise(&sampler, n_paths, master_seed);
    Ok(PathBatch {
        law: PathLaw::Stationary(*spec),
        grid: *grid,
        master_seed,
        method: Some(sampler.info()),
        refinement_gap: None,
        paths,
    })
}

pub(crate) fn generate_pairwise(
    sampler: &GspSampler,
    n_paths: usize,
    master_seed: u64,
) -> Vec<Vec<f64>> {
    let n = sampler.grid().points();
    let n_pairs = n_paths.div_ceil(2);
    let mut pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    (0..n_pairs)
        .into_par_iter()
        .map_init(
            || sampler.make_scratch(),
            |scratch, pair| {
                let pair = pair as u64;
                let mut a = vec![0.0; n];
                let mut b = vec![0.0; n];
                sampler.sample_pair_into(master_seed, pair, scratch, &mut a, &mut b);
                (a, b)
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
    paths
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::CorrelationSpec;

    fn ou() -> CorrelationSpec {
        CorrelationSpec::ornstein_uhlenbeck(1.0).unwrap()
    }

    #[test]
    fn grid_spec_contract() {
        let g = GridSpec::new(2.0, 5).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.values(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!(GridSpec::new(0.0, 1).is_ok());
        assert!(GridSpec::new(0.0, 2).is_err());
        assert!(GridSpec::new(1.0, 1).is_err());
        assert!(GridSpec::new(-1.0, 4).is_err());
        let g = GridSpec::from_step(1.0, 0.005).unwrap();
        assert_eq!(g.points(), 201);
        assert!((g.spacing() - 0.005).abs() < 1e-15);
    }

    #[test]
    fn determinism_is_bitwise_and_worker_independent() {
        let grid = GridSpec::new(1.0, 101).unwrap();
        let b1 = sample_gsp(&ou(), &grid, 5, 42).unwrap();
        let b2 = sample_gsp(&ou(), &grid, 5, 42).unwrap();
        for i in 0..5 {
            assert_eq!(b1.path(i), b2.path(i));
        }
        // A single-thread pool must produce identical values.
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b3 = pool.install(|| sample_gsp(&ou(), &grid, 5, 42).unwrap());
        for i in 0..5 {
            assert_eq!(b1.path(i), b3.path(i));
        }
        let b4 = sample_gsp(&ou(), &grid, 5, 43).unwrap();
        assert_ne!(b1.path(0), b4.path(0));
    }

    #[test]
    fn ou_embedding_needs_no_padding_and_no_clipping() {
        let grid = GridSpec::new(8.0, 1601).unwrap();
        let s = GspSampler::new(&ou(), &grid).unwrap();
        match s.info().method {
            MethodKind::CirculantEmbedding { padded_lags } => assert_eq!(padded_lags, 0),
            other => panic!("expected circulant embedding, got {other:?}"),
        }
        assert_eq!(s.info().clipped_mass, 0.0);
    }

    #[test]
    fn ifbm_embedding_uses_padding() {
        let spec = CorrelationSpec::ifbm_lamperti(0.5).unwrap();
        let grid = GridSpec::new(2.0, 401).unwrap();
        let s = GspSampler::new(&spec, &grid).unwrap();
        match s.info().method {
            MethodKind::CirculantEmbedding { padded_lags } => assert!(padded_lags > 0),
            other => panic!("expected circulant embedding, got {other:?}"),
        }
        assert!(s.info().clipped_mass <= 1e-6);
    }

    #[test]
    fn single_point_grid_is_standard_normal() {
        let grid = GridSpec::new(0.0, 1).unwrap();
        let batch = sample_gsp(&ou(), &grid, 20_000, 7).unwrap();
        let m: f64 = batch.paths().map(|p| p[0]).sum::<f64>() / 20_000.0;
        let v: f64 = batch.paths().map(|p| p[0] * p[0]).sum::<f64>() / 20_000.0;
        assert!(m.abs() < 0.03, "mean {m}");
        assert!((v - 1.0).abs() < 0.05, "var {v}");
    }

    #[test]
    fn ou_marginals_and_lag_one_autocorrelation() {
        // Δ = 0.01, lag-1 population value e^{−0.01}.
        let grid = GridSpec::new(0.1, 11).unwrap();
        let n_paths = 100_000;
        let batch = sample_gsp(&ou(), &grid, n_paths, 11).unwrap();
        let mut var = 0.0;
        let mut lag1 = 0.0;
        for p in batch.paths() {
            var += p[5] * p[5];
            lag1 += p[4] * p[5];
        }
        var /= n_paths as f64;
        lag1 /= n_paths as f64;
        let se = (2.0 / n_paths as f64).sqrt();
        assert!((var - 1.0).abs() < 5.0 * se, "var {var}");
        let want = (-0.01f64).exp();
        assert!((lag1 - want).abs() < 5.0 * se, "lag1 {lag1} vs {want}");
    }

    #[test]
    fn ou_markov_partial_autocorrelation_vanishes() {
        let grid = GridSpec::new(0.05, 6).unwrap();
        let n_paths = 200_000;
        let batch = sample_gsp(&ou(), &grid, n_paths, 13).unwrap();
        let (mut r1, mut r2) = (0.0, 0.0);
        for p in batch.paths() {
            r1 += p[0] * p[1];
            r2 += p[0] * p[2];
        }
        r1 /= n_paths as f64;
        r2 /= n_paths as f64;
        let pacf2 = (r2 - r1 * r1) / (1.0 - r1 * r1);
        // Population value is exactly zero for a Markov process.
        let se = 1.0 / (n_paths as f64).sqrt() / (1.0 - r1 * r1);
        assert!(pacf2.abs() < 5.0 * se, "pacf2 {pacf2}, se {se}");
    }
}
