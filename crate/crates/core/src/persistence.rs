//! Monte-Carlo persistence probabilities P(Z_τ < 0 ∀τ ∈ [0, T]) for a
//! correlation spec, exponent extraction by weighted regression of
//! −ln p̂ against T, and the structural checks (subadditivity,
//! bound bracketing) the stationary framework implies.
//!
//! The grid estimator is upward-biased for the continuous-time event:
//! sign changes between grid points are missed. The bias direction is
//! part of the contract and is recorded in every estimate.

use crate::correlation::CorrelationSpec;
use crate::error::{Error, Result};
use crate::sampler::{GridSpec, GspSampler, MethodInfo};
use rayon::prelude::*;
use serde::Serialize;

/// Hard cap on grid points per estimate.
pub const MAX_GRID_POINTS: usize = 100_000;

/// Survivor count below which an estimate is unusable for fitting.
pub const MIN_SURVIVORS_FOR_FIT: u64 = 10;

#[derive(Debug, Clone, Serialize)]
pub struct PersistenceEstimate {
    pub spec: CorrelationSpec,
    pub horizon: f64,
    pub delta: f64,
    pub n_trials: u64,
    pub n_survive: u64,
    pub p_hat: f64,
    /// ln p̂ (−∞ when no trial survived).
    pub log_p: f64,
    /// Half-width of the 95% delta-method interval on ln p̂,
    /// 1.96·√((1−p̂)/(n·p̂)); only defined from 10 survivors up.
    pub ci_log: Option<f64>,
    pub seed: u64,
    pub method: MethodInfo,
    /// Direction of the grid-discretization bias on p̂.
    pub bias_direction: &'static str,
}

impl PersistenceEstimate {
    pub const BIAS_DIRECTION: &'static str = "upward (sign changes between grid points are missed)";
}

/// Estimate P(Z < 0 on [0, T]) with `n_trials` exact paths.
pub fn persistence_probability(
    spec: &CorrelationSpec,
    horizon: f64,
    delta: f64,
    n_trials: u64,
    seed: u64,
) -> Result<PersistenceEstimate> {
    let mut v = persistence_profile(spec, &[horizon], delta, n_trials, seed)?;
    Ok(v.pop().unwrap())
}

/// Estimate P(Z < 0 on [0, T_j]) for several horizons from one shared
/// path ensemble on the longest grid.
///
/// Each horizon sees the full `n_trials` trials; the estimates are
/// prefix-nested (positively correlated across horizons), which is
/// harmless for slope fitting and 4× cheaper than independent runs.
pub fn persistence_profile(
    spec: &CorrelationSpec,
    horizons: &[f64],
    delta: f64,
    n_trials: u64,
    seed: u64,
) -> Result<Vec<PersistenceEstimate>> {
    if horizons.is_empty() {
        return Err(Error::Domain("no horizons requested".into()));
    }
    if n_trials == 0 {
        return Err(Error::Domain("n_trials must be >= 1".into()));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!("grid step {delta} must be > 0")));
    }
    let mut cutoffs = Vec::with_capacity(horizons.len());
    let mut max_points = 1usize;
    for &t in horizons {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Domain(format!("horizon {t} must be >= 0")));
        }
        let points = (t / delta).round() as usize + 1;
        if points > MAX_GRID_POINTS {
            return Err(Error::GridTooLarge {
                points,
                limit: MAX_GRID_POINTS,
            });
        }
        cutoffs.push(points);
        max_points = max_points.max(points);
    }

    let grid = if max_points == 1 {
        GridSpec::new(0.0, 1)?
    } else {
        GridSpec::new((max_points - 1) as f64 * delta, max_points)?
    };
    let sampler = GspSampler::new(spec, &grid)?;
    let n = grid.points();

    let n_pairs = n_trials.div_ceil(2) as usize;
    let counts = (0..n_pairs)
        .into_par_iter()
        .fold(
            || {
                (
                    sampler.make_scratch(),
                    vec![0.0f64; n],
                    vec![0.0f64; n],
                    vec![0u64; cutoffs.len()],
                )
            },
            |mut state, pair| {
                let (scratch, a, b, counts) = &mut state;
                sampler.sample_pair_into(seed, pair as u64, scratch, a, b);
                let fa = first_nonnegative(a);
                for (c, &k) in counts.iter_mut().zip(cutoffs.iter()) {
                    *c += (fa >= k) as u64;
                }
                if ((2 * pair + 1) as u64) < n_trials {
                    let fb = first_nonnegative(b);
                    for (c, &k) in counts.iter_mut().zip(cutoffs.iter()) {
                        *c += (fb >= k) as u64;
                    }
                }
                state
            },
        )
        .map(|state| state.3)
        .reduce(
            || vec![0u64; cutoffs.len()],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y.iter()) {
                    *a += b;
                }
                x
            },
        );

    Ok(horizons
        .iter()
        .zip(counts.iter())
        .map(|(&t, &n_survive)| {
            let p_hat = n_survive as f64 / n_trials as f64;
            let ci_log = if n_survive >= MIN_SURVIVORS_FOR_FIT {
                Some(1.96 * ((1.0 - p_hat) / (n_trials as f64 * p_hat)).sqrt())
            } else {
                None
            };
            PersistenceEstimate {
                spec: *spec,
                horizon: t,
                delta,
                n_trials,
                n_survive,
                p_hat,
                log_p: p_hat.ln(),
                ci_log,
                seed,
                method: sampler.info(),
                bias_direction: PersistenceEstimate::BIAS_DIRECTION,
            }
        })
        .collect())
}

fn first_nonnegative(path: &[f64]) -> usize {
    for (i, &v) in path.iter().enumerate() {
        if v >= 0.0 {
            return i;
        }
    }
    path.len()
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentFit {
    pub theta_hat: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub window: (f64, f64),
    pub points: Vec<PersistenceEstimate>,
}

/// Weighted least squares of −ln p̂ against T inside the window, with
/// weights 1/ci². The intercept absorbs the o(1) prefactor; only the
/// slope is the exponent estimate. The standard error is residual-scaled
/// (zero for an exact line).
pub fn fit_exponent(estimates: &[PersistenceEstimate], window: (f64, f64)) -> Result<ExponentFit> {
    let (t_min, t_max) = window;
    if !(t_min < t_max) {
        return Err(Error::Domain(format!("bad window [{t_min}, {t_max}]")));
    }
    let in_window: Vec<&PersistenceEstimate> = estimates
        .iter()
        .filter(|e| e.horizon >= t_min - 1e-9 && e.horizon <= t_max + 1e-9)
        .collect();
    if in_window.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "only {} estimates inside window [{t_min}, {t_max}], need 3",
            in_window.len()
        )));
    }
    let usable: Vec<&PersistenceEstimate> = in_window
        .iter()
        .copied()
        .filter(|e| e.n_survive >= MIN_SURVIVORS_FOR_FIT)
        .collect();
    if usable.len() < 3 {
        let starved: Vec<String> = in_window
            .iter()
            .filter(|e| e.n_survive < MIN_SURVIVORS_FOR_FIT)
            .map(|e| format!("T={} ({} survivors)", e.horizon, e.n_survive))
            .collect();
        return Err(Error::BudgetInfeasible(format!(
            "{} window points have fewer than {MIN_SURVIVORS_FOR_FIT} survivors: {}",
            starved.len(),
            starved.join(", ")
        )));
    }

    let mut sw = 0.0;
    let mut swt = 0.0;
    let mut swy = 0.0;
    for e in &usable {
        let ci = e.ci_log.unwrap();
        let w = 1.0 / (ci * ci);
        sw += w;
        swt += w * e.horizon;
        swy += w * (-e.log_p);
    }
    let t_bar = swt / sw;
    let y_bar = swy / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for e in &usable {
        let ci = e.ci_log.unwrap();
        let w = 1.0 / (ci * ci);
        let dt = e.horizon - t_bar;
        sxx += w * dt * dt;
        sxy += w * dt * (-e.log_p - y_bar);
    }
    if sxx <= 0.0 {
        return Err(Error::InsufficientData(
            "window points share a single horizon".into(),
        ));
    }
    let theta_hat = sxy / sxx;
    let intercept = y_bar - theta_hat * t_bar;
    let dof = (usable.len() - 2) as f64;
    let mut chi2 = 0.0;
    for e in &usable {
        let ci = e.ci_log.unwrap();
        let w = 1.0 / (ci * ci);
        let r = -e.log_p - (intercept + theta_hat * e.horizon);
        chi2 += w * r * r;
    }
    let stderr = (chi2 / dof / sxx).sqrt();

    Ok(ExponentFit {
        theta_hat,
        intercept,
        stderr,
        window,
        points: usable.into_iter().cloned().collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SubadditivityReport {
    pub estimate_t1: PersistenceEstimate,
    pub estimate_t2: PersistenceEstimate,
    pub estimate_sum: PersistenceEstimate,
    /// p̂(T1)·p̂(T2).
    pub product: f64,
    /// 3 propagated standard errors.
    pub tolerance: f64,
    pub satisfied: bool,
}

/// Verify p̂(T1+T2) ≥ p̂(T1)·p̂(T2) − 3σ, the sampled form of the
/// subadditivity of −ln P for nonnegative-correlation specs.
pub fn subadditivity_check(
    spec: &CorrelationSpec,
    t1: f64,
    t2: f64,
    delta: f64,
    n_trials: u64,
    seed: u64,
) -> Result<SubadditivityReport> {
    let e1 = persistence_probability(spec, t1, delta, n_trials, seed)?;
    let e2 = persistence_probability(spec, t2, delta, n_trials, seed.wrapping_add(1))?;
    let e12 = persistence_probability(spec, t1 + t2, delta, n_trials, seed.wrapping_add(2))?;
    let n = n_trials as f64;
    let var = |p: f64| p * (1.0 - p) / n;
    let tolerance = 3.0
        * (var(e12.p_hat)
            + e2.p_hat * e2.p_hat * var(e1.p_hat)
            + e1.p_hat * e1.p_hat * var(e2.p_hat))
        .sqrt();
    let product = e1.p_hat * e2.p_hat;
    let satisfied = e12.p_hat >= product - tolerance;
    Ok(SubadditivityReport {
        estimate_t1: e1,
        estimate_t2: e2,
        estimate_sum: e12,
        product,
        tolerance,
        satisfied,
    })
}

/// Process family for exponent curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProcessFamily {
    Ifbm,
    Rl,
    Fbm,
}

impl ProcessFamily {
    pub fn lamperti_spec(&self, h: f64) -> Result<CorrelationSpec> {
        match self {
            ProcessFamily::Ifbm => CorrelationSpec::ifbm_lamperti(h),
            ProcessFamily::Rl => CorrelationSpec::rl_lamperti(h),
            ProcessFamily::Fbm => CorrelationSpec::fbm_lamperti(h),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ProcessFamily::Ifbm => "ifbm",
            ProcessFamily::Rl => "rl",
            ProcessFamily::Fbm => "fbm",
        }
    }
}

/// One point of an exponent-versus-H curve. For integrated FBM the
/// conjectured value H(1−H) and the Molchan bounds min(H,1−H)/2 and
/// min(H,1−H) ride along, computed exactly and independently of the
/// Monte-Carlo result.
#[derive(Debug, Clone, Serialize)]
pub struct CurvePoint {
    pub family: ProcessFamily,
    pub h: f64,
    pub fit: Option<ExponentFit>,
    /// Why the fit is missing (budget-infeasible points are recorded,
    /// not fatal).
    pub failure: Option<String>,
    pub conjecture: Option<f64>,
    pub bound_lower: Option<f64>,
    pub bound_upper: Option<f64>,
}

impl CurvePoint {
    pub fn theta_hat(&self) -> Option<f64> {
        self.fit.as_ref().map(|f| f.theta_hat)
    }

    pub fn stderr(&self) -> Option<f64> {
        self.fit.as_ref().map(|f| f.stderr)
    }
}

/// Fitting window sampled at `window_points` equispaced horizons.
pub fn window_horizons(window: (f64, f64), window_points: usize) -> Vec<f64> {
    let (a, b) = window;
    (0..window_points)
        .map(|k| a + (b - a) * k as f64 / (window_points - 1) as f64)
        .collect()
}

/// Estimate the exponent of `spec` with `trials` per window point.
pub fn estimate_exponent(
    spec: &CorrelationSpec,
    trials: u64,
    delta: f64,
    window: (f64, f64),
    window_points: usize,
    seed: u64,
) -> Result<ExponentFit> {
    if window_points < 3 {
        return Err(Error::Domain(format!(
            "window needs >= 3 points, got {window_points}"
        )));
    }
    let horizons = window_horizons(window, window_points);
    let estimates = persistence_profile(spec, &horizons, delta, trials, seed)?;
    fit_exponent(&estimates, window)
}

/// Exponent curve over an H list for one family.
#[allow(clippy::too_many_arguments)]
pub fn exponent_curve(
    family: ProcessFamily,
    h_list: &[f64],
    trials_per_point: u64,
    delta: f64,
    window: (f64, f64),
    window_points: usize,
    master_seed: u64,
) -> Result<Vec<CurvePoint>> {
    let mut out = Vec::with_capacity(h_list.len());
    for (i, &h) in h_list.iter().enumerate() {
        let spec = family.lamperti_spec(h)?;
        let seed = master_seed.wrapping_add(i as u64);
        let fit = estimate_exponent(&spec, trials_per_point, delta, window, window_points, seed);
        let (conjecture, bound_lower, bound_upper) = if family == ProcessFamily::Ifbm {
            let m = h.min(1.0 - h);
            (Some(h * (1.0 - h)), Some(m / 2.0), Some(m))
        } else {
            (None, None, None)
        };
        let (fit, failure) = match fit {
            Ok(f) => (Some(f), None),
            Err(e) => (None, Some(e.to_string())),
        };
        out.push(CurvePoint {
            family,
            h,
            fit,
            failure,
            conjecture,
            bound_lower,
            bound_upper,
        });
    }
    Ok(out)
}

/// Exponent of the γ-rescaled spec A(τ/γ); the population identity is
/// θ(rescaled) = θ(original)/γ, so γ = H estimates θ_I(H)/H.
#[allow(clippy::too_many_arguments)]
pub fn rescaled_exponent(
    family: ProcessFamily,
    h: f64,
    gamma: f64,
    trials: u64,
    delta: f64,
    window: (f64, f64),
    window_points: usize,
    seed: u64,
) -> Result<ExponentFit> {
    let spec = family.lamperti_spec(h)?.with_time_scale(gamma)?;
    estimate_exponent(&spec, trials, delta, window, window_points, seed)
}
