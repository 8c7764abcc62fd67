//! Stationary correlation functions of the Lamperti-transformed processes,
//! the identities relating them, rescalings, and numeric diagnostics for
//! the hypotheses of the persistence-exponent continuity lemma.
//!
//! All evaluators are pure and unit-normalized: every family returns
//! exactly 1 at lag zero.

use crate::error::{Error, Result};
use crate::quadrature;
use crate::specialfn::{hyp2f1_with_complement, log_gamma};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Hurst parameter. Fractional-Brownian contexts require H ∈ (0,1);
/// Riemann-Liouville contexts allow any H > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hurst(f64);

impl Hurst {
    /// H for FBM / integrated FBM: must lie in (0, 1).
    pub fn fractional(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 1.0 {
            Ok(Hurst(value))
        } else {
            Err(Error::Domain(format!(
                "Hurst parameter {value} outside (0, 1)"
            )))
        }
    }

    /// H for Riemann-Liouville processes: any positive value.
    pub fn positive(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Hurst(value))
        } else {
            Err(Error::Domain(format!(
                "Hurst parameter {value} must be > 0"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// One of the stationary correlation families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CorrelationKind {
    /// Lamperti transform of integrated FBM, H ∈ (0,1).
    IfbmLamperti { h: Hurst },
    /// Lamperti transform of the Riemann-Liouville process, H > 0.
    RlLamperti { h: Hurst },
    /// Lamperti transform of FBM itself, H ∈ (0,1).
    FbmLamperti { h: Hurst },
    /// e^{−rate·τ}.
    OrnsteinUhlenbeck { rate: f64 },
    /// (1 − τ^H)₊, H ∈ (0,1).
    FractionalSlepian { h: Hurst },
    /// 1/cosh(τ/2), the H → ∞ limit of the Riemann-Liouville family.
    CoshLimit,
}

/// A correlation family plus a time rescaling: `eval(τ)` returns A(τ/γ).
///
/// A process with correlation A(τ/γ) is the original run at 1/γ speed, so
/// its persistence exponent is θ/γ. The estimator consumes rescaled specs
/// opaquely; γ = H (resp. 1−H) realizes the rescaled transforms whose
/// exponents are θ_I(H)/H and θ_I(H)/(1−H).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSpec {
    kind: CorrelationKind,
    time_scale: f64,
}

impl CorrelationSpec {
    pub fn new(kind: CorrelationKind) -> Result<Self> {
        if let CorrelationKind::OrnsteinUhlenbeck { rate } = kind {
            if !(rate.is_finite() && rate > 0.0) {
                return Err(Error::Domain(format!("OU rate {rate} must be > 0")));
            }
        }
        Ok(CorrelationSpec {
            kind,
            time_scale: 1.0,
        })
    }

    pub fn ifbm_lamperti(h: f64) -> Result<Self> {
        Self::new(CorrelationKind::IfbmLamperti {
            h: Hurst::fractional(h)?,
        })
    }

    pub fn rl_lamperti(h: f64) -> Result<Self> {
        Self::new(CorrelationKind::RlLamperti {
            h: Hurst::positive(h)?,
        })
    }

    pub fn fbm_lamperti(h: f64) -> Result<Self> {
        Self::new(CorrelationKind::FbmLamperti {
            h: Hurst::fractional(h)?,
        })
    }

    pub fn ornstein_uhlenbeck(rate: f64) -> Result<Self> {
        Self::new(CorrelationKind::OrnsteinUhlenbeck { rate })
    }

    pub fn fractional_slepian(h: f64) -> Result<Self> {
        Self::new(CorrelationKind::FractionalSlepian {
            h: Hurst::fractional(h)?,
        })
    }

    pub fn cosh_limit() -> Self {
        CorrelationSpec {
            kind: CorrelationKind::CoshLimit,
            time_scale: 1.0,
        }
    }

    /// Replace the time scale γ; evaluation becomes A(τ/γ).
    pub fn with_time_scale(mut self, gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Domain(format!("time scale {gamma} must be > 0")));
        }
        self.time_scale = gamma;
        Ok(self)
    }

    pub fn kind(&self) -> CorrelationKind {
        self.kind
    }

    pub fn time_scale(&self) -> f64 {
        self.time_scale
    }

    /// A(τ/γ) for this family; exactly 1 at τ = 0.
    pub fn eval(&self, tau: f64) -> Result<f64> {
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::Domain(format!("correlation lag {tau} must be >= 0")));
        }
        let u = tau / self.time_scale;
        match self.kind {
            CorrelationKind::IfbmLamperti { h } => rho_ifbm(h.value(), u),
            CorrelationKind::RlLamperti { h } => r_rl(h.value(), u),
            CorrelationKind::FbmLamperti { h } => fbm_lamperti(h.value(), u),
            CorrelationKind::OrnsteinUhlenbeck { rate } => Ok((-rate * u).exp()),
            CorrelationKind::FractionalSlepian { h } => {
                if u >= 1.0 {
                    Ok(0.0)
                } else {
                    Ok(1.0 - u.powf(h.value()))
                }
            }
            CorrelationKind::CoshLimit => Ok(1.0 / (u / 2.0).cosh()),
        }
    }

    /// Short lowercase tag used in CSV output.
    pub fn family_tag(&self) -> &'static str {
        match self.kind {
            CorrelationKind::IfbmLamperti { .. } => "ifbm",
            CorrelationKind::RlLamperti { .. } => "rl",
            CorrelationKind::FbmLamperti { .. } => "fbm",
            CorrelationKind::OrnsteinUhlenbeck { .. } => "ou",
            CorrelationKind::FractionalSlepian { .. } => "slepian",
            CorrelationKind::CoshLimit => "cosh",
        }
    }

    pub fn hurst(&self) -> Option<f64> {
        match self.kind {
            CorrelationKind::IfbmLamperti { h }
            | CorrelationKind::RlLamperti { h }
            | CorrelationKind::FbmLamperti { h }
            | CorrelationKind::FractionalSlepian { h } => Some(h.value()),
            _ => None,
        }
    }
}

/// Switch point between the raw formula for ρ_H and its decaying-series
/// rearrangement. The raw formula loses ~e^{(1+H)τ}·ε_machine absolute
/// accuracy, so it must not be used much beyond τ ≈ 10; the series
/// converges geometrically in e^{−τ} and is cheap for τ ≥ 1.
const RHO_SERIES_SWITCH: f64 = 1.0;

/// Correlation of the unit-variance Lamperti transform of integrated FBM.
pub fn rho_ifbm(h: f64, tau: f64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) || !h.is_finite() {
        return Err(Error::Domain(format!("rho_ifbm: H = {h} outside (0, 1)")));
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Domain(format!("rho_ifbm: tau = {tau} must be >= 0")));
    }
    if tau == 0.0 {
        return Ok(1.0);
    }
    if tau < RHO_SERIES_SWITCH {
        Ok(rho_ifbm_raw(h, tau))
    } else {
        Ok(rho_ifbm_series(h, tau))
    }
}

fn rho_ifbm_raw(h: f64, tau: f64) -> f64 {
    let q = 1.0 + 2.0 * h;
    (1.0 + h) * ((-h * tau).exp() + (h * tau).exp()) / q
        + ((tau / 2.0).exp() - (-tau / 2.0).exp()).powf(2.0 * (1.0 + h)) / (2.0 * q)
        - (((1.0 + h) * tau).exp() + (-(1.0 + h) * tau).exp()) / (2.0 * q)
}

/// Cancellation-free form: expanding (1−e^{−τ})^{2+2H} by the binomial
/// series makes the exponentially growing terms cancel exactly, leaving
///
/// ρ_H(τ) = (1+H)e^{−Hτ}/(1+2H) − e^{−(1+H)τ}/(2(1+2H))
///          + Σ_{k≥2} (−1)^k C(2+2H, k) e^{−(k−1−H)τ} / (2(1+2H)),
///
/// in which every exponent decays.
fn rho_ifbm_series(h: f64, tau: f64) -> f64 {
    let q = 1.0 + 2.0 * h;
    let a = 2.0 + 2.0 * h;
    let mut acc = (1.0 + h) * (-h * tau).exp() / q - (-(1.0 + h) * tau).exp() / (2.0 * q);
    // (−1)^k C(a, k) for k = 2, updated incrementally.
    let mut signed_binom = a * (a - 1.0) / 2.0;
    let mut k = 2.0;
    loop {
        let term = signed_binom * (-(k - 1.0 - h) * tau).exp() / (2.0 * q);
        acc += term;
        if term.abs() <= 1e-17 * acc.abs() || k > 4096.0 {
            break;
        }
        signed_binom *= -(a - k) / (k + 1.0);
        k += 1.0;
    }
    acc
}

/// Correlation of the unit-variance Lamperti transform of the
/// Riemann-Liouville process:
/// r_H(τ) = (4H/(1+2H)) e^{−τ/2} ₂F₁(1, 1/2−H; 3/2+H; e^{−τ}).
pub fn r_rl(h: f64, tau: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Domain(format!("r_rl: H = {h} must be > 0")));
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Domain(format!("r_rl: tau = {tau} must be >= 0")));
    }
    if tau == 0.0 {
        // Gauss summation gives exactly (1+2H)/(4H) for the ₂F₁ factor.
        return Ok(1.0);
    }
    let x = (-tau).exp();
    let w = -(-tau).exp_m1();
    let f = hyp2f1_with_complement(1.0, 0.5 - h, 1.5 + h, x, w)?;
    Ok(4.0 * h / (1.0 + 2.0 * h) * (-tau / 2.0).exp() * f)
}

/// e^{−τ/2} − r_H(τ) in the stable product form
/// ((1−2H)/(1+2H)) e^{−τ/2} (1−e^{−τ})^{2H} ₂F₁(1/2+H, 2H; 3/2+H; e^{−τ}).
///
/// Positive for H < 1/2, exactly zero at H = 1/2, negative for H > 1/2.
pub fn r_rl_complement(h: f64, tau: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Domain(format!(
            "r_rl_complement: H = {h} must be > 0"
        )));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::Domain(format!(
            "r_rl_complement: tau = {tau} must be > 0"
        )));
    }
    let pref = (1.0 - 2.0 * h) / (1.0 + 2.0 * h);
    if pref == 0.0 {
        return Ok(0.0);
    }
    let x = (-tau).exp();
    let w = -(-tau).exp_m1();
    let f = hyp2f1_with_complement(0.5 + h, 2.0 * h, 1.5 + h, x, w)?;
    Ok(pref * (-tau / 2.0).exp() * w.powf(2.0 * h) * f)
}

/// Correlation of the unit-variance Lamperti transform of FBM itself:
/// (e^{Hτ} + e^{−Hτ} − (e^{τ/2} − e^{−τ/2})^{2H}) / 2, rearranged so the
/// growing exponentials cancel analytically for large τ.
pub fn fbm_lamperti(h: f64, tau: f64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) || !h.is_finite() {
        return Err(Error::Domain(format!(
            "fbm_lamperti: H = {h} outside (0, 1)"
        )));
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Domain(format!(
            "fbm_lamperti: tau = {tau} must be >= 0"
        )));
    }
    if tau == 0.0 {
        return Ok(1.0);
    }
    // (e^{τ/2} − e^{−τ/2})^{2H} = e^{Hτ}(1 − e^{−τ})^{2H}, so the value is
    // e^{−Hτ}/2 + e^{Hτ}(1 − (1−e^{−τ})^{2H})/2 with both parts decaying.
    let ln_om = ln_one_minus_exp_neg(tau); // ln(1 − e^{−τ})
    let defect = -(2.0 * h * ln_om).exp_m1(); // 1 − (1−e^{−τ})^{2H} > 0
    let small = 0.5 * (-h * tau).exp();
    if h * tau < 30.0 {
        Ok(small + 0.5 * (h * tau).exp() * defect)
    } else {
        Ok(small + 0.5 * (h * tau + defect.ln()).exp())
    }
}

/// ln(1 − e^{−τ}) without cancellation in either regime.
fn ln_one_minus_exp_neg(tau: f64) -> f64 {
    if tau > std::f64::consts::LN_2 {
        (-(-tau).exp()).ln_1p()
    } else {
        (-(-tau).exp_m1()).ln()
    }
}

/// ∫₀^upper r_H(τ) dτ by adaptive quadrature, absolute error ≤ 1e-8.
pub fn integral_r(h: f64, upper: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Domain(format!("integral_r: H = {h} must be > 0")));
    }
    if !(upper.is_finite() && upper > 0.0) {
        return Err(Error::Domain(format!(
            "integral_r: upper = {upper} must be > 0"
        )));
    }
    let q = quadrature::integrate(|t| r_rl(h, t).unwrap_or(f64::NAN), 0.0, upper, 1e-8)?;
    Ok(q.value)
}

/// The Mandelbrot–van Ness constant σ_H = Γ(H+1/2)/√(2H sin(πH) Γ(2H))
/// relating the Riemann-Liouville process to FBM.
pub fn mandelbrot_van_ness_sigma(h: f64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::Domain(format!("sigma_H: H = {h} outside (0, 1)")));
    }
    let ln_num = log_gamma(h + 0.5)?;
    let ln_den = (2.0 * h * (PI * h).sin()).ln() + log_gamma(2.0 * h)?;
    Ok((ln_num - 0.5 * ln_den).exp())
}

/// Numeric diagnostics for the hypotheses of the continuity lemma for
/// persistence exponents. Raw numbers only; the conditions involve limits
/// that can only be sampled, so no verdict is attached.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma13Diagnostics {
    /// Σ_{τ=L}^{cutoff} A(τ/ℓ) over integer τ: finite proxy for the
    /// summability condition.
    pub tail_sum: f64,
    /// Per ε: sup over a fine grid of [0, ε] of (1 − A(τ)): the local
    /// modulus condition.
    pub modulus: Vec<(f64, f64)>,
    /// ln A_limit(cutoff) / ln cutoff for the limiting spec: the
    /// polynomial-decay condition (−∞ if A_limit(cutoff) = 0).
    pub tail_log_ratio: f64,
}

pub fn check_lemma13_conditions(
    spec: &CorrelationSpec,
    limit: &CorrelationSpec,
    ell: u32,
    l_start: u32,
    eps_grid: &[f64],
    cutoff: u32,
) -> Result<Lemma13Diagnostics> {
    if ell == 0 || l_start == 0 || cutoff < l_start {
        return Err(Error::Domain(format!(
            "lemma-13 diagnostics need ell, L >= 1 and cutoff >= L (got {ell}, {l_start}, {cutoff})"
        )));
    }
    for &e in eps_grid {
        if !(e > 0.0 && e < 1.0) {
            return Err(Error::Domain(format!("eps {e} outside (0, 1)")));
        }
    }

    let mut tail_sum = 0.0;
    for k in l_start..=cutoff {
        tail_sum += spec.eval(k as f64 / ell as f64)?;
    }

    const MODULUS_GRID: usize = 256;
    let mut modulus = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let mut sup = 0.0f64;
        for i in 0..=MODULUS_GRID {
            let tau = eps * i as f64 / MODULUS_GRID as f64;
            sup = sup.max(1.0 - spec.eval(tau)?);
        }
        modulus.push((eps, sup));
    }

    let a_limit = limit.eval(cutoff as f64)?;
    let tail_log_ratio = a_limit.ln() / (cutoff as f64).ln();

    Ok(Lemma13Diagnostics {
        tail_sum,
        modulus,
        tail_log_ratio,
    })
}
