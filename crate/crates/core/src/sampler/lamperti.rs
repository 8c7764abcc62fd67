//! Lamperti transform of a sampled self-similar path:
//! Z_τ = normalizer · e^{−ατ} · X_{e^τ}, with linear-in-t interpolation
//! between grid points (consistent with trapezoidal path integration).

use super::GridSpec;
use crate::error::{Error, Result};

/// Normalizer giving the unit-variance transform of integrated FBM.
pub fn ifbm_lamperti_normalizer(h: f64) -> f64 {
    (2.0 * (1.0 + h)).sqrt()
}

/// Normalizer giving the unit-variance transform of the
/// Riemann-Liouville process.
pub fn rl_lamperti_normalizer(h: f64) -> f64 {
    (2.0 * h).sqrt()
}

/// Map path values on `t_grid` (ascending, covering [1, e^T]) to the
/// stationary τ-grid.
pub fn lamperti(
    values: &[f64],
    t_grid: &[f64],
    alpha: f64,
    normalizer: f64,
    tau_grid: &GridSpec,
) -> Result<Vec<f64>> {
    if values.len() != t_grid.len() || t_grid.len() < 2 {
        return Err(Error::Domain(format!(
            "lamperti: path has {} values on a {}-point t-grid",
            values.len(),
            t_grid.len()
        )));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!(
            "lamperti: self-similarity index {alpha} must be > 0"
        )));
    }
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("lamperti: t-grid must be ascending".into()));
    }
    let need_lo = 1.0;
    let need_hi = tau_grid.horizon().exp();
    let have_lo = t_grid[0];
    let have_hi = *t_grid.last().unwrap();
    if have_lo > need_lo * (1.0 + 1e-12) || have_hi < need_hi * (1.0 - 1e-12) {
        return Err(Error::Coverage {
            have_lo,
            have_hi,
            need_lo,
            need_hi,
        });
    }

    let mut out = Vec::with_capacity(tau_grid.points());
    for k in 0..tau_grid.points() {
        let tau = tau_grid.tau(k);
        let t = tau.exp().min(have_hi);
        // Binary search for the bracketing interval.
        let idx = match t_grid.binary_search_by(|v| v.total_cmp(&t)) {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1).min(t_grid.len() - 2),
        };
        let x = if idx == t_grid.len() - 1 || t_grid[idx] == t {
            values[idx]
        } else {
            let (t0, t1) = (t_grid[idx], t_grid[idx + 1]);
            let w = (t - t0) / (t1 - t0);
            values[idx] * (1.0 - w) + values[idx + 1] * w
        };
        out.push(normalizer * (-alpha * tau).exp() * x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_path_maps_to_zero() {
        let t: Vec<f64> = (0..=100).map(|k| 1.0 + 0.02 * k as f64).collect();
        let x = vec![0.0; t.len()];
        let tau = GridSpec::new(0.5, 6).unwrap();
        let z = lamperti(&x, &t, 1.5, 2.0, &tau).unwrap();
        assert!(z.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn power_path_cancels_exactly_at_nodes() {
        // X_t = t^α makes Z ≡ normalizer at τ-nodes whose e^τ lies on the
        // t-grid.
        let alpha = 1.3;
        let tau = GridSpec::new(1.0, 5).unwrap();
        let t: Vec<f64> = tau.values().iter().map(|&u| u.exp()).collect();
        let x: Vec<f64> = t.iter().map(|&ti| ti.powf(alpha)).collect();
        let z = lamperti(&x, &t, alpha, 0.7, &tau).unwrap();
        for &v in &z {
            assert!((v - 0.7).abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn coverage_is_enforced() {
        let t: Vec<f64> = (0..=10).map(|k| 1.0 + 0.1 * k as f64).collect();
        let x = vec![0.0; t.len()];
        let tau = GridSpec::new(1.0, 3).unwrap(); // needs up to e ≈ 2.718
        assert!(matches!(
            lamperti(&x, &t, 1.0, 1.0, &tau),
            Err(Error::Coverage { .. })
        ));
        let t: Vec<f64> = (0..=10).map(|k| 1.1 + 0.1 * k as f64).collect();
        let tau = GridSpec::new(0.5, 3).unwrap();
        assert!(matches!(
            lamperti(&vec![0.0; t.len()], &t, 1.0, 1.0, &tau),
            Err(Error::Coverage { .. })
        ));
    }

    #[test]
    fn normalizers() {
        assert!((ifbm_lamperti_normalizer(0.5) - 3f64.sqrt()).abs() < 1e-15);
        assert!((rl_lamperti_normalizer(0.5) - 1.0).abs() < 1e-15);
    }
}
