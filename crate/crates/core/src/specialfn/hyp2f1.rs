//! Gauss hypergeometric function ₂F₁(a, b; c; x) for x ∈ [0, 1].
//!
//! The direct power series is used away from the unit argument. Near x = 1
//! it needs O(1/(1−x)) terms, so the evaluation switches to expansions in
//! w = 1−x: the standard two-series connection formula when c−a−b is not an
//! integer, and the logarithmic variants (A&S 15.3.10/15.3.11) when it is.
//! Negative c−a−b is first flipped positive with Euler's transformation.
//! Terminating series (a or b a nonpositive integer) are summed directly
//! for any argument.

use super::gamma::{digamma, ln_gamma_signed};
use crate::error::{Error, Result};

const MAX_TERMS: usize = 1_000_000;
const REL_TOL: f64 = 1e-15;
/// Above this argument the direct series is abandoned for 1−x expansions.
const SERIES_CUTOFF: f64 = 0.95;
/// Distance within which c−a−b is treated as an exact integer.
const INT_SNAP: f64 = 1e-9;
/// Distance within which c−a−b is too close to an integer for the
/// two-series connection formula to be trusted (catastrophic cancellation).
const INT_DANGER: f64 = 1e-3;

/// ₂F₁(a, b; c; x) on x ∈ [0, 1].
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && x.is_finite()) {
        return Err(Error::Domain(format!("hyp2f1({a}, {b}, {c}, {x})")));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!(
            "hyp2f1: c = {c} is a nonpositive integer"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("hyp2f1: x = {x} outside [0, 1]")));
    }
    hyp2f1_with_complement(a, b, c, x, 1.0 - x)
}

/// Same as [`hyp2f1`] but with the complement w = 1−x supplied by the
/// caller. Evaluators working at x = e^{−τ} pass w = −expm1(−τ), which
/// stays accurate when τ is tiny and x rounds to within an ulp of 1.
pub(crate) fn hyp2f1_with_complement(a: f64, b: f64, c: f64, x: f64, w: f64) -> Result<f64> {
    debug_assert!((1.0 - x - w).abs() <= 1e-12 * (1.0 + w.abs()));
    if x == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        // Polynomial case: valid for every x in [0, 1], including 1.
        return gauss_series(a, b, c, x);
    }
    if w <= 0.0 {
        return gauss_summation(a, b, c);
    }
    if x <= SERIES_CUTOFF {
        return gauss_series(a, b, c, x);
    }

    let s = c - a - b;
    if s <= -INT_SNAP {
        // Euler transform flips the exponent sign: F(a,b;c;x) =
        // (1−x)^{c−a−b} F(c−a, c−b; c; x).
        return Ok(w.powf(s) * hyp2f1_with_complement(c - a, c - b, c, x, w)?);
    }
    let m = s.round();
    if (s - m).abs() <= INT_SNAP {
        return log_case_near_unit(a, b, m as usize, w);
    }
    if (s - m).abs() < INT_DANGER {
        // Close enough to an integer that the two connection series cancel
        // badly; the direct series still converges, just slowly.
        return gauss_series(a, b, c, x);
    }
    connection_near_unit(a, b, c, s, w)
}

/// ₂F₁ at x = 1 via the Gauss summation formula; requires c − a − b > 0.
fn gauss_summation(a: f64, b: f64, c: f64) -> Result<f64> {
    let s = c - a - b;
    if s <= 0.0 {
        return Err(Error::Domain(format!(
            "hyp2f1 diverges at x = 1 when c - a - b = {s} <= 0"
        )));
    }
    gamma_ratio(&[c, s], &[c - a, c - b])
}

/// Direct power series with incremental Pochhammer ratios.
fn gauss_series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut quiet = 0u32;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.abs() <= REL_TOL * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        terms: MAX_TERMS,
        last_term: term,
    })
}

/// Two-series expansion in w = 1−x for non-integer s = c−a−b > 0.
fn connection_near_unit(a: f64, b: f64, c: f64, s: f64, w: f64) -> Result<f64> {
    let coeff1 = gamma_ratio(&[c, s], &[c - a, c - b])?;
    let f1 = if coeff1 == 0.0 {
        0.0
    } else {
        gauss_series(a, b, 1.0 - s, w)?
    };
    let coeff2 = gamma_ratio(&[c, -s], &[a, b])?;
    let f2 = if coeff2 == 0.0 {
        0.0
    } else {
        gauss_series(c - a, c - b, s + 1.0, w)?
    };
    Ok(coeff1 * f1 + w.powf(s) * coeff2 * f2)
}

/// Logarithmic expansion in w = 1−x for c = a + b + m with integer m ≥ 0
/// (A&S 15.3.10 and 15.3.11):
///
/// F = P₁ + (−1)^m (Γ(a+b+m)/Γ(a)Γ(b)) w^m Σ_k u_k
///       [ψ(k+1) + ψ(k+m+1) − ψ(a+m+k) − ψ(b+m+k) − ln w],
///
/// u_k = (a+m)_k (b+m)_k / (k! (k+m)!) w^k, and P₁ the finite sum
/// Γ(m)Γ(a+b+m)/(Γ(a+m)Γ(b+m)) Σ_{k<m} (a)_k(b)_k/(k!(1−m)_k) w^k.
fn log_case_near_unit(a: f64, b: f64, m: usize, w: f64) -> Result<f64> {
    let mf = m as f64;
    let ln_w = w.ln();

    let mut finite_part = 0.0;
    if m >= 1 {
        let pref = gamma_ratio(&[mf, a + b + mf], &[a + mf, b + mf])?;
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 0..m {
            sum += term;
            let kf = k as f64;
            term *= (a + kf) * (b + kf) / ((kf + 1.0) * (1.0 - mf + kf)) * w;
        }
        finite_part = pref * sum;
    }

    let pref = gamma_ratio(&[a + b + mf], &[a, b])?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    // u_0 = 1/m!
    let mut u = (-ln_gamma_signed(mf + 1.0)?.0).exp();
    let mut psi = digamma(1.0)? + digamma(mf + 1.0)? - digamma(a + mf)? - digamma(b + mf)?;
    let mut sum = 0.0f64;
    let mut quiet = 0u32;
    for k in 0..MAX_TERMS {
        let term = u * (psi - ln_w);
        sum += term;
        if term.abs() <= REL_TOL * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        let kf = k as f64;
        u *= (a + mf + kf) * (b + mf + kf) / ((kf + 1.0) * (kf + mf + 1.0)) * w;
        psi += 1.0 / (kf + 1.0) + 1.0 / (kf + mf + 1.0) - 1.0 / (a + mf + kf) - 1.0 / (b + mf + kf);
    }
    Ok(finite_part + sign * pref * w.powf(mf) * sum)
}

/// Π Γ(num_i) / Π Γ(den_j) with sign tracking. A pole in a denominator
/// makes the whole ratio zero; a pole in a numerator is an error.
fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    let mut ln_acc = 0.0;
    let mut sign = 1.0;
    for &d in den {
        if is_nonpositive_integer(d) {
            return Ok(0.0);
        }
        let (l, s) = ln_gamma_signed(d)?;
        ln_acc -= l;
        sign *= s;
    }
    for &n in num {
        let (l, s) = ln_gamma_signed(n)?;
        ln_acc += l;
        sign *= s;
    }
    Ok(sign * ln_acc.exp())
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.5 && (v - v.round()).abs() <= 1e-12 && v.round() <= 0.0
}
