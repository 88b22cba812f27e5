//! Closed-form upper bounds for `beta_b` on `b in (1, 3]`.
//!
//! * Estimate 1: the trivial lower bound `J >= 0` gives `sqrt(b/(b-1))`.
//! * Estimate 2: the convolution bound with `delta_b`, either the `beta <= 1`
//!   branch (only active at `b = 2`) or the largest root of a quadratic for
//!   `beta in [1, (e+1)/(e-1)]`.
//! * Estimate 3: the exact value of `J` at the extreme weight, through a
//!   Legendre function of degree `upsilon(b)` at `cosh 1`.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{legendre_ratio, upsilon_unchecked};
use crate::BETA_MAX;

/// Slack when comparing a bound against the edges of its validity window.
const EDGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EstimateKind {
    E1,
    E2,
    E3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub b: f64,
    /// The formula's value where it is real, whether or not it is a valid
    /// bound at this `b`.
    pub value: Option<f64>,
    pub method: EstimateKind,
    pub valid: bool,
    pub threshold_note: String,
}

impl EstimateResult {
    /// The bound on `beta_b`, only when the estimate applies.
    pub fn bound(&self) -> Option<f64> {
        if self.valid {
            self.value
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaB {
    pub b: f64,
    pub value: f64,
}

fn check_estimate_b(b: f64) -> Result<()> {
    if b.is_finite() && b > 1.0 && b <= 3.0 {
        Ok(())
    } else {
        Err(Error::BOutOfRange { b, range: "(1, 3]" })
    }
}

/// `delta_b = sqrt(3-b)/4 (sqrt(3(1+b)) - sqrt(3-b))` on `[-1, 3]`.
pub fn delta_b(b: f64) -> Result<DeltaB> {
    if !(b.is_finite() && (-1.0..=3.0).contains(&b)) {
        return Err(Error::BOutOfRange { b, range: "[-1, 3]" });
    }
    let s = (3.0 - b).sqrt();
    let value = s / 4.0 * ((3.0 * (1.0 + b)).sqrt() - s);
    Ok(DeltaB { b, value })
}

/// `alpha = (e+1)^2 / (4e)`, the onset of Estimate 1.
pub fn alpha() -> f64 {
    (E + 1.0) * (E + 1.0) / (4.0 * E)
}

pub fn estimate1(b: f64) -> Result<EstimateResult> {
    check_estimate_b(b)?;
    let value = (b / (b - 1.0)).sqrt();
    let valid = b >= alpha() || value <= BETA_MAX + EDGE_SLACK;
    Ok(EstimateResult {
        b,
        value: Some(value),
        method: EstimateKind::E1,
        valid,
        threshold_note: format!("valid for b >= alpha = {:.6}", alpha()),
    })
}

/// `phi(b)`: largest root of
/// `beta^2 - beta delta_b (e-1)/(b-1) + (delta_b (e+1) - b)/(b-1)`.
pub fn quadratic_root(b: f64) -> Result<f64> {
    check_estimate_b(b)?;
    let d = delta_b(b)?.value;
    let lin = -d * (E - 1.0) / (b - 1.0);
    let cst = (d * (E + 1.0) - b) / (b - 1.0);
    let discriminant = lin * lin - 4.0 * cst;
    if discriminant < 0.0 {
        return Err(Error::NoRealRoot { discriminant });
    }
    Ok(0.5 * (-lin + discriminant.sqrt()))
}

/// Smallest `beta` allowed by the `beta <= 1` branch:
/// `sqrt(2/(b-1) (b/2 - delta_b))`, when it lands in `[0, 1]`.
pub fn small_beta_branch(b: f64) -> Result<Option<f64>> {
    check_estimate_b(b)?;
    let d = delta_b(b)?.value;
    let r = 2.0 / (b - 1.0) * (0.5 * b - d);
    if r < 0.0 {
        return Ok(Some(0.0));
    }
    let s = r.sqrt();
    Ok((s <= 1.0).then_some(s))
}

pub fn estimate2(b: f64) -> Result<EstimateResult> {
    check_estimate_b(b)?;
    let small = small_beta_branch(b)?;
    let root = quadratic_root(b).ok();
    let root_valid = root.is_some_and(|phi| (1.0 - EDGE_SLACK..=BETA_MAX + EDGE_SLACK).contains(&phi));
    let (value, valid, threshold_note) = match (small, root_valid) {
        (Some(s), _) => (Some(s), true, "beta <= 1 branch".to_string()),
        (None, true) => (root, true, "largest root in [1, (e+1)/(e-1)]".to_string()),
        (None, false) => match root {
            Some(phi) => (Some(phi), false, format!("largest root {phi:.6} outside [1, (e+1)/(e-1)]")),
            None => (None, false, "quadratic has no real root".to_string()),
        },
    };
    Ok(EstimateResult { b, value, method: EstimateKind::E2, valid, threshold_note })
}

/// `J(b, (e+1)/(e-1)) = (3-b)/(4e) (e+1)^2 P'_nu/P_nu (cosh 1)` with
/// `nu = upsilon(b)`; zero at `b = 3`.
pub fn j_at_extreme_weight(b: f64) -> Result<f64> {
    check_estimate_b(b)?;
    if b == 3.0 {
        return Ok(0.0);
    }
    let ratio = legendre_ratio(upsilon_unchecked(b), 1f64.cosh())?;
    Ok((3.0 - b) / (4.0 * E) * (E + 1.0) * (E + 1.0) * ratio)
}

/// `2/(b-1) (b/2 - J(b, (e+1)/(e-1)))`, the square of Estimate 3.
pub fn estimate3_radicand(b: f64) -> Result<f64> {
    Ok(2.0 / (b - 1.0) * (0.5 * b - j_at_extreme_weight(b)?))
}

pub fn estimate3(b: f64) -> Result<EstimateResult> {
    let r = estimate3_radicand(b)?;
    let value = (r >= 0.0).then(|| r.sqrt());
    let valid = value.is_some_and(|v| v <= BETA_MAX + EDGE_SLACK);
    Ok(EstimateResult {
        b,
        value,
        method: EstimateKind::E3,
        valid,
        threshold_note: "valid for b >= gamma".to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub alpha: f64,
    pub gamma: f64,
}

/// Bisection width used for `gamma`.
pub const GAMMA_TOL: f64 = 1e-6;

/// `alpha` in closed form and `gamma`, the root in (1, 1.1) of
/// `estimate3_radicand(b) = ((e+1)/(e-1))^2`.
pub fn thresholds() -> Thresholds {
    let target = BETA_MAX * BETA_MAX;
    let g = |b: f64| estimate3_radicand(b).map(|r| r - target);
    // the radicand is positive and finite near b = 1 and below the target at 1.1
    let (mut lo, mut hi) = (1.0 + 1e-9, 1.1);
    let mut g_lo = g(lo).expect("radicand defined on (1, 1.1]");
    while hi - lo > GAMMA_TOL {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid).expect("radicand defined on (1, 1.1]");
        if (g_mid > 0.0) == (g_lo > 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Thresholds { alpha: alpha(), gamma: 0.5 * (lo + hi) }
}
