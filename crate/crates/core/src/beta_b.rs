//! The blow-up threshold
//!
//! ```text
//! beta_b = inf { beta > 0 : F(b, beta) >= 0 },
//! F(b, beta) = beta^2 + 2/(b-1) (J(b, beta) - b/2),
//! ```
//!
//! searched over the bracket `[0, (e+1)/(e-1)]` (outside it `J = -inf`).
//! The set `{F >= 0}` is not assumed to be an interval: the first sign
//! change on a uniform scan is refined by bisection, and any return to
//! negative values further up is flagged.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimates::{estimate1, estimate2, estimate3, EstimateResult};
use crate::variational::compute_j;
use crate::{check_b, check_beta, BETA_MAX};

pub const DEFAULT_TOL: f64 = 1e-4;
pub const DEFAULT_SCAN_POINTS: usize = 256;
pub const MIN_TOL: f64 = 1e-6;
pub const MIN_SCAN_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BetaBStatus {
    Finite,
    InfiniteInBracket,
    Undetermined,
}

impl BetaBStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BetaBStatus::Finite => "FINITE",
            BetaBStatus::InfiniteInBracket => "INFINITE_IN_BRACKET",
            BetaBStatus::Undetermined => "UNDETERMINED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaBResult {
    pub b: f64,
    pub status: BetaBStatus,
    /// Left edge of the certified region `F >= 0`; set for `Finite`, and for
    /// `Undetermined` when a noisy crossing was found.
    pub beta_b: Option<f64>,
    pub uncertainty: f64,
    pub bracket: (f64, f64),
    /// `F` turns negative again somewhere above `beta_b`.
    pub later_sign_reversal: bool,
}

/// One evaluation of `F` with its error band from the `J` refinement
/// estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FSample {
    pub beta: f64,
    pub value: f64,
    pub band: f64,
}

pub fn f_sample(b: f64, beta: f64) -> Result<FSample> {
    let j = compute_j(b, beta)?;
    let scale = 2.0 / (b - 1.0);
    Ok(FSample {
        beta,
        value: beta * beta + scale * (j.value - 0.5 * b),
        band: scale * j.error_estimate,
    })
}

/// `F(b, beta) = beta^2 + 2/(b-1) (J(b, beta) - b/2)`.
pub fn f_discriminant(b: f64, beta: f64) -> Result<f64> {
    check_b(b)?;
    check_beta(beta)?;
    Ok(f_sample(b, beta)?.value)
}

pub fn compute_beta_b(b: f64, tol: f64, scan_points: usize) -> Result<BetaBResult> {
    check_b(b)?;
    if !(tol >= MIN_TOL) {
        return Err(Error::InvalidConfig(format!("tol {tol} below {MIN_TOL}")));
    }
    if scan_points < MIN_SCAN_POINTS {
        return Err(Error::InvalidConfig(format!(
            "scan_points {scan_points} below {MIN_SCAN_POINTS}"
        )));
    }
    if b == 3.0 {
        // J(3, .) vanishes identically, so F = beta^2 - 3/2
        return Ok(BetaBResult {
            b,
            status: BetaBStatus::Finite,
            beta_b: Some(1.5f64.sqrt()),
            uncertainty: 0.0,
            bracket: (0.0, BETA_MAX),
            later_sign_reversal: false,
        });
    }
    let step = BETA_MAX / (scan_points - 1) as f64;
    let samples = (0..scan_points)
        .into_par_iter()
        .map(|i| {
            let beta = if i + 1 == scan_points { BETA_MAX } else { i as f64 * step };
            f_sample(b, beta)
        })
        .collect::<Result<Vec<_>>>()?;

    let result = |status, beta_b, uncertainty, later_sign_reversal| BetaBResult {
        b,
        status,
        beta_b,
        uncertainty,
        bracket: (0.0, BETA_MAX),
        later_sign_reversal,
    };

    let Some(first) = samples.iter().position(|s| s.value >= 0.0) else {
        let status = if samples.iter().any(|s| s.value + s.band >= 0.0) {
            BetaBStatus::Undetermined
        } else {
            BetaBStatus::InfiniteInBracket
        };
        return Ok(result(status, None, 0.0, false));
    };
    let later = samples[first + 1..].iter().any(|s| s.value < -s.band);
    if first == 0 {
        return Ok(result(BetaBStatus::Finite, Some(0.0), 0.0, later));
    }

    let (mut lo, mut hi) = (samples[first - 1], samples[first]);
    let noisy = hi.value < hi.band && lo.value > -lo.band;
    while hi.beta - lo.beta > tol {
        let mid = f_sample(b, 0.5 * (lo.beta + hi.beta))?;
        if mid.value >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let cell_slope = (samples[first].value - samples[first - 1].value) / step;
    let noise_shift = if cell_slope > 0.0 { hi.band / cell_slope } else { 0.0 };
    let uncertainty = (hi.beta - lo.beta) + noise_shift;
    let status = if noisy { BetaBStatus::Undetermined } else { BetaBStatus::Finite };
    Ok(result(status, Some(hi.beta), uncertainty, later))
}

/// One row of a `beta_b` sweep, with the analytic estimates at the same `b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub b: f64,
    pub result: Option<BetaBResult>,
    pub error: Option<String>,
    pub estimates: [Option<EstimateResult>; 3],
}

/// `steps` points from `min` to `max`, endpoints included.
pub fn sweep_points(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..steps)
            .map(|i| {
                if i + 1 == steps {
                    max
                } else {
                    min + (max - min) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

pub fn sweep(b_min: f64, b_max: f64, steps: usize, tol: f64) -> Result<Vec<SweepRow>> {
    sweep_with(b_min, b_max, steps, tol, DEFAULT_SCAN_POINTS)
}

/// [`sweep`] with an explicit number of `beta` scan points per row.
pub fn sweep_with(b_min: f64, b_max: f64, steps: usize, tol: f64, scan_points: usize) -> Result<Vec<SweepRow>> {
    if !(b_min > 1.0 && b_min <= b_max && b_max <= 3.0) {
        return Err(Error::BOutOfRange { b: if b_min > 1.0 { b_max } else { b_min }, range: "(1, 3]" });
    }
    if steps == 0 {
        return Err(Error::InvalidConfig("sweep needs at least one point".into()));
    }
    if !(tol >= MIN_TOL) || scan_points < MIN_SCAN_POINTS {
        return Err(Error::InvalidConfig(format!(
            "need tol >= {MIN_TOL} and scan_points >= {MIN_SCAN_POINTS}, got {tol} and {scan_points}"
        )));
    }
    Ok(sweep_points(b_min, b_max, steps)
        .into_par_iter()
        .map(|b| {
            let (result, error) = match compute_beta_b(b, tol, scan_points) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            SweepRow {
                b,
                result,
                error,
                estimates: [estimate1(b).ok(), estimate2(b).ok(), estimate3(b).ok()],
            }
        })
        .collect())
}

/// Smallest `b` in a range at which `beta_b` becomes finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Onset {
    /// Last `b` known not to be finite and first `b` known to be finite.
    pub below: f64,
    pub above: f64,
}

impl Onset {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.below + self.above)
    }
}

/// Scans `[b_lo, b_hi]` on `scan` points for the first `Finite` status and
/// bisects the transition cell to width `b_tol`. `None` when no point in the
/// range is finite or the lowest point already is.
pub fn locate_onset(b_lo: f64, b_hi: f64, scan: usize, b_tol: f64, beta_tol: f64) -> Result<Option<Onset>> {
    let finite = |b: f64| -> Result<bool> {
        Ok(compute_beta_b(b, beta_tol, DEFAULT_SCAN_POINTS)?.status == BetaBStatus::Finite)
    };
    let points = sweep_points(b_lo, b_hi, scan.max(2));
    let flags = points.par_iter().map(|&b| finite(b)).collect::<Result<Vec<_>>>()?;
    let Some(k) = flags.iter().position(|&f| f) else {
        return Ok(None);
    };
    if k == 0 {
        return Ok(None);
    }
    let (mut below, mut above) = (points[k - 1], points[k]);
    while above - below > b_tol {
        let mid = 0.5 * (below + above);
        if finite(mid)? {
            above = mid;
        } else {
            below = mid;
        }
    }
    Ok(Some(Onset { below, above }))
}
