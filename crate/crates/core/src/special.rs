//! Legendre functions of the first kind with real degree, for arguments
//! just above 1.
//!
//! `P_nu(z) = 2F1(-nu, nu + 1; 1; (1 - z)/2)`. The hypergeometric series
//! converges for `|1 - z| < 2`; the only argument the estimates need is
//! `cosh 1 ≈ 1.543`, where `(1 - z)/2 ≈ -0.27`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative truncation tolerance of the hypergeometric series.
pub const SERIES_TOL: f64 = 1e-13;
/// Term budget before the series is declared non-convergent.
pub const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegendreDegree {
    pub nu: f64,
    pub b_origin: Option<f64>,
}

/// Degree `nu` with `nu (nu + 1) = b / (3 - b)`, i.e.
/// `nu = -1/2 + sqrt(1 + 4 b/(3 - b)) / 2`.
pub fn degree_upsilon(b: f64) -> Result<LegendreDegree> {
    if !b.is_finite() {
        return Err(Error::BOutOfRange { b, range: "(1, 3)" });
    }
    if b >= 3.0 {
        return Err(Error::DegreeSingular { b });
    }
    if b <= 1.0 {
        return Err(Error::BOutOfRange { b, range: "(1, 3)" });
    }
    Ok(LegendreDegree { nu: upsilon_unchecked(b), b_origin: Some(b) })
}

pub(crate) fn upsilon_unchecked(b: f64) -> f64 {
    -0.5 + 0.5 * (1.0 + 4.0 * b / (3.0 - b)).sqrt()
}

/// `P_nu(z)` for real `nu` and `1 <= z < 3`.
///
/// Degrees below `-1/2` are mapped through `P_{-nu-1} = P_nu`.
pub fn legendre_p(nu: f64, z: f64) -> Result<f64> {
    if !(1.0..3.0).contains(&z) {
        return Err(Error::ArgumentOutOfRange { z });
    }
    let nu = if nu < -0.5 { -nu - 1.0 } else { nu };
    hypergeometric_legendre(nu, 0.5 * (1.0 - z))
}

fn hypergeometric_legendre(nu: f64, t: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (kf - nu) * (kf + nu + 1.0) / ((kf + 1.0) * (kf + 1.0)) * t;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= SERIES_TOL * sum.abs() {
            small_run += 1;
            if small_run == 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence { terms: MAX_TERMS })
}

/// Logarithmic derivative `P'_nu(z) / P_nu(z)` (derivative in `z`), using
/// `P'_nu(z) = nu (z P_nu(z) - P_{nu-1}(z)) / (z^2 - 1)`.
pub fn legendre_ratio(nu: f64, z: f64) -> Result<f64> {
    if z <= 1.0 {
        return Err(Error::ArgumentOutOfRange { z });
    }
    let p = legendre_p(nu, z)?;
    if p.abs() < 1e-14 {
        return Err(Error::DivisionNearZero { value: p });
    }
    if nu == 0.0 {
        return Ok(0.0);
    }
    let p_prev = legendre_p(nu - 1.0, z)?;
    let dp = nu * (z * p - p_prev) / (z * z - 1.0);
    Ok(dp / p)
}
