//! The variational constant
//!
//! ```text
//! J(b, beta) = inf { int_0^1 w (b/2 u^2 + (3-b)/2 u_x^2) : u in H^1(0,1), u(0) = u(1) = 1 }
//! ```
//!
//! with `w = p + beta p'`. Writing `u = 1 + v`, `J = b/2 + inf T(v)` over
//! `v` vanishing at both ends, and the minimiser solves
//! `(3-b) (w v')' = b w (v + 1)`. Two independent discretisations are
//! provided: a finite-volume solve of that equation evaluated through the
//! boundary flux `J = (3-b)/2 [(w v')(1-) - (w v')(0+)]`, and a direct
//! piecewise-linear minimisation of `T`.
//!
//! At `|beta| = (e+1)/(e-1)` the weight vanishes linearly at one end. Points
//! have zero weighted capacity there, so the boundary value at that end does
//! not constrain the infimum; both discretisations leave it free.
//!
//! At `b = 3` there is no gradient penalty and boundary layers of vanishing
//! width send `int w u^2` to zero, so `J(3, beta) = 0`.

mod bound;
mod bvp;
mod direct;
pub mod tridiag;

use serde::Serialize;

pub use bound::{check_convolution_bound, ConvolutionBoundReport, TrigPolynomial};
pub use bvp::{compute_j_bvp, solve_euler_lagrange, ELSolution};
pub use direct::compute_j_direct;

use crate::error::Result;
use crate::{check_b, check_beta, is_edge_beta};

/// Default node count for `compute_j`.
pub const DEFAULT_GRID: usize = 4096;
/// Smallest node count accepted by the solvers.
pub const MIN_GRID: usize = 64;
/// Refinement disagreement above which a degenerate-weight BVP value is
/// replaced by direct minimisation.
pub const FALLBACK_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum JMethod {
    BvpFlux,
    DirectMin,
    SpecialB3,
}

impl JMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            JMethod::BvpFlux => "BVP_FLUX",
            JMethod::DirectMin => "DIRECT_MIN",
            JMethod::SpecialB3 => "SPECIAL_B3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JResult {
    pub b: f64,
    pub beta: f64,
    pub value: f64,
    pub method: JMethod,
    /// Richardson estimate from the `N` and `N/2` solutions.
    pub error_estimate: f64,
}

/// `J(b, beta)` for `b in (1, 3]`: zero at `b = 3`, otherwise the BVP flux
/// value on `DEFAULT_GRID` nodes.
pub fn compute_j(b: f64, beta: f64) -> Result<JResult> {
    check_b(b)?;
    check_beta(beta)?;
    if b == 3.0 {
        return Ok(JResult { b, beta, value: 0.0, method: JMethod::SpecialB3, error_estimate: 0.0 });
    }
    let bvp = compute_j_bvp(b, beta, DEFAULT_GRID)?;
    if is_edge_beta(beta) && 3.0 * bvp.error_estimate > FALLBACK_TOL {
        return compute_j_direct(b, beta, DEFAULT_GRID);
    }
    Ok(bvp)
}

/// Richardson error estimate for a method of order `p` from the `N` and
/// `N/2` values.
pub(crate) fn richardson_error(fine: f64, coarse: f64, order: i32) -> f64 {
    (fine - coarse).abs() / (2f64.powi(order) - 1.0)
}
