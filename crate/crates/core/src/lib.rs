//! Blow-up threshold computations for the periodic b-family
//!
//! ```text
//! u_t - u_txx + (b+1) u u_x = b u_x u_xx + u u_xxx,   x in T = R/Z
//! ```
//!
//! The crate evaluates the periodic kernel `p` of `1 - d²/dx²`, the weighted
//! variational constant `J(b, beta)`, the threshold `beta_b` that enters the
//! local-in-space blow-up criterion `u0'(x0) < -beta_b |u0(x0)|`, closed-form
//! upper bounds for `beta_b`, and a pseudo-spectral solver used to check the
//! criterion and its lifespan bound on concrete data.
//!
//! Parameter ranges used throughout: `b in (1, 3]` and
//! `|beta| <= (e+1)/(e-1)` (the range where the weight `w = p + beta p'` is
//! nonnegative).

pub mod beta_b;
pub mod error;
pub mod estimates;
pub mod kernel;
pub mod pde;
pub mod spectral;
pub mod special;
pub mod variational;

pub use beta_b::{
    compute_beta_b, f_discriminant, sweep, sweep_with, BetaBResult, BetaBStatus, SweepRow,
};
pub use error::{Error, Result};
pub use estimates::{
    delta_b, estimate1, estimate2, estimate3, thresholds, EstimateKind, EstimateResult,
    Thresholds,
};
pub use kernel::{eval_dp, eval_p, eval_w, WeightProfile};
pub use pde::{
    check_criterion, conserved_quantities, integrate, lifespan_bound, rhs, BlowupReport,
    ConservedQuantities, CriterionPoint, SimConfig, SimOutcome, Simulation, SlopeThreshold,
    TorusField,
};
pub use special::{degree_upsilon, legendre_p, legendre_ratio, LegendreDegree};
pub use variational::{
    check_convolution_bound, compute_j, compute_j_bvp, compute_j_direct, solve_euler_lagrange,
    ELSolution, JMethod, JResult, TrigPolynomial,
};

/// Largest admissible `|beta|`: `(e+1)/(e-1)`.
pub const BETA_MAX: f64 = (std::f64::consts::E + 1.0) / (std::f64::consts::E - 1.0);

/// Absolute slack used when deciding whether a `beta` sits on the edge of the
/// admissible range.
pub const BETA_EDGE_TOL: f64 = 1e-9;

/// Admissible `(b, beta)` pair for the variational problem.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Parameters {
    pub b: f64,
    pub beta: f64,
}

impl Parameters {
    /// Validates `b in (1, 3]` and `|beta| <= (e+1)/(e-1)`.
    pub fn new(b: f64, beta: f64) -> Result<Self> {
        check_b(b)?;
        check_beta(beta)?;
        Ok(Self { b, beta })
    }

    /// True when `w` vanishes at one endpoint of (0,1).
    pub fn is_degenerate(&self) -> bool {
        is_edge_beta(self.beta)
    }
}

pub(crate) fn check_b(b: f64) -> Result<()> {
    if b.is_finite() && b > 1.0 && b <= 3.0 {
        Ok(())
    } else {
        Err(Error::BOutOfRange { b, range: "(1, 3]" })
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta.abs() <= BETA_MAX + BETA_EDGE_TOL {
        Ok(())
    } else {
        Err(Error::BetaOutOfRange { beta })
    }
}

pub(crate) fn is_edge_beta(beta: f64) -> bool {
    (beta.abs() - BETA_MAX).abs() <= BETA_EDGE_TOL
}
