//! Pointwise check of the convolution lower bound
//! `(p + beta p') * (b/2 u^2 + (3-b)/2 u_x^2) >= J(b, beta) u^2` on the torus.

use std::f64::consts::PI;

use serde::Serialize;

use super::compute_j;
use crate::error::{Error, Result};
use crate::kernel::KernelConvolver;

/// Grid used for the pointwise check.
pub const BOUND_GRID: usize = 4096;
/// Largest number of Fourier modes accepted.
pub const MAX_MODES: usize = 32;

/// `u(x) = mean + sum_k (cos[k-1] cos(2 pi k x) + sin[k-1] sin(2 pi k x))`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TrigPolynomial {
    pub mean: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigPolynomial {
    pub fn constant(c: f64) -> Self {
        Self { mean: c, ..Self::default() }
    }

    pub fn modes(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    fn coeff(v: &[f64], k: usize) -> f64 {
        v.get(k - 1).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (1..=self.modes()).fold(self.mean, |acc, k| {
            let t = 2.0 * PI * k as f64 * x;
            acc + Self::coeff(&self.cos, k) * t.cos() + Self::coeff(&self.sin, k) * t.sin()
        })
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (1..=self.modes()).fold(0.0, |acc, k| {
            let kk = 2.0 * PI * k as f64;
            let t = kk * x;
            acc + kk * (Self::coeff(&self.sin, k) * t.cos() - Self::coeff(&self.cos, k) * t.sin())
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvolutionBoundReport {
    pub b: f64,
    pub beta: f64,
    pub j: f64,
    /// `min_x [(w * g)(x) - J u(x)^2]`
    pub min_slack: f64,
    pub argmin_x: f64,
}

pub fn check_convolution_bound(u: &TrigPolynomial, b: f64, beta: f64) -> Result<ConvolutionBoundReport> {
    if u.modes() > MAX_MODES {
        return Err(Error::TooManyModes { modes: u.modes(), max: MAX_MODES });
    }
    let j = compute_j(b, beta)?.value;
    let conv = KernelConvolver::new(BOUND_GRID)?;
    let x = conv.grid().points();
    let values: Vec<f64> = x.iter().map(|&x| u.eval(x)).collect();
    let density: Vec<f64> = x
        .iter()
        .zip(&values)
        .map(|(&x, &v)| {
            let d = u.derivative(x);
            0.5 * b * v * v + 0.5 * (3.0 - b) * d * d
        })
        .collect();
    let lhs = conv.convolve_w(beta, &density);
    let (argmin, min_slack) = lhs
        .iter()
        .zip(&values)
        .map(|(l, v)| l - j * v * v)
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, s)| if s < best.1 { (i, s) } else { best });
    Ok(ConvolutionBoundReport { b, beta, j, min_slack, argmin_x: x[argmin] })
}
