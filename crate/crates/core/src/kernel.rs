//! The periodic fundamental solution of `1 - d²/dx²` and the weight built
//! from it.
//!
//! On the unit torus
//!
//! ```text
//! p(x) = cosh(x - [x] - 1/2) / (2 sinh(1/2))
//! ```
//!
//! and for a real `beta` the weight is `w = p + beta p'`. On (0,1) both `p`
//! and `w` are smooth; `p'` jumps by `-1` at the integers.

use std::f64::consts::{E, PI};

use rustfft::num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::spectral::{derivative_multiplier, FourierGrid};
use crate::{check_beta, is_edge_beta, BETA_MAX};

fn two_sinh_half() -> f64 {
    2.0 * 0.5f64.sinh()
}

fn reduce(x: f64) -> f64 {
    let r = x - x.floor();
    // x slightly below an integer can round up to exactly 1.0
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Kernel value at a torus coordinate (reduced mod 1 onto `[0, 1)`).
pub fn eval_p(x: f64) -> f64 {
    (reduce(x) - 0.5).cosh() / two_sinh_half()
}

/// Classical derivative of `p`. At the integers this is the right-hand
/// limit `-1/2`.
pub fn eval_dp(x: f64) -> f64 {
    (reduce(x) - 0.5).sinh() / two_sinh_half()
}

/// `w(x) = p(x) + beta p'(x)` for `x` in (0,1).
pub fn eval_w(beta: f64, x: f64) -> Result<f64> {
    Ok(WeightProfile::new(beta)?.eval(x))
}

/// The weight `w = p + beta p'` restricted to (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightProfile {
    beta: f64,
    degenerate: bool,
}

impl WeightProfile {
    pub fn new(beta: f64) -> Result<Self> {
        check_beta(beta)?;
        let degenerate = is_edge_beta(beta);
        let beta = if degenerate { BETA_MAX.copysign(beta) } else { beta };
        Ok(Self { beta, degenerate })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// True for `|beta| = (e+1)/(e-1)`, where `w` vanishes at one endpoint.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Endpoint of [0,1] where the weight vanishes, if any.
    pub fn degenerate_end(&self) -> Option<Endpoint> {
        match (self.degenerate, self.beta > 0.0) {
            (false, _) => None,
            (true, true) => Some(Endpoint::Left),
            (true, false) => Some(Endpoint::Right),
        }
    }

    /// Evaluates `w` at `x`, read on (0,1); `x = 0` and `x = 1` give the
    /// one-sided limits.
    pub fn eval(&self, x: f64) -> f64 {
        if self.degenerate {
            let c = 2.0 * E / ((E - 1.0) * (E - 1.0));
            return if self.beta > 0.0 { c * x.sinh() } else { c * (1.0 - x).sinh() };
        }
        let s = x - 0.5;
        (s.cosh() + self.beta * s.sinh()) / two_sinh_half()
    }

    /// `w'(x) = p'(x) + beta p(x)` on (0,1).
    pub fn derivative(&self, x: f64) -> f64 {
        let s = x - 0.5;
        (s.sinh() + self.beta * s.cosh()) / two_sinh_half()
    }

    /// Antiderivative of `w` on [0,1]; `W(1) - W(0) = 1`. Since `w'' = w`
    /// on (0,1), this is `w'` itself.
    pub fn antiderivative(&self, x: f64) -> f64 {
        self.derivative(x)
    }

    /// `int_a^b w`, using the exact antiderivative.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if self.degenerate {
            // cosh differences lose digits next to the zero of w
            let c = 2.0 * E / ((E - 1.0) * (E - 1.0));
            let cosh_diff = |u: f64, v: f64| 2.0 * ((u + v) / 2.0).sinh() * ((v - u) / 2.0).sinh();
            return if self.beta > 0.0 {
                c * cosh_diff(a, b)
            } else {
                c * cosh_diff(1.0 - b, 1.0 - a)
            };
        }
        self.antiderivative(b) - self.antiderivative(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    Left,
    Right,
}

/// Fourier multipliers of `p` and `p'` at wavenumber `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMultiplier {
    pub k: i64,
    /// `1 / (1 + (2 pi k)^2)`
    pub m_p: f64,
    /// Imaginary part of the `p'` multiplier, `2 pi k / (1 + (2 pi k)^2)`.
    pub m_dp: f64,
}

impl SpectralMultiplier {
    pub fn new(k: i64) -> Self {
        let kk = 2.0 * PI * k as f64;
        let m_p = 1.0 / (1.0 + kk * kk);
        Self { k, m_p, m_dp: kk * m_p }
    }
}

/// Convolutions with `p` and `p'` on a fixed grid.
#[derive(Debug, Clone)]
pub struct KernelConvolver {
    grid: FourierGrid,
}

impl KernelConvolver {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self { grid: FourierGrid::new(n)? })
    }

    pub fn grid(&self) -> &FourierGrid {
        &self.grid
    }

    /// `p * f`
    pub fn convolve_p(&self, f: &[f64]) -> Vec<f64> {
        self.grid.apply(f, p_multiplier)
    }

    /// `p' * f`
    pub fn convolve_dp(&self, f: &[f64]) -> Vec<f64> {
        let n = self.grid.len() as i64;
        self.grid.apply(f, |k| dp_multiplier(k, n))
    }

    /// `(p + beta p') * f`
    pub fn convolve_w(&self, beta: f64, f: &[f64]) -> Vec<f64> {
        let n = self.grid.len() as i64;
        self.grid.apply(f, |k| p_multiplier(k) + beta * dp_multiplier(k, n))
    }
}

pub(crate) fn p_multiplier(k: i64) -> Complex64 {
    Complex64::new(SpectralMultiplier::new(k).m_p, 0.0)
}

pub(crate) fn dp_multiplier(k: i64, n: i64) -> Complex64 {
    derivative_multiplier(k, n) * SpectralMultiplier::new(k).m_p
}

/// `p * f` for a field sampled on a uniform power-of-two grid.
pub fn convolve_p(f: &[f64]) -> Result<Vec<f64>> {
    Ok(KernelConvolver::new(f.len())?.convolve_p(f))
}

/// `p' * f` for a field sampled on a uniform power-of-two grid.
pub fn convolve_dp(f: &[f64]) -> Result<Vec<f64>> {
    Ok(KernelConvolver::new(f.len())?.convolve_dp(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    /// Composite Simpson on [0,1] with `m` (even) panels.
    fn simpson<F: Fn(f64) -> f64>(f: F, m: usize) -> f64 {
        let h = 1.0 / m as f64;
        let mut s = f(0.0) + f(1.0);
        for i in 1..m {
            let x = i as f64 * h;
            s += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
        }
        s * h / 3.0
    }

    /// Direct quadrature of `(k * f)(x) = int_0^1 k(y) f(x - y) dy` with the
    /// one-sided kernel values at y = 0 and y = 1.
    fn direct_convolution<K, F>(kernel: K, f: F, x: f64) -> f64
    where
        K: Fn(f64) -> f64,
        F: Fn(f64) -> f64,
    {
        simpson(|y| kernel(y) * f(x - y), 4096)
    }

    fn dp_open(y: f64) -> f64 {
        // right limit at 0, left limit at 1
        (y - 0.5).sinh() / (2.0 * 0.5f64.sinh())
    }

    #[test]
    fn p_closed_form_values() {
        assert!((eval_p(0.0) - 0.5 / 0.5f64.tanh()).abs() < 1e-15);
        assert!((eval_p(0.0) - 1.081977).abs() < 1e-6);
        assert!((eval_p(0.5) - 0.959517).abs() < 1e-6);
        assert!((eval_p(2.25) - eval_p(0.25)).abs() < 1e-15);
        assert!((eval_p(-0.25) - eval_p(0.75)).abs() < 1e-15);
        assert!((simpson(eval_p, 2048) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn w_examples() {
        let c = BETA_MAX;
        assert!((eval_w(c, 0.25).unwrap() - 0.465147).abs() < 1e-6);
        let closed = 2.0 * E / ((E - 1.0) * (E - 1.0)) * 0.25f64.sinh();
        assert!((eval_w(c, 0.25).unwrap() - closed).abs() < 1e-15);
        assert!((eval_w(0.0, 0.5).unwrap() - eval_p(0.5)).abs() < 1e-15);
        assert!(eval_w(c, 1e-300).unwrap().abs() < 1e-299);
        // the generic formula agrees with the sinh form away from the edge
        let generic = (eval_p(0.3) + c * eval_dp(0.3)) - eval_w(c, 0.3).unwrap();
        assert!(generic.abs() < 1e-14);
    }

    #[test]
    fn w_rejects_large_beta() {
        assert!(matches!(eval_w(2.2, 0.5), Err(Error::BetaOutOfRange { .. })));
        assert!(matches!(eval_w(-2.2, 0.5), Err(Error::BetaOutOfRange { .. })));
        assert!(eval_w(-BETA_MAX, 0.5).is_ok());
    }

    #[test]
    fn w_integrates_to_one() {
        for &beta in &[-BETA_MAX, -1.3, -0.2, 0.0, 0.7, 1.9, BETA_MAX] {
            let w = WeightProfile::new(beta).unwrap();
            assert!((simpson(|x| w.eval(x), 2048) - 1.0).abs() < 1e-12, "beta={beta}");
            assert!((w.integral(0.0, 1.0) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn w_sign() {
        for i in 0..=40 {
            let beta = -BETA_MAX + 2.0 * BETA_MAX * i as f64 / 40.0;
            let w = WeightProfile::new(beta).unwrap();
            let interior = beta.abs() < BETA_MAX - 1e-12;
            for j in 0..=2000 {
                let x = j as f64 / 2000.0;
                let v = w.eval(x);
                assert!(v >= 0.0, "beta={beta} x={x} w={v}");
                if interior {
                    assert!(v > 0.0);
                }
            }
        }
    }

    #[test]
    fn w_reflection() {
        for &beta in &[0.3, 1.0, 2.0] {
            let plus = WeightProfile::new(beta).unwrap();
            let minus = WeightProfile::new(-beta).unwrap();
            for j in 1..100 {
                let x = j as f64 / 100.0;
                assert!((plus.eval(1.0 - x) - minus.eval(x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn multipliers() {
        let m0 = SpectralMultiplier::new(0);
        assert_eq!(m0.m_p, 1.0);
        for k in 1..10 {
            let (a, b) = (SpectralMultiplier::new(k), SpectralMultiplier::new(-k));
            assert_eq!(a.m_p, b.m_p);
            assert_eq!(a.m_dp, -b.m_dp);
        }
    }

    #[test]
    fn convolution_examples() {
        let n = 64;
        let conv = KernelConvolver::new(n).unwrap();
        let x = conv.grid().points();
        let tau = 2.0 * PI;
        let ones = vec![1.0; n];
        assert!(conv.convolve_p(&ones).iter().all(|v| (v - 1.0).abs() < 1e-14));
        assert!(conv.convolve_dp(&ones).iter().all(|v| v.abs() < 1e-14));

        let cos1: Vec<f64> = x.iter().map(|&x| (tau * x).cos()).collect();
        let sin1: Vec<f64> = x.iter().map(|&x| (tau * x).sin()).collect();
        let sin2: Vec<f64> = x.iter().map(|&x| (2.0 * tau * x).sin()).collect();
        let d1 = 1.0 + tau * tau;
        let d2 = 1.0 + 4.0 * tau * tau;
        let p_cos = conv.convolve_p(&cos1);
        let p_sin2 = conv.convolve_p(&sin2);
        let dp_cos = conv.convolve_dp(&cos1);
        let dp_sin = conv.convolve_dp(&sin1);
        for (j, &xj) in x.iter().enumerate() {
            assert!((p_cos[j] - (tau * xj).cos() / d1).abs() < 1e-14);
            assert!((p_sin2[j] - (2.0 * tau * xj).sin() / d2).abs() < 1e-14);
            assert!((dp_cos[j] + tau * (tau * xj).sin() / d1).abs() < 1e-14);
            assert!((dp_sin[j] - tau * (tau * xj).cos() / d1).abs() < 1e-14);
        }
    }

    #[test]
    fn convolution_matches_direct_quadrature() {
        let n = 32;
        let conv = KernelConvolver::new(n).unwrap();
        let x = conv.grid().points();
        let f = |x: f64| (2.0 * PI * x).cos() + 0.3 * (4.0 * PI * x).sin() - 0.2;
        let samples: Vec<f64> = x.iter().map(|&x| f(x)).collect();
        let p = conv.convolve_p(&samples);
        let dp = conv.convolve_dp(&samples);
        for (j, &xj) in x.iter().enumerate() {
            assert!((p[j] - direct_convolution(eval_p, f, xj)).abs() < 1e-11);
            assert!((dp[j] - direct_convolution(dp_open, f, xj)).abs() < 1e-11);
        }
    }

    #[test]
    fn fundamental_solution_identity() {
        let n = 128;
        let conv = KernelConvolver::new(n).unwrap();
        let x = conv.grid().points();
        let f: Vec<f64> = x
            .iter()
            .map(|&x| (2.0 * PI * x).sin() + 0.5 * (6.0 * PI * x).cos() + 0.1)
            .collect();
        let g = conv.convolve_p(&f);
        let h = conv.grid().apply(&g, |k| {
            let kk = 2.0 * PI * k as f64;
            Complex64::new(1.0 + kk * kk, 0.0)
        });
        for (a, b) in f.iter().zip(&h) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn free_functions_validate_grid() {
        assert!(matches!(convolve_p(&[1.0; 4]), Err(Error::GridTooSmall { .. })));
        assert!(matches!(convolve_dp(&[1.0; 12]), Err(Error::GridNotPowerOfTwo { .. })));
    }
}
