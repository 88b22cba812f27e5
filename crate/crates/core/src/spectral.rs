//! FFT plumbing for real 1-periodic fields on a uniform grid `x_j = j/N`.
//!
//! Coefficients follow `f(x) = sum_k f_k exp(2 pi i k x)`, with `f_k` stored
//! in FFT order and normalised by `1/N` on the forward transform.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Smallest grid accepted by the spectral routines.
pub const MIN_GRID: usize = 8;

#[derive(Clone)]
pub struct FourierGrid {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FourierGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FourierGrid").field("n", &self.n).finish()
    }
}

impl FourierGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_GRID {
            return Err(Error::GridTooSmall { n, min: MIN_GRID });
        }
        if !n.is_power_of_two() {
            return Err(Error::GridNotPowerOfTwo { n });
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Grid coordinates `j/N`.
    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| j as f64 / self.n as f64).collect()
    }

    /// Signed wavenumber of FFT slot `j`.
    pub fn wavenumber(&self, j: usize) -> i64 {
        wavenumber(j, self.n)
    }

    pub fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        debug_assert_eq!(values.len(), self.n);
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
        buf
    }

    /// Inverse transform; the imaginary part is discarded.
    pub fn inverse(&self, coeffs: &[Complex64]) -> Vec<f64> {
        debug_assert_eq!(coeffs.len(), self.n);
        let mut buf = coeffs.to_vec();
        self.inverse.process(&mut buf);
        buf.iter().map(|c| c.re).collect()
    }

    /// Multiplies every coefficient by `m(k)` and transforms back.
    pub fn apply<F>(&self, values: &[f64], multiplier: F) -> Vec<f64>
    where
        F: Fn(i64) -> Complex64,
    {
        let mut coeffs = self.forward(values);
        self.scale(&mut coeffs, multiplier);
        self.inverse(&coeffs)
    }

    pub fn scale<F>(&self, coeffs: &mut [Complex64], multiplier: F)
    where
        F: Fn(i64) -> Complex64,
    {
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c *= multiplier(wavenumber(j, self.n));
        }
    }

    /// Spectral derivative of a sampled field.
    pub fn derivative(&self, values: &[f64]) -> Vec<f64> {
        let n = self.n as i64;
        self.apply(values, |k| derivative_multiplier(k, n))
    }

    /// Fraction of the spectral energy sitting in `(2/3) k_cut < |k| <= k_cut`.
    pub fn tail_fraction(&self, coeffs: &[Complex64], k_cut: i64) -> f64 {
        let mut total = 0.0;
        let mut tail = 0.0;
        let lower = 2.0 * k_cut as f64 / 3.0;
        for (j, c) in coeffs.iter().enumerate() {
            let e = c.norm_sqr();
            total += e;
            let k = wavenumber(j, self.n).abs();
            if k <= k_cut && k as f64 > lower {
                tail += e;
            }
        }
        if total > 0.0 {
            tail / total
        } else {
            0.0
        }
    }
}

pub(crate) fn wavenumber(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// `2 pi i k`, with the Nyquist mode zeroed so real fields stay real.
pub(crate) fn derivative_multiplier(k: i64, n: i64) -> Complex64 {
    if 2 * k.abs() == n {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, 2.0 * PI * k as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(FourierGrid::new(4).unwrap_err(), Error::GridTooSmall { n: 4, min: 8 });
        assert_eq!(FourierGrid::new(24).unwrap_err(), Error::GridNotPowerOfTwo { n: 24 });
    }

    #[test]
    fn derivative_of_sine() {
        let grid = FourierGrid::new(64).unwrap();
        let x = grid.points();
        let f: Vec<f64> = x.iter().map(|&x| (2.0 * PI * 3.0 * x).sin()).collect();
        let df = grid.derivative(&f);
        for (xi, d) in x.iter().zip(&df) {
            let exact = 6.0 * PI * (6.0 * PI * xi).cos();
            assert!((d - exact).abs() < 1e-11);
        }
    }

    #[test]
    fn round_trip() {
        let grid = FourierGrid::new(32).unwrap();
        let f: Vec<f64> = (0..32).map(|j| ((j * 7) % 5) as f64 - 1.5).collect();
        let back = grid.inverse(&grid.forward(&f));
        for (a, b) in f.iter().zip(&back) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
