use rustfft::num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::spectral::{derivative_multiplier, FourierGrid};

/// A real 1-periodic field sampled at `x_j = j/N`, together with its Fourier
/// coefficients.
#[derive(Debug, Clone)]
pub struct TorusField {
    grid: FourierGrid,
    values: Vec<f64>,
    coeffs: Vec<Complex64>,
    time: f64,
}

impl TorusField {
    pub fn from_values(values: Vec<f64>, time: f64) -> Result<Self> {
        let grid = FourierGrid::new(values.len())?;
        let coeffs = grid.forward(&values);
        Ok(Self { grid, values, coeffs, time })
    }

    /// Samples `f` on an `n`-point grid at time zero.
    pub fn from_fn<F: Fn(f64) -> f64>(n: usize, f: F) -> Result<Self> {
        let grid = FourierGrid::new(n)?;
        let values: Vec<f64> = grid.points().into_iter().map(f).collect();
        let coeffs = grid.forward(&values);
        Ok(Self { grid, values, coeffs, time: 0.0 })
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::from_fn(n, |_| c)
    }

    pub(crate) fn from_coeffs(grid: &FourierGrid, coeffs: Vec<Complex64>, time: f64) -> Self {
        let values = grid.inverse(&coeffs);
        Self { grid: grid.clone(), values, coeffs, time }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn grid(&self) -> &FourierGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn points(&self) -> Vec<f64> {
        self.grid.points()
    }

    /// Samples of `u_x`.
    pub fn derivative(&self) -> Vec<f64> {
        let n = self.len() as i64;
        let mut c = self.coeffs.clone();
        self.grid.scale(&mut c, |k| derivative_multiplier(k, n));
        self.grid.inverse(&c)
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Energy fraction in the top third of the modes kept up to `k_cut`.
    pub fn tail_fraction(&self, k_cut: i64) -> f64 {
        self.grid.tail_fraction(&self.coeffs, k_cut)
    }
}

impl Serialize for TorusField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TorusField", 3)?;
        st.serialize_field("n", &self.len())?;
        st.serialize_field("time", &self.time)?;
        st.serialize_field("values", &self.values)?;
        st.end()
    }
}
