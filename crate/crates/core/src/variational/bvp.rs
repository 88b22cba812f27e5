//! Finite-volume solve of `(3-b) (w v')' = b w (v + 1)` on a uniform grid.
//!
//! Face weights are the exact values `w(x_{i+1/2})`; the mass of node `i`
//! is `int w` over its dual cell. The discrete system is the stationarity
//! condition of a quadratic form that is affine in `beta`, and mirroring
//! the grid maps `beta` to `-beta` exactly.

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use super::{richardson_error, JMethod, JResult, MIN_GRID};
use crate::error::{Error, Result};
use crate::kernel::{Endpoint, WeightProfile};
use crate::{check_beta, Parameters};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ELSolution {
    pub b: f64,
    pub beta: f64,
    /// Nodes `i/N`, endpoints included.
    pub grid: Vec<f64>,
    /// Minimiser at the nodes.
    pub v: Vec<f64>,
    /// `(w v')(0+)`
    pub flux0: f64,
    /// `(w v')(1-)`
    pub flux1: f64,
    /// Set when `|beta| = (e+1)/(e-1)`; the end where `w` vanishes carries a
    /// natural (zero-flux) condition instead of `v = 0`.
    pub singular_weight: bool,
    /// `b/2 + (b/2) sum_i m_i v_i`, the discrete energy form of `J`.
    pub energy_j: f64,
}

impl ELSolution {
    /// `(3-b)/2 (flux1 - flux0)`
    pub fn j_flux(&self) -> f64 {
        0.5 * (3.0 - self.b) * (self.flux1 - self.flux0)
    }

    /// Largest centred-difference residual of the expanded equation
    /// `(3-b)(w v'' + w' v') - b w (v + 1)` over interior nodes, scaled by
    /// `b max w`.
    pub fn residual(&self) -> f64 {
        let w = WeightProfile::new(self.beta).expect("validated at solve time");
        let n = self.grid.len() - 1;
        let h = 1.0 / n as f64;
        let mut worst = 0.0f64;
        for i in 1..n {
            let x = self.grid[i];
            let vxx = (self.v[i + 1] - 2.0 * self.v[i] + self.v[i - 1]) / (h * h);
            let vx = (self.v[i + 1] - self.v[i - 1]) / (2.0 * h);
            let r = (3.0 - self.b) * (w.eval(x) * vxx + w.derivative(x) * vx)
                - self.b * w.eval(x) * (self.v[i] + 1.0);
            worst = worst.max(r.abs());
        }
        worst / self.b
    }
}

/// Quadratic extrapolation to the wall from face values at `h/2, 3h/2, 5h/2`.
fn extrapolate_to_wall(f0: f64, f1: f64, f2: f64) -> f64 {
    (15.0 * f0 - 10.0 * f1 + 3.0 * f2) / 8.0
}

pub fn solve_euler_lagrange(b: f64, beta: f64, n: usize) -> Result<ELSolution> {
    if !(b.is_finite() && b > 1.0 && b < 3.0) {
        return Err(Error::BOutOfRange { b, range: "(1, 3)" });
    }
    check_beta(beta)?;
    if n < MIN_GRID {
        return Err(Error::GridTooSmall { n, min: MIN_GRID });
    }
    solve_unchecked(b, beta, n)
}

pub(crate) fn solve_unchecked(b: f64, beta: f64, n: usize) -> Result<ELSolution> {
    let w = WeightProfile::new(beta)?;
    let h = 1.0 / n as f64;
    let grid: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
    let faces: Vec<f64> = (0..n).map(|i| w.eval((i as f64 + 0.5) * h)).collect();
    let mass: Vec<f64> = (0..=n)
        .map(|i| {
            let lo = ((i as f64 - 0.5) * h).max(0.0);
            let hi = ((i as f64 + 0.5) * h).min(1.0);
            w.integral(lo, hi)
        })
        .collect();

    let free_left = w.degenerate_end() == Some(Endpoint::Left);
    let free_right = w.degenerate_end() == Some(Endpoint::Right);
    let first = if free_left { 0 } else { 1 };
    let last = if free_right { n } else { n - 1 };
    let m = last - first + 1;

    let stiff = 3.0 - b;
    let mut a = SymTridiagonal::zeros(m);
    let mut rhs = vec![0.0; m];
    for (row, i) in (first..=last).enumerate() {
        a.diag[row] += b * mass[i];
        rhs[row] = -b * mass[i];
    }
    // face i joins nodes i and i+1
    for (i, &wf) in faces.iter().enumerate() {
        let k = stiff * wf / h;
        let left = (i >= first && i <= last).then(|| i - first);
        let right = (i + 1 >= first && i < last).then(|| i + 1 - first);
        match (left, right) {
            (Some(l), Some(_)) => a.add_block(l, k, -k, k),
            (Some(l), None) => a.diag[l] += k,
            (None, Some(r)) => a.diag[r] += k,
            (None, None) => {}
        }
    }
    let sol = a.solve(&rhs)?;

    let mut v = vec![0.0; n + 1];
    v[first..=last].copy_from_slice(&sol);

    let face_flux: Vec<f64> = (0..n).map(|i| faces[i] * (v[i + 1] - v[i]) / h).collect();
    let flux0 = if free_left {
        0.0
    } else {
        extrapolate_to_wall(face_flux[0], face_flux[1], face_flux[2])
    };
    let flux1 = if free_right {
        0.0
    } else {
        extrapolate_to_wall(face_flux[n - 1], face_flux[n - 2], face_flux[n - 3])
    };
    let energy_j = 0.5 * b + 0.5 * b * mass.iter().zip(&v).map(|(m, v)| m * v).sum::<f64>();

    Ok(ELSolution {
        b,
        beta: w.beta(),
        grid,
        v,
        flux0,
        flux1,
        singular_weight: w.is_degenerate(),
        energy_j,
    })
}

/// `J` from the boundary flux of the `N`-node solution, with a Richardson
/// error estimate against `N/2` nodes.
pub fn compute_j_bvp(b: f64, beta: f64, n: usize) -> Result<JResult> {
    let params = Parameters::new(b, beta)?;
    if b == 3.0 {
        return Err(Error::BOutOfRange { b, range: "(1, 3)" });
    }
    if n < MIN_GRID {
        return Err(Error::GridTooSmall { n, min: MIN_GRID });
    }
    if n % 2 != 0 {
        return Err(Error::InvalidConfig(format!("grid size {n} must be even for refinement")));
    }
    let fine = solve_unchecked(params.b, params.beta, n)?.j_flux();
    let coarse = solve_unchecked(params.b, params.beta, n / 2)?.j_flux();
    Ok(JResult {
        b,
        beta,
        value: fine,
        method: JMethod::BvpFlux,
        error_estimate: richardson_error(fine, coarse, 2),
    })
}
