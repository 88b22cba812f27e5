//! Direct minimisation of
//! `T(v) = int_0^1 w (b/2 (v^2 + 2v) + (3-b)/2 v_x^2)`
//! over continuous piecewise-linear `v` on a uniform mesh.
//!
//! Element integrals of `w` in the stiffness matrix are exact; mass and load
//! terms use three-point Gauss-Legendre quadrature. With `A` the assembled
//! form and `f` the load, the minimiser solves `A v = -f` and
//! `J = b/2 + T(v)`.

use super::tridiag::SymTridiagonal;
use super::{richardson_error, JMethod, JResult, MIN_GRID};
use crate::error::{Error, Result};
use crate::kernel::{Endpoint, WeightProfile};
use crate::Parameters;

const GAUSS: [(f64, f64); 3] = [
    (-0.774_596_669_241_483_4, 5.0 / 9.0),
    (0.0, 8.0 / 9.0),
    (0.774_596_669_241_483_4, 5.0 / 9.0),
];

/// Minimum of `T` over the piecewise-linear space on `n` elements.
fn min_functional(b: f64, w: &WeightProfile, n: usize) -> Result<f64> {
    let h = 1.0 / n as f64;
    let mut a = SymTridiagonal::zeros(n + 1);
    let mut load = vec![0.0; n + 1];
    for e in 0..n {
        let (x0, x1) = (e as f64 * h, (e + 1) as f64 * h);
        let k = (3.0 - b) * w.integral(x0, x1) / (h * h);
        let (mut m00, mut m01, mut m11, mut f0, mut f1) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(xi, gw) in &GAUSS {
            let t = 0.5 * (1.0 + xi);
            let x = x0 + t * h;
            let ww = gw * 0.5 * h * w.eval(x);
            let (phi0, phi1) = (1.0 - t, t);
            m00 += ww * phi0 * phi0;
            m01 += ww * phi0 * phi1;
            m11 += ww * phi1 * phi1;
            f0 += ww * phi0;
            f1 += ww * phi1;
        }
        a.add_block(e, k + b * m00, -k + b * m01, k + b * m11);
        load[e] += b * f0;
        load[e + 1] += b * f1;
    }

    // Dirichlet rows are dropped; an end where w vanishes stays free.
    let first = usize::from(w.degenerate_end() != Some(Endpoint::Left));
    let last = if w.degenerate_end() == Some(Endpoint::Right) { n } else { n - 1 };
    let reduced = SymTridiagonal {
        diag: a.diag[first..=last].to_vec(),
        off: a.off[first..last].to_vec(),
    };
    let f = &load[first..=last];
    let rhs: Vec<f64> = f.iter().map(|x| -x).collect();
    let v = reduced.solve_spd(&rhs)?;
    let av = reduced.mul(&v);
    let quad: f64 = v.iter().zip(&av).map(|(x, y)| x * y).sum();
    let lin: f64 = v.iter().zip(f).map(|(x, y)| x * y).sum();
    Ok(0.5 * quad + lin)
}

/// `J` by direct minimisation on `n` elements; also accepts `b = 3`, where
/// the discrete values decay like `O(h)` towards zero.
pub fn compute_j_direct(b: f64, beta: f64, n: usize) -> Result<JResult> {
    let params = Parameters::new(b, beta)?;
    if n < MIN_GRID {
        return Err(Error::GridTooSmall { n, min: MIN_GRID });
    }
    if n % 2 != 0 {
        return Err(Error::InvalidConfig(format!("grid size {n} must be even for refinement")));
    }
    let w = WeightProfile::new(params.beta)?;
    let fine = 0.5 * b + min_functional(b, &w, n)?;
    let coarse = 0.5 * b + min_functional(b, &w, n / 2)?;
    let order = if b == 3.0 { 1 } else { 2 };
    Ok(JResult {
        b,
        beta,
        value: fine,
        method: JMethod::DirectMin,
        error_estimate: richardson_error(fine, coarse, order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variational::compute_j_bvp;
    use crate::BETA_MAX;

    #[test]
    fn zero_trial_function_bound() {
        // T(0) = 0, so the minimum can only be lower
        let j = compute_j_direct(2.0, 0.0, 256).unwrap();
        assert!(j.value <= 1.0);
    }

    #[test]
    fn b3_decreases_towards_zero() {
        let vals: Vec<f64> = [256, 512, 1024, 2048]
            .iter()
            .map(|&n| compute_j_direct(3.0, 0.5, n).unwrap().value)
            .collect();
        for pair in vals.windows(2) {
            assert!(pair[1] < pair[0]);
            assert!(pair[1] > 0.0);
        }
        assert!(vals[3] < 0.05, "{vals:?}");
        // first order: halving h roughly halves the value
        let ratio = vals[2] / vals[3];
        assert!((ratio - 2.0).abs() < 0.2, "{ratio}");
    }

    #[test]
    fn agrees_with_bvp() {
        for &(b, beta) in &[(2.0, 0.0), (1.5, 1.0), (2.8, -1.8)] {
            let d = compute_j_direct(b, beta, 4096).unwrap().value;
            let f = compute_j_bvp(b, beta, 4096).unwrap().value;
            assert!((d - f).abs() < 1e-6 * f.abs().max(1.0), "b={b} beta={beta}: {d} vs {f}");
        }
    }

    #[test]
    fn extreme_weight_free_end() {
        let d = compute_j_direct(2.0, BETA_MAX, 4096).unwrap().value;
        let f = compute_j_bvp(2.0, BETA_MAX, 4096).unwrap().value;
        assert!((d - f).abs() < 1e-5);
    }
}
