//! Pointwise blow-up criterion `u0'(x0) < -beta_b |u0(x0)|` and the lifespan
//! bound `T* <= 2 / ((b-1) sqrt(u0'(x0)^2 - beta_b^2 u0(x0)^2))`.

use serde::Serialize;

use super::field::TorusField;
use crate::error::{Error, Result};

/// Grid point where the criterion holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriterionPoint {
    pub index: usize,
    pub x: f64,
    pub u: f64,
    pub du: f64,
    /// `-u'(x0) - beta_b |u(x0)|`, strictly positive at a criterion point.
    pub margin: f64,
}

fn check_beta_b(beta_b: f64) -> Result<()> {
    if beta_b.is_finite() && beta_b >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("beta_b must be finite and nonnegative, got {beta_b}")))
    }
}

/// All grid points of `u0` where the strict criterion holds.
pub fn check_criterion(u0: &TorusField, beta_b: f64) -> Result<Vec<CriterionPoint>> {
    check_beta_b(beta_b)?;
    let du = u0.derivative();
    let n = u0.len() as f64;
    Ok(u0
        .values()
        .iter()
        .zip(&du)
        .enumerate()
        .filter_map(|(index, (&u, &d))| {
            let margin = -d - beta_b * u.abs();
            (margin > 0.0).then_some(CriterionPoint { index, x: index as f64 / n, u, du: d, margin })
        })
        .collect())
}

pub(crate) fn lifespan_at(b: f64, beta_b: f64, u: f64, du: f64) -> f64 {
    2.0 / ((b - 1.0) * (du * du - beta_b * beta_b * u * u).sqrt())
}

/// Smallest lifespan bound over the criterion points; `None` when the
/// criterion holds nowhere on the grid.
pub fn lifespan_bound(u0: &TorusField, b: f64, beta_b: f64) -> Result<Option<f64>> {
    crate::check_b(b)?;
    Ok(best_point(&check_criterion(u0, beta_b)?, b, beta_b).map(|(_, t)| t))
}

pub(crate) fn best_point(points: &[CriterionPoint], b: f64, beta_b: f64) -> Option<(CriterionPoint, f64)> {
    points
        .iter()
        .map(|p| (*p, lifespan_at(b, beta_b, p.u, p.du)))
        .min_by(|a, c| a.1.total_cmp(&c.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cosine_quarter_point() {
        let u = TorusField::from_fn(1024, |x| (2.0 * PI * x).cos()).unwrap();
        let pts = check_criterion(&u, 1.0).unwrap();
        let q = pts.iter().find(|p| p.index == 256).unwrap();
        assert!((q.margin - 2.0 * PI).abs() < 1e-10);
        assert!(pts.iter().all(|p| p.x > 0.0 && p.x < 0.5));
    }

    #[test]
    fn constant_is_silent() {
        let u = TorusField::constant(64, 1.0).unwrap();
        assert!(check_criterion(&u, 0.0).unwrap().is_empty());
        assert_eq!(lifespan_bound(&u, 2.0, 0.5).unwrap(), None);
    }

    #[test]
    fn sine_matches_direct_scan() {
        let n = 512;
        let u = TorusField::from_fn(n, |x| (2.0 * PI * x).sin()).unwrap();
        for beta in [0.5, 3.0, 10.0] {
            let scan = (0..n)
                .map(|j| {
                    let x = j as f64 / n as f64;
                    -2.0 * PI * (2.0 * PI * x).cos() - beta * (2.0 * PI * x).sin().abs()
                })
                .fold(f64::NEG_INFINITY, f64::max);
            let pts = check_criterion(&u, beta).unwrap();
            assert_eq!(!pts.is_empty(), scan > 0.0, "beta = {beta}");
        }
    }

    #[test]
    fn lifespan_substitution() {
        assert!((lifespan_at(2.0, 0.7, 0.0, -1.0) - 2.0).abs() < 1e-15);
        let u = TorusField::from_fn(256, |x| -(2.0 * PI * x).sin() / (2.0 * PI)).unwrap();
        let pts = check_criterion(&u, 0.3).unwrap();
        let (p, t) = best_point(&pts, 2.0, 0.3).unwrap();
        assert_eq!(p.index, 0);
        assert!((t - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_lifespan_is_one_over_pi() {
        let u = TorusField::from_fn(1024, |x| (2.0 * PI * x).cos()).unwrap();
        for beta in [0.0, 0.9, 1.0] {
            let t = lifespan_bound(&u, 2.0, beta).unwrap().unwrap();
            assert!((t - 1.0 / PI).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_infinite_threshold() {
        let u = TorusField::constant(16, 1.0).unwrap();
        assert!(check_criterion(&u, f64::INFINITY).is_err());
    }
}
