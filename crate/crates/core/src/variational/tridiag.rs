//! Tridiagonal solvers for the discretised Euler-Lagrange systems.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: `diag[i]` on the diagonal, `off[i]` at
/// `(i, i+1)` and `(i+1, i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn zeros(n: usize) -> Self {
        Self { diag: vec![0.0; n], off: vec![0.0; n.saturating_sub(1)] }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Adds a 2x2 symmetric block at rows/cols `(i, i+1)`.
    pub fn add_block(&mut self, i: usize, a: f64, b: f64, c: f64) {
        self.diag[i] += a;
        self.off[i] += b;
        self.diag[i + 1] += c;
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Thomas algorithm without pivoting.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        assert_eq!(rhs.len(), n);
        let scale = self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(f64::MIN_POSITIVE);
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut pivot = self.diag[0];
        if pivot.abs() <= 1e-14 * scale {
            return Err(Error::LinearSolveFailure { row: 0 });
        }
        if n > 1 {
            c[0] = self.off[0] / pivot;
        }
        d[0] = rhs[0] / pivot;
        for i in 1..n {
            pivot = self.diag[i] - self.off[i - 1] * c[i - 1];
            if pivot.abs() <= 1e-14 * scale || !pivot.is_finite() {
                return Err(Error::LinearSolveFailure { row: i });
            }
            if i + 1 < n {
                c[i] = self.off[i] / pivot;
            }
            d[i] = (rhs[i] - self.off[i - 1] * d[i - 1]) / pivot;
        }
        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        Ok(d)
    }

    /// `L D L^T` solve; fails with `NotCoercive` on a non-positive pivot.
    pub fn solve_spd(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        assert_eq!(rhs.len(), n);
        let mut d = vec![0.0; n];
        let mut l = vec![0.0; n];
        d[0] = self.diag[0];
        for i in 0..n {
            if i > 0 {
                l[i] = self.off[i - 1] / d[i - 1];
                d[i] = self.diag[i] - l[i] * self.off[i - 1];
            }
            if d[i] <= 0.0 || !d[i].is_finite() {
                return Err(Error::NotCoercive { row: i, pivot: d[i] });
            }
        }
        let mut y = rhs.to_vec();
        for i in 1..n {
            y[i] -= l[i] * y[i - 1];
        }
        for i in 0..n {
            y[i] /= d[i];
        }
        for i in (0..n - 1).rev() {
            y[i] -= l[i + 1] * y[i + 1];
        }
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal { diag: vec![2.0; n], off: vec![-1.0; n - 1] }
    }

    #[test]
    fn both_solvers_invert() {
        let a = laplacian(50);
        let x: Vec<f64> = (0..50).map(|i| ((i * 13) % 7) as f64 - 3.0).collect();
        let rhs = a.mul(&x);
        for sol in [a.solve(&rhs).unwrap(), a.solve_spd(&rhs).unwrap()] {
            for (u, v) in sol.iter().zip(&x) {
                assert!((u - v).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn detects_singular_and_indefinite() {
        let a = SymTridiagonal { diag: vec![1.0, 1.0, 2.0], off: vec![1.0, 0.5] };
        assert!(matches!(a.solve(&[1.0, 1.0, 1.0]), Err(Error::LinearSolveFailure { row: 1 })));
        let b = SymTridiagonal { diag: vec![1.0, -1.0], off: vec![0.0] };
        assert!(matches!(b.solve_spd(&[1.0, 1.0]), Err(Error::NotCoercive { row: 1, .. })));
    }
}
