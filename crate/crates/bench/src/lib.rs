//! Fixtures shared by the criterion benches.

use std::f64::consts::PI;

use bfamily_core::TorusField;

/// `cos(2 pi x)` on `n` points.
pub fn cosine(n: usize) -> TorusField {
    TorusField::from_fn(n, |x| (2.0 * PI * x).cos()).expect("power-of-two grid")
}

/// Smooth field with a handful of modes, used where cosine is too symmetric.
pub fn mixed(n: usize) -> TorusField {
    TorusField::from_fn(n, |x| {
        0.2 + (2.0 * PI * x).sin() - 0.3 * (4.0 * PI * x).cos() + 0.1 * (10.0 * PI * x).sin()
    })
    .expect("power-of-two grid")
}
