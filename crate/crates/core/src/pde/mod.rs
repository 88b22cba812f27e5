//! Pseudo-spectral solver for the periodic b-family in weak form,
//!
//! ```text
//! u_t + u u_x + p' * (b/2 u^2 + (3-b)/2 u_x^2) = 0,
//! ```
//!
//! with classical RK4 in time, two-thirds dealiasing, and wave-breaking
//! detection on `min_x u_x`.

mod criterion;
mod field;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::SpectralMultiplier;
use crate::spectral::{derivative_multiplier, FourierGrid};

pub use criterion::{check_criterion, lifespan_bound, CriterionPoint};
pub use field::TorusField;

pub const DEFAULT_CFL: f64 = 0.3;
/// Default relative slope factor, see [`SlopeThreshold::Relative`].
pub const DEFAULT_SLOPE_FACTOR: f64 = 8.0;
/// Tail energy fraction that ends a run.
pub const TAIL_LIMIT: f64 = 1e-2;
/// Largest tail energy fraction accepted in initial data.
pub const SMOOTH_TAIL_LIMIT: f64 = 1e-10;
/// Lower bound on `max|u|` in the step-size rule, so that vanishing data
/// does not produce unbounded steps.
const SPEED_FLOOR: f64 = 1e-3;

/// When `min_x u_x` counts as diverged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SlopeThreshold {
    /// Fixed level `L`: breaking is declared once `min u_x < -L`.
    Absolute(f64),
    /// `L = factor * max(|min u0_x|, 1)`.
    Relative(f64),
}

impl SlopeThreshold {
    pub fn resolve(&self, initial_min_slope: f64) -> f64 {
        match *self {
            SlopeThreshold::Absolute(l) => l,
            SlopeThreshold::Relative(f) => f * initial_min_slope.abs().max(1.0),
        }
    }

    fn level(&self) -> f64 {
        match *self {
            SlopeThreshold::Absolute(l) | SlopeThreshold::Relative(l) => l,
        }
    }
}

impl Default for SlopeThreshold {
    fn default() -> Self {
        SlopeThreshold::Relative(DEFAULT_SLOPE_FACTOR)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub b: f64,
    pub cfl: f64,
    pub t_max: f64,
    pub slope_threshold: SlopeThreshold,
    pub dealias: bool,
    /// Threshold used to locate criterion points in the initial data.
    pub beta_b: Option<f64>,
    /// Store a snapshot every `snapshot_interval` time units.
    pub snapshot_interval: Option<f64>,
}

impl SimConfig {
    pub fn new(b: f64, t_max: f64) -> Self {
        Self {
            b,
            cfl: DEFAULT_CFL,
            t_max,
            slope_threshold: SlopeThreshold::default(),
            dealias: true,
            beta_b: None,
            snapshot_interval: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        crate::check_b(self.b)?;
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("cfl", self.cfl)?;
        positive("t_max", self.t_max)?;
        positive("slope threshold", self.slope_threshold.level())?;
        if let Some(s) = self.snapshot_interval {
            positive("snapshot interval", s)?;
        }
        if let Some(beta) = self.beta_b {
            if !(beta.is_finite() && beta >= 0.0) {
                return Err(Error::InvalidConfig(format!("beta_b must be finite and nonnegative, got {beta}")));
            }
        }
        Ok(())
    }
}

/// Spatial average and the `H^1` energy `mean(u^2 + u_x^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservedQuantities {
    pub mean: f64,
    pub h1_energy: f64,
    /// The `H^1` energy is an invariant only for `b = 2`.
    pub h1_invariant: bool,
}

pub fn conserved_quantities(u: &TorusField, b: f64) -> ConservedQuantities {
    quantities_from_coeffs(u.coeffs(), u.len(), b)
}

fn quantities_from_coeffs(c: &[Complex64], n: usize, b: f64) -> ConservedQuantities {
    let h1_energy = c
        .iter()
        .enumerate()
        .map(|(j, z)| {
            let k = crate::spectral::wavenumber(j, n);
            let kk = if 2 * k.unsigned_abs() as usize == n { 0.0 } else { 2.0 * std::f64::consts::PI * k as f64 };
            z.norm_sqr() * (1.0 + kk * kk)
        })
        .sum();
    ConservedQuantities { mean: c[0].re, h1_energy, h1_invariant: b == 2.0 }
}

/// Energy fraction above `2/3 k_cut`.
fn tail_fraction(c: &[Complex64], k_cut: i64) -> f64 {
    let n = c.len();
    let lower = 2.0 * k_cut as f64 / 3.0;
    let (mut tail, mut total) = (0.0, 0.0);
    for (j, z) in c.iter().enumerate() {
        let e = z.norm_sqr();
        total += e;
        if crate::spectral::wavenumber(j, n).abs() as f64 > lower {
            tail += e;
        }
    }
    if total > 0.0 {
        tail / total
    } else {
        0.0
    }
}

/// Semi-discrete right-hand side on a fixed grid.
#[derive(Debug, Clone)]
pub struct Solver {
    grid: FourierGrid,
    b: f64,
    k_cut: i64,
    ik: Vec<Complex64>,
    ik_p: Vec<Complex64>,
}

impl Solver {
    pub fn new(n: usize, b: f64, dealias: bool) -> Result<Self> {
        crate::check_b(b)?;
        let grid = FourierGrid::new(n)?;
        let ni = n as i64;
        let k_cut = if dealias { ni / 3 } else { ni / 2 };
        let ik: Vec<Complex64> = (0..n)
            .map(|j| {
                let k = grid.wavenumber(j);
                if k.abs() > k_cut {
                    Complex64::new(0.0, 0.0)
                } else {
                    derivative_multiplier(k, ni)
                }
            })
            .collect();
        let ik_p = ik
            .iter()
            .enumerate()
            .map(|(j, d)| d * SpectralMultiplier::new(grid.wavenumber(j)).m_p)
            .collect();
        Ok(Self { grid, b, k_cut, ik, ik_p })
    }

    pub fn grid(&self) -> &FourierGrid {
        &self.grid
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Largest retained wavenumber.
    pub fn k_cut(&self) -> i64 {
        self.k_cut
    }

    /// Zeroes every mode above the cutoff.
    pub fn project(&self, c: &mut [Complex64]) {
        for (j, z) in c.iter_mut().enumerate() {
            if self.grid.wavenumber(j).abs() > self.k_cut {
                *z = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Coefficients of `-(u^2/2)_x - p' * (b/2 u^2 + (3-b)/2 u_x^2)`.
    pub fn rhs_coeffs(&self, c: &[Complex64]) -> Vec<Complex64> {
        let u = self.grid.inverse(c);
        let dc: Vec<Complex64> = c.iter().zip(&self.ik).map(|(z, d)| z * d).collect();
        let ux = self.grid.inverse(&dc);
        let half_b = 0.5 * self.b;
        let half_rest = 0.5 * (3.0 - self.b);
        let sq: Vec<f64> = u.iter().map(|v| v * v).collect();
        let src: Vec<f64> = sq.iter().zip(&ux).map(|(s, d)| half_b * s + half_rest * d * d).collect();
        let sq_c = self.grid.forward(&sq);
        let src_c = self.grid.forward(&src);
        sq_c.iter()
            .zip(&src_c)
            .zip(self.ik.iter().zip(&self.ik_p))
            .map(|((s, g), (d, dp))| -0.5 * d * s - dp * g)
            .collect()
    }

    /// One classical RK4 step; `dt` may be negative.
    pub fn step(&self, c: &mut [Complex64], dt: f64) {
        let shifted = |base: &[Complex64], k: &[Complex64], h: f64| -> Vec<Complex64> {
            base.iter().zip(k).map(|(a, b)| a + h * b).collect()
        };
        let k1 = self.rhs_coeffs(c);
        let k2 = self.rhs_coeffs(&shifted(c, &k1, 0.5 * dt));
        let k3 = self.rhs_coeffs(&shifted(c, &k2, 0.5 * dt));
        let k4 = self.rhs_coeffs(&shifted(c, &k3, dt));
        let h = dt / 6.0;
        for (i, z) in c.iter_mut().enumerate() {
            *z += h * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    /// `cfl / (N max|u|)`, with `max|u|` floored.
    pub fn stable_dt(&self, max_abs: f64, cfl: f64) -> f64 {
        cfl / (self.grid.len() as f64 * max_abs.max(SPEED_FLOOR))
    }

    fn min_slope(&self, c: &[Complex64]) -> f64 {
        let dc: Vec<Complex64> = c.iter().zip(&self.ik).map(|(z, d)| z * d).collect();
        self.grid.inverse(&dc).into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates the dealiased weak-form right-hand side `u_t` for the field `u`.
pub fn rhs(u: &TorusField, b: f64) -> Result<TorusField> {
    let solver = Solver::new(u.len(), b, true)?;
    let mut c = u.coeffs().to_vec();
    solver.project(&mut c);
    Ok(TorusField::from_coeffs(solver.grid(), solver.rhs_coeffs(&c), u.time()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SimOutcome {
    /// Reached `t_max` without breaking.
    Completed,
    /// `min u_x` crossed the slope threshold.
    BlowUp,
    /// Spectral tail over [`TAIL_LIMIT`] (or non-finite values) before the
    /// slope threshold was reached.
    ResolutionLoss,
}

impl SimOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            SimOutcome::Completed => "COMPLETED",
            SimOutcome::BlowUp => "BLOW_UP",
            SimOutcome::ResolutionLoss => "RESOLUTION_LOSS",
        }
    }
}

/// Per-step diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRecord {
    pub t: f64,
    pub dt: f64,
    pub min_slope: f64,
    pub mean: f64,
    pub h1_energy: f64,
    pub tail_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupReport {
    pub outcome: SimOutcome,
    pub detected: bool,
    /// Threshold crossing time, interpolated between steps.
    pub t_detect: Option<f64>,
    /// Zero of the line fitted to `1/|min u_x|` over the last stretch
    /// before detection.
    pub breaking_time_estimate: Option<f64>,
    pub t_final: f64,
    pub steps: usize,
    pub slope_threshold: f64,
    /// Most negative `min u_x` seen during the run.
    pub steepest_slope: f64,
    pub min_slope_history: Vec<(f64, f64)>,
    pub beta_b: Option<f64>,
    pub criterion_points: Vec<CriterionPoint>,
    pub lifespan_bound: Option<f64>,
    /// Criterion point attaining `lifespan_bound`.
    pub dominant_point: Option<CriterionPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Simulation {
    pub config: SimConfig,
    pub n: usize,
    pub report: BlowupReport,
    pub history: Vec<StepRecord>,
    pub snapshots: Vec<TorusField>,
    pub final_field: TorusField,
}

/// Integrates from `u0` until `t_max`, breaking, or loss of resolution.
pub fn integrate(u0: &TorusField, cfg: &SimConfig) -> Result<Simulation> {
    cfg.validate()?;
    let solver = Solver::new(u0.len(), cfg.b, cfg.dealias)?;
    let n = u0.len();

    let rough = tail_fraction(u0.coeffs(), solver.k_cut());
    if rough > SMOOTH_TAIL_LIMIT {
        return Err(Error::RoughInitialData { tail: rough, limit: SMOOTH_TAIL_LIMIT });
    }

    let (criterion_points, dominant) = match cfg.beta_b {
        Some(beta) => {
            let pts = check_criterion(u0, beta)?;
            let best = criterion::best_point(&pts, cfg.b, beta);
            (pts, best)
        }
        None => (Vec::new(), None),
    };

    let mut c = u0.coeffs().to_vec();
    solver.project(&mut c);

    let t0 = u0.time();
    let t_end = t0 + cfg.t_max;
    let record = |c: &[Complex64], t: f64, dt: f64| {
        let q = quantities_from_coeffs(c, n, cfg.b);
        StepRecord {
            t,
            dt,
            min_slope: solver.min_slope(c),
            mean: q.mean,
            h1_energy: q.h1_energy,
            tail_fraction: tail_fraction(c, solver.k_cut()),
        }
    };

    let first = record(&c, t0, 0.0);
    let threshold = cfg.slope_threshold.resolve(first.min_slope);
    let mut history = vec![first];
    let mut snapshots = vec![TorusField::from_coeffs(solver.grid(), c.clone(), t0)];
    let mut next_snapshot = cfg.snapshot_interval.map(|s| t0 + s);

    let mut t = t0;
    let mut outcome = SimOutcome::Completed;
    let mut t_detect = None;
    let end_slack = 1e-12 * cfg.t_max.max(1.0);

    while t < t_end - end_slack {
        let max_abs = solver.grid().inverse(&c).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let dt = solver.stable_dt(max_abs, cfg.cfl).min(t_end - t);
        solver.step(&mut c, dt);
        t += dt;

        let prev_slope = history.last().map(|r| r.min_slope).unwrap_or(0.0);
        let rec = record(&c, t, dt);
        history.push(rec);

        if !rec.min_slope.is_finite() || !rec.h1_energy.is_finite() {
            outcome = SimOutcome::ResolutionLoss;
            break;
        }
        if rec.min_slope < -threshold {
            outcome = SimOutcome::BlowUp;
            let frac = (-threshold - prev_slope) / (rec.min_slope - prev_slope);
            t_detect = Some(t - dt + frac.clamp(0.0, 1.0) * dt);
            break;
        }
        if rec.tail_fraction > TAIL_LIMIT {
            outcome = SimOutcome::ResolutionLoss;
            break;
        }
        if let (Some(s), Some(next)) = (cfg.snapshot_interval, next_snapshot.as_mut()) {
            if t >= *next {
                snapshots.push(TorusField::from_coeffs(solver.grid(), c.clone(), t));
                while *next <= t {
                    *next += s;
                }
            }
        }
    }

    let final_field = TorusField::from_coeffs(solver.grid(), c, t);
    let breaking_time_estimate = match outcome {
        SimOutcome::BlowUp => extrapolate_breaking(&history, threshold),
        _ => None,
    };

    let report = BlowupReport {
        outcome,
        detected: outcome == SimOutcome::BlowUp,
        t_detect,
        breaking_time_estimate,
        t_final: t,
        steps: history.len() - 1,
        slope_threshold: threshold,
        steepest_slope: history.iter().map(|r| r.min_slope).fold(f64::INFINITY, f64::min),
        min_slope_history: history.iter().map(|r| (r.t, r.min_slope)).collect(),
        beta_b: cfg.beta_b,
        lifespan_bound: dominant.map(|(_, t)| t),
        dominant_point: dominant.map(|(p, _)| p),
        criterion_points,
    };

    Ok(Simulation { config: cfg.clone(), n, report, history, snapshots, final_field })
}

/// Least-squares line through `(t, 1/|min u_x|)` for the records past half the
/// threshold; returns its zero.
fn extrapolate_breaking(history: &[StepRecord], threshold: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = history
        .iter()
        .filter(|r| r.min_slope < -0.5 * threshold)
        .map(|r| (r.t, 1.0 / r.min_slope.abs()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let m = pts.len() as f64;
    let (st, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (t, y)| (a + t, b + y));
    let (tb, yb) = (st / m, sy / m);
    let (sxy, sxx) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (t, y)| (a + (t - tb) * (y - yb), b + (t - tb) * (t - tb)));
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    (slope < 0.0).then(|| tb - yb / slope)
}

/// Runs independent trajectories in parallel.
pub fn integrate_batch(runs: &[(TorusField, SimConfig)]) -> Vec<Result<Simulation>> {
    runs.par_iter().map(|(u0, cfg)| integrate(u0, cfg)).collect()
}
