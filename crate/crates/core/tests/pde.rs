use std::f64::consts::PI;

use bfamily_core::pde::{integrate_batch, SlopeThreshold};
use bfamily_core::{conserved_quantities, integrate, SimConfig, SimOutcome, TorusField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_smooth(n: usize, rng: &mut ChaCha8Rng) -> TorusField {
    let modes: Vec<(f64, f64)> = (0..4).map(|_| (rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3))).collect();
    let mean = rng.gen_range(-0.5..0.5);
    TorusField::from_fn(n, |x| {
        modes.iter().enumerate().fold(mean, |acc, (k, (a, b))| {
            let t = 2.0 * PI * (k + 1) as f64 * x;
            acc + a * t.cos() + b * t.sin()
        })
    })
    .unwrap()
}

#[test]
fn mean_is_conserved_for_all_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for b in [1.5, 2.0, 2.5, 3.0] {
        let u0 = random_smooth(256, &mut rng);
        let sim = integrate(&u0, &SimConfig::new(b, 0.5)).unwrap();
        let m0 = sim.history[0].mean;
        let drift = sim.history.iter().map(|r| (r.mean - m0).abs()).fold(0.0, f64::max);
        assert!(drift / sim.report.t_final < 1e-10, "b = {b}: {drift:e}");
    }
}

#[test]
fn h1_energy_is_conserved_for_camassa_holm() {
    let u0 = TorusField::from_fn(512, |x| (2.0 * PI * x).cos()).unwrap();
    let mut cfg = SimConfig::new(2.0, 0.3);
    cfg.slope_threshold = SlopeThreshold::Absolute(100.0);
    let sim = integrate(&u0, &cfg).unwrap();
    let e0 = sim.history[0].h1_energy;
    for r in sim.history.iter().take_while(|r| r.min_slope > -100.0 && r.tail_fraction < 1e-6) {
        assert!(((r.h1_energy - e0) / e0).abs() < 1e-6, "t = {}", r.t);
    }
    assert!(conserved_quantities(&u0, 2.0).h1_invariant);
}

#[test]
fn h1_energy_drifts_away_from_b2() {
    let u0 = TorusField::from_fn(256, |x| (2.0 * PI * x).cos()).unwrap();
    let sim = integrate(&u0, &SimConfig::new(3.0, 0.1)).unwrap();
    let e0 = sim.history[0].h1_energy;
    let e1 = sim.history.last().unwrap().h1_energy;
    assert!(((e1 - e0) / e0).abs() > 1e-4);
}

#[test]
fn odd_data_breaks() {
    let u0 = TorusField::from_fn(512, |x| -0.1 * (2.0 * PI * x).sin()).unwrap();
    let sim = integrate(&u0, &SimConfig::new(2.5, 50.0)).unwrap();
    assert_eq!(sim.report.outcome, SimOutcome::BlowUp);
    assert!(sim.report.t_detect.unwrap() < 5.0);
}

#[test]
fn small_data_short_time_completes() {
    let u0 = TorusField::from_fn(128, |x| 0.05 * (2.0 * PI * x).cos()).unwrap();
    let sim = integrate(&u0, &SimConfig::new(2.0, 0.5)).unwrap();
    assert_eq!(sim.report.outcome, SimOutcome::Completed);
    assert!(!sim.report.detected && sim.report.t_detect.is_none());
    assert!((sim.report.t_final - 0.5).abs() < 1e-12);
}

#[test]
fn batch_matches_sequential() {
    let u0 = TorusField::from_fn(128, |x| 0.3 * (2.0 * PI * x).sin()).unwrap();
    let runs = vec![(u0.clone(), SimConfig::new(2.0, 0.2)), (u0.clone(), SimConfig::new(3.0, 0.2))];
    let batch = integrate_batch(&runs);
    for ((u, cfg), res) in runs.iter().zip(batch) {
        let seq = integrate(u, cfg).unwrap();
        assert_eq!(seq.final_field.values(), res.unwrap().final_field.values());
    }
}
