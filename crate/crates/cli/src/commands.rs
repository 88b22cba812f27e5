use std::f64::consts::PI;
use std::path::Path;

use bfamily_core::pde::SlopeThreshold;
use bfamily_core::{
    compute_beta_b, compute_j, compute_j_bvp, compute_j_direct, estimate1, estimate2, estimate3,
    integrate, sweep_with, thresholds, BetaBStatus, BlowupReport, EstimateResult, JResult,
    SimConfig, SimOutcome, TorusField, TrigPolynomial,
};
use serde::Serialize;

use crate::output::{cell, csv_bytes, json_bytes, Artifacts, RowStatus};
use crate::{BetaBArgs, BetaSource, CliError, InitialData, JArgs, JMethodArg, RangeArgs, SimulateArgs};

pub const BETA_B_COLUMNS: [&str; 7] = ["b", "beta_b", "status", "uncertainty", "est1", "est2", "est3"];
pub const ESTIMATE_COLUMNS: [&str; 10] =
    ["b", "est1", "est1_valid", "est2", "est2_valid", "est3", "est3_valid", "alpha", "gamma", "status"];
pub const TIMESERIES_COLUMNS: [&str; 6] = ["t", "dt", "min_slope", "mean", "h1_energy", "tail_fraction"];

fn emit(bytes: &[u8]) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    out.write_all(bytes).map_err(CliError::internal)?;
    out.flush().map_err(CliError::internal)
}

fn report_paths(paths: &[std::path::PathBuf]) {
    for p in paths {
        eprintln!("wrote {}", p.display());
    }
}

pub fn cmd_j(a: &JArgs, out: Option<&Path>) -> Result<(), CliError> {
    let res: JResult = match a.method {
        JMethodArg::Auto if a.grid == bfamily_core::variational::DEFAULT_GRID || a.b == 3.0 => compute_j(a.b, a.beta)?,
        JMethodArg::Auto | JMethodArg::Bvp => compute_j_bvp(a.b, a.beta, a.grid)?,
        JMethodArg::Direct => compute_j_direct(a.b, a.beta, a.grid)?,
    };
    let bytes = json_bytes(&res)?;
    emit(&bytes)?;
    if let Some(dir) = out {
        let mut art = Artifacts::new(dir, "j");
        art.add("j.json", bytes);
        report_paths(&art.finish(a, vec![RowStatus { row: 0, status: "OK".into() }])?);
    }
    Ok(())
}

fn bound_cell(e: &Option<EstimateResult>) -> String {
    cell(e.as_ref().and_then(EstimateResult::bound))
}

pub fn cmd_beta_b(a: &BetaBArgs, out: Option<&Path>) -> Result<(), CliError> {
    let range = a.range.sweep_range();
    let rows = sweep_with(range.min, range.max, range.steps, a.tol, a.scan_points)?;
    let mut table = Vec::with_capacity(rows.len());
    let mut statuses = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let status = match (&row.result, &row.error) {
            (Some(r), _) => r.status.as_str().to_string(),
            (None, Some(e)) => {
                eprintln!("row {i} (b = {}): {e}", row.b);
                "ERROR".to_string()
            }
            (None, None) => "ERROR".to_string(),
        };
        let r = row.result.as_ref();
        table.push(vec![
            cell(Some(row.b)),
            cell(r.and_then(|r| r.beta_b)),
            status.clone(),
            cell(r.map(|r| r.uncertainty)),
            bound_cell(&row.estimates[0]),
            bound_cell(&row.estimates[1]),
            bound_cell(&row.estimates[2]),
        ]);
        statuses.push(RowStatus { row: i, status });
    }
    let bytes = csv_bytes(&BETA_B_COLUMNS, &table)?;
    emit(&bytes)?;
    let succeeded = rows.iter().filter(|r| r.result.is_some()).count();
    if let Some(dir) = out {
        let mut art = Artifacts::new(dir, "beta_b");
        art.add("beta_b.csv", bytes);
        report_paths(&art.finish(a, statuses)?);
    }
    if succeeded == 0 {
        return Err(CliError::domain("no row of the sweep could be computed"));
    }
    Ok(())
}

fn estimate_cells(e: &bfamily_core::Result<EstimateResult>) -> [String; 2] {
    match e {
        Ok(r) => [cell(r.value), r.valid.to_string()],
        Err(_) => [String::new(), String::new()],
    }
}

pub fn cmd_estimates(a: &RangeArgs, out: Option<&Path>) -> Result<(), CliError> {
    let range = a.range.sweep_range();
    if !(range.min >= 1.0 && range.max <= 3.0) {
        return Err(CliError::domain(format!("estimate range must lie in [1, 3], got [{}, {}]", range.min, range.max)));
    }
    let th = thresholds();
    let mut table = Vec::new();
    let mut statuses = Vec::new();
    for (i, b) in bfamily_core::beta_b::sweep_points(range.min, range.max, range.steps).into_iter().enumerate() {
        let ests = [estimate1(b), estimate2(b), estimate3(b)];
        let failed: Vec<String> = ests.iter().filter_map(|e| e.as_ref().err().map(|e| e.to_string())).collect();
        let mut messages = failed.clone();
        messages.dedup();
        let status = match failed.len() {
            0 => "OK",
            3 => "ERROR",
            _ => "PARTIAL",
        };
        for msg in &messages {
            eprintln!("row {i} (b = {b}): {msg}");
        }
        let mut row = vec![cell(Some(b))];
        for e in &ests {
            row.extend(estimate_cells(e));
        }
        row.extend([cell(Some(th.alpha)), cell(Some(th.gamma)), status.to_string()]);
        table.push(row);
        statuses.push(RowStatus { row: i, status: status.to_string() });
    }
    let bytes = csv_bytes(&ESTIMATE_COLUMNS, &table)?;
    emit(&bytes)?;
    if let Some(dir) = out {
        let mut art = Artifacts::new(dir, "estimates");
        art.add("estimates.csv", bytes);
        report_paths(&art.finish(a, statuses.clone())?);
    }
    if statuses.iter().all(|s| s.status == "ERROR") {
        return Err(CliError::domain("no row of the sweep could be computed"));
    }
    Ok(())
}

fn initial_field(a: &SimulateArgs) -> Result<TorusField, CliError> {
    let amp = a.amp;
    let field = match a.ic {
        InitialData::Const => TorusField::constant(a.n, amp),
        InitialData::Cos => TorusField::from_fn(a.n, |x| amp * (2.0 * PI * x).cos()),
        InitialData::Oddsine => TorusField::from_fn(a.n, |x| -amp * (2.0 * PI * x).sin()),
        InitialData::Fourier => {
            let poly = TrigPolynomial { mean: a.mean, cos: a.cos.clone(), sin: a.sin.clone() };
            TorusField::from_fn(a.n, |x| poly.eval(x))
        }
    };
    Ok(field?)
}

#[derive(Debug, Serialize)]
struct BetaInfo {
    source: BetaSource,
    value: Option<f64>,
    status: String,
}

fn beta_for(a: &SimulateArgs) -> Result<BetaInfo, CliError> {
    Ok(match a.beta_source {
        BetaSource::None => BetaInfo { source: a.beta_source, value: None, status: "SKIPPED".into() },
        BetaSource::Numeric => {
            let r = compute_beta_b(a.b, bfamily_core::beta_b::DEFAULT_TOL, bfamily_core::beta_b::DEFAULT_SCAN_POINTS)?;
            let value = r.beta_b.filter(|_| r.status == BetaBStatus::Finite);
            if value.is_none() {
                eprintln!("beta_b is {} at b = {}; criterion not evaluated", r.status.as_str(), a.b);
            }
            BetaInfo { source: a.beta_source, value, status: r.status.as_str().into() }
        }
        BetaSource::Est3 => {
            let e = estimate3(a.b)?;
            let value = e.bound();
            if value.is_none() {
                eprintln!("estimate 3 does not apply at b = {}; criterion not evaluated", a.b);
            }
            let status = if value.is_some() { "VALID" } else { "NOT_APPLICABLE" };
            BetaInfo { source: a.beta_source, value, status: status.into() }
        }
    })
}

#[derive(Debug, Serialize)]
struct SimulateDocument<'a> {
    command: &'static str,
    n: usize,
    ic: InitialData,
    amp: f64,
    beta: BetaInfo,
    config: &'a SimConfig,
    report: &'a BlowupReport,
}

pub fn cmd_simulate(a: &SimulateArgs, out: Option<&Path>) -> Result<(), CliError> {
    let u0 = initial_field(a)?;
    let beta = beta_for(a)?;
    let mut cfg = SimConfig::new(a.b, a.t_max);
    cfg.cfl = a.cfl;
    cfg.dealias = !a.no_dealias;
    cfg.beta_b = beta.value;
    cfg.slope_threshold = match a.slope_threshold {
        Some(l) => SlopeThreshold::Absolute(l),
        None => SlopeThreshold::Relative(a.slope_factor),
    };
    let sim = integrate(&u0, &cfg)?;
    if sim.report.outcome == SimOutcome::ResolutionLoss {
        eprintln!("resolution lost at t = {} before the slope threshold was reached", sim.report.t_final);
    }
    let doc = SimulateDocument {
        command: "simulate",
        n: a.n,
        ic: a.ic,
        amp: a.amp,
        beta,
        config: &sim.config,
        report: &sim.report,
    };
    let report = json_bytes(&doc)?;
    emit(&report)?;
    if let Some(dir) = out {
        let rows: Vec<Vec<String>> = sim
            .history
            .iter()
            .map(|r| {
                [r.t, r.dt, r.min_slope, r.mean, r.h1_energy, r.tail_fraction]
                    .iter()
                    .map(|v| cell(Some(*v)))
                    .collect()
            })
            .collect();
        let mut art = Artifacts::new(dir, "simulate");
        art.add("simulate_report.json", report);
        art.add("simulate_timeseries.csv", csv_bytes(&TIMESERIES_COLUMNS, &rows)?);
        let status = vec![RowStatus { row: 0, status: sim.report.outcome.as_str().into() }];
        report_paths(&art.finish(a, status)?);
    }
    Ok(())
}
