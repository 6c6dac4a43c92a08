//! Multi-run experiment drivers: paired algorithm comparison and
//! single-parameter sweeps.
//!
//! Each repetition gets its own derived seed, and both algorithms in a
//! comparison pair share one seed, so they optimize the same scenario
//! from the same initial population.

use std::str::FromStr;

use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::export::{CompareRow, SweepRow};
use crate::optimizer::{run_optimizer, run_pso_baseline, PsoParams, WoaParams};
use crate::rng::{self, domain};
use crate::topology::build_topology;

/// Runs WOA and PSO on `n_seeds` freshly generated scenarios; each pair
/// shares its scenario and its population seed.
pub fn run_comparison(
    template: &ScenarioConfig,
    woa: &WoaParams,
    pso: &PsoParams,
    n_seeds: usize,
    master_seed: u64,
) -> Result<Vec<CompareRow>> {
    if n_seeds == 0 {
        return Err(Error::InvalidParams("comparison needs at least one seed".into()));
    }
    let mut rows = Vec::with_capacity(n_seeds);
    for k in 0..n_seeds {
        let seed = rng::derive_seed(master_seed, domain::COMPARE, k as u64);
        let mut cfg = template.clone();
        cfg.seed = seed;
        cfg.users = None;
        let scenario = cfg.build_scenario()?;
        let woa_k = WoaParams { seed, ..woa.clone() };
        let pso_k = PsoParams { seed, ..pso.clone() };
        let w = run_optimizer(&scenario, &woa_k)?;
        let p = run_pso_baseline(&scenario, &pso_k)?;
        rows.push(CompareRow { seed, woa_h: w.report.h_value, pso_h: p.report.h_value });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareSummary {
    pub n_seeds: usize,
    pub woa_mean: f64,
    pub woa_stddev: f64,
    pub pso_mean: f64,
    pub pso_stddev: f64,
}

pub fn summarize_comparison(rows: &[CompareRow]) -> CompareSummary {
    let woa: Vec<f64> = rows.iter().map(|r| r.woa_h).collect();
    let pso: Vec<f64> = rows.iter().map(|r| r.pso_h).collect();
    CompareSummary {
        n_seeds: rows.len(),
        woa_mean: mean(&woa),
        woa_stddev: stddev(&woa),
        pso_mean: mean(&pso),
        pso_stddev: stddev(&pso),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    NUavs,
    NUsers,
    CommRadius,
}

impl SweepParam {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::NUavs => "n_uavs",
            SweepParam::NUsers => "n_users",
            SweepParam::CommRadius => "comm_radius",
        }
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n_uavs" => Ok(SweepParam::NUavs),
            "n_users" => Ok(SweepParam::NUsers),
            "comm_radius" => Ok(SweepParam::CommRadius),
            other => Err(Error::InvalidParams(format!(
                "unknown sweep parameter '{other}' (expected n_uavs, n_users, or comm_radius)"
            ))),
        }
    }
}

/// Sweeps one parameter over an inclusive range, averaging final
/// coverage and connectivity of the optimized placement over
/// `seeds_per_point` repetitions at each value.
pub fn run_sweep(
    template: &ScenarioConfig,
    param: SweepParam,
    from: f64,
    to: f64,
    step: f64,
    seeds_per_point: usize,
    master_seed: u64,
    woa: &WoaParams,
) -> Result<Vec<SweepRow>> {
    if !(step > 0.0) {
        return Err(Error::InvalidParams(format!("sweep step must be > 0, got {step}")));
    }
    if from > to {
        return Err(Error::InvalidParams(format!("sweep range is empty: from {from} to {to}")));
    }
    if seeds_per_point == 0 {
        return Err(Error::InvalidParams("sweep needs at least one seed per point".into()));
    }

    let mut values = Vec::new();
    let mut v = from;
    // Tolerate accumulated float error at the inclusive upper edge.
    while v <= to + 1e-9 * step.max(1.0) {
        values.push(v);
        v += step;
    }

    let mut rows = Vec::with_capacity(values.len());
    for (i, &value) in values.iter().enumerate() {
        let mut h_samples = Vec::with_capacity(seeds_per_point);
        let mut conn_samples = Vec::with_capacity(seeds_per_point);
        for k in 0..seeds_per_point {
            let seed = rng::mix(master_seed, domain::SWEEP, i as u64, k as u64, 0);
            let mut cfg = template.clone();
            cfg.seed = seed;
            cfg.users = None;
            match param {
                SweepParam::NUavs => cfg.n_uavs = value.round() as usize,
                SweepParam::NUsers => cfg.n_users = value.round() as usize,
                SweepParam::CommRadius => cfg.comm_radius_gamma = value,
            }
            let scenario = cfg.build_scenario()?;
            let run = run_optimizer(&scenario, &WoaParams { seed, ..woa.clone() })?;
            let topo = build_topology(&run.best, &scenario)?;
            h_samples.push(run.report.h_value);
            conn_samples.push(topo.connectivity_ratio());
        }
        rows.push(SweepRow {
            param: param.as_str().to_string(),
            value,
            mean_h: mean(&h_samples),
            stddev_h: stddev(&h_samples),
            mean_connectivity: mean(&conn_samples),
            n_seeds: seeds_per_point,
        });
    }
    Ok(rows)
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation; zero for fewer than two samples.
fn stddev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64;
    var.sqrt()
}
