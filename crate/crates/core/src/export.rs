//! Plain-text renderers for run artifacts.
//!
//! CSV for per-iteration and per-frame series, JSON for placements and
//! simulation summaries. Floating-point cells use Rust's shortest
//! round-trip formatting, so parsing a cell back yields the exact value
//! that produced it.

use serde::Serialize;

use crate::model::PlacementVector;
use crate::objective::FitnessReport;
use crate::optimizer::TraceRow;
use crate::sim::{FrameRecord, SimResult};

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out =
        String::from("iter,best_h,nc,ncv1,ncv2,a_value,mech_encircle,mech_explore,mech_spiral\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.iter,
            r.best_h,
            r.nc,
            r.ncv1,
            r.ncv2,
            r.a_value,
            r.mech_encircle,
            r.mech_explore,
            r.mech_spiral
        ));
    }
    out
}

pub fn frames_csv(frames: &[FrameRecord]) -> String {
    let mut out =
        String::from("frame,h,connectivity_ratio,alive,total_residual_j,nls_gstar_j,deaths,swaps\n");
    for f in frames {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            f.frame,
            f.h,
            f.connectivity_ratio,
            f.alive,
            f.total_residual_j,
            f.nls_gstar_j,
            f.deaths,
            f.swaps
        ));
    }
    out
}

/// One paired-seed comparison outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareRow {
    pub seed: u64,
    pub woa_h: f64,
    pub pso_h: f64,
}

pub fn comparison_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("seed,woa_h,pso_h\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.seed, r.woa_h, r.pso_h));
    }
    out
}

/// Aggregated sweep measurement at one parameter value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: String,
    pub value: f64,
    pub mean_h: f64,
    pub stddev_h: f64,
    pub mean_connectivity: f64,
    pub n_seeds: usize,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("param,value,mean_h,stddev_h,mean_connectivity,n_seeds\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.param, r.value, r.mean_h, r.stddev_h, r.mean_connectivity, r.n_seeds
        ));
    }
    out
}

#[derive(Serialize)]
struct PlacementDoc<'a> {
    n_uavs: usize,
    coords: &'a [f64],
    report: &'a FitnessReport,
}

/// Best placement plus its coverage report, as pretty JSON.
pub fn placement_json(placement: &PlacementVector, report: &FitnessReport) -> String {
    let doc = PlacementDoc {
        n_uavs: placement.n_uavs(),
        coords: placement.coords(),
        report,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("placement serializes");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct SimSummaryDoc<'a> {
    h_initial: f64,
    final_h: f64,
    n_frames: usize,
    lifespan_frames: usize,
    final_alive: usize,
    total_residual_j: f64,
    events: &'a crate::sim::SimEvents,
}

/// Lifespan metrics and the event log, as pretty JSON.
pub fn sim_summary_json(result: &SimResult) -> String {
    let last = result.frames.last().expect("at least the initial frame");
    let doc = SimSummaryDoc {
        h_initial: result.h_initial,
        final_h: last.h,
        n_frames: last.frame,
        lifespan_frames: result.lifespan_frames,
        final_alive: last.alive,
        total_residual_j: last.total_residual_j,
        events: &result.events,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("summary serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_csv_has_header_and_roundtrip_cells() {
        let rows = vec![TraceRow {
            iter: 0,
            best_h: 0.1 + 0.2, // deliberately non-representable exactly
            nc: 3,
            ncv1: 5,
            ncv2: 4,
            a_value: 2.0,
            mech_encircle: 0,
            mech_explore: 0,
            mech_spiral: 0,
        }];
        let csv = trace_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "iter,best_h,nc,ncv1,ncv2,a_value,mech_encircle,mech_explore,mech_spiral"
        );
        let cells: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(cells[1].parse::<f64>().unwrap(), 0.1 + 0.2);
    }

    #[test]
    fn frames_csv_matches_record_order() {
        let frames = vec![
            FrameRecord {
                frame: 0,
                h: 0.5,
                connectivity_ratio: 1.0,
                alive: 4,
                total_residual_j: 100.0,
                nls_gstar_j: 100.0,
                deaths: 0,
                swaps: 0,
            },
            FrameRecord {
                frame: 1,
                h: 0.25,
                connectivity_ratio: 0.5,
                alive: 2,
                total_residual_j: 40.0,
                nls_gstar_j: 20.0,
                deaths: 2,
                swaps: 1,
            },
        ];
        let csv = frames_csv(&frames);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[2], "1,0.25,0.5,2,40,20,2,1");
    }

    #[test]
    fn comparison_and_sweep_render_one_row_per_entry() {
        let cmp = comparison_csv(&[CompareRow { seed: 9, woa_h: 0.75, pso_h: 0.5 }]);
        assert_eq!(cmp, "seed,woa_h,pso_h\n9,0.75,0.5\n");
        let swp = sweep_csv(&[SweepRow {
            param: "comm_radius".into(),
            value: 120.0,
            mean_h: 0.8,
            stddev_h: 0.01,
            mean_connectivity: 0.9,
            n_seeds: 5,
        }]);
        assert!(swp.starts_with("param,value,"));
        assert!(swp.contains("comm_radius,120,0.8,0.01,0.9,5"));
    }

    #[test]
    fn placement_json_carries_coords_and_report() {
        let p = PlacementVector::new(vec![1.0, 2.0, 3.0, 4.0], 2).unwrap();
        let report = FitnessReport { nc: 2, ncv1: 3, ncv2: 3, h_value: 0.75, m_active: 4 };
        let text = placement_json(&p, &report);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n_uavs"], 2);
        assert_eq!(v["coords"].as_array().unwrap().len(), 4);
        assert_eq!(v["report"]["h_value"], 0.75);
    }
}
