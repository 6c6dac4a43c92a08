//! `uavfog` — plan UAV fog-node placements and simulate their lifetime.
//!
//! Subcommands: `generate` (normalized scenario JSON), `optimize`
//! (placement JSON + convergence CSV), `simulate` (frame CSV + summary
//! JSON), `compare` (paired WOA-vs-PSO CSV), and `sweep` (one-parameter
//! study CSV). Validation failures exit nonzero with a one-line JSON
//! error object on stderr; advisory range warnings also go to stderr.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use uavfog_core::config::ConfigDocument;
use uavfog_core::export;
use uavfog_core::optimizer::{run_optimizer, run_pso_baseline};
use uavfog_core::sim::run_simulation;
use uavfog_core::study::{self, SweepParam};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] uavfog_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                uavfog_core::Error::PlacementLength { .. } => "placement_length",
                uavfog_core::Error::InvalidScenario(_) => "invalid_scenario",
                uavfog_core::Error::InvalidParams(_) => "invalid_params",
                uavfog_core::Error::SelfLink(_) => "self_link",
                uavfog_core::Error::SingularGeometry => "singular_geometry",
                uavfog_core::Error::DegenerateRate(_) => "degenerate_rate",
                uavfog_core::Error::TravelExceedsFrame { .. } => "travel_exceeds_frame",
                uavfog_core::Error::Config(_) => "config",
            },
            CliError::Io { .. } => "io",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "uavfog",
    version,
    about = "Plan connected-coverage UAV fog placements and simulate network lifetime"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a normalized scenario configuration with users materialized.
    Generate {
        /// Input config JSON; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path for the normalized config document.
        #[arg(long, default_value = "scenario.json")]
        out: PathBuf,
    },
    /// Optimize a placement and write it with its convergence trace.
    Optimize {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Search algorithm: woa (adaptive) or pso (baseline).
        #[arg(long, default_value = "woa")]
        algo: String,
        /// Override the optimizer's iteration budget.
        #[arg(long)]
        iters: Option<usize>,
        /// Override the optimizer's population size.
        #[arg(long)]
        pop: Option<usize>,
        /// Override the optimizer's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "placement.json")]
        placement_out: PathBuf,
        #[arg(long, default_value = "trace.csv")]
        trace_out: PathBuf,
    },
    /// Optimize, then run the timeframe simulation on the result.
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the number of simulated frames.
        #[arg(long)]
        frames: Option<usize>,
        /// Override both the scenario and optimizer seeds.
        #[arg(long)]
        seed: Option<u64>,
        /// Disable energy-conscious node swapping.
        #[arg(long)]
        no_ecnsa: bool,
        #[arg(long, default_value = "frames.csv")]
        frames_out: PathBuf,
        #[arg(long, default_value = "summary.json")]
        summary_out: PathBuf,
    },
    /// Run WOA and PSO on paired seeds and summarize final coverage.
    Compare {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        seeds: usize,
        /// Master seed from which per-pair seeds derive.
        #[arg(long, default_value_t = 42)]
        master_seed: u64,
        #[arg(long, default_value = "comparison.csv")]
        out: PathBuf,
    },
    /// Vary one parameter over a range and record coverage/connectivity.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Parameter to vary: n_uavs, n_users, or comm_radius.
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, default_value_t = 5)]
        seeds_per_point: usize,
        #[arg(long, default_value_t = 42)]
        master_seed: u64,
        #[arg(long, default_value = "sweep.csv")]
        out: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.cmd) {
        let msg = serde_json::json!({
            "error": { "kind": e.kind(), "message": e.to_string() }
        });
        eprintln!("{msg}");
        std::process::exit(1);
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// Loads the config (or defaults), prints advisory range warnings.
fn load_config(path: Option<&Path>) -> CliResult<ConfigDocument> {
    let doc = match path {
        Some(p) => ConfigDocument::from_json(&read_file(p)?)?,
        None => ConfigDocument::default(),
    };
    for w in doc.scenario.range_warnings() {
        eprintln!("warning: {w}");
    }
    Ok(doc)
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Generate { config, seed, out } => {
            let mut doc = load_config(config.as_deref())?;
            if let Some(s) = seed {
                doc.scenario.seed = s;
                doc.scenario.users = None;
            }
            let normalized = doc.normalized()?;
            write_file(&out, &normalized.to_json_pretty())
        }
        Command::Optimize { config, algo, iters, pop, seed, placement_out, trace_out } => {
            let doc = load_config(config.as_deref())?;
            let scenario = doc.scenario.build_scenario()?;
            let run = match algo.as_str() {
                "woa" => {
                    let mut params = doc.woa.clone();
                    if let Some(v) = iters {
                        params.max_iters = v;
                    }
                    if let Some(v) = pop {
                        params.pop_size = v;
                    }
                    if let Some(v) = seed {
                        params.seed = v;
                    }
                    run_optimizer(&scenario, &params)?
                }
                "pso" => {
                    let mut params = doc.pso.clone();
                    if let Some(v) = iters {
                        params.max_iters = v;
                    }
                    if let Some(v) = pop {
                        params.pop_size = v;
                    }
                    if let Some(v) = seed {
                        params.seed = v;
                    }
                    run_pso_baseline(&scenario, &params)?
                }
                other => {
                    return Err(uavfog_core::Error::InvalidParams(format!(
                        "unknown algorithm '{other}' (expected woa or pso)"
                    ))
                    .into())
                }
            };
            write_file(&placement_out, &export::placement_json(&run.best, &run.report))?;
            write_file(&trace_out, &export::trace_csv(&run.trace))
        }
        Command::Simulate { config, frames, seed, no_ecnsa, frames_out, summary_out } => {
            let mut doc = load_config(config.as_deref())?;
            if let Some(f) = frames {
                doc.sim.n_frames = f;
            }
            if let Some(s) = seed {
                doc.scenario.seed = s;
                doc.scenario.users = None;
                doc.woa.seed = s;
            }
            if no_ecnsa {
                doc.sim.ecnsa_enabled = false;
            }
            let scenario = doc.scenario.build_scenario()?;
            let result = run_simulation(&scenario, &doc.sim, &doc.woa)?;
            write_file(&frames_out, &export::frames_csv(&result.frames))?;
            write_file(&summary_out, &export::sim_summary_json(&result))
        }
        Command::Compare { config, seeds, master_seed, out } => {
            let doc = load_config(config.as_deref())?;
            let rows = study::run_comparison(&doc.scenario, &doc.woa, &doc.pso, seeds, master_seed)?;
            write_file(&out, &export::comparison_csv(&rows))?;
            let summary = study::summarize_comparison(&rows);
            println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            Ok(())
        }
        Command::Sweep {
            config,
            param,
            from,
            to,
            step,
            seeds_per_point,
            master_seed,
            out,
        } => {
            let doc = load_config(config.as_deref())?;
            let param: SweepParam = param.parse()?;
            let rows = study::run_sweep(
                &doc.scenario,
                param,
                from,
                to,
                step,
                seeds_per_point,
                master_seed,
                &doc.woa,
            )?;
            write_file(&out, &export::sweep_csv(&rows))
        }
    }
}
