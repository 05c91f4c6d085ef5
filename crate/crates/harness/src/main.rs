//! Command-line driver for the encrypted-cloning simulation experiments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ecsim_harness::config::{Backend, Experiment, ExperimentConfig};
use ecsim_harness::emit::{write_lines, write_plot_data, PlotSeries};
use ecsim_harness::{corr, exp1, exp2, exp3, exp4, mixedness, verify};

#[derive(Parser)]
#[command(
    name = "ecsim",
    about = "Encrypted-cloning simulation experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment sweep and emit CSV (stdout or --out).
    Run {
        /// exp1 | exp2 | exp3 | exp4 | corr-scan | mixedness
        experiment: String,
        /// Key = value configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        shots: Option<u64>,
        /// statevector | density | tableau-trajectory
        #[arg(long)]
        backend: Option<String>,
        /// Enable the noise model (on/off).
        #[arg(long)]
        noise: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write x/y/sigma plot-data files next to the CSV.
        #[arg(long, default_value_t = false)]
        plot_data: bool,
    },
    /// Run the oracle-equivalence and invariant self-checks.
    Verify,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode, Box<dyn std::error::Error>> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify => {
            let results = verify::run_all();
            let mut failed = 0;
            for (name, outcome) in &results {
                match outcome {
                    Ok(()) => println!("PASS {name}"),
                    Err(msg) => {
                        failed += 1;
                        println!("FAIL {name}: {msg}");
                    }
                }
            }
            println!("{} checks, {} failed", results.len(), failed);
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Run {
            experiment,
            config,
            seed,
            shots,
            backend,
            noise,
            out,
            plot_data,
        } => {
            let experiment = Experiment::parse(&experiment)?;
            let mut cfg = match config {
                Some(path) => ExperimentConfig::from_file(&path, experiment)?,
                None => ExperimentConfig::default_for(experiment),
            };
            cfg.experiment = experiment;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(s) = shots {
                cfg.shots = s;
            }
            if let Some(b) = &backend {
                cfg.backend = Backend::parse(b)?;
            }
            if let Some(n) = &noise {
                cfg.apply("noise", n)?;
            }
            if let Some(path) = out {
                cfg.out = Some(path);
            }
            cfg.plot_data = cfg.plot_data || plot_data;

            let lines = ecsim_harness::run(&cfg)?;
            match &cfg.out {
                Some(path) => {
                    write_lines(path, &lines)?;
                    println!("{} rows -> {}", lines.len() - 1, path.display());
                    if cfg.plot_data {
                        for p in write_plot_data(path, &plot_series(&cfg)?)? {
                            println!("plot data -> {}", p.display());
                        }
                    }
                }
                None => {
                    for line in &lines {
                        println!("{line}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Plot series per experiment: fidelity vs two-qubit depth for the fidelity
/// experiments, S vs n per scenario for the CHSH experiment.
fn plot_series(cfg: &ExperimentConfig) -> Result<Vec<PlotSeries>, Box<dyn std::error::Error>> {
    Ok(match cfg.experiment {
        Experiment::Exp1 => {
            let rows = exp1::run(cfg)?;
            vec![
                PlotSeries {
                    name: "bsm".into(),
                    points: rows
                        .iter()
                        .map(|r| (r.l2q_bsm as f64, r.fe_bsm.value, r.fe_bsm.sigma))
                        .collect(),
                },
                PlotSeries {
                    name: "pom".into(),
                    points: rows
                        .iter()
                        .map(|r| (r.l2q_pom as f64, r.fe_pom.value, r.fe_pom.sigma))
                        .collect(),
                },
            ]
        }
        Experiment::Exp2 => {
            let rows = exp2::run(cfg)?;
            cfg.scenarios
                .iter()
                .map(|sc| PlotSeries {
                    name: sc.label().replace('-', "_"),
                    points: rows
                        .iter()
                        .filter(|r| r.estimate.scenario == *sc)
                        .map(|r| (r.n as f64, r.estimate.s, r.estimate.sigma))
                        .collect(),
                })
                .collect()
        }
        Experiment::Exp3 => {
            let rows = exp3::run(cfg)?;
            vec![PlotSeries {
                name: "fe_vs_l2q".into(),
                points: rows
                    .iter()
                    .map(|r| (r.l2q as f64, r.fe.value, r.fe.sigma))
                    .collect(),
            }]
        }
        Experiment::Exp4 => {
            let rows = exp4::run(cfg)?;
            vec![PlotSeries {
                name: "fr_vs_r".into(),
                points: rows
                    .iter()
                    .map(|r| (r.r as f64, r.fr.value, r.fr.sigma))
                    .collect(),
            }]
        }
        Experiment::CorrScan => {
            let rows = corr::run(cfg)?;
            vec![PlotSeries {
                name: "max_abs".into(),
                points: rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| (i as f64, r.max_abs, 0.0))
                    .collect(),
            }]
        }
        Experiment::Mixedness => {
            let rows = mixedness::run(cfg)?;
            vec![PlotSeries {
                name: "bloch_norm".into(),
                points: rows
                    .iter()
                    .map(|r| (r.qubit as f64, r.bloch_norm, 0.0))
                    .collect(),
            }]
        }
    })
}
