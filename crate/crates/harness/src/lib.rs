//! Experiment drivers for the encrypted-cloning toolkit.
//!
//! Each driver reproduces a desk-scale analogue of one hardware experiment:
//!
//! 1. entanglement fidelity of a decrypted clone versus the clone count n,
//!    estimated by both BSM and POM;
//! 2. CHSH between the ancilla and a decrypted clone under three
//!    measurement orderings, plus the undecrypted-clone null test;
//! 3. iterated cloning with clone counts (n+1)^(l+1);
//! 4. per-qubit parallel cloning of GHZ states.
//!
//! Plus two diagnostic scans: the two-point correlation matrix of the
//! ancilla against every other qubit, and the mixedness of encrypted clones.
//!
//! Outputs are deterministic: identical config and seed give byte-identical
//! CSV files.

pub mod config;
pub mod corr;
pub mod emit;
pub mod exp1;
pub mod exp2;
pub mod exp3;
pub mod exp4;
pub mod mixedness;
pub mod pipeline;
pub mod verify;

pub use config::{Backend, Experiment, ExperimentConfig};

use ecsim::error::Result;

/// Run the configured experiment and return its CSV lines (header first).
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<String>> {
    match cfg.experiment {
        Experiment::Exp1 => Ok(emit::csv_lines(
            exp1::HEADER,
            &exp1::run(cfg)?.iter().map(exp1::to_csv).collect::<Vec<_>>(),
        )),
        Experiment::Exp2 => Ok(emit::csv_lines(
            exp2::HEADER,
            &exp2::run(cfg)?.iter().map(exp2::to_csv).collect::<Vec<_>>(),
        )),
        Experiment::Exp3 => Ok(emit::csv_lines(
            exp3::HEADER,
            &exp3::run(cfg)?.iter().map(exp3::to_csv).collect::<Vec<_>>(),
        )),
        Experiment::Exp4 => Ok(emit::csv_lines(
            exp4::HEADER,
            &exp4::run(cfg)?.iter().map(exp4::to_csv).collect::<Vec<_>>(),
        )),
        Experiment::CorrScan => Ok(emit::csv_lines(
            corr::HEADER,
            &corr::run(cfg)?.iter().map(corr::to_csv).collect::<Vec<_>>(),
        )),
        Experiment::Mixedness => Ok(emit::csv_lines(
            mixedness::HEADER,
            &mixedness::run(cfg)?
                .iter()
                .map(mixedness::to_csv)
                .collect::<Vec<_>>(),
        )),
    }
}
