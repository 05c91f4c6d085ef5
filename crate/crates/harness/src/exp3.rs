//! Experiment 3: iterated cloning.
//!
//! Fidelity of the tracked final clone after l iterations, alongside the
//! clone-count bookkeeping: (n+1)^(l+1) clones from n(l+1) key qubits per
//! decryption path. Full-strategy plans double the register per iteration
//! and quickly become tableau-only; the single-branch variant keeps the
//! register linear in l and tracks the same virtual clone count.

use ecsim::circuit::{layer_metrics, run_statevector, run_tableau};
use ecsim::error::{Error, Result};
use ecsim::estimators::{bell_fidelity_from_correlators, FidelityEstimate, Method};
use ecsim::noise::execute_trajectories_stat;
use ecsim::protocol::{plan_iterated, IterationPlan, Strategy};
use ecsim::sim::{derive_seed, Pauli, PauliString, Tableau, DEFAULT_MAX_QUBITS};

use crate::config::{Backend, ExperimentConfig};
use crate::emit::fmt;

pub const HEADER: &str = "l,strategy,N_qubits,clones,virtual_clones,L2q,N2q,Fe,sigma";

#[derive(Debug, Clone)]
pub struct Exp3Row {
    pub l: usize,
    pub strategy: Strategy,
    pub n_qubits: usize,
    pub clones: usize,
    pub virtual_clones: usize,
    pub l2q: usize,
    pub n2q: usize,
    pub fe: FidelityEstimate,
}

pub fn to_csv(row: &Exp3Row) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        row.l,
        row.strategy.label(),
        row.n_qubits,
        row.clones,
        row.virtual_clones,
        row.l2q,
        row.n2q,
        fmt(row.fe.value),
        fmt(row.fe.sigma),
    )
}

fn bell_correlators(plan: &IterationPlan) -> Result<[PauliString; 3]> {
    let total = plan.total_qubits;
    Ok([
        PauliString::two(total, plan.ancilla, Pauli::X, plan.decrypted, Pauli::X)?,
        PauliString::two(total, plan.ancilla, Pauli::Y, plan.decrypted, Pauli::Y)?,
        PauliString::two(total, plan.ancilla, Pauli::Z, plan.decrypted, Pauli::Z)?,
    ])
}

fn tableau_fe(tab: &Tableau, strings: &[PauliString; 3]) -> Result<f64> {
    Ok(bell_fidelity_from_correlators(
        tab.expect_pauli(&strings[0])?,
        tab.expect_pauli(&strings[1])?,
        tab.expect_pauli(&strings[2])?,
    ))
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<Exp3Row>> {
    cfg.validate()?;
    let n = cfg.n_min;
    let mut rows = Vec::new();
    for (s_idx, &strategy) in cfg.strategies.iter().enumerate() {
        let l_values: Vec<usize> = match strategy {
            // a hybrid plan already encodes its final partial generation
            Strategy::Hybrid { .. } => vec![cfg.l_max],
            _ => (0..=cfg.l_max).collect(),
        };
        for l in l_values {
            let plan = plan_iterated(n, l, strategy)?;
            let circuit = plan.full_circuit()?;
            let metrics = layer_metrics(&circuit, cfg.durations());
            let strings = bell_correlators(&plan)?;
            let stream = ((s_idx as u64) << 8) | (l as u64);
            let fe = match cfg.backend {
                Backend::Statevector => {
                    if cfg.noise_enabled {
                        return Err(Error::InvalidParameter(
                            "noise requires the density or tableau-trajectory backend".into(),
                        ));
                    }
                    if !plan.fits(DEFAULT_MAX_QUBITS) {
                        return Err(Error::CapacityExceeded {
                            requested: plan.total_qubits,
                            limit: DEFAULT_MAX_QUBITS,
                        });
                    }
                    let sv = run_statevector(&circuit)?;
                    FidelityEstimate {
                        value: bell_fidelity_from_correlators(
                            sv.expect_pauli(&strings[0])?,
                            sv.expect_pauli(&strings[1])?,
                            sv.expect_pauli(&strings[2])?,
                        ),
                        sigma: 0.0,
                        method: Method::Exact,
                    }
                }
                Backend::Density => {
                    return Err(Error::InvalidParameter(
                        "iterated plans exceed the density backend; use tableau-trajectory".into(),
                    ))
                }
                Backend::TableauTrajectory => {
                    if cfg.noise_enabled {
                        let stats = execute_trajectories_stat(
                            &circuit,
                            &cfg.effective_noise(),
                            derive_seed(cfg.seed, stream),
                            |tab| tableau_fe(tab, &strings),
                        )?;
                        FidelityEstimate {
                            value: stats.mean,
                            sigma: stats.std_error,
                            method: Method::Exact,
                        }
                    } else {
                        let tab = run_tableau(&circuit)?;
                        FidelityEstimate {
                            value: tableau_fe(&tab, &strings)?,
                            sigma: 0.0,
                            method: Method::Exact,
                        }
                    }
                }
            };
            rows.push(Exp3Row {
                l,
                strategy,
                n_qubits: plan.total_qubits,
                clones: plan.clone_count,
                virtual_clones: plan.virtual_clones,
                l2q: metrics.two_qubit_layers,
                n2q: metrics.two_qubit_gates,
                fe,
            });
        }
    }
    Ok(rows)
}
