//! Mixedness scan: after encryption, every clone and noise
//! qubit should be maximally mixed on its own. Reports the Bloch-vector
//! norm of each single-qubit reduced state (0 for I/2, 1 for a pure state).

use ecsim::circuit::run_statevector;
use ecsim::error::{Error, Result};
use ecsim::noise::execute_density;
use ecsim::sim::{Pauli, PauliString};

use crate::config::{Backend, ExperimentConfig};
use crate::emit::fmt;
use crate::pipeline::encrypted_circuit;

pub const HEADER: &str = "n,qubit,role,bloch_norm";

type ExpectFn<'a> = Box<dyn FnMut(&PauliString) -> Result<f64> + 'a>;

#[derive(Debug, Clone)]
pub struct MixednessRow {
    pub n: usize,
    pub qubit: usize,
    pub role: String,
    pub bloch_norm: f64,
}

pub fn to_csv(row: &MixednessRow) -> String {
    format!(
        "{},{},{},{}",
        row.n,
        row.qubit,
        row.role,
        fmt(row.bloch_norm)
    )
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<MixednessRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for n in cfg.n_values() {
        let (circuit, layout) = encrypted_circuit(n)?;
        let total = layout.num_qubits();
        let mut expect: ExpectFn = match cfg.backend {
            Backend::Density => {
                let rho = execute_density(&circuit, &cfg.effective_noise())?;
                Box::new(move |p| rho.expect_pauli(p))
            }
            _ => {
                if cfg.noise_enabled {
                    return Err(Error::InvalidParameter(
                        "the mixedness scan supports noise only on the density backend".into(),
                    ));
                }
                let sv = run_statevector(&circuit)?;
                Box::new(move |p| sv.expect_pauli(p))
            }
        };
        // every qubit that takes part in the protocol (ancilla excluded:
        // it legitimately stays entangled)
        for q in 0..total {
            let role = layout.role(q)?;
            if role == ecsim::protocol::Role::Ancilla {
                continue;
            }
            let mut norm_sq = 0.0;
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                let v = expect(&PauliString::single(total, q, p)?)?;
                norm_sq += v * v;
            }
            rows.push(MixednessRow {
                n,
                qubit: q,
                role: role.label(),
                bloch_norm: norm_sq.sqrt(),
            });
        }
    }
    Ok(rows)
}
