//! Correlation scan: the two-point correlator matrix
//! T_ij = <sigma_i (ancilla) sigma_j (partner)> for every partner qubit,
//! before and after decryption. Noiselessly every block vanishes after
//! encryption, and decryption concentrates the Bell pattern on the
//! decrypted clone.

use ecsim::circuit::{run_statevector, Circuit};
use ecsim::error::{Error, Result};
use ecsim::noise::execute_density;
use ecsim::protocol::{build_decryption, QubitLayout};
use ecsim::sim::{Pauli, PauliString};

use crate::config::{Backend, ExperimentConfig};
use crate::emit::fmt;
use crate::pipeline::encrypted_circuit;

pub const HEADER: &str = "n,stage,partner,Txx,Txy,Txz,Tyx,Tyy,Tyz,Tzx,Tzy,Tzz,max_abs";

type ExpectFn<'a> = Box<dyn FnMut(&PauliString) -> Result<f64> + 'a>;

#[derive(Debug, Clone)]
pub struct CorrRow {
    pub n: usize,
    pub stage: &'static str,
    pub partner: String,
    /// |T_ij| magnitudes, i (ancilla axis) major.
    pub t_abs: [[f64; 3]; 3],
    pub max_abs: f64,
}

pub fn to_csv(row: &CorrRow) -> String {
    let mut cols = vec![
        row.n.to_string(),
        row.stage.to_string(),
        row.partner.clone(),
    ];
    for i in 0..3 {
        for j in 0..3 {
            cols.push(fmt(row.t_abs[i][j]));
        }
    }
    cols.push(fmt(row.max_abs));
    cols.join(",")
}

fn correlator_block(
    expect: &mut dyn FnMut(&PauliString) -> Result<f64>,
    total: usize,
    ancilla: usize,
    partner: usize,
) -> Result<[[f64; 3]; 3]> {
    let axes = [Pauli::X, Pauli::Y, Pauli::Z];
    let mut t = [[0.0; 3]; 3];
    for (i, pa) in axes.iter().enumerate() {
        for (j, pb) in axes.iter().enumerate() {
            let p = PauliString::two(total, ancilla, *pa, partner, *pb)?;
            t[i][j] = expect(&p)?.abs();
        }
    }
    Ok(t)
}

fn scan_state(
    cfg: &ExperimentConfig,
    circuit: &Circuit,
    layout: &QubitLayout,
    n: usize,
    stage: &'static str,
    rows: &mut Vec<CorrRow>,
) -> Result<()> {
    let total = layout.num_qubits();
    let ancilla = layout.ancilla();
    let mut expect: ExpectFn = match cfg.backend {
        Backend::Density => {
            let rho = execute_density(circuit, &cfg.effective_noise())?;
            Box::new(move |p| rho.expect_pauli(p))
        }
        _ => {
            if cfg.noise_enabled {
                return Err(Error::InvalidParameter(
                    "the correlation scan supports noise only on the density backend".into(),
                ));
            }
            let sv = run_statevector(circuit)?;
            Box::new(move |p| sv.expect_pauli(p))
        }
    };
    let mut partners = vec![(layout.original(), "A".to_string())];
    for i in 1..=n {
        partners.push((layout.signal(i)?, format!("S{i}")));
    }
    for i in 1..=n {
        partners.push((layout.noise(i)?, format!("N{i}")));
    }
    for (q, label) in partners {
        let t_abs = correlator_block(&mut expect, total, ancilla, q)?;
        let max_abs = t_abs.iter().flatten().fold(0.0f64, |acc, v| acc.max(*v));
        rows.push(CorrRow {
            n,
            stage,
            partner: label,
            t_abs,
            max_abs,
        });
    }
    Ok(())
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<CorrRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for n in cfg.n_values() {
        let (encrypted, layout) = encrypted_circuit(n)?;
        scan_state(cfg, &encrypted, &layout, n, "encrypted", &mut rows)?;
        let mut decrypted = encrypted.clone();
        decrypted.append(&build_decryption(n, 1, &layout)?)?;
        scan_state(cfg, &decrypted, &layout, n, "decrypted", &mut rows)?;
    }
    Ok(rows)
}
