//! Experiment 1: entanglement fidelity of a decrypted clone versus n.
//!
//! For each n the pipeline entangles A with the ancilla, clones A into n
//! encrypted clones, decrypts S_1, and estimates the fidelity of
//! (ancilla, S_1) with the Bell state by both BSM and POM. Sampled
//! estimates carry shot-noise sigmas; the density and noiseless-tableau
//! paths report exact values with sigma 0.

use ecsim::circuit::{layer_metrics, run_statevector, run_statevector_from, run_tableau, Circuit};
use ecsim::error::{Error, Result};
use ecsim::estimators::{
    append_bsm, append_pom_rotation, bsm_fidelity, pom_fidelity, pom_fidelity_exact, pom_settings,
    FidelityEstimate, Method, PomData, SettingEstimate,
};
use ecsim::noise::{execute_density, execute_trajectories_stat};
use ecsim::protocol::QubitLayout;
use ecsim::sim::{derive_seed, DensityMatrix, Pauli, PauliString, StateVector};

use crate::config::{Backend, ExperimentConfig};
use crate::emit::fmt;
use crate::pipeline::decrypted_circuit;

pub const HEADER: &str = "n,N_qubits,L2q_bsm,Fe_bsm,sigma_bsm,L2q_pom,Fe_pom,sigma_pom";

#[derive(Debug, Clone)]
pub struct Exp1Row {
    pub n: usize,
    pub n_qubits: usize,
    pub l2q_bsm: usize,
    pub n2q_bsm: usize,
    pub fe_bsm: FidelityEstimate,
    pub l2q_pom: usize,
    pub n2q_pom: usize,
    pub fe_pom: FidelityEstimate,
}

pub fn to_csv(row: &Exp1Row) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        row.n,
        row.n_qubits,
        row.l2q_bsm,
        fmt(row.fe_bsm.value),
        fmt(row.fe_bsm.sigma),
        row.l2q_pom,
        fmt(row.fe_pom.value),
        fmt(row.fe_pom.sigma),
    )
}

/// BSM measurement circuit: pipeline plus disentangling readout.
pub fn bsm_circuit(n: usize) -> Result<(Circuit, QubitLayout)> {
    let (mut c, layout) = decrypted_circuit(n)?;
    append_bsm(&mut c, layout.ancilla(), layout.signal(1)?)?;
    Ok((c, layout))
}

/// POM measurement circuit for one setting (used for depth metrics; all
/// settings share the same layer structure).
fn pom_circuit(n: usize) -> Result<(Circuit, QubitLayout)> {
    let (mut c, layout) = decrypted_circuit(n)?;
    let qubits = [layout.ancilla(), layout.signal(1)?];
    let setting = pom_settings(2)?[0];
    append_pom_rotation(&mut c, &qubits, setting)?;
    c.measure(qubits[0])?;
    c.measure(qubits[1])?;
    Ok((c, layout))
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<Exp1Row>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for (idx, n) in cfg.n_values().into_iter().enumerate() {
        let stream = (idx as u64) << 8;
        let (bsm_c, layout) = bsm_circuit(n)?;
        let (pom_c, _) = pom_circuit(n)?;
        let (base, _) = decrypted_circuit(n)?;
        let m_bsm = layer_metrics(&bsm_c, cfg.durations());
        let m_pom = layer_metrics(&pom_c, cfg.durations());
        let pair = [layout.ancilla(), layout.signal(1)?];

        let (fe_bsm, fe_pom) = match cfg.backend {
            Backend::Statevector => {
                if cfg.noise_enabled {
                    return Err(Error::InvalidParameter(
                        "noise requires the density or tableau-trajectory backend".into(),
                    ));
                }
                statevector_estimates(&base, &bsm_c, &pair, cfg, stream)?
            }
            Backend::Density => density_estimates(&base, &bsm_c, &pair, cfg)?,
            Backend::TableauTrajectory => tableau_estimates(&base, &bsm_c, &pair, cfg, stream)?,
        };

        rows.push(Exp1Row {
            n,
            n_qubits: layout.num_qubits(),
            l2q_bsm: m_bsm.two_qubit_layers,
            n2q_bsm: m_bsm.two_qubit_gates,
            fe_bsm,
            l2q_pom: m_pom.two_qubit_layers,
            n2q_pom: m_pom.two_qubit_gates,
            fe_pom,
        });
    }
    Ok(rows)
}

fn statevector_estimates(
    base: &Circuit,
    bsm_c: &Circuit,
    pair: &[usize; 2],
    cfg: &ExperimentConfig,
    stream: u64,
) -> Result<(FidelityEstimate, FidelityEstimate)> {
    let sv = run_statevector(base)?;
    let disentangled = run_statevector(bsm_c)?;
    let counts = disentangled.sample(pair, cfg.shots, derive_seed(cfg.seed, stream))?;
    let fe_bsm = bsm_fidelity(&counts)?;
    let fe_pom = sampled_pom(&sv, pair, cfg, stream)?;
    Ok((fe_bsm, fe_pom))
}

/// Sampled POM on a statevector: Z-basis counts plus the two equatorial
/// settings, each with its own derived seed.
fn sampled_pom(
    sv: &StateVector,
    pair: &[usize; 2],
    cfg: &ExperimentConfig,
    stream: u64,
) -> Result<FidelityEstimate> {
    let z_counts = sv.sample(pair, cfg.shots, derive_seed(cfg.seed, stream + 1))?;
    let mut e_k = Vec::new();
    for setting in pom_settings(2)? {
        let mut rot = Circuit::new(sv.num_qubits());
        append_pom_rotation(&mut rot, pair, setting)?;
        let rotated = run_statevector_from(&rot, sv.clone())?;
        let counts = rotated.sample(
            pair,
            cfg.shots,
            derive_seed(cfg.seed, stream + 1 + setting.k as u64),
        )?;
        e_k.push(SettingEstimate {
            value: counts.parity_expectation(&[0, 1]),
            shots: cfg.shots,
        });
    }
    pom_fidelity(&PomData {
        z_counts,
        e_k,
        r: 2,
    })
}

fn density_estimates(
    base: &Circuit,
    bsm_c: &Circuit,
    pair: &[usize; 2],
    cfg: &ExperimentConfig,
) -> Result<(FidelityEstimate, FidelityEstimate)> {
    let params = cfg.effective_noise();
    let rho_bsm = execute_density(bsm_c, &params)?;
    let fe_bsm = FidelityEstimate {
        value: bsm_probability_00(&rho_bsm, pair)?,
        sigma: 0.0,
        method: Method::Bsm,
    };
    let rho = execute_density(base, &params)?;
    let mut fe_pom = pom_fidelity_exact(|p| rho.expect_pauli(p), pair, rho.num_qubits(), 2)?;
    fe_pom.method = Method::Pom;
    Ok((fe_bsm, fe_pom))
}

fn tableau_estimates(
    base: &Circuit,
    bsm_c: &Circuit,
    pair: &[usize; 2],
    cfg: &ExperimentConfig,
    stream: u64,
) -> Result<(FidelityEstimate, FidelityEstimate)> {
    if !cfg.noise_enabled {
        let tab_bsm = run_tableau(bsm_c)?;
        let fe_bsm = FidelityEstimate {
            value: tableau_p00(&tab_bsm, pair)?,
            sigma: 0.0,
            method: Method::Bsm,
        };
        let tab = run_tableau(base)?;
        let mut fe_pom = pom_fidelity_exact(|p| tab.expect_pauli(p), pair, base.num_qubits(), 2)?;
        fe_pom.method = Method::Pom;
        return Ok((fe_bsm, fe_pom));
    }
    let params = cfg.effective_noise();
    let pair = *pair;
    let total = base.num_qubits();
    let bsm_stat =
        execute_trajectories_stat(bsm_c, &params, derive_seed(cfg.seed, stream), |tab| {
            tableau_p00(tab, &pair)
        })?;
    let pom_stat =
        execute_trajectories_stat(base, &params, derive_seed(cfg.seed, stream + 1), |tab| {
            Ok(pom_fidelity_exact(|p| tab.expect_pauli(p), &pair, total, 2)?.value)
        })?;
    Ok((
        FidelityEstimate {
            value: bsm_stat.mean,
            sigma: bsm_stat.std_error,
            method: Method::Bsm,
        },
        FidelityEstimate {
            value: pom_stat.mean,
            sigma: pom_stat.std_error,
            method: Method::Pom,
        },
    ))
}

/// Probability of reading 00 after the disentangling circuit,
/// from Z expectations: p00 = (1 + <Z_a> + <Z_b> + <Z_a Z_b>)/4.
fn bsm_probability_00(rho: &DensityMatrix, pair: &[usize; 2]) -> Result<f64> {
    let n = rho.num_qubits();
    let za = rho.expect_pauli(&PauliString::single(n, pair[0], Pauli::Z)?)?;
    let zb = rho.expect_pauli(&PauliString::single(n, pair[1], Pauli::Z)?)?;
    let zz = rho.expect_pauli(&PauliString::two(n, pair[0], Pauli::Z, pair[1], Pauli::Z)?)?;
    Ok(0.25 * (1.0 + za + zb + zz))
}

fn tableau_p00(tab: &ecsim::sim::Tableau, pair: &[usize; 2]) -> Result<f64> {
    let n = tab.num_qubits();
    let za = tab.expect_pauli(&PauliString::single(n, pair[0], Pauli::Z)?)?;
    let zb = tab.expect_pauli(&PauliString::single(n, pair[1], Pauli::Z)?)?;
    let zz = tab.expect_pauli(&PauliString::two(n, pair[0], Pauli::Z, pair[1], Pauli::Z)?)?;
    Ok(0.25 * (1.0 + za + zb + zz))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Experiment;

    #[test]
    fn noiseless_sweep_is_exact() {
        let mut cfg = ExperimentConfig::default_for(Experiment::Exp1);
        cfg.n_max = 4;
        cfg.shots = 2000;
        let rows = run(&cfg).unwrap();
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert_eq!(row.n_qubits, 2 * row.n + 2);
            assert!((row.fe_bsm.value - 1.0).abs() < 1e-9, "n = {}", row.n);
            assert!((row.fe_pom.value - 1.0).abs() <= 3.0 * row.fe_pom.sigma + 1e-9);
        }
    }

    #[test]
    fn depth_grows_with_n() {
        let cfg = {
            let mut c = ExperimentConfig::default_for(Experiment::Exp1);
            c.n_max = 5;
            c.shots = 100;
            c
        };
        let rows = run(&cfg).unwrap();
        for pair in rows.windows(2) {
            assert!(pair[1].l2q_bsm > pair[0].l2q_bsm);
            assert!(pair[1].n2q_bsm > pair[0].n2q_bsm);
        }
    }

    #[test]
    fn csv_row_shape() {
        let mut cfg = ExperimentConfig::default_for(Experiment::Exp1);
        cfg.n_max = 2;
        cfg.shots = 100;
        let rows = run(&cfg).unwrap();
        let line = to_csv(&rows[0]);
        assert_eq!(line.split(',').count(), HEADER.split(',').count());
        assert!(line.starts_with("2,6,"));
    }
}
