//! Experiment 2: CHSH under three measurement orderings.
//!
//! The scenarios share one pipeline and differ only in when the ancilla is
//! measured relative to decryption — before (2-1), together with the
//! decrypted clone (2-2), or after it (2-3) — plus the null test against a
//! clone that is never decrypted. Noiselessly the timing is irrelevant and
//! S = 2 sqrt(2) (S = 0 undecrypted); with idle noise on, scenario 2-1
//! pays for the extra idling of every clone and key qubit during the
//! ancilla readout window.

use ecsim::circuit::{run_statevector, run_tableau, Circuit};
use ecsim::error::{Error, Result};
use ecsim::estimators::{
    chsh_from_pauli_expectations, chsh_sampled, chsh_settings, AliceBasis, BobBasis, CHSHEstimate,
    Scenario,
};
use ecsim::noise::{execute_density, execute_trajectories_stat};
use ecsim::protocol::{build_decryption, QubitLayout};
use ecsim::sim::{derive_seed, CountsTable, Pauli, PauliString};

use crate::config::{Backend, ExperimentConfig};
use crate::emit::fmt;
use crate::pipeline::encrypted_circuit;

pub const HEADER: &str = "n,scenario,S,sigma";

#[derive(Debug, Clone)]
pub struct Exp2Row {
    pub n: usize,
    pub estimate: CHSHEstimate,
}

pub fn to_csv(row: &Exp2Row) -> String {
    format!(
        "{},{},{},{}",
        row.n,
        row.estimate.scenario.label(),
        fmt(row.estimate.s),
        fmt(row.estimate.sigma),
    )
}

/// Scenario circuit; optional per-setting rotations for the sampled path.
/// Returns the circuit and the clone measured against the ancilla.
pub fn scenario_circuit(
    n: usize,
    scenario: Scenario,
    rotation: Option<(AliceBasis, BobBasis)>,
) -> Result<(Circuit, QubitLayout, usize)> {
    if scenario == Scenario::Undecrypted && n < 2 {
        return Err(Error::InvalidParameter(
            "the undecrypted-clone test needs n >= 2".into(),
        ));
    }
    let (mut c, layout) = encrypted_circuit(n)?;
    let ancilla = layout.ancilla();
    let s1 = layout.signal(1)?;
    let rotate_ancilla = |c: &mut Circuit| -> Result<()> {
        if let Some((alice, _)) = rotation {
            if alice == AliceBasis::X {
                c.h(ancilla)?;
            }
        }
        Ok(())
    };
    let rotate_partner = |c: &mut Circuit, q: usize| -> Result<()> {
        if let Some((_, bob)) = rotation {
            // clone-side rotation of append_chsh_rotation without the
            // ancilla part
            let angle = match bob {
                BobBasis::Plus => -std::f64::consts::FRAC_PI_4,
                BobBasis::Minus => std::f64::consts::FRAC_PI_4,
            };
            c.sdg(q)?;
            c.h(q)?;
            c.rz(q, angle)?;
            c.h(q)?;
            c.s(q)?;
        }
        Ok(())
    };
    let partner = match scenario {
        Scenario::Undecrypted => {
            let s2 = layout.signal(2)?;
            rotate_ancilla(&mut c)?;
            rotate_partner(&mut c, s2)?;
            c.measure(ancilla)?;
            c.measure(s2)?;
            s2
        }
        Scenario::TwoOne => {
            rotate_ancilla(&mut c)?;
            c.measure(ancilla)?;
            c.append(&build_decryption(n, 1, &layout)?)?;
            rotate_partner(&mut c, s1)?;
            c.measure(s1)?;
            s1
        }
        Scenario::TwoTwo => {
            c.append(&build_decryption(n, 1, &layout)?)?;
            rotate_ancilla(&mut c)?;
            rotate_partner(&mut c, s1)?;
            c.measure(ancilla)?;
            c.measure(s1)?;
            s1
        }
        Scenario::TwoThree => {
            c.append(&build_decryption(n, 1, &layout)?)?;
            rotate_partner(&mut c, s1)?;
            c.measure(s1)?;
            rotate_ancilla(&mut c)?;
            c.measure(ancilla)?;
            s1
        }
    };
    Ok((c, layout, partner))
}

/// The four Pauli correlators (ZZ, ZX, XZ, XX; ancilla factor first)
/// needed by the exact estimate.
fn correlator_strings(total: usize, ancilla: usize, partner: usize) -> Result<[PauliString; 4]> {
    Ok([
        PauliString::two(total, ancilla, Pauli::Z, partner, Pauli::Z)?,
        PauliString::two(total, ancilla, Pauli::Z, partner, Pauli::X)?,
        PauliString::two(total, ancilla, Pauli::X, partner, Pauli::Z)?,
        PauliString::two(total, ancilla, Pauli::X, partner, Pauli::X)?,
    ])
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<Exp2Row>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for (n_idx, n) in cfg.n_values().into_iter().enumerate() {
        for (s_idx, &scenario) in cfg.scenarios.iter().enumerate() {
            let stream = ((n_idx as u64) << 8) | ((s_idx as u64) << 4);
            let estimate = match cfg.backend {
                Backend::Statevector => {
                    if cfg.noise_enabled {
                        return Err(Error::InvalidParameter(
                            "noise requires the density or tableau-trajectory backend".into(),
                        ));
                    }
                    sampled_estimate(n, scenario, cfg, stream)?
                }
                Backend::Density => density_estimate(n, scenario, cfg)?,
                Backend::TableauTrajectory => tableau_estimate(n, scenario, cfg, stream)?,
            };
            rows.push(Exp2Row { n, estimate });
        }
    }
    Ok(rows)
}

/// Exact S on the statevector engine (timing has no noiseless effect).
pub fn exact_statevector_estimate(n: usize, scenario: Scenario) -> Result<CHSHEstimate> {
    let (c, layout, partner) = scenario_circuit(n, scenario, None)?;
    let sv = run_statevector(&c)?;
    let [zz, zx, xz, xx] = correlator_strings(c.num_qubits(), layout.ancilla(), partner)?;
    Ok(chsh_from_pauli_expectations(
        sv.expect_pauli(&zz)?,
        sv.expect_pauli(&zx)?,
        sv.expect_pauli(&xz)?,
        sv.expect_pauli(&xx)?,
        scenario,
    ))
}

fn sampled_estimate(
    n: usize,
    scenario: Scenario,
    cfg: &ExperimentConfig,
    stream: u64,
) -> Result<CHSHEstimate> {
    let mut tables: Vec<CountsTable> = Vec::with_capacity(4);
    for (i, (alice, bob)) in chsh_settings().into_iter().enumerate() {
        let (c, layout, partner) = scenario_circuit(n, scenario, Some((alice, bob)))?;
        let sv = run_statevector(&c)?;
        let counts = sv.sample(
            &[layout.ancilla(), partner],
            cfg.shots,
            derive_seed(cfg.seed, stream + i as u64),
        )?;
        tables.push(counts);
    }
    let arr: [CountsTable; 4] = tables.try_into().expect("four settings");
    chsh_sampled(&arr, scenario)
}

fn density_estimate(n: usize, scenario: Scenario, cfg: &ExperimentConfig) -> Result<CHSHEstimate> {
    let (c, layout, partner) = scenario_circuit(n, scenario, None)?;
    let rho = execute_density(&c, &cfg.effective_noise())?;
    let [zz, zx, xz, xx] = correlator_strings(c.num_qubits(), layout.ancilla(), partner)?;
    Ok(chsh_from_pauli_expectations(
        rho.expect_pauli(&zz)?,
        rho.expect_pauli(&zx)?,
        rho.expect_pauli(&xz)?,
        rho.expect_pauli(&xx)?,
        scenario,
    ))
}

fn tableau_estimate(
    n: usize,
    scenario: Scenario,
    cfg: &ExperimentConfig,
    stream: u64,
) -> Result<CHSHEstimate> {
    let (c, layout, partner) = scenario_circuit(n, scenario, None)?;
    let strings = correlator_strings(c.num_qubits(), layout.ancilla(), partner)?;
    if !cfg.noise_enabled {
        let tab = run_tableau(&c)?;
        return Ok(chsh_from_pauli_expectations(
            tab.expect_pauli(&strings[0])?,
            tab.expect_pauli(&strings[1])?,
            tab.expect_pauli(&strings[2])?,
            tab.expect_pauli(&strings[3])?,
            scenario,
        ));
    }
    let stats = execute_trajectories_stat(
        &c,
        &cfg.effective_noise(),
        derive_seed(cfg.seed, stream),
        |tab| {
            Ok(chsh_from_pauli_expectations(
                tab.expect_pauli(&strings[0])?,
                tab.expect_pauli(&strings[1])?,
                tab.expect_pauli(&strings[2])?,
                tab.expect_pauli(&strings[3])?,
                scenario,
            )
            .s)
        },
    )?;
    Ok(CHSHEstimate {
        s: stats.mean,
        sigma: stats.std_error,
        scenario,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Experiment;

    #[test]
    fn noiseless_exact_values() {
        for n in [2usize, 3] {
            for scenario in [Scenario::TwoOne, Scenario::TwoTwo, Scenario::TwoThree] {
                let est = exact_statevector_estimate(n, scenario).unwrap();
                assert!(
                    (est.s - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9,
                    "n = {n} {scenario:?}: S = {}",
                    est.s
                );
            }
            let est = exact_statevector_estimate(n, Scenario::Undecrypted).unwrap();
            assert!(est.s.abs() < 1e-12, "undecrypted n = {n}: S = {}", est.s);
        }
    }

    #[test]
    fn sampled_sweep_within_four_sigma() {
        let mut cfg = ExperimentConfig::default_for(Experiment::Exp2);
        cfg.n_min = 2;
        cfg.n_max = 2;
        cfg.shots = 4000;
        let rows = run(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            let target = match row.estimate.scenario {
                Scenario::Undecrypted => 0.0,
                _ => 2.0 * std::f64::consts::SQRT_2,
            };
            assert!(
                (row.estimate.s - target).abs() <= 4.0 * row.estimate.sigma,
                "{:?}: S = {} +- {}",
                row.estimate.scenario,
                row.estimate.s,
                row.estimate.sigma
            );
        }
    }

    #[test]
    fn idle_noise_penalizes_scenario_2_1() {
        let mut cfg = ExperimentConfig::default_for(Experiment::Exp2);
        cfg.backend = Backend::Density;
        cfg.noise_enabled = true;
        cfg.noise.p2q = 0.0;
        cfg.n_min = 2;
        cfg.n_max = 2;
        cfg.scenarios = vec![Scenario::TwoOne, Scenario::TwoTwo, Scenario::TwoThree];
        let rows = run(&cfg).unwrap();
        let s: Vec<f64> = rows.iter().map(|r| r.estimate.s).collect();
        assert!(s[0] < s[1] && s[0] < s[2], "S = {s:?}");
    }
}
