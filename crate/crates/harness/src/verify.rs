//! Self-check suite behind the `verify` subcommand: oracle equivalences,
//! exact protocol invariants, counting laws, and closed-form references.

use ecsim::circuit::{circuit_unitary, lower_to_native, run_statevector, Circuit};
use ecsim::error::Result;
use ecsim::estimators::Scenario;
use ecsim::noise::{execute_density, NoiseParams};
use ecsim::oracles::{dense_u_dec, dense_u_enc, dense_v, uqcm_reference};
use ecsim::protocol::{append_decryption, append_encryption, bell_state, plan_iterated, Strategy};

use crate::exp2::exact_statevector_estimate;
use crate::pipeline::decrypted_circuit;

type Check = (&'static str, fn() -> std::result::Result<(), String>);

fn err_to_string<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn check_encryption_oracle() -> std::result::Result<(), String> {
    for n in 1..=4usize {
        let dense = err_to_string(dense_u_enc(n))?;
        let mut c = Circuit::new(n + 1);
        let signals: Vec<usize> = (1..=n).collect();
        err_to_string(append_encryption(&mut c, 0, &signals))?;
        let u = err_to_string(circuit_unitary(&c))?;
        let d = err_to_string(dense.phase_distance(&u))?;
        if d > 1e-9 {
            return Err(format!("encryption n = {n}: phase distance {d:.3e}"));
        }
    }
    Ok(())
}

fn check_decryption_oracle() -> std::result::Result<(), String> {
    for n in 2..=3usize {
        for j in 1..=n {
            let dense = err_to_string(dense_u_dec(n, j))?;
            let mut c = Circuit::new(n + 1);
            let others: Vec<usize> = (1..=n).filter(|&i| i != j).collect();
            err_to_string(append_decryption(&mut c, 0, j, &others))?;
            let u = err_to_string(circuit_unitary(&c))?;
            let d = err_to_string(dense.phase_distance(&u))?;
            if d > 1e-9 {
                return Err(format!(
                    "decryption n = {n}, j = {j}: phase distance {d:.3e}"
                ));
            }
        }
    }
    Ok(())
}

fn check_v_action() -> std::result::Result<(), String> {
    let v = dense_v();
    if v.unitarity_deviation() > 1e-12 {
        return Err("V is not unitary".into());
    }
    for mu in 0..4usize {
        let mu1 = mu >> 1;
        let target = ((mu1 ^ (mu & 1)) << 1) | mu1;
        let out = err_to_string(v.matvec(&ecsim::oracles::bell_phi_mu(mu)))?;
        if (out[target].norm() - 1.0).abs() > 1e-12 {
            return Err(format!("V|phi_{mu}> does not reach basis state {target}"));
        }
    }
    Ok(())
}

fn check_recovery() -> std::result::Result<(), String> {
    for n in 2..=4usize {
        let (c, layout) = err_to_string(decrypted_circuit(n))?;
        let sv = err_to_string(run_statevector(&c))?;
        let rho = err_to_string(sv.reduced(&[layout.ancilla(), layout.signal(1).unwrap()]))?;
        let f = err_to_string(rho.fidelity_with_pure(&bell_state()))?;
        if (f - 1.0).abs() > 1e-9 {
            return Err(format!("recovery n = {n}: F_e = {f}"));
        }
    }
    Ok(())
}

fn check_mixedness() -> std::result::Result<(), String> {
    let mut cfg =
        crate::config::ExperimentConfig::default_for(crate::config::Experiment::Mixedness);
    cfg.n_min = 2;
    cfg.n_max = 2;
    let rows = err_to_string(crate::mixedness::run(&cfg))?;
    for row in rows {
        if row.bloch_norm > 1e-10 {
            return Err(format!("{} has Bloch norm {}", row.role, row.bloch_norm));
        }
    }
    Ok(())
}

fn check_counting_laws() -> std::result::Result<(), String> {
    for (l, qubits, clones) in [(0usize, 6usize, 3usize), (1, 18, 9), (2, 54, 27)] {
        let plan = err_to_string(plan_iterated(2, l, Strategy::Full))?;
        if plan.total_qubits != qubits || plan.clone_count != clones {
            return Err(format!(
                "full l = {l}: {} qubits / {} clones",
                plan.total_qubits, plan.clone_count
            ));
        }
    }
    let plan = err_to_string(plan_iterated(2, 5, Strategy::SingleBranch))?;
    if plan.total_qubits != 26 || plan.virtual_clones != 729 {
        return Err("single-branch l = 5 should use 26 qubits for 729 virtual clones".into());
    }
    let plan = err_to_string(plan_iterated(2, 2, Strategy::Hybrid { recloned: 25 }))?;
    if plan.total_qubits != 154 || plan.clone_count != 77 {
        return Err("hybrid-25 should fill 154 qubits with 77 clones".into());
    }
    Ok(())
}

fn check_lowering() -> std::result::Result<(), String> {
    let (c, _) = err_to_string(decrypted_circuit(2))?;
    let lowered = err_to_string(lower_to_native(&c))?;
    if !ecsim::circuit::is_native(&lowered) {
        return Err("lowered circuit contains non-native gates".into());
    }
    let a = err_to_string(circuit_unitary(&c))?;
    let b = err_to_string(circuit_unitary(&lowered))?;
    let d = err_to_string(a.phase_distance(&b))?;
    if d > 1e-9 {
        return Err(format!("lowering phase distance {d:.3e}"));
    }
    Ok(())
}

fn check_uqcm() -> std::result::Result<(), String> {
    let expected = [
        (3usize, 0.667, 1.57135),
        (5, 0.6, 1.31993),
        (7, 0.571, 1.21218),
    ];
    for (m, fe, s) in expected {
        let r = err_to_string(uqcm_reference(m))?;
        if (r.entanglement_fidelity - fe).abs() > 5e-4 || (r.chsh - s).abs() > 5e-4 {
            return Err(format!(
                "UQCM M = {m}: F_e = {}, S = {}",
                r.entanglement_fidelity, r.chsh
            ));
        }
    }
    Ok(())
}

fn check_chsh_exact() -> std::result::Result<(), String> {
    let est = err_to_string(exact_statevector_estimate(2, Scenario::TwoTwo))?;
    if (est.s - 2.0 * std::f64::consts::SQRT_2).abs() > 1e-9 {
        return Err(format!("S = {}", est.s));
    }
    let est = err_to_string(exact_statevector_estimate(2, Scenario::Undecrypted))?;
    if est.s.abs() > 1e-9 {
        return Err(format!("undecrypted S = {}", est.s));
    }
    Ok(())
}

fn check_noise_floor() -> std::result::Result<(), String> {
    let (c, layout) = err_to_string(decrypted_circuit(2))?;
    let params = NoiseParams {
        p2q: 1.0,
        t1_us: f64::INFINITY,
        t2_us: f64::INFINITY,
        ..NoiseParams::default()
    };
    let rho = err_to_string(execute_density(&c, &params))?;
    let pair = [layout.ancilla(), layout.signal(1).unwrap()];
    let reduced = err_to_string(rho.reduced(&pair))?;
    let f = err_to_string(reduced.fidelity_with_pure(&bell_state()))?;
    if (f - 0.25).abs() > 0.01 {
        return Err(format!("floor fidelity {f}"));
    }
    Ok(())
}

/// All named checks with their outcomes.
pub fn run_all() -> Vec<(&'static str, std::result::Result<(), String>)> {
    let checks: Vec<Check> = vec![
        ("encryption-oracle-equivalence", check_encryption_oracle),
        ("decryption-oracle-equivalence", check_decryption_oracle),
        ("bell-basis-change", check_v_action),
        ("end-to-end-recovery", check_recovery),
        ("encrypted-mixedness", check_mixedness),
        ("counting-laws", check_counting_laws),
        ("native-lowering", check_lowering),
        ("uqcm-closed-forms", check_uqcm),
        ("chsh-exact", check_chsh_exact),
        ("depolarizing-floor", check_noise_floor),
    ];
    checks.into_iter().map(|(name, f)| (name, f())).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        for (name, outcome) in super::run_all() {
            assert!(outcome.is_ok(), "{name}: {:?}", outcome.err());
        }
    }
}
