//! Kraus sets for the noise channels.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::{KrausOp, Pauli};

type C64 = Complex64;

/// Uniform-Pauli depolarizing channel on 1 or 2 qubits.
///
/// With probability `p` the state is replaced by the maximally mixed state:
/// rho -> (1-p) rho + p I/2^k, i.e. the error branch applies one of the
/// 4^k Paulis uniformly. p = 0 is the identity channel and p = 1 fully
/// depolarizes.
pub fn depolarizing_kraus(p: f64, arity: usize) -> Result<Vec<KrausOp>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if arity == 0 || arity > 2 {
        return Err(Error::InvalidParameter(format!(
            "depolarizing channel supports arity 1 or 2, got {arity}"
        )));
    }
    let strings: Vec<Vec<Pauli>> = pauli_products(arity);
    let count = strings.len() as f64; // 4^arity
    let mut out = Vec::with_capacity(strings.len());
    for (idx, s) in strings.iter().enumerate() {
        let weight = if idx == 0 {
            (1.0 - p) + p / count
        } else {
            p / count
        };
        if weight == 0.0 {
            continue;
        }
        let mat = pauli_tensor_matrix(s);
        let scaled: Vec<C64> = mat.iter().map(|m| m * weight.sqrt()).collect();
        out.push(KrausOp::new(arity, scaled)?);
    }
    Ok(out)
}

fn pauli_products(arity: usize) -> Vec<Vec<Pauli>> {
    let base = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    match arity {
        1 => base.iter().map(|p| vec![*p]).collect(),
        _ => {
            let mut all = Vec::with_capacity(16);
            for a in base {
                for b in base {
                    all.push(vec![b, a]); // index bit 0 first
                }
            }
            all
        }
    }
}

/// Tensor product matrix with ops[0] on index bit 0.
fn pauli_tensor_matrix(ops: &[Pauli]) -> Vec<C64> {
    let dim = 1usize << ops.len();
    let mut mat = vec![C64::ZERO; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut v = C64::ONE;
            for (q, p) in ops.iter().enumerate() {
                let m = p.matrix();
                let f = m[(r >> q & 1) * 2 + (c >> q & 1)];
                if f == C64::ZERO {
                    v = C64::ZERO;
                    break;
                }
                v *= f;
            }
            mat[r * dim + c] = v;
        }
    }
    mat
}

/// Idle decay over `t` microseconds: amplitude damping with
/// gamma = 1 - exp(-t/T1) composed with pure dephasing at rate
/// 1/T_phi = 1/T2 - 1/(2 T1).
pub fn idle_kraus(t1: f64, t2: f64, t: f64) -> Result<Vec<KrausOp>> {
    check_relaxation(t1, t2)?;
    if t < 0.0 {
        return Err(Error::InvalidParameter(format!("negative duration {t}")));
    }
    let gamma = 1.0 - (-t / t1).exp();
    let phi_rate = (1.0 / t2 - 0.5 / t1).max(0.0);
    // Phase damping parameter: coherence shrinks by exp(-t/T_phi).
    let lambda = 1.0 - (-2.0 * t * phi_rate).exp();
    let zero = C64::ZERO;
    let ad = [
        // K0 = diag(1, sqrt(1-gamma)); K1 = |0><1| sqrt(gamma)
        vec![C64::ONE, zero, zero, C64::new((1.0 - gamma).sqrt(), 0.0)],
        vec![zero, C64::new(gamma.sqrt(), 0.0), zero, zero],
    ];
    let pd = [
        vec![C64::ONE, zero, zero, C64::new((1.0 - lambda).sqrt(), 0.0)],
        vec![zero, zero, zero, C64::new(lambda.sqrt(), 0.0)],
    ];
    let mut out = Vec::new();
    for d in &pd {
        for a in &ad {
            // K = D * A
            let mut m = vec![zero; 4];
            for r in 0..2 {
                for c in 0..2 {
                    for k in 0..2 {
                        m[r * 2 + c] += d[r * 2 + k] * a[k * 2 + c];
                    }
                }
            }
            if m.iter().all(|v| *v == zero) {
                continue;
            }
            out.push(KrausOp::new(1, m)?);
        }
    }
    Ok(out)
}

/// Pauli probabilities [p_I, p_X, p_Y, p_Z] of the twirled idle channel.
///
/// Twirling keeps the diagonal Pauli transfer: X and Y coherences decay as
/// exp(-t/T2) and Z populations relax as exp(-t/T1), which fixes
/// p_X = p_Y = (1 - e^{-t/T1})/4 and p_Z = (1 + e^{-t/T1} - 2 e^{-t/T2})/4.
pub fn idle_pauli_probs(t1: f64, t2: f64, t: f64) -> Result<[f64; 4]> {
    check_relaxation(t1, t2)?;
    if t < 0.0 {
        return Err(Error::InvalidParameter(format!("negative duration {t}")));
    }
    let b = (-t / t1).exp();
    let a = (-t / t2).exp();
    let px = (1.0 - b) / 4.0;
    let pz = ((1.0 + b - 2.0 * a) / 4.0).max(0.0);
    let pi = 1.0 - 2.0 * px - pz;
    Ok([pi, px, px, pz])
}

/// Kraus set of the Pauli-twirled idle channel (for density-path
/// cross-checks against the trajectory backend).
pub fn idle_twirled_kraus(t1: f64, t2: f64, t: f64) -> Result<Vec<KrausOp>> {
    let probs = idle_pauli_probs(t1, t2, t)?;
    let paulis = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut out = Vec::new();
    for (p, w) in paulis.iter().zip(probs.iter()) {
        if *w <= 0.0 {
            continue;
        }
        let mat: Vec<C64> = p.matrix().iter().map(|m| m * w.sqrt()).collect();
        out.push(KrausOp::new(1, mat)?);
    }
    Ok(out)
}

fn check_relaxation(t1: f64, t2: f64) -> Result<()> {
    if t1 <= 0.0 || t2 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "relaxation times must be positive, got T1 = {t1}, T2 = {t2}"
        )));
    }
    if t2 > 2.0 * t1 + 1e-12 {
        return Err(Error::InvalidRelaxation { t1, t2 });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::bell_state;
    use crate::sim::{DensityMatrix, PauliString, StateVector};

    #[test]
    fn zero_probability_is_identity() {
        let kraus = depolarizing_kraus(0.0, 1).unwrap();
        let mut dm = DensityMatrix::new(1).unwrap();
        dm.apply_channel(&kraus, &[0]).unwrap();
        assert!((dm.entries()[0].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_depolarizing_gives_maximally_mixed() {
        let kraus = depolarizing_kraus(1.0, 1).unwrap();
        let mut dm = DensityMatrix::new(1).unwrap();
        dm.apply_channel(&kraus, &[0]).unwrap();
        assert!((dm.entries()[0].re - 0.5).abs() < 1e-12);
        assert!((dm.entries()[3].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn uqcm_marginal_channel_fidelity() {
        // Lambda with eta = (M+2)/(3M), M = 3 gives eta = 5/9; applying it to
        // half a Bell pair leaves entanglement fidelity (1 + 3 eta)/4 = 2/3.
        let eta = 5.0 / 9.0;
        let kraus = depolarizing_kraus(1.0 - eta, 1).unwrap();
        let mut dm = DensityMatrix::from_pure(&bell_state()).unwrap();
        dm.apply_channel(&kraus, &[1]).unwrap();
        let f = dm.fidelity_with_pure(&bell_state()).unwrap();
        assert!((f - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_probability_rejected() {
        assert!(depolarizing_kraus(-0.1, 1).is_err());
        assert!(depolarizing_kraus(1.1, 2).is_err());
    }

    #[test]
    fn idle_zero_duration_is_identity() {
        let kraus = idle_kraus(263.0, 149.0, 0.0).unwrap();
        let mut sv = StateVector::new(1).unwrap();
        sv.apply_matrix1(&crate::circuit::Gate::H.matrix1().unwrap(), 0)
            .unwrap();
        let mut dm = DensityMatrix::from_pure(&sv).unwrap();
        let before = dm.clone();
        dm.apply_channel(&kraus, &[0]).unwrap();
        assert!(before
            .entries()
            .iter()
            .zip(dm.entries())
            .all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn idle_long_time_relaxes_to_ground() {
        let kraus = idle_kraus(263.0, 149.0, 1e9).unwrap();
        let mut dm = DensityMatrix::maximally_mixed(1).unwrap();
        dm.apply_channel(&kraus, &[0]).unwrap();
        assert!((dm.entries()[0].re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn coherence_decays_at_t2_rate() {
        // <X> on |+> shrinks by exp(-t (1/(2 T1) + 1/T_phi)) = exp(-t/T2)
        let (t1, t2, t) = (263.0, 149.0, 3.0);
        let kraus = idle_kraus(t1, t2, t).unwrap();
        let mut sv = StateVector::new(1).unwrap();
        sv.apply_matrix1(&crate::circuit::Gate::H.matrix1().unwrap(), 0)
            .unwrap();
        let mut dm = DensityMatrix::from_pure(&sv).unwrap();
        dm.apply_channel(&kraus, &[0]).unwrap();
        let x = dm.expect_pauli(&PauliString::parse("X").unwrap()).unwrap();
        let expected = (-t / t2).exp();
        assert!((x - expected).abs() < 1e-12, "x = {x}, expected {expected}");
    }

    #[test]
    fn t2_exceeding_2t1_rejected() {
        assert!(matches!(
            idle_kraus(100.0, 201.0, 1.0),
            Err(Error::InvalidRelaxation { .. })
        ));
    }

    #[test]
    fn twirled_probs_match_transfer_eigenvalues() {
        let (t1, t2, t) = (263.0, 149.0, 3.0);
        let [pi, px, py, pz] = idle_pauli_probs(t1, t2, t).unwrap();
        assert!((pi + px + py + pz - 1.0).abs() < 1e-12);
        // lambda_X = 1 - 2(p_Y + p_Z) = e^{-t/T2}
        assert!((1.0 - 2.0 * (py + pz) - (-t / t2).exp()).abs() < 1e-12);
        // lambda_Z = 1 - 2(p_X + p_Y) = e^{-t/T1}
        assert!((1.0 - 2.0 * (px + py) - (-t / t1).exp()).abs() < 1e-12);
    }

    #[test]
    fn twirled_kraus_is_trace_preserving() {
        let kraus = idle_twirled_kraus(263.0, 149.0, 5.0).unwrap();
        crate::sim::validate_kraus(&kraus, 1e-10).unwrap();
    }
}
