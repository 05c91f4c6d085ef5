//! Independent dense-matrix constructions of the protocol operators.
//!
//! Every circuit decomposition in [`crate::protocol`] is checked against the
//! operators built here, which come straight from their defining equations:
//!
//! - the encryption unitary is the product of two Pauli-string exponentials
//!   `exp(-i pi/4 X...X) * exp(-i pi/4 Z...Z)` over the original qubit and
//!   all signal qubits;
//! - the decryption unitary is the Bell-basis-controlled Pauli sum
//!   `sum_mu alpha_mu |phi_mu><phi_mu| (x) prod sigma_mu^T` with
//!   `alpha = (1, i, -i^{n+1}, i)`;
//! - `V = (H(x)H) CZ (I(x)H)` maps the Bell basis to computational states.
//!
//! The module also carries the closed-form reference values of the universal
//! quantum cloning machine, whose single-clone marginal is a depolarizing
//! channel with `eta = (M+2)/(3M)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::sim::{Pauli, PauliString};

type C64 = Complex64;

/// 2x2 dense matrix of a single Pauli.
pub fn pauli_matrix(p: Pauli) -> DenseMatrix {
    DenseMatrix::from_rows(2, p.matrix().to_vec()).expect("2x2")
}

/// Dense matrix of a Pauli string on its own register
/// (bit k of the index is qubit k).
pub fn pauli_string_matrix(p: &PauliString) -> DenseMatrix {
    let n = p.num_qubits();
    let mut m = DenseMatrix::identity(1 << n);
    for (q, op) in p.ops.iter().enumerate() {
        if *op == Pauli::I {
            continue;
        }
        let embedded = DenseMatrix::embed(&pauli_matrix(*op), &[q], n).expect("in range");
        m = m.mul(&embedded).expect("same dim");
    }
    m.scale(p.coefficient)
}

/// exp(-i pi/4 P) = (I - i P) / sqrt(2) for a Pauli string P with P^2 = I.
pub fn exp_i_pi4_pauli(p: &PauliString) -> DenseMatrix {
    let m = pauli_string_matrix(p);
    let dim = m.dim();
    let scale = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    DenseMatrix::identity(dim)
        .add(&m.scale(-C64::I))
        .expect("same dim")
        .scale(scale)
}

/// Dense encryption unitary on the register [A, S_1, ..., S_n]
/// (qubit 0 = A).
///
/// Built as the X-string exponential times the Z-string exponential, in
/// that operator order (the Z factor acts first).
pub fn dense_u_enc(n: usize) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1 clones".into()));
    }
    if n + 1 > 12 {
        return Err(Error::CapacityExceeded {
            requested: n + 1,
            limit: 12,
        });
    }
    let zz = PauliString::new(vec![Pauli::Z; n + 1]);
    let xx = PauliString::new(vec![Pauli::X; n + 1]);
    exp_i_pi4_pauli(&xx).mul(&exp_i_pi4_pauli(&zz))
}

/// The decryption coefficients `alpha = (1, i, -i^{n+1}, i)`.
pub fn decryption_alphas(n: usize) -> [C64; 4] {
    [C64::ONE, C64::I, -C64::I.powu(n as u32 + 1), C64::I]
}

/// The Bell state (|00> + |11>)/sqrt(2) as a 4-vector
/// (bit 0 of the index = first qubit).
pub fn bell_phi() -> [C64; 4] {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [h, C64::ZERO, C64::ZERO, h]
}

/// |phi_mu> = (sigma_mu (x) I)|phi>, with sigma_mu acting on the first
/// qubit (index bit 0).
pub fn bell_phi_mu(mu: usize) -> [C64; 4] {
    let phi = bell_phi();
    let sigma = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][mu].matrix();
    let mut out = [C64::ZERO; 4];
    for idx in 0..4 {
        let s_bit = idx & 1;
        for s_in in 0..2 {
            let m = sigma[s_bit * 2 + s_in];
            if m != C64::ZERO {
                out[idx] += m * phi[(idx & 2) | s_in];
            }
        }
    }
    out
}

fn projector(v: &[C64; 4]) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(4);
    for r in 0..4 {
        for c in 0..4 {
            m.set(r, c, v[r] * v[c].conj());
        }
    }
    m
}

/// Dense decryption unitary on the register [S_j, N_1, ..., N_n]
/// (qubit 0 = the chosen clone, qubit i = noise qubit N_i).
///
/// `sum_mu alpha_mu |phi_mu><phi_mu|_(S_j, N_j) (x) prod_{i != j}
/// sigma_mu^T (N_i)`, with the transpose taken in the computational basis
/// (so Y transposes to -Y).
pub fn dense_u_dec(n: usize, j: usize) -> Result<DenseMatrix> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::InvalidParameter(format!(
            "chosen clone j = {j} outside 1..={n}"
        )));
    }
    if n + 1 > 12 {
        return Err(Error::CapacityExceeded {
            requested: n + 1,
            limit: 12,
        });
    }
    let total = n + 1;
    let alphas = decryption_alphas(n);
    let mut u = DenseMatrix::zeros(1 << total);
    for mu in 0..4 {
        let proj = projector(&bell_phi_mu(mu));
        let mut term = DenseMatrix::embed(&proj, &[0, j], total)?;
        let sigma_t = pauli_matrix([Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][mu]).transpose();
        for i in 1..=n {
            if i == j {
                continue;
            }
            term = term.mul(&DenseMatrix::embed(&sigma_t, &[i], total)?)?;
        }
        u = u.add(&term.scale(alphas[mu]))?;
    }
    Ok(u)
}

/// The Bell-basis change V = (H (x) H) CZ (I (x) H) on [S, N]
/// (qubit 0 = S).
pub fn dense_v() -> DenseMatrix {
    let h = DenseMatrix::embed(
        &DenseMatrix::from_rows(
            2,
            vec![
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ],
        )
        .unwrap(),
        &[0],
        2,
    )
    .unwrap();
    let h_n = DenseMatrix::embed(
        &DenseMatrix::from_rows(
            2,
            vec![
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ],
        )
        .unwrap(),
        &[1],
        2,
    )
    .unwrap();
    let mut cz = DenseMatrix::identity(4);
    cz.set(3, 3, -C64::ONE);
    h.mul(&h_n).unwrap().mul(&cz).unwrap().mul(&h_n).unwrap()
}

/// Closed-form reference values of the 1 -> M universal cloning machine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UqcmReference {
    /// Depolarizing parameter of the single-clone marginal.
    pub eta: f64,
    /// Entanglement fidelity (1 + 3 eta)/4 = (M + 1)/(2M).
    pub entanglement_fidelity: f64,
    /// CHSH parameter eta * 2 sqrt(2).
    pub chsh: f64,
}

/// eta = (M+2)/(3M), F_e = (M+1)/(2M), S = eta * 2 sqrt(2).
pub fn uqcm_reference(m: usize) -> Result<UqcmReference> {
    if m < 2 {
        return Err(Error::InvalidParameter(
            "cloning machine needs M >= 2".into(),
        ));
    }
    let m = m as f64;
    let eta = (m + 2.0) / (3.0 * m);
    Ok(UqcmReference {
        eta,
        entanglement_fidelity: (m + 1.0) / (2.0 * m),
        chsh: eta * 2.0 * std::f64::consts::SQRT_2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_enc_is_unitary() {
        for n in 1..=4 {
            let u = dense_u_enc(n).unwrap();
            assert!(u.unitarity_deviation() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn exponential_factors_are_eighth_roots_of_identity() {
        // ((I - iP)/sqrt(2))^8 = phase * I for any Pauli string P.
        for n in 1..=3 {
            let zz = crate::sim::PauliString::new(vec![crate::sim::Pauli::Z; n + 1]);
            let e = exp_i_pi4_pauli(&zz);
            let mut acc = DenseMatrix::identity(e.dim());
            for _ in 0..8 {
                acc = acc.mul(&e).unwrap();
            }
            assert!(acc.phase_distance(&DenseMatrix::identity(e.dim())).unwrap() < 1e-10);
        }
    }

    #[test]
    fn u_enc_finite_order_up_to_phase() {
        // Odd n: the X and Z strings commute, so U^4 = (-I)(-I) = I.
        // Even n: they anticommute, making U a 2pi/3 rotation in the algebra
        // they span, so U^3 is a phase.
        for (n, power) in [(1usize, 4usize), (3, 4), (2, 3), (4, 3)] {
            let u = dense_u_enc(n).unwrap();
            let mut acc = DenseMatrix::identity(u.dim());
            for _ in 0..power {
                acc = acc.mul(&u).unwrap();
            }
            let d = acc.phase_distance(&DenseMatrix::identity(u.dim())).unwrap();
            assert!(d < 1e-10, "n = {n}, U^{power} phase distance {d}");
        }
    }

    #[test]
    fn alpha_two_for_two_clones_is_plus_i() {
        let a = decryption_alphas(2);
        assert!((a[2] - C64::I).norm() < 1e-15);
        // and for n = 3: -i^4 = -1
        let a3 = decryption_alphas(3);
        assert!((a3[2] + C64::ONE).norm() < 1e-15);
    }

    #[test]
    fn u_dec_is_unitary() {
        for n in 1..=3 {
            for j in 1..=n {
                let u = dense_u_dec(n, j).unwrap();
                assert!(u.unitarity_deviation() < 1e-10, "n = {n}, j = {j}");
            }
        }
    }

    #[test]
    fn v_maps_bell_basis_to_computational_basis() {
        let v = dense_v();
        assert!(v.unitarity_deviation() < 1e-12);
        // mu = (mu1 mu2) binary; V|phi_mu> = |mu1>|mu1 xor mu2> up to phase
        for mu in 0..4usize {
            let mu1 = mu >> 1;
            let mu2 = mu & 1;
            let s_bit = mu1;
            let n_bit = mu1 ^ mu2;
            let target = (n_bit << 1) | s_bit;
            let out = v.matvec(&bell_phi_mu(mu)).unwrap();
            assert!(
                (out[target].norm() - 1.0).abs() < 1e-12,
                "mu = {mu}, out = {out:?}"
            );
        }
    }

    #[test]
    fn uqcm_reference_values() {
        let r3 = uqcm_reference(3).unwrap();
        assert!((r3.entanglement_fidelity - 2.0 / 3.0).abs() < 1e-12);
        assert!((r3.chsh - 1.57135).abs() < 5e-4);
        let r5 = uqcm_reference(5).unwrap();
        assert!((r5.entanglement_fidelity - 0.6).abs() < 1e-12);
        assert!((r5.chsh - 1.31993).abs() < 5e-4);
        let r7 = uqcm_reference(7).unwrap();
        assert!((r7.entanglement_fidelity - 4.0 / 7.0).abs() < 1e-12);
        assert!((r7.chsh - 1.21218).abs() < 5e-4);
    }

    #[test]
    fn uqcm_limits_and_chsh_bound() {
        let big = uqcm_reference(1_000_000).unwrap();
        assert!((big.eta - 1.0 / 3.0).abs() < 1e-5);
        assert!((big.entanglement_fidelity - 0.5).abs() < 1e-5);
        assert!((big.chsh - 2.0 * std::f64::consts::SQRT_2 / 3.0).abs() < 1e-5);
        for m in 2..200 {
            assert!(uqcm_reference(m).unwrap().chsh < 2.0, "M = {m}");
        }
    }
}
