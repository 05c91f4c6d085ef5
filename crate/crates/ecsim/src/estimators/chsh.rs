//! CHSH parameter between the ancilla and a clone.
//!
//! S is the four-term combination of correlators between Z/X on the ancilla
//! and (Z +/- X)/sqrt(2) on the clone; it reaches 2 sqrt(2) on a Bell pair
//! and exceeds 2 only for nonclassical correlations.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::CountsTable;

/// Measurement-ordering scenario of the interleaving experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Ancilla measured before decryption.
    TwoOne,
    /// Ancilla and decrypted clone measured together after decryption.
    TwoTwo,
    /// Decrypted clone measured first, ancilla afterwards.
    TwoThree,
    /// Ancilla against a clone that is never decrypted.
    Undecrypted,
}

impl Scenario {
    pub fn label(&self) -> &'static str {
        match self {
            Scenario::TwoOne => "2-1",
            Scenario::TwoTwo => "2-2",
            Scenario::TwoThree => "2-3",
            Scenario::Undecrypted => "undecrypted",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "2-1" => Ok(Scenario::TwoOne),
            "2-2" => Ok(Scenario::TwoTwo),
            "2-3" => Ok(Scenario::TwoThree),
            "undecrypted" => Ok(Scenario::Undecrypted),
            other => Err(Error::InvalidParameter(format!(
                "unknown scenario '{other}'"
            ))),
        }
    }
}

/// CHSH value with its shot-noise standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CHSHEstimate {
    pub s: f64,
    pub sigma: f64,
    pub scenario: Scenario,
}

impl CHSHEstimate {
    /// |S| can exceed 2 sqrt(2) only through sampling noise.
    pub fn within_physical_bound(&self) -> bool {
        self.s.abs() <= 2.0 * std::f64::consts::SQRT_2 + 5.0 * self.sigma + 1e-9
    }
}

/// Ancilla measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AliceBasis {
    Z,
    X,
}

/// Clone measurement basis: (Z + X)/sqrt(2) or (Z - X)/sqrt(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BobBasis {
    Plus,
    Minus,
}

/// The four CHSH settings in the sign order S = E1 + E2 + E3 - E4.
pub fn chsh_settings() -> [(AliceBasis, BobBasis); 4] {
    [
        (AliceBasis::Z, BobBasis::Plus),
        (AliceBasis::Z, BobBasis::Minus),
        (AliceBasis::X, BobBasis::Plus),
        (AliceBasis::X, BobBasis::Minus),
    ]
}

/// Exact S from the four Pauli correlators <Z(x)Z>, <Z(x)X>, <X(x)Z>,
/// <X(x)X> (ancilla factor first): expanding the four signed settings
/// collapses to sqrt(2) (<ZZ> + <XX>).
pub fn chsh_from_pauli_expectations(
    zz: f64,
    zx: f64,
    xz: f64,
    xx: f64,
    scenario: Scenario,
) -> CHSHEstimate {
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let e1 = (zz + zx) * inv;
    let e2 = (zz - zx) * inv;
    let e3 = (xz + xx) * inv;
    let e4 = (xz - xx) * inv;
    CHSHEstimate {
        s: e1 + e2 + e3 - e4,
        sigma: 0.0,
        scenario,
    }
}

/// Rotate (ancilla, clone) so that Z-basis readout measures the setting.
///
/// (Z +/- X)/sqrt(2) is measured through Ry(-/+ pi/4), spelled with the
/// available gates as Sdg, H, Rz, H, S.
pub fn append_chsh_rotation(
    c: &mut Circuit,
    ancilla: usize,
    alice: AliceBasis,
    clone: usize,
    bob: BobBasis,
) -> Result<()> {
    if alice == AliceBasis::X {
        c.h(ancilla)?;
    }
    let angle = match bob {
        BobBasis::Plus => -FRAC_PI_4,
        BobBasis::Minus => FRAC_PI_4,
    };
    c.sdg(clone)?;
    c.h(clone)?;
    c.rz(clone, angle)?;
    c.h(clone)?;
    c.s(clone)
}

/// Sampled S from one counts table per setting, in `chsh_settings` order;
/// each key's bit 0 is the ancilla outcome and bit 1 the clone outcome.
pub fn chsh_sampled(counts: &[CountsTable; 4], scenario: Scenario) -> Result<CHSHEstimate> {
    let mut e = [0.0f64; 4];
    let mut var = 0.0;
    for (i, table) in counts.iter().enumerate() {
        table.validate()?;
        if table.num_bits() != 2 {
            return Err(Error::InvalidParameter(format!(
                "CHSH expects 2-bit outcomes, got {}-bit keys",
                table.num_bits()
            )));
        }
        e[i] = table.parity_expectation(&[0, 1]);
        var += (1.0 - e[i] * e[i]).max(0.0) / table.total_shots as f64;
    }
    Ok(CHSHEstimate {
        s: e[0] + e[1] + e[2] - e[3],
        sigma: var.sqrt(),
        scenario,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::run_statevector_from;
    use crate::protocol::bell_state;

    #[test]
    fn ideal_bell_reaches_tsirelson() {
        let est = chsh_from_pauli_expectations(1.0, 0.0, 0.0, 1.0, Scenario::TwoTwo);
        assert!((est.s - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(est.within_physical_bound());
    }

    #[test]
    fn uncorrelated_state_gives_zero() {
        let est = chsh_from_pauli_expectations(0.0, 0.0, 0.0, 0.0, Scenario::Undecrypted);
        assert_eq!(est.s, 0.0);
    }

    #[test]
    fn depolarized_bell_scales_by_eta() {
        // eta = 5/9 (M = 3): S = eta * 2 sqrt(2) = 1.57135
        let eta = 5.0 / 9.0;
        let est = chsh_from_pauli_expectations(eta, 0.0, 0.0, eta, Scenario::TwoTwo);
        assert!((est.s - 1.57135).abs() < 5e-4);
    }

    #[test]
    fn sampled_bell_agrees_within_four_sigma() {
        let bell = bell_state();
        let shots = 10_000u64;
        let mut tables = Vec::new();
        for (i, (alice, bob)) in chsh_settings().into_iter().enumerate() {
            let mut c = Circuit::new(2);
            append_chsh_rotation(&mut c, 0, alice, 1, bob).unwrap();
            let rotated = run_statevector_from(&c, bell.clone()).unwrap();
            tables.push(rotated.sample(&[0, 1], shots, 100 + i as u64).unwrap());
        }
        let arr: [CountsTable; 4] = tables.try_into().unwrap();
        let est = chsh_sampled(&arr, Scenario::TwoTwo).unwrap();
        let target = 2.0 * std::f64::consts::SQRT_2;
        assert!(
            (est.s - target).abs() <= 4.0 * est.sigma,
            "S = {}, sigma = {}",
            est.s,
            est.sigma
        );
        assert!(est.within_physical_bound());
    }

    #[test]
    fn rotation_measures_intended_observable() {
        // <(Z+X)/sqrt(2)> on |0> is 1/sqrt(2)
        let mut c = Circuit::new(2);
        append_chsh_rotation(&mut c, 0, AliceBasis::Z, 1, BobBasis::Plus).unwrap();
        let sv = run_statevector_from(&c, {
            use crate::sim::StateVector;
            StateVector::new(2).unwrap()
        })
        .unwrap();
        let z1 = crate::sim::PauliString::single(2, 1, crate::sim::Pauli::Z).unwrap();
        assert!((sv.expect_pauli(&z1).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}
