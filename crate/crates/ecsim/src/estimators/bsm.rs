//! Bell-state-measurement fidelity.

use super::{FidelityEstimate, Method};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::CountsTable;

/// Append the disentangling BSM circuit: CNOT from the ancilla onto its
/// partner, H on the ancilla, then Z-basis readout of both. The all-zeros
/// frequency estimates the Bell fidelity.
pub fn append_bsm(c: &mut Circuit, ancilla: usize, partner: usize) -> Result<()> {
    c.cnot(ancilla, partner)?;
    c.h(ancilla)?;
    c.measure(ancilla)?;
    c.measure(partner)
}

/// F = N_00 / N_shots with sigma = sqrt(F(1-F)/N).
pub fn bsm_fidelity(counts: &CountsTable) -> Result<FidelityEstimate> {
    counts.validate()?;
    if counts.num_bits() != 2 {
        return Err(Error::InvalidParameter(format!(
            "BSM expects 2-bit outcomes, got {}-bit keys",
            counts.num_bits()
        )));
    }
    let n = counts.total_shots as f64;
    let value = counts.count("00") as f64 / n;
    let sigma = (value * (1.0 - value) / n).sqrt();
    Ok(FidelityEstimate {
        value,
        sigma,
        method: Method::Bsm,
    })
}

/// Bell fidelity from the three two-point correlators:
/// <phi| rho |phi> = (1 + <XX> - <YY> + <ZZ>)/4.
pub fn bell_fidelity_from_correlators(xx: f64, yy: f64, zz: f64) -> f64 {
    0.25 * (1.0 + xx - yy + zz)
}
