//! Shared circuit assembly for the experiment drivers.

use ecsim::circuit::Circuit;
use ecsim::error::Result;
use ecsim::protocol::{
    append_bell_prep, build_decryption, build_encryption, prep_pairs_circuit, QubitLayout,
};

/// Ancilla Bell pair, signal/noise pair preparation, and encryption.
pub fn encrypted_circuit(n: usize) -> Result<(Circuit, QubitLayout)> {
    let layout = QubitLayout::single(n)?;
    let mut c = Circuit::new(layout.num_qubits());
    append_bell_prep(&mut c, layout.ancilla(), layout.original())?;
    c.append(&prep_pairs_circuit(&layout)?)?;
    c.append(&build_encryption(n, &layout)?)?;
    Ok((c, layout))
}

/// Full experiment-1 pipeline: preparation, encryption, decryption of S_1.
pub fn decrypted_circuit(n: usize) -> Result<(Circuit, QubitLayout)> {
    let (mut c, layout) = encrypted_circuit(n)?;
    c.append(&build_decryption(n, 1, &layout)?)?;
    Ok((c, layout))
}
