//! Per-qubit parallel cloning of GHZ states.

use super::builders::{append_bell_prep, append_decryption, append_encryption, append_ghz_prep};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Layout and circuit for cloning each qubit of |GHZ_r> with the n = 2
/// protocol: r disjoint groups of two signal and two noise qubits, one
/// clone decrypted per group, 5r qubits in total.
#[derive(Debug, Clone)]
pub struct Experiment4Plan {
    pub r: usize,
    pub total_qubits: usize,
    /// The GHZ register (group originals).
    pub ghz: Vec<usize>,
    /// Per group: ([s1, s2], [n1, n2]).
    pub groups: Vec<(Vec<usize>, Vec<usize>)>,
    /// The decrypted clone of each group; carries the recovered GHZ state.
    pub decrypted: Vec<usize>,
    /// GHZ preparation, encryption of every qubit, decryption of S_1 per
    /// group.
    pub circuit: Circuit,
}

/// Build the full parallel-cloning pipeline for an r-qubit GHZ state.
pub fn build_experiment4(r: usize) -> Result<Experiment4Plan> {
    if r == 0 {
        return Err(Error::InvalidParameter("need r >= 1 GHZ qubits".into()));
    }
    let n = 2usize;
    let total_qubits = r * (1 + 2 * n);
    let ghz: Vec<usize> = (0..r).collect();
    let mut circuit = Circuit::new(total_qubits);
    append_ghz_prep(&mut circuit, &ghz)?;
    let mut groups = Vec::with_capacity(r);
    let mut alloc = r;
    for &g in &ghz {
        let signals: Vec<usize> = (0..n).map(|k| alloc + k).collect();
        let noises: Vec<usize> = (0..n).map(|k| alloc + n + k).collect();
        alloc += 2 * n;
        for k in 0..n {
            append_bell_prep(&mut circuit, signals[k], noises[k])?;
        }
        append_encryption(&mut circuit, g, &signals)?;
        groups.push((signals, noises));
    }
    let mut decrypted = Vec::with_capacity(r);
    for (signals, noises) in &groups {
        append_decryption(&mut circuit, signals[0], noises[0], &noises[1..])?;
        decrypted.push(signals[0]);
    }
    Ok(Experiment4Plan {
        r,
        total_qubits,
        ghz,
        groups,
        decrypted,
        circuit,
    })
}
