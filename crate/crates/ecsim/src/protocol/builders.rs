//! Bell/GHZ preparation, encryption, and decryption circuits.

use std::f64::consts::FRAC_PI_2;

use super::layout::QubitLayout;
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Prepare (|00> + |11>)/sqrt(2) on qubits (a, b) of a fresh circuit.
pub fn bell_prep(a: usize, b: usize) -> Result<Circuit> {
    let mut c = Circuit::new(a.max(b) + 1);
    append_bell_prep(&mut c, a, b)?;
    Ok(c)
}

pub fn append_bell_prep(c: &mut Circuit, a: usize, b: usize) -> Result<()> {
    if a == b {
        return Err(Error::DuplicateTargets);
    }
    c.h(a)?;
    c.cnot(a, b)
}

/// Prepare |GHZ_r> on the given qubits of a fresh circuit.
pub fn ghz_prep(qubits: &[usize]) -> Result<Circuit> {
    let width = qubits.iter().max().ok_or(Error::EmptySubset)? + 1;
    let mut c = Circuit::new(width);
    append_ghz_prep(&mut c, qubits)?;
    Ok(c)
}

pub fn append_ghz_prep(c: &mut Circuit, qubits: &[usize]) -> Result<()> {
    if qubits.is_empty() {
        return Err(Error::EmptySubset);
    }
    c.h(qubits[0])?;
    for pair in qubits.windows(2) {
        c.cnot(pair[0], pair[1])?;
    }
    Ok(())
}

/// Bell-prepare every signal/noise pair of a single-application layout.
pub fn prep_pairs_circuit(layout: &QubitLayout) -> Result<Circuit> {
    let mut c = Circuit::new(layout.num_qubits());
    for i in 1..=layout.clones() {
        append_bell_prep(&mut c, layout.signal(i)?, layout.noise(i)?)?;
    }
    Ok(c)
}

/// The Z...Z exponential exp(-i pi/4 Z^(x)(n+1)) over `qs` as a CNOT ladder.
///
/// Two parity chains converge from both ends of the register onto a central
/// qubit, which takes Rz(pi/2), and the chains are then undone. For odd n
/// the far end of the lower chain picks up the extra qubit, which is where
/// the two additional CNOTs of the odd-n decomposition come from.
fn append_zz_exponential(c: &mut Circuit, qs: &[usize]) -> Result<()> {
    let n = qs.len() - 1; // clones; qs[0] is the original
    let m = n / 2;
    let center = m + 1;
    let mut ladder: Vec<(usize, usize)> = Vec::new();
    for k in 0..=m {
        ladder.push((qs[k], qs[k + 1]));
    }
    for k in ((m + 2)..=n).rev() {
        ladder.push((qs[k], qs[k - 1]));
    }
    for &(a, b) in &ladder {
        c.cnot(a, b)?;
    }
    c.rz(qs[center], FRAC_PI_2)?;
    for &(a, b) in ladder.iter().rev() {
        c.cnot(a, b)?;
    }
    Ok(())
}

/// Append the encryption unitary acting on `original` and `signals`.
///
/// The Z-string exponential runs first, then the X-string exponential as its
/// Hadamard conjugate; the result is entirely Clifford.
pub fn append_encryption(c: &mut Circuit, original: usize, signals: &[usize]) -> Result<()> {
    if signals.is_empty() {
        return Err(Error::InvalidParameter("need n >= 1 clones".into()));
    }
    let mut qs = Vec::with_capacity(signals.len() + 1);
    qs.push(original);
    qs.extend_from_slice(signals);
    append_zz_exponential(c, &qs)?;
    for &q in &qs {
        c.h(q)?;
    }
    append_zz_exponential(c, &qs)?;
    for &q in &qs {
        c.h(q)?;
    }
    Ok(())
}

/// Encryption circuit over a single-application layout.
pub fn build_encryption(n: usize, layout: &QubitLayout) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1 clones".into()));
    }
    let signals: Vec<usize> = (1..=n).map(|i| layout.signal(i)).collect::<Result<_>>()?;
    let mut c = Circuit::new(layout.num_qubits());
    append_encryption(&mut c, layout.original(), &signals)?;
    Ok(c)
}

/// The Bell-basis change V = (H(x)H) CZ (I(x)H) on (s, n_pair).
fn append_v(c: &mut Circuit, s: usize, n_pair: usize) -> Result<()> {
    c.h(n_pair)?;
    c.cz(s, n_pair)?;
    c.h(s)?;
    c.h(n_pair)
}

fn append_v_dagger(c: &mut Circuit, s: usize, n_pair: usize) -> Result<()> {
    c.h(s)?;
    c.h(n_pair)?;
    c.cz(s, n_pair)?;
    c.h(n_pair)
}

/// Append the decryption of the clone on `s_j`, whose Bell partner at
/// preparation was `n_j`, consuming the remaining noise qubits
/// `other_noise` (in ascending noise-index order).
///
/// The core between V and V† pairs a CZ from the clone and a CNOT from N_j
/// onto each remaining noise qubit; the first of them takes the CNOT before
/// the CZ, the rest after, and a lone pair (n = 1) takes a bare CZ. The
/// ordering is fixed by matching the dense decryption operator.
pub fn append_decryption(
    c: &mut Circuit,
    s_j: usize,
    n_j: usize,
    other_noise: &[usize],
) -> Result<()> {
    append_v(c, s_j, n_j)?;
    for (pos, &q) in other_noise.iter().enumerate().rev() {
        if pos == 0 {
            c.cnot(n_j, q)?;
            c.cz(s_j, q)?;
        } else {
            c.cz(s_j, q)?;
            c.cnot(n_j, q)?;
        }
    }
    c.s(s_j)?;
    c.s(n_j)?;
    if other_noise.is_empty() {
        c.cz(s_j, n_j)?;
    }
    append_v_dagger(c, s_j, n_j)
}

/// Decryption circuit of clone `j` over a single-application layout.
pub fn build_decryption(n: usize, j: usize, layout: &QubitLayout) -> Result<Circuit> {
    if j == 0 || j > n {
        return Err(Error::InvalidParameter(format!(
            "chosen clone j = {j} outside 1..={n}"
        )));
    }
    let mut c = Circuit::new(layout.num_qubits());
    let s_j = layout.signal(j)?;
    let n_j = layout.noise(j)?;
    let others: Vec<usize> = (1..=n)
        .filter(|&i| i != j)
        .map(|i| layout.noise(i))
        .collect::<Result<_>>()?;
    append_decryption(&mut c, s_j, n_j, &others)?;
    Ok(c)
}
