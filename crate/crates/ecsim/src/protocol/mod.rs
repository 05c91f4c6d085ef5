//! Protocol circuit builders.
//!
//! The protocol turns a qubit A into `n` encrypted clones: prepare each
//! signal/noise pair (S_i, N_i) in a Bell state, entangle A with all signal
//! qubits through the two Pauli-string exponentials of the encryption
//! unitary, and later decrypt a chosen clone S_j by a unitary acting on S_j
//! and every noise qubit. All generated circuits are Clifford, so they run
//! on both the statevector and tableau engines.

mod builders;
mod experiment4;
mod layout;
mod planner;

pub use builders::{
    append_bell_prep, append_decryption, append_encryption, append_ghz_prep, bell_prep,
    build_decryption, build_encryption, ghz_prep, prep_pairs_circuit,
};
pub use experiment4::{build_experiment4, Experiment4Plan};
pub use layout::{QubitLayout, Role};
pub use planner::{plan_iterated, DecryptStep, IterationPlan, Strategy};

use num_complex::Complex64;

use crate::error::Result;
use crate::sim::StateVector;

/// |GHZ_r> = (|0...0> + |1...1>)/sqrt(2) built directly from amplitudes;
/// r = 1 is |+> and r = 2 the Bell state.
pub fn ghz_state(r: usize) -> Result<StateVector> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![Complex64::ZERO; 1 << r];
    amps[0] = h;
    amps[(1 << r) - 1] = h;
    StateVector::from_amplitudes(amps)
}

/// The two-qubit Bell state (|00> + |11>)/sqrt(2).
pub fn bell_state() -> StateVector {
    ghz_state(2).expect("two qubits")
}
