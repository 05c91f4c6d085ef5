//! Simulation toolkit for encrypted quantum cloning.
//!
//! Encrypted cloning turns one qubit into `n` encrypted clones: each clone is
//! individually maximally mixed, yet any single clone can be restored to the
//! original state by a decryption unitary that consumes `n` "noise" qubits
//! prepared as Bell partners of the clones. This crate provides everything
//! needed to run the protocol end to end on a classical machine:
//!
//! - [`sim`] — exact simulation engines: dense statevector, density matrix
//!   with Kraus channels, and a stabilizer tableau for Clifford-only circuits
//!   at a few hundred qubits.
//! - [`circuit`] — gate/circuit representation, lowering to the
//!   `{rz, sx, x, cz}` native set, and two-qubit layer/depth metrics.
//! - [`protocol`] — circuit builders for Bell/GHZ preparation, encryption,
//!   decryption, and the iterated-cloning planner.
//! - [`noise`] — two-qubit depolarizing plus T1/T2 idle decay, with
//!   density-matrix and Pauli-trajectory execution paths.
//! - [`estimators`] — Bell-state-measurement and parity-oscillation fidelity
//!   estimators, the CHSH parameter, and witness/noise-floor classification.
//! - [`oracles`] — independent dense-matrix constructions of the protocol
//!   unitaries straight from their defining equations, plus closed-form
//!   universal-cloning-machine reference values.
//!
//! Convention used throughout: qubit index 0 maps to the least significant
//! bit of an amplitude index, and bitstring keys list measured qubits in the
//! order they were requested.

pub mod circuit;
pub mod error;
pub mod estimators;
pub mod linalg;
pub mod noise;
pub mod oracles;
pub mod protocol;
pub mod sim;

pub use error::{Error, Result};
