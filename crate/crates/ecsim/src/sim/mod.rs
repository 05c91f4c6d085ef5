//! Exact simulation engines.
//!
//! Three state representations with a common qubit convention (qubit 0 is the
//! least significant bit of an amplitude index):
//!
//! - [`StateVector`] — dense pure-state simulation, default capacity 26 qubits.
//! - [`DensityMatrix`] — mixed states with Kraus-channel support, practical up
//!   to 13 qubits.
//! - [`Tableau`] — binary symplectic stabilizer representation for Clifford
//!   circuits, up to 1024 qubits, with exact Pauli expectations and exact
//!   Born-rule sampling.

mod counts;
mod density;
mod pauli;
mod statevector;
mod tableau;

pub use counts::CountsTable;
pub use density::{identity_kraus, validate_kraus, DensityMatrix, KrausOp, DENSITY_MAX_QUBITS};
pub use pauli::{Pauli, PauliString};
pub use statevector::{haar_random_qubit, StateVector, DEFAULT_MAX_QUBITS};
pub use tableau::{Tableau, TABLEAU_MAX_QUBITS};

use num_complex::Complex64;

pub(crate) type C64 = Complex64;

/// Derive an independent stream seed from a master seed and a stream index.
///
/// SplitMix64 finalizer; consecutive indices give uncorrelated ChaCha seeds.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
