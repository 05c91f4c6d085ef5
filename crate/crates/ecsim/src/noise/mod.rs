//! Hardware-noise proxy: two-qubit depolarizing errors plus T1/T2 idle
//! decay, with density-matrix and Pauli-trajectory execution paths.
//!
//! The model inserts a depolarizing channel after every two-qubit gate and
//! an amplitude-damping + dephasing channel on every qubit for the time it
//! idles within each scheduled layer. On the trajectory path the idle
//! channel is replaced by its Pauli twirl so that Clifford circuits stay
//! Clifford; the twirl is cross-checked against the density path at small
//! scale.

mod execute;
mod kraus;

pub use execute::{
    execute_density, execute_trajectories_expect, execute_trajectories_sample,
    execute_trajectories_stat, NoiseParams, TrajectoryStats,
};
pub use kraus::{depolarizing_kraus, idle_kraus, idle_pauli_probs, idle_twirled_kraus};
