//! Bridges from circuits to the simulation engines.

use super::gate::rz_quarter_turns;
use super::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::sim::{StateVector, Tableau, DEFAULT_MAX_QUBITS};

/// Run a circuit on |0...0> in the statevector engine.
///
/// MEASURE is deferred (sampling happens on the final state) and IDLE is a
/// noiseless identity.
pub fn run_statevector(c: &Circuit) -> Result<StateVector> {
    run_statevector_with_limit(c, DEFAULT_MAX_QUBITS)
}

pub fn run_statevector_with_limit(c: &Circuit, max_qubits: usize) -> Result<StateVector> {
    let sv = StateVector::with_limit(c.num_qubits(), max_qubits)?;
    run_statevector_from(c, sv)
}

/// Run a circuit on an existing state (for prepared inputs).
pub fn run_statevector_from(c: &Circuit, mut sv: StateVector) -> Result<StateVector> {
    if sv.num_qubits() != c.num_qubits() {
        return Err(Error::DimensionMismatch {
            left: sv.num_qubits(),
            right: c.num_qubits(),
        });
    }
    for op in c.ops() {
        match &op.gate {
            Gate::Cnot => sv.apply_cnot(op.targets[0], op.targets[1])?,
            Gate::Cz => sv.apply_cz(op.targets[0], op.targets[1])?,
            Gate::Idle(_) | Gate::Measure => {}
            g => {
                let m = g.matrix1().expect("single-qubit unitary");
                sv.apply_matrix1(&m, op.targets[0])?;
            }
        }
    }
    Ok(sv)
}

/// Run a Clifford circuit on |0...0> in the tableau engine.
///
/// Rz angles that are multiples of pi/2 are folded into S powers; any other
/// gate parameterization is rejected with a diagnostic naming the gate.
pub fn run_tableau(c: &Circuit) -> Result<Tableau> {
    let mut tab = Tableau::new(c.num_qubits())?;
    apply_to_tableau(c, &mut tab)?;
    Ok(tab)
}

pub(crate) fn apply_to_tableau(c: &Circuit, tab: &mut Tableau) -> Result<()> {
    for op in c.ops() {
        apply_gate_to_tableau(&op.gate, &op.targets, tab)?;
    }
    Ok(())
}

/// Apply one gate to a tableau (markers are no-ops); used by the noise
/// trajectories, which interleave gates with Pauli insertions.
pub fn apply_gate_to_tableau(gate: &Gate, targets: &[usize], tab: &mut Tableau) -> Result<()> {
    match gate {
        Gate::H => tab.apply_h(targets[0]),
        Gate::X => tab.apply_x(targets[0]),
        Gate::Z => tab.apply_z(targets[0]),
        Gate::S => tab.apply_s(targets[0]),
        Gate::Sdg => tab.apply_sdg(targets[0]),
        Gate::Sx => tab.apply_sx(targets[0]),
        Gate::Cnot => tab.apply_cnot(targets[0], targets[1]),
        Gate::Cz => tab.apply_cz(targets[0], targets[1]),
        Gate::Idle(_) | Gate::Measure => Ok(()),
        Gate::Rz(theta) => match rz_quarter_turns(*theta) {
            Some(0) => Ok(()),
            Some(1) => tab.apply_s(targets[0]),
            Some(2) => tab.apply_z(targets[0]),
            Some(3) => tab.apply_sdg(targets[0]),
            _ => Err(Error::NonClifford(gate.describe())),
        },
    }
}

/// True when every gate is Clifford (markers included).
pub fn is_clifford_circuit(c: &Circuit) -> bool {
    c.ops().iter().all(|op| op.gate.is_clifford())
}

/// Dense unitary of a measurement-free circuit, column by column.
///
/// Limited to 12 qubits; bit k of the matrix index is qubit k.
pub fn circuit_unitary(c: &Circuit) -> Result<DenseMatrix> {
    if c.num_qubits() > 12 {
        return Err(Error::CapacityExceeded {
            requested: c.num_qubits(),
            limit: 12,
        });
    }
    if c.ops().iter().any(|op| op.gate == Gate::Measure) {
        return Err(Error::InvalidParameter(
            "circuit with MEASURE has no unitary".into(),
        ));
    }
    let dim = 1usize << c.num_qubits();
    let mut u = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let basis = StateVector::basis(c.num_qubits(), col)?;
        let out = run_statevector_from(c, basis)?;
        for (row, amp) in out.amplitudes().iter().enumerate() {
            u.set(row, col, *amp);
        }
    }
    Ok(u)
}
