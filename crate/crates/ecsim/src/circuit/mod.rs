//! Gate and circuit representation.
//!
//! Circuits are ordered gate sequences over an indexed register. `MEASURE`
//! and `IDLE` are first-class ops so that measurement ordering and idle
//! windows (the only timing effects the noise model cares about) are part of
//! the circuit itself.

mod execute;
mod gate;
mod lower;
mod metrics;
mod text;

pub use execute::{
    apply_gate_to_tableau, circuit_unitary, is_clifford_circuit, run_statevector,
    run_statevector_from, run_statevector_with_limit, run_tableau,
};
pub use gate::Gate;
pub use lower::{is_native, lower_to_native};
pub use metrics::{layer_metrics, layers, total_duration, GateDurations, LayerMetrics};

use crate::error::{Error, Result};

/// One gate application.
#[derive(Debug, Clone, PartialEq)]
pub struct Op {
    pub gate: Gate,
    pub targets: Vec<usize>,
}

/// An ordered gate sequence over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<Op>,
    measured: Vec<bool>,
    measure_order: Vec<usize>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            ops: Vec::new(),
            measured: vec![false; num_qubits],
            measure_order: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Qubits carrying a MEASURE, in program order.
    pub fn measured_qubits(&self) -> &[usize] {
        &self.measure_order
    }

    /// Append a gate; validates target count, range, distinctness, and that
    /// no qubit is used after its measurement.
    pub fn push(&mut self, gate: Gate, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return Err(Error::ArityMismatch {
                gate: gate.name(),
                expected: gate.arity(),
                got: targets.len(),
            });
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.num_qubits {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    num_qubits: self.num_qubits,
                });
            }
            if targets[..i].contains(&t) {
                return Err(Error::DuplicateTargets);
            }
            if self.measured[t] {
                return Err(Error::GateAfterMeasure(t));
            }
        }
        if gate == Gate::Measure {
            self.measured[targets[0]] = true;
            self.measure_order.push(targets[0]);
        }
        self.ops.push(Op {
            gate,
            targets: targets.to_vec(),
        });
        Ok(())
    }

    /// Append all ops of `other` (same register width required).
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        for op in &other.ops {
            self.push(op.gate.clone(), &op.targets)?;
        }
        Ok(())
    }

    pub fn h(&mut self, q: usize) -> Result<()> {
        self.push(Gate::H, &[q])
    }
    pub fn x(&mut self, q: usize) -> Result<()> {
        self.push(Gate::X, &[q])
    }
    pub fn z(&mut self, q: usize) -> Result<()> {
        self.push(Gate::Z, &[q])
    }
    pub fn s(&mut self, q: usize) -> Result<()> {
        self.push(Gate::S, &[q])
    }
    pub fn sdg(&mut self, q: usize) -> Result<()> {
        self.push(Gate::Sdg, &[q])
    }
    pub fn sx(&mut self, q: usize) -> Result<()> {
        self.push(Gate::Sx, &[q])
    }
    pub fn rz(&mut self, q: usize, theta: f64) -> Result<()> {
        self.push(Gate::Rz(theta), &[q])
    }
    pub fn cnot(&mut self, ctrl: usize, tgt: usize) -> Result<()> {
        self.push(Gate::Cnot, &[ctrl, tgt])
    }
    pub fn cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.push(Gate::Cz, &[a, b])
    }
    pub fn idle(&mut self, q: usize, duration_us: f64) -> Result<()> {
        self.push(Gate::Idle(duration_us), &[q])
    }
    pub fn measure(&mut self, q: usize) -> Result<()> {
        self.push(Gate::Measure, &[q])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_validates_targets() {
        let mut c = Circuit::new(2);
        assert!(matches!(
            c.push(Gate::H, &[2]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            c.push(Gate::Cnot, &[0]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            c.push(Gate::Cnot, &[1, 1]),
            Err(Error::DuplicateTargets)
        ));
    }

    #[test]
    fn no_gates_after_measurement() {
        let mut c = Circuit::new(2);
        c.measure(0).unwrap();
        c.h(1).unwrap();
        assert!(matches!(c.h(0), Err(Error::GateAfterMeasure(0))));
        assert_eq!(c.measured_qubits(), &[0]);
    }
}
