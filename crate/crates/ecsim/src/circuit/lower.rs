//! Lowering to the native gate set {RZ, SX, X, CZ, IDLE, MEASURE}.

use super::gate::{Gate, QUARTER};
use super::Circuit;
use crate::error::Result;

/// Rewrite a circuit over the native set, preserving the unitary up to
/// global phase.
///
/// H = Rz(pi/2) * sqrt(X) * Rz(pi/2) up to phase; S and Z fold into Rz;
/// CNOT becomes an H-conjugated CZ.
pub fn lower_to_native(c: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(c.num_qubits());
    for op in c.ops() {
        let q = op.targets[0];
        match &op.gate {
            Gate::H => push_h(&mut out, q)?,
            Gate::S => out.rz(q, QUARTER)?,
            Gate::Sdg => out.rz(q, -QUARTER)?,
            Gate::Z => out.rz(q, 2.0 * QUARTER)?,
            Gate::X => out.x(q)?,
            Gate::Sx => out.sx(q)?,
            Gate::Rz(theta) => out.rz(q, *theta)?,
            Gate::Cz => out.cz(op.targets[0], op.targets[1])?,
            Gate::Cnot => {
                let (ctrl, tgt) = (op.targets[0], op.targets[1]);
                push_h(&mut out, tgt)?;
                out.cz(ctrl, tgt)?;
                push_h(&mut out, tgt)?;
            }
            Gate::Idle(d) => out.idle(q, *d)?,
            Gate::Measure => out.measure(q)?,
        }
    }
    Ok(out)
}

fn push_h(c: &mut Circuit, q: usize) -> Result<()> {
    c.rz(q, QUARTER)?;
    c.sx(q)?;
    c.rz(q, QUARTER)
}

/// True when the circuit uses only native gate kinds.
pub fn is_native(c: &Circuit) -> bool {
    c.ops().iter().all(|op| {
        matches!(
            op.gate,
            Gate::Rz(_) | Gate::Sx | Gate::X | Gate::Cz | Gate::Idle(_) | Gate::Measure
        )
    })
}
