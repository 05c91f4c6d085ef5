//! Gate kinds.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

type C64 = Complex64;

/// Supported gate kinds. `Idle` and `Measure` are timing/readout markers
/// rather than unitaries.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H,
    X,
    Z,
    S,
    Sdg,
    Sx,
    /// Rz(theta) = exp(-i theta Z / 2), theta in radians.
    Rz(f64),
    Cnot,
    Cz,
    /// Explicit idle window in microseconds.
    Idle(f64),
    Measure,
}

impl Gate {
    pub fn arity(&self) -> usize {
        match self {
            Gate::Cnot | Gate::Cz => 2,
            _ => 1,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.arity() == 2
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H => "H",
            Gate::X => "X",
            Gate::Z => "Z",
            Gate::S => "S",
            Gate::Sdg => "SDG",
            Gate::Sx => "SX",
            Gate::Rz(_) => "RZ",
            Gate::Cnot => "CNOT",
            Gate::Cz => "CZ",
            Gate::Idle(_) => "IDLE",
            Gate::Measure => "MEASURE",
        }
    }

    /// 2x2 matrix for single-qubit unitaries; None for markers and
    /// two-qubit gates.
    pub fn matrix1(&self) -> Option<[C64; 4]> {
        let zero = C64::ZERO;
        let one = C64::ONE;
        let i = C64::I;
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Some(match self {
            Gate::H => [h, h, h, -h],
            Gate::X => [zero, one, one, zero],
            Gate::Z => [one, zero, zero, -one],
            Gate::S => [one, zero, zero, i],
            Gate::Sdg => [one, zero, zero, -i],
            Gate::Sx => {
                let a = C64::new(0.5, 0.5);
                let b = C64::new(0.5, -0.5);
                [a, b, b, a]
            }
            Gate::Rz(theta) => [
                C64::from_polar(1.0, -theta / 2.0),
                zero,
                zero,
                C64::from_polar(1.0, theta / 2.0),
            ],
            _ => return None,
        })
    }

    /// Clifford classification. Rz is Clifford exactly when the angle is a
    /// multiple of pi/2 (within 1e-9); markers count as Clifford.
    pub fn is_clifford(&self) -> bool {
        match self {
            Gate::Rz(theta) => rz_quarter_turns(*theta).is_some(),
            _ => true,
        }
    }

    /// Human-readable form used in diagnostics.
    pub fn describe(&self) -> String {
        match self {
            Gate::Rz(theta) => format!("RZ({theta})"),
            Gate::Idle(d) => format!("IDLE({d})"),
            other => other.name().to_string(),
        }
    }
}

/// Number of quarter turns (S gates) equivalent to Rz(theta), if any.
pub(crate) fn rz_quarter_turns(theta: f64) -> Option<usize> {
    let turns = theta / FRAC_PI_2;
    let rounded = turns.round();
    if (turns - rounded).abs() < 1e-9 / FRAC_PI_2 {
        Some(rounded.rem_euclid(4.0) as usize % 4)
    } else {
        None
    }
}

pub(crate) const QUARTER: f64 = FRAC_PI_2;
