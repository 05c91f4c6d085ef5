//! Line-oriented circuit serialization.
//!
//! One gate per line: `GATE q0 [q1] [theta|duration]`. The first
//! non-comment line declares the register width as `QUBITS n`. Lines
//! starting with `#` are comments; the round trip is stable.

use super::{Circuit, Gate};
use crate::error::{Error, Result};

impl Circuit {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("QUBITS {}\n", self.num_qubits()));
        for op in self.ops() {
            match &op.gate {
                Gate::Rz(theta) => {
                    out.push_str(&format!("RZ {} {}\n", op.targets[0], theta));
                }
                Gate::Idle(d) => {
                    out.push_str(&format!("IDLE {} {}\n", op.targets[0], d));
                }
                g if g.arity() == 2 => {
                    out.push_str(&format!(
                        "{} {} {}\n",
                        g.name(),
                        op.targets[0],
                        op.targets[1]
                    ));
                }
                g => {
                    out.push_str(&format!("{} {}\n", g.name(), op.targets[0]));
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap();
            let err = |msg: &str| Error::CircuitParse(format!("line {}: {msg}", lineno + 1));
            if head == "QUBITS" {
                let n: usize = parts
                    .next()
                    .ok_or_else(|| err("missing qubit count"))?
                    .parse()
                    .map_err(|_| err("bad qubit count"))?;
                circuit = Some(Circuit::new(n));
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| err("gate before QUBITS header"))?;
            let mut next_usize = || -> Result<usize> {
                parts
                    .next()
                    .ok_or_else(|| err("missing qubit index"))?
                    .parse()
                    .map_err(|_| err("bad qubit index"))
            };
            match head {
                "H" => c.h(next_usize()?)?,
                "X" => c.x(next_usize()?)?,
                "Z" => c.z(next_usize()?)?,
                "S" => c.s(next_usize()?)?,
                "SDG" => c.sdg(next_usize()?)?,
                "SX" => c.sx(next_usize()?)?,
                "MEASURE" => c.measure(next_usize()?)?,
                "CNOT" => {
                    let a = next_usize()?;
                    let b = next_usize()?;
                    c.cnot(a, b)?;
                }
                "CZ" => {
                    let a = next_usize()?;
                    let b = next_usize()?;
                    c.cz(a, b)?;
                }
                "RZ" => {
                    let q = next_usize()?;
                    let theta: f64 = parts
                        .next()
                        .ok_or_else(|| err("missing angle"))?
                        .parse()
                        .map_err(|_| err("bad angle"))?;
                    c.rz(q, theta)?;
                }
                "IDLE" => {
                    let q = next_usize()?;
                    let d: f64 = parts
                        .next()
                        .ok_or_else(|| err("missing duration"))?
                        .parse()
                        .map_err(|_| err("bad duration"))?;
                    c.idle(q, d)?;
                }
                other => return Err(err(&format!("unknown gate '{other}'"))),
            }
        }
        circuit.ok_or_else(|| Error::CircuitParse("missing QUBITS header".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_stable() {
        let mut c = Circuit::new(3);
        c.h(0).unwrap();
        c.cnot(0, 1).unwrap();
        c.rz(2, std::f64::consts::FRAC_PI_2).unwrap();
        c.idle(1, 3.0).unwrap();
        c.cz(1, 2).unwrap();
        c.measure(0).unwrap();
        let text = c.to_text();
        let parsed = Circuit::from_text(&text).unwrap();
        assert_eq!(parsed, c);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# layout: A=0\nQUBITS 2\n\nH 0\nCNOT 0 1\n";
        let c = Circuit::from_text(text).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn unknown_gate_is_an_error() {
        assert!(Circuit::from_text("QUBITS 1\nFOO 0\n").is_err());
    }
}
