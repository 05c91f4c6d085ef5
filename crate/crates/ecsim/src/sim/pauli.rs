//! Pauli operators and Pauli strings.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The 2x2 matrix, row major.
    pub fn matrix(self) -> [Complex64; 4] {
        let zero = Complex64::ZERO;
        let one = Complex64::ONE;
        let i = Complex64::I;
        match self {
            Pauli::I => [one, zero, zero, one],
            Pauli::X => [zero, one, one, zero],
            Pauli::Y => [zero, -i, i, zero],
            Pauli::Z => [one, zero, zero, -one],
        }
    }

    /// Symplectic (x, z) bit pair; Y carries both bits.
    pub fn xz_bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A tensor product of single-qubit Paulis with a scalar coefficient.
///
/// `ops[q]` acts on qubit `q`; the string must span the full register it is
/// evaluated against.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    pub ops: Vec<Pauli>,
    pub coefficient: Complex64,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        PauliString {
            ops,
            coefficient: Complex64::ONE,
        }
    }

    pub fn with_coefficient(ops: Vec<Pauli>, coefficient: Complex64) -> Result<Self> {
        if coefficient == Complex64::ZERO {
            return Err(Error::InvalidParameter(
                "Pauli string coefficient must be nonzero".into(),
            ));
        }
        Ok(PauliString { ops, coefficient })
    }

    /// Identity string on `n` qubits.
    pub fn identity(n: usize) -> Self {
        PauliString::new(vec![Pauli::I; n])
    }

    /// Identity except for `p` on qubit `q`.
    pub fn single(n: usize, q: usize, p: Pauli) -> Result<Self> {
        if q >= n {
            return Err(Error::IndexOutOfRange {
                index: q,
                num_qubits: n,
            });
        }
        let mut ops = vec![Pauli::I; n];
        ops[q] = p;
        Ok(PauliString::new(ops))
    }

    /// Identity except for `p` on qubit `a` and `q` on qubit `b`.
    pub fn two(n: usize, a: usize, p: Pauli, b: usize, q: Pauli) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                num_qubits: n,
            });
        }
        if a == b {
            return Err(Error::DuplicateTargets);
        }
        let mut ops = vec![Pauli::I; n];
        ops[a] = p;
        ops[b] = q;
        Ok(PauliString::new(ops))
    }

    /// Parse from a symbol string, e.g. `"XXZI"`; index 0 acts on qubit 0.
    pub fn parse(s: &str) -> Result<Self> {
        let ops = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidParameter(format!(
                    "unknown Pauli symbol '{other}'"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::new(ops))
    }

    pub fn num_qubits(&self) -> usize {
        self.ops.len()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.ops.iter().filter(|p| **p != Pauli::I).count()
    }

    /// Bit masks (x, z) over the register; Y sets both.
    pub fn masks(&self) -> (u64, u64) {
        debug_assert!(self.ops.len() <= 64);
        let mut x = 0u64;
        let mut z = 0u64;
        for (q, p) in self.ops.iter().enumerate() {
            let (xb, zb) = p.xz_bits();
            if xb {
                x |= 1 << q;
            }
            if zb {
                z |= 1 << q;
            }
        }
        (x, z)
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.ops {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let p = PauliString::parse("IXYZ").unwrap();
        assert_eq!(p.ops, vec![Pauli::I, Pauli::X, Pauli::Y, Pauli::Z]);
        assert_eq!(p.to_string(), "IXYZ");
        assert_eq!(p.weight(), 3);
    }

    #[test]
    fn masks_follow_qubit_order() {
        let p = PauliString::parse("XZY").unwrap();
        let (x, z) = p.masks();
        assert_eq!(x, 0b101); // X on qubit 0, Y on qubit 2
        assert_eq!(z, 0b110); // Z on qubit 1, Y on qubit 2
    }

    #[test]
    fn zero_coefficient_rejected() {
        assert!(PauliString::with_coefficient(vec![Pauli::X], Complex64::ZERO).is_err());
    }
}
