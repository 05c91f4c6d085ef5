//! Stabilizer tableau for Clifford circuits.
//!
//! Binary symplectic representation with destabilizer rows, following the
//! standard CHP update rules. Pauli expectations are exact (-1, 0 or +1 on
//! stabilizer states) and sampling draws exact Born-rule outcomes through
//! sequential collapse.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::counts::CountsTable;
use super::pauli::{Pauli, PauliString};
use crate::error::{Error, Result};

/// Register limit for the tableau backend.
pub const TABLEAU_MAX_QUBITS: usize = 1024;

/// A signed Pauli row: bit-packed x/z masks plus a sign bit.
///
/// The row `(x, z, r)` represents `(-1)^r * prod_q W_q` with
/// `W_q = i^{x_q z_q} X^{x_q} Z^{z_q}`, so each factor is Hermitian
/// (`(1,1)` is exactly Y).
#[derive(Debug, Clone, PartialEq)]
struct PauliRow {
    x: Vec<u64>,
    z: Vec<u64>,
    r: bool,
}

impl PauliRow {
    fn zero(words: usize) -> Self {
        PauliRow {
            x: vec![0; words],
            z: vec![0; words],
            r: false,
        }
    }

    fn get(v: &[u64], q: usize) -> bool {
        v[q >> 6] >> (q & 63) & 1 == 1
    }

    fn set(v: &mut [u64], q: usize, b: bool) {
        if b {
            v[q >> 6] |= 1 << (q & 63);
        } else {
            v[q >> 6] &= !(1 << (q & 63));
        }
    }

    /// Does this row commute with `other`?
    fn commutes(&self, other: &PauliRow) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= (self.x[w] & other.z[w]).count_ones() & 1;
            parity ^= (self.z[w] & other.x[w]).count_ones() & 1;
        }
        parity == 0
    }

    /// self := self * rhs (self on the left), tracking the sign.
    ///
    /// Products of commuting rows carry a real sign. Measurement also
    /// multiplies a destabilizer row by an anticommuting pivot, leaving an
    /// i-factor; destabilizer signs are never read, so the stored bit is
    /// then meaningless but harmless.
    fn mul_assign(&mut self, rhs: &PauliRow) {
        // Per-qubit i exponents of W1 * W2 (W1 = self, left):
        //   +1 for XY, YZ, ZX; -1 (=3) for YX, ZY, XZ.
        let mut exponent: i64 = if self.r { 2 } else { 0 };
        exponent += if rhs.r { 2 } else { 0 };
        for w in 0..self.x.len() {
            let (x1, z1) = (self.x[w], self.z[w]);
            let (x2, z2) = (rhs.x[w], rhs.z[w]);
            let plus = (x1 & !z1 & x2 & z2) | (x1 & z1 & !x2 & z2) | (!x1 & z1 & x2 & !z2);
            let minus = (x1 & z1 & x2 & !z2) | (!x1 & z1 & x2 & z2) | (x1 & !z1 & !x2 & z2);
            exponent += plus.count_ones() as i64;
            exponent -= minus.count_ones() as i64;
            self.x[w] ^= x2;
            self.z[w] ^= z2;
        }
        self.r = exponent.rem_euclid(4) >= 2;
    }
}

/// Stabilizer tableau over `n` qubits: rows 0..n are destabilizers,
/// rows n..2n are stabilizers. Starts in |0...0>.
#[derive(Debug, Clone, PartialEq)]
pub struct Tableau {
    num_qubits: usize,
    words: usize,
    rows: Vec<PauliRow>,
}

impl Tableau {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > TABLEAU_MAX_QUBITS {
            return Err(Error::CapacityExceeded {
                requested: num_qubits,
                limit: TABLEAU_MAX_QUBITS,
            });
        }
        let words = num_qubits.div_ceil(64);
        let mut rows = vec![PauliRow::zero(words); 2 * num_qubits];
        for q in 0..num_qubits {
            PauliRow::set(&mut rows[q].x, q, true); // destabilizer X_q
            PauliRow::set(&mut rows[num_qubits + q].z, q, true); // stabilizer Z_q
        }
        Ok(Tableau {
            num_qubits,
            words,
            rows,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    pub fn apply_h(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        for row in &mut self.rows {
            let x = PauliRow::get(&row.x, q);
            let z = PauliRow::get(&row.z, q);
            row.r ^= x && z;
            PauliRow::set(&mut row.x, q, z);
            PauliRow::set(&mut row.z, q, x);
        }
        Ok(())
    }

    pub fn apply_s(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        for row in &mut self.rows {
            let x = PauliRow::get(&row.x, q);
            let z = PauliRow::get(&row.z, q);
            row.r ^= x && z;
            PauliRow::set(&mut row.z, q, z ^ x);
        }
        Ok(())
    }

    pub fn apply_sdg(&mut self, q: usize) -> Result<()> {
        self.apply_s(q)?;
        self.apply_s(q)?;
        self.apply_s(q)
    }

    pub fn apply_x(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        for row in &mut self.rows {
            row.r ^= PauliRow::get(&row.z, q);
        }
        Ok(())
    }

    pub fn apply_z(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        for row in &mut self.rows {
            row.r ^= PauliRow::get(&row.x, q);
        }
        Ok(())
    }

    pub fn apply_y(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        for row in &mut self.rows {
            row.r ^= PauliRow::get(&row.x, q) ^ PauliRow::get(&row.z, q);
        }
        Ok(())
    }

    /// sqrt(X) = H S H exactly.
    pub fn apply_sx(&mut self, q: usize) -> Result<()> {
        self.apply_h(q)?;
        self.apply_s(q)?;
        self.apply_h(q)
    }

    pub fn apply_cnot(&mut self, ctrl: usize, tgt: usize) -> Result<()> {
        self.check_qubit(ctrl)?;
        self.check_qubit(tgt)?;
        if ctrl == tgt {
            return Err(Error::DuplicateTargets);
        }
        for row in &mut self.rows {
            let xc = PauliRow::get(&row.x, ctrl);
            let zc = PauliRow::get(&row.z, ctrl);
            let xt = PauliRow::get(&row.x, tgt);
            let zt = PauliRow::get(&row.z, tgt);
            row.r ^= xc && zt && (xt == zc);
            PauliRow::set(&mut row.x, tgt, xt ^ xc);
            PauliRow::set(&mut row.z, ctrl, zc ^ zt);
        }
        Ok(())
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.apply_h(b)?;
        self.apply_cnot(a, b)?;
        self.apply_h(b)
    }

    /// Apply a single-qubit Pauli as a unitary (used by noise trajectories).
    pub fn apply_pauli(&mut self, q: usize, p: Pauli) -> Result<()> {
        match p {
            Pauli::I => Ok(()),
            Pauli::X => self.apply_x(q),
            Pauli::Y => self.apply_y(q),
            Pauli::Z => self.apply_z(q),
        }
    }

    fn row_from_string(&self, p: &PauliString) -> Result<PauliRow> {
        if p.num_qubits() != self.num_qubits {
            return Err(Error::PauliLengthMismatch {
                expected: self.num_qubits,
                got: p.num_qubits(),
            });
        }
        let mut row = PauliRow::zero(self.words);
        for (q, op) in p.ops.iter().enumerate() {
            let (x, z) = op.xz_bits();
            PauliRow::set(&mut row.x, q, x);
            PauliRow::set(&mut row.z, q, z);
        }
        Ok(row)
    }

    /// Exact expectation of a Pauli string: -1, 0, or +1 times the
    /// coefficient's real part.
    pub fn expect_pauli(&self, p: &PauliString) -> Result<f64> {
        let target = self.row_from_string(p)?;
        if p.coefficient.im.abs() > 1e-12 {
            return Err(Error::InvalidParameter(
                "tableau expectations require a real coefficient".into(),
            ));
        }
        let n = self.num_qubits;
        // Anticommuting with any stabilizer generator means expectation 0.
        for i in n..2 * n {
            if !self.rows[i].commutes(&target) {
                return Ok(0.0);
            }
        }
        // Decompose over generators: the destabilizer d_i anticommutes with
        // s_i only, so s_i appears iff the target anticommutes with d_i.
        let mut acc = PauliRow::zero(self.words);
        for i in 0..n {
            if !self.rows[i].commutes(&target) {
                let stab = self.rows[n + i].clone();
                acc.mul_assign(&stab);
            }
        }
        if acc.x != target.x || acc.z != target.z {
            // Commutes with the group but is not in it (impossible for a
            // pure stabilizer state; defend anyway).
            return Ok(0.0);
        }
        let sign = if acc.r { -1.0 } else { 1.0 };
        Ok(sign * p.coefficient.re)
    }

    /// Measure qubit `q` in the Z basis, collapsing the state.
    pub fn measure(&mut self, q: usize, rng: &mut impl Rng) -> Result<bool> {
        self.check_qubit(q)?;
        let n = self.num_qubits;
        let pivot = (n..2 * n).find(|&i| PauliRow::get(&self.rows[i].x, q));
        match pivot {
            Some(p) => {
                // Random outcome: update all other rows containing X_q.
                for i in 0..2 * n {
                    if i != p && PauliRow::get(&self.rows[i].x, q) {
                        let src = self.rows[p].clone();
                        self.rows[i].mul_assign(&src);
                    }
                }
                self.rows[p - n] = self.rows[p].clone();
                let outcome = rng.random::<bool>();
                let row = &mut self.rows[p];
                for w in 0..row.x.len() {
                    row.x[w] = 0;
                    row.z[w] = 0;
                }
                PauliRow::set(&mut row.z, q, true);
                row.r = outcome;
                Ok(outcome)
            }
            None => {
                // Deterministic outcome: accumulate stabilizers indicated by
                // destabilizer X_q bits into a scratch row.
                let mut scratch = PauliRow::zero(self.words);
                for i in 0..n {
                    if PauliRow::get(&self.rows[i].x, q) {
                        let stab = self.rows[n + i].clone();
                        scratch.mul_assign(&stab);
                    }
                }
                Ok(scratch.r)
            }
        }
    }

    /// Sample `shots` outcomes of the given qubits; deterministic per seed.
    pub fn sample(&self, qubits: &[usize], shots: u64, seed: u64) -> Result<CountsTable> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        for (idx, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..idx].contains(&q) {
                return Err(Error::DuplicateTargets);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs: Vec<(String, u64)> = Vec::new();
        for _ in 0..shots {
            let mut copy = self.clone();
            let key: String = qubits
                .iter()
                .map(|&q| {
                    if copy.measure(q, &mut rng).unwrap() {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect();
            pairs.push((key, 1));
        }
        CountsTable::from_pairs(pairs, seed)
    }
}
