//! Dense statevector simulation.

use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::counts::CountsTable;
use super::density::DensityMatrix;
use super::pauli::PauliString;
use super::C64;
use crate::error::{Error, Result};

/// Default register limit: 2^26 complex doubles is 1 GiB.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// A pure state of `num_qubits` qubits as 2^n complex amplitudes.
///
/// Qubit 0 is the least significant bit of the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// The all-zeros state |0...0> under the default capacity budget.
    pub fn new(num_qubits: usize) -> Result<Self> {
        Self::with_limit(num_qubits, DEFAULT_MAX_QUBITS)
    }

    /// The all-zeros state with an explicit capacity budget.
    pub fn with_limit(num_qubits: usize, max_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidParameter(
                "register needs at least one qubit".into(),
            ));
        }
        if num_qubits > max_qubits {
            return Err(Error::CapacityExceeded {
                requested: num_qubits,
                limit: max_qubits,
            });
        }
        let mut amps = vec![C64::ZERO; 1 << num_qubits];
        amps[0] = C64::ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// Computational basis state |index>.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let mut sv = Self::new(num_qubits)?;
        if index >= sv.amps.len() {
            return Err(Error::IndexOutOfRange { index, num_qubits });
        }
        sv.amps[0] = C64::ZERO;
        sv.amps[index] = C64::ONE;
        Ok(sv)
    }

    /// Build from explicit amplitudes; length must be a power of two and the
    /// norm must be 1 within 1e-12.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidParameter(
                "amplitude count must be a power of two >= 2".into(),
            ));
        }
        let num_qubits = len.trailing_zeros() as usize;
        let sv = StateVector { num_qubits, amps };
        let norm = sv.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "state norm^2 = {norm} is not 1"
            )));
        }
        Ok(sv)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
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

    /// Apply a 2x2 matrix (row major) to qubit `q`.
    pub fn apply_matrix1(&mut self, m: &[C64; 4], q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let stride = 1usize << q;
        let len = self.amps.len();
        let mut base = 0;
        while base < len {
            for i in base..base + stride {
                let j = i + stride;
                let a = self.amps[i];
                let b = self.amps[j];
                self.amps[i] = m[0] * a + m[1] * b;
                self.amps[j] = m[2] * a + m[3] * b;
            }
            base += stride << 1;
        }
        Ok(())
    }

    /// CNOT with control `c` and target `t`.
    pub fn apply_cnot(&mut self, c: usize, t: usize) -> Result<()> {
        self.check_qubit(c)?;
        self.check_qubit(t)?;
        if c == t {
            return Err(Error::DuplicateTargets);
        }
        let cm = 1usize << c;
        let tm = 1usize << t;
        for i in 0..self.amps.len() {
            if i & cm != 0 && i & tm == 0 {
                self.amps.swap(i, i | tm);
            }
        }
        Ok(())
    }

    /// CZ on the pair `(a, b)`.
    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(Error::DuplicateTargets);
        }
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// Apply a dense 2^k x 2^k operator (row major) to `targets`.
    ///
    /// Bit `k` of the operator's row/column index corresponds to
    /// `targets[k]`, so `targets[0]` is the least significant bit.
    pub fn apply_dense(&mut self, op: &[C64], targets: &[usize]) -> Result<()> {
        let k = targets.len();
        let dim = 1usize << k;
        if op.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: op.len(),
                right: dim * dim,
            });
        }
        for (idx, &t) in targets.iter().enumerate() {
            self.check_qubit(t)?;
            if targets[..idx].contains(&t) {
                return Err(Error::DuplicateTargets);
            }
        }
        let masks: Vec<usize> = targets.iter().map(|&t| 1usize << t).collect();
        let all_mask: usize = masks.iter().sum();
        let mut gathered = vec![C64::ZERO; dim];
        for base in 0..self.amps.len() {
            if base & all_mask != 0 {
                continue;
            }
            for (sub, g) in gathered.iter_mut().enumerate() {
                let mut idx = base;
                for (bit, mask) in masks.iter().enumerate() {
                    if sub >> bit & 1 == 1 {
                        idx |= mask;
                    }
                }
                *g = self.amps[idx];
            }
            for row in 0..dim {
                let mut acc = C64::ZERO;
                for (col, g) in gathered.iter().enumerate() {
                    acc += op[row * dim + col] * *g;
                }
                let mut idx = base;
                for (bit, mask) in masks.iter().enumerate() {
                    if row >> bit & 1 == 1 {
                        idx |= mask;
                    }
                }
                self.amps[idx] = acc;
            }
        }
        Ok(())
    }

    /// <state| P |state> for a Pauli string spanning the register.
    ///
    /// Returns the real part; the imaginary part of the raw expectation is
    /// checked to vanish within 1e-10.
    pub fn expect_pauli(&self, p: &PauliString) -> Result<f64> {
        if p.num_qubits() != self.num_qubits {
            return Err(Error::PauliLengthMismatch {
                expected: self.num_qubits,
                got: p.num_qubits(),
            });
        }
        let (xmask, zmask) = p.masks();
        let xmask = xmask as usize;
        let zmask = zmask as usize;
        let n_y = p
            .ops
            .iter()
            .filter(|op| matches!(op, super::pauli::Pauli::Y))
            .count();
        // P|b> = i^{#Y} * (-1)^{popcount(b & zmask)} |b ^ xmask>
        let mut acc = C64::ZERO;
        for (b, amp) in self.amps.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let sign = if (b & zmask).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            acc += self.amps[b ^ xmask].conj() * amp * sign;
        }
        let phase = C64::I.powu(n_y as u32);
        let value = p.coefficient * phase * acc;
        if value.im.abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "expectation has imaginary part {:.3e}",
                value.im
            )));
        }
        Ok(value.re)
    }

    /// Partial trace over the complement of `keep`.
    ///
    /// Bit `k` of the reduced density matrix index corresponds to `keep[k]`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        for (idx, &q) in keep.iter().enumerate() {
            self.check_qubit(q)?;
            if keep[..idx].contains(&q) {
                return Err(Error::DuplicateTargets);
            }
        }
        let k = keep.len();
        let dim = 1usize << k;
        let mut entries = vec![C64::ZERO; dim * dim];
        let keep_masks: Vec<usize> = keep.iter().map(|&q| 1usize << q).collect();
        let keep_all: usize = keep_masks.iter().sum();
        // Environment indices are all assignments of the non-kept bits.
        let n = self.num_qubits;
        let env_bits: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let env_count = 1usize << env_bits.len();
        let sub_index = |sub: usize, env: usize| -> usize {
            let mut idx = 0usize;
            for (bit, mask) in keep_masks.iter().enumerate() {
                if sub >> bit & 1 == 1 {
                    idx |= mask;
                }
            }
            for (bit, &q) in env_bits.iter().enumerate() {
                if env >> bit & 1 == 1 {
                    idx |= 1 << q;
                }
            }
            idx
        };
        let _ = keep_all;
        for env in 0..env_count {
            for r in 0..dim {
                let ar = self.amps[sub_index(r, env)];
                if ar.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..dim {
                    let ac = self.amps[sub_index(c, env)];
                    entries[r * dim + c] += ar * ac.conj();
                }
            }
        }
        DensityMatrix::from_entries(k, entries)
    }

    /// Born-rule probabilities of the measured subset, as a dense vector of
    /// length 2^r with bit `k` of the outcome index taken from `qubits[k]`.
    pub fn marginal_probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        if qubits.is_empty() {
            return Err(Error::EmptySubset);
        }
        for (idx, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..idx].contains(&q) {
                return Err(Error::DuplicateTargets);
            }
        }
        let r = qubits.len();
        let mut probs = vec![0.0; 1 << r];
        for (i, amp) in self.amps.iter().enumerate() {
            let w = amp.norm_sqr();
            if w == 0.0 {
                continue;
            }
            let mut out = 0usize;
            for (bit, &q) in qubits.iter().enumerate() {
                if i >> q & 1 == 1 {
                    out |= 1 << bit;
                }
            }
            probs[out] += w;
        }
        Ok(probs)
    }

    /// Sample `shots` outcomes of the given qubits; deterministic per seed.
    pub fn sample(&self, qubits: &[usize], shots: u64, seed: u64) -> Result<CountsTable> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let probs = self.marginal_probabilities(qubits)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample_from_probs(&probs, qubits.len(), shots, seed, &mut rng)
    }

    /// |<self|other>|^2.
    pub fn fidelity_with(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.amps.len(),
                right: other.amps.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Multinomial sampling from an outcome distribution: draw all shot
/// thresholds, sort them, and walk the cumulative distribution once.
pub(crate) fn sample_from_probs(
    probs: &[f64],
    num_bits: usize,
    shots: u64,
    seed: u64,
    rng: &mut impl Rng,
) -> Result<CountsTable> {
    let mut thresholds: Vec<f64> = (0..shots).map(|_| rng.random::<f64>()).collect();
    thresholds.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut counts: std::collections::BTreeMap<String, u64> = std::collections::BTreeMap::new();
    let mut cum = 0.0;
    let mut shot = 0usize;
    for (outcome, &p) in probs.iter().enumerate() {
        if shot >= thresholds.len() {
            break;
        }
        cum += p;
        let start = shot;
        while shot < thresholds.len() && thresholds[shot] < cum {
            shot += 1;
        }
        if shot > start {
            let key = outcome_key(outcome, num_bits);
            *counts.entry(key).or_insert(0) += (shot - start) as u64;
        }
    }
    // Rounding can leave trailing thresholds >= total probability mass.
    if shot < thresholds.len() {
        let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        let key = outcome_key(last, num_bits);
        *counts.entry(key).or_insert(0) += (thresholds.len() - shot) as u64;
    }
    CountsTable::new(counts, seed)
}

pub(crate) fn outcome_key(outcome: usize, num_bits: usize) -> String {
    (0..num_bits)
        .map(|b| if outcome >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// A Haar-random single-qubit state, for round-trip tests.
pub fn haar_random_qubit(rng: &mut impl Rng) -> [Complex64; 2] {
    loop {
        let g = |rng: &mut dyn FnMut() -> f64| {
            // Box-Muller
            let u1: f64 = rng();
            let u2: f64 = rng();
            let r = (-2.0 * u1.max(1e-300).ln()).sqrt();
            (
                r * (2.0 * std::f64::consts::PI * u2).cos(),
                r * (2.0 * std::f64::consts::PI * u2).sin(),
            )
        };
        let mut draw = || rng.random::<f64>();
        let (a, b) = g(&mut draw);
        let (c, d) = g(&mut draw);
        let v = [C64::new(a, b), C64::new(c, d)];
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if norm > 1e-6 {
            return [v[0] / norm, v[1] / norm];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::pauli::Pauli;
    use std::f64::consts::FRAC_1_SQRT_2;

    const H_MATRIX: [C64; 4] = [
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(-FRAC_1_SQRT_2, 0.0),
    ];

    fn bell() -> StateVector {
        let mut sv = StateVector::new(2).unwrap();
        sv.apply_matrix1(&H_MATRIX, 0).unwrap();
        sv.apply_cnot(0, 1).unwrap();
        sv
    }

    #[test]
    fn init_basis_states() {
        let sv = StateVector::new(1).unwrap();
        assert_eq!(sv.amplitudes(), &[C64::ONE, C64::ZERO]);
        let sv = StateVector::new(2).unwrap();
        assert_eq!(
            sv.amplitudes(),
            &[C64::ONE, C64::ZERO, C64::ZERO, C64::ZERO]
        );
    }

    #[test]
    fn init_over_capacity_errors() {
        match StateVector::new(27) {
            Err(Error::CapacityExceeded { requested, limit }) => {
                assert_eq!((requested, limit), (27, 26));
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn hadamard_on_zero() {
        let mut sv = StateVector::new(1).unwrap();
        sv.apply_matrix1(&H_MATRIX, 0).unwrap();
        assert!((sv.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((sv.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn cnot_on_basis() {
        // |10> means qubit 0 in |1> (index bit 0 set), qubit 1 in |0>
        let mut sv = StateVector::basis(2, 0b01).unwrap();
        sv.apply_cnot(0, 1).unwrap();
        assert_eq!(sv.amplitudes()[0b11], C64::ONE);
    }

    #[test]
    fn rz_pi_flips_x_expectation() {
        // Rz(pi)|+> has <X> = -1: the 2x2 product gives -i(|0> - |1>)/sqrt(2)
        let mut sv = StateVector::new(1).unwrap();
        sv.apply_matrix1(&H_MATRIX, 0).unwrap();
        let rz_pi = [
            C64::from_polar(1.0, -std::f64::consts::FRAC_PI_2),
            C64::ZERO,
            C64::ZERO,
            C64::from_polar(1.0, std::f64::consts::FRAC_PI_2),
        ];
        sv.apply_matrix1(&rz_pi, 0).unwrap();
        let x = sv
            .expect_pauli(&PauliString::single(1, 0, Pauli::X).unwrap())
            .unwrap();
        assert!((x + 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_pauli_expectations() {
        let sv = bell();
        let xx = PauliString::parse("XX").unwrap();
        let zi = PauliString::parse("ZI").unwrap();
        assert!((sv.expect_pauli(&xx).unwrap() - 1.0).abs() < 1e-12);
        assert!(sv.expect_pauli(&zi).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ghz3_xxx_expectation() {
        let amp = C64::new(FRAC_1_SQRT_2, 0.0);
        let mut amps = vec![C64::ZERO; 8];
        amps[0] = amp;
        amps[7] = amp;
        let sv = StateVector::from_amplitudes(amps).unwrap();
        let xxx = PauliString::parse("XXX").unwrap();
        assert!((sv.expect_pauli(&xxx).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let sv = bell();
        let dm = sv.reduced(&[0]).unwrap();
        for (idx, expected) in [(0, 0.5), (3, 0.5), (1, 0.0), (2, 0.0)] {
            assert!((dm.entries()[idx] - C64::new(expected, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn product_state_reduction() {
        // |0> x |+> with qubit 1 kept gives |+><+|
        let mut sv = StateVector::new(2).unwrap();
        sv.apply_matrix1(&H_MATRIX, 1).unwrap();
        let dm = sv.reduced(&[1]).unwrap();
        for e in dm.entries() {
            assert!((e - C64::new(0.5, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn sampling_deterministic_outcome() {
        let sv = StateVector::new(1).unwrap();
        let counts = sv.sample(&[0], 100, 42).unwrap();
        assert_eq!(counts.count("0"), 100);
    }

    #[test]
    fn sampling_plus_state_within_binomial_bound() {
        let mut sv = StateVector::new(1).unwrap();
        sv.apply_matrix1(&H_MATRIX, 0).unwrap();
        for seed in 0..5 {
            let counts = sv.sample(&[0], 10_000, seed).unwrap();
            let f = counts.frequency("0");
            assert!((f - 0.5).abs() < 0.02, "seed {seed}: f = {f}");
        }
    }

    #[test]
    fn bell_sampling_has_no_odd_outcomes() {
        let sv = bell();
        let counts = sv.sample(&[0, 1], 10_000, 7).unwrap();
        assert_eq!(counts.count("01") + counts.count("10"), 0);
        assert_eq!(counts.count("00") + counts.count("11"), 10_000);
    }

    #[test]
    fn sample_same_seed_is_identical() {
        let sv = bell();
        let a = sv.sample(&[0, 1], 1000, 5).unwrap();
        let b = sv.sample(&[0, 1], 1000, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_shots_rejected() {
        let sv = StateVector::new(1).unwrap();
        assert!(matches!(sv.sample(&[0], 0, 0), Err(Error::ZeroShots)));
    }

    #[test]
    fn reduced_trace_is_one() {
        let sv = bell();
        for keep in [vec![0], vec![1], vec![0, 1]] {
            let dm = sv.reduced(&keep).unwrap();
            assert!((dm.trace().re - 1.0).abs() < 1e-12);
        }
    }
}
