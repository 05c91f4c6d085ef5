//! Density-matrix simulation with Kraus channels.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::counts::CountsTable;
use super::pauli::PauliString;
use super::statevector::{sample_from_probs, StateVector};
use super::C64;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, DenseMatrix};

/// Density matrices become impractical past this register size
/// (2^13 x 2^13 complex doubles is 1 GiB).
pub const DENSITY_MAX_QUBITS: usize = 13;

/// A Kraus operator on `arity` qubits, row major, dimension 2^arity.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausOp {
    pub arity: usize,
    pub mat: Vec<C64>,
}

impl KrausOp {
    pub fn new(arity: usize, mat: Vec<C64>) -> Result<Self> {
        let dim = 1usize << arity;
        if mat.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: mat.len(),
                right: dim * dim,
            });
        }
        Ok(KrausOp { arity, mat })
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }
}

/// Check that a Kraus set is trace preserving: sum K†K = I within `tol`.
pub fn validate_kraus(kraus: &[KrausOp], tol: f64) -> Result<()> {
    if kraus.is_empty() {
        return Err(Error::InvalidParameter("empty Kraus set".into()));
    }
    let dim = kraus[0].dim();
    let mut acc = DenseMatrix::zeros(dim);
    for k in kraus {
        if k.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: k.dim(),
                right: dim,
            });
        }
        let m = DenseMatrix::from_rows(dim, k.mat.clone())?;
        acc = acc.add(&m.dagger().mul(&m)?)?;
    }
    let deviation = acc.max_abs_diff(&DenseMatrix::identity(dim));
    if deviation > tol {
        return Err(Error::NonTracePreserving { deviation });
    }
    Ok(())
}

/// A mixed state of `num_qubits` qubits as a 2^n x 2^n matrix, row major.
///
/// Qubit 0 is the least significant bit of the row/column index.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    dim: usize,
    entries: Vec<C64>,
}

impl DensityMatrix {
    /// |0...0><0...0|.
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > DENSITY_MAX_QUBITS {
            return Err(Error::CapacityExceeded {
                requested: num_qubits,
                limit: DENSITY_MAX_QUBITS,
            });
        }
        let dim = 1usize << num_qubits;
        let mut entries = vec![C64::ZERO; dim * dim];
        entries[0] = C64::ONE;
        Ok(DensityMatrix {
            num_qubits,
            dim,
            entries,
        })
    }

    /// |psi><psi| from a pure state.
    pub fn from_pure(sv: &StateVector) -> Result<Self> {
        let n = sv.num_qubits();
        if n > DENSITY_MAX_QUBITS {
            return Err(Error::CapacityExceeded {
                requested: n,
                limit: DENSITY_MAX_QUBITS,
            });
        }
        let amps = sv.amplitudes();
        let dim = amps.len();
        let mut entries = vec![C64::ZERO; dim * dim];
        for r in 0..dim {
            if amps[r] == C64::ZERO {
                continue;
            }
            for c in 0..dim {
                entries[r * dim + c] = amps[r] * amps[c].conj();
            }
        }
        Ok(DensityMatrix {
            num_qubits: n,
            dim,
            entries,
        })
    }

    /// I / 2^n.
    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        let mut dm = Self::new(num_qubits)?;
        let p = 1.0 / dm.dim as f64;
        dm.entries.fill(C64::ZERO);
        for i in 0..dm.dim {
            dm.entries[i * dm.dim + i] = C64::new(p, 0.0);
        }
        Ok(dm)
    }

    pub fn from_entries(num_qubits: usize, entries: Vec<C64>) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: dim * dim,
            });
        }
        Ok(DensityMatrix {
            num_qubits,
            dim,
            entries,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// tr(rho^2).
    pub fn purity(&self) -> f64 {
        // Hermitian rho: tr(rho^2) = sum |rho_ij|^2
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    /// Hermiticity, unit trace, and positive semidefiniteness.
    pub fn validate(&self) -> Result<()> {
        for r in 0..self.dim {
            for c in r..self.dim {
                let d =
                    (self.entries[r * self.dim + c] - self.entries[c * self.dim + r].conj()).norm();
                if d > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "not Hermitian: deviation {d:.3e} at ({r},{c})"
                    )));
                }
            }
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("trace = {tr} is not 1")));
        }
        let m = DenseMatrix::from_rows(self.dim, self.entries.clone())?;
        let eigs = hermitian_eigenvalues(&m);
        if let Some(&min) = eigs.first() {
            if min < -1e-10 {
                return Err(Error::InvalidParameter(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(())
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

    /// rho -> U rho U† for a 2x2 unitary on qubit `q`.
    pub fn apply_matrix1(&mut self, m: &[C64; 4], q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let d = self.dim;
        let tm = 1usize << q;
        let mdag = [m[0].conj(), m[2].conj(), m[1].conj(), m[3].conj()];
        // Left multiply: rows.
        for c in 0..d {
            let mut r = 0usize;
            while r < d {
                if r & tm == 0 {
                    let i0 = r * d + c;
                    let i1 = (r | tm) * d + c;
                    let a = self.entries[i0];
                    let b = self.entries[i1];
                    self.entries[i0] = m[0] * a + m[1] * b;
                    self.entries[i1] = m[2] * a + m[3] * b;
                }
                r += 1;
            }
        }
        // Right multiply by U†: columns.
        for r in 0..d {
            let row = r * d;
            let mut c = 0usize;
            while c < d {
                if c & tm == 0 {
                    let a = self.entries[row + c];
                    let b = self.entries[row + (c | tm)];
                    self.entries[row + c] = a * mdag[0] + b * mdag[2];
                    self.entries[row + (c | tm)] = a * mdag[1] + b * mdag[3];
                }
                c += 1;
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, ctrl: usize, tgt: usize) -> Result<()> {
        self.check_qubit(ctrl)?;
        self.check_qubit(tgt)?;
        if ctrl == tgt {
            return Err(Error::DuplicateTargets);
        }
        let d = self.dim;
        let cm = 1usize << ctrl;
        let tm = 1usize << tgt;
        let map = |i: usize| if i & cm != 0 { i ^ tm } else { i };
        let mut out = vec![C64::ZERO; d * d];
        for r in 0..d {
            let mr = map(r);
            for c in 0..d {
                out[mr * d + map(c)] = self.entries[r * d + c];
            }
        }
        self.entries = out;
        Ok(())
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(Error::DuplicateTargets);
        }
        let d = self.dim;
        let mask = (1usize << a) | (1usize << b);
        let sign = |i: usize| i & mask == mask;
        for r in 0..d {
            for c in 0..d {
                if sign(r) != sign(c) {
                    self.entries[r * d + c] = -self.entries[r * d + c];
                }
            }
        }
        Ok(())
    }

    /// rho -> sum_K K rho K† on `targets`.
    ///
    /// Bit `k` of the Kraus-operator index corresponds to `targets[k]`. The
    /// Kraus set must be trace preserving within 1e-10.
    pub fn apply_channel(&mut self, kraus: &[KrausOp], targets: &[usize]) -> Result<()> {
        validate_kraus(kraus, 1e-10)?;
        let k = targets.len();
        if kraus[0].arity != k {
            return Err(Error::ArityMismatch {
                gate: "kraus channel",
                expected: kraus[0].arity,
                got: k,
            });
        }
        for (idx, &t) in targets.iter().enumerate() {
            self.check_qubit(t)?;
            if targets[..idx].contains(&t) {
                return Err(Error::DuplicateTargets);
            }
        }
        let sub = 1usize << k;
        // Superoperator on vec(B): M[(r,c),(a,b)] = sum_K K[r,a] conj(K[c,b])
        let sd = sub * sub;
        let mut sup = vec![C64::ZERO; sd * sd];
        for op in kraus {
            for r in 0..sub {
                for a in 0..sub {
                    let kra = op.mat[r * sub + a];
                    if kra == C64::ZERO {
                        continue;
                    }
                    for c in 0..sub {
                        for b in 0..sub {
                            sup[(r * sub + c) * sd + (a * sub + b)] +=
                                kra * op.mat[c * sub + b].conj();
                        }
                    }
                }
            }
        }
        let d = self.dim;
        let masks: Vec<usize> = targets.iter().map(|&t| 1usize << t).collect();
        let all_mask: usize = masks.iter().sum();
        let expand = |base: usize, bits: usize| -> usize {
            let mut idx = base;
            for (bit, mask) in masks.iter().enumerate() {
                if bits >> bit & 1 == 1 {
                    idx |= mask;
                }
            }
            idx
        };
        let mut block = vec![C64::ZERO; sd];
        let mut block_out = vec![C64::ZERO; sd];
        for rbase in 0..d {
            if rbase & all_mask != 0 {
                continue;
            }
            for cbase in 0..d {
                if cbase & all_mask != 0 {
                    continue;
                }
                for rs in 0..sub {
                    let row = expand(rbase, rs) * d;
                    for cs in 0..sub {
                        block[rs * sub + cs] = self.entries[row + expand(cbase, cs)];
                    }
                }
                for (i, out) in block_out.iter_mut().enumerate() {
                    let mut acc = C64::ZERO;
                    let sup_row = &sup[i * sd..(i + 1) * sd];
                    for (j, b) in block.iter().enumerate() {
                        acc += sup_row[j] * b;
                    }
                    *out = acc;
                }
                for rs in 0..sub {
                    let row = expand(rbase, rs) * d;
                    for cs in 0..sub {
                        self.entries[row + expand(cbase, cs)] = block_out[rs * sub + cs];
                    }
                }
            }
        }
        Ok(())
    }

    /// tr(rho P).
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
        let mut acc = C64::ZERO;
        for b in 0..self.dim {
            let sign = if (b & zmask).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            acc += self.entries[b * self.dim + (b ^ xmask)] * sign;
        }
        let value = p.coefficient * C64::I.powu(n_y as u32) * acc;
        if value.im.abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "expectation has imaginary part {:.3e}",
                value.im
            )));
        }
        Ok(value.re)
    }

    /// <target| rho |target>.
    pub fn fidelity_with_pure(&self, target: &StateVector) -> Result<f64> {
        if target.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                left: 1 << target.num_qubits(),
                right: self.dim,
            });
        }
        let amps = target.amplitudes();
        let mut acc = C64::ZERO;
        for r in 0..self.dim {
            if amps[r] == C64::ZERO {
                continue;
            }
            for c in 0..self.dim {
                if amps[c] == C64::ZERO {
                    continue;
                }
                acc += amps[r].conj() * self.entries[r * self.dim + c] * amps[c];
            }
        }
        if acc.im.abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "fidelity has imaginary part {:.3e}",
                acc.im
            )));
        }
        Ok(acc.re)
    }

    /// Partial trace down to `keep`; bit `k` of the result is `keep[k]`.
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
        let sub = 1usize << k;
        let env_bits: Vec<usize> = (0..self.num_qubits).filter(|q| !keep.contains(q)).collect();
        let env_count = 1usize << env_bits.len();
        let index = |s: usize, env: usize| -> usize {
            let mut idx = 0usize;
            for (bit, &q) in keep.iter().enumerate() {
                if s >> bit & 1 == 1 {
                    idx |= 1 << q;
                }
            }
            for (bit, &q) in env_bits.iter().enumerate() {
                if env >> bit & 1 == 1 {
                    idx |= 1 << q;
                }
            }
            idx
        };
        let mut entries = vec![C64::ZERO; sub * sub];
        for env in 0..env_count {
            for r in 0..sub {
                let ri = index(r, env);
                for c in 0..sub {
                    entries[r * sub + c] += self.entries[ri * self.dim + index(c, env)];
                }
            }
        }
        DensityMatrix::from_entries(k, entries)
    }

    /// Born-rule probabilities of a measured subset from the diagonal.
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
        for i in 0..self.dim {
            let w = self.entries[i * self.dim + i].re;
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
}

/// Kraus set of the identity channel on `arity` qubits.
pub fn identity_kraus(arity: usize) -> Vec<KrausOp> {
    let dim = 1usize << arity;
    let mut mat = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        mat[i * dim + i] = Complex64::ONE;
    }
    vec![KrausOp { arity, mat }]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::pauli::Pauli;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell_dm() -> DensityMatrix {
        let mut sv = StateVector::new(2).unwrap();
        let h = [
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(-FRAC_1_SQRT_2, 0.0),
        ];
        sv.apply_matrix1(&h, 0).unwrap();
        sv.apply_cnot(0, 1).unwrap();
        DensityMatrix::from_pure(&sv).unwrap()
    }

    #[test]
    fn identity_channel_is_identity() {
        let mut dm = bell_dm();
        let before = dm.clone();
        dm.apply_channel(&identity_kraus(1), &[0]).unwrap();
        assert!(before
            .entries()
            .iter()
            .zip(dm.entries())
            .all(|(a, b)| (a - b).norm() < 1e-14));
    }

    #[test]
    fn non_trace_preserving_rejected() {
        let bad = vec![KrausOp::new(1, vec![C64::ONE, C64::ZERO, C64::ZERO, C64::ZERO]).unwrap()];
        let mut dm = bell_dm();
        assert!(matches!(
            dm.apply_channel(&bad, &[0]),
            Err(Error::NonTracePreserving { .. })
        ));
    }

    #[test]
    fn validate_accepts_physical_states() {
        bell_dm().validate().unwrap();
        DensityMatrix::maximally_mixed(3)
            .unwrap()
            .validate()
            .unwrap();
    }

    #[test]
    fn validate_rejects_negative_eigenvalue() {
        // diag(1.5, -0.5) is Hermitian with unit trace but not PSD
        let entries = vec![
            C64::new(1.5, 0.0),
            C64::ZERO,
            C64::ZERO,
            C64::new(-0.5, 0.0),
        ];
        let dm = DensityMatrix::from_entries(1, entries).unwrap();
        assert!(dm.validate().is_err());
    }

    #[test]
    fn cnot_and_cz_match_pure_evolution() {
        let mut sv = StateVector::new(2).unwrap();
        let h = [
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(-FRAC_1_SQRT_2, 0.0),
        ];
        sv.apply_matrix1(&h, 0).unwrap();
        let mut dm = DensityMatrix::from_pure(&sv).unwrap();
        sv.apply_cnot(0, 1).unwrap();
        dm.apply_cnot(0, 1).unwrap();
        sv.apply_cz(0, 1).unwrap();
        dm.apply_cz(0, 1).unwrap();
        let check = DensityMatrix::from_pure(&sv).unwrap();
        assert!(dm
            .entries()
            .iter()
            .zip(check.entries())
            .all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn mixed_state_fidelity_with_bell_is_quarter() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let mut sv = StateVector::new(2).unwrap();
        let h = [
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(-FRAC_1_SQRT_2, 0.0),
        ];
        sv.apply_matrix1(&h, 0).unwrap();
        sv.apply_cnot(0, 1).unwrap();
        assert!((mixed.fidelity_with_pure(&sv).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn mixed_state_fidelity_with_ghz_matches_noise_floor() {
        // I/2^r against |GHZ_r> gives exactly 2^-r
        for r in [1usize, 3] {
            let mixed = DensityMatrix::maximally_mixed(r).unwrap();
            let h = C64::new(FRAC_1_SQRT_2, 0.0);
            let mut amps = vec![C64::ZERO; 1 << r];
            amps[0] = h;
            amps[(1 << r) - 1] = h;
            let ghz = StateVector::from_amplitudes(amps).unwrap();
            let f = mixed.fidelity_with_pure(&ghz).unwrap();
            assert!((f - 0.5f64.powi(r as i32)).abs() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn pauli_expectation_on_bell() {
        let dm = bell_dm();
        let xx = PauliString::parse("XX").unwrap();
        let yy = PauliString::parse("YY").unwrap();
        let zz = PauliString::parse("ZZ").unwrap();
        assert!((dm.expect_pauli(&xx).unwrap() - 1.0).abs() < 1e-12);
        assert!((dm.expect_pauli(&yy).unwrap() + 1.0).abs() < 1e-12);
        assert!((dm.expect_pauli(&zz).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_qubit_pauli_on_single_qubit_state() {
        let dm = DensityMatrix::new(1).unwrap();
        let z = PauliString::single(1, 0, Pauli::Z).unwrap();
        assert!((dm.expect_pauli(&z).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn channel_trace_preserved() {
        let mut dm = bell_dm();
        // bit flip with p = 0.3
        let p: f64 = 0.3;
        let k0 = KrausOp::new(
            1,
            vec![
                C64::new((1.0 - p).sqrt(), 0.0),
                C64::ZERO,
                C64::ZERO,
                C64::new((1.0 - p).sqrt(), 0.0),
            ],
        )
        .unwrap();
        let k1 = KrausOp::new(
            1,
            vec![
                C64::ZERO,
                C64::new(p.sqrt(), 0.0),
                C64::new(p.sqrt(), 0.0),
                C64::ZERO,
            ],
        )
        .unwrap();
        dm.apply_channel(&[k0, k1], &[1]).unwrap();
        assert!((dm.trace().re - 1.0).abs() < 1e-10);
        dm.validate().unwrap();
    }
}
