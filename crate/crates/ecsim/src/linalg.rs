//! Small dense complex matrices.
//!
//! Backs the dense reference constructions of the protocol unitaries and the
//! validity checks on density matrices. Everything here is O(dim^3) or worse
//! and intended for registers of at most ~12 qubits.

use num_complex::Complex64;

use crate::error::{Error, Result};

type C64 = Complex64;

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![C64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::ONE;
        }
        m
    }

    pub fn from_rows(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: data.len(),
                right: dim * dim,
            });
        }
        Ok(DenseMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let d = self.dim;
        let mut out = DenseMatrix::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == C64::ZERO {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * rhs.data[k * d + c];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(DenseMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, s: C64) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> DenseMatrix {
        let d = self.dim;
        let mut out = DenseMatrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }

    /// Entry-wise transpose (no conjugation).
    pub fn transpose(&self) -> DenseMatrix {
        let d = self.dim;
        let mut out = DenseMatrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c];
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Kronecker product with `rhs` as the LOW-significance factor: the
    /// result acts on index `i_self * rhs.dim + i_rhs`.
    pub fn kron(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let d1 = self.dim;
        let d2 = rhs.dim;
        let d = d1 * d2;
        let mut out = DenseMatrix::zeros(d);
        for r1 in 0..d1 {
            for c1 in 0..d1 {
                let a = self.data[r1 * d1 + c1];
                if a == C64::ZERO {
                    continue;
                }
                for r2 in 0..d2 {
                    for c2 in 0..d2 {
                        out.data[(r1 * d2 + r2) * d + (c1 * d2 + c2)] = a * rhs.data[r2 * d2 + c2];
                    }
                }
            }
        }
        out
    }

    /// Embed an operator on `targets` into an `n`-qubit register.
    ///
    /// Bit `k` of the operator index corresponds to `targets[k]`; untouched
    /// qubits get the identity.
    pub fn embed(op: &DenseMatrix, targets: &[usize], n: usize) -> Result<DenseMatrix> {
        let k = targets.len();
        if op.dim != 1 << k {
            return Err(Error::DimensionMismatch {
                left: op.dim,
                right: 1 << k,
            });
        }
        for (idx, &t) in targets.iter().enumerate() {
            if t >= n {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    num_qubits: n,
                });
            }
            if targets[..idx].contains(&t) {
                return Err(Error::DuplicateTargets);
            }
        }
        let dim = 1usize << n;
        let sub_dim = 1usize << k;
        let mut out = DenseMatrix::zeros(dim);
        let extract = |full: usize| -> usize {
            let mut sub = 0usize;
            for (bit, &t) in targets.iter().enumerate() {
                if full >> t & 1 == 1 {
                    sub |= 1 << bit;
                }
            }
            sub
        };
        let target_mask: usize = targets.iter().map(|&t| 1usize << t).sum();
        for r in 0..dim {
            let rs = extract(r);
            let rest = r & !target_mask;
            for cs in 0..sub_dim {
                let v = op.data[rs * sub_dim + cs];
                if v == C64::ZERO {
                    continue;
                }
                let mut c = rest;
                for (bit, &t) in targets.iter().enumerate() {
                    if cs >> bit & 1 == 1 {
                        c |= 1 << t;
                    }
                }
                out.data[r * dim + c] = v;
            }
        }
        Ok(out)
    }

    /// max |a_ij - b_ij|.
    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Deviation from unitarity: max |(U†U - I)_ij|.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.dagger().mul(self).unwrap();
        prod.max_abs_diff(&DenseMatrix::identity(self.dim))
    }

    /// 1 - |tr(A†B)| / dim: zero iff A = e^{i phi} B.
    pub fn phase_distance(&self, rhs: &DenseMatrix) -> Result<f64> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let overlap = self.dagger().mul(rhs)?.trace().norm() / self.dim as f64;
        Ok(1.0 - overlap)
    }

    /// A |v> for a column vector.
    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: v.len(),
                right: self.dim,
            });
        }
        let d = self.dim;
        Ok((0..d)
            .map(|r| (0..d).map(|c| self.data[r * d + c] * v[c]).sum())
            .collect())
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Returns eigenvalues sorted ascending. Intended for the small matrices that
/// appear in density-matrix validity checks.
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Vec<f64> {
    let d = m.dim;
    let mut a = m.data.clone();
    let idx = |r: usize, c: usize| r * d + c;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for r in 0..d {
            for c in r + 1..d {
                off += a[idx(r, c)].norm_sqr();
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[idx(p, q)];
                if apq.norm_sqr() < 1e-30 {
                    continue;
                }
                let app = a[idx(p, p)].re;
                let aqq = a[idx(q, q)].re;
                // Unitarize the 2x2 block: a_pq = |a_pq| e^{i phi}
                let abs = apq.norm();
                let phase = apq / abs;
                let theta = 0.5 * (2.0 * abs).atan2(aqq - app);
                let (s, c) = theta.sin_cos();
                let cp = C64::new(c, 0.0);
                let sp = phase * s;
                // Rotation G: columns p,q -> (c, -conj(s*phase); s*phase, c)
                for r in 0..d {
                    let arp = a[idx(r, p)];
                    let arq = a[idx(r, q)];
                    a[idx(r, p)] = arp * cp - arq * sp.conj();
                    a[idx(r, q)] = arp * sp + arq * cp;
                }
                for col in 0..d {
                    let apc = a[idx(p, col)];
                    let aqc = a[idx(q, col)];
                    a[idx(p, col)] = apc * cp - aqc * sp;
                    a[idx(q, col)] = apc * sp.conj() + aqc * cp;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..d).map(|i| a[idx(i, i)].re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_places_rhs_in_low_bits() {
        // X kron I acting on index (hi*2 + lo): X on the high factor
        let x =
            DenseMatrix::from_rows(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let i2 = DenseMatrix::identity(2);
        let xi = x.kron(&i2);
        assert_eq!(xi.get(0, 2), C64::ONE);
        assert_eq!(xi.get(1, 3), C64::ONE);
    }

    #[test]
    fn embed_matches_kron() {
        let x =
            DenseMatrix::from_rows(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let i2 = DenseMatrix::identity(2);
        // X on qubit 1 of 2 = (X kron I) with qubit 1 as the high bit
        let embedded = DenseMatrix::embed(&x, &[1], 2).unwrap();
        assert_eq!(embedded.data(), x.kron(&i2).data());
    }

    #[test]
    fn jacobi_eigenvalues_of_pauli_y() {
        let y =
            DenseMatrix::from_rows(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let eigs = hermitian_eigenvalues(&y);
        assert!((eigs[0] + 1.0).abs() < 1e-10);
        assert!((eigs[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn jacobi_eigenvalues_of_projector() {
        // |+><+| has eigenvalues {0, 1}
        let h = 0.5;
        let m = DenseMatrix::from_rows(2, vec![c(h, 0.), c(h, 0.), c(h, 0.), c(h, 0.)]).unwrap();
        let eigs = hermitian_eigenvalues(&m);
        assert!(eigs[0].abs() < 1e-10);
        assert!((eigs[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn phase_distance_detects_global_phase() {
        let u = DenseMatrix::identity(4);
        let v = u.scale(C64::from_polar(1.0, 1.234));
        assert!(u.phase_distance(&v).unwrap() < 1e-12);
        let x = DenseMatrix::embed(
            &DenseMatrix::from_rows(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap(),
            &[0],
            2,
        )
        .unwrap();
        assert!(u.phase_distance(&x).unwrap() > 0.5);
    }
}
