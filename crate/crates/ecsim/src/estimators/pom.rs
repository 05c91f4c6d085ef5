//! Parity-oscillations fidelity for GHZ states.
//!
//! 2 |GHZ_r><GHZ_r| = P + chi with the population term
//! P = |0..0><0..0| + |1..1><1..1| read from Z-basis counts, and the
//! coherence term chi = (1/r) sum_k (-1)^k M_k built from the r equatorial
//! settings M_k = [cos(k pi/r) X + sin(k pi/r) Y]^(x)r.

use std::f64::consts::PI;

use super::{FidelityEstimate, Method};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::{CountsTable, Pauli, PauliString};

/// One equatorial measurement setting M_k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PomSetting {
    pub k: usize,
    pub r: usize,
}

impl PomSetting {
    /// Equatorial angle k pi / r of the measured axis.
    pub fn axis_angle(&self) -> f64 {
        self.k as f64 * PI / self.r as f64
    }

    /// Rz angle applied to the state so that a following H maps the M_k
    /// axis onto Z. Measuring Z after Rz(theta), H reads
    /// cos(theta) X - sin(theta) Y, so the sign is flipped to make the
    /// operator identity for chi exact.
    pub fn rotation_angle(&self) -> f64 {
        -self.axis_angle()
    }
}

/// The r equatorial settings; together with the Z-basis setting the
/// protocol uses r + 1 settings in total.
pub fn pom_settings(r: usize) -> Result<Vec<PomSetting>> {
    if r == 0 {
        return Err(Error::InvalidParameter("POM needs r >= 1 qubits".into()));
    }
    Ok((1..=r).map(|k| PomSetting { k, r }).collect())
}

/// Rotate `qubits` so that a Z-basis readout measures M_k.
pub fn append_pom_rotation(c: &mut Circuit, qubits: &[usize], setting: PomSetting) -> Result<()> {
    for &q in qubits {
        c.rz(q, setting.rotation_angle())?;
        c.h(q)?;
    }
    Ok(())
}

/// M_k expanded into its 2^r Pauli strings over `qubits` of a
/// `total`-qubit register, with binomial cos/sin weights.
pub fn mk_pauli_terms(
    setting: PomSetting,
    qubits: &[usize],
    total: usize,
) -> Result<Vec<(f64, PauliString)>> {
    let r = qubits.len();
    if r != setting.r {
        return Err(Error::PauliLengthMismatch {
            expected: setting.r,
            got: r,
        });
    }
    let phi = setting.axis_angle();
    let (c, s) = (phi.cos(), phi.sin());
    let mut terms = Vec::with_capacity(1 << r);
    for mask in 0..(1usize << r) {
        let mut ops = vec![Pauli::I; total];
        let mut weight = 1.0;
        for (bit, &q) in qubits.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                ops[q] = Pauli::Y;
                weight *= s;
            } else {
                ops[q] = Pauli::X;
                weight *= c;
            }
        }
        // cos/sin of the lattice angles leave ~1e-16 residue where a factor
        // is exactly zero; dropping those keeps the expansion size honest.
        if weight.abs() > 1e-12 {
            terms.push((weight, PauliString::new(ops)));
        }
    }
    Ok(terms)
}

/// Per-setting expectation estimate from sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettingEstimate {
    pub value: f64,
    pub shots: u64,
}

/// Inputs to the sampled POM estimate.
#[derive(Debug, Clone)]
pub struct PomData {
    pub z_counts: CountsTable,
    /// E_k estimates for k = 1..r, in order.
    pub e_k: Vec<SettingEstimate>,
    pub r: usize,
}

/// F_r = (P + chi)/2 with the shot-noise variances
/// Var(P) = [p00(1-p00) + p11(1-p11)]/N and
/// Var(chi) = (1/r^2) sum (1-E_k^2)/N_k.
pub fn pom_fidelity(data: &PomData) -> Result<FidelityEstimate> {
    data.z_counts.validate()?;
    let r = data.r;
    if data.z_counts.num_bits() != r {
        return Err(Error::PauliLengthMismatch {
            expected: r,
            got: data.z_counts.num_bits(),
        });
    }
    if data.e_k.len() != r {
        return Err(Error::InvalidParameter(format!(
            "need {} setting estimates, got {}",
            r,
            data.e_k.len()
        )));
    }
    let n_z = data.z_counts.total_shots as f64;
    let zeros: String = "0".repeat(r);
    let ones: String = "1".repeat(r);
    let p00 = data.z_counts.frequency(&zeros);
    let p11 = data.z_counts.frequency(&ones);
    let population = p00 + p11;
    let var_p = (p00 * (1.0 - p00) + p11 * (1.0 - p11)) / n_z;
    let mut chi = 0.0;
    let mut var_chi = 0.0;
    for (k, est) in (1..=r).zip(&data.e_k) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        chi += sign * est.value;
        var_chi += (1.0 - est.value * est.value).max(0.0) / est.shots as f64;
    }
    chi /= r as f64;
    var_chi /= (r * r) as f64;
    Ok(FidelityEstimate {
        value: (population + chi) / 2.0,
        sigma: (var_p + var_chi).sqrt(),
        method: Method::Pom,
    })
}

/// Exact POM fidelity from a Pauli-expectation closure (statevector,
/// density, or tableau backed): expands P over even-weight Z-strings and
/// every M_k over its 2^r X/Y strings.
pub fn pom_fidelity_exact(
    mut expect: impl FnMut(&PauliString) -> Result<f64>,
    qubits: &[usize],
    total: usize,
    r: usize,
) -> Result<FidelityEstimate> {
    if r == 0 || qubits.len() != r {
        return Err(Error::InvalidParameter(
            "qubit list must match the GHZ width".into(),
        ));
    }
    // P = (1/2^{r-1}) sum over even-size Z subsets of <Z_S>
    let mut population = 0.0;
    for mask in 0..(1usize << r) {
        if !(mask as u32).count_ones().is_multiple_of(2) {
            continue;
        }
        let mut ops = vec![Pauli::I; total];
        for (bit, &q) in qubits.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                ops[q] = Pauli::Z;
            }
        }
        population += expect(&PauliString::new(ops))?;
    }
    population /= (1usize << (r - 1)) as f64;
    let mut chi = 0.0;
    for setting in pom_settings(r)? {
        let mut mk = 0.0;
        for (w, p) in mk_pauli_terms(setting, qubits, total)? {
            mk += w * expect(&p)?;
        }
        let sign = if setting.k % 2 == 0 { 1.0 } else { -1.0 };
        chi += sign * mk;
    }
    chi /= r as f64;
    Ok(FidelityEstimate {
        value: (population + chi) / 2.0,
        sigma: 0.0,
        method: Method::Exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::run_statevector;
    use crate::protocol::{ghz_prep, ghz_state};
    use crate::sim::{DensityMatrix, StateVector};

    #[test]
    fn settings_count_is_r_plus_one_with_z_basis() {
        assert_eq!(pom_settings(15).unwrap().len() + 1, 16);
        assert!(pom_settings(0).is_err());
    }

    #[test]
    fn r1_setting_measures_minus_x() {
        // k = 1, r = 1: M_1 = cos(pi) X + sin(pi) Y = -X, so E_1 on |+> is -1
        let mut c = Circuit::new(1);
        c.h(0).unwrap();
        let setting = pom_settings(1).unwrap()[0];
        append_pom_rotation(&mut c, &[0], setting).unwrap();
        let sv = run_statevector(&c).unwrap();
        let z = PauliString::parse("Z").unwrap();
        assert!((sv.expect_pauli(&z).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn r2_settings_are_yy_then_xx() {
        let settings = pom_settings(2).unwrap();
        let yy = mk_pauli_terms(settings[0], &[0, 1], 2).unwrap();
        assert_eq!(yy.len(), 1);
        assert_eq!(yy[0].1.to_string(), "YY");
        assert!((yy[0].0 - 1.0).abs() < 1e-12);
        let xx = mk_pauli_terms(settings[1], &[0, 1], 2).unwrap();
        assert_eq!(xx.len(), 1);
        assert_eq!(xx[0].1.to_string(), "XX");
        assert!((xx[0].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_pom_on_ideal_ghz_is_one() {
        for r in [2usize, 3, 4] {
            let sv = run_statevector(&ghz_prep(&(0..r).collect::<Vec<_>>()).unwrap()).unwrap();
            let qubits: Vec<usize> = (0..r).collect();
            let est = pom_fidelity_exact(|p| sv.expect_pauli(p), &qubits, r, r).unwrap();
            assert!((est.value - 1.0).abs() < 1e-12, "r = {r}: {}", est.value);
        }
    }

    #[test]
    fn exact_pom_on_mixed_state_is_floor() {
        let dm = DensityMatrix::maximally_mixed(2).unwrap();
        let est = pom_fidelity_exact(|p| dm.expect_pauli(p), &[0, 1], 2, 2).unwrap();
        assert!((est.value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn sampled_pom_on_ideal_ghz2() {
        let sv: StateVector = ghz_state(2).unwrap();
        let shots = 10_000u64;
        let z_counts = sv.sample(&[0, 1], shots, 3).unwrap();
        let mut e_k = Vec::new();
        for setting in pom_settings(2).unwrap() {
            let mut c = Circuit::new(2);
            append_pom_rotation(&mut c, &[0, 1], setting).unwrap();
            let rotated = crate::circuit::run_statevector_from(&c, sv.clone()).unwrap();
            let counts = rotated
                .sample(&[0, 1], shots, 5 + setting.k as u64)
                .unwrap();
            e_k.push(SettingEstimate {
                value: counts.parity_expectation(&[0, 1]),
                shots,
            });
        }
        let est = pom_fidelity(&PomData {
            z_counts,
            e_k,
            r: 2,
        })
        .unwrap();
        // noiseless GHZ sampling is exact in every setting
        assert!((est.value - 1.0).abs() < 3.0 * est.sigma + 1e-9);
    }

    #[test]
    fn variance_positivity() {
        let z_counts = CountsTable::from_pairs(
            [
                ("00".to_string(), 400u64),
                ("11".to_string(), 350),
                ("01".to_string(), 250),
            ],
            0,
        )
        .unwrap();
        let est = pom_fidelity(&PomData {
            z_counts,
            e_k: vec![
                SettingEstimate {
                    value: -0.5,
                    shots: 1000,
                },
                SettingEstimate {
                    value: 0.4,
                    shots: 1000,
                },
            ],
            r: 2,
        })
        .unwrap();
        assert!(est.sigma > 0.0 && est.sigma.is_finite());
    }
}
