//! Noisy circuit execution.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kraus::{depolarizing_kraus, idle_kraus, idle_pauli_probs, idle_twirled_kraus};
use crate::circuit::{layers, Circuit, Gate, GateDurations};
use crate::error::{Error, Result};
use crate::sim::{derive_seed, CountsTable, DensityMatrix, KrausOp, Pauli, PauliString, Tableau};

/// Noise-model configuration.
///
/// `p2q` is the depolarizing probability after each two-qubit gate, `p1q`
/// the (default off) single-qubit analogue; T1/T2 drive idle decay per
/// scheduled layer. All values are configuration defaults standing in for
/// uncalibrated hardware, not ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseParams {
    pub p2q: f64,
    pub p1q: f64,
    pub t1_us: f64,
    pub t2_us: f64,
    pub durations: GateDurations,
    /// Trajectory count for the stochastic backend.
    pub trajectories: usize,
    /// Use the Pauli-twirled idle channel on the density path too (for
    /// cross-checks against the trajectory backend).
    pub twirl_idle: bool,
}

impl Default for NoiseParams {
    fn default() -> Self {
        NoiseParams {
            p2q: 0.003,
            p1q: 0.0,
            t1_us: 263.0,
            t2_us: 149.0,
            durations: GateDurations::default(),
            trajectories: 500,
            twirl_idle: false,
        }
    }
}

impl NoiseParams {
    /// All noise off (infinite coherence, zero gate error).
    pub fn noiseless() -> Self {
        NoiseParams {
            p2q: 0.0,
            p1q: 0.0,
            t1_us: f64::INFINITY,
            t2_us: f64::INFINITY,
            ..NoiseParams::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p2q) {
            return Err(Error::InvalidProbability(self.p2q));
        }
        if !(0.0..=1.0).contains(&self.p1q) {
            return Err(Error::InvalidProbability(self.p1q));
        }
        if self.t1_us <= 0.0 || self.t2_us <= 0.0 {
            return Err(Error::InvalidParameter(
                "relaxation times must be positive".into(),
            ));
        }
        if self.t2_us > 2.0 * self.t1_us {
            return Err(Error::InvalidRelaxation {
                t1: self.t1_us,
                t2: self.t2_us,
            });
        }
        if self.trajectories == 0 {
            return Err(Error::InvalidParameter(
                "need at least one trajectory".into(),
            ));
        }
        Ok(())
    }

    fn has_idle_noise(&self) -> bool {
        self.t1_us.is_finite() || self.t2_us.is_finite()
    }
}

/// Mean and standard error of a trajectory-averaged quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryStats {
    pub mean: f64,
    pub std_error: f64,
}

struct LayerPlan {
    duration: f64,
    /// (op index, busy time) per gate in the layer.
    ops: Vec<usize>,
}

fn plan_layers(c: &Circuit, durations: &GateDurations) -> Vec<LayerPlan> {
    layers(c)
        .into_iter()
        .map(|ops| {
            let duration = ops
                .iter()
                .map(|&i| durations.duration_of(&c.ops()[i].gate))
                .fold(0.0, f64::max);
            LayerPlan { duration, ops }
        })
        .collect()
}

/// Busy time a gate occupies on its qubits; IDLE is pure idling.
fn busy_time(gate: &Gate, durations: &GateDurations) -> f64 {
    match gate {
        Gate::Idle(_) => 0.0,
        g => durations.duration_of(g),
    }
}

/// Evolve the circuit with depolarizing gate noise and idle decay on the
/// density-matrix backend (deterministic; at most 13 qubits).
///
/// MEASURE freezes a qubit: its marginal stops evolving, which reproduces
/// the statistics of reading it out mid-circuit and holding the record.
pub fn execute_density(c: &Circuit, params: &NoiseParams) -> Result<DensityMatrix> {
    params.validate()?;
    let n = c.num_qubits();
    let mut dm = DensityMatrix::new(n)?;
    let sched = plan_layers(c, &params.durations);
    let depol2 = if params.p2q > 0.0 {
        Some(depolarizing_kraus(params.p2q, 2)?)
    } else {
        None
    };
    let depol1 = if params.p1q > 0.0 {
        Some(depolarizing_kraus(params.p1q, 1)?)
    } else {
        None
    };
    let mut idle_cache: Vec<(u64, Vec<KrausOp>)> = Vec::new();
    let mut measured = vec![false; n];
    for layer in &sched {
        let mut busy = vec![0.0f64; n];
        for &idx in &layer.ops {
            let op = &c.ops()[idx];
            let b = busy_time(&op.gate, &params.durations);
            for &q in &op.targets {
                busy[q] = b;
            }
            match &op.gate {
                Gate::Measure => {
                    measured[op.targets[0]] = true;
                    busy[op.targets[0]] = layer.duration;
                }
                Gate::Idle(_) => {}
                Gate::Cnot => {
                    dm.apply_cnot(op.targets[0], op.targets[1])?;
                    if let Some(k) = &depol2 {
                        dm.apply_channel(k, &op.targets)?;
                    }
                }
                Gate::Cz => {
                    dm.apply_cz(op.targets[0], op.targets[1])?;
                    if let Some(k) = &depol2 {
                        dm.apply_channel(k, &op.targets)?;
                    }
                }
                g => {
                    let m = g.matrix1().expect("single-qubit unitary");
                    dm.apply_matrix1(&m, op.targets[0])?;
                    if let Some(k) = &depol1 {
                        dm.apply_channel(k, &op.targets)?;
                    }
                }
            }
        }
        if !params.has_idle_noise() {
            continue;
        }
        for q in 0..n {
            if measured[q] {
                continue;
            }
            let idle_t = layer.duration - busy[q];
            if idle_t <= 0.0 {
                continue;
            }
            let key = idle_t.to_bits();
            let kraus = match idle_cache.iter().find(|(k, _)| *k == key) {
                Some((_, k)) => k.clone(),
                None => {
                    let k = if params.twirl_idle {
                        idle_twirled_kraus(params.t1_us, params.t2_us, idle_t)?
                    } else {
                        idle_kraus(params.t1_us, params.t2_us, idle_t)?
                    };
                    idle_cache.push((key, k.clone()));
                    k
                }
            };
            dm.apply_channel(&kraus, &[q])?;
        }
    }
    Ok(dm)
}

/// One stochastic-Pauli trajectory of a Clifford circuit.
fn run_trajectory(
    c: &Circuit,
    params: &NoiseParams,
    sched: &[LayerPlan],
    rng: &mut impl Rng,
) -> Result<Tableau> {
    let n = c.num_qubits();
    let mut tab = Tableau::new(n)?;
    let mut measured = vec![false; n];
    let paulis = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    for layer in sched {
        let mut busy = vec![0.0f64; n];
        for &idx in &layer.ops {
            let op = &c.ops()[idx];
            let b = busy_time(&op.gate, &params.durations);
            for &q in &op.targets {
                busy[q] = b;
            }
            if op.gate == Gate::Measure {
                measured[op.targets[0]] = true;
                busy[op.targets[0]] = layer.duration;
            }
            crate::circuit::apply_gate_to_tableau(&op.gate, &op.targets, &mut tab)?;
            let p_err = if op.gate.is_two_qubit() {
                params.p2q
            } else if matches!(op.gate, Gate::Idle(_) | Gate::Measure) {
                0.0
            } else {
                params.p1q
            };
            if p_err > 0.0 && rng.random::<f64>() < p_err {
                for &q in &op.targets {
                    tab.apply_pauli(q, paulis[rng.random_range(0..4)])?;
                }
            }
        }
        if !params.has_idle_noise() {
            continue;
        }
        for q in 0..n {
            if measured[q] {
                continue;
            }
            let idle_t = layer.duration - busy[q];
            if idle_t <= 0.0 {
                continue;
            }
            let probs = idle_pauli_probs(params.t1_us, params.t2_us, idle_t)?;
            let draw: f64 = rng.random();
            let mut cum = 0.0;
            for (p, w) in paulis.iter().zip(probs.iter()) {
                cum += w;
                if draw < cum {
                    tab.apply_pauli(q, *p)?;
                    break;
                }
            }
        }
    }
    Ok(tab)
}

/// Average exact Pauli expectations over stochastic trajectories.
///
/// The circuit must be Clifford; idle decay uses the Pauli-twirled channel.
/// Deterministic for a fixed seed, with per-trajectory seeds derived from
/// the master seed so trajectories are independent streams.
pub fn execute_trajectories_expect(
    c: &Circuit,
    params: &NoiseParams,
    paulis: &[PauliString],
    seed: u64,
) -> Result<Vec<TrajectoryStats>> {
    params.validate()?;
    let sched = plan_layers(c, &params.durations);
    let t = params.trajectories;
    let mut sums = vec![0.0f64; paulis.len()];
    let mut sq_sums = vec![0.0f64; paulis.len()];
    for k in 0..t {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, k as u64));
        let tab = run_trajectory(c, params, &sched, &mut rng)?;
        for (i, p) in paulis.iter().enumerate() {
            let v = tab.expect_pauli(p)?;
            sums[i] += v;
            sq_sums[i] += v * v;
        }
    }
    Ok((0..paulis.len())
        .map(|i| {
            let mean = sums[i] / t as f64;
            let var = (sq_sums[i] / t as f64 - mean * mean).max(0.0);
            TrajectoryStats {
                mean,
                std_error: (var / t as f64).sqrt(),
            }
        })
        .collect())
}

/// Trajectory statistics of an arbitrary functional of the final tableau
/// (e.g. a fidelity assembled from several expectations).
pub fn execute_trajectories_stat(
    c: &Circuit,
    params: &NoiseParams,
    seed: u64,
    mut f: impl FnMut(&Tableau) -> Result<f64>,
) -> Result<TrajectoryStats> {
    params.validate()?;
    let sched = plan_layers(c, &params.durations);
    let t = params.trajectories;
    let mut sum = 0.0;
    let mut sq_sum = 0.0;
    for k in 0..t {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, k as u64));
        let tab = run_trajectory(c, params, &sched, &mut rng)?;
        let v = f(&tab)?;
        sum += v;
        sq_sum += v * v;
    }
    let mean = sum / t as f64;
    let var = (sq_sum / t as f64 - mean * mean).max(0.0);
    Ok(TrajectoryStats {
        mean,
        std_error: (var / t as f64).sqrt(),
    })
}

/// Sample outcomes with one fresh trajectory per shot.
pub fn execute_trajectories_sample(
    c: &Circuit,
    params: &NoiseParams,
    qubits: &[usize],
    shots: u64,
    seed: u64,
) -> Result<CountsTable> {
    params.validate()?;
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let sched = plan_layers(c, &params.durations);
    let mut pairs = Vec::with_capacity(shots as usize);
    for shot in 0..shots {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, shot));
        let mut tab = run_trajectory(c, params, &sched, &mut rng)?;
        let key: String = qubits
            .iter()
            .map(|&q| {
                if tab.measure(q, &mut rng).unwrap() {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        pairs.push((key, 1u64));
    }
    CountsTable::from_pairs(pairs, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::bell_state;

    fn bell_circuit() -> Circuit {
        let mut c = Circuit::new(2);
        c.h(0).unwrap();
        c.cnot(0, 1).unwrap();
        c
    }

    #[test]
    fn noise_off_matches_pure_evolution() {
        let c = bell_circuit();
        let dm = execute_density(&c, &NoiseParams::noiseless()).unwrap();
        let f = dm.fidelity_with_pure(&bell_state()).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn small_p2q_gives_first_order_fidelity_loss() {
        let p = 0.01;
        let params = NoiseParams {
            p2q: p,
            t1_us: f64::INFINITY,
            t2_us: f64::INFINITY,
            ..NoiseParams::default()
        };
        let dm = execute_density(&bell_circuit(), &params).unwrap();
        let f = dm.fidelity_with_pure(&bell_state()).unwrap();
        assert!(f < 1.0);
        // one two-qubit gate: F = 1 - p + p/4 * (1 + <stabilizer terms>) >= 1 - p
        assert!(f >= 1.0 - p, "f = {f}");
    }

    #[test]
    fn full_depolarizing_hits_the_floor() {
        let params = NoiseParams {
            p2q: 1.0,
            t1_us: f64::INFINITY,
            t2_us: f64::INFINITY,
            ..NoiseParams::default()
        };
        let dm = execute_density(&bell_circuit(), &params).unwrap();
        let f = dm.fidelity_with_pure(&bell_state()).unwrap();
        assert!((f - 0.25).abs() < 0.01);
    }

    #[test]
    fn trajectories_are_deterministic_per_seed() {
        let params = NoiseParams {
            p2q: 0.5,
            trajectories: 200,
            ..NoiseParams::default()
        };
        let paulis = vec![PauliString::parse("XX").unwrap()];
        let a = execute_trajectories_expect(&bell_circuit(), &params, &paulis, 7).unwrap();
        let b = execute_trajectories_expect(&bell_circuit(), &params, &paulis, 7).unwrap();
        assert_eq!(a, b);
        // at p2q = 0.5 some trajectory certainly picked up an error
        assert!(a[0].mean < 1.0);
    }

    #[test]
    fn trajectory_rejects_non_clifford() {
        let mut c = Circuit::new(1);
        c.rz(0, 0.3).unwrap();
        let err = execute_trajectories_expect(
            &c,
            &NoiseParams::default(),
            &[PauliString::parse("Z").unwrap()],
            0,
        );
        assert!(matches!(err, Err(Error::NonClifford(_))));
    }

    #[test]
    fn trajectory_agrees_with_twirled_density() {
        // Clifford circuit with idle windows; density path twirled so both
        // models are identical channels.
        let mut c = Circuit::new(3);
        c.h(0).unwrap();
        c.cnot(0, 1).unwrap();
        c.idle(2, 5.0).unwrap();
        c.cnot(1, 2).unwrap();
        c.h(2).unwrap();
        let params = NoiseParams {
            p2q: 0.05,
            twirl_idle: true,
            trajectories: 4000,
            ..NoiseParams::default()
        };
        let dm = execute_density(&c, &params).unwrap();
        let obs: Vec<PauliString> = ["ZZI", "XXI", "IZZ", "IIX"]
            .iter()
            .map(|s| PauliString::parse(s).unwrap())
            .collect();
        let stats = execute_trajectories_expect(&c, &params, &obs, 13).unwrap();
        for (p, st) in obs.iter().zip(&stats) {
            let exact = dm.expect_pauli(p).unwrap();
            let tol = 4.0 * st.std_error.max(1e-3);
            assert!(
                (st.mean - exact).abs() <= tol,
                "{}: trajectory {} vs density {exact} (tol {tol})",
                p,
                st.mean
            );
        }
    }
}
