//! Layer scheduling, two-qubit depth metrics, and wall-clock duration.

use super::{Circuit, Gate};
use crate::error::Result;

/// Per-kind gate durations in microseconds.
///
/// Defaults reproduce the scales reported for Heron-class devices: 68 ns
/// two-qubit gates, 32 ns single-qubit gates, 3 us measurement. These are
/// configuration defaults, not calibration data.
#[derive(Debug, Clone, PartialEq)]
pub struct GateDurations {
    pub single_us: f64,
    pub two_qubit_us: f64,
    pub measure_us: f64,
}

impl Default for GateDurations {
    fn default() -> Self {
        GateDurations {
            single_us: 0.032,
            two_qubit_us: 0.068,
            measure_us: 3.0,
        }
    }
}

impl GateDurations {
    /// Duration of one gate in microseconds.
    pub fn duration_of(&self, gate: &Gate) -> f64 {
        match gate {
            Gate::Idle(d) => *d,
            Gate::Measure => self.measure_us,
            Gate::Cnot | Gate::Cz => self.two_qubit_us,
            _ => self.single_us,
        }
    }
}

/// Depth and duration metrics of a circuit under greedy ASAP scheduling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerMetrics {
    /// Number of layers containing at least one two-qubit gate.
    pub two_qubit_layers: usize,
    /// Total number of two-qubit gates.
    pub two_qubit_gates: usize,
    /// Sum of per-layer maximum durations, microseconds.
    pub total_duration: f64,
}

/// Greedy as-soon-as-possible layering: each op lands in the earliest layer
/// after every layer already using one of its qubits.
///
/// MEASURE is a synchronization point: it opens a measurement window no
/// earlier than everything before it, consecutive measurements share the
/// window (simultaneous readout), and later ops start after it. Unmeasured
/// qubits therefore idle for the window's duration, which is what
/// distinguishes the measurement-ordering scenarios.
///
/// Returns op indices grouped by layer; no layer touches a qubit twice.
pub fn layers(c: &Circuit) -> Vec<Vec<usize>> {
    let mut frontier = vec![0usize; c.num_qubits()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut barrier = 0usize;
    let mut window: Option<usize> = None;
    for (idx, op) in c.ops().iter().enumerate() {
        let own = op.targets.iter().map(|&q| frontier[q]).max().unwrap_or(0);
        let layer = if op.gate == Gate::Measure {
            let layer = match window {
                // joining an open window bypasses the barrier it raised
                Some(w) => own.max(w),
                None => own
                    .max(barrier)
                    .max(frontier.iter().copied().max().unwrap_or(0)),
            };
            if window.is_none() {
                window = Some(layer);
            }
            barrier = barrier.max(layer + 1);
            layer
        } else {
            window = None;
            own.max(barrier)
        };
        while layer >= out.len() {
            out.push(Vec::new());
        }
        out[layer].push(idx);
        for &q in &op.targets {
            frontier[q] = layer + 1;
        }
    }
    out
}

/// Two-qubit layer count, two-qubit gate count, and total duration.
pub fn layer_metrics(c: &Circuit, durations: &GateDurations) -> LayerMetrics {
    let sched = layers(c);
    let mut two_qubit_layers = 0;
    let mut two_qubit_gates = 0;
    let mut total = 0.0;
    for layer in &sched {
        let mut has_2q = false;
        let mut max_d: f64 = 0.0;
        for &idx in layer {
            let op = &c.ops()[idx];
            if op.gate.is_two_qubit() {
                has_2q = true;
                two_qubit_gates += 1;
            }
            max_d = max_d.max(durations.duration_of(&op.gate));
        }
        if has_2q {
            two_qubit_layers += 1;
        }
        total += max_d;
    }
    LayerMetrics {
        two_qubit_layers,
        two_qubit_gates,
        total_duration: total,
    }
}

/// Total circuit duration in microseconds under the given timing table.
pub fn total_duration(c: &Circuit, durations: &GateDurations) -> Result<f64> {
    Ok(layer_metrics(c, durations).total_duration)
}
