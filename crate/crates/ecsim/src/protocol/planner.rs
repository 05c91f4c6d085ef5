//! Iterated-cloning planner.
//!
//! Iterating the protocol with even n lets the original qubit count as a
//! clone, so each application turns one clone into n + 1. After l
//! iterations the clone count is (n+1)^(l+1) while a single decryption path
//! only consumes n noise qubits per traversed level, n(l+1) in total.

use super::builders::{append_bell_prep, append_decryption, append_encryption};
use super::layout::{QubitLayout, Role};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// How each generation is re-cloned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Every clone of every generation is re-cloned.
    Full,
    /// Only the tracked clone is re-cloned; the other clones of the final
    /// count are "virtual".
    SingleBranch,
    /// Full for l iterations, then one partial generation re-cloning
    /// `recloned` of the current clones (the tracked clone first).
    Hybrid { recloned: usize },
}

impl Strategy {
    pub fn label(&self) -> String {
        match self {
            Strategy::Full => "full".to_string(),
            Strategy::SingleBranch => "single-branch".to_string(),
            Strategy::Hybrid { recloned } => format!("hybrid-{recloned}"),
        }
    }
}

/// One level of the nested decryption, applied to the final clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecryptStep {
    /// Physical qubit holding the encrypted state at this level (the final
    /// clone; it inherits each parent state as decryption walks outward).
    pub signal: usize,
    /// Role index of the clone within its group (always 1: the tracked
    /// lineage follows the first signal qubit).
    pub j: usize,
    /// The n noise qubits of this level's group.
    pub noise: Vec<usize>,
}

/// A fully laid-out iterated-cloning run.
#[derive(Debug, Clone)]
pub struct IterationPlan {
    pub n: usize,
    pub l: usize,
    pub strategy: Strategy,
    pub total_qubits: usize,
    /// Physically realized clones.
    pub clone_count: usize,
    /// (n+1)^(l+1): what the full strategy would have produced.
    pub virtual_clones: usize,
    /// Noise qubits consumed by decrypting the tracked clone.
    pub key_size: usize,
    pub layout: QubitLayout,
    pub ancilla: usize,
    pub original: usize,
    /// The tracked final clone that gets decrypted.
    pub decrypted: usize,
    prep: Circuit,
    /// Innermost level first.
    pub decrypt_steps: Vec<DecryptStep>,
}

impl IterationPlan {
    /// Bell preparations plus all encryption applications.
    pub fn prep_circuit(&self) -> &Circuit {
        &self.prep
    }

    /// The nested decryption of the tracked clone, innermost level first.
    pub fn decryption_circuit(&self) -> Result<Circuit> {
        let mut c = Circuit::new(self.total_qubits);
        for step in &self.decrypt_steps {
            let n_j = step.noise[step.j - 1];
            let others: Vec<usize> = step
                .noise
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != step.j - 1)
                .map(|(_, &q)| q)
                .collect();
            append_decryption(&mut c, step.signal, n_j, &others)?;
        }
        Ok(c)
    }

    /// Preparation, encryption, and decryption in one circuit.
    pub fn full_circuit(&self) -> Result<Circuit> {
        let mut c = self.prep.clone();
        c.append(&self.decryption_circuit()?)?;
        Ok(c)
    }

    pub fn fits(&self, max_qubits: usize) -> bool {
        self.total_qubits <= max_qubits
    }

    /// Plan serialization: layout header plus the full circuit text.
    pub fn to_text(&self) -> Result<String> {
        Ok(format!(
            "{}{}",
            self.layout.header(),
            self.full_circuit()?.to_text()
        ))
    }
}

/// Lay out `l` iterations of the n-clone protocol (n even, so the original
/// counts as a clone) plus one Bell-paired ancilla.
pub fn plan_iterated(n: usize, l: usize, strategy: Strategy) -> Result<IterationPlan> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "iteration requires even n >= 2, got {n}"
        )));
    }
    let per_level = n + 1;
    let full_count = per_level.checked_pow(l as u32 + 1).ok_or_else(|| {
        Error::InvalidParameter(format!("clone count (n+1)^(l+1) overflows for l = {l}"))
    })?;
    let (total_qubits, clone_count, levels) = match strategy {
        Strategy::Full => (2 * full_count, full_count, l + 1),
        Strategy::SingleBranch => (2 + 2 * n * (l + 1), per_level + l * n, l + 1),
        Strategy::Hybrid { recloned } => {
            if recloned == 0 || recloned > full_count {
                return Err(Error::InvalidParameter(format!(
                    "hybrid subset {recloned} outside 1..={full_count}"
                )));
            }
            (
                2 * full_count + 2 * n * recloned,
                full_count + n * recloned,
                l + 2,
            )
        }
    };
    // Dual accounting is only meaningful when clones stay virtual.
    let virtual_clones = match strategy {
        Strategy::SingleBranch => full_count,
        _ => clone_count,
    };
    let key_size = n * levels;

    let mut roles = vec![Role::Ancilla, Role::Original];
    let mut prep = Circuit::new(total_qubits);
    append_bell_prep(&mut prep, 0, 1)?;
    let mut alloc = 2usize;
    let mut current_gen = vec![1usize]; // the original qubit
    let mut tracked = 1usize;
    let mut lineage: Vec<Vec<usize>> = Vec::new(); // noise groups along the tracked path

    for level in 1..=levels {
        let apply_to: Vec<usize> = match strategy {
            Strategy::SingleBranch => vec![tracked],
            Strategy::Full => current_gen.clone(),
            Strategy::Hybrid { recloned } => {
                if level <= l + 1 {
                    current_gen.clone()
                } else {
                    // Partial generation: tracked clone first, then others.
                    let mut chosen = vec![tracked];
                    chosen.extend(
                        current_gen
                            .iter()
                            .filter(|&&q| q != tracked)
                            .take(recloned - 1),
                    );
                    chosen
                }
            }
        };
        let mut next_gen: Vec<usize> = current_gen
            .iter()
            .filter(|q| !apply_to.contains(q))
            .copied()
            .collect();
        let mut index_in_level = 0u32;
        for &parent in &apply_to {
            let signals: Vec<usize> = (0..n).map(|k| alloc + k).collect();
            let noises: Vec<usize> = (0..n).map(|k| alloc + n + k).collect();
            alloc += 2 * n;
            for k in 0..n as u32 {
                roles.push(Role::Signal {
                    level: level as u32,
                    index: index_in_level + k + 1,
                });
            }
            for k in 0..n as u32 {
                roles.push(Role::Noise {
                    level: level as u32,
                    index: index_in_level + k + 1,
                });
            }
            index_in_level += n as u32;
            for k in 0..n {
                append_bell_prep(&mut prep, signals[k], noises[k])?;
            }
            append_encryption(&mut prep, parent, &signals)?;
            if parent == tracked {
                lineage.push(noises.clone());
                tracked = signals[0];
            }
            next_gen.push(parent);
            next_gen.extend(&signals);
        }
        current_gen = next_gen;
    }
    debug_assert_eq!(alloc, total_qubits);
    debug_assert_eq!(current_gen.len(), clone_count);
    debug_assert_eq!(lineage.len(), levels);

    let decrypt_steps: Vec<DecryptStep> = lineage
        .into_iter()
        .rev()
        .map(|noise| DecryptStep {
            signal: tracked,
            j: 1,
            noise,
        })
        .collect();

    Ok(IterationPlan {
        n,
        l,
        strategy,
        total_qubits,
        clone_count,
        virtual_clones,
        key_size,
        layout: QubitLayout::from_roles(roles, n),
        ancilla: 0,
        original: 1,
        decrypted: tracked,
        prep,
        decrypt_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_laws_for_even_n() {
        for n in [2usize, 4, 6] {
            for l in 0..=4 {
                let plan = plan_iterated(n, l, Strategy::Full).unwrap();
                assert_eq!(plan.clone_count, (n + 1).pow(l as u32 + 1));
                assert_eq!(plan.key_size, n * (l + 1));
                assert_eq!(plan.total_qubits, 2 * plan.clone_count);
            }
        }
    }

    #[test]
    fn extended_data_qubit_totals() {
        // n = 2 rows: 6 / 18 / 54 qubits, 3 / 9 / 27 clones
        for (l, qubits, clones) in [(0, 6, 3), (1, 18, 9), (2, 54, 27)] {
            let plan = plan_iterated(2, l, Strategy::Full).unwrap();
            assert_eq!(plan.total_qubits, qubits);
            assert_eq!(plan.clone_count, clones);
        }
    }

    #[test]
    fn single_branch_virtual_accounting() {
        // n = 2, l = 5: 26 qubits, 729 virtual clones
        let plan = plan_iterated(2, 5, Strategy::SingleBranch).unwrap();
        assert_eq!(plan.total_qubits, 26);
        assert_eq!(plan.virtual_clones, 729);
        assert_eq!(plan.key_size, 12);
        assert_eq!(plan.clone_count, 3 + 5 * 2);
    }

    #[test]
    fn hybrid_fills_the_chip() {
        // Full l = 2 (27 clones) plus 25 re-cloned: 77 clones on 154 qubits
        let plan = plan_iterated(2, 2, Strategy::Hybrid { recloned: 25 }).unwrap();
        assert_eq!(plan.total_qubits, 154);
        assert_eq!(plan.clone_count, 77);
        // and the 2* analogue: 11 re-cloned of 27 -> 49 clones on 98 qubits
        let plan = plan_iterated(2, 2, Strategy::Hybrid { recloned: 11 }).unwrap();
        assert_eq!(plan.total_qubits, 98);
        assert_eq!(plan.clone_count, 49);
    }

    #[test]
    fn odd_n_rejected() {
        assert!(plan_iterated(3, 1, Strategy::Full).is_err());
    }

    #[test]
    fn decrypt_path_has_one_step_per_level() {
        let plan = plan_iterated(2, 2, Strategy::Full).unwrap();
        assert_eq!(plan.decrypt_steps.len(), 3);
        for step in &plan.decrypt_steps {
            assert_eq!(step.noise.len(), 2);
            assert_eq!(step.signal, plan.decrypted);
        }
    }

    #[test]
    fn plan_circuits_are_clifford() {
        let plan = plan_iterated(2, 1, Strategy::Full).unwrap();
        assert!(crate::circuit::is_clifford_circuit(
            &plan.full_circuit().unwrap()
        ));
    }
}
