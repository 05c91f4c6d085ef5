//! Shot-count tables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Measurement outcomes from repeated sampling.
///
/// Keys are bitstrings whose character at position `k` is the outcome of the
/// `k`-th measured qubit, in the order the qubits were passed to the sampler.
/// A `BTreeMap` keeps iteration deterministic for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsTable {
    pub counts: BTreeMap<String, u64>,
    pub total_shots: u64,
    pub seed: u64,
}

impl CountsTable {
    pub fn new(counts: BTreeMap<String, u64>, seed: u64) -> Result<Self> {
        let total_shots = counts.values().sum();
        let table = CountsTable {
            counts,
            total_shots,
            seed,
        };
        table.validate()?;
        Ok(table)
    }

    /// From (bitstring, count) pairs; duplicate keys accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (String, u64)>>(pairs: I, seed: u64) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (k, v) in pairs {
            *counts.entry(k).or_insert(0) += v;
        }
        CountsTable::new(counts, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.counts.is_empty() {
            return Err(Error::EmptyCounts);
        }
        let len = self.counts.keys().next().map(|k| k.len()).unwrap_or(0);
        for key in self.counts.keys() {
            if key.len() != len || key.chars().any(|c| c != '0' && c != '1') {
                return Err(Error::InvalidParameter(format!(
                    "malformed outcome key '{key}'"
                )));
            }
        }
        if self.counts.values().sum::<u64>() != self.total_shots {
            return Err(Error::InvalidParameter(
                "counts do not sum to total_shots".into(),
            ));
        }
        Ok(())
    }

    /// Number of measured qubits (key length).
    pub fn num_bits(&self) -> usize {
        self.counts.keys().next().map(|k| k.len()).unwrap_or(0)
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// Empirical frequency of an outcome.
    pub fn frequency(&self, key: &str) -> f64 {
        self.count(key) as f64 / self.total_shots as f64
    }

    /// Expectation of a +/-1 parity observable over a subset of bit positions.
    pub fn parity_expectation(&self, positions: &[usize]) -> f64 {
        let mut acc = 0.0;
        for (key, &n) in &self.counts {
            let bytes = key.as_bytes();
            let ones = positions.iter().filter(|&&p| bytes[p] == b'1').count();
            let sign = if ones % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * n as f64;
        }
        acc / self.total_shots as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_and_frequencies() {
        let t = CountsTable::from_pairs([("00".into(), 750u64), ("11".into(), 250u64)], 1).unwrap();
        assert_eq!(t.total_shots, 1000);
        assert_eq!(t.num_bits(), 2);
        assert!((t.frequency("00") - 0.75).abs() < 1e-12);
        assert_eq!(t.count("01"), 0);
    }

    #[test]
    fn parity_over_positions() {
        let t = CountsTable::from_pairs([("01".into(), 600u64), ("10".into(), 400u64)], 0).unwrap();
        // both keys have odd total parity
        assert!((t.parity_expectation(&[0, 1]) + 1.0).abs() < 1e-12);
        // first bit: 0 with 600, 1 with 400
        assert!((t.parity_expectation(&[0]) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn malformed_keys_rejected() {
        assert!(CountsTable::from_pairs([("0x".into(), 1u64)], 0).is_err());
        assert!(CountsTable::from_pairs([("0".into(), 1u64), ("00".into(), 1u64)], 0).is_err());
    }
}
