//! Measurement-based figures of merit.
//!
//! Two independent fidelity estimators — the Bell-state measurement (BSM)
//! and the parity oscillations method (POM) — plus the CHSH parameter and
//! the witness / noise-floor classification. Sampled estimators carry the
//! binomial standard deviation sqrt(F(1-F)/N) (sign-corrected relative to
//! the printed F(F-1)/N form, which is negative).

mod bsm;
mod chsh;
mod pom;

pub use bsm::{append_bsm, bell_fidelity_from_correlators, bsm_fidelity};
pub use chsh::{
    append_chsh_rotation, chsh_from_pauli_expectations, chsh_sampled, chsh_settings, AliceBasis,
    BobBasis, CHSHEstimate, Scenario,
};
pub use pom::{
    append_pom_rotation, mk_pauli_terms, pom_fidelity, pom_fidelity_exact, pom_settings, PomData,
    PomSetting, SettingEstimate,
};

/// How a fidelity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Bsm,
    Pom,
    Exact,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Bsm => "bsm",
            Method::Pom => "pom",
            Method::Exact => "exact",
        }
    }
}

/// A fidelity value with its statistical standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityEstimate {
    pub value: f64,
    pub sigma: f64,
    pub method: Method,
}

/// Entanglement-witness / noise-floor classification of a GHZ_r fidelity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// F > 1/2: genuine multipartite entanglement witnessed.
    Witnessed,
    /// F > 2^-r: above the maximally mixed noise floor.
    AboveFloor,
    /// F <= 2^-r: indistinguishable from no signal.
    AtFloor,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Witnessed => "witnessed",
            Classification::AboveFloor => "above-floor",
            Classification::AtFloor => "at-floor",
        }
    }
}

/// Apply the thresholds 1/2 (witness) and 2^-r (noise floor).
pub fn witness_and_floor(value: f64, r: usize) -> Classification {
    if value > 0.5 {
        Classification::Witnessed
    } else if value > 0.5f64.powi(r as i32) {
        Classification::AboveFloor
    } else {
        Classification::AtFloor
    }
}
