//! Experiment configuration: human-readable key = value text plus CLI
//! overrides. Every field has a documented default.

use std::path::PathBuf;

use ecsim::circuit::GateDurations;
use ecsim::error::{Error, Result};
use ecsim::estimators::Scenario;
use ecsim::noise::NoiseParams;
use ecsim::protocol::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Exp1,
    Exp2,
    Exp3,
    Exp4,
    CorrScan,
    Mixedness,
}

impl Experiment {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exp1" => Ok(Experiment::Exp1),
            "exp2" => Ok(Experiment::Exp2),
            "exp3" => Ok(Experiment::Exp3),
            "exp4" => Ok(Experiment::Exp4),
            "corr-scan" => Ok(Experiment::CorrScan),
            "mixedness" => Ok(Experiment::Mixedness),
            other => Err(Error::InvalidParameter(format!(
                "unknown experiment '{other}' (expected exp1|exp2|exp3|exp4|corr-scan|mixedness)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Experiment::Exp1 => "exp1",
            Experiment::Exp2 => "exp2",
            Experiment::Exp3 => "exp3",
            Experiment::Exp4 => "exp4",
            Experiment::CorrScan => "corr-scan",
            Experiment::Mixedness => "mixedness",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Statevector,
    Density,
    TableauTrajectory,
}

impl Backend {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "statevector" => Ok(Backend::Statevector),
            "density" => Ok(Backend::Density),
            "tableau-trajectory" | "tableau" => Ok(Backend::TableauTrajectory),
            other => Err(Error::InvalidParameter(format!(
                "unknown backend '{other}' (expected statevector|density|tableau-trajectory)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Backend::Statevector => "statevector",
            Backend::Density => "density",
            Backend::TableauTrajectory => "tableau-trajectory",
        }
    }
}

/// Full configuration of one experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub backend: Backend,
    /// Clone-count sweep (experiments 1, 2, corr-scan, mixedness).
    pub n_min: usize,
    pub n_max: usize,
    pub n_step: usize,
    /// Iteration sweep bound (experiment 3).
    pub l_max: usize,
    pub strategies: Vec<Strategy>,
    /// GHZ width sweep bound (experiment 4).
    pub r_max: usize,
    pub scenarios: Vec<Scenario>,
    pub shots: u64,
    pub seed: u64,
    /// Noise off means exact noiseless execution regardless of backend.
    pub noise_enabled: bool,
    pub noise: NoiseParams,
    /// Relative session-to-session jitter on p2q, resolved once per run
    /// from the seed (models recalibration drift; 0 disables).
    pub p2q_jitter: f64,
    pub out: Option<PathBuf>,
    /// Also emit x/y/sigma plot-data files next to the CSV.
    pub plot_data: bool,
}

impl ExperimentConfig {
    /// Defaults per experiment; shots default to the 10^4 used throughout.
    pub fn default_for(experiment: Experiment) -> Self {
        let mut cfg = ExperimentConfig {
            experiment,
            backend: Backend::Statevector,
            n_min: 2,
            n_max: 8,
            n_step: 1,
            l_max: 2,
            strategies: vec![Strategy::Full],
            r_max: 5,
            scenarios: vec![
                Scenario::TwoOne,
                Scenario::TwoTwo,
                Scenario::TwoThree,
                Scenario::Undecrypted,
            ],
            shots: 10_000,
            seed: 1,
            noise_enabled: false,
            noise: NoiseParams::default(),
            p2q_jitter: 0.0,
            out: None,
            plot_data: false,
        };
        match experiment {
            Experiment::Exp1 => {}
            Experiment::Exp2 => {
                cfg.n_max = 6;
            }
            Experiment::Exp3 => {
                cfg.backend = Backend::TableauTrajectory;
                cfg.strategies = vec![
                    Strategy::Full,
                    Strategy::SingleBranch,
                    Strategy::Hybrid { recloned: 25 },
                ];
                cfg.l_max = 2;
            }
            Experiment::Exp4 => {}
            Experiment::CorrScan | Experiment::Mixedness => {
                cfg.n_max = 4;
                cfg.n_step = 2;
            }
        }
        cfg
    }

    /// Read `key = value` lines (# comments allowed) over the defaults for
    /// the experiment named in the file (or `fallback` when absent).
    pub fn from_text(text: &str, fallback: Experiment) -> Result<Self> {
        let mut experiment = fallback;
        for (key, value) in parse_kv(text)? {
            if key == "experiment" {
                experiment = Experiment::parse(&value)?;
            }
        }
        let mut cfg = ExperimentConfig::default_for(experiment);
        for (key, value) in parse_kv(text)? {
            cfg.apply(&key, &value)?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path, fallback: Experiment) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidParameter(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_text(&text, fallback)
    }

    /// Apply one key/value override.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| {
            Error::InvalidParameter(format!("bad value '{value}' for config key '{what}'"))
        };
        match key {
            "experiment" => self.experiment = Experiment::parse(value)?,
            "backend" => self.backend = Backend::parse(value)?,
            "n_min" => self.n_min = value.parse().map_err(|_| bad(key))?,
            "n_max" => self.n_max = value.parse().map_err(|_| bad(key))?,
            "n_step" => self.n_step = value.parse().map_err(|_| bad(key))?,
            "l_max" => self.l_max = value.parse().map_err(|_| bad(key))?,
            "r_max" => self.r_max = value.parse().map_err(|_| bad(key))?,
            "shots" => self.shots = value.parse().map_err(|_| bad(key))?,
            "seed" => self.seed = value.parse().map_err(|_| bad(key))?,
            "noise" => self.noise_enabled = parse_switch(value)?,
            "plot_data" => self.plot_data = parse_switch(value)?,
            "p2q" => self.noise.p2q = value.parse().map_err(|_| bad(key))?,
            "p2q_jitter" => self.p2q_jitter = value.parse().map_err(|_| bad(key))?,
            "p1q" => self.noise.p1q = value.parse().map_err(|_| bad(key))?,
            "t1_us" => self.noise.t1_us = value.parse().map_err(|_| bad(key))?,
            "t2_us" => self.noise.t2_us = value.parse().map_err(|_| bad(key))?,
            "trajectories" => self.noise.trajectories = value.parse().map_err(|_| bad(key))?,
            "twirl_idle" => self.noise.twirl_idle = parse_switch(value)?,
            "gate_1q_us" => self.noise.durations.single_us = value.parse().map_err(|_| bad(key))?,
            "gate_2q_us" => {
                self.noise.durations.two_qubit_us = value.parse().map_err(|_| bad(key))?
            }
            "measure_us" => {
                self.noise.durations.measure_us = value.parse().map_err(|_| bad(key))?
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "scenarios" => {
                self.scenarios = value
                    .split(',')
                    .map(|s| Scenario::parse(s.trim()))
                    .collect::<Result<_>>()?;
            }
            "strategies" => {
                self.strategies = value
                    .split(',')
                    .map(|s| parse_strategy(s.trim()))
                    .collect::<Result<_>>()?;
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown config key '{other}'"
                )))
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::ZeroShots);
        }
        if self.n_min == 0 || self.n_min > self.n_max || self.n_step == 0 {
            return Err(Error::InvalidParameter(format!(
                "empty n sweep {}..={} step {}",
                self.n_min, self.n_max, self.n_step
            )));
        }
        if self.r_max == 0 {
            return Err(Error::InvalidParameter("empty r sweep".into()));
        }
        if self.scenarios.is_empty() || self.strategies.is_empty() {
            return Err(Error::InvalidParameter("empty sweep set".into()));
        }
        if !(0.0..=1.0).contains(&self.p2q_jitter) {
            return Err(Error::InvalidProbability(self.p2q_jitter));
        }
        self.noise.validate()
    }

    /// Noise parameters honoring the on/off switch; nonzero jitter scales
    /// p2q by a seed-derived factor in [1 - j, 1 + j] once per run.
    pub fn effective_noise(&self) -> NoiseParams {
        if self.noise_enabled {
            let mut noise = self.noise.clone();
            if self.p2q_jitter > 0.0 {
                let u = ecsim::sim::derive_seed(self.seed, 0xB1A5) as f64 / u64::MAX as f64;
                let factor = 1.0 + self.p2q_jitter * (2.0 * u - 1.0);
                noise.p2q = (noise.p2q * factor).clamp(0.0, 1.0);
            }
            noise
        } else {
            NoiseParams {
                durations: self.noise.durations.clone(),
                trajectories: self.noise.trajectories,
                ..NoiseParams::noiseless()
            }
        }
    }

    pub fn durations(&self) -> &GateDurations {
        &self.noise.durations
    }

    pub fn n_values(&self) -> Vec<usize> {
        (self.n_min..=self.n_max).step_by(self.n_step).collect()
    }
}

fn parse_switch(s: &str) -> Result<bool> {
    match s {
        "on" | "true" | "1" | "yes" => Ok(true),
        "off" | "false" | "0" | "no" => Ok(false),
        other => Err(Error::InvalidParameter(format!(
            "expected on/off, got '{other}'"
        ))),
    }
}

fn parse_strategy(s: &str) -> Result<Strategy> {
    if s == "full" {
        return Ok(Strategy::Full);
    }
    if s == "single-branch" {
        return Ok(Strategy::SingleBranch);
    }
    if let Some(k) = s.strip_prefix("hybrid-") {
        let recloned = k
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad hybrid subset in strategy '{s}'")))?;
        return Ok(Strategy::Hybrid { recloned });
    }
    Err(Error::InvalidParameter(format!(
        "unknown strategy '{s}' (expected full|single-branch|hybrid-<k>)"
    )))
}

fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!(
                "config line {} is not 'key = value': '{line}'",
                lineno + 1
            ))
        })?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}
