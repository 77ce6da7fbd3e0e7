//! Fault injection and Monte Carlo estimates of the level-1 failure rate.

use alloc::vec::Vec;
use core::ops::Range;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::circuit::{Circuit, Gate, Site};
use crate::classical::Word;
use crate::expand::{emit_ec_minimal, minimal_data_word};
use crate::frame::{classify, CompiledCircuit, FaultLocation, FrameError, Injection, Scratch};
use crate::layout::BlockVariant;
use crate::pauli::{Pauli, PauliOperator};
use crate::steane::{self, Decoder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    /// One data word through one 27-site correction block.
    EcOnly,
    /// Transversal CNOT between two blocks, then correction of both.
    CnotEc,
}

impl Scenario {
    pub const ALL: [Scenario; 2] = [Scenario::EcOnly, Scenario::CnotEc];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::EcOnly => "ec-only",
            Scenario::CnotEc => "cnot-ec",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("error probability {0} outside [0, 1]")]
    Epsilon(f64),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("need at least 3 points with positive estimates for a fit, got {0}")]
    InsufficientData(usize),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// A scenario circuit, compiled, with its data words.
#[derive(Debug, Clone)]
pub struct ScenarioCircuit {
    pub scenario: Scenario,
    pub circuit: Circuit,
    pub data: Vec<Word>,
    compiled: CompiledCircuit,
}

impl ScenarioCircuit {
    pub fn build(scenario: Scenario) -> Self {
        let len = BlockVariant::Minimal27.block_length();
        let mut c = Circuit::new(2, len);
        let data = match scenario {
            Scenario::EcOnly => alloc::vec![emit_ec_minimal(&mut c, 0, 0)],
            Scenario::CnotEc => {
                let (a, b) = (minimal_data_word(0), minimal_data_word(1));
                for q in 0..steane::N {
                    c.add_at(0, Gate::cnot(a[q], b[q]));
                }
                alloc::vec![emit_ec_minimal(&mut c, 0, 1), emit_ec_minimal(&mut c, 1, 1)]
            }
        };
        let compiled = CompiledCircuit::new(&c).expect("scenario circuits are Clifford");
        Self { scenario, circuit: c, data, compiled }
    }

    pub fn compiled(&self) -> &CompiledCircuit {
        &self.compiled
    }

    /// Number of fault locations `G`.
    pub fn location_count(&self) -> usize {
        self.compiled.location_count()
    }

    pub fn scratch(&self) -> Scratch {
        self.compiled.scratch()
    }

    fn fails(&self, faults: &[Injection], decoder: &Decoder, s: &mut Scratch) -> bool {
        self.compiled.run(faults, decoder, s);
        self.data.iter().any(|w| {
            let fixed = steane::correct(&self.compiled.word_frame(s, w)).expect("7-qubit word");
            steane::is_logical_error(&fixed).expect("syndrome-free")
        })
    }
}

/// Pauli on `arity` qubits from a code `bits(q0) | bits(q1) << 2`.
fn pauli_from_code(arity: usize, code: u8) -> PauliOperator {
    let mut p = PauliOperator::identity(arity).expect("small");
    for k in 0..arity {
        let b = code >> (2 * k) & 3;
        let single = PauliOperator::single(arity, k, Pauli::from_bits(b & 1 != 0, b & 2 != 0)).expect("in range");
        p = p * single;
    }
    p
}

/// Locations whose single fault ends in a logical error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultScan {
    pub scenario: Scenario,
    pub locations: usize,
    /// Number of single-fault runs performed.
    pub checked: usize,
    pub offending: Vec<FaultLocation>,
}

/// Every counted gate with every non-identity Pauli on its support.
pub fn exhaustive_single_fault(sc: &ScenarioCircuit, decoder: Option<&Decoder>) -> FaultScan {
    let decoder = decoder.copied().unwrap_or_default();
    let mut s = sc.scratch();
    let mut offending = Vec::new();
    let mut checked = 0;
    for (loc, (t, i, arity)) in sc.compiled.locations().enumerate() {
        for code in 1..(1u8 << (2 * arity)) {
            checked += 1;
            let inj = sc.compiled.injection(loc, code);
            if sc.fails(&[inj], &decoder, &mut s) {
                offending.push(FaultLocation { timestep: t, gate: i, pauli: pauli_from_code(arity, code) });
            }
        }
    }
    FaultScan { scenario: sc.scenario, locations: sc.location_count(), checked, offending }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// Uniform over the non-identity Paulis on the gate's support.
    Depolarizing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    pub epsilon: f64,
    pub channel: Channel,
}

impl ErrorModel {
    pub fn depolarizing(epsilon: f64) -> Result<Self, SimError> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(SimError::Epsilon(epsilon));
        }
        Ok(Self { epsilon, channel: Channel::Depolarizing })
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Generator for trial `trial`: stream `trial` of the seed's key.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Samples the faults of one trial into `buf` (sorted, possibly empty).
pub fn sample_faults(sc: &ScenarioCircuit, model: &ErrorModel, seed: u64, trial: u64, buf: &mut Vec<Injection>) {
    buf.clear();
    if model.epsilon <= 0.0 {
        return;
    }
    let mut rng = trial_rng(seed, trial);
    for (loc, (_, _, arity)) in sc.compiled.locations().enumerate() {
        if uniform(&mut rng) < model.epsilon {
            let choices = (1u32 << (2 * arity)) - 1;
            let pick = ((uniform(&mut rng) * f64::from(choices)) as u32).min(choices - 1);
            buf.push(sc.compiled.injection(loc, (pick + 1) as u8));
        }
    }
}

/// Failures among trials `range`; results depend only on the trial indices.
pub fn count_failures(sc: &ScenarioCircuit, model: &ErrorModel, seed: u64, range: Range<u64>) -> u64 {
    let decoder = Decoder::standard();
    let mut s = sc.scratch();
    let mut buf = Vec::new();
    let mut failures = 0;
    for trial in range {
        sample_faults(sc, model, seed, trial, &mut buf);
        if !buf.is_empty() && sc.fails(&buf, &decoder, &mut s) {
            failures += 1;
        }
    }
    failures
}

/// Wilson score interval with normal quantile `z`.
pub fn wilson(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

pub const Z95: f64 = 1.96;

#[derive(Debug, Clone, PartialEq)]
pub struct SimEstimate {
    pub scenario: Scenario,
    pub epsilon: f64,
    pub trials: u64,
    pub failures: u64,
    pub p1_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    /// Fault locations `G` in the scenario.
    pub locations: usize,
}

impl SimEstimate {
    pub fn from_counts(scenario: Scenario, epsilon: f64, trials: u64, failures: u64, seed: u64, locations: usize) -> Self {
        let (ci_low, ci_high) = wilson(failures, trials, Z95);
        Self { scenario, epsilon, trials, failures, p1_hat: failures as f64 / trials as f64, ci_low, ci_high, seed, locations }
    }

    /// `G^2 / 2 * eps^2`, the two-fault bound on the failure probability.
    pub fn union_bound(&self) -> f64 {
        union_bound(self.locations, self.epsilon)
    }
}

pub fn union_bound(locations: usize, epsilon: f64) -> f64 {
    let g = locations as f64;
    g * g / 2.0 * epsilon * epsilon
}

/// Single-threaded estimate. The std front end splits the same trial
/// indices across threads and gets identical counts.
pub fn monte_carlo_p1(sc: &ScenarioCircuit, model: &ErrorModel, trials: u64, seed: u64) -> Result<SimEstimate, SimError> {
    if trials == 0 {
        return Err(SimError::NoTrials);
    }
    let failures = count_failures(sc, model, seed, 0..trials);
    Ok(SimEstimate::from_counts(sc.scenario, model.epsilon, trials, failures, seed, sc.location_count()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub used: usize,
    /// Points dropped for a nonpositive estimate.
    pub excluded: usize,
}

/// Least-squares slope of `log p1` against `log eps`.
pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit, SimError> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(e, p)| *e > 0.0 && *p > 0.0)
        .map(|(e, p)| (libm::log(*e), libm::log(*p)))
        .collect();
    if usable.len() < 3 {
        return Err(SimError::InsufficientData(usable.len()));
    }
    let n = usable.len() as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / n;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = usable.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = usable.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(ScalingFit { slope, intercept: my - slope * mx, used: usable.len(), excluded: points.len() - usable.len() })
}

/// Data sites of a scenario, for callers that only need geometry.
pub fn data_sites(sc: &ScenarioCircuit) -> Vec<Site> {
    sc.data.iter().flatten().copied().collect()
}

/// Full outcome (frames and residuals) for an explicit fault set.
pub fn run_faults(sc: &ScenarioCircuit, faults: &[FaultLocation], decoder: &Decoder) -> Result<(crate::frame::Outcome, Vec<bool>), SimError> {
    let inj = sc.compiled.injections(faults)?;
    let mut s = sc.scratch();
    sc.compiled.run(&inj, decoder, &mut s);
    Ok((classify(&sc.compiled, &s, &sc.data), s.fired().to_vec()))
}
