//! Multi-threaded front end for the Monte Carlo estimator.

use nnft_core::sim::{count_failures, ErrorModel, ScenarioCircuit, SimError, SimEstimate};
use rayon::prelude::*;

/// Trials per work unit. Chunk boundaries never change the counts, since each
/// trial draws from its own stream.
pub const CHUNK: u64 = 4096;

/// Environment variable read when no thread count is given.
pub const THREADS_ENV: &str = "NNFT_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum ParallelError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("invalid {THREADS_ENV} value `{0}`")]
    ThreadsEnv(String),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Thread count from the argument, else the environment, else rayon's default.
pub fn resolve_threads(explicit: Option<usize>) -> Result<Option<usize>, ParallelError> {
    if explicit.is_some() {
        return Ok(explicit);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map(Some).map_err(|_| ParallelError::ThreadsEnv(v)),
        Err(_) => Ok(None),
    }
}

pub fn count_failures_parallel(sc: &ScenarioCircuit, model: &ErrorModel, seed: u64, trials: u64) -> u64 {
    let chunks = trials.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|k| count_failures(sc, model, seed, k * CHUNK..((k + 1) * CHUNK).min(trials)))
        .sum()
}

/// Estimate on a pool of `threads` workers (rayon's default when `None`).
pub fn estimate(
    sc: &ScenarioCircuit,
    model: &ErrorModel,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<SimEstimate, ParallelError> {
    if trials == 0 {
        return Err(SimError::NoTrials.into());
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let failures = pool.install(|| count_failures_parallel(sc, model, seed, trials));
    Ok(SimEstimate::from_counts(sc.scenario, model.epsilon, trials, failures, seed, sc.location_count()))
}
