use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;
use crate::rng::{mix64, uniform_open};

use super::simulate::{check_seeds, Scratch};
use super::CascadeModel;

/// How threshold streams are keyed across queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleMode {
    /// Every query sees the same threshold draws: repetition `i` of any
    /// query uses the stream keyed by `(master_seed, i, vertex)`.
    Crn,
    /// Each seed set gets its own stream, derived from the master seed and
    /// the set's contents. Still a pure function of its inputs.
    Independent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub reps: usize,
    pub master_seed: u64,
    pub mode: OracleMode,
}

const EVALUATION_TAG: u64 = 0x6576_616c_7561_7465;

impl OracleConfig {
    pub fn new(reps: usize, master_seed: u64, mode: OracleMode) -> Result<Self> {
        if reps == 0 {
            return Err(Error::InvalidArgument("oracle needs at least one repetition".into()));
        }
        Ok(OracleConfig {
            reps,
            master_seed,
            mode,
        })
    }

    pub fn crn(reps: usize, master_seed: u64) -> Self {
        OracleConfig {
            reps: reps.max(1),
            master_seed,
            mode: OracleMode::Crn,
        }
    }

    /// Config for reporting a final answer: independent draws on a stream
    /// family disjoint from the one used during optimization.
    pub fn evaluation(&self) -> Self {
        OracleConfig {
            reps: self.reps,
            master_seed: mix64(self.master_seed ^ EVALUATION_TAG),
            mode: OracleMode::Independent,
        }
    }

    fn stream_key(&self, seeds: &[usize]) -> u64 {
        match self.mode {
            OracleMode::Crn => mix64(self.master_seed),
            OracleMode::Independent => {
                let mut sorted = seeds.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                let set_hash = sorted
                    .iter()
                    .fold(0x5eed_5e75u64, |h, &v| mix64(h ^ v as u64));
                mix64(self.master_seed ^ mix64(set_hash))
            }
        }
    }
}

/// Estimated expected number of infected vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub reps: usize,
}

impl SigmaEstimate {
    pub fn exact(value: f64) -> Self {
        SigmaEstimate {
            mean: value,
            stderr: 0.0,
            reps: 0,
        }
    }

    /// Mean and standard error from per-repetition outcomes. Integer
    /// accumulation keeps the result independent of summation order.
    pub fn from_counts(counts: &[u64]) -> Self {
        let reps = counts.len();
        if reps == 0 {
            return SigmaEstimate::exact(0.0);
        }
        let sum: u128 = counts.iter().map(|&c| u128::from(c)).sum();
        let sum_sq: u128 = counts.iter().map(|&c| u128::from(c) * u128::from(c)).sum();
        let r = reps as u128;
        let mean = sum as f64 / reps as f64;
        let stderr = if reps > 1 {
            // (r Σx² − (Σx)²) / (r (r − 1)) is the unbiased sample variance.
            let numerator = r * sum_sq - sum * sum;
            let variance = numerator as f64 / (r * (r - 1)) as f64;
            (variance / reps as f64).sqrt()
        } else {
            0.0
        };
        SigmaEstimate { mean, stderr, reps }
    }
}

/// Monte Carlo estimate of the expected final infected count.
///
/// Repetition `i` draws `theta_v` from Philox keyed by the config's stream
/// key, with counter `(v, i)`. The result is bit-identical for any worker
/// count.
pub fn sigma_mc(graph: &Graph, model: &CascadeModel, seeds: &[usize], cfg: &OracleConfig) -> Result<SigmaEstimate> {
    check_seeds(graph, seeds)?;
    let key = cfg.stream_key(seeds);
    let counts = par::map_indexed_with(
        cfg.reps,
        || Scratch::new(graph.n()),
        |scratch, rep| run_rep(graph, model, seeds, key, rep, scratch),
    );
    Ok(SigmaEstimate::from_counts(&counts))
}

/// Single-threaded [`sigma_mc`], available regardless of features.
pub fn sigma_mc_sequential(
    graph: &Graph,
    model: &CascadeModel,
    seeds: &[usize],
    cfg: &OracleConfig,
) -> Result<SigmaEstimate> {
    check_seeds(graph, seeds)?;
    let key = cfg.stream_key(seeds);
    let mut scratch = Scratch::new(graph.n());
    let counts: Vec<u64> = (0..cfg.reps)
        .map(|rep| run_rep(graph, model, seeds, key, rep, &mut scratch))
        .collect();
    Ok(SigmaEstimate::from_counts(&counts))
}

fn run_rep(graph: &Graph, model: &CascadeModel, seeds: &[usize], key: u64, rep: usize, scratch: &mut Scratch) -> u64 {
    scratch.run(graph, model, seeds, |v| uniform_open(key, rep as u64, v as u64)) as u64
}

/// The thresholds repetition `rep` would use for this config and seed set.
pub fn thresholds_for(graph: &Graph, cfg: &OracleConfig, seeds: &[usize], rep: usize) -> Vec<f64> {
    let key = cfg.stream_key(seeds);
    (0..graph.n())
        .map(|v| uniform_open(key, rep as u64, v as u64))
        .collect()
}
