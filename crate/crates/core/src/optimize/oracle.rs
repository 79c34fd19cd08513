use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::cascade::{sigma_exact, sigma_mc, CascadeModel, OracleConfig, SigmaEstimate};
use crate::error::Result;
use crate::graph::Graph;

/// Anything that can answer `σ(S)` queries.
///
/// Optimizers compare answers with `>` and break ties deterministically, so
/// an oracle used for selection should be a pure function of the seed set
/// (CRN Monte Carlo or exact).
pub trait InfluenceOracle: Sync {
    fn sigma(&self, seeds: &[usize]) -> Result<SigmaEstimate>;
}

impl<O: InfluenceOracle + ?Sized> InfluenceOracle for &O {
    fn sigma(&self, seeds: &[usize]) -> Result<SigmaEstimate> {
        (**self).sigma(seeds)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MonteCarloOracle<'a> {
    pub graph: &'a Graph,
    pub model: &'a CascadeModel,
    pub cfg: OracleConfig,
}

impl InfluenceOracle for MonteCarloOracle<'_> {
    fn sigma(&self, seeds: &[usize]) -> Result<SigmaEstimate> {
        sigma_mc(self.graph, self.model, seeds, &self.cfg)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExactOracle<'a> {
    pub graph: &'a Graph,
    pub model: &'a CascadeModel,
}

impl InfluenceOracle for ExactOracle<'_> {
    fn sigma(&self, seeds: &[usize]) -> Result<SigmaEstimate> {
        sigma_exact(self.graph, self.model, seeds).map(SigmaEstimate::exact)
    }
}

/// Counts every query passed through to the inner oracle.
#[derive(Debug)]
pub struct CountingOracle<O> {
    inner: O,
    calls: AtomicU64,
}

impl<O> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

impl<O: InfluenceOracle> InfluenceOracle for CountingOracle<O> {
    fn sigma(&self, seeds: &[usize]) -> Result<SigmaEstimate> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.sigma(seeds)
    }
}

/// Caches answers by sorted seed set. Only sound for deterministic oracles.
#[derive(Debug)]
pub struct MemoOracle<O> {
    inner: O,
    cache: Mutex<HashMap<Vec<usize>, SigmaEstimate>>,
}

impl<O> MemoOracle<O> {
    pub fn new(inner: O) -> Self {
        MemoOracle {
            inner,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

impl<O: InfluenceOracle> InfluenceOracle for MemoOracle<O> {
    fn sigma(&self, seeds: &[usize]) -> Result<SigmaEstimate> {
        let mut key = seeds.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(*hit);
        }
        let value = self.inner.sigma(&key)?;
        self.cache.lock().unwrap().insert(key, value);
        Ok(value)
    }
}

/// Index of the best estimate; the earliest wins ties.
pub(crate) fn argmax_first(values: &[SigmaEstimate]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, v) in values.iter().enumerate() {
        if best.is_none_or(|b| v.mean > values[b].mean) {
            best = Some(i);
        }
    }
    best
}

/// Sorted union of disjoint or overlapping sorted lists.
pub(crate) fn union_sorted(parts: &[&[usize]]) -> Vec<usize> {
    let mut out: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}
