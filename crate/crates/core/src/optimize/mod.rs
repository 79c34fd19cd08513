//! Seed selection: greedy, DPIM over a decomposition tree, message passing
//! (MPA) and brute force.
//!
//! The `*_with` functions take any [`InfluenceOracle`]. The wrappers at this
//! level pick the oracle, count its queries, and report the chosen set with
//! a final evaluation on independent draws.

mod brute;
mod dpim;
mod greedy;
mod mpa;
mod oracle;

use std::fmt;
use std::str::FromStr;

use crate::cascade::{sigma_exact, sigma_mc, CascadeModel, OracleConfig, SigmaEstimate};
use crate::decomposition::HierarchyTree;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use brute::{binomial, brute_force_with, k_subsets, BRUTE_FORCE_MAX_SUBSETS};
pub use dpim::{dpim_table, dpim_with, DpimTable};
pub use greedy::greedy_with;
pub use mpa::{
    direction_capacity, dpim_initialize, mpa_update, mpa_with, retrieve_seeds, AllocationTable, Direction,
    DirectionPair, MpaOutcome,
};
pub use oracle::{CountingOracle, ExactOracle, InfluenceOracle, MemoOracle, MonteCarloOracle};

pub const DEFAULT_MAX_OUTER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Greedy,
    Dpim,
    Mpa,
    BruteForce,
}

impl Algorithm {
    pub fn needs_tree(self) -> bool {
        matches!(self, Algorithm::Dpim | Algorithm::Mpa)
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Dpim => "dpim",
            Algorithm::Mpa => "mpa",
            Algorithm::BruteForce => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "dpim" => Ok(Algorithm::Dpim),
            "mpa" => Ok(Algorithm::Mpa),
            "brute" | "brute-force" => Ok(Algorithm::BruteForce),
            other => Err(Error::InvalidArgument(format!("unknown algorithm '{other}'"))),
        }
    }
}

/// The oracle used during selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleChoice {
    /// Monte Carlo; selection uses the config as given (normally CRN),
    /// the reported value uses [`OracleConfig::evaluation`].
    MonteCarlo(OracleConfig),
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub sigma: SigmaEstimate,
    /// Oracle queries issued during selection (the final evaluation is not
    /// counted).
    pub oracle_calls: u64,
    /// For MPA, the selection-oracle value of every accepted seed set;
    /// empty otherwise.
    pub history: Vec<f64>,
}

fn check_k(graph: &Graph, k: usize) -> Result<()> {
    if k > graph.n() {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds the {} vertices", graph.n())));
    }
    Ok(())
}

fn evaluate(graph: &Graph, model: &CascadeModel, seeds: &[usize], oracle: &OracleChoice) -> Result<SigmaEstimate> {
    match oracle {
        OracleChoice::MonteCarlo(cfg) => sigma_mc(graph, model, seeds, &cfg.evaluation()),
        OracleChoice::Exact => sigma_exact(graph, model, seeds).map(SigmaEstimate::exact),
    }
}

fn with_oracle<T>(
    graph: &Graph,
    model: &CascadeModel,
    oracle: &OracleChoice,
    run: impl FnOnce(&dyn InfluenceOracle) -> Result<T>,
) -> Result<(T, u64)> {
    match oracle {
        OracleChoice::MonteCarlo(cfg) => {
            let counting = CountingOracle::new(MonteCarloOracle { graph, model, cfg: *cfg });
            let out = run(&counting)?;
            Ok((out, counting.calls()))
        }
        OracleChoice::Exact => {
            let counting = CountingOracle::new(ExactOracle { graph, model });
            let out = run(&counting)?;
            Ok((out, counting.calls()))
        }
    }
}

pub fn greedy(graph: &Graph, model: &CascadeModel, k: usize, oracle: &OracleChoice) -> Result<SeedSet> {
    check_k(graph, k)?;
    let (vertices, oracle_calls) = with_oracle(graph, model, oracle, |o| greedy_with(&o, graph.n(), k))?;
    Ok(SeedSet {
        sigma: evaluate(graph, model, &vertices, oracle)?,
        vertices,
        oracle_calls,
        history: Vec::new(),
    })
}

pub fn dpim(
    graph: &Graph,
    tree: &HierarchyTree,
    model: &CascadeModel,
    k: usize,
    oracle: &OracleChoice,
) -> Result<SeedSet> {
    tree.check_vertex_count(graph.n())?;
    check_k(graph, k)?;
    let (vertices, oracle_calls) = with_oracle(graph, model, oracle, |o| dpim_with(&o, tree, k))?;
    Ok(SeedSet {
        sigma: evaluate(graph, model, &vertices, oracle)?,
        vertices,
        oracle_calls,
        history: Vec::new(),
    })
}

pub fn mpa(
    graph: &Graph,
    tree: &HierarchyTree,
    model: &CascadeModel,
    k: usize,
    oracle: &OracleChoice,
    max_outer: usize,
) -> Result<SeedSet> {
    tree.check_vertex_count(graph.n())?;
    check_k(graph, k)?;
    let (outcome, oracle_calls) = with_oracle(graph, model, oracle, |o| mpa_with(&o, tree, k, max_outer))?;
    Ok(SeedSet {
        sigma: evaluate(graph, model, &outcome.seeds, oracle)?,
        vertices: outcome.seeds,
        oracle_calls,
        history: outcome.accepted,
    })
}

/// Exhaustive search, using the exact oracle when every query fits its
/// budget and `cfg`'s Monte Carlo otherwise.
pub fn brute_force(graph: &Graph, model: &CascadeModel, k: usize, cfg: &OracleConfig) -> Result<SeedSet> {
    check_k(graph, k)?;
    if binomial(graph.n(), k) > BRUTE_FORCE_MAX_SUBSETS {
        return Err(Error::Capacity(format!(
            "brute force over C({}, {k}) subsets exceeds the limit of {BRUTE_FORCE_MAX_SUBSETS}",
            graph.n()
        )));
    }
    let mut oracle = OracleChoice::Exact;
    let attempt = with_oracle(graph, model, &oracle, |o| brute_force_with(&o, graph.n(), k));
    let (vertices, oracle_calls) = match attempt {
        Err(Error::Capacity(_)) => {
            oracle = OracleChoice::MonteCarlo(*cfg);
            with_oracle(graph, model, &oracle, |o| brute_force_with(&o, graph.n(), k))?
        }
        other => other?,
    };
    Ok(SeedSet {
        sigma: evaluate(graph, model, &vertices, &oracle)?,
        vertices,
        oracle_calls,
        history: Vec::new(),
    })
}

/// Runs `algorithm`. `tree` is required for DPIM and MPA; brute force
/// ignores `oracle` except for its Monte Carlo fallback config.
pub fn maximize(
    algorithm: Algorithm,
    graph: &Graph,
    tree: Option<&HierarchyTree>,
    model: &CascadeModel,
    k: usize,
    oracle: &OracleChoice,
    max_outer: usize,
) -> Result<SeedSet> {
    let need_tree = || {
        tree.ok_or_else(|| Error::InvalidArgument(format!("{algorithm} needs a decomposition tree")))
    };
    match algorithm {
        Algorithm::Greedy => greedy(graph, model, k, oracle),
        Algorithm::Dpim => dpim(graph, need_tree()?, model, k, oracle),
        Algorithm::Mpa => mpa(graph, need_tree()?, model, k, oracle, max_outer),
        Algorithm::BruteForce => {
            let cfg = match oracle {
                OracleChoice::MonteCarlo(cfg) => *cfg,
                OracleChoice::Exact => OracleConfig::crn(1000, 0),
            };
            brute_force(graph, model, k, &cfg)
        }
    }
}

/// `# sigma <mean> <stderr> <reps>` followed by one original vertex id per
/// line.
pub fn format_seeds(graph: &Graph, seeds: &[usize], sigma: &SigmaEstimate) -> String {
    let mut out = format!("# sigma {} {} {}\n", sigma.mean, sigma.stderr, sigma.reps);
    for &v in seeds {
        out.push_str(&format!("{}\n", graph.original_id(v)));
    }
    out
}

/// Reads a seed list written by [`format_seeds`] (or any list of original
/// ids, `#` comments allowed) into dense ids of `graph`.
pub fn parse_seeds(graph: &Graph, text: &str) -> Result<Vec<usize>> {
    let mut seeds = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let id: u64 = line
            .parse()
            .map_err(|_| Error::parse(i + 1, format!("expected a vertex id, found '{line}'")))?;
        let v = graph
            .dense_id(id)
            .ok_or_else(|| Error::Inconsistent(format!("line {}: vertex {id} is not in the graph", i + 1)))?;
        seeds.push(v);
    }
    seeds.sort_unstable();
    seeds.dedup();
    Ok(seeds)
}
