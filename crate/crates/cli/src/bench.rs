//! The benchmark harness: a flat `key = value` config file in, one CSV row
//! per (trial, cascade, k, algorithm) out.
//!
//! Keys:
//!
//! | key          | value                                                               |
//! |--------------|---------------------------------------------------------------------|
//! | `graph`      | `file:PATH`, `gnm:n=N,m=M`, `hier:d=D,l=L,t=T` or `worstcase:n=N`   |
//! | `tree`       | `file:PATH`, `truth`, `random-pair`, `random-edge`, `jaccard`, `bisection` |
//! | `cascades`   | whitespace-separated cascade specs, e.g. `icm:p=0.01 ltm`           |
//! | `algorithms` | whitespace-separated subset of `greedy dpim mpa brute`              |
//! | `k`          | whitespace-separated seed-set sizes                                 |
//! | `reps`       | Monte Carlo repetitions (default 1000)                              |
//! | `seed`       | master seed (required)                                              |
//! | `trials`     | independent trials (default 1)                                      |
//! | `output`     | CSV path                                                            |
//! | `oracle`     | `mc` (default) or `exact`                                           |
//! | `max_outer`  | MPA sweep limit (default 20)                                        |
//! | `timing`     | `true` to record wall-clock seconds; otherwise the column is 0     |
//! | `workers`    | worker threads                                                      |
//!
//! Relative paths are resolved against the config file's directory. Trial
//! `t` uses the seed `mix64(seed ^ mix64(t))` for graph generation, tree
//! building and the oracle; it is reported in the `seed` column.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use himax::decomposition::{parse_tree, HierarchyTree, Method};
use himax::graph::gen_gnm;
use himax::optimize::{maximize, Algorithm, OracleChoice, DEFAULT_MAX_OUTER};
use himax::rng::mix64;
use himax::synthgen::{gen_hierarchical, gen_worstcase};
use himax::{CascadeModel, Error, Graph, OracleConfig, Result};

use crate::io;

pub const CSV_HEADER: &str = "algorithm,cascade,k,trial,sigma_mean,sigma_stderr,oracle_calls,elapsed_seconds,seed";

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Gnm { n: usize, m: usize },
    Hierarchical { d: u32, l: u32, t: usize },
    WorstCase { n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeSource {
    File(PathBuf),
    Truth,
    Build(Method),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub graph: GraphSource,
    pub tree: Option<TreeSource>,
    pub cascades: Vec<CascadeModel>,
    pub algorithms: Vec<Algorithm>,
    pub ks: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub trials: usize,
    pub output: PathBuf,
    pub exact: bool,
    pub max_outer: usize,
    pub timing: bool,
    pub workers: Option<usize>,
}

fn params(spec: &str, line: usize) -> Result<BTreeMap<String, String>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected key=value, found '{kv}'")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn take<T: FromStr>(map: &mut BTreeMap<String, String>, key: &str, line: usize) -> Result<T> {
    let raw = map
        .remove(key)
        .ok_or_else(|| Error::parse(line, format!("missing parameter '{key}'")))?;
    raw.parse()
        .map_err(|_| Error::parse(line, format!("bad value '{raw}' for '{key}'")))
}

fn no_extra(map: BTreeMap<String, String>, line: usize) -> Result<()> {
    match map.keys().next() {
        Some(k) => Err(Error::parse(line, format!("unknown parameter '{k}'"))),
        None => Ok(()),
    }
}

fn resolve(base: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn parse_list<T: FromStr>(value: &str, key: &str, line: usize) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split_whitespace()
        .map(|s| s.parse().map_err(|e| Error::parse(line, format!("bad {key} entry '{s}': {e}"))))
        .collect()
}

impl BenchConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&io::read_to_string(path)?, base)
    }

    /// Parses config text; relative paths are taken relative to `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut graph = None;
        let mut tree = None;
        let mut cascades = None;
        let mut algorithms = None;
        let mut ks = None;
        let mut reps = 1000;
        let mut seed = None;
        let mut trials = 1;
        let mut output = None;
        let mut exact = false;
        let mut max_outer = DEFAULT_MAX_OUTER;
        let mut timing = false;
        let mut workers = None;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected 'key = value', found '{content}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let number = |v: &str| -> Result<u64> {
                v.parse().map_err(|_| Error::parse(line, format!("bad value '{v}' for {key}")))
            };
            match key {
                "graph" => graph = Some(parse_graph_source(value, base, line)?),
                "tree" => tree = Some(parse_tree_source(value, base, line)?),
                "cascades" | "cascade" => cascades = Some(parse_list(value, key, line)?),
                "algorithms" | "algorithm" => algorithms = Some(parse_list(value, key, line)?),
                "k" => ks = Some(parse_list(value, key, line)?),
                "reps" => reps = number(value)? as usize,
                "seed" => seed = Some(number(value)?),
                "trials" => trials = number(value)? as usize,
                "output" => output = Some(resolve(base, value)),
                "oracle" => {
                    exact = match value {
                        "mc" => false,
                        "exact" => true,
                        other => return Err(Error::parse(line, format!("oracle must be mc or exact, found '{other}'"))),
                    }
                }
                "max_outer" => max_outer = number(value)? as usize,
                "timing" => {
                    timing = value
                        .parse()
                        .map_err(|_| Error::parse(line, format!("timing must be true or false, found '{value}'")))?
                }
                "workers" => workers = Some(number(value)? as usize),
                other => return Err(Error::parse(line, format!("unknown key '{other}'"))),
            }
        }

        let missing = |key: &str| Error::InvalidArgument(format!("bench config is missing '{key}'"));
        let algorithms: Vec<Algorithm> = algorithms.ok_or_else(|| missing("algorithms"))?;
        if tree.is_none() && algorithms.iter().any(|a| a.needs_tree()) {
            return Err(missing("tree"));
        }
        if reps == 0 {
            return Err(Error::InvalidArgument("reps must be at least 1".into()));
        }
        Ok(BenchConfig {
            graph: graph.ok_or_else(|| missing("graph"))?,
            tree,
            cascades: cascades.ok_or_else(|| missing("cascades"))?,
            algorithms,
            ks: ks.ok_or_else(|| missing("k"))?,
            reps,
            seed: seed.ok_or_else(|| missing("seed"))?,
            trials,
            output: output.ok_or_else(|| missing("output"))?,
            exact,
            max_outer,
            timing,
            workers,
        })
    }
}

fn parse_graph_source(value: &str, base: &Path, line: usize) -> Result<GraphSource> {
    let (kind, rest) = value.split_once(':').unwrap_or((value, ""));
    if kind == "file" {
        return Ok(GraphSource::File(resolve(base, rest.trim())));
    }
    let mut p = params(rest, line)?;
    let source = match kind {
        "gnm" => GraphSource::Gnm {
            n: take(&mut p, "n", line)?,
            m: take(&mut p, "m", line)?,
        },
        "hier" => GraphSource::Hierarchical {
            d: take(&mut p, "d", line)?,
            l: take(&mut p, "l", line)?,
            t: take(&mut p, "t", line)?,
        },
        "worstcase" => GraphSource::WorstCase {
            n: take(&mut p, "n", line)?,
        },
        other => return Err(Error::parse(line, format!("unknown graph source '{other}'"))),
    };
    no_extra(p, line)?;
    Ok(source)
}

fn parse_tree_source(value: &str, base: &Path, line: usize) -> Result<TreeSource> {
    if let Some(path) = value.strip_prefix("file:") {
        return Ok(TreeSource::File(resolve(base, path.trim())));
    }
    if value == "truth" {
        return Ok(TreeSource::Truth);
    }
    value
        .parse()
        .map(TreeSource::Build)
        .map_err(|_| Error::parse(line, format!("unknown tree source '{value}'")))
}

pub fn trial_seed(master: u64, trial: usize) -> u64 {
    mix64(master ^ mix64(trial as u64))
}

fn instance(cfg: &BenchConfig, seed: u64) -> Result<(Graph, Option<HierarchyTree>)> {
    let (graph, truth) = match &cfg.graph {
        GraphSource::File(path) => (Graph::parse_edge_list(&io::read_to_string(path)?)?, None),
        GraphSource::Gnm { n, m } => (gen_gnm(*n, *m, seed)?, None),
        GraphSource::Hierarchical { d, l, t } => {
            let inst = gen_hierarchical(*d, *l, *t, seed)?;
            (inst.graph, Some(inst.truth_tree))
        }
        GraphSource::WorstCase { n } => {
            let inst = gen_worstcase(*n)?;
            (inst.graph, Some(inst.truth_tree))
        }
    };
    if !cfg.algorithms.iter().any(|a| a.needs_tree()) {
        return Ok((graph, None));
    }
    let tree = match cfg.tree.as_ref().expect("checked at parse time") {
        TreeSource::File(path) => {
            let tree = parse_tree(&io::read_to_string(path)?)?;
            tree.check_vertex_count(graph.n())?;
            tree
        }
        TreeSource::Truth => truth.ok_or_else(|| {
            Error::InvalidArgument("tree = truth needs a generated hier or worstcase graph".into())
        })?,
        TreeSource::Build(method) => method.build(&graph, seed)?,
    };
    Ok((graph, Some(tree)))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Runs every configured combination and returns the CSV text.
pub fn run_bench(cfg: &BenchConfig) -> Result<String> {
    crate::with_workers(cfg.workers, || run_rows(cfg))
}

fn run_rows(cfg: &BenchConfig) -> Result<String> {
    let mut csv = format!("{CSV_HEADER}\n");
    for trial in 0..cfg.trials {
        let seed = trial_seed(cfg.seed, trial);
        let (graph, tree) = instance(cfg, seed)?;
        for model in &cfg.cascades {
            let oracle = if cfg.exact {
                OracleChoice::Exact
            } else {
                OracleChoice::MonteCarlo(OracleConfig::crn(cfg.reps, seed))
            };
            for &k in &cfg.ks {
                for &algorithm in &cfg.algorithms {
                    let started = Instant::now();
                    let found = maximize(algorithm, &graph, tree.as_ref(), model, k, &oracle, cfg.max_outer)?;
                    let elapsed = if cfg.timing { started.elapsed().as_secs_f64() } else { 0.0 };
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        algorithm,
                        csv_field(&model.to_string()),
                        k,
                        trial,
                        found.sigma.mean,
                        found.sigma.stderr,
                        found.oracle_calls,
                        elapsed,
                        seed
                    ));
                }
            }
        }
    }
    Ok(csv)
}
