//! The `himax` command line: instance generation, decomposition, influence
//! estimation, seed selection and the benchmark harness.

pub mod bench;
mod io;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use himax::decomposition::{dasgupta_cost, format_tree, parse_tree, HierarchyTree, Method};
use himax::optimize::{format_seeds, maximize, parse_seeds, Algorithm, OracleChoice, DEFAULT_MAX_OUTER};
use himax::synthgen::{gen_hierarchical, gen_worstcase};
use himax::{CascadeModel, Error, Graph, OracleConfig, Result};

pub use bench::{run_bench, BenchConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "himax", version, about = "Influence maximization over hierarchical decompositions")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a hierarchical random graph and its ground-truth tree.
    GenHier {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_tree: PathBuf,
    },
    /// Generate the two-stars-and-clique instance; prints its cascade spec.
    GenWorstcase {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_tree: Option<PathBuf>,
    },
    /// Generate a G(n, m) random graph.
    GenGnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a decomposition tree.
    Decompose {
        /// random-pair, random-edge, jaccard or bisection
        #[arg(long)]
        method: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the Dasgupta cost of a tree.
    Hiercost {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: PathBuf,
    },
    /// Estimate the expected cascade size of a seed set.
    Sigma {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cascade: String,
        #[arg(long)]
        seeds: PathBuf,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Compute the expectation exactly instead of sampling.
        #[arg(long)]
        exact: bool,
    },
    /// Select a seed set.
    Maximize {
        /// greedy, dpim, mpa or brute
        #[arg(long)]
        algo: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        cascade: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_OUTER)]
        max_outer: usize,
    },
    /// Run a benchmark described by a config file and write its CSV.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) => EXIT_USAGE,
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Io(_) | Error::Parse { .. } | Error::Format { .. } | Error::Inconsistent(_) => EXIT_INCONSISTENT,
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code. Output goes to stdout, diagnostics to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut stdout = String::new();
    match execute(&cli, &mut stdout) {
        Ok(()) => {
            print!("{stdout}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("himax: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command, appending what it would print to `out`.
pub fn execute(cli: &Cli, out: &mut String) -> Result<()> {
    with_workers(cli.workers, || dispatch(&cli.command, cli.workers, out))
}

#[cfg(feature = "parallel")]
pub(crate) fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match workers {
        None => f(),
        Some(0) => Err(Error::InvalidArgument("--workers must be at least 1".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start {w} workers: {e}")))?
            .install(f),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if workers == Some(0) {
        return Err(Error::InvalidArgument("--workers must be at least 1".into()));
    }
    f()
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| Error::InvalidArgument(format!("{what} is randomized; pass --seed")))
}

fn load_graph(path: &std::path::Path) -> Result<Graph> {
    Graph::parse_edge_list(&io::read_to_string(path)?)
}

fn load_tree(path: &std::path::Path, graph: &Graph) -> Result<HierarchyTree> {
    let tree = parse_tree(&io::read_to_string(path)?)?;
    tree.check_vertex_count(graph.n())?;
    Ok(tree)
}

fn dispatch(command: &Command, workers: Option<usize>, out: &mut String) -> Result<()> {
    match command {
        Command::GenHier {
            d,
            l,
            t,
            seed,
            out_graph,
            out_tree,
        } => {
            let inst = gen_hierarchical(*d, *l, *t, require_seed(*seed, "gen-hier")?)?;
            io::write_all_atomic(&[
                (out_graph, inst.graph.to_edge_list().as_bytes()),
                (out_tree, format_tree(&inst.truth_tree).as_bytes()),
            ])?;
            out.push_str(&format!("{} {}\n", inst.graph.n(), inst.graph.m()));
        }
        Command::GenWorstcase { n, out_graph, out_tree } => {
            let inst = gen_worstcase(*n)?;
            let graph_text = inst.graph.to_edge_list();
            let tree_text = format_tree(&inst.truth_tree);
            let mut files = vec![(out_graph.as_path(), graph_text.as_bytes())];
            if let Some(path) = out_tree {
                files.push((path.as_path(), tree_text.as_bytes()));
            }
            io::write_all_atomic(&files)?;
            out.push_str(&format!("{}\n", inst.model));
        }
        Command::GenGnm { n, m, seed, out: path } => {
            let graph = himax::graph::gen_gnm(*n, *m, require_seed(*seed, "gen-gnm")?)?;
            io::write_atomic(path, graph.to_edge_list().as_bytes())?;
        }
        Command::Decompose {
            method,
            graph,
            seed,
            out: path,
        } => {
            let method: Method = method.parse()?;
            let seed = if method.is_stochastic() {
                require_seed(*seed, &format!("decompose --method {method}"))?
            } else {
                seed.unwrap_or(0)
            };
            let graph = load_graph(graph)?;
            let tree = method.build(&graph, seed)?;
            io::write_atomic(path, format_tree(&tree).as_bytes())?;
        }
        Command::Hiercost { graph, tree } => {
            let graph = load_graph(graph)?;
            let tree = load_tree(tree, &graph)?;
            out.push_str(&format!("{}\n", dasgupta_cost(&graph, &tree)?));
        }
        Command::Sigma {
            graph,
            cascade,
            seeds,
            reps,
            seed,
            exact,
        } => {
            let model: CascadeModel = cascade.parse()?;
            let graph = load_graph(graph)?;
            let seeds = parse_seeds(&graph, &io::read_to_string(seeds)?)?;
            if *exact {
                let value = himax::cascade::sigma_exact(&graph, &model, &seeds)?;
                out.push_str(&format!("{value}\n"));
            } else {
                let cfg = OracleConfig::new(*reps, require_seed(*seed, "sigma")?, himax::OracleMode::Crn)?;
                let est = himax::cascade::sigma_mc(&graph, &model, &seeds, &cfg)?;
                out.push_str(&format!("{} {}\n", est.mean, est.stderr));
            }
        }
        Command::Maximize {
            algo,
            graph,
            tree,
            cascade,
            k,
            reps,
            seed,
            out: path,
            exact,
            max_outer,
        } => {
            let algorithm: Algorithm = algo.parse()?;
            let model: CascadeModel = cascade.parse()?;
            let graph = load_graph(graph)?;
            let tree = match (tree, algorithm.needs_tree()) {
                (Some(p), _) => Some(load_tree(p, &graph)?),
                (None, true) => return Err(Error::InvalidArgument(format!("{algorithm} needs --tree"))),
                (None, false) => None,
            };
            let oracle = if *exact {
                OracleChoice::Exact
            } else {
                OracleChoice::MonteCarlo(OracleConfig::new(*reps, require_seed(*seed, "maximize")?, himax::OracleMode::Crn)?)
            };
            let found = maximize(algorithm, &graph, tree.as_ref(), &model, *k, &oracle, *max_outer)?;
            io::write_atomic(path, format_seeds(&graph, &found.vertices, &found.sigma).as_bytes())?;
            out.push_str(&format!(
                "{} {} {}\n",
                found.sigma.mean, found.sigma.stderr, found.oracle_calls
            ));
        }
        Command::Bench { config, out: path } => {
            let mut cfg = BenchConfig::load(config)?;
            if let Some(p) = path {
                cfg.output = p.clone();
            }
            if workers.is_some() {
                cfg.workers = workers;
            }
            let csv = run_bench(&cfg)?;
            io::write_atomic(&cfg.output, csv.as_bytes())?;
        }
    }
    Ok(())
}
