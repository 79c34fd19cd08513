//! Hierarchical decompositions: the tree type, four builders, Dasgupta
//! cost, and the `hier v1` file format.

mod agglomerative;
mod bisection;
mod cost;
mod io;
mod tree;

use std::fmt;
use std::str::FromStr;

pub use agglomerative::{build_jaccard, build_random_edge, build_random_pair, JACCARD_MAX_VERTICES};
pub use bisection::build_bisection;
pub use cost::dasgupta_cost;
pub use io::{format_tree, parse_tree, read_tree, write_tree};
pub use tree::HierarchyTree;

pub(crate) use tree::{merge_balanced, TreeBuilder};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    RandomPair,
    RandomEdge,
    Jaccard,
    Bisection,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::RandomPair, Method::RandomEdge, Method::Jaccard, Method::Bisection];

    /// Whether the builder consumes randomness.
    pub fn is_stochastic(&self) -> bool {
        !matches!(self, Method::Jaccard)
    }

    pub fn build(&self, graph: &Graph, seed: u64) -> Result<HierarchyTree> {
        Ok(match self {
            Method::RandomPair => build_random_pair(graph, seed),
            Method::RandomEdge => build_random_edge(graph, seed),
            Method::Jaccard => build_jaccard(graph)?,
            Method::Bisection => build_bisection(graph, seed),
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::RandomPair => "random-pair",
            Method::RandomEdge => "random-edge",
            Method::Jaccard => "jaccard",
            Method::Bisection => "bisection",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-pair" => Ok(Method::RandomPair),
            "random-edge" => Ok(Method::RandomEdge),
            "jaccard" => Ok(Method::Jaccard),
            "bisection" | "metis" => Ok(Method::Bisection),
            other => Err(Error::InvalidArgument(format!("unknown decomposition method {other:?}"))),
        }
    }
}
