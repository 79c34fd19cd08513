//! Influence maximization over hierarchical decompositions.
//!
//! The crate covers the whole pipeline: threshold cascades with Monte Carlo
//! and exact influence oracles ([`cascade`]), decomposition trees and their
//! builders ([`decomposition`]), synthetic instance generators
//! ([`synthgen`]) and seed selection by greedy, DPIM and message passing
//! ([`optimize`]).

pub mod cascade;
pub mod decomposition;
pub mod error;
pub mod graph;
mod par;
pub mod optimize;
pub mod rng;
pub mod synthgen;

pub use cascade::{CascadeModel, OracleConfig, OracleMode, SigmaEstimate};
pub use decomposition::HierarchyTree;
pub use error::{Error, Result};
pub use graph::Graph;
