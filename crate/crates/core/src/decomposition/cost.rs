use crate::error::Result;
use crate::graph::Graph;

use super::HierarchyTree;

/// Dasgupta cost: for every edge, the number of leaves under the lowest
/// common ancestor of its endpoints.
pub fn dasgupta_cost(graph: &Graph, tree: &HierarchyTree) -> Result<u64> {
    tree.check_vertex_count(graph.n())?;
    Ok(graph
        .edges()
        .iter()
        .map(|&(u, v)| tree.size(tree.lca(u, v)) as u64)
        .sum())
}
