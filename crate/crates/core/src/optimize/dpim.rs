use crate::decomposition::HierarchyTree;
use crate::error::{Error, Result};
use crate::par;

use super::oracle::{argmax_first, union_sorted, InfluenceOracle};

/// `A[v, i]`: the chosen `i` seeds inside `T(v)`, for `i <= min(|T(v)|, k)`.
#[derive(Debug, Clone)]
pub struct DpimTable {
    k: usize,
    rows: Vec<Vec<Vec<usize>>>,
}

impl DpimTable {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `A[v, i]`, sorted. `None` when `i` exceeds the node's budget range.
    pub fn get(&self, node: usize, i: usize) -> Option<&[usize]> {
        self.rows[node].get(i).map(Vec::as_slice)
    }

    /// Largest `i` stored for `node`.
    pub fn max_budget(&self, node: usize) -> usize {
        self.rows[node].len() - 1
    }
}

/// Fills the table bottom-up by height. At an internal node, row `i` takes
/// the split `j` maximizing `σ(A[left, j] ∪ A[right, i - j])`, smallest `j`
/// on ties. Rows with a single feasible split are filled without a query,
/// so each node costs at most `(k + 1)^2` queries.
pub fn dpim_table<O: InfluenceOracle>(oracle: &O, tree: &HierarchyTree, k: usize) -> Result<DpimTable> {
    if k > tree.n() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds the {} vertices",
            tree.n()
        )));
    }
    let mut rows: Vec<Vec<Vec<usize>>> = vec![Vec::new(); tree.node_count()];
    for level in tree.nodes_by_height() {
        for v in level {
            rows[v] = match tree.children(v) {
                None => {
                    let x = tree.leaf_vertex(v).expect("leaf has a vertex");
                    if k == 0 {
                        vec![vec![]]
                    } else {
                        vec![vec![], vec![x]]
                    }
                }
                Some((l, r)) => node_rows(oracle, &rows[l], &rows[r], tree.size(v).min(k))?,
            };
        }
    }
    Ok(DpimTable { k, rows })
}

fn node_rows<O: InfluenceOracle>(
    oracle: &O,
    left: &[Vec<usize>],
    right: &[Vec<usize>],
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let (cap_l, cap_r) = (left.len() - 1, right.len() - 1);
    let splits = |i: usize| i.saturating_sub(cap_r)..=i.min(cap_l);

    // Every (i, j) that needs a query, evaluated together.
    let contested: Vec<(usize, usize)> = (0..=budget)
        .filter(|&i| splits(i).count() > 1)
        .flat_map(|i| splits(i).map(move |j| (i, j)))
        .collect();
    let values = par::map_slice(&contested, |&(i, j)| {
        oracle.sigma(&union_sorted(&[&left[j], &right[i - j]]))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::with_capacity(budget + 1);
    let mut cursor = 0;
    for i in 0..=budget {
        let range = splits(i);
        let width = range.clone().count();
        let j = if width > 1 {
            let best = argmax_first(&values[cursor..cursor + width]).unwrap();
            cursor += width;
            range.start() + best
        } else {
            *range.start()
        };
        out.push(union_sorted(&[&left[j], &right[i - j]]));
    }
    Ok(out)
}

/// DPIM's answer: `A[root, k]`.
pub fn dpim_with<O: InfluenceOracle>(oracle: &O, tree: &HierarchyTree, k: usize) -> Result<Vec<usize>> {
    let table = dpim_table(oracle, tree, k)?;
    Ok(table.get(tree.root(), k).expect("k <= n").to_vec())
}
