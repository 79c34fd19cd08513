//! Message passing over the decomposition tree.
//!
//! Every tree node keeps, for each direction pair in {(L,R), (L,U), (R,U)}
//! and each budget `ℓ <= k`, a split `(s1, s2)` saying how many seeds go to
//! the first and second directional subtree. `T_L(v)` and `T_R(v)` are the
//! leaves under the children of `v`; `T_U(v)` is every vertex outside
//! `T(v)`. Seed sets are read out of the table recursively, and local updates
//! re-optimize one node's row with the rest of the table as context.

use crate::decomposition::HierarchyTree;
use crate::error::{Error, Result};
use crate::par;

use super::oracle::{argmax_first, union_sorted, InfluenceOracle, MemoOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DirectionPair {
    LeftRight,
    LeftUp,
    RightUp,
}

impl DirectionPair {
    pub const ALL: [DirectionPair; 3] = [DirectionPair::LeftRight, DirectionPair::LeftUp, DirectionPair::RightUp];

    pub fn directions(self) -> (Direction, Direction) {
        match self {
            DirectionPair::LeftRight => (Direction::Left, Direction::Right),
            DirectionPair::LeftUp => (Direction::Left, Direction::Up),
            DirectionPair::RightUp => (Direction::Right, Direction::Up),
        }
    }

    /// The direction not in the pair.
    pub fn remaining(self) -> Direction {
        match self {
            DirectionPair::LeftRight => Direction::Up,
            DirectionPair::LeftUp => Direction::Right,
            DirectionPair::RightUp => Direction::Left,
        }
    }

    fn index(self) -> usize {
        match self {
            DirectionPair::LeftRight => 0,
            DirectionPair::LeftUp => 1,
            DirectionPair::RightUp => 2,
        }
    }
}

/// The allocation table `A(v, pair, ℓ) -> (s1, s2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationTable {
    k: usize,
    entries: Vec<(usize, usize)>,
}

impl AllocationTable {
    /// Every entry `(0, 0)`.
    pub fn zeroed(tree: &HierarchyTree, k: usize) -> Self {
        AllocationTable {
            k,
            entries: vec![(0, 0); tree.node_count() * 3 * (k + 1)],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn slot(&self, node: usize, pair: DirectionPair, budget: usize) -> usize {
        (node * 3 + pair.index()) * (self.k + 1) + budget
    }

    pub fn get(&self, node: usize, pair: DirectionPair, budget: usize) -> (usize, usize) {
        self.entries[self.slot(node, pair, budget)]
    }

    pub fn set(&mut self, node: usize, pair: DirectionPair, budget: usize, split: (usize, usize)) {
        let slot = self.slot(node, pair, budget);
        self.entries[slot] = split;
    }
}

/// The pair at `parent(v)` that excludes the way back down to `v`.
fn away_from_child(tree: &HierarchyTree, v: usize) -> DirectionPair {
    if tree.is_left_child(v) {
        DirectionPair::RightUp
    } else {
        DirectionPair::LeftUp
    }
}

/// Number of vertices in directional subtree `dir` of `v`.
pub fn direction_capacity(tree: &HierarchyTree, v: usize, dir: Direction) -> usize {
    match (dir, tree.children(v)) {
        (Direction::Left, Some((l, _))) => tree.size(l),
        (Direction::Right, Some((_, r))) => tree.size(r),
        (Direction::Up, _) => tree.n() - tree.size(v),
        (_, None) => 0,
    }
}

/// Reads a seed set out of the table: at most `budget` vertices inside the
/// two directional subtrees named by `pair`, following the table's splits.
pub fn retrieve_seeds(
    tree: &HierarchyTree,
    table: &AllocationTable,
    node: usize,
    pair: DirectionPair,
    budget: usize,
) -> Vec<usize> {
    let mut out = Vec::new();
    collect(tree, table, node, pair, budget, &mut out);
    out.sort_unstable();
    out
}

fn collect(
    tree: &HierarchyTree,
    table: &AllocationTable,
    node: usize,
    pair: DirectionPair,
    budget: usize,
    out: &mut Vec<usize>,
) {
    if budget == 0 {
        return;
    }
    let Some((l, r)) = tree.children(node) else {
        // A leaf only answers (L,R) with its own vertex; (D,U) is empty.
        if pair == DirectionPair::LeftRight {
            out.push(tree.leaf_vertex(node).expect("leaf has a vertex"));
        }
        return;
    };
    match pair {
        DirectionPair::LeftRight => {
            let (a, b) = table.get(node, pair, budget);
            collect(tree, table, l, DirectionPair::LeftRight, a, out);
            collect(tree, table, r, DirectionPair::LeftRight, b, out);
        }
        DirectionPair::LeftUp | DirectionPair::RightUp => {
            let child = if pair == DirectionPair::LeftUp { l } else { r };
            match tree.parent(node) {
                None => collect(tree, table, child, DirectionPair::LeftRight, budget, out),
                Some(parent) => {
                    let (a, b) = table.get(node, pair, budget);
                    collect(tree, table, child, DirectionPair::LeftRight, a, out);
                    collect(tree, table, parent, away_from_child(tree, node), b, out);
                }
            }
        }
    }
}

/// Seeds placed in directional subtree `dir` of `v` with `budget` seeds.
fn seeds_toward(tree: &HierarchyTree, table: &AllocationTable, v: usize, dir: Direction, budget: usize) -> Vec<usize> {
    let mut out = Vec::new();
    match (dir, tree.children(v)) {
        (Direction::Left, Some((l, _))) => collect(tree, table, l, DirectionPair::LeftRight, budget, &mut out),
        (Direction::Right, Some((_, r))) => collect(tree, table, r, DirectionPair::LeftRight, budget, &mut out),
        (Direction::Up, _) => {
            if let Some(parent) = tree.parent(v) {
                collect(tree, table, parent, away_from_child(tree, v), budget, &mut out);
            }
        }
        (_, None) => {}
    }
    out.sort_unstable();
    out
}

/// What the remaining direction contributes while a row is re-optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Context {
    /// Seeds placed in the third direction by the current table.
    Table,
    /// Nothing outside the pair; reproduces DPIM's per-node subproblem.
    Isolated,
}

/// Local update of one row: for each `i <= k`, the split `(j, i - j)` of `i`
/// seeds between the pair's two directions maximizing `σ` of their seeds
/// together with the table's `k - i` seeds in the remaining direction.
/// Smallest `j` wins ties.
///
/// Budgets are clamped to subtree capacity: row `i` beyond the pair's
/// combined capacity repeats the row at full capacity. At the root `T_U` is
/// empty, so any `U` share is forced to 0.
pub fn mpa_update<O: InfluenceOracle>(
    oracle: &O,
    tree: &HierarchyTree,
    table: &mut AllocationTable,
    node: usize,
    pair: DirectionPair,
) -> Result<()> {
    update_row(oracle, tree, table, node, pair, Context::Table)
}

fn update_row<O: InfluenceOracle>(
    oracle: &O,
    tree: &HierarchyTree,
    table: &mut AllocationTable,
    node: usize,
    pair: DirectionPair,
    context: Context,
) -> Result<()> {
    if tree.is_leaf(node) {
        return Err(Error::InvalidArgument(format!("node {node} is a leaf and has no splits to update")));
    }
    let k = table.k();
    let (d1, d2) = pair.directions();
    let (cap1, cap2) = (direction_capacity(tree, node, d1), direction_capacity(tree, node, d2));
    let top = k.min(cap1 + cap2);
    let splits = |i: usize| i.saturating_sub(cap2)..=i.min(cap1);

    let snapshot: &AllocationTable = table;
    let outside: Vec<Vec<usize>> = (0..=top)
        .map(|i| match context {
            Context::Table => seeds_toward(tree, snapshot, node, pair.remaining(), k - i),
            Context::Isolated => Vec::new(),
        })
        .collect();
    let first: Vec<Vec<usize>> = (0..=cap1.min(k)).map(|j| seeds_toward(tree, snapshot, node, d1, j)).collect();
    let second: Vec<Vec<usize>> = (0..=cap2.min(k)).map(|j| seeds_toward(tree, snapshot, node, d2, j)).collect();

    let contested: Vec<(usize, usize)> = (0..=top)
        .filter(|&i| splits(i).count() > 1)
        .flat_map(|i| splits(i).map(move |j| (i, j)))
        .collect();
    let values = par::map_slice(&contested, |&(i, j)| {
        oracle.sigma(&union_sorted(&[&first[j], &second[i - j], &outside[i]]))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut cursor = 0;
    for i in 0..=top {
        let range = splits(i);
        let width = range.clone().count();
        let j = if width > 1 {
            let best = argmax_first(&values[cursor..cursor + width]).unwrap();
            cursor += width;
            range.start() + best
        } else {
            *range.start()
        };
        table.set(node, pair, i, (j, i - j));
    }
    let full = table.get(node, pair, top);
    for i in top + 1..=k {
        table.set(node, pair, i, full);
    }
    Ok(())
}

/// Fills the (L,R) rows bottom-up with isolated updates. The resulting
/// `retrieve_seeds(root, (L,R), k)` is exactly DPIM's answer.
pub fn dpim_initialize<O: InfluenceOracle>(oracle: &O, tree: &HierarchyTree, k: usize) -> Result<AllocationTable> {
    if k > tree.n() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds the {} vertices",
            tree.n()
        )));
    }
    let mut table = AllocationTable::zeroed(tree, k);
    for level in tree.nodes_by_height().iter().skip(1) {
        for &v in level {
            update_row(oracle, tree, &mut table, v, DirectionPair::LeftRight, Context::Isolated)?;
        }
    }
    Ok(table)
}

#[derive(Debug, Clone)]
pub struct MpaOutcome {
    pub seeds: Vec<usize>,
    /// `σ` of the initial set followed by every accepted improvement.
    pub accepted: Vec<f64>,
    /// Outer sweeps performed (each one down-then-up pass).
    pub sweeps: usize,
    pub table: AllocationTable,
}

/// Message passing: DPIM initialization, then alternating top-down (L,U),
/// (R,U) sweeps and bottom-up (L,R) sweeps while the read-out seed set
/// strictly improves, for at most `max_outer` sweeps. Returns the best set
/// seen. Answers are memoized, so `oracle` must be deterministic.
pub fn mpa_with<O: InfluenceOracle>(oracle: &O, tree: &HierarchyTree, k: usize, max_outer: usize) -> Result<MpaOutcome> {
    let oracle = MemoOracle::new(oracle);
    let mut table = dpim_initialize(&oracle, tree, k)?;
    let root = tree.root();
    let levels = tree.nodes_by_height();
    let height = tree.tree_height();

    let mut best = retrieve_seeds(tree, &table, root, DirectionPair::LeftRight, k);
    let mut best_sigma = oracle.sigma(&best)?.mean;
    let mut best_table = table.clone();
    let mut accepted = vec![best_sigma];
    let mut sweeps = 0;

    while sweeps < max_outer {
        sweeps += 1;
        for h in (1..height).rev() {
            for &v in &levels[h] {
                mpa_update(&oracle, tree, &mut table, v, DirectionPair::LeftUp)?;
                mpa_update(&oracle, tree, &mut table, v, DirectionPair::RightUp)?;
            }
        }
        for level in levels.iter().skip(1) {
            for &v in level {
                mpa_update(&oracle, tree, &mut table, v, DirectionPair::LeftRight)?;
            }
        }
        let candidate = retrieve_seeds(tree, &table, root, DirectionPair::LeftRight, k);
        let sigma = oracle.sigma(&candidate)?.mean;
        if sigma > best_sigma {
            best = candidate;
            best_sigma = sigma;
            best_table = table.clone();
            accepted.push(sigma);
        } else {
            break;
        }
    }

    Ok(MpaOutcome {
        seeds: best,
        accepted,
        sweeps,
        table: best_table,
    })
}
