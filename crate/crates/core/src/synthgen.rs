//! Synthetic instances: the directed `(d, l, t)`-hierarchical network and the
//! two-stars-plus-clique instance that separates greedy from DPIM.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cascade::CascadeModel;
use crate::decomposition::{merge_balanced, HierarchyTree, TreeBuilder};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Steps after which a walk is abandoned and restarted.
pub const WALK_STEP_CAP: usize = 1_000_000;
/// Walks per requested target before a vertex is declared unsatisfiable.
const REDRAWS_PER_TARGET: usize = 100_000;

/// A complete binary tree of depth `d` in heap layout (root 1, children of
/// `x` at `2x` and `2x+1`, leaves `2^d..2^(d+1)`), with a weight on the edge
/// above every non-root node.
#[derive(Debug, Clone)]
pub struct WeightedGuideTree {
    depth: u32,
    /// `weight[x]` is the weight of edge `(x, x/2)`; entries 0 and 1 unused.
    weight: Vec<u32>,
}

impl WeightedGuideTree {
    /// Draws every edge weight i.i.d. from Binomial(`l`, 1/2).
    pub fn sample(depth: u32, l: u32, rng: &mut impl Rng) -> Self {
        let nodes = 1usize << (depth + 1);
        let mut weight = vec![0u32; nodes];
        for w in weight.iter_mut().skip(2) {
            *w = binomial_half(l, rng);
        }
        WeightedGuideTree { depth, weight }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn leaves(&self) -> usize {
        1 << self.depth
    }

    /// Weight of the edge between `x` and its parent.
    pub fn weight_above(&self, x: usize) -> u32 {
        self.weight[x]
    }

    fn is_leaf(&self, x: usize) -> bool {
        x >= self.leaves()
    }

    /// One walk from leaf `vertex`; `None` when the step cap is hit.
    fn walk(&self, vertex: usize, rng: &mut impl Rng) -> Option<usize> {
        let mut prev = 0usize;
        let mut cur = self.leaves() + vertex;
        let mut options: Vec<(usize, u32)> = Vec::with_capacity(3);
        for _ in 0..WALK_STEP_CAP {
            options.clear();
            if cur > 1 {
                options.push((cur / 2, self.weight[cur]));
            }
            if !self.is_leaf(cur) {
                options.push((2 * cur, self.weight[2 * cur]));
                options.push((2 * cur + 1, self.weight[2 * cur + 1]));
            }
            options.retain(|&(next, _)| next != prev);
            let total: u64 = options.iter().map(|&(_, w)| u64::from(w)).sum();
            let next = if total == 0 {
                options[rng.gen_range(0..options.len())].0
            } else {
                let mut pick = rng.gen_range(0..total);
                let mut chosen = options[options.len() - 1].0;
                for &(next, w) in &options {
                    if pick < u64::from(w) {
                        chosen = next;
                        break;
                    }
                    pick -= u64::from(w);
                }
                chosen
            };
            prev = cur;
            cur = next;
            if self.is_leaf(cur) {
                return Some(cur - self.leaves());
            }
        }
        None
    }

    /// The tree's topology as a decomposition of its leaves.
    pub fn to_hierarchy(&self) -> HierarchyTree {
        let mut builder = TreeBuilder::with_leaves(self.leaves());
        self.build_node(1, &mut builder);
        builder.finish()
    }

    fn build_node(&self, x: usize, builder: &mut TreeBuilder) -> usize {
        if self.is_leaf(x) {
            return x - self.leaves();
        }
        let l = self.build_node(2 * x, builder);
        let r = self.build_node(2 * x + 1, builder);
        builder.merge(l, r)
    }
}

fn binomial_half(trials: u32, rng: &mut impl Rng) -> u32 {
    let mut left = trials;
    let mut count = 0;
    while left >= 64 {
        count += rng.gen::<u64>().count_ones();
        left -= 64;
    }
    if left > 0 {
        count += (rng.gen::<u64>() & ((1u64 << left) - 1)).count_ones();
    }
    count
}

#[derive(Debug, Clone)]
pub struct HierarchicalInstance {
    pub graph: Graph,
    /// The guide tree's topology, used as the ground-truth decomposition.
    pub truth_tree: HierarchyTree,
    /// Directed walk targets of each vertex, before simplification.
    pub out_targets: Vec<Vec<usize>>,
    pub guide: WeightedGuideTree,
}

/// Samples the directed `(d, l, t)`-hierarchical network on `2^d` vertices
/// and returns its undirected simplification with the guide topology.
pub fn gen_hierarchical(d: u32, l: u32, t: usize, seed: u64) -> Result<HierarchicalInstance> {
    if d == 0 || d > 24 {
        return Err(Error::InvalidArgument(format!("depth {d} must be in 1..=24")));
    }
    if l == 0 {
        return Err(Error::InvalidArgument("binomial trial count l must be at least 1".into()));
    }
    let n = 1usize << d;
    if t > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "cannot draw {t} distinct targets among {} other vertices",
            n - 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let guide = WeightedGuideTree::sample(d, l, &mut rng);

    let mut out_targets = Vec::with_capacity(n);
    let mut is_target = vec![false; n];
    for v in 0..n {
        let mut targets = Vec::with_capacity(t);
        let mut walks = 0usize;
        while targets.len() < t {
            walks += 1;
            if walks > REDRAWS_PER_TARGET * t.max(1) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} could not reach {t} distinct targets; zero-weight edges cut it off"
                )));
            }
            let Some(target) = guide.walk(v, &mut rng) else { continue };
            if target == v || is_target[target] {
                continue;
            }
            is_target[target] = true;
            targets.push(target);
        }
        for &x in &targets {
            is_target[x] = false;
        }
        out_targets.push(targets);
    }

    let edges = out_targets
        .iter()
        .enumerate()
        .flat_map(|(v, ts)| ts.iter().map(move |&u| (v, u)));
    let graph = Graph::from_edges(n, edges)?;
    Ok(HierarchicalInstance {
        graph,
        truth_tree: guide.to_hierarchy(),
        out_targets,
        guide,
    })
}

/// Two stars with `n^2` leaves each and an `n`-clique, under the two-step
/// contagion with single-neighbor probability `1/n^2`.
#[derive(Debug, Clone)]
pub struct WorstCaseInstance {
    pub graph: Graph,
    pub model: CascadeModel,
    /// Clique and both stars each form a whole subtree.
    pub truth_tree: HierarchyTree,
    pub n: usize,
}

impl WorstCaseInstance {
    pub fn star_centers(&self) -> [usize; 2] {
        [0, self.n * self.n + 1]
    }

    pub fn clique(&self) -> Vec<usize> {
        let start = 2 * self.n * self.n + 2;
        (start..start + self.n).collect()
    }
}

pub fn gen_worstcase(n: usize) -> Result<WorstCaseInstance> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("worst-case instance needs n >= 3, got {n}")));
    }
    let leaves = n * n;
    let total = 2 * leaves + n + 2;
    let star1: Vec<usize> = (0..=leaves).collect();
    let star2: Vec<usize> = (leaves + 1..=2 * leaves + 1).collect();
    let clique: Vec<usize> = (2 * leaves + 2..total).collect();

    let mut edges = Vec::with_capacity(2 * leaves + n * (n - 1) / 2);
    for star in [&star1, &star2] {
        edges.extend(star[1..].iter().map(|&leaf| (star[0], leaf)));
    }
    for (i, &a) in clique.iter().enumerate() {
        edges.extend(clique[i + 1..].iter().map(|&b| (a, b)));
    }
    let graph = Graph::from_edges(total, edges)?;

    let mut builder = TreeBuilder::with_leaves(total);
    let s1 = merge_balanced(&mut builder, &star1);
    let s2 = merge_balanced(&mut builder, &star2);
    let c = merge_balanced(&mut builder, &clique);
    let stars = builder.merge(s1, s2);
    builder.merge(stars, c);

    Ok(WorstCaseInstance {
        graph,
        model: CascadeModel::two_step(1.0 / leaves as f64)?,
        truth_tree: builder.finish(),
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_is_a_single_edge() {
        let inst = gen_hierarchical(1, 5, 1, 3).unwrap();
        assert_eq!(inst.graph.n(), 2);
        assert_eq!(inst.graph.edges(), &[(0, 1)]);
        assert_eq!(inst.out_targets, vec![vec![1], vec![0]]);
    }

    #[test]
    fn too_many_targets_rejected() {
        assert!(gen_hierarchical(2, 5, 4, 1).is_err());
        assert!(gen_hierarchical(2, 5, 3, 1).is_ok());
    }

    #[test]
    fn worst_case_sizes() {
        let w = gen_worstcase(3).unwrap();
        assert_eq!((w.graph.n(), w.graph.m()), (23, 21));
        assert!((w.model.f(1, 9) - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(gen_worstcase(20).unwrap().graph.n(), 822);
        assert!(gen_worstcase(2).is_err());
    }

    #[test]
    fn binomial_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let total: u64 = (0..20_000).map(|_| u64::from(binomial_half(15, &mut rng))).sum();
        let mean = total as f64 / 20_000.0;
        assert!((mean - 7.5).abs() < 0.05, "{mean}");
        assert!((0..1000).all(|_| binomial_half(70, &mut rng) <= 70));
    }
}
