use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;

use super::tree::TreeBuilder;
use super::HierarchyTree;

/// Largest graph [`build_jaccard`] accepts; the pair scan is quadratic.
pub const JACCARD_MAX_VERTICES: usize = 20_000;

/// Merges uniformly random pairs of partitions until one remains.
pub fn build_random_pair(graph: &Graph, seed: u64) -> HierarchyTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = TreeBuilder::with_leaves(graph.n());
    let alive: Vec<usize> = (0..graph.n()).collect();
    merge_random_pairs(&mut builder, alive, &mut rng);
    builder.finish()
}

fn merge_random_pairs(builder: &mut TreeBuilder, mut alive: Vec<usize>, rng: &mut ChaCha8Rng) {
    while alive.len() > 1 {
        let i = rng.gen_range(0..alive.len());
        let mut j = rng.gen_range(0..alive.len() - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = (alive[i], alive[j]);
        let node = builder.merge(a, b);
        let (hi, lo) = (i.max(j), i.min(j));
        alive.swap_remove(hi);
        alive.swap_remove(lo);
        alive.push(node);
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Contracts uniformly random inter-partition edges, then falls back to
/// random pair merges once the partitions are pairwise disconnected.
///
/// Scanning a uniformly shuffled edge list and skipping edges that have
/// become internal picks each next edge uniformly among the remaining
/// inter-partition edges.
pub fn build_random_edge(graph: &Graph, seed: u64) -> HierarchyTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.n();
    let mut builder = TreeBuilder::with_leaves(n);
    let mut sets = DisjointSets::new(n);
    let mut cluster_node: Vec<usize> = (0..n).collect();

    let mut edges = graph.edges().to_vec();
    edges.shuffle(&mut rng);
    for (u, v) in edges {
        let (ru, rv) = (sets.find(u), sets.find(v));
        if ru == rv {
            continue;
        }
        let node = builder.merge(cluster_node[ru], cluster_node[rv]);
        sets.parent[rv] = ru;
        cluster_node[ru] = node;
    }

    let alive: Vec<usize> = (0..n)
        .filter(|&v| sets.find(v) == v)
        .map(|v| cluster_node[v])
        .collect();
    merge_random_pairs(&mut builder, alive, &mut rng);
    builder.finish()
}

#[derive(Clone)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn new(bits: usize) -> Self {
        Bitset(vec![0; bits.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn overlap(&self, other: &Bitset) -> (u64, u64) {
        self.0.iter().zip(&other.0).fold((0, 0), |(i, u), (a, b)| {
            (i + u64::from((a & b).count_ones()), u + u64::from((a | b).count_ones()))
        })
    }
}

/// A candidate merge, ordered so that the preferred merge is the maximum.
#[derive(Clone, Copy, Debug)]
struct Candidate {
    inter: u64,
    union: u64,
    /// `(min vertex of one side, min vertex of the other)`, smaller first.
    key: (usize, usize),
    partner: usize,
}

impl Candidate {
    fn new(inter: u64, union: u64, min_a: usize, min_b: usize, partner: usize) -> Self {
        let (inter, union) = if union == 0 { (0, 1) } else { (inter, union) };
        Candidate {
            inter,
            union,
            key: (min_a.min(min_b), min_a.max(min_b)),
            partner,
        }
    }

    fn better_than(&self, other: &Candidate) -> bool {
        let lhs = u128::from(self.inter) * u128::from(other.union);
        let rhs = u128::from(other.inter) * u128::from(self.union);
        match lhs.cmp(&rhs) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.key < other.key,
        }
    }
}

struct Cluster {
    node: usize,
    min_vertex: usize,
    neighborhood: Bitset,
    best: Option<Candidate>,
}

/// Agglomerative merging by Jaccard similarity of neighborhoods:
/// `|Γ(A) ∩ Γ(B)| / |Γ(A) ∪ Γ(B)|`, with `Γ(X)` the union of the members'
/// neighborhoods in the original graph. Pairs with an empty union score 0;
/// ties go to the lexicographically smallest pair of minimum vertex ids.
pub fn build_jaccard(graph: &Graph) -> Result<HierarchyTree> {
    let n = graph.n();
    if n > JACCARD_MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "jaccard decomposition is limited to {JACCARD_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let mut builder = TreeBuilder::with_leaves(n);
    let mut clusters: Vec<Option<Cluster>> = (0..n)
        .map(|v| {
            let mut neighborhood = Bitset::new(n);
            for &u in graph.neighbors(v) {
                neighborhood.insert(u);
            }
            Some(Cluster {
                node: v,
                min_vertex: v,
                neighborhood,
                best: None,
            })
        })
        .collect();

    let initial: Vec<Option<Candidate>> = par::map_indexed(n, |x| best_partner(&clusters, x));
    for (x, best) in initial.into_iter().enumerate() {
        clusters[x].as_mut().unwrap().best = best;
    }

    for _ in 1..n {
        let (a, cand) = clusters
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().and_then(|c| c.best.map(|b| (i, b))))
            .reduce(|acc, next| if next.1.better_than(&acc.1) { next } else { acc })
            .expect("at least two clusters remain");
        let b = cand.partner;
        let ca = clusters[a].take().unwrap();
        let cb = clusters[b].take().unwrap();
        let (left, right) = if ca.min_vertex < cb.min_vertex { (ca, cb) } else { (cb, ca) };
        let node = builder.merge(left.node, right.node);
        let mut neighborhood = left.neighborhood;
        neighborhood.union_with(&right.neighborhood);
        let slot = a;
        let merged = Cluster {
            node,
            min_vertex: left.min_vertex,
            neighborhood,
            best: None,
        };
        clusters[slot] = Some(merged);

        let scores: Vec<Option<Candidate>> = par::map_indexed(clusters.len(), |x| {
            if x == slot {
                return None;
            }
            let other = clusters[x].as_ref()?;
            let merged = clusters[slot].as_ref().unwrap();
            let (i, u) = merged.neighborhood.overlap(&other.neighborhood);
            Some(Candidate::new(i, u, merged.min_vertex, other.min_vertex, slot))
        });
        let stale: Vec<usize> = (0..clusters.len())
            .filter(|&x| x != slot)
            .filter(|&x| match clusters[x].as_ref().and_then(|c| c.best) {
                Some(best) => best.partner == a || best.partner == b,
                None => clusters[x].is_some(),
            })
            .collect();
        let mut merged_best: Option<Candidate> = None;
        for (x, score) in scores.iter().enumerate() {
            let Some(score) = score else { continue };
            let from_merged = Candidate { partner: x, ..*score };
            if merged_best.is_none_or(|m| from_merged.better_than(&m)) {
                merged_best = Some(from_merged);
            }
            let c = clusters[x].as_mut().unwrap();
            if let Some(best) = c.best {
                if best.partner != a && best.partner != b && score.better_than(&best) {
                    c.best = Some(*score);
                }
            }
        }
        clusters[slot].as_mut().unwrap().best = merged_best;
        let refreshed: Vec<Option<Candidate>> = par::map_slice(&stale, |&x| best_partner(&clusters, x));
        for (x, best) in stale.into_iter().zip(refreshed) {
            clusters[x].as_mut().unwrap().best = best;
        }
    }
    Ok(builder.finish())
}

fn best_partner(clusters: &[Option<Cluster>], x: usize) -> Option<Candidate> {
    let me = clusters[x].as_ref()?;
    let mut best: Option<Candidate> = None;
    for (y, other) in clusters.iter().enumerate() {
        if y == x {
            continue;
        }
        let Some(other) = other else { continue };
        let (i, u) = me.neighborhood.overlap(&other.neighborhood);
        let cand = Candidate::new(i, u, me.min_vertex, other.min_vertex, y);
        if best.is_none_or(|b| cand.better_than(&b)) {
            best = Some(cand);
        }
    }
    best
}
