//! Top-down decomposition by recursive balanced bisection.
//!
//! Each split grows a region greedily from a random start vertex until it
//! holds `ceil(s/2)` vertices, then improves the cut with Kernighan-Lin
//! swap passes. The best of a few starts is kept.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

use super::tree::TreeBuilder;
use super::HierarchyTree;

const GROWING_STARTS: usize = 4;
const KL_MAX_PASSES: usize = 8;
/// Candidates per side considered when choosing a swap pair.
const KL_SHORTLIST: usize = 4;

pub fn build_bisection(graph: &Graph, seed: u64) -> HierarchyTree {
    let n = graph.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = TreeBuilder::with_leaves(n);
    let mut local = vec![usize::MAX; n];
    let all: Vec<usize> = (0..n).collect();
    split_recursive(graph, &all, &mut builder, &mut local, &mut rng);
    builder.finish()
}

fn split_recursive(
    graph: &Graph,
    vertices: &[usize],
    builder: &mut TreeBuilder,
    local: &mut [usize],
    rng: &mut ChaCha8Rng,
) -> usize {
    match vertices.len() {
        1 => vertices[0],
        2 => builder.merge(vertices[0], vertices[1]),
        _ => {
            let (left, right) = bisect(graph, vertices, local, rng);
            let l = split_recursive(graph, &left, builder, local, rng);
            let r = split_recursive(graph, &right, builder, local, rng);
            builder.merge(l, r)
        }
    }
}

/// Splits `vertices` into parts of sizes `ceil(s/2)` and `floor(s/2)`.
pub(crate) fn bisect(
    graph: &Graph,
    vertices: &[usize],
    local: &mut [usize],
    rng: &mut ChaCha8Rng,
) -> (Vec<usize>, Vec<usize>) {
    let s = vertices.len();
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    // Adjacency restricted to this vertex set, in local ids.
    let adj: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| {
            graph
                .neighbors(v)
                .iter()
                .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                .collect()
        })
        .collect();
    for &v in vertices {
        local[v] = usize::MAX;
    }

    let target = s.div_ceil(2);
    let mut best: Option<(usize, Vec<bool>)> = None;
    for _ in 0..GROWING_STARTS.min(s) {
        let start = rng.gen_range(0..s);
        let mut side = grow_region(&adj, start, target, rng);
        refine(&adj, &mut side);
        let cut = cut_size(&adj, &side);
        if best.as_ref().is_none_or(|(c, _)| cut < *c) {
            best = Some((cut, side));
        }
        if cut == 0 {
            break;
        }
    }
    let (_, side) = best.expect("at least one start");
    let mut left = Vec::with_capacity(target);
    let mut right = Vec::with_capacity(s - target);
    for (i, &v) in vertices.iter().enumerate() {
        if side[i] {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    (left, right)
}

fn cut_size(adj: &[Vec<usize>], side: &[bool]) -> usize {
    adj.iter()
        .enumerate()
        .map(|(v, nb)| nb.iter().filter(|&&u| u > v && side[u] != side[v]).count())
        .sum()
}

/// Greedy graph growing: repeatedly absorbs the frontier vertex with the
/// most edges into the region relative to edges leaving it. An empty
/// frontier (disconnected remainder) restarts from a random free vertex.
fn grow_region(adj: &[Vec<usize>], start: usize, target: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let s = adj.len();
    let mut inside = vec![false; s];
    let mut links = vec![0i64; s];
    let mut on_frontier = vec![false; s];
    let mut frontier: Vec<usize> = Vec::new();
    let mut size = 0;

    let absorb = |v: usize,
                      inside: &mut Vec<bool>,
                      links: &mut Vec<i64>,
                      on_frontier: &mut Vec<bool>,
                      frontier: &mut Vec<usize>| {
        inside[v] = true;
        for &u in &adj[v] {
            links[u] += 1;
            if !inside[u] && !on_frontier[u] {
                on_frontier[u] = true;
                frontier.push(u);
            }
        }
    };

    absorb(start, &mut inside, &mut links, &mut on_frontier, &mut frontier);
    size += 1;
    while size < target {
        frontier.retain(|&u| !inside[u]);
        let next = frontier
            .iter()
            .copied()
            .max_by(|&a, &b| {
                let ga = 2 * links[a] - adj[a].len() as i64;
                let gb = 2 * links[b] - adj[b].len() as i64;
                ga.cmp(&gb).then(b.cmp(&a))
            })
            .unwrap_or_else(|| {
                let free: Vec<usize> = (0..s).filter(|&v| !inside[v]).collect();
                free[rng.gen_range(0..free.len())]
            });
        absorb(next, &mut inside, &mut links, &mut on_frontier, &mut frontier);
        size += 1;
    }
    inside
}

/// Kernighan-Lin passes on a balanced split. `side[v]` is true for the
/// first part. Each pass tentatively swaps pairs, locks them, and keeps the
/// prefix of swaps with the largest cumulative gain.
fn refine(adj: &[Vec<usize>], side: &mut [bool]) {
    let s = adj.len();
    for _ in 0..KL_MAX_PASSES {
        // D(v) = external - internal edge count.
        let mut d: Vec<i64> = (0..s)
            .map(|v| {
                adj[v]
                    .iter()
                    .map(|&u| if side[u] != side[v] { 1 } else { -1 })
                    .sum()
            })
            .collect();
        let mut locked = vec![false; s];
        let mut swaps: Vec<(usize, usize)> = Vec::new();
        let mut cumulative = 0i64;
        let mut best_gain = 0i64;
        let mut best_len = 0usize;
        let steps = side.iter().filter(|&&x| x).count().min(side.iter().filter(|&&x| !x).count());

        for _ in 0..steps {
            let a_list = shortlist(&d, &locked, side, true);
            let b_list = shortlist(&d, &locked, side, false);
            let mut choice: Option<(i64, usize, usize)> = None;
            for &a in &a_list {
                for &b in &b_list {
                    let w = adj[a].iter().filter(|&&u| u == b).count() as i64;
                    let g = d[a] + d[b] - 2 * w;
                    if choice.is_none_or(|(best, _, _)| g > best) {
                        choice = Some((g, a, b));
                    }
                }
            }
            let Some((g, a, b)) = choice else { break };
            locked[a] = true;
            locked[b] = true;
            side[a] = !side[a];
            side[b] = !side[b];
            for &moved in &[a, b] {
                for &u in &adj[moved] {
                    // `moved` changed sides: an internal edge became external
                    // for u, or vice versa.
                    d[u] += if side[u] == side[moved] { -2 } else { 2 };
                }
            }
            swaps.push((a, b));
            cumulative += g;
            if cumulative > best_gain {
                best_gain = cumulative;
                best_len = swaps.len();
            }
        }
        for &(a, b) in swaps[best_len..].iter().rev() {
            side[a] = !side[a];
            side[b] = !side[b];
        }
        if best_gain <= 0 {
            break;
        }
    }
}

fn shortlist(d: &[i64], locked: &[bool], side: &[bool], which: bool) -> Vec<usize> {
    let mut top: Vec<usize> = Vec::with_capacity(KL_SHORTLIST + 1);
    for v in 0..d.len() {
        if locked[v] || side[v] != which {
            continue;
        }
        let pos = top.iter().position(|&t| d[v] > d[t]).unwrap_or(top.len());
        if pos < KL_SHORTLIST {
            top.insert(pos, v);
            top.truncate(KL_SHORTLIST);
        }
    }
    top
}
