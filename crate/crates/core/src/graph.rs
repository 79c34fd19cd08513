//! Simple undirected graphs, SNAP-style edge-list I/O and a G(n, m) sampler.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An immutable simple undirected graph on vertices `0..n`, stored as CSR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    edges: Vec<(usize, usize)>,
    /// Original label of each dense vertex id, as it appeared in the source.
    original_ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops and duplicate edges (in
    /// either orientation) are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u != v {
                list.push((u.min(v), u.max(v)));
            }
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_edges(n, list, (0..n as u64).collect()))
    }

    fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>, original_ids: Vec<u64>) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; 2 * edges.len()];
        for &(u, v) in &edges {
            neighbors[fill[u]] = v;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets,
            neighbors,
            edges,
            original_ids,
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn original_id(&self, v: usize) -> u64 {
        self.original_ids[v]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Dense id of an original label.
    pub fn dense_id(&self, original: u64) -> Option<usize> {
        // Generated and header-carrying files use the identity mapping.
        if let Some(&o) = self.original_ids.get(original as usize) {
            if o == original {
                return Some(original as usize);
            }
        }
        self.original_ids.iter().position(|&o| o == original)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Parses SNAP-style edge-list text. See [`load_edge_list`].
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut ids: HashMap<u64, usize> = HashMap::new();
        let mut original_ids: Vec<u64> = Vec::new();
        let mut raw_edges = Vec::new();
        let mut seen_edge = false;

        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                if !seen_edge {
                    if let Some(count) = parse_nodes_header(comment, lineno)? {
                        for id in original_ids.len() as u64..count {
                            ids.insert(id, id as usize);
                            original_ids.push(id);
                        }
                    }
                }
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next()) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::parse(lineno, "expected two vertex ids")),
            };
            let parse = |tok: &str| {
                tok.parse::<u64>()
                    .map_err(|_| Error::parse(lineno, format!("not a vertex id: {tok:?}")))
            };
            let (a, b) = (parse(a)?, parse(b)?);
            seen_edge = true;
            let mut intern = |id: u64| {
                *ids.entry(id).or_insert_with(|| {
                    original_ids.push(id);
                    original_ids.len() - 1
                })
            };
            let (u, v) = (intern(a), intern(b));
            if u != v {
                raw_edges.push((u.min(v), u.max(v)));
            }
        }

        if original_ids.is_empty() {
            return Err(Error::InvalidArgument("edge list describes an empty graph".into()));
        }
        raw_edges.sort_unstable();
        raw_edges.dedup();
        Ok(Self::from_sorted_edges(original_ids.len(), raw_edges, original_ids))
    }

    /// Serializes as `# nodes: N` followed by one `u v` line per edge
    /// (`u < v`, ascending). Vertex labels are the dense ids.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 * self.m() + 32);
        out.push_str(&format!("# nodes: {}\n", self.n()));
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = fs::File::create(path)?;
        file.write_all(self.to_edge_list().as_bytes())?;
        Ok(())
    }
}

fn parse_nodes_header(comment: &str, lineno: usize) -> Result<Option<u64>> {
    let Some(rest) = comment.trim().strip_prefix("nodes:") else {
        return Ok(None);
    };
    rest.trim()
        .parse::<u64>()
        .map(Some)
        .map_err(|_| Error::parse(lineno, format!("bad node count {:?}", rest.trim())))
}

/// Loads a SNAP-style edge list: `#` lines are comments, each other line
/// holds two whitespace-separated integer ids. Ids are remapped to dense
/// `0..n` in order of first appearance; self-loops and duplicates are
/// dropped. A leading `# nodes: N` header pins ids `0..N` to themselves so
/// that isolated vertices survive a write/read cycle.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    Graph::parse_edge_list(&text)
}

/// Samples a uniform simple graph with exactly `n` vertices and `m` edges.
pub fn gen_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let pairs = n.saturating_mul(n.saturating_sub(1)) / 2;
    if m > pairs {
        return Err(Error::InvalidArgument(format!(
            "{m} edges do not fit in a simple graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = index::sample(&mut rng, pairs, m)
        .into_iter()
        .map(|k| pair_from_index(n, k))
        .collect();
    edges.sort_unstable();
    Ok(Graph::from_sorted_edges(n, edges, (0..n as u64).collect()))
}

/// Inverse of the lexicographic ranking of pairs `u < v` over `n` vertices.
fn pair_from_index(n: usize, k: usize) -> (usize, usize) {
    // Row u starts at u*(2n-u-1)/2.
    let start = |u: usize| u * (2 * n - u - 1) / 2;
    let nf = n as f64;
    let disc = (2.0 * nf - 1.0).powi(2) - 8.0 * k as f64;
    let mut u = (((2.0 * nf - 1.0) - disc.max(0.0).sqrt()) / 2.0).floor() as usize;
    u = u.min(n - 2);
    while u > 0 && start(u) > k {
        u -= 1;
    }
    while start(u + 1) <= k {
        u += 1;
    }
    (u, u + 1 + (k - start(u)))
}
