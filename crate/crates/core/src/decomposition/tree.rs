use crate::error::{Error, Result};

/// A rooted full binary tree whose leaves are the vertices `0..n` of a graph.
///
/// Node ids are dense in `0..2n-1`. Sizes, heights and depths are computed
/// once at construction; the tree is immutable afterwards.
#[derive(Debug, Clone)]
pub struct HierarchyTree {
    parent: Vec<Option<usize>>,
    children: Vec<Option<(usize, usize)>>,
    leaf_vertex: Vec<Option<usize>>,
    leaf_node: Vec<usize>,
    size: Vec<usize>,
    height: Vec<usize>,
    depth: Vec<usize>,
    root: usize,
}

impl HierarchyTree {
    /// Assembles and validates a tree from per-node children and leaf labels.
    pub fn from_parts(children: Vec<Option<(usize, usize)>>, leaf_vertex: Vec<Option<usize>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::Inconsistent(msg));
        let nodes = children.len();
        if nodes == 0 || leaf_vertex.len() != nodes {
            return bad("tree has no nodes or mismatched node tables".into());
        }
        let n = leaf_vertex.iter().filter(|l| l.is_some()).count();
        if nodes != 2 * n - 1 {
            return bad(format!("{nodes} nodes cannot form a full binary tree over {n} leaves"));
        }

        let mut parent = vec![None; nodes];
        for (v, kids) in children.iter().enumerate() {
            match (kids, leaf_vertex[v]) {
                (Some(_), Some(_)) => return bad(format!("leaf node {v} has children")),
                (None, None) => return bad(format!("internal node {v} has no children")),
                _ => {}
            }
            if let Some((l, r)) = *kids {
                for c in [l, r] {
                    if c >= nodes {
                        return bad(format!("node {v} has out-of-range child {c}"));
                    }
                    if parent[c].is_some() {
                        return bad(format!("node {c} has two parents"));
                    }
                    parent[c] = Some(v);
                }
                if l == r {
                    return bad(format!("node {v} lists child {l} twice"));
                }
            }
        }

        let mut leaf_node = vec![usize::MAX; n];
        for (v, leaf) in leaf_vertex.iter().enumerate() {
            if let Some(x) = *leaf {
                if x >= n {
                    return bad(format!("leaf vertex {x} out of range for {n} leaves"));
                }
                if leaf_node[x] != usize::MAX {
                    return bad(format!("vertex {x} appears on two leaves"));
                }
                leaf_node[x] = v;
            }
        }

        let roots: Vec<usize> = (0..nodes).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return bad(format!("expected one root, found {}", roots.len()));
        }
        let root = roots[0];

        // Preorder walk from the root; a cycle leaves nodes unreached.
        let mut order = Vec::with_capacity(nodes);
        let mut depth = vec![0usize; nodes];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            if let Some((l, r)) = children[v] {
                depth[l] = depth[v] + 1;
                depth[r] = depth[v] + 1;
                stack.push(r);
                stack.push(l);
            }
            if order.len() > nodes {
                break;
            }
        }
        if order.len() != nodes {
            return bad("tree contains a cycle or unreachable nodes".into());
        }

        let mut size = vec![1usize; nodes];
        let mut height = vec![0usize; nodes];
        for &v in order.iter().rev() {
            if let Some((l, r)) = children[v] {
                size[v] = size[l] + size[r];
                height[v] = 1 + height[l].max(height[r]);
            }
        }

        Ok(HierarchyTree {
            parent,
            children,
            leaf_vertex,
            leaf_node,
            size,
            height,
            depth,
            root,
        })
    }

    /// Number of leaves (graph vertices).
    pub fn n(&self) -> usize {
        self.leaf_node.len()
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> Option<(usize, usize)> {
        self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_none()
    }

    pub fn leaf_vertex(&self, v: usize) -> Option<usize> {
        self.leaf_vertex[v]
    }

    /// Tree node holding graph vertex `x`.
    pub fn leaf_node(&self, x: usize) -> usize {
        self.leaf_node[x]
    }

    /// `|T(v)|`.
    pub fn size(&self, v: usize) -> usize {
        self.size[v]
    }

    pub fn height(&self, v: usize) -> usize {
        self.height[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Height of the root.
    pub fn tree_height(&self) -> usize {
        self.height[self.root]
    }

    /// Whether `v` is the left child of its parent.
    pub fn is_left_child(&self, v: usize) -> bool {
        match self.parent[v] {
            Some(p) => self.children[p].map(|(l, _)| l == v).unwrap_or(false),
            None => false,
        }
    }

    /// `T(v)`: graph vertices under `v`, in left-to-right leaf order.
    pub fn leaves_under(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size[v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            match self.children[x] {
                Some((l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
                None => out.push(self.leaf_vertex[x].expect("leaf without vertex")),
            }
        }
        out
    }

    /// Node ids grouped by height, lowest first; ids ascend within a group.
    pub fn nodes_by_height(&self) -> Vec<Vec<usize>> {
        let mut levels = vec![Vec::new(); self.tree_height() + 1];
        for v in 0..self.node_count() {
            levels[self.height[v]].push(v);
        }
        levels
    }

    /// Lowest common ancestor of the leaves holding vertices `x` and `y`.
    pub fn lca(&self, x: usize, y: usize) -> usize {
        let (mut a, mut b) = (self.leaf_node[x], self.leaf_node[y]);
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    /// Smallest node whose leaf set contains all of `vertices`.
    pub fn lca_of(&self, vertices: &[usize]) -> Option<usize> {
        let (&first, rest) = vertices.split_first()?;
        let mut acc = self.leaf_node[first];
        for &x in rest {
            let mut other = self.leaf_node[x];
            while self.depth[acc] > self.depth[other] {
                acc = self.parent[acc].unwrap();
            }
            while self.depth[other] > self.depth[acc] {
                other = self.parent[other].unwrap();
            }
            while acc != other {
                acc = self.parent[acc].unwrap();
                other = self.parent[other].unwrap();
            }
        }
        Some(acc)
    }

    /// Same shape and leaf labels, ignoring node numbering.
    pub fn structurally_equal(&self, other: &HierarchyTree) -> bool {
        if self.node_count() != other.node_count() {
            return false;
        }
        let mut stack = vec![(self.root, other.root)];
        while let Some((a, b)) = stack.pop() {
            match (self.children[a], other.children[b]) {
                (Some((al, ar)), Some((bl, br))) => {
                    stack.push((al, bl));
                    stack.push((ar, br));
                }
                (None, None) => {
                    if self.leaf_vertex[a] != other.leaf_vertex[b] {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Copy with the children of `v` exchanged.
    pub fn with_swapped_children(&self, v: usize) -> HierarchyTree {
        let mut children = self.children.clone();
        if let Some((l, r)) = children[v] {
            children[v] = Some((r, l));
        }
        HierarchyTree::from_parts(children, self.leaf_vertex.clone()).expect("swap keeps validity")
    }

    /// Checks that the leaves are exactly the vertices of a graph on `n`.
    pub fn check_vertex_count(&self, n: usize) -> Result<()> {
        if self.n() == n {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!(
                "tree has {} leaves but the graph has {n} vertices",
                self.n()
            )))
        }
    }
}

/// Incremental construction: leaves first, then merges.
#[derive(Debug, Clone)]
pub(crate) struct TreeBuilder {
    children: Vec<Option<(usize, usize)>>,
    leaf_vertex: Vec<Option<usize>>,
}

impl TreeBuilder {
    /// Starts with leaf node `v` holding vertex `v` for every `v < n`.
    pub(crate) fn with_leaves(n: usize) -> Self {
        let mut children = Vec::with_capacity(2 * n);
        let mut leaf_vertex = Vec::with_capacity(2 * n);
        for v in 0..n {
            children.push(None);
            leaf_vertex.push(Some(v));
        }
        TreeBuilder { children, leaf_vertex }
    }

    pub(crate) fn merge(&mut self, left: usize, right: usize) -> usize {
        self.children.push(Some((left, right)));
        self.leaf_vertex.push(None);
        self.children.len() - 1
    }

    pub(crate) fn finish(self) -> HierarchyTree {
        HierarchyTree::from_parts(self.children, self.leaf_vertex).expect("builder produced a valid tree")
    }
}

/// Balanced merge of the given subtree roots, left to right.
pub(crate) fn merge_balanced(builder: &mut TreeBuilder, nodes: &[usize]) -> usize {
    match nodes.len() {
        0 => panic!("cannot merge an empty list"),
        1 => nodes[0],
        len => {
            let mid = len.div_ceil(2);
            let l = merge_balanced(builder, &nodes[..mid]);
            let r = merge_balanced(builder, &nodes[mid..]);
            builder.merge(l, r)
        }
    }
}
