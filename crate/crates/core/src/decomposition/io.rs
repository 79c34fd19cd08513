//! The `hier v1` tree format:
//!
//! ```text
//! hier v1 <n>
//! <node_id> <parent_id|-1> <leaf_vertex|-1>     (2n-1 lines)
//! ```
//!
//! Node ids are dense in `0..2n-1`. Children are ordered by their line
//! position: the first listed child of a node is its left child.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::HierarchyTree;

pub fn parse_tree(text: &str) -> Result<HierarchyTree> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| Error::format(1, "empty tree file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let n: usize = match fields.as_slice() {
        ["hier", "v1", n] => n
            .parse()
            .map_err(|_| Error::format(header_line, format!("bad leaf count {n:?}")))?,
        _ => return Err(Error::format(header_line, "expected header \"hier v1 <n>\"")),
    };
    if n == 0 {
        return Err(Error::format(header_line, "a tree needs at least one leaf"));
    }
    let nodes = 2 * n - 1;

    let mut parent_of: Vec<Option<Option<usize>>> = vec![None; nodes];
    let mut leaf_vertex: Vec<Option<usize>> = vec![None; nodes];
    let mut line_of = vec![0usize; nodes];
    let mut order = Vec::with_capacity(nodes);

    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::format(lineno, "expected \"<node> <parent> <leaf_vertex>\""));
        }
        let int = |s: &str| -> Result<i64> {
            s.parse()
                .map_err(|_| Error::format(lineno, format!("not an integer: {s:?}")))
        };
        let (id, parent, leaf) = (int(fields[0])?, int(fields[1])?, int(fields[2])?);
        if id < 0 || id as usize >= nodes {
            return Err(Error::format(lineno, format!("node id {id} outside 0..{nodes}")));
        }
        let id = id as usize;
        if parent_of[id].is_some() {
            return Err(Error::format(lineno, format!("node {id} listed twice")));
        }
        let parent = match parent {
            -1 => None,
            p if p >= 0 && (p as usize) < nodes => Some(p as usize),
            p => return Err(Error::format(lineno, format!("parent id {p} outside 0..{nodes}"))),
        };
        if parent == Some(id) {
            return Err(Error::format(lineno, format!("node {id} is its own parent")));
        }
        leaf_vertex[id] = match leaf {
            -1 => None,
            x if x >= 0 && (x as usize) < n => Some(x as usize),
            x => return Err(Error::format(lineno, format!("leaf vertex {x} outside 0..{n}"))),
        };
        parent_of[id] = Some(parent);
        line_of[id] = lineno;
        order.push(id);
    }
    if order.len() != nodes {
        return Err(Error::format(
            header_line,
            format!("expected {nodes} node lines, found {}", order.len()),
        ));
    }

    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &id in &order {
        if let Some(Some(p)) = parent_of[id] {
            kids[p].push(id);
        }
    }
    let mut children = vec![None; nodes];
    for id in 0..nodes {
        match (kids[id].len(), leaf_vertex[id]) {
            (0, Some(_)) => {}
            (2, None) => children[id] = Some((kids[id][0], kids[id][1])),
            (k, Some(_)) => {
                return Err(Error::format(line_of[id], format!("leaf node {id} has {k} children")))
            }
            (k, None) => {
                return Err(Error::format(
                    line_of[id],
                    format!("internal node {id} has {k} children, expected 2"),
                ))
            }
        }
    }
    HierarchyTree::from_parts(children, leaf_vertex).map_err(|e| match e {
        Error::Inconsistent(msg) => Error::format(header_line, msg),
        other => other,
    })
}

/// Serializes with nodes renumbered in preorder (root is node 0, left
/// subtrees before right).
pub fn format_tree(tree: &HierarchyTree) -> String {
    let nodes = tree.node_count();
    let mut new_id = vec![0usize; nodes];
    let mut order = Vec::with_capacity(nodes);
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        new_id[v] = order.len();
        order.push(v);
        if let Some((l, r)) = tree.children(v) {
            stack.push(r);
            stack.push(l);
        }
    }
    let mut out = format!("hier v1 {}\n", tree.n());
    for &v in &order {
        let parent = tree.parent(v).map_or(-1, |p| new_id[p] as i64);
        let leaf = tree.leaf_vertex(v).map_or(-1, |x| x as i64);
        out.push_str(&format!("{} {} {}\n", new_id[v], parent, leaf));
    }
    out
}

pub fn read_tree(path: impl AsRef<Path>) -> Result<HierarchyTree> {
    parse_tree(&fs::read_to_string(path)?)
}

pub fn write_tree(tree: &HierarchyTree, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_tree(tree))?;
    Ok(())
}
