use std::collections::HashSet;

use crate::error::{Error, Result};

/// A node of a rooted tree. `length` is the branch to the parent, in
/// generations; the root's length is ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub label: Option<String>,
    pub length: f64,
}

/// Rooted tree with labeled leaves and nonnegative branch lengths. Every
/// internal node has at least two children and leaf labels are distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct PhyloTree {
    nodes: Vec<Node>,
    root: usize,
}

impl PhyloTree {
    /// Validates and wraps a node arena. Parent links are rebuilt from the
    /// child lists.
    pub fn from_nodes(mut nodes: Vec<Node>, root: usize) -> Result<Self> {
        if root >= nodes.len() {
            return Err(Error::InvalidArgument(format!("root {root} out of range")));
        }
        for node in &mut nodes {
            node.parent = None;
        }
        for i in 0..nodes.len() {
            for k in 0..nodes[i].children.len() {
                let c = nodes[i].children[k];
                if c >= nodes.len() || c == root || nodes[c].parent.is_some() {
                    return Err(Error::InvalidArgument(format!(
                        "node {c} has a bad parent link"
                    )));
                }
                nodes[c].parent = Some(i);
            }
        }
        let tree = PhyloTree { nodes, root };
        let mut seen = HashSet::new();
        let mut reached = 0;
        for v in tree.preorder() {
            reached += 1;
            let node = &tree.nodes[v];
            if v != tree.root && !(node.length.is_finite() && node.length >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "branch length {} is not a nonnegative number",
                    node.length
                )));
            }
            match node.children.len() {
                0 => {
                    let label = node
                        .label
                        .as_ref()
                        .ok_or_else(|| Error::InvalidArgument("leaf without a label".into()))?;
                    if !seen.insert(label.clone()) {
                        return Err(Error::InvalidArgument(format!(
                            "duplicate leaf label {label}"
                        )));
                    }
                }
                1 => {
                    return Err(Error::InvalidArgument(format!(
                        "node {v} has a single child"
                    )))
                }
                _ => {}
            }
        }
        if reached != tree.nodes.len() {
            return Err(Error::InvalidArgument(
                "node arena contains unreachable nodes".into(),
            ));
        }
        if tree.nodes[root].children.len() < 2 {
            return Err(Error::InvalidArgument(
                "tree needs at least two leaves".into(),
            ));
        }
        Ok(tree)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.nodes[id].children.is_empty()
    }

    /// Node ids with every parent before its children.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v].children.iter().rev());
        }
        out
    }

    /// Leaf labels in sorted order.
    pub fn leaf_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = self
            .nodes
            .iter()
            .filter(|n| n.children.is_empty())
            .filter_map(|n| n.label.clone())
            .collect();
        labels.sort();
        labels
    }

    pub fn num_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.children.is_empty()).count()
    }

    /// Distance from the root to every node.
    pub fn depths(&self) -> Vec<f64> {
        let mut depth = vec![0.0; self.nodes.len()];
        for v in self.preorder() {
            if let Some(p) = self.nodes[v].parent {
                depth[v] = depth[p] + self.nodes[v].length;
            }
        }
        depth
    }

    /// Leaf labels below every node.
    pub fn leaf_sets(&self) -> Vec<Vec<String>> {
        let mut sets: Vec<Vec<String>> = vec![Vec::new(); self.nodes.len()];
        for &v in self.preorder().iter().rev() {
            let node = &self.nodes[v];
            if node.children.is_empty() {
                sets[v] = vec![node.label.clone().expect("validated leaf")];
            } else {
                let mut all: Vec<String> = node
                    .children
                    .iter()
                    .flat_map(|&c| sets[c].iter().cloned())
                    .collect();
                all.sort();
                sets[v] = all;
            }
        }
        sets
    }

    /// Largest root-to-leaf distance.
    pub fn height(&self) -> f64 {
        let depth = self.depths();
        (0..self.nodes.len())
            .filter(|&v| self.is_leaf(v))
            .map(|v| depth[v])
            .fold(0.0, f64::max)
    }

    /// Whether all leaves are at the same distance from the root.
    pub fn is_equidistant(&self, tol: f64) -> bool {
        let depth = self.depths();
        let leaf: Vec<f64> = (0..self.nodes.len())
            .filter(|&v| self.is_leaf(v))
            .map(|v| depth[v])
            .collect();
        let hi = leaf.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = leaf.iter().cloned().fold(f64::INFINITY, f64::min);
        hi - lo <= tol
    }

    /// Lengths of edges between two internal nodes.
    pub fn internal_edge_lengths(&self) -> Vec<f64> {
        (0..self.nodes.len())
            .filter(|&v| v != self.root && !self.is_leaf(v))
            .map(|v| self.nodes[v].length)
            .collect()
    }

    /// Copy with every branch length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let nodes = self
            .nodes
            .iter()
            .map(|n| Node {
                length: n.length * factor,
                ..n.clone()
            })
            .collect();
        PhyloTree::from_nodes(nodes, self.root)
    }
}
