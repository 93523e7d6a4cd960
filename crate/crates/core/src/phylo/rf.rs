use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::tree::PhyloTree;

/// The clades of a rooted tree: leaf sets of internal non-root nodes with at
/// least two leaves, each as a sorted label list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CladeSet {
    pub clades: BTreeSet<Vec<String>>,
}

impl CladeSet {
    pub fn len(&self) -> usize {
        self.clades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clades.is_empty()
    }

    /// Whether any two clades are nested or disjoint.
    pub fn is_laminar(&self) -> bool {
        let sets: Vec<BTreeSet<&String>> = self.clades.iter().map(|c| c.iter().collect()).collect();
        sets.iter().enumerate().all(|(i, a)| {
            sets[i + 1..]
                .iter()
                .all(|b| a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b))
        })
    }
}

/// Canonical topology of a tree, ignoring branch lengths.
pub fn topology_signature(tree: &PhyloTree) -> CladeSet {
    let sets = tree.leaf_sets();
    let all = tree.num_leaves();
    let clades = (0..tree.nodes().len())
        .filter(|&v| !tree.is_leaf(v))
        .map(|v| sets[v].clone())
        .filter(|s| s.len() >= 2 && s.len() < all)
        .collect();
    CladeSet { clades }
}

/// Rooted Robinson-Foulds distance: the number of clades found in exactly
/// one of the two trees. Unrooted split-based counts differ by convention.
pub fn rf_distance(a: &PhyloTree, b: &PhyloTree) -> Result<usize> {
    if a.leaf_labels() != b.leaf_labels() {
        return Err(Error::InvalidArgument(
            "trees have different leaf sets".into(),
        ));
    }
    let (sa, sb) = (topology_signature(a), topology_signature(b));
    Ok(sa.clades.symmetric_difference(&sb.clades).count())
}
