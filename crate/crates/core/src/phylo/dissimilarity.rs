use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matroid::pair_index;

use super::tree::PhyloTree;

/// Pairwise dissimilarities on `p` labeled points, flattened in
/// lexicographic `(i, j)` order with `i < j`. Labels are kept sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct DissimilarityVector {
    labels: Vec<String>,
    entries: Vec<f64>,
}

impl DissimilarityVector {
    /// Labels must be distinct and sorted; entries finite and nonnegative.
    pub fn new(labels: Vec<String>, entries: Vec<f64>) -> Result<Self> {
        let p = labels.len();
        if p < 2 {
            return Err(Error::InvalidArgument("need at least two points".into()));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "labels must be distinct and sorted".into(),
            ));
        }
        crate::error::check_dim(p * (p - 1) / 2, entries.len())?;
        if let Some(bad) = entries.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "dissimilarity entry {bad} is not a nonnegative number"
            )));
        }
        Ok(DissimilarityVector { labels, entries })
    }

    /// Default labels `A, B, C, ...` (then `T26, T27, ...`).
    pub fn default_labels(p: usize) -> Vec<String> {
        let mut labels: Vec<String> = (0..p)
            .map(|i| {
                if i < 26 {
                    ((b'A' + i as u8) as char).to_string()
                } else {
                    format!("T{i}")
                }
            })
            .collect();
        labels.sort();
        labels
    }

    pub fn p(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    /// Entry for points `i != j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.entries[pair_index(self.p(), a, b)]
    }

    /// CSV with a header of `i|j` pair labels and one data row.
    pub fn to_csv(&self) -> String {
        let p = self.p();
        let mut header = Vec::with_capacity(self.entries.len());
        for i in 0..p {
            for j in i + 1..p {
                header.push(format!("{}|{}", self.labels[i], self.labels[j]));
            }
        }
        let row: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        format!("{}\n{}\n", header.join(","), row.join(","))
    }

    /// Parses the format written by [`DissimilarityVector::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty dissimilarity file".into()))?;
        let row = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument("dissimilarity file has no data row".into()))?;
        let pairs: Vec<(String, String)> = header
            .split(',')
            .map(|h| {
                h.trim()
                    .split_once('|')
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .ok_or_else(|| Error::InvalidArgument(format!("bad pair label {h:?}")))
            })
            .collect::<Result<_>>()?;
        let values: Vec<f64> = row
            .split(',')
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad number {v:?}")))
            })
            .collect::<Result<_>>()?;
        let mut labels: Vec<String> = pairs
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        labels.sort();
        let p = labels.len();
        crate::error::check_dim(p * (p - 1) / 2, pairs.len())?;
        crate::error::check_dim(pairs.len(), values.len())?;
        let mut entries = vec![f64::NAN; pairs.len()];
        for ((a, b), v) in pairs.iter().zip(values) {
            let i = labels.binary_search(a).expect("collected label");
            let j = labels.binary_search(b).expect("collected label");
            if i == j {
                return Err(Error::InvalidArgument(format!(
                    "pair {a}|{b} repeats a label"
                )));
            }
            entries[pair_index(p, i.min(j), i.max(j))] = v;
        }
        Self::new(labels, entries)
    }
}

/// Path-length distances between the leaves of `tree`, labels sorted.
pub fn cophenetic_vector(tree: &PhyloTree) -> DissimilarityVector {
    let labels = tree.leaf_labels();
    let p = labels.len();
    let depth = tree.depths();
    let mut entries = vec![0.0; p * (p - 1) / 2];
    // leaves below each node, as label indices, bottom-up
    let mut below: Vec<Vec<(usize, usize)>> = vec![Vec::new(); tree.nodes().len()];
    for &v in tree.preorder().iter().rev() {
        let node = tree.node(v);
        if node.children.is_empty() {
            let idx = labels
                .binary_search(node.label.as_ref().expect("validated leaf"))
                .expect("label present");
            below[v] = vec![(idx, v)];
            continue;
        }
        let groups: Vec<Vec<(usize, usize)>> = node
            .children
            .iter()
            .map(|&c| std::mem::take(&mut below[c]))
            .collect();
        for (a, ga) in groups.iter().enumerate() {
            for gb in &groups[a + 1..] {
                for &(i, li) in ga {
                    for &(j, lj) in gb {
                        let d = depth[li] + depth[lj] - 2.0 * depth[v];
                        entries[pair_index(p, i.min(j), i.max(j))] = d;
                    }
                }
            }
        }
        below[v] = groups.into_iter().flatten().collect();
    }
    DissimilarityVector::new(labels, entries).expect("tree distances are valid")
}

/// Three-point condition on raw entries over `p` points.
pub fn is_ultrametric_entries(p: usize, d: &[f64], tol: f64) -> bool {
    let at = |i: usize, j: usize| d[pair_index(p, i, j)];
    for i in 0..p {
        for j in i + 1..p {
            for k in j + 1..p {
                let v = [at(i, j), at(i, k), at(j, k)];
                let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                if v.iter().filter(|&&x| hi - x <= tol).count() < 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether every triple attains its largest entry at least twice.
pub fn is_ultrametric(d: &DissimilarityVector, tol: f64) -> bool {
    is_ultrametric_entries(d.p(), d.entries(), tol)
}

/// Whether every 4-subset attains the largest of its three pair sums at
/// least twice.
pub fn is_tree_metric(d: &DissimilarityVector, tol: f64) -> bool {
    let p = d.p();
    for i in 0..p {
        for j in i + 1..p {
            for k in j + 1..p {
                for l in k + 1..p {
                    let s = [
                        d.get(i, j) + d.get(k, l),
                        d.get(i, k) + d.get(j, l),
                        d.get(i, l) + d.get(j, k),
                    ];
                    let hi = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    if s.iter().filter(|&&x| hi - x <= tol).count() < 2 {
                        return false;
                    }
                }
            }
        }
    }
    true
}
