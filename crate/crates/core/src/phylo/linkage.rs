//! Agglomerative clustering and equidistant trees from ultrametrics.

use crate::error::{Error, Result};
use crate::matroid::pair_index;

use super::dissimilarity::{is_ultrametric, DissimilarityVector};
use super::tree::{Node, PhyloTree};

fn sorted_pairs(d: &DissimilarityVector) -> Vec<(usize, usize)> {
    let p = d.p();
    let mut pairs: Vec<(usize, usize)> = (0..p)
        .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
        .collect();
    pairs.sort_by(|a, b| d.get(a.0, a.1).total_cmp(&d.get(b.0, b.1)).then(a.cmp(b)));
    pairs
}

/// Single-linkage clustering: entry `(i, j)` of the result is the level at
/// which `i` and `j` first share a cluster, the subdominant ultrametric.
pub fn single_linkage(d: &DissimilarityVector) -> DissimilarityVector {
    let p = d.p();
    let mut cluster: Vec<usize> = (0..p).collect();
    let mut members: Vec<Vec<usize>> = (0..p).map(|i| vec![i]).collect();
    let mut out = vec![0.0; d.entries().len()];
    for (i, j) in sorted_pairs(d) {
        let (a, b) = (cluster[i], cluster[j]);
        if a == b {
            continue;
        }
        let level = d.get(i, j);
        let moved = std::mem::take(&mut members[b]);
        for &x in &members[a] {
            for &y in &moved {
                out[pair_index(p, x.min(y), x.max(y))] = level;
            }
        }
        for &y in &moved {
            cluster[y] = a;
        }
        members[a].extend(moved);
    }
    DissimilarityVector::new(d.labels().to_vec(), out).expect("levels come from the input")
}

/// Average-linkage (UPGMA) ultrametric, kept as a comparator to
/// [`single_linkage`]; it is not a projection onto tree space.
pub fn average_linkage(d: &DissimilarityVector) -> DissimilarityVector {
    let p = d.p();
    let mut active: Vec<(Vec<usize>, usize)> = (0..p).map(|i| (vec![i], i)).collect();
    // cluster distances keyed by position in `active`
    let mut dist: Vec<Vec<f64>> = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| if i == j { 0.0 } else { d.get(i, j) })
                .collect()
        })
        .collect();
    let mut out = vec![0.0; d.entries().len()];
    while active.len() > 1 {
        let mut best = (0, 1);
        for a in 0..active.len() {
            for b in a + 1..active.len() {
                if dist[a][b] < dist[best.0][best.1] {
                    best = (a, b);
                }
            }
        }
        let (a, b) = best;
        let level = dist[a][b];
        for &x in &active[a].0 {
            for &y in &active[b].0 {
                out[pair_index(p, x.min(y), x.max(y))] = level;
            }
        }
        let (na, nb) = (active[a].0.len() as f64, active[b].0.len() as f64);
        for c in 0..active.len() {
            if c != a && c != b {
                let v = (na * dist[a][c] + nb * dist[b][c]) / (na + nb);
                dist[a][c] = v;
                dist[c][a] = v;
            }
        }
        let (moved, _) = active.remove(b);
        dist.remove(b);
        for row in &mut dist {
            row.remove(b);
        }
        active[a].0.extend(moved);
    }
    DissimilarityVector::new(d.labels().to_vec(), out).expect("levels come from the input")
}

/// Equidistant tree whose cophenetic vector is `u`. Internal nodes sit at
/// height `u(i, j) / 2`; clusters merging at levels within `1e-9` of each
/// other (relative to the largest entry) form one multifurcation.
pub fn tree_from_ultrametric(u: &DissimilarityVector) -> Result<PhyloTree> {
    let scale = u.entries().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-9 * scale;
    if !is_ultrametric(u, tol) {
        return Err(Error::Domain("input is not an ultrametric".into()));
    }
    let p = u.p();
    let mut nodes: Vec<Node> = u
        .labels()
        .iter()
        .map(|l| Node {
            parent: None,
            children: Vec::new(),
            label: Some(l.clone()),
            length: 0.0,
        })
        .collect();
    // node heights and the node currently representing each leaf's cluster
    let mut height = vec![0.0; p];
    let mut top: Vec<usize> = (0..p).collect();
    fn cluster_of(top: &[usize], mut v: usize) -> usize {
        while top[v] != v {
            v = top[v];
        }
        v
    }
    for (i, j) in sorted_pairs(u) {
        let a = cluster_of(&top, i);
        let b = cluster_of(&top, j);
        if a == b {
            continue;
        }
        let h = u.get(i, j) / 2.0;
        let a_open = !nodes[a].children.is_empty() && h - height[a] <= tol / 2.0;
        let b_open = !nodes[b].children.is_empty() && h - height[b] <= tol / 2.0;
        match (a_open, b_open) {
            (true, true) => {
                let kids = std::mem::take(&mut nodes[b].children);
                nodes[a].children.extend(kids.iter().copied());
                top[b] = a;
                for k in kids {
                    top[k] = a;
                }
            }
            (true, false) => {
                nodes[a].children.push(b);
                top[b] = a;
            }
            (false, true) => {
                nodes[b].children.push(a);
                top[a] = b;
            }
            (false, false) => {
                let id = nodes.len();
                nodes.push(Node {
                    parent: None,
                    children: vec![a, b],
                    label: None,
                    length: 0.0,
                });
                height.push(h);
                top.push(id);
                top[a] = id;
                top[b] = id;
            }
        }
    }
    let root = cluster_of(&top, 0);
    // keep only nodes reachable from the root, assign branch lengths
    let mut keep = vec![false; nodes.len()];
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        keep[v] = true;
        for c in nodes[v].children.clone() {
            nodes[c].length = (height[v] - height[c]).max(0.0);
            stack.push(c);
        }
    }
    let mut remap = vec![usize::MAX; nodes.len()];
    let mut compact = Vec::new();
    for (i, n) in nodes.into_iter().enumerate() {
        if keep[i] {
            remap[i] = compact.len();
            compact.push(n);
        }
    }
    for n in &mut compact {
        for c in &mut n.children {
            *c = remap[*c];
        }
    }
    PhyloTree::from_nodes(compact, remap[root])
}
