//! Tropical projection onto max-plus polytopes and Bergman fans.

use crate::error::{check_dim, Error, Result};
use crate::matroid::{pair_index, Matroid};
use crate::scalar::Scalar;
use crate::trop::{d_tr, TropicalPoint};

/// A vertex coordinate: a real number or `-∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtValue<T> {
    NegInf,
    Finite(T),
}

impl<T> ExtValue<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::NegInf => None,
        }
    }
}

/// Generators of a max-plus tropical polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeVertexSet<T = f64> {
    dim: usize,
    vertices: Vec<Vec<ExtValue<T>>>,
}

impl<T: Scalar> PolytopeVertexSet<T> {
    pub fn new(vertices: Vec<Vec<ExtValue<T>>>) -> Result<Self> {
        let dim = vertices
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidArgument("polytope needs at least one vertex".into()))?;
        for (i, v) in vertices.iter().enumerate() {
            check_dim(dim, v.len())?;
            if v.iter().all(|c| c.finite().is_none()) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {i} is entirely -inf"
                )));
            }
        }
        Ok(PolytopeVertexSet { dim, vertices })
    }

    /// Finite generators.
    pub fn from_points(points: &[Vec<T>]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|p| p.iter().cloned().map(ExtValue::Finite).collect())
                .collect(),
        )
    }

    /// The vertices `v_F` of the Bergman fan: `-∞` on the flat `F` and `0`
    /// elsewhere, one per maximal proper flat.
    pub fn bergman(m: &Matroid) -> Result<Self> {
        let q = m.ground_size();
        let vertices = m
            .maximal_proper_flats()?
            .iter()
            .map(|f| {
                (0..q)
                    .map(|e| {
                        if f.elements.contains(e) {
                            ExtValue::NegInf
                        } else {
                            ExtValue::Finite(T::zero())
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<ExtValue<T>>] {
        &self.vertices
    }
}

/// Projection onto the tropical convex hull of `poly`:
/// `λ_i = min_e (x − v_i)_e` over the finite entries of `v_i`, and
/// `π(x)_e = max_i (λ_i + v_{ie})`.
pub fn project_polytope<T: Scalar>(
    poly: &PolytopeVertexSet<T>,
    x: &[T],
) -> Result<TropicalPoint<T>> {
    check_dim(poly.dim, x.len())?;
    let lambdas: Vec<T> = poly
        .vertices
        .iter()
        .map(|v| {
            v.iter()
                .zip(x)
                .filter_map(|(ve, xe)| ve.finite().map(|ve| xe.clone() - ve.clone()))
                .reduce(T::min_of)
                .expect("vertex has a finite entry")
        })
        .collect();
    let mut out = Vec::with_capacity(x.len());
    for e in 0..x.len() {
        let best = poly
            .vertices
            .iter()
            .zip(&lambdas)
            .filter_map(|(v, l)| v[e].finite().map(|ve| l.clone() + ve.clone()))
            .reduce(T::max_of)
            .ok_or(Error::DegeneratePolytope(e))?;
        out.push(best);
    }
    TropicalPoint::new(out)
}

/// Subdominant M-ultrametric of `x`. Complete-graph matroids use the
/// minimax-path route; others use the maximal proper flats.
pub fn project_bergman<T: Scalar>(m: &Matroid, x: &[T]) -> Result<TropicalPoint<T>> {
    check_dim(m.ground_size(), x.len())?;
    match m.complete_graph_vertices() {
        Some(p) => project_ultrametric_fast(p, x),
        None => project_bergman_flats(m, x),
    }
}

/// Subdominant M-ultrametric of `x` computed as a polytope projection over
/// the maximal proper flats, regardless of structure.
pub fn project_bergman_flats<T: Scalar>(m: &Matroid, x: &[T]) -> Result<TropicalPoint<T>> {
    check_dim(m.ground_size(), x.len())?;
    project_polytope(&PolytopeVertexSet::bergman(m)?, x)
}

/// Subdominant ultrametric of a dissimilarity on `p` taxa: entry `(i, j)` is
/// the smallest achievable maximum edge weight over `i`–`j` paths in `K_p`,
/// read off a minimum spanning tree.
pub fn project_ultrametric_fast<T: Scalar>(p: usize, x: &[T]) -> Result<TropicalPoint<T>> {
    check_dim(p * p.saturating_sub(1) / 2, x.len())?;
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 taxa, got {p}"
        )));
    }
    let weight = |i: usize, j: usize| -> &T {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        &x[pair_index(p, a, b)]
    };

    // Prim's algorithm on the dense graph
    let mut in_tree = vec![false; p];
    let mut best: Vec<Option<(T, usize)>> = vec![None; p];
    let mut adj: Vec<Vec<(usize, T)>> = vec![Vec::new(); p];
    in_tree[0] = true;
    for (v, slot) in best.iter_mut().enumerate().skip(1) {
        *slot = Some((weight(0, v).clone(), 0));
    }
    for _ in 1..p {
        let (v, (w, parent)) = (0..p)
            .filter(|&v| !in_tree[v])
            .map(|v| (v, best[v].clone().expect("reachable")))
            .reduce(|a, b| if b.1 .0 < a.1 .0 { b } else { a })
            .expect("vertex left");
        in_tree[v] = true;
        adj[v].push((parent, w.clone()));
        adj[parent].push((v, w));
        for u in 0..p {
            if !in_tree[u] {
                let cand = weight(v, u);
                if best[u].as_ref().is_none_or(|(bw, _)| cand < bw) {
                    best[u] = Some((cand.clone(), v));
                }
            }
        }
    }

    // bottleneck weight from every root along the tree
    let mut out = vec![T::zero(); x.len()];
    for root in 0..p {
        let mut bottleneck: Vec<Option<T>> = vec![None; p];
        let mut stack = vec![root];
        let mut seen = vec![false; p];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for (u, w) in &adj[v] {
                if !seen[*u] {
                    seen[*u] = true;
                    let b = match &bottleneck[v] {
                        Some(bv) => T::max_of(bv.clone(), w.clone()),
                        None => w.clone(),
                    };
                    if root < *u {
                        out[pair_index(p, root, *u)] = b.clone();
                    }
                    bottleneck[*u] = Some(b);
                    stack.push(*u);
                }
            }
        }
    }
    TropicalPoint::new(out)
}

/// Whether `d_tr(π(x), π(y)) <= d_tr(x, y)`, with slack `1e-12` in float
/// mode.
pub fn check_nonexpansive<T: Scalar>(m: &Matroid, x: &[T], y: &[T]) -> Result<bool> {
    let px = project_bergman(m, x)?;
    let py = project_bergman(m, y)?;
    let lhs = d_tr(px.coords(), py.coords())?;
    let rhs = d_tr(x, y)?;
    let slack = if T::EXACT {
        T::zero()
    } else {
        T::from_float(1e-12).expect("finite")
    };
    Ok(lhs <= rhs + slack)
}
