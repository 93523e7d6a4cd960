//! Matroids given by their circuits, and the circuit-quantified tests that
//! describe their Bergman fans.
//!
//! A vector `w` lies in the Bergman fan `B(M)` when every circuit attains its
//! maximum at least twice. The cone of the nested-set fan that contains `w`
//! in its relative interior is identified by its [`ConeSignature`]: the
//! argmax set of `w` on every circuit.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{check_dim, Error, Result};
use crate::scalar::Scalar;
use crate::trop::TropicalPoint;

/// Largest supported ground set.
pub const MAX_GROUND_SIZE: usize = 64;

/// Above this size circuit elimination is not checked at construction unless
/// requested.
pub const ELIMINATION_CHECK_LIMIT: usize = 20;

/// Guard for the exhaustive flat enumeration.
pub const EXHAUSTIVE_FLAT_LIMIT: usize = 28;

/// A subset of the ground set `{0, .., q-1}`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const fn empty() -> Self {
        IndexSet(0)
    }

    pub fn full(q: usize) -> Self {
        if q >= 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << q) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        IndexSet(idx.iter().fold(0, |acc, &i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: IndexSet) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: IndexSet) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted element lists.
    pub fn lex_cmp(self, other: IndexSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Structural information some algorithms can exploit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    General,
    /// Cycle matroid of a multigraph.
    Graph,
    /// Cycle matroid of the complete graph on this many vertices, ground set
    /// ordered lexicographically by vertex pair.
    CompleteGraph {
        vertices: usize,
    },
}

/// A flat of a matroid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flat {
    pub elements: IndexSet,
    pub is_connected: bool,
}

/// A loopless connected matroid on `{0, .., q-1}` given by its circuits.
#[derive(Clone, Debug)]
pub struct Matroid {
    ground_size: usize,
    circuits: Vec<IndexSet>,
    kind: MatroidKind,
    hyperplanes: OnceLock<Vec<Flat>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground_size == other.ground_size && self.circuits == other.circuits
    }
}

/// Argmax set of `w` restricted to `set`, ties decided at the scalar's
/// tie tolerance.
pub fn argmax_on<T: Scalar>(set: IndexSet, w: &[T]) -> IndexSet {
    let Some(top) = set.iter().map(|e| &w[e]).fold(None::<&T>, |m, x| match m {
        Some(m) if m >= x => Some(m),
        _ => Some(x),
    }) else {
        return IndexSet::empty();
    };
    let mut out = IndexSet::empty();
    for e in set.iter() {
        if top.tie_eq(&w[e]) {
            out.insert(e);
        }
    }
    out
}

/// Largest value of `w` on `set` and the largest value strictly below it
/// (beyond the tie tolerance), if any.
fn top_two<T: Scalar>(set: IndexSet, w: &[T]) -> (T, Option<T>) {
    let arg = argmax_on(set, w);
    let top = arg
        .iter()
        .map(|e| w[e].clone())
        .fold(None::<T>, |m, x| match m {
            Some(m) if m >= x => Some(m),
            _ => Some(x),
        });
    let second = set
        .difference(arg)
        .iter()
        .map(|e| w[e].clone())
        .fold(None::<T>, |m, x| match m {
            Some(m) if m >= x => Some(m),
            _ => Some(x),
        });
    (top.expect("nonempty circuit"), second)
}

impl Matroid {
    /// Builds a matroid from a circuit list, checking the circuit axioms.
    /// Circuit elimination is verified when `q <= 20`.
    pub fn from_circuits(ground_size: usize, circuits: &[Vec<usize>]) -> Result<Self> {
        Self::build(
            ground_size,
            circuits,
            MatroidKind::General,
            ground_size <= ELIMINATION_CHECK_LIMIT,
        )
    }

    /// As [`Matroid::from_circuits`], with explicit control over the
    /// exhaustive circuit-elimination check.
    pub fn from_circuits_checked(
        ground_size: usize,
        circuits: &[Vec<usize>],
        check_elimination: bool,
    ) -> Result<Self> {
        Self::build(
            ground_size,
            circuits,
            MatroidKind::General,
            check_elimination,
        )
    }

    fn build(
        ground_size: usize,
        circuits: &[Vec<usize>],
        kind: MatroidKind,
        check_elimination: bool,
    ) -> Result<Self> {
        if ground_size > MAX_GROUND_SIZE {
            return Err(Error::Capacity(format!(
                "ground set of size {ground_size} exceeds {MAX_GROUND_SIZE}"
            )));
        }
        if ground_size < 2 {
            return Err(Error::InvalidMatroid(
                "ground set must have at least two elements".into(),
            ));
        }
        let mut sets = BTreeSet::new();
        for c in circuits {
            if let Some(&bad) = c.iter().find(|&&e| e >= ground_size) {
                return Err(Error::InvalidMatroid(format!(
                    "circuit element {bad} outside ground set of size {ground_size}"
                )));
            }
            let set = IndexSet::from_indices(c);
            match set.len() {
                0 => return Err(Error::InvalidMatroid("empty circuit".into())),
                1 => return Err(Error::InvalidMatroid(format!("loop at element {}", c[0]))),
                _ => {}
            }
            sets.insert(set.bits());
        }
        let mut circuits: Vec<IndexSet> = sets.into_iter().map(IndexSet::from_bits).collect();
        circuits.sort_by(|a, b| a.lex_cmp(*b));

        for (i, a) in circuits.iter().enumerate() {
            for b in &circuits[i + 1..] {
                if a.is_subset(*b) || b.is_subset(*a) {
                    return Err(Error::InvalidMatroid(format!(
                        "circuits {:?} and {:?} are comparable",
                        a, b
                    )));
                }
            }
        }

        if check_elimination {
            check_circuit_elimination(&circuits)?;
        }

        let m = Matroid {
            ground_size,
            circuits,
            kind,
            hyperplanes: OnceLock::new(),
        };
        m.check_connected()?;
        Ok(m)
    }

    fn check_connected(&self) -> Result<()> {
        let full = IndexSet::full(self.ground_size);
        for e in 0..self.ground_size {
            let reach = self
                .circuits
                .iter()
                .filter(|c| c.contains(e))
                .fold(IndexSet::singleton(e), |acc, c| acc.union(*c));
            if reach != full {
                let missing = full.difference(reach).iter().next().expect("nonempty");
                return Err(Error::Disconnected(format!(
                    "elements {e} and {missing} share no circuit"
                )));
            }
        }
        Ok(())
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Circuits in lexicographic order of their sorted element lists.
    pub fn circuits(&self) -> &[IndexSet] {
        &self.circuits
    }

    pub fn kind(&self) -> MatroidKind {
        self.kind
    }

    /// Number of vertices when this is the cycle matroid of a complete graph.
    pub fn complete_graph_vertices(&self) -> Option<usize> {
        match self.kind {
            MatroidKind::CompleteGraph { vertices } => Some(vertices),
            _ => None,
        }
    }

    /// Whether `w` is an M-ultrametric.
    pub fn is_m_ultrametric<T: Scalar>(&self, w: &[T]) -> Result<bool> {
        check_dim(self.ground_size, w.len())?;
        Ok(self.circuits.iter().all(|&c| argmax_on(c, w).len() >= 2))
    }

    /// Argmax sets of `w` on every circuit.
    pub fn cone_signature<T: Scalar>(&self, w: &[T]) -> Result<ConeSignature> {
        check_dim(self.ground_size, w.len())?;
        let mut entries = Vec::with_capacity(self.circuits.len());
        for &c in &self.circuits {
            let arg = argmax_on(c, w);
            if arg.len() < 2 {
                return Err(Error::NotInFan);
            }
            entries.push((c, arg));
        }
        Ok(ConeSignature { entries })
    }

    /// Dimension of the cone with this signature: the number of classes of
    /// the equivalence on `[q]` generated by the argmax sets.
    pub fn cone_dimension(&self, sig: &ConeSignature) -> usize {
        let mut parent: Vec<usize> = (0..self.ground_size).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(_, arg) in &sig.entries {
            let mut it = arg.iter();
            if let Some(first) = it.next() {
                for e in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, e));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..self.ground_size)
            .filter(|&i| find(&mut parent, i) == i)
            .count()
    }

    /// Whether `w` lies in the relative interior of a maximal cone.
    pub fn in_maximal_cone<T: Scalar>(&self, w: &[T]) -> Result<bool> {
        let sig = self.cone_signature(w)?;
        Ok(self.cone_dimension(&sig) == self.rank(IndexSet::full(self.ground_size)))
    }

    /// Minimum over circuits on which `w` is not constant of the gap between
    /// the largest and second-largest value.
    pub fn w_min<T: Scalar>(&self, w: &[T]) -> Result<T> {
        Ok(self.w_min_circuit(w)?.1)
    }

    fn w_min_circuit<T: Scalar>(&self, w: &[T]) -> Result<(IndexSet, T, T)> {
        if !self.is_m_ultrametric(w)? {
            return Err(Error::NotInFan);
        }
        let mut best: Option<(IndexSet, T, T)> = None;
        for &c in &self.circuits {
            let (top, second) = top_two(c, w);
            if let Some(second) = second {
                let gap = top - second.clone();
                if best.as_ref().is_none_or(|(_, g, _)| gap < *g) {
                    best = Some((c, gap, second));
                }
            }
        }
        best.ok_or(Error::DegeneratePoint)
    }

    /// A point of the boundary of the cone containing `w` at tropical
    /// distance exactly `w_min(w)`: `w + w_min·1_B`, where `B` collects every
    /// coordinate equal to the second-largest value on a circuit attaining
    /// `w_min`.
    pub fn boundary_witness<T: Scalar>(&self, w: &[T]) -> Result<TropicalPoint<T>> {
        let (_, gap, second) = self.w_min_circuit(w)?;
        if !self.in_maximal_cone(w)? {
            return Err(Error::Domain(
                "point is not in the relative interior of a maximal cone".into(),
            ));
        }
        let u = w
            .iter()
            .map(|x| {
                if x.tie_eq(&second) {
                    x.clone() + gap.clone()
                } else {
                    x.clone()
                }
            })
            .collect();
        TropicalPoint::new(u)
    }

    /// Whether `set` contains a circuit.
    pub fn is_dependent(&self, set: IndexSet) -> bool {
        self.circuits.iter().any(|c| c.is_subset(set))
    }

    /// Closure: repeatedly add every element `e` such that some circuit `C`
    /// satisfies `e ∈ C ⊆ A ∪ {e}`.
    pub fn closure(&self, set: IndexSet) -> IndexSet {
        let mut cur = set;
        loop {
            let mut next = cur;
            for &c in &self.circuits {
                let outside = c.difference(cur);
                if outside.len() == 1 {
                    next = next.union(outside);
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Size of a maximal independent subset of `set`.
    pub fn rank(&self, set: IndexSet) -> usize {
        let mut indep = IndexSet::empty();
        for e in set.iter() {
            let cand = indep.union(IndexSet::singleton(e));
            let creates_circuit = self
                .circuits
                .iter()
                .any(|c| c.contains(e) && c.is_subset(cand));
            if !creates_circuit {
                indep = cand;
            }
        }
        indep.len()
    }

    pub fn is_flat(&self, set: IndexSet) -> bool {
        self.closure(set) == set
    }

    /// Whether the restriction to the flat `f` is connected.
    pub fn is_connected_flat(&self, f: IndexSet) -> Result<bool> {
        if !f.is_subset(IndexSet::full(self.ground_size)) || !self.is_flat(f) {
            return Err(Error::InvalidArgument(format!("{f:?} is not a flat")));
        }
        Ok(self.restriction_connected(f))
    }

    fn restriction_connected(&self, f: IndexSet) -> bool {
        if f.len() <= 1 {
            return true;
        }
        let inner: Vec<IndexSet> = self
            .circuits
            .iter()
            .copied()
            .filter(|c| c.is_subset(f))
            .collect();
        f.iter().all(|e| {
            inner
                .iter()
                .filter(|c| c.contains(e))
                .fold(IndexSet::singleton(e), |acc, c| acc.union(*c))
                == f
        })
    }

    /// Maximal proper flats (hyperplanes). For complete graphs these are the
    /// edge sets of two-block vertex partitions; otherwise they are found by
    /// walking the lattice of flats upwards from the closure of the empty
    /// set. The result is computed once and cached.
    pub fn maximal_proper_flats(&self) -> Result<&[Flat]> {
        if let Some(h) = self.hyperplanes.get() {
            return Ok(h);
        }
        let computed = match self.kind {
            MatroidKind::CompleteGraph { vertices } => complete_graph_hyperplanes(vertices),
            _ => {
                if self.ground_size > EXHAUSTIVE_FLAT_LIMIT {
                    return Err(Error::Capacity(format!(
                        "exhaustive flat enumeration limited to q <= {EXHAUSTIVE_FLAT_LIMIT}"
                    )));
                }
                self.hyperplanes_by_lattice_walk()
            }
        };
        let with_conn = computed
            .into_iter()
            .map(|elements| Flat {
                elements,
                is_connected: self.restriction_connected(elements),
            })
            .collect();
        Ok(self.hyperplanes.get_or_init(|| with_conn))
    }

    fn hyperplanes_by_lattice_walk(&self) -> Vec<IndexSet> {
        let full = IndexSet::full(self.ground_size);
        let target_rank = self.rank(full) - 1;
        let mut seen: HashSet<u64> = HashSet::new();
        let mut frontier = vec![self.closure(IndexSet::empty())];
        let mut found = BTreeSet::new();
        seen.insert(frontier[0].bits());
        while let Some(f) = frontier.pop() {
            let r = self.rank(f);
            if r == target_rank {
                found.insert(f.bits());
                continue;
            }
            for e in full.difference(f).iter() {
                let g = self.closure(f.union(IndexSet::singleton(e)));
                if g != full && seen.insert(g.bits()) {
                    frontier.push(g);
                }
            }
        }
        let mut out: Vec<IndexSet> = found.into_iter().map(IndexSet::from_bits).collect();
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    /// Plain-text form: `q=<int>` then one circuit per line as 1-based
    /// indices, circuits in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = format!("q={}\n", self.ground_size);
        for c in &self.circuits {
            let line: Vec<String> = c.iter().map(|e| (e + 1).to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the format written by [`Matroid::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty matroid file".into()))?;
        let q: usize = header
            .strip_prefix("q=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("bad header line {header:?}")))?;
        let mut circuits = Vec::new();
        for (lineno, line) in lines {
            let mut c = Vec::new();
            for tok in line.split_whitespace() {
                let idx: usize = tok.parse().map_err(|_| {
                    Error::InvalidArgument(format!("line {}: bad index {tok:?}", lineno + 1))
                })?;
                if idx == 0 {
                    return Err(Error::InvalidArgument(format!(
                        "line {}: indices are 1-based",
                        lineno + 1
                    )));
                }
                c.push(idx - 1);
            }
            circuits.push(c);
        }
        Self::from_circuits(q, &circuits)
    }
}

fn check_circuit_elimination(circuits: &[IndexSet]) -> Result<()> {
    for (i, &a) in circuits.iter().enumerate() {
        for &b in &circuits[i + 1..] {
            let common = a.intersection(b);
            for e in common.iter() {
                let pool = a.union(b).difference(IndexSet::singleton(e));
                if !circuits.iter().any(|c| c.is_subset(pool)) {
                    return Err(Error::InvalidMatroid(format!(
                        "circuit elimination fails for {a:?}, {b:?} at {e}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Index of the edge `{i, j}` (`i < j`) of `K_p` in lexicographic order.
pub fn pair_index(p: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < p);
    i * (2 * p - i - 1) / 2 + (j - i - 1)
}

/// The vertex pair of edge `idx` of `K_p`.
pub fn pair_of_index(p: usize, idx: usize) -> (usize, usize) {
    let mut base = 0;
    for i in 0..p {
        let row = p - i - 1;
        if idx < base + row {
            return (i, i + 1 + idx - base);
        }
        base += row;
    }
    panic!("edge index {idx} out of range for K_{p}");
}

fn complete_graph_hyperplanes(p: usize) -> Vec<IndexSet> {
    let mut out = Vec::with_capacity((1usize << (p - 1)) - 1);
    // blocks S ∋ 0 and its complement, S proper
    for mask in 0..(1u64 << (p - 1)) {
        let block = (mask << 1) | 1;
        if block == (1u64 << p) - 1 {
            continue;
        }
        let mut edges = IndexSet::empty();
        for i in 0..p {
            for j in i + 1..p {
                if (block >> i & 1) == (block >> j & 1) {
                    edges.insert(pair_index(p, i, j));
                }
            }
        }
        out.push(edges);
    }
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

/// Edge sets of all simple cycles of a multigraph. Each cycle is found by a
/// depth-first search rooted at its smallest vertex and recorded once.
fn simple_cycles(vertex_count: usize, edges: &[(usize, usize)]) -> Vec<IndexSet> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    let mut found: BTreeSet<u64> = BTreeSet::new();

    struct Walk<'a> {
        adj: &'a [Vec<(usize, usize)>],
        start: usize,
        on_path: Vec<bool>,
        used: IndexSet,
        found: &'a mut BTreeSet<u64>,
    }

    fn dfs(w: &mut Walk<'_>, v: usize) {
        for k in 0..w.adj[v].len() {
            let (next, id) = w.adj[v][k];
            if w.used.contains(id) {
                continue;
            }
            if next == w.start {
                w.found.insert(w.used.union(IndexSet::singleton(id)).bits());
            } else if next > w.start && !w.on_path[next] {
                w.on_path[next] = true;
                w.used.insert(id);
                dfs(w, next);
                w.used = w.used.difference(IndexSet::singleton(id));
                w.on_path[next] = false;
            }
        }
    }

    for start in 0..vertex_count {
        let mut walk = Walk {
            adj: &adj,
            start,
            on_path: vec![false; vertex_count],
            used: IndexSet::empty(),
            found: &mut found,
        };
        walk.on_path[start] = true;
        dfs(&mut walk, start);
    }
    let mut out: Vec<IndexSet> = found.into_iter().map(IndexSet::from_bits).collect();
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

/// Cycle matroid of the complete graph `K_p`; ground set indexed by pairs
/// `(i, j)`, `i < j`, in lexicographic order.
pub fn graphic_matroid(p: usize) -> Result<Matroid> {
    if p < 3 {
        return Err(Error::InvalidArgument(format!(
            "complete graph needs at least 3 vertices, got {p}"
        )));
    }
    let q = p * (p - 1) / 2;
    if q > MAX_GROUND_SIZE {
        return Err(Error::Capacity(format!("K_{p} has {q} edges")));
    }
    let mut edges = Vec::with_capacity(q);
    for i in 0..p {
        for j in i + 1..p {
            edges.push((i, j));
        }
    }
    let circuits: Vec<Vec<usize>> = simple_cycles(p, &edges)
        .into_iter()
        .map(IndexSet::to_vec)
        .collect();
    Matroid::build(
        q,
        &circuits,
        MatroidKind::CompleteGraph { vertices: p },
        q <= ELIMINATION_CHECK_LIMIT,
    )
}

/// Cycle matroid of a connected multigraph. Ground element `i` is `edges[i]`.
/// Parallel edges form 2-circuits; self-loops and coloops are rejected.
pub fn graph_matroid(edges: &[(usize, usize)]) -> Result<Matroid> {
    if let Some(&(a, _)) = edges.iter().find(|(a, b)| a == b) {
        return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
    }
    if edges.len() > MAX_GROUND_SIZE {
        return Err(Error::Capacity(format!("{} edges", edges.len())));
    }
    let vertex_count = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    // connectivity over the vertices that carry edges
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut touched = vec![false; vertex_count];
    for &(a, b) in edges {
        touched[a] = true;
        touched[b] = true;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let roots: BTreeSet<usize> = (0..vertex_count)
        .filter(|&v| touched[v])
        .map(|v| find(&mut parent, v))
        .collect();
    if roots.len() > 1 {
        return Err(Error::InvalidArgument("graph is disconnected".into()));
    }
    let circuits: Vec<Vec<usize>> = simple_cycles(vertex_count, edges)
        .into_iter()
        .map(IndexSet::to_vec)
        .collect();
    Matroid::build(
        edges.len(),
        &circuits,
        MatroidKind::Graph,
        edges.len() <= ELIMINATION_CHECK_LIMIT,
    )
}

/// Uniform matroid `U_{r,n}`: circuits are all `(r+1)`-subsets.
pub fn uniform_matroid(rank: usize, n: usize) -> Result<Matroid> {
    if rank == 0 || rank >= n {
        return Err(Error::InvalidArgument(format!(
            "U_{{{rank},{n}}} is not loopless and connected"
        )));
    }
    if n > 20 {
        return Err(Error::Capacity(format!("U_{{{rank},{n}}} is too large")));
    }
    let circuits: Vec<Vec<usize>> = (0u64..(1 << n))
        .filter(|m| m.count_ones() as usize == rank + 1)
        .map(|m| IndexSet::from_bits(m).to_vec())
        .collect();
    Matroid::from_circuits(n, &circuits)
}

/// Per-circuit argmax sets identifying the cone of the nested-set fan that
/// contains a point in its relative interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSignature {
    pub entries: Vec<(IndexSet, IndexSet)>,
}

/// Whether `cone(a) ⊆ cone(b)`: every argmax set of `b` is contained in the
/// corresponding argmax set of `a`.
pub fn signature_leq(a: &ConeSignature, b: &ConeSignature) -> Result<bool> {
    if a.entries.len() != b.entries.len()
        || a.entries.iter().zip(&b.entries).any(|(x, y)| x.0 != y.0)
    {
        return Err(Error::InvalidArgument(
            "signatures belong to different matroids".into(),
        ));
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .all(|((_, sa), (_, sb))| sb.is_subset(*sa)))
}
