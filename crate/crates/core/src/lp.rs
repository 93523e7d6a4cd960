//! A small revised simplex solver, generic over exact and floating scalars.
//!
//! Problems are stated as `min cᵀx` over free or nonnegative variables with
//! `≥`, `≤` and `=` rows. The Fermat-Weber programs have many rows and few
//! variables, so the solver works on the dual, whose basis has one row per
//! primal variable, and reads the primal solution off the simplex
//! multipliers.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Ge,
    Le,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Free,
    NonNeg,
}

#[derive(Clone, Debug)]
pub struct Row<T> {
    pub coeffs: Vec<(usize, T)>,
    pub kind: RowKind,
    pub rhs: T,
}

#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    objective: Vec<T>,
    var_kinds: Vec<VarKind>,
    rows: Vec<Row<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub x: Vec<T>,
    pub objective: T,
    pub pivots: usize,
}

/// Pivots between refactorizations of the basis inverse in float mode.
const REFACTOR_INTERVAL: usize = 400;

/// Consecutive degenerate pivots before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 50;

impl<T: Scalar> LinearProgram<T> {
    pub fn new(objective: Vec<T>, var_kinds: Vec<VarKind>) -> Result<Self> {
        if objective.is_empty() {
            return Err(Error::InvalidArgument(
                "linear program without variables".into(),
            ));
        }
        if objective.len() != var_kinds.len() {
            return Err(Error::Dimension {
                expected: objective.len(),
                found: var_kinds.len(),
            });
        }
        if objective.iter().any(|c| !c.is_finite_value()) {
            return Err(Error::InvalidArgument(
                "non-finite objective coefficient".into(),
            ));
        }
        Ok(LinearProgram {
            objective,
            var_kinds,
            rows: Vec::new(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, T)>, kind: RowKind, rhs: T) -> Result<()> {
        if let Some((j, _)) = coeffs.iter().find(|(j, _)| *j >= self.num_vars()) {
            return Err(Error::InvalidArgument(format!(
                "row refers to variable {j}"
            )));
        }
        if !rhs.is_finite_value() || coeffs.iter().any(|(_, a)| !a.is_finite_value()) {
            return Err(Error::InvalidArgument("non-finite row coefficient".into()));
        }
        self.rows.push(Row { coeffs, kind, rhs });
        Ok(())
    }

    /// Solves the program. `Infeasible` and `Unbounded` are reported from the
    /// dual's point of view: an unbounded dual means an infeasible primal,
    /// and an infeasible dual is reported as `Unbounded`.
    pub fn solve(&self) -> Result<LpSolution<T>> {
        let nv = self.num_vars();
        // dual in standard form: one equality row per primal variable,
        // one column per primal row (two for equalities), one slack per
        // nonnegative primal variable
        let mut columns: Vec<Vec<(usize, T)>> = Vec::new();
        let mut cost: Vec<T> = Vec::new();
        let mut push = |col: Vec<(usize, T)>, c: T| {
            columns.push(col);
            cost.push(c);
        };
        for row in &self.rows {
            let signs: &[bool] = match row.kind {
                RowKind::Ge => &[false],
                RowKind::Le => &[true],
                RowKind::Eq => &[false, true],
            };
            for &negate in signs {
                let col = row
                    .coeffs
                    .iter()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(j, a)| (*j, if negate { -a.clone() } else { a.clone() }))
                    .collect();
                let c = if negate {
                    row.rhs.clone()
                } else {
                    -row.rhs.clone()
                };
                push(col, c);
            }
        }
        for (j, kind) in self.var_kinds.iter().enumerate() {
            if *kind == VarKind::NonNeg {
                push(vec![(j, T::one())], T::zero());
            }
        }
        let flip: Vec<bool> = self.objective.iter().map(|c| *c < T::zero()).collect();
        for col in &mut columns {
            for (j, a) in col.iter_mut() {
                if flip[*j] {
                    *a = -a.clone();
                }
            }
        }
        let rhs: Vec<T> = self
            .objective
            .iter()
            .map(|c| {
                if *c < T::zero() {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect();

        let problem = StandardForm {
            m: nv,
            columns,
            cost,
            rhs,
        };
        let outcome = problem.solve().map_err(|e| match e {
            Error::Unbounded => Error::Infeasible,
            Error::Infeasible => Error::Unbounded,
            other => other,
        })?;
        let x: Vec<T> = outcome
            .multipliers
            .into_iter()
            .zip(&flip)
            .map(|(pi, &f)| if f { pi } else { -pi })
            .collect();
        let objective = self
            .objective
            .iter()
            .zip(&x)
            .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
        Ok(LpSolution {
            x,
            objective,
            pivots: outcome.pivots,
        })
    }
}

/// `min costᵀy` subject to `A y = rhs`, `y ≥ 0`, with `rhs ≥ 0`.
struct StandardForm<T> {
    m: usize,
    columns: Vec<Vec<(usize, T)>>,
    cost: Vec<T>,
    rhs: Vec<T>,
}

struct Outcome<T> {
    multipliers: Vec<T>,
    pivots: usize,
}

struct Revised<'a, T> {
    sf: &'a StandardForm<T>,
    /// Basis inverse, row-major `m × m`.
    binv: Vec<T>,
    /// Column index of each basic variable; `n + r` is the artificial of row r.
    basis: Vec<usize>,
    xb: Vec<T>,
    is_basic: Vec<bool>,
    pivots: usize,
    since_refactor: usize,
}

impl<T: Scalar> StandardForm<T> {
    fn n(&self) -> usize {
        self.columns.len()
    }

    fn solve(&self) -> Result<Outcome<T>> {
        let m = self.m;
        let n = self.n();
        let mut binv = vec![T::zero(); m * m];
        for r in 0..m {
            binv[r * m + r] = T::one();
        }
        let mut is_basic = vec![false; n + m];
        for flag in &mut is_basic[n..] {
            *flag = true;
        }
        let mut rs = Revised {
            sf: self,
            binv,
            basis: (n..n + m).collect(),
            xb: self.rhs.clone(),
            is_basic,
            pivots: 0,
            since_refactor: 0,
        };
        let limit = 50 * (n + m) + 10_000;

        // phase 1: minimize the sum of artificials
        let phase1_cost: Vec<T> = (0..n + m)
            .map(|j| if j >= n { T::one() } else { T::zero() })
            .collect();
        rs.optimize(&phase1_cost, true, limit)?;
        let infeas = rs
            .basis
            .iter()
            .zip(&rs.xb)
            .filter(|(b, _)| **b >= n)
            .fold(T::zero(), |acc, (_, v)| acc + v.clone());
        let scale = self
            .rhs
            .iter()
            .fold(T::one(), |acc, v| T::max_of(acc, v.abs_val()));
        let feas_tol = if T::EXACT {
            T::zero()
        } else {
            T::from_float(1e-8).expect("finite") * scale
        };
        if infeas > feas_tol {
            return Err(Error::Infeasible);
        }
        rs.drive_out_artificials();

        // phase 2
        let phase2_cost: Vec<T> = (0..n + m)
            .map(|j| {
                if j < n {
                    self.cost[j].clone()
                } else {
                    T::zero()
                }
            })
            .collect();
        rs.optimize(&phase2_cost, false, limit)?;
        let multipliers = rs.multipliers(&phase2_cost);
        Ok(Outcome {
            multipliers,
            pivots: rs.pivots,
        })
    }
}

impl<T: Scalar> Revised<'_, T> {
    fn m(&self) -> usize {
        self.sf.m
    }

    fn n(&self) -> usize {
        self.sf.columns.len()
    }

    fn tol() -> T {
        T::tie_tol()
    }

    /// `πᵀ = c_Bᵀ B⁻¹`.
    fn multipliers(&self, cost: &[T]) -> Vec<T> {
        let m = self.m();
        let mut pi = vec![T::zero(); m];
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            let row = &self.binv[i * m..(i + 1) * m];
            for (p, r) in pi.iter_mut().zip(row) {
                if !r.is_zero() {
                    *p = p.clone() + cb.clone() * r.clone();
                }
            }
        }
        pi
    }

    fn reduced_cost(&self, j: usize, cost: &[T], pi: &[T]) -> T {
        let n = self.n();
        if j >= n {
            return cost[j].clone() - pi[j - n].clone();
        }
        self.sf.columns[j]
            .iter()
            .fold(cost[j].clone(), |acc, (r, a)| {
                acc - pi[*r].clone() * a.clone()
            })
    }

    /// `B⁻¹ a_j`.
    fn ftran(&self, j: usize) -> Vec<T> {
        let m = self.m();
        let n = self.n();
        if j >= n {
            let r = j - n;
            return (0..m).map(|i| self.binv[i * m + r].clone()).collect();
        }
        let col = &self.sf.columns[j];
        (0..m)
            .map(|i| {
                col.iter().fold(T::zero(), |acc, (r, a)| {
                    let b = &self.binv[i * m + r];
                    if b.is_zero() {
                        acc
                    } else {
                        acc + b.clone() * a.clone()
                    }
                })
            })
            .collect()
    }

    fn pivot(&mut self, p: usize, entering: usize, alpha: &[T]) {
        let m = self.m();
        let ap = alpha[p].clone();
        for k in 0..m {
            let v = self.binv[p * m + k].clone() / ap.clone();
            self.binv[p * m + k] = v;
        }
        self.xb[p] = self.xb[p].clone() / ap;
        let prow: Vec<T> = self.binv[p * m..(p + 1) * m].to_vec();
        let xp = self.xb[p].clone();
        for (i, a) in alpha.iter().enumerate() {
            if i == p || a.is_zero() {
                continue;
            }
            for (k, pk) in prow.iter().enumerate() {
                if !pk.is_zero() {
                    let v = self.binv[i * m + k].clone() - a.clone() * pk.clone();
                    self.binv[i * m + k] = v;
                }
            }
            self.xb[i] = self.xb[i].clone() - a.clone() * xp.clone();
        }
        self.is_basic[self.basis[p]] = false;
        self.is_basic[entering] = true;
        self.basis[p] = entering;
        self.pivots += 1;
        self.since_refactor += 1;
        if !T::EXACT && self.since_refactor >= REFACTOR_INTERVAL {
            self.refactor();
        }
    }

    /// Recomputes the basis inverse and basic values from scratch by
    /// Gauss-Jordan elimination with partial pivoting.
    fn refactor(&mut self) {
        let m = self.m();
        let n = self.n();
        let mut a = vec![T::zero(); m * m];
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= n {
                a[(b - n) * m + i] = T::one();
            } else {
                for (r, v) in &self.sf.columns[b] {
                    a[r * m + i] = v.clone();
                }
            }
        }
        let mut inv = vec![T::zero(); m * m];
        for r in 0..m {
            inv[r * m + r] = T::one();
        }
        for c in 0..m {
            let piv = (c..m)
                .max_by(|&x, &y| {
                    a[x * m + c]
                        .abs_val()
                        .partial_cmp(&a[y * m + c].abs_val())
                        .expect("finite")
                })
                .expect("nonempty");
            if a[piv * m + c].abs_val() <= Self::tol() {
                // keep the product-form inverse when the basis looks singular
                self.since_refactor = 0;
                return;
            }
            if piv != c {
                for k in 0..m {
                    a.swap(c * m + k, piv * m + k);
                    inv.swap(c * m + k, piv * m + k);
                }
            }
            let d = a[c * m + c].clone();
            for k in 0..m {
                a[c * m + k] = a[c * m + k].clone() / d.clone();
                inv[c * m + k] = inv[c * m + k].clone() / d.clone();
            }
            for r in 0..m {
                if r == c {
                    continue;
                }
                let f = a[r * m + c].clone();
                if f.is_zero() {
                    continue;
                }
                for k in 0..m {
                    a[r * m + k] = a[r * m + k].clone() - f.clone() * a[c * m + k].clone();
                    inv[r * m + k] = inv[r * m + k].clone() - f.clone() * inv[c * m + k].clone();
                }
            }
        }
        self.binv = inv;
        self.xb = (0..m)
            .map(|i| {
                (0..m).fold(T::zero(), |acc, k| {
                    acc + self.binv[i * m + k].clone() * self.sf.rhs[k].clone()
                })
            })
            .collect();
        self.since_refactor = 0;
    }

    fn optimize(&mut self, cost: &[T], allow_artificial: bool, limit: usize) -> Result<()> {
        let n = self.n();
        let m = self.m();
        let candidates = if allow_artificial { n + m } else { n };
        let tol = Self::tol();
        let mut degenerate = 0usize;
        let mut pi = self.multipliers(cost);
        let mut fresh = true;
        loop {
            if self.pivots > limit {
                return Err(Error::Internal("simplex iteration limit reached".into()));
            }
            let bland = degenerate >= DEGENERATE_STREAK;
            let mut entering: Option<(usize, T)> = None;
            for j in 0..candidates {
                if self.is_basic[j] {
                    continue;
                }
                let d = self.reduced_cost(j, cost, &pi);
                if d < -tol.clone() {
                    if bland {
                        entering = Some((j, d));
                        break;
                    }
                    if entering.as_ref().is_none_or(|(_, best)| d < *best) {
                        entering = Some((j, d));
                    }
                }
            }
            let Some((j, d)) = entering else {
                if fresh {
                    return Ok(());
                }
                // confirm optimality with multipliers computed from scratch
                pi = self.multipliers(cost);
                fresh = true;
                continue;
            };
            let alpha = self.ftran(j);
            let mut leave: Option<(usize, T)> = None;
            for (i, a) in alpha.iter().enumerate() {
                if *a > tol {
                    let xb = T::max_of(self.xb[i].clone(), T::zero());
                    let ratio = xb / a.clone();
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((p, step)) = leave else {
                return Err(Error::Unbounded);
            };
            if step <= tol {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(p, j, &alpha);
            if self.since_refactor == 0 {
                pi = self.multipliers(cost);
                fresh = true;
            } else {
                // πᵀ gains d_j times the new row p of B⁻¹
                let row = &self.binv[p * m..(p + 1) * m];
                for (v, r) in pi.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *v = v.clone() + d.clone() * r.clone();
                    }
                }
                fresh = T::EXACT;
            }
        }
    }

    /// Pivots basic artificials at level zero out of the basis where a real
    /// column can replace them; rows where none can are redundant.
    fn drive_out_artificials(&mut self) {
        let n = self.n();
        let m = self.m();
        let tol = Self::tol();
        for p in 0..m {
            if self.basis[p] < n {
                continue;
            }
            let row = &self.binv[p * m..(p + 1) * m];
            let mut best: Option<(usize, T)> = None;
            for j in 0..n {
                if self.is_basic[j] {
                    continue;
                }
                let v = self.sf.columns[j]
                    .iter()
                    .fold(T::zero(), |acc, (r, a)| acc + row[*r].clone() * a.clone());
                if v.abs_val() > tol && best.as_ref().is_none_or(|(_, b)| v.abs_val() > b.abs_val())
                {
                    best = Some((j, v));
                }
            }
            if let Some((j, _)) = best {
                let alpha = self.ftran(j);
                self.pivot(p, j, &alpha);
            }
        }
    }
}
