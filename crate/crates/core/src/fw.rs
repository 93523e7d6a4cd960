//! Fermat-Weber points under the three tropical distances.
//!
//! Each solve is three linear programs. The first finds the optimal value.
//! With the last coordinate fixed at zero, the other two find the optimizers
//! with the smallest and the largest coordinate sum, and the returned point
//! is their midpoint. The optimal set is convex, so the midpoint is optimal;
//! it depends on the sample alone rather than on pivoting order, and it sits
//! away from the extreme points of the optimal set.

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpSolution, RowKind, VarKind};
use crate::matroid::{IndexSet, Matroid};
use crate::projection::project_bergman;
use crate::scalar::{Rational, Scalar};
use crate::trop::{canonicalize, d_tr, fw_objective, trop_norm, Metric, TropicalPoint};

/// A Fermat-Weber point with its objective value (mean distance to the
/// sample).
#[derive(Clone, Debug, PartialEq)]
pub struct FwSolution<T = f64> {
    pub point: TropicalPoint<T>,
    pub objective: T,
    pub metric: Metric,
    /// Simplex pivots across all three programs.
    pub pivots: usize,
}

impl<T: Scalar> FwSolution<T> {
    /// The representative of the point whose entries have the same mean as
    /// the entries of `sample`.
    pub fn centered_on(&self, sample: &[TropicalPoint<T>]) -> TropicalPoint<T> {
        let mean = |vs: &mut dyn Iterator<Item = &T>, count: usize| {
            vs.fold(T::zero(), |acc, v| acc + v.clone()) / T::from_int(count as i64)
        };
        let q = self.point.dim();
        let data = mean(
            &mut sample.iter().flat_map(|v| v.coords()),
            q * sample.len().max(1),
        );
        let own = mean(&mut self.point.coords().iter(), q);
        self.point.translate(&(data - own))
    }
}

fn check_sample<T: Scalar>(sample: &[TropicalPoint<T>]) -> Result<usize> {
    let first = sample.first().ok_or(Error::EmptySample)?;
    let q = first.dim();
    if q < 2 {
        return Err(Error::InvalidArgument(
            "Fermat-Weber points need dimension at least 2".into(),
        ));
    }
    for v in sample {
        crate::error::check_dim(q, v.dim())?;
    }
    Ok(q)
}

pub fn fw_symmetric<T: Scalar>(sample: &[TropicalPoint<T>]) -> Result<FwSolution<T>> {
    fw_point(sample, Metric::Sym)
}

pub fn fw_min_plus<T: Scalar>(sample: &[TropicalPoint<T>]) -> Result<FwSolution<T>> {
    fw_point(sample, Metric::MinPlus)
}

pub fn fw_max_plus<T: Scalar>(sample: &[TropicalPoint<T>]) -> Result<FwSolution<T>> {
    fw_point(sample, Metric::MaxPlus)
}

/// Fermat-Weber point of `sample` under `metric`.
pub fn fw_point<T: Scalar>(sample: &[TropicalPoint<T>], metric: Metric) -> Result<FwSolution<T>> {
    let q = check_sample(sample)?;
    let rows: Vec<Vec<T>> = sample.iter().map(|v| canonicalize(v.coords())).collect();

    // in float mode solve a rescaled copy; every distance is homogeneous
    let scale = if T::EXACT {
        T::one()
    } else {
        rows.iter()
            .flatten()
            .fold(T::zero(), |acc, v| T::max_of(acc, v.abs_val()))
    };
    let point = if scale.is_zero() {
        (vec![T::zero(); q], 0)
    } else {
        let scaled: Vec<Vec<T>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v.clone() / scale.clone()).collect())
            .collect();
        let (x, pivots) = solve_canonical(&scaled, metric)?;
        (x.into_iter().map(|v| v * scale.clone()).collect(), pivots)
    };
    let (coords, pivots) = point;
    let point = TropicalPoint::new(coords)?;
    let objective = fw_objective(sample, &point, metric)?;
    Ok(FwSolution {
        point,
        objective,
        metric,
        pivots,
    })
}

/// Variable layout: `x_0..x_{q-2}` (with `x_{q-1} = 0`), then one or two
/// auxiliaries per sample point.
struct Layout {
    q: usize,
    n: usize,
    metric: Metric,
}

impl Layout {
    fn num_vars(&self) -> usize {
        let per = if self.metric == Metric::Sym { 2 } else { 1 };
        self.q - 1 + per * self.n
    }

    fn aux(&self, i: usize, k: usize) -> usize {
        let per = if self.metric == Metric::Sym { 2 } else { 1 };
        self.q - 1 + per * i + k
    }

    /// Objective of the first stage, without constants. Sym: `Σ(a_i − b_i)`
    /// with `a_i ≥ v_ij − x_j ≥ b_i`. Min-plus: `−qΣm_i − nΣx_j` with
    /// `m_i ≤ v_ij − x_j`. Max-plus: `qΣM_i + nΣx_j` with `M_i ≥ v_ij − x_j`.
    fn objective<T: Scalar>(&self) -> Vec<T> {
        let mut c = vec![T::zero(); self.num_vars()];
        let qt = T::from_int(self.q as i64);
        let nt = T::from_int(self.n as i64);
        for i in 0..self.n {
            match self.metric {
                Metric::Sym => {
                    c[self.aux(i, 0)] = T::one();
                    c[self.aux(i, 1)] = -T::one();
                }
                Metric::MinPlus => c[self.aux(i, 0)] = -qt.clone(),
                Metric::MaxPlus => c[self.aux(i, 0)] = qt.clone(),
            }
        }
        for cj in c.iter_mut().take(self.q - 1) {
            *cj = match self.metric {
                Metric::Sym => T::zero(),
                Metric::MinPlus => -nt.clone(),
                Metric::MaxPlus => nt.clone(),
            };
        }
        c
    }

    fn build<T: Scalar>(&self, data: &[Vec<T>], objective: Vec<T>) -> Result<LinearProgram<T>> {
        let mut lp = LinearProgram::new(objective, vec![VarKind::Free; self.num_vars()])?;
        for (i, v) in data.iter().enumerate() {
            for (j, vij) in v.iter().enumerate() {
                let with_x = |aux: usize| {
                    let mut row = vec![(aux, T::one())];
                    if j + 1 < self.q {
                        row.push((j, T::one()));
                    }
                    row
                };
                match self.metric {
                    Metric::Sym => {
                        lp.add_row(with_x(self.aux(i, 0)), RowKind::Ge, vij.clone())?;
                        lp.add_row(with_x(self.aux(i, 1)), RowKind::Le, vij.clone())?;
                    }
                    Metric::MinPlus => {
                        lp.add_row(with_x(self.aux(i, 0)), RowKind::Le, vij.clone())?
                    }
                    Metric::MaxPlus => {
                        lp.add_row(with_x(self.aux(i, 0)), RowKind::Ge, vij.clone())?
                    }
                }
            }
        }
        Ok(lp)
    }
}

fn solve_canonical<T: Scalar>(data: &[Vec<T>], metric: Metric) -> Result<(Vec<T>, usize)> {
    let layout = Layout {
        q: data[0].len(),
        n: data.len(),
        metric,
    };
    let first_obj = layout.objective::<T>();
    let first = layout
        .build(data, first_obj.clone())?
        .solve()
        .map_err(internal)?;

    let bound = if T::EXACT {
        first.objective.clone()
    } else {
        let slack = T::from_float(1e-11).expect("finite") * (T::one() + first.objective.abs_val());
        first.objective.clone() + slack
    };
    let cap: Vec<(usize, T)> = first_obj
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let extreme = |sign: T| -> Result<LpSolution<T>> {
        let mut obj = vec![T::zero(); layout.num_vars()];
        for c in obj.iter_mut().take(layout.q - 1) {
            *c = sign.clone();
        }
        let mut lp = layout.build(data, obj)?;
        lp.add_row(cap.clone(), RowKind::Le, bound.clone())?;
        lp.solve().map_err(internal)
    };
    let least = extreme(T::one())?;
    let greatest = extreme(-T::one())?;

    let two = T::from_int(2);
    let mut x: Vec<T> = least.x[..layout.q - 1]
        .iter()
        .zip(&greatest.x)
        .map(|(a, b)| (a.clone() + b.clone()) / two.clone())
        .collect();
    x.push(T::zero());
    Ok((x, first.pivots + least.pivots + greatest.pivots))
}

fn internal(e: Error) -> Error {
    match e {
        Error::Infeasible | Error::Unbounded => {
            Error::Internal(format!("Fermat-Weber program reported {e}"))
        }
        other => other,
    }
}

/// A projected Fermat-Weber estimate together with the unprojected solve.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedFw<T = f64> {
    pub unprojected: FwSolution<T>,
    pub point: TropicalPoint<T>,
    /// Mean symmetric distance from the projected point to the sample.
    pub objective: T,
}

/// Fermat-Weber point under `metric` followed by projection onto `B(M)`.
/// When `metric` is symmetric and every sample point lies in the fan, the
/// projection must keep the objective; a violation is an internal error.
pub fn fw_m_ultrametric<T: Scalar>(
    m: &Matroid,
    sample: &[TropicalPoint<T>],
    metric: Metric,
) -> Result<ProjectedFw<T>> {
    let fw = fw_point(sample, metric)?;
    let point = project_bergman(m, fw.point.coords())?;
    let objective = fw_objective(sample, &point, Metric::Sym)?;
    if metric == Metric::Sym {
        let mut in_fan = true;
        for v in sample {
            in_fan &= m.is_m_ultrametric(v.coords())?;
        }
        if in_fan {
            let tol = if T::EXACT {
                T::zero()
            } else {
                T::from_float(1e-9).expect("finite") * T::max_of(T::one(), fw.objective.abs_val())
            };
            if objective.clone() - fw.objective.clone() > tol {
                return Err(Error::Internal(format!(
                    "projection raised the objective from {} to {}",
                    fw.objective, objective
                )));
            }
        }
    }
    Ok(ProjectedFw {
        unprojected: fw,
        point,
        objective,
    })
}

fn argmax_argmin<T: Scalar>(d: &[T]) -> (IndexSet, IndexSet) {
    let hi = d.iter().cloned().reduce(T::max_of).expect("nonempty");
    let lo = d.iter().cloned().reduce(T::min_of).expect("nonempty");
    let mut amax = IndexSet::empty();
    let mut amin = IndexSet::empty();
    for (i, v) in d.iter().enumerate() {
        if v.tie_eq(&hi) {
            amax.insert(i);
        }
        if v.tie_eq(&lo) {
            amin.insert(i);
        }
    }
    (amax, amin)
}

/// One-sided derivative of the symmetric Fermat-Weber function at `y` in the
/// direction `1_U`. Each sample point contributes `+1`, `0` or `−1`
/// according to how the argmax and argmin of `y − v` meet `U`.
pub fn directional_derivative<T: Scalar>(
    sample: &[TropicalPoint<T>],
    y: &[T],
    direction: &[bool],
) -> Result<Rational> {
    let q = check_sample(sample)?;
    crate::error::check_dim(q, y.len())?;
    crate::error::check_dim(q, direction.len())?;
    if direction.iter().all(|&b| b) || direction.iter().all(|&b| !b) {
        return Err(Error::InvalidArgument(
            "direction must be a proper nonempty subset".into(),
        ));
    }
    let u = direction
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(IndexSet::empty(), |acc, (i, _)| {
            acc.union(IndexSet::singleton(i))
        });
    let mut total: i64 = 0;
    for v in sample {
        let d: Vec<T> = y
            .iter()
            .zip(v.coords())
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        let (amax, amin) = argmax_argmin(&d);
        let meets_max = !u.intersection(amax).is_empty();
        let covers_min = amin.is_subset(u);
        if meets_max && !covers_min {
            total += 1;
        } else if !meets_max && covers_min {
            total -= 1;
        }
    }
    Ok(crate::scalar::ratio(total, sample.len() as i64))
}

/// Largest sample handled by [`fw_set_oracle`].
pub const ORACLE_MAX_DIM: usize = 4;
pub const ORACLE_MAX_SAMPLE: usize = 6;
const ORACLE_MAX_GRID: usize = 4_000_000;

/// Brute-force approximation of the symmetric Fermat-Weber set: every grid
/// point (last coordinate zero) in a box around the sample whose objective
/// is within `1e-9 + 2·step` of the optimum.
pub fn fw_set_oracle(sample: &[TropicalPoint<f64>], step: f64) -> Result<Vec<TropicalPoint<f64>>> {
    let q = check_sample(sample)?;
    if q > ORACLE_MAX_DIM || sample.len() > ORACLE_MAX_SAMPLE {
        return Err(Error::Capacity(format!(
            "oracle limited to q <= {ORACLE_MAX_DIM} and n <= {ORACLE_MAX_SAMPLE}"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "grid step must be positive, got {step}"
        )));
    }
    let best = fw_symmetric(sample)?.objective;
    let rows: Vec<Vec<f64>> = sample.iter().map(|v| canonicalize(v.coords())).collect();
    let mut diameter: f64 = 0.0;
    for a in &rows {
        for b in &rows {
            diameter = diameter.max(d_tr(a, b)?);
        }
    }
    let mut lo = vec![f64::INFINITY; q - 1];
    let mut hi = vec![f64::NEG_INFINITY; q - 1];
    for r in &rows {
        for j in 0..q - 1 {
            lo[j] = lo[j].min(r[j] - diameter);
            hi[j] = hi[j].max(r[j] + diameter);
        }
    }
    let counts: Vec<usize> = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| ((h - l) / step).floor() as usize + 1)
        .collect();
    let total = counts.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c));
    if total.is_none_or(|t| t > ORACLE_MAX_GRID) {
        return Err(Error::Capacity(format!(
            "grid of {counts:?} points exceeds {ORACLE_MAX_GRID}"
        )));
    }
    let slack = 1e-9 + 2.0 * step;
    let mut out = Vec::new();
    let mut idx = vec![0usize; q - 1];
    loop {
        let mut x: Vec<f64> = idx
            .iter()
            .zip(&lo)
            .map(|(&k, l)| l + k as f64 * step)
            .collect();
        x.push(0.0);
        let p = TropicalPoint::new(x)?;
        if fw_objective(sample, &p, Metric::Sym)? <= best + slack {
            out.push(p);
        }
        let mut d = 0;
        loop {
            if d == q - 1 {
                return Ok(out);
            }
            idx[d] += 1;
            if idx[d] < counts[d] {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Scaled shift `d_tr(θ_S, θ_{S+ε}) / Σ‖ε_j‖` of the computed symmetric
/// Fermat-Weber point under the perturbation `eps`.
pub fn hausdorff_shift(sample: &[TropicalPoint<f64>], eps: &[Vec<f64>]) -> Result<f64> {
    check_sample(sample)?;
    crate::error::check_dim(sample.len(), eps.len())?;
    let total: f64 = eps.iter().map(|e| trop_norm(e)).sum();
    if total <= 1e-15 {
        return Err(Error::Domain("perturbation has zero tropical norm".into()));
    }
    let perturbed = sample
        .iter()
        .zip(eps)
        .map(|(v, e)| {
            crate::error::check_dim(v.dim(), e.len())?;
            TropicalPoint::new(v.coords().iter().zip(e).map(|(a, b)| a + b).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let a = fw_symmetric(sample)?;
    let b = fw_symmetric(&perturbed)?;
    Ok(d_tr(a.point.coords(), b.point.coords())? / total)
}
