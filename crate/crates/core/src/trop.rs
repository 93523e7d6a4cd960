//! Tropical arithmetic on the tropical projective torus `R^q / R·1`.
//!
//! Points are stored as finite representatives. The symmetric tropical
//! metric and the two asymmetric distances are translation invariant in both
//! arguments, so any representative can be used.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_dim, Error, Result};
use crate::scalar::Scalar;

/// A representative of a point of the tropical projective torus.
#[derive(Clone, Debug, PartialEq)]
pub struct TropicalPoint<T = f64> {
    coords: Vec<T>,
}

impl<T: Scalar> TropicalPoint<T> {
    /// Wraps a coordinate vector. Every entry must be finite and the vector
    /// nonempty.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("empty coordinate vector".into()));
        }
        if coords.iter().any(|c| !c.is_finite_value()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The representative whose last coordinate is zero.
    pub fn canonical(&self) -> Self {
        Self {
            coords: canonicalize(&self.coords),
        }
    }

    /// Adds `c` to every coordinate (tropical scalar multiplication).
    pub fn translate(&self, c: &T) -> Self {
        Self {
            coords: self.coords.iter().map(|x| x.clone() + c.clone()).collect(),
        }
    }

    /// Equality in the torus: `trop_norm(x - y)` within the tie tolerance.
    pub fn torus_eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && trop_norm(&sub(&self.coords, &other.coords)) <= T::tie_tol()
    }
}

impl TropicalPoint<f64> {
    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }
}

impl<T: Scalar> fmt::Display for TropicalPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Which tropical distance a Fermat-Weber problem uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    /// The symmetric tropical metric `d_tr`.
    Sym,
    /// The min-plus asymmetric distance `d_Δ`.
    MinPlus,
    /// The max-plus asymmetric distance `d_∇`.
    MaxPlus,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Sym, Metric::MinPlus, Metric::MaxPlus];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Sym => "sym",
            Metric::MinPlus => "min",
            Metric::MaxPlus => "max",
        }
    }

    pub fn distance<T: Scalar>(self, x: &[T], y: &[T]) -> Result<T> {
        match self {
            Metric::Sym => d_tr(x, y),
            Metric::MinPlus => d_min_plus(x, y),
            Metric::MaxPlus => d_max_plus(x, y),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" | "symmetric" | "tr" => Ok(Metric::Sym),
            "min" | "min_plus" | "min-plus" => Ok(Metric::MinPlus),
            "max" | "max_plus" | "max-plus" => Ok(Metric::MaxPlus),
            other => Err(Error::InvalidArgument(format!("unknown metric {other:?}"))),
        }
    }
}

fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

fn max_min<T: Scalar>(v: &[T]) -> (T, T) {
    let mut hi = v[0].clone();
    let mut lo = v[0].clone();
    for x in &v[1..] {
        if *x > hi {
            hi = x.clone();
        }
        if *x < lo {
            lo = x.clone();
        }
    }
    (hi, lo)
}

fn check_pair<T>(x: &[T], y: &[T]) -> Result<()> {
    check_dim(x.len(), y.len())?;
    if x.len() < 2 {
        return Err(Error::InvalidArgument(
            "tropical distances need dimension at least 2".into(),
        ));
    }
    Ok(())
}

/// Symmetric tropical metric: `max_i(y_i - x_i) - min_i(y_i - x_i)`.
pub fn d_tr<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    check_pair(x, y)?;
    let (hi, lo) = max_min(&sub(y, x));
    Ok(hi - lo)
}

/// Min-plus distance `d_Δ(x, y) = Σ(y_i - x_i) - q·min_i(y_i - x_i)`.
pub fn d_min_plus<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    check_pair(x, y)?;
    let diff = sub(y, x);
    let (_, lo) = max_min(&diff);
    let q = T::from_int(diff.len() as i64);
    let sum = diff.into_iter().fold(T::zero(), |acc, d| acc + d);
    Ok(sum - q * lo)
}

/// Max-plus distance `d_∇(x, y) = q·max_i(y_i - x_i) - Σ(y_i - x_i)`.
pub fn d_max_plus<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    check_pair(x, y)?;
    let diff = sub(y, x);
    let (hi, _) = max_min(&diff);
    let q = T::from_int(diff.len() as i64);
    let sum = diff.into_iter().fold(T::zero(), |acc, d| acc + d);
    Ok(q * hi - sum)
}

/// Tropical norm `max e - min e`, the distance from the origin.
pub fn trop_norm<T: Scalar>(e: &[T]) -> T {
    if e.is_empty() {
        return T::zero();
    }
    let (hi, lo) = max_min(e);
    hi - lo
}

/// Subtracts the last coordinate from every entry.
pub fn canonicalize<T: Scalar>(x: &[T]) -> Vec<T> {
    match x.last() {
        None => Vec::new(),
        Some(last) => {
            let last = last.clone();
            x.iter().map(|v| v.clone() - last.clone()).collect()
        }
    }
}

/// One classical piece of a tropical line segment.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentStep<T = f64> {
    /// Zero-based coordinates raised along this piece, sorted.
    pub set: Vec<usize>,
    /// Length of the piece.
    pub gamma: T,
}

/// The tropical segment from `y` to `x` as a chain of classical segments,
/// each parallel to the indicator vector of a strictly growing index set.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentDecomposition<T = f64> {
    pub steps: Vec<SegmentStep<T>>,
}

impl<T: Scalar> SegmentDecomposition<T> {
    pub fn total_length(&self) -> T {
        self.steps
            .iter()
            .fold(T::zero(), |acc, s| acc + s.gamma.clone())
    }

    /// Walks the steps starting from `y`, returning the end point.
    pub fn walk(&self, y: &[T]) -> Vec<T> {
        let mut out = y.to_vec();
        for step in &self.steps {
            for &i in &step.set {
                out[i] = out[i].clone() + step.gamma.clone();
            }
        }
        out
    }
}

/// Decomposes the tropical segment from `y` to `x`.
///
/// The distinct values of `x - y` (ties merged at the tie tolerance), sorted
/// decreasingly as `L_1 > ... > L_{k+1}`, give `U_i` = coordinates whose value
/// is among the top `i` levels and `gamma_i = L_i - L_{i+1}`.
pub fn segment_decomposition<T: Scalar>(y: &[T], x: &[T]) -> Result<SegmentDecomposition<T>> {
    check_pair(x, y)?;
    let diff = sub(x, y);
    let mut order: Vec<usize> = (0..diff.len()).collect();
    order.sort_by(|&a, &b| {
        diff[b]
            .partial_cmp(&diff[a])
            .expect("finite coordinates")
            .then(a.cmp(&b))
    });

    // levels: (leader value, members); leader is the largest value in the level
    let mut levels: Vec<(T, Vec<usize>)> = Vec::new();
    for &i in &order {
        match levels.last_mut() {
            Some((leader, members)) if leader.tie_eq(&diff[i]) => members.push(i),
            _ => levels.push((diff[i].clone(), vec![i])),
        }
    }
    if levels.len() < 2 {
        return Err(Error::EmptySegment);
    }

    let bottom = diff[*order.last().expect("nonempty")].clone();
    let k = levels.len() - 1;
    let mut steps = Vec::with_capacity(k);
    let mut set: Vec<usize> = Vec::new();
    for i in 0..k {
        set.extend_from_slice(&levels[i].1);
        set.sort_unstable();
        let next = if i + 1 == k {
            bottom.clone()
        } else {
            levels[i + 1].0.clone()
        };
        steps.push(SegmentStep {
            set: set.clone(),
            gamma: levels[i].0.clone() - next,
        });
    }
    Ok(SegmentDecomposition { steps })
}

/// Fermat-Weber function: the mean distance from `x` to the sample points.
pub fn fw_objective<T: Scalar>(
    sample: &[TropicalPoint<T>],
    x: &TropicalPoint<T>,
    metric: Metric,
) -> Result<T> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut total = T::zero();
    for v in sample {
        total = total + metric.distance(x.coords(), v.coords())?;
    }
    Ok(total / T::from_int(sample.len() as i64))
}
