//! Marked surfaces and parabolic bundle data.
//!
//! A [`ParabolicBundle`] here is only its discrete data: rank, degree and a
//! full weighted flag at every marked point. Zero-rank bundles are allowed
//! (degree 0, empty weight lists) so that triples with a vanishing component
//! need no special casing.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedSurface {
    genus: u32,
    points: Vec<String>,
}

impl MarkedSurface {
    pub fn new<S: Into<String>>(genus: u32, points: impl IntoIterator<Item = S>) -> Result<Self> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::Invalid(alloc::format!("duplicate point label {p:?}")));
            }
        }
        Ok(MarkedSurface { genus, points })
    }

    /// Surface with `s` points labelled `x1 .. xs`.
    pub fn with_points(genus: u32, s: usize) -> Self {
        let points = (1..=s).map(|i| alloc::format!("x{i}")).collect();
        MarkedSurface { genus, points }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    /// Number of marked points.
    pub fn s(&self) -> usize {
        self.points.len()
    }

    /// `2g - 2`.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus as i64 - 2
    }

    pub fn contains(&self, point: &str) -> bool {
        self.points.iter().any(|p| p == point)
    }
}

/// Weights of a full flag at one point: strictly increasing values in `[0, 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightList(Vec<Rational>);

impl WeightList {
    pub fn new(weights: Vec<Rational>) -> Self {
        WeightList(weights)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    /// Reason string when the list is not a full flag.
    pub fn check(&self) -> core::result::Result<(), &'static str> {
        let one = Rational::one();
        for w in &self.0 {
            if w.is_negative() || *w >= one {
                return Err("weight outside [0, 1)");
            }
        }
        if self.0.windows(2).any(|p| p[0] >= p[1]) {
            return Err("weights not strictly increasing");
        }
        Ok(())
    }

    fn sorted(mut weights: Vec<Rational>) -> Self {
        weights.sort();
        WeightList(weights)
    }
}

impl From<Vec<Rational>> for WeightList {
    fn from(v: Vec<Rational>) -> Self {
        WeightList(v)
    }
}

/// Which flag-compatibility condition a morphism must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomConstraint {
    /// `PH`: weight may stay equal or go up.
    Parabolic,
    /// `SPH`: weight must go strictly up.
    StronglyParabolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicBundle {
    pub rank: usize,
    pub degree: i64,
    pub weights: BTreeMap<String, WeightList>,
}

impl ParabolicBundle {
    pub fn new<S: Into<String>>(
        rank: usize,
        degree: i64,
        weights: impl IntoIterator<Item = (S, Vec<Rational>)>,
    ) -> Self {
        let weights = weights
            .into_iter()
            .map(|(p, w)| (p.into(), WeightList::new(w)))
            .collect();
        ParabolicBundle { rank, degree, weights }
    }

    /// The zero bundle on `surface`.
    pub fn zero(surface: &MarkedSurface) -> Self {
        let weights = surface
            .points()
            .iter()
            .map(|p| (p.clone(), WeightList::default()))
            .collect();
        ParabolicBundle { rank: 0, degree: 0, weights }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    /// Weights at `point`; empty if the point is unknown.
    pub fn weights_at(&self, point: &str) -> &[Rational] {
        self.weights.get(point).map(WeightList::as_slice).unwrap_or(&[])
    }

    /// Sum of all weights over all points.
    pub fn weight_sum(&self) -> Rational {
        self.weights.values().fold(Rational::zero(), |acc, w| acc + w.sum())
    }

    /// Full-flag check against `surface`. Distinctness across two different
    /// bundles is the caller's business.
    pub fn validate(&self, surface: &MarkedSurface) -> Result<()> {
        if self.rank == 0 && self.degree != 0 {
            return Err(Error::Invalid("zero bundle must have degree 0".into()));
        }
        for label in self.weights.keys() {
            if !surface.contains(label) {
                return Err(Error::UnknownPoint(label.clone()));
            }
        }
        for point in surface.points() {
            let list = self.weights.get(point).ok_or_else(|| Error::ViolatedFlag {
                point: point.clone(),
                reason: "no weights given",
            })?;
            if list.len() != self.rank {
                return Err(Error::ViolatedFlag {
                    point: point.clone(),
                    reason: "number of weights differs from rank",
                });
            }
            list.check().map_err(|reason| Error::ViolatedFlag {
                point: point.clone(),
                reason,
            })?;
        }
        Ok(())
    }

    /// `deg + sum of weights`.
    pub fn pdeg(&self) -> Rational {
        rational::int(self.degree) + self.weight_sum()
    }

    /// `pdeg / rank`. Panics on the zero bundle.
    pub fn pmu(&self) -> Rational {
        assert!(self.rank > 0, "slope of the zero bundle");
        self.pdeg() / rational::int(self.rank as i64)
    }
}

/// Parabolic direct sum: ranks and degrees add, weights merge in order.
pub fn direct_sum(a: &ParabolicBundle, b: &ParabolicBundle) -> Result<ParabolicBundle> {
    if a.weights.keys().ne(b.weights.keys()) {
        return Err(Error::SurfaceMismatch);
    }
    let mut weights = BTreeMap::new();
    for (point, wa) in &a.weights {
        let wb = &b.weights[point];
        if wa.as_slice().iter().any(|w| wb.as_slice().contains(w)) {
            return Err(Error::WeightCollision { point: point.clone() });
        }
        let merged = wa.as_slice().iter().chain(wb.as_slice()).cloned().collect();
        weights.insert(point.clone(), WeightList::sorted(merged));
    }
    Ok(ParabolicBundle {
        rank: a.rank + b.rank,
        degree: a.degree + b.degree,
        weights,
    })
}

/// Parabolic dual: nonzero weights `a` become `1 - a`, weight 0 stays 0, and
/// the degree is `-deg - #(nonzero weights)` so that `pdeg` flips sign.
pub fn parabolic_dual(bundle: &ParabolicBundle) -> ParabolicBundle {
    let one = Rational::one();
    let mut shift = 0i64;
    let weights = bundle
        .weights
        .iter()
        .map(|(point, list)| {
            let dual = list
                .as_slice()
                .iter()
                .map(|w| {
                    if w.is_zero() {
                        Rational::zero()
                    } else {
                        shift += 1;
                        &one - w
                    }
                })
                .collect();
            (point.clone(), WeightList::sorted(dual))
        })
        .collect();
    ParabolicBundle {
        rank: bundle.rank,
        degree: -bundle.degree - shift,
        weights,
    }
}

/// `E(kD)`: degree grows by `rank * k * s`, weights unchanged.
pub fn twist_integral(bundle: &ParabolicBundle, surface: &MarkedSurface, k: i64) -> ParabolicBundle {
    let mut out = bundle.clone();
    out.degree += bundle.rank as i64 * k * surface.s() as i64;
    out
}

/// Tensor by the parabolic line bundle `O_[1 - x0]` supported at `point`.
///
/// Weights at `point` become `frac(a - x0 + 1)`; for `x0 > 0` the degree
/// becomes `deg + rank - #{a < x0}`. `x0 = 0` is the identity.
pub fn twist_parabolic_line(
    bundle: &ParabolicBundle,
    point: &str,
    x0: &Rational,
) -> Result<ParabolicBundle> {
    if x0.is_negative() || *x0 >= Rational::one() {
        return Err(Error::Invalid("twist parameter must lie in [0, 1)".into()));
    }
    let list = bundle
        .weights
        .get(point)
        .ok_or_else(|| Error::UnknownPoint(point.into()))?;
    if list.as_slice().contains(x0) && !x0.is_zero() {
        return Err(Error::WeightCollision { point: point.into() });
    }
    if x0.is_zero() {
        return Ok(bundle.clone());
    }
    let below = list.as_slice().iter().filter(|w| *w < x0).count() as i64;
    let shifted = list
        .as_slice()
        .iter()
        .map(|w| rational::frac(&(w - x0 + Rational::one())))
        .collect();
    let mut out = bundle.clone();
    out.weights.insert(point.into(), WeightList::sorted(shifted));
    out.degree += bundle.rank as i64 - below;
    Ok(out)
}

/// Fails with [`Error::WeightCollision`] if `a` and `b` share a weight at any point.
pub fn check_disjoint(a: &ParabolicBundle, b: &ParabolicBundle) -> Result<()> {
    for (point, wa) in &a.weights {
        let wb = b.weights_at(point);
        if wa.as_slice().iter().any(|w| wb.contains(w)) {
            return Err(Error::WeightCollision { point: point.clone() });
        }
    }
    Ok(())
}
