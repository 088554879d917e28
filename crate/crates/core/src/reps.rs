//! Representations of punctured-surface and orbifold fundamental groups into
//! `U(p,q)` with fixed holonomy, counted through the Higgs side.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::bundle::{MarkedSurface, ParabolicBundle, WeightList};
use crate::error::{Error, Result};
use crate::higgs::{self, UpqHiggsData, Verdict};
use crate::rational::{self, int, ratio, Rational};

/// Per-point weights of one bundle, without a degree.
pub type WeightSystem = BTreeMap<String, WeightList>;

/// Conjugacy class `diag(exp(2 pi i phase))` of a puncture holonomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyClass {
    pub phases: Vec<Rational>,
}

pub fn holonomy_from_weights(bundle: &ParabolicBundle, point: &str) -> HolonomyClass {
    HolonomyClass { phases: bundle.weights_at(point).to_vec() }
}

fn weight_total(weights: &WeightSystem) -> Rational {
    weights.values().map(WeightList::sum).sum()
}

/// `a + b` forced by vanishing total parabolic degree.
pub fn pdeg_zero_degrees(weights_v: &WeightSystem, weights_w: &WeightSystem) -> Result<i64> {
    let total = weight_total(weights_v) + weight_total(weights_w);
    rational::as_i64(&-total).ok_or(Error::NoIntegralSolution)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCount {
    /// Degrees `a` of `V` giving a nonempty connected component, ascending.
    pub admissible: Vec<i64>,
    /// The admissible degrees sitting exactly on the bound.
    pub boundary: Vec<i64>,
    /// `a + b`.
    pub total_degree: i64,
}

impl ComponentCount {
    pub fn count(&self) -> usize {
        self.admissible.len()
    }
}

fn bundle_from(rank: usize, degree: i64, weights: &WeightSystem) -> ParabolicBundle {
    ParabolicBundle { rank, degree, weights: weights.clone() }
}

/// Number of connected components of the representation variety: the
/// integers `a` with `|a + sum of V weights| <= tau_L / 2`, where each
/// candidate is classified on the Higgs side with `b = total - a`.
pub fn component_count(
    p: usize,
    q: usize,
    weights_v: &WeightSystem,
    weights_w: &WeightSystem,
    surface: &MarkedSurface,
) -> Result<ComponentCount> {
    if surface.genus() == 0 {
        return Err(Error::Unsupported("component count needs positive genus"));
    }
    let total = pdeg_zero_degrees(weights_v, weights_w)?;
    let shift = weight_total(weights_v);
    let probe = UpqHiggsData::new(surface.clone(), bundle_from(p, 0, weights_v), bundle_from(q, total, weights_w))?;
    // tau_L never exceeds tau_M, which bounds the search
    let half = higgs::tau_max(&probe) / int(2);
    let first = rational::ceil_i64(&(-&shift - &half));
    let last = rational::floor_i64(&(-&shift + &half));
    let mut admissible = Vec::new();
    let mut boundary = Vec::new();
    for a in first..=last {
        let h = UpqHiggsData::new(surface.clone(), bundle_from(p, a, weights_v), bundle_from(q, total - a, weights_w))?;
        let c = higgs::classify(&h)?;
        debug_assert_eq!(c.tau.abs() / int(2), (int(a) + &shift).abs());
        match c.verdict {
            Verdict::NonEmptyConnected => admissible.push(a),
            Verdict::BoundaryCase => {
                admissible.push(a);
                boundary.push(a);
            }
            _ => {}
        }
    }
    Ok(ComponentCount { admissible, boundary, total_degree: total })
}

/// Orbifold data: puncture orders and the integer exponents of each bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldData {
    pub surface: MarkedSurface,
    pub orders: BTreeMap<String, u32>,
    /// bundle name -> point -> exponents, strictly increasing in `[0, m)`.
    pub exponents: BTreeMap<String, BTreeMap<String, Vec<u32>>>,
}

impl OrbifoldData {
    pub fn new(
        surface: MarkedSurface,
        orders: BTreeMap<String, u32>,
        exponents: BTreeMap<String, BTreeMap<String, Vec<u32>>>,
    ) -> Result<Self> {
        for point in surface.points() {
            match orders.get(point) {
                Some(&m) if m >= 1 => {}
                Some(_) => return Err(Error::Invalid(alloc::format!("order at {point} must be positive"))),
                None => return Err(Error::Invalid(alloc::format!("no order given at {point}"))),
            }
        }
        if let Some(label) = orders.keys().find(|p| !surface.contains(p)) {
            return Err(Error::UnknownPoint(label.clone()));
        }
        let excess: Rational = orders.values().map(|&m| int(1) - ratio(1, m as i64)).sum();
        if int(2 * surface.genus() as i64) + excess <= int(2) {
            return Err(Error::NotHyperbolic);
        }
        for lists in exponents.values() {
            for (point, l) in lists {
                let m = *orders.get(point).ok_or_else(|| Error::UnknownPoint(point.clone()))?;
                if l.iter().any(|&x| x >= m) {
                    return Err(Error::ViolatedFlag { point: point.clone(), reason: "exponent not below the order" });
                }
                if l.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::ViolatedFlag { point: point.clone(), reason: "exponents not strictly increasing" });
                }
            }
        }
        Ok(OrbifoldData { surface, orders, exponents })
    }
}

/// Weights `l / m` for every bundle.
pub fn orbifold_to_weights(data: &OrbifoldData) -> BTreeMap<String, WeightSystem> {
    data.exponents
        .iter()
        .map(|(name, lists)| {
            let system = lists
                .iter()
                .map(|(point, l)| {
                    let m = data.orders[point] as i64;
                    (point.clone(), WeightList::new(l.iter().map(|&x| ratio(x as i64, m)).collect()))
                })
                .collect();
            (name.clone(), system)
        })
        .collect()
}

/// [`component_count`] after converting exponents of the bundles `v` and `w`.
pub fn orbifold_component_count(data: &OrbifoldData, v: &str, w: &str) -> Result<ComponentCount> {
    let systems = orbifold_to_weights(data);
    let get = |name: &str| systems.get(name).ok_or_else(|| Error::Invalid(alloc::format!("no exponents for bundle {name}")));
    let (wv, ww) = (get(v)?, get(w)?);
    let rank = |s: &WeightSystem| s.values().next().map_or(0, WeightList::len);
    component_count(rank(wv), rank(ww), wv, ww, &data.surface)
}
