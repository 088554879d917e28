//! Parabolic triples `E2 -> E1(D)` and their sigma-stability structure.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bundle::{check_disjoint, parabolic_dual, twist_parabolic_line, MarkedSurface, ParabolicBundle, WeightList};
use crate::error::{Error, Result};
use crate::flagalg;
use crate::rational::{self, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleData {
    pub surface: MarkedSurface,
    pub e1: ParabolicBundle,
    pub e2: ParabolicBundle,
}

impl TripleData {
    /// Validates both bundles and that no weight is shared between them.
    pub fn new(surface: MarkedSurface, e1: ParabolicBundle, e2: ParabolicBundle) -> Result<Self> {
        e1.validate(&surface)?;
        e2.validate(&surface)?;
        check_disjoint(&e1, &e2)?;
        Ok(TripleData { surface, e1, e2 })
    }

    pub fn r1(&self) -> usize {
        self.e1.rank
    }

    pub fn r2(&self) -> usize {
        self.e2.rank
    }

    pub fn s(&self) -> usize {
        self.surface.s()
    }

    fn require_ranks(&self) -> Result<()> {
        if self.r1() == 0 || self.r2() == 0 {
            return Err(Error::Invalid("both bundles of the triple need positive rank".into()));
        }
        Ok(())
    }
}

/// `pdeg(E1) + pdeg(E2) + sigma rk(E2)`.
pub fn sigma_deg(t: &TripleData, sigma: &Rational) -> Rational {
    t.e1.pdeg() + t.e2.pdeg() + sigma * int(t.r2() as i64)
}

pub fn sigma_slope(t: &TripleData, sigma: &Rational) -> Rational {
    sigma_deg(t, sigma) / int((t.r1() + t.r2()) as i64)
}

/// Upper end of the stability window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaMax {
    Finite(Rational),
    Unbounded,
}

impl SigmaMax {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            SigmaMax::Finite(x) => Some(x),
            SigmaMax::Unbounded => None,
        }
    }

    /// `x <= self`, with everything below an unbounded end.
    pub fn admits(&self, x: &Rational) -> bool {
        self.finite().is_none_or(|m| x <= m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaWindow {
    pub sigma_m: Rational,
    pub sigma_max: SigmaMax,
}

impl SigmaWindow {
    /// Closed-window membership `sigma_m <= sigma <= sigma_M`.
    pub fn contains(&self, sigma: &Rational) -> bool {
        &self.sigma_m <= sigma && self.sigma_max.admits(sigma)
    }
}

pub fn sigma_window(t: &TripleData) -> Result<SigmaWindow> {
    t.require_ranks()?;
    let sigma_m = t.e1.pmu() - t.e2.pmu();
    let (r1, r2) = (t.r1() as i64, t.r2() as i64);
    let sigma_max = if r1 == r2 {
        SigmaMax::Unbounded
    } else {
        let ratio = int(r1 + r2) / int((r1 - r2).abs());
        SigmaMax::Finite((Rational::one() + &ratio) * &sigma_m + ratio * int(t.s() as i64))
    };
    Ok(SigmaWindow { sigma_m, sigma_max })
}

/// `(dual E2, dual E1)`.
pub fn dualize(t: &TripleData) -> TripleData {
    TripleData {
        surface: t.surface.clone(),
        e1: parabolic_dual(&t.e2),
        e2: parabolic_dual(&t.e1),
    }
}

fn require_r1_above_r2(t: &TripleData) -> Result<()> {
    if t.r1() <= t.r2() {
        return Err(Error::OrientationError);
    }
    Ok(())
}

/// The destabilizing subtriple of the generic triple and its quotient.
///
/// The subtriple is `(E1'', E2)` where at each point `E1''` carries the
/// target weights of [`flagalg::destabilizing_weight_subset`] and has degree
/// `d2 - r2 s + sum r_p`; the quotient is `(E1 / E1'', 0)`.
pub fn destabilizing_type(t: &TripleData) -> Result<(TripleData, TripleData)> {
    require_r1_above_r2(t)?;
    let mut sub_weights = BTreeMap::new();
    let mut quot_weights = BTreeMap::new();
    let mut excess = 0i64;
    for point in t.surface.points() {
        let alpha = t.e1.weights_at(point);
        let subset = flagalg::destabilizing_weight_subset(t.e2.weights_at(point), alpha)?;
        excess += subset.extra.len() as i64;
        let pick = |idx: Vec<usize>| WeightList::new(idx.iter().map(|&i| alpha[i - 1].clone()).collect());
        sub_weights.insert(point.clone(), pick(subset.union()));
        quot_weights.insert(point.clone(), pick(subset.complement(alpha.len())));
    }
    let sub_degree = t.e2.degree - (t.r2() * t.s()) as i64 + excess;
    let sub = TripleData {
        surface: t.surface.clone(),
        e1: ParabolicBundle { rank: t.r2(), degree: sub_degree, weights: sub_weights },
        e2: t.e2.clone(),
    };
    let quot = TripleData {
        surface: t.surface.clone(),
        e1: ParabolicBundle { rank: t.r1() - t.r2(), degree: t.e1.degree - sub_degree, weights: quot_weights },
        e2: ParabolicBundle::zero(&t.surface),
    };
    Ok((sub, quot))
}

/// `pdeg(E1''(D)) - pdeg(E2)` for the destabilizing type.
pub fn epsilon(t: &TripleData) -> Result<Rational> {
    let (sub, _) = destabilizing_type(t)?;
    Ok(sub.e1.pdeg() + int((t.r2() * t.s()) as i64) - t.e2.pdeg())
}

/// Shortcut sum `sum_x sum_k (alpha_{i_k} - beta_k)` over the extended greedy
/// matching. It equals [`epsilon`] when no wrapped match lands below an image
/// index, and is smaller otherwise.
pub fn epsilon_recipe(t: &TripleData) -> Result<Rational> {
    require_r1_above_r2(t)?;
    Ok(t.surface
        .points()
        .iter()
        .map(|p| flagalg::epsilon_recipe_point(t.e2.weights_at(p), t.e1.weights_at(p)))
        .sum())
}

/// `sigma_M - epsilon / r2`.
pub fn sigma_l(t: &TripleData) -> Result<Rational> {
    let eps = epsilon(t)?;
    let window = sigma_window(t)?;
    let sigma_max = window.sigma_max.finite().cloned().ok_or(Error::OrientationError)?;
    Ok(sigma_max - eps / int(t.r2() as i64))
}

/// `pdeg(E1) - pdeg(E2) + (r1 - 1) s`.
pub fn sigma_one(t: &TripleData) -> Rational {
    t.e1.pdeg() - t.e2.pdeg() + int((t.r1() as i64 - 1) * t.s() as i64)
}

/// Slope bounds that any subtriple must obey at large sigma when `r1 = r2`.
#[derive(Clone, Debug)]
struct LargeSigma {
    threshold: Rational,
    mu1: Rational,
    mu2: Rational,
    t_max: Rational,
    rank: i64,
    s: Rational,
}

impl LargeSigma {
    fn new(t: &TripleData) -> Option<Self> {
        if t.r1() != t.r2() || t.r1() == 0 {
            return None;
        }
        let rank = t.r1() as i64;
        let (mu1, mu2) = (t.e1.pmu(), t.e2.pmu());
        let s = int(t.s() as i64);
        let t_max = int(rank) * (&mu1 - &mu2 + int(2) * &s);
        Some(LargeSigma { threshold: sigma_one(t), mu1, mu2, t_max, rank, s })
    }

    /// Bound on the first slope of a subtriple whose first rank is `k`.
    fn first(&self, mu: &Rational, k: usize) -> Rational {
        let k = k as i64;
        mu + &self.t_max * int(self.rank - k) / int(2 * self.rank * k) + &self.s
    }

    /// Bound on the second slope of a subtriple.
    fn second(&self, mu: &Rational) -> Rational {
        mu + &self.t_max / int(2 * self.rank) + &self.s
    }

    /// Narrow `range` of `d1p` (with `d2p = total - d1p`) to the subtriples
    /// allowed above the threshold.
    fn restrict(&self, c: &Candidate, total: i64, t: &TripleData, range: &mut SplitRange) {
        let r = self.rank as usize;
        if c.r2p >= c.r1p {
            range.close();
            return;
        }
        // mu(E1') <= first bound
        range.at_most(int(c.r1p as i64) * self.first(&self.mu1, c.r1p) - &c.w1);
        // mu(E2') <= second bound
        if c.r2p > 0 {
            range.at_least(int(total) + &c.w2 - int(c.r2p as i64) * self.second(&self.mu2));
        }
        // the same two bounds for the dual triple, whose subtriple is our quotient
        let q2 = r - c.r2p;
        range.at_least(
            int(total - t.e2.degree) - &c.w2_rest - int(q2 as i64) * self.first(&-&self.mu2, q2),
        );
        let q1 = r - c.r1p;
        if q1 > 0 {
            range.at_most(int(t.e1.degree) + &c.w1_rest + int(q1 as i64) * self.second(&-&self.mu1));
        }
    }
}

/// Closed interval of admissible first degrees `d1p`.
#[derive(Clone, Debug, Default)]
struct SplitRange {
    lower: Option<Rational>,
    upper: Option<Rational>,
    empty: bool,
}

impl SplitRange {
    fn at_least(&mut self, x: Rational) {
        if self.lower.as_ref().is_none_or(|l| &x > l) {
            self.lower = Some(x);
        }
    }

    fn at_most(&mut self, x: Rational) {
        if self.upper.as_ref().is_none_or(|u| &x < u) {
            self.upper = Some(x);
        }
    }

    fn close(&mut self) {
        self.empty = true;
    }

    fn contains(&self, d: i64) -> bool {
        let d = int(d);
        !self.empty && self.lower.as_ref().is_none_or(|l| l <= &d) && self.upper.as_ref().is_none_or(|u| &d <= u)
    }

    /// Integer points; both ends must be present.
    fn integers(&self) -> core::ops::RangeInclusive<i64> {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if !self.empty => rational::ceil_i64(l)..=rational::floor_i64(u),
            #[allow(clippy::reversed_empty_ranges)]
            _ => 1..=0,
        }
    }
}

/// Upper bound for critical values of an equal-rank triple.
pub fn sigma_two_bound(t: &TripleData) -> Result<Rational> {
    if t.r1() != t.r2() {
        return Err(Error::OrientationError);
    }
    t.require_ranks()?;
    let large = LargeSigma::new(t).expect("equal positive ranks");
    let b2 = large.second(&large.mu2);
    let mu_sum = &large.mu1 + &large.mu2;
    let mut best = sigma_one(t);
    for r1p in 1..=t.r1() {
        for r2p in 0..r1p {
            let gap = int((r1p - r2p) as i64);
            let (a, b) = (int(r1p as i64), int(r2p as i64));
            let value = int(2) * large.first(&large.mu1, r1p) * &a / &gap + int(2) * &b2 * &b / &gap
                - &mu_sum * (a + b) / &gap;
            if value > best {
                best = value;
            }
        }
    }
    Ok(best)
}

/// Outcome of the large-sigma existence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LargeSigmaVerdict {
    NonEmptyIrreducible,
    Empty,
}

/// `sum_x r_p(x)` for the map `E2 -> E1` at every point.
pub fn total_r_p(t: &TripleData) -> Result<usize> {
    t.surface
        .points()
        .iter()
        .map(|p| flagalg::r_p(t.e2.weights_at(p), t.e1.weights_at(p)))
        .sum()
}

/// Equal ranks: nonempty iff `d1 + r1 s - d2 >= sum r_p`.
pub fn large_sigma_nonempty(t: &TripleData) -> Result<LargeSigmaVerdict> {
    if t.r1() != t.r2() {
        return Err(Error::OrientationError);
    }
    let lhs = t.e1.degree + (t.r1() * t.s()) as i64 - t.e2.degree;
    Ok(if lhs >= total_r_p(t)? as i64 {
        LargeSigmaVerdict::NonEmptyIrreducible
    } else {
        LargeSigmaVerdict::Empty
    })
}

/// Twists both bundles at every point by the line bundle that kills `r_p`.
///
/// Returns the new triple and the twist parameter used at each point.
pub fn normalizing_twist(t: &TripleData) -> Result<(TripleData, Vec<Rational>)> {
    let mut out = t.clone();
    let mut params = Vec::with_capacity(t.s());
    for point in t.surface.points() {
        let (_, x0) = flagalg::step_argmax(t.e2.weights_at(point), t.e1.weights_at(point))?;
        out.e1 = twist_parabolic_line(&out.e1, point, &x0)?;
        out.e2 = twist_parabolic_line(&out.e2, point, &x0)?;
        params.push(x0);
    }
    Ok((out, params))
}

/// Discrete invariants of a subtriple: ranks, degrees and the 1-based weight
/// indices it inherits at each point, listed in surface order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtripleInvariants {
    pub r1p: usize,
    pub r2p: usize,
    pub d1p: i64,
    pub d2p: i64,
    pub w1: Vec<Vec<usize>>,
    pub w2: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub sigma: Rational,
    pub witnesses: Vec<SubtripleInvariants>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WallReport {
    pub walls: Vec<Wall>,
    /// Subtriples with the same second-rank ratio and slope as the triple;
    /// these are semistable-destabilizing for every sigma.
    pub coincidences: Vec<SubtripleInvariants>,
}

/// A choice of ranks and weight indices, before degrees are fixed.
#[derive(Clone, Debug)]
struct Candidate {
    r1p: usize,
    r2p: usize,
    w1_idx: Vec<Vec<usize>>,
    w2_idx: Vec<Vec<usize>>,
    w1: Rational,
    w2: Rational,
    w1_rest: Rational,
    w2_rest: Rational,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - current.len() {
                break;
            }
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(1, n, k, &mut current, &mut out);
    out
}

/// All per-point index choices of size `k` for `bundle`, with their weight sums.
fn subset_choices(bundle: &ParabolicBundle, surface: &MarkedSurface, k: usize) -> Vec<(Vec<Vec<usize>>, Rational)> {
    let mut acc: Vec<(Vec<Vec<usize>>, Rational)> = alloc::vec![(Vec::new(), Rational::zero())];
    for point in surface.points() {
        let weights = bundle.weights_at(point);
        let combos = combinations(weights.len(), k);
        let mut next = Vec::with_capacity(acc.len() * combos.len());
        for (picked, sum) in &acc {
            for combo in &combos {
                let extra: Rational = combo.iter().map(|&i| weights[i - 1].clone()).sum();
                let mut picked = picked.clone();
                picked.push(combo.clone());
                next.push((picked, sum + extra));
            }
        }
        acc = next;
    }
    acc
}

struct Enumerator<'a> {
    t: &'a TripleData,
    /// Sum of parabolic slopes weighted as in `pdeg_0(T) / (r1 + r2)`.
    mu: Rational,
    lambda: Rational,
    large: Option<LargeSigma>,
    candidates: Vec<Candidate>,
}

impl<'a> Enumerator<'a> {
    fn new(t: &'a TripleData) -> Self {
        let (r1, r2) = (t.r1(), t.r2());
        let n = int((r1 + r2) as i64);
        let mu = (t.e1.pdeg() + t.e2.pdeg()) / &n;
        let lambda = int(r2 as i64) / &n;
        let total1 = t.e1.weight_sum();
        let total2 = t.e2.weight_sum();
        let mut candidates = Vec::new();
        for r1p in 0..=r1 {
            let firsts = subset_choices(&t.e1, &t.surface, r1p);
            for r2p in 0..=r2 {
                if (r1p, r2p) == (0, 0) || (r1p, r2p) == (r1, r2) {
                    continue;
                }
                let seconds = subset_choices(&t.e2, &t.surface, r2p);
                for (w1_idx, w1) in &firsts {
                    for (w2_idx, w2) in &seconds {
                        candidates.push(Candidate {
                            r1p,
                            r2p,
                            w1_idx: w1_idx.clone(),
                            w2_idx: w2_idx.clone(),
                            w1: w1.clone(),
                            w2: w2.clone(),
                            w1_rest: &total1 - w1,
                            w2_rest: &total2 - w2,
                        });
                    }
                }
            }
        }
        Enumerator { t, mu, lambda, large: LargeSigma::new(t), candidates }
    }

    fn lambda_of(c: &Candidate) -> Rational {
        int(c.r2p as i64) / int((c.r1p + c.r2p) as i64)
    }

    /// Scale `n'(lambda - lambda')` and offset `n' mu - W'` of the wall
    /// equation `sigma * scale = D' - offset`.
    fn wall_line(&self, c: &Candidate) -> (Rational, Rational) {
        let n = int((c.r1p + c.r2p) as i64);
        let scale = &n * (&self.lambda - Self::lambda_of(c));
        let offset = n * &self.mu - &c.w1 - &c.w2;
        (scale, offset)
    }

    /// Range of `d1p` for which the subtriple with total degree `total`
    /// satisfies `sigma_m(sub) <= sigma` and `sigma_m(quotient) <= sigma`
    /// (when the relevant ranks are positive), plus the large-sigma bounds.
    fn split_range(&self, c: &Candidate, total: i64, sigma: &Rational) -> SplitRange {
        let t = self.t;
        let mut range = SplitRange::default();
        if c.r1p > 0 && c.r2p > 0 {
            let (a, b) = (int(c.r1p as i64), int(c.r2p as i64));
            let at_zero = &c.w1 / &a - (int(total) + &c.w2) / &b;
            range.at_most((sigma - at_zero) / (a.recip() + b.recip()));
        }
        let (q1, q2) = (t.r1() - c.r1p, t.r2() - c.r2p);
        if q1 > 0 && q2 > 0 {
            let (q1, q2) = (int(q1 as i64), int(q2 as i64));
            let at_zero = (int(t.e1.degree) + &c.w1_rest) / &q1 - (int(t.e2.degree - total) + &c.w2_rest) / &q2;
            range.at_least((at_zero - sigma) / (q1.recip() + q2.recip()));
        }
        if let Some(large) = &self.large {
            if sigma > &large.threshold {
                large.restrict(c, total, t, &mut range);
            }
        }
        range
    }

    fn forced(rank: usize, full: usize, degree: i64) -> Option<i64> {
        if rank == 0 {
            Some(0)
        } else if rank == full {
            Some(degree)
        } else {
            None
        }
    }

    /// Admissible degree splits `(d1p, d2p)` of `total` at `sigma`.
    fn splits(&self, c: &Candidate, total: i64, sigma: &Rational) -> Vec<(i64, i64)> {
        let t = self.t;
        let f1 = Self::forced(c.r1p, t.r1(), t.e1.degree);
        let f2 = Self::forced(c.r2p, t.r2(), t.e2.degree);
        let range = self.split_range(c, total, sigma);
        let single = match (f1, f2) {
            (Some(a), Some(b)) if a + b != total => return Vec::new(),
            (Some(a), _) => a,
            (None, Some(b)) => total - b,
            // both ranks lie strictly inside, so both window conditions
            // apply and bound d1p from either side
            (None, None) => return range.integers().map(|d| (d, total - d)).collect(),
        };
        if range.contains(single) {
            alloc::vec![(single, total - single)]
        } else {
            Vec::new()
        }
    }

    fn witness(c: &Candidate, d1p: i64, d2p: i64) -> SubtripleInvariants {
        SubtripleInvariants {
            r1p: c.r1p,
            r2p: c.r2p,
            d1p,
            d2p,
            w1: c.w1_idx.clone(),
            w2: c.w2_idx.clone(),
        }
    }

    fn walls(&self, lo: &Rational, hi: &Rational) -> Vec<Wall> {
        let mut found: BTreeMap<Rational, Vec<SubtripleInvariants>> = BTreeMap::new();
        for c in &self.candidates {
            let (scale, offset) = self.wall_line(c);
            if scale.is_zero() {
                continue;
            }
            let (a, b) = (lo * &scale + &offset, hi * &scale + &offset);
            let (low, high) = if scale.is_positive() { (a, b) } else { (b, a) };
            let first = rational::floor_i64(&low) + 1;
            let last = rational::ceil_i64(&high) - 1;
            for total in first..=last {
                let sigma = (int(total) - &offset) / &scale;
                for (d1p, d2p) in self.splits(c, total, &sigma) {
                    found.entry(sigma.clone()).or_default().push(Self::witness(c, d1p, d2p));
                }
            }
        }
        found
            .into_iter()
            .map(|(sigma, mut witnesses)| {
                witnesses.sort();
                witnesses.dedup();
                Wall { sigma, witnesses }
            })
            .collect()
    }

    fn coincidences(&self) -> Vec<SubtripleInvariants> {
        let t = self.t;
        let mut out = Vec::new();
        for c in &self.candidates {
            let (scale, offset) = self.wall_line(c);
            if !scale.is_zero() {
                continue;
            }
            let Some(total) = rational::as_i64(&offset) else { continue };
            let d1p = Self::forced(c.r1p, t.r1(), t.e1.degree);
            let d2p = Self::forced(c.r2p, t.r2(), t.e2.degree);
            let split = match (d1p, d2p) {
                (Some(a), Some(b)) if a + b == total => (a, b),
                (Some(_), Some(_)) => continue,
                (Some(a), None) => (a, total - a),
                (None, Some(b)) => (total - b, b),
                (None, None) => (total, 0),
            };
            out.push(Self::witness(c, split.0, split.1));
        }
        out.sort();
        out
    }

    fn is_wall(&self, sigma: &Rational) -> bool {
        self.candidates.iter().any(|c| {
            let (scale, offset) = self.wall_line(c);
            if scale.is_zero() {
                return false;
            }
            match rational::as_i64(&(sigma * &scale + &offset)) {
                Some(total) => !self.splits(c, total, sigma).is_empty(),
                None => false,
            }
        })
    }
}

/// Numerical walls in the open interval `(lo, hi)`.
///
/// A wall is a sigma where some candidate subtriple has the same sigma-slope
/// as the triple. Subtriples must pass the necessary window conditions for
/// themselves and their quotients, and for equal ranks above `sigma_one` the
/// slope bounds that also give [`sigma_two_bound`]. No semistable triple is
/// constructed, so the list may contain values that are not critical.
pub fn enumerate_walls(t: &TripleData, lo: &Rational, hi: &SigmaMax, include_dependent: bool) -> Result<WallReport> {
    t.require_ranks()?;
    let hi = hi.finite().ok_or(Error::UnboundedInterval)?;
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    let e = Enumerator::new(t);
    Ok(WallReport {
        walls: e.walls(lo, hi),
        coincidences: if include_dependent { e.coincidences() } else { Vec::new() },
    })
}

/// Whether no candidate subtriple has the triple's sigma-slope at `sigma`,
/// counting sigma-independent coincidences.
pub fn is_generic_at(t: &TripleData, sigma: &Rational) -> bool {
    if t.r1() == 0 || t.r2() == 0 {
        return true;
    }
    let e = Enumerator::new(t);
    e.coincidences().is_empty() && !e.is_wall(sigma)
}
