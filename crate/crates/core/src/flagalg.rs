//! Linear algebra of weighted flags at a single marked point.
//!
//! Everything here looks at one fibre: a source flag with weights `beta`
//! mapping into a target flag with weights `alpha`. Index sets are 1-based,
//! the way flag positions are usually written.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::bundle::HomConstraint;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest source dimension accepted by [`r_p_bruteforce`]. The target is
/// at least as large once the orientation check passes.
pub const BRUTEFORCE_LIMIT: usize = 7;

/// Output of the greedy matching of source weights to target weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    /// Target index matched to each source weight, increasing. In extended
    /// mode an index `i > dim` refers to `alpha[(i-1) % dim] + (i-1) / dim`.
    pub i_seq: Vec<usize>,
    /// Number of matches inside the target flag.
    pub rank: usize,
    /// Source weights left unmatched inside the target flag.
    pub r_p: usize,
}

/// Support of a generic flag-compatible map plus one representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircasePattern {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col)` cells that may be nonzero, 1-based.
    pub allowed: BTreeSet<(usize, usize)>,
    /// Cells carrying a 1 in the greedy representative.
    pub marks: Vec<(usize, usize)>,
}

impl StaircasePattern {
    /// Image weight indices of the representative.
    pub fn image_indices(&self) -> Vec<usize> {
        self.marks.iter().map(|&(r, _)| r).collect()
    }
}

/// Index sets describing the destabilizing subbundle of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSubset {
    /// Image of the generic map.
    pub image: Vec<usize>,
    /// Lowest `r_p` indices outside the image.
    pub extra: Vec<usize>,
}

impl WeightSubset {
    /// Sorted union of both index sets.
    pub fn union(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.image.iter().chain(&self.extra).copied().collect();
        all.sort_unstable();
        all
    }

    /// Indices of the target not in the union.
    pub fn complement(&self, dim: usize) -> Vec<usize> {
        let used = self.union();
        (1..=dim).filter(|i| !used.contains(i)).collect()
    }
}

fn admits(target: &Rational, source: &Rational, c: HomConstraint) -> bool {
    match c {
        HomConstraint::Parabolic => target >= source,
        HomConstraint::StronglyParabolic => target > source,
    }
}

/// Dimension of flag-compatible maps source -> target at the point.
pub fn dim_parhom_point(source: &[Rational], target: &[Rational], c: HomConstraint) -> usize {
    target
        .iter()
        .map(|a| source.iter().filter(|b| admits(a, b, c)).count())
        .sum()
}

/// Value of the periodic extension of `target` at 1-based index `i`.
pub fn extended_weight(target: &[Rational], i: usize) -> Rational {
    let r = target.len();
    &target[(i - 1) % r] + rational::int(((i - 1) / r) as i64)
}

/// Greedily match each source weight to the least unused larger target weight.
///
/// In extended mode the target flag is continued periodically so that every
/// source weight finds a match; this needs a nonempty target.
pub fn i_sequence(source: &[Rational], target: &[Rational], extended: bool) -> MatchingResult {
    let dim = target.len();
    let mut i_seq = Vec::with_capacity(source.len());
    let mut last = 0usize;
    let limit = if extended && dim > 0 { usize::MAX } else { dim };
    for beta in source {
        match (last + 1..=limit).find(|&j| extended_weight(target, j) > *beta) {
            Some(j) => {
                i_seq.push(j);
                last = j;
            }
            // later source weights are larger, so they fail too
            None => break,
        }
    }
    let rank = i_seq.iter().filter(|&&i| i <= dim).count();
    MatchingResult { i_seq, rank, r_p: source.len() - rank }
}

/// Rank of a generic strongly parabolic map source -> target.
pub fn generic_rank(source: &[Rational], target: &[Rational]) -> usize {
    i_sequence(source, target, false).rank
}

/// Smallest cokernel dimension of a map source -> target.
pub fn min_coker(source: &[Rational], target: &[Rational]) -> usize {
    target.len() - generic_rank(source, target)
}

fn oriented(source: &[Rational], target: &[Rational]) -> Result<()> {
    if source.len() > target.len() {
        return Err(Error::OrientationError);
    }
    Ok(())
}

/// Cokernel excess `min_coker - (target dim - source dim)`.
pub fn r_p(source: &[Rational], target: &[Rational]) -> Result<usize> {
    oriented(source, target)?;
    Ok(source.len() - generic_rank(source, target))
}

/// Maximum of `f - g` together with a point where it is attained.
///
/// `f(x)` counts target weights `< x`, `g(x)` counts source weights `<= x`.
/// The maximum is reached at 0 or just after some target weight; the point
/// returned is the midpoint between that weight and the next weight of
/// either flag (or 1), so it never coincides with a weight.
pub fn step_argmax(source: &[Rational], target: &[Rational]) -> Result<(usize, Rational)> {
    if source.len() != target.len() {
        return Err(Error::DimensionMismatch { source: source.len(), target: target.len() });
    }
    let mut best = (0usize, Rational::zero());
    for (k, alpha) in target.iter().enumerate() {
        let below = source.iter().filter(|b| *b <= alpha).count();
        let gap = (k + 1).saturating_sub(below);
        if gap > best.0 {
            let next = target
                .iter()
                .chain(source)
                .filter(|w| *w > alpha)
                .min()
                .cloned()
                .unwrap_or_else(|| rational::int(1));
            best = (gap, (alpha + next) / rational::int(2));
        }
    }
    Ok(best)
}

/// `r_p` for equal dimensions as the maximum of a step function difference.
pub fn r_p_stepfunction(source: &[Rational], target: &[Rational]) -> Result<usize> {
    step_argmax(source, target).map(|(r, _)| r)
}

/// Staircase support of strongly parabolic maps and the greedy representative.
pub fn generic_map_pattern(source: &[Rational], target: &[Rational]) -> StaircasePattern {
    let mut allowed = BTreeSet::new();
    for (j, a) in target.iter().enumerate() {
        for (k, b) in source.iter().enumerate() {
            if a > b {
                allowed.insert((j + 1, k + 1));
            }
        }
    }
    let m = i_sequence(source, target, false);
    let marks = m.i_seq.iter().enumerate().map(|(k, &i)| (i, k + 1)).collect();
    StaircasePattern { rows: target.len(), cols: source.len(), allowed, marks }
}

/// Maximum matching between rows and columns of `allowed` (augmenting paths).
pub fn max_matching(rows: usize, cols: usize, allowed: &BTreeSet<(usize, usize)>) -> usize {
    fn augment(
        col: usize,
        rows: usize,
        allowed: &BTreeSet<(usize, usize)>,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for row in 1..=rows {
            if allowed.contains(&(row, col)) && !seen[row] {
                seen[row] = true;
                let free = match owner[row] {
                    None => true,
                    Some(other) => augment(other, rows, allowed, seen, owner),
                };
                if free {
                    owner[row] = Some(col);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = alloc::vec![None; rows + 1];
    let mut size = 0;
    for col in 1..=cols {
        let mut seen = alloc::vec![false; rows + 1];
        if augment(col, rows, allowed, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

/// `r_p` from a maximum matching on the staircase support.
pub fn r_p_bruteforce(source: &[Rational], target: &[Rational]) -> Result<usize> {
    oriented(source, target)?;
    if source.len() > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge { limit: BRUTEFORCE_LIMIT });
    }
    let pattern = generic_map_pattern(source, target);
    Ok(source.len() - max_matching(pattern.rows, pattern.cols, &pattern.allowed))
}

/// Target indices spanning the destabilizing subbundle: the generic image
/// plus the lowest `r_p` indices outside it.
pub fn destabilizing_weight_subset(source: &[Rational], target: &[Rational]) -> Result<WeightSubset> {
    oriented(source, target)?;
    let m = i_sequence(source, target, false);
    let image = m.i_seq;
    let extra = (1..=target.len()).filter(|i| !image.contains(i)).take(m.r_p).collect();
    Ok(WeightSubset { image, extra })
}

/// Pointwise contribution `sum_k (alpha_{i_k} - beta_k)` over the extended
/// greedy sequence.
pub fn epsilon_recipe_point(source: &[Rational], target: &[Rational]) -> Rational {
    let m = i_sequence(source, target, true);
    m.i_seq
        .iter()
        .zip(source)
        .fold(Rational::zero(), |acc, (&i, b)| acc + extended_weight(target, i) - b)
}

/// Pointwise contribution of the destabilizing type:
/// `r_p + sum over I and J of alpha - sum of beta`.
pub fn epsilon_type_point(source: &[Rational], target: &[Rational]) -> Result<Rational> {
    let subset = destabilizing_weight_subset(source, target)?;
    let alpha: Rational = subset.union().iter().map(|&i| target[i - 1].clone()).sum();
    let beta: Rational = source.iter().cloned().sum();
    Ok(rational::int(subset.extra.len() as i64) + alpha - beta)
}
