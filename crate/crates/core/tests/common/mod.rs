//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use parhiggs_core::higgs::UpqHiggsData;
use parhiggs_core::rational::{int, ratio};
use parhiggs_core::triples::TripleData;
use parhiggs_core::{MarkedSurface, ParabolicBundle, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Disjoint sorted weight lists with the given lengths, all multiples of `1/den`.
pub fn disjoint_weights(rng: &mut impl Rng, den: i64, lens: &[usize]) -> Vec<Vec<Rational>> {
    let mut pool: Vec<i64> = (0..den).collect();
    pool.shuffle(rng);
    let mut out = Vec::with_capacity(lens.len());
    let mut taken = 0;
    for &n in lens {
        let mut nums = pool[taken..taken + n].to_vec();
        taken += n;
        nums.sort_unstable();
        out.push(nums.into_iter().map(|k| ratio(k, den)).collect());
    }
    out
}

/// A denominator large enough for `needed` distinct weights.
pub fn denominator(rng: &mut impl Rng, needed: usize) -> i64 {
    let base = needed.max(2) as i64;
    rng.gen_range(base..base + 24)
}

/// Bundles of the given ranks and degrees with pairwise disjoint weights.
pub fn bundles(rng: &mut impl Rng, surface: &MarkedSurface, ranks: &[usize], degrees: &[i64]) -> Vec<ParabolicBundle> {
    let den = denominator(rng, ranks.iter().sum());
    let mut lists: Vec<Vec<(String, Vec<Rational>)>> = vec![Vec::new(); ranks.len()];
    for point in surface.points() {
        for (i, w) in disjoint_weights(rng, den, ranks).into_iter().enumerate() {
            lists[i].push((point.clone(), w));
        }
    }
    lists
        .into_iter()
        .zip(ranks.iter().zip(degrees))
        .map(|(w, (&r, &d))| ParabolicBundle::new(r, d, w))
        .collect()
}

pub fn random_triple(rng: &mut impl Rng, genus: u32, s: usize, r1: usize, r2: usize, span: i64) -> TripleData {
    let surface = MarkedSurface::with_points(genus, s);
    let degrees = [rng.gen_range(-span..=span), rng.gen_range(-span..=span)];
    let b = bundles(rng, &surface, &[r1, r2], &degrees);
    TripleData::new(surface, b[0].clone(), b[1].clone()).expect("generated triple is valid")
}

pub fn random_higgs(rng: &mut impl Rng, genus: u32, s: usize, p: usize, q: usize, span: i64) -> UpqHiggsData {
    let surface = MarkedSurface::with_points(genus, s);
    let degrees = [rng.gen_range(-span..=span), rng.gen_range(-span..=span)];
    let b = bundles(rng, &surface, &[p, q], &degrees);
    UpqHiggsData::new(surface, b[0].clone(), b[1].clone()).expect("generated data is valid")
}

/// Weights of one point as `k/den`.
pub fn over(den: i64, nums: &[i64]) -> Vec<Rational> {
    nums.iter().map(|&n| ratio(n, den)).collect()
}

pub fn line(point: &str, degree: i64, w: Rational) -> ParabolicBundle {
    ParabolicBundle::new(1, degree, [(point, vec![w])])
}

pub fn zero() -> Rational {
    int(0)
}
