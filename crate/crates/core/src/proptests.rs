//! Property tests over random instances.

use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;
use proptest::sample::subsequence;

use crate::bundle::{direct_sum, parabolic_dual, twist_parabolic_line, HomConstraint};
use crate::higgs::{self, UpqHiggsData, Verdict};
use crate::homcalc::{chi_bundle, chi_triple_pair, BundleInvariants};
use crate::rational::{int, ratio};
use crate::reps::{self, OrbifoldData};
use crate::triples::{self, SigmaMax, TripleData};
use crate::{flagalg, MarkedSurface, ParabolicBundle, Rational};

/// Pairwise disjoint sorted weight lists of the given lengths.
fn disjoint(lens: Vec<usize>) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    let total: usize = lens.iter().sum();
    let lo = total.max(2) as i64;
    (lo..lo + 24).prop_flat_map(move |den| {
        let lens = lens.clone();
        subsequence((0..den).collect::<Vec<_>>(), total).prop_shuffle().prop_map(move |nums| {
            let mut out = Vec::new();
            let mut rest = &nums[..];
            for &n in &lens {
                let mut part = rest[..n].to_vec();
                rest = &rest[n..];
                part.sort_unstable();
                out.push(part.into_iter().map(|k| ratio(k, den)).collect());
            }
            out
        })
    })
}

/// Bundles of the given ranks and degrees on `surface` with disjoint weights.
fn bundles(surface: MarkedSurface, ranks: Vec<usize>, degrees: Vec<i64>) -> impl Strategy<Value = Vec<ParabolicBundle>> {
    let points = surface.points().to_vec();
    proptest::collection::vec(disjoint(ranks.clone()), points.len()).prop_map(move |per_point| {
        (0..ranks.len())
            .map(|i| {
                let weights = points.iter().zip(&per_point).map(|(p, w)| (p.clone(), w[i].clone()));
                ParabolicBundle::new(ranks[i], degrees[i], weights)
            })
            .collect()
    })
}

fn triple(genus: std::ops::RangeInclusive<u32>, s: std::ops::RangeInclusive<usize>, r1: std::ops::RangeInclusive<usize>, r2: std::ops::RangeInclusive<usize>, span: i64) -> impl Strategy<Value = TripleData> {
    (genus, s, r1, r2, -span..=span, -span..=span).prop_flat_map(|(g, s, r1, r2, d1, d2)| {
        let surface = MarkedSurface::with_points(g, s);
        bundles(surface.clone(), vec![r1, r2], vec![d1, d2])
            .prop_map(move |b| TripleData::new(surface.clone(), b[0].clone(), b[1].clone()).unwrap())
    })
}

fn higgs_data(max_rank: usize, span: i64) -> impl Strategy<Value = UpqHiggsData> {
    (0..=3u32, 0..=3usize, 1..=max_rank, 1..=max_rank, -span..=span, -span..=span).prop_flat_map(|(g, s, p, q, a, b)| {
        let surface = MarkedSurface::with_points(g, s);
        bundles(surface.clone(), vec![p, q], vec![a, b])
            .prop_map(move |v| UpqHiggsData::new(surface.clone(), v[0].clone(), v[1].clone()).unwrap())
    })
}

fn point_pair(max_dim: usize) -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>)> {
    (0..=max_dim)
        .prop_flat_map(move |t| (0..=t).prop_map(move |s| (s, t)))
        .prop_flat_map(|(s, t)| disjoint(vec![s, t]))
        .prop_map(|mut w| {
            let target = w.pop().unwrap();
            (w.pop().unwrap(), target)
        })
}

fn equal_pair(max_dim: usize) -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>)> {
    (1..=max_dim).prop_flat_map(|d| disjoint(vec![d, d])).prop_map(|mut w| {
        let target = w.pop().unwrap();
        (w.pop().unwrap(), target)
    })
}

/// Rank over a prime field of a matrix with random entries on `cells`.
fn random_rank(rows: usize, cols: usize, cells: &BTreeSet<(usize, usize)>, seed: u64) -> usize {
    const P: u64 = 2_305_843_009_213_693_951;
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % P
    };
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let mut m: Vec<Vec<u64>> = (1..=rows)
        .map(|r| (1..=cols).map(|c| if cells.contains(&(r, c)) { next() } else { 0 }).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow(m[rank][c], P - 2);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = mul(row[c], inv);
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + P - mul(f, y)) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #[test]
    fn direct_sum_adds_pdeg(b in (0..=3u32, 1..=3usize, 1..=4usize, 1..=4usize, -5..=5i64, -5..=5i64)
        .prop_flat_map(|(g, s, r1, r2, d1, d2)| bundles(MarkedSurface::with_points(g, s), vec![r1, r2], vec![d1, d2]))) {
        let sum = direct_sum(&b[0], &b[1]).unwrap();
        prop_assert_eq!(sum.pdeg(), b[0].pdeg() + b[1].pdeg());
        prop_assert_eq!(sum.rank, b[0].rank + b[1].rank);
    }

    #[test]
    fn dual_flips_pdeg(b in (0..=3usize, 1..=5usize, -5..=5i64)
        .prop_flat_map(|(s, r, d)| bundles(MarkedSurface::with_points(1, s), vec![r], vec![d]))) {
        let dual = parabolic_dual(&b[0]);
        prop_assert_eq!(dual.pdeg(), -b[0].pdeg());
        prop_assert_eq!(parabolic_dual(&dual), b[0].clone());
        prop_assert!(dual.validate(&MarkedSurface::with_points(1, b[0].weights.len())).is_ok());
    }

    #[test]
    fn line_twist_keeps_slope_gap(b in (1..=4usize, -5..=5i64, -5..=5i64)
        .prop_flat_map(|(r, d1, d2)| bundles(MarkedSurface::with_points(1, 1), vec![r, r], vec![d1, d2])),
        x_num in 0..97i64) {
        let x0 = ratio(x_num, 97);
        let hits = |e: &ParabolicBundle| e.weights_at("x1").contains(&x0);
        prop_assume!(!hits(&b[0]) && !hits(&b[1]));
        let t1 = twist_parabolic_line(&b[0], "x1", &x0).unwrap();
        let t2 = twist_parabolic_line(&b[1], "x1", &x0).unwrap();
        prop_assert_eq!(t1.rank, b[0].rank);
        prop_assert_eq!(t1.pdeg() - t2.pdeg(), b[0].pdeg() - b[1].pdeg());
        if x_num > 0 {
            prop_assert_eq!(t1.pdeg() - b[0].pdeg(), int(b[0].rank as i64) * (int(1) - &x0));
        }
    }

    #[test]
    fn r_p_matches_matching((source, target) in point_pair(6)) {
        let greedy = flagalg::r_p(&source, &target).unwrap();
        prop_assert_eq!(greedy, flagalg::r_p_bruteforce(&source, &target).unwrap());
    }

    #[test]
    fn r_p_matches_step_function((source, target) in equal_pair(6)) {
        prop_assert_eq!(flagalg::r_p(&source, &target).unwrap(), flagalg::r_p_stepfunction(&source, &target).unwrap());
    }

    #[test]
    fn generic_rank_matches_random_matrix((source, target) in point_pair(7), seed in any::<u64>()) {
        let p = flagalg::generic_map_pattern(&source, &target);
        let sampled = (0..3).map(|i| random_rank(p.rows, p.cols, &p.allowed, seed.wrapping_add(i))).max().unwrap();
        prop_assert_eq!(sampled, flagalg::generic_rank(&source, &target));
    }

    #[test]
    fn pairing_sums_to_product((a, b) in (0..=8usize, 0..=8usize).prop_flat_map(|(p, q)| disjoint(vec![p, q])).prop_map(|mut w| {
        let b = w.pop().unwrap();
        (w.pop().unwrap(), b)
    })) {
        let forth = flagalg::dim_parhom_point(&a, &b, HomConstraint::Parabolic);
        let back = flagalg::dim_parhom_point(&b, &a, HomConstraint::Parabolic);
        prop_assert_eq!(forth + back, a.len() * b.len());
    }

    #[test]
    fn representative_is_a_maximum_matching((source, target) in point_pair(6)) {
        let p = flagalg::generic_map_pattern(&source, &target);
        prop_assert!(p.marks.iter().all(|m| p.allowed.contains(m)));
        let rows: BTreeSet<_> = p.marks.iter().map(|m| m.0).collect();
        let cols: BTreeSet<_> = p.marks.iter().map(|m| m.1).collect();
        prop_assert_eq!(rows.len(), p.marks.len());
        prop_assert_eq!(cols.len(), p.marks.len());
        prop_assert_eq!(p.marks.len(), flagalg::max_matching(p.rows, p.cols, &p.allowed));
        let subset = flagalg::destabilizing_weight_subset(&source, &target).unwrap();
        prop_assert_eq!(p.image_indices(), subset.image);
    }

    #[test]
    fn greedy_sequence_is_increasing((source, target) in point_pair(6)) {
        prop_assume!(!target.is_empty());
        let m = flagalg::i_sequence(&source, &target, true);
        prop_assert_eq!(m.i_seq.len(), source.len());
        prop_assert!(m.i_seq.windows(2).all(|w| w[0] < w[1]));
        for (k, &i) in m.i_seq.iter().enumerate() {
            prop_assert!(flagalg::extended_weight(&target, i) > source[k]);
        }
    }

    #[test]
    fn chi_is_linear(r1 in 0..20usize, d1 in -20..20i64, r2 in 0..20usize, d2 in -20..20i64, g in 0..5u32) {
        let inv = |rank, degree| BundleInvariants { rank, degree, pdeg: int(0) };
        prop_assert_eq!(
            chi_bundle(&inv(r1 + r2, d1 + d2), g),
            chi_bundle(&inv(r1, d1), g) + chi_bundle(&inv(r2, d2), g)
        );
    }
}

/// Splits `t` into a subtriple and quotient using index picks and a degree split.
fn split(t: &TripleData, picks1: &[Vec<bool>], picks2: &[Vec<bool>], d1p: i64, d2p: i64) -> (TripleData, TripleData) {
    let cut = |e: &ParabolicBundle, picks: &[Vec<bool>], degree: i64| {
        let mut sub = Vec::new();
        let mut rest = Vec::new();
        for (point, pick) in t.surface.points().iter().zip(picks) {
            let w = e.weights_at(point);
            sub.push((point.clone(), w.iter().zip(pick).filter(|(_, &k)| k).map(|(x, _)| x.clone()).collect::<Vec<_>>()));
            rest.push((point.clone(), w.iter().zip(pick).filter(|(_, &k)| !k).map(|(x, _)| x.clone()).collect::<Vec<_>>()));
        }
        let rank = picks.first().map_or(0, |p| p.iter().filter(|&&k| k).count());
        (
            ParabolicBundle::new(rank, degree, sub),
            ParabolicBundle::new(e.rank - rank, e.degree - degree, rest),
        )
    };
    let (a1, b1) = cut(&t.e1, picks1, d1p);
    let (a2, b2) = cut(&t.e2, picks2, d2p);
    let s = t.surface.clone();
    (TripleData { surface: s.clone(), e1: a1, e2: a2 }, TripleData { surface: s, e1: b1, e2: b2 })
}

/// The same number of picked indices at every point.
fn picks(points: usize, rank: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    (0..=rank).prop_flat_map(move |k| {
        proptest::collection::vec(
            Just((0..rank).collect::<Vec<_>>()).prop_shuffle().prop_map(move |order| {
                let mut pick = vec![false; rank];
                for &i in &order[..k] {
                    pick[i] = true;
                }
                pick
            }),
            points,
        )
    })
}

proptest! {
    #[test]
    fn chi_is_additive((t, p1, p2, d1p, d2p) in triple(0..=3, 1..=2, 1..=3, 1..=3, 5).prop_flat_map(|t| {
        let s = t.s();
        let (r1, r2) = (t.r1(), t.r2());
        (Just(t), picks(s, r1), picks(s, r2), -6..=6i64, -6..=6i64)
    })) {
        let (sub, quot) = split(&t, &p1, &p2, d1p, d2p);
        let whole = chi_triple_pair(&t, &t).unwrap();
        let parts = chi_triple_pair(&sub, &sub).unwrap()
            + chi_triple_pair(&quot, &quot).unwrap()
            + chi_triple_pair(&quot, &sub).unwrap()
            + chi_triple_pair(&sub, &quot).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn epsilon_is_positive_and_bounds_the_recipe(t in triple(0..=3, 1..=3, 2..=5, 1..=4, 6)) {
        prop_assume!(t.r1() > t.r2());
        let eps = triples::epsilon(&t).unwrap();
        let recipe = triples::epsilon_recipe(&t).unwrap();
        prop_assert!(eps.is_positive());
        prop_assert!(recipe <= eps);
        let sigma_max = triples::sigma_window(&t).unwrap().sigma_max.finite().cloned().unwrap();
        prop_assert!(triples::sigma_l(&t).unwrap() < sigma_max);
        let clean = t.surface.points().iter().all(|p| {
            let s = flagalg::destabilizing_weight_subset(t.e2.weights_at(p), t.e1.weights_at(p)).unwrap();
            s.image.iter().all(|&i| i > s.extra.len())
        });
        if clean {
            prop_assert_eq!(recipe, eps);
        }
    }

    #[test]
    fn toledo_identities(h in higgs_data(4, 8)) {
        let tau = higgs::toledo(&h);
        let e = direct_sum(&h.v, &h.w).unwrap();
        let (p, q) = (int(h.p() as i64), int(h.q() as i64));
        prop_assert_eq!(&tau, &(int(2) * &p * (h.v.pmu() - e.pmu())));
        prop_assert_eq!(&tau, &(int(2) * &q * (e.pmu() - h.w.pmu())));
        let swapped = h.swapped();
        prop_assert_eq!(higgs::toledo(&swapped), -tau);
        prop_assert_eq!(higgs::bounds(&swapped), higgs::bounds(&h));
        prop_assert_eq!(higgs::moduli_dimension(&h), higgs::gl_dimension(h.p() + h.q(), h.surface.genus(), h.surface.s()) / int(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn equal_rank_walls_stay_below_bound(t in triple(0..=2, 1..=2, 1..=3, 1..=1, 3).prop_filter("equal ranks", |t| t.r1() >= 1)
        .prop_flat_map(|t| { let r = t.r1(); triple(t.surface.genus()..=t.surface.genus(), t.s()..=t.s(), r..=r, r..=r, 3) })) {
        let bound = triples::sigma_two_bound(&t).unwrap();
        let w = triples::sigma_window(&t).unwrap();
        let hi = SigmaMax::Finite(&bound + int(10));
        prop_assume!(w.sigma_m < &bound + int(10));
        let report = triples::enumerate_walls(&t, &w.sigma_m, &hi, false).unwrap();
        for wall in &report.walls {
            prop_assert!(wall.sigma <= bound, "wall {} above bound {}", wall.sigma, bound);
        }
    }

    #[test]
    fn genericity_matches_walls(t in triple(0..=2, 1..=2, 1..=3, 1..=3, 3)) {
        let w = triples::sigma_window(&t).unwrap();
        let hi = SigmaMax::Finite(&w.sigma_m + int(6));
        let report = triples::enumerate_walls(&t, &(&w.sigma_m - int(2)), &hi, true).unwrap();
        let dependent = !report.coincidences.is_empty();
        let sample = &report.walls[..report.walls.len().min(6)];
        for wall in sample {
            prop_assert!(!triples::is_generic_at(&t, &wall.sigma));
        }
        for pair in sample.windows(2) {
            let mid = (&pair[0].sigma + &pair[1].sigma) / int(2);
            prop_assert_eq!(triples::is_generic_at(&t, &mid), !dependent);
        }
    }

    #[test]
    fn walls_are_dual_invariant(t in triple(0..=2, 1..=2, 1..=3, 1..=3, 3)) {
        let w = triples::sigma_window(&t).unwrap();
        let lo = &w.sigma_m - int(1);
        let hi = SigmaMax::Finite(&w.sigma_m + int(8));
        let sigmas = |t: &TripleData| {
            triples::enumerate_walls(t, &lo, &hi, false).unwrap().walls.into_iter().map(|w| w.sigma).collect::<Vec<_>>()
        };
        prop_assert_eq!(sigmas(&t), sigmas(&triples::dualize(&t)));
    }

    #[test]
    fn admissible_degrees_classify_consistently(h in (1..=2u32, 1..=2usize, 1..=2usize, 1..=2usize).prop_flat_map(|(g, s, p, q)| {
        let surface = MarkedSurface::with_points(g, s);
        bundles(surface.clone(), vec![p, q], vec![0, 0]).prop_map(move |b| (surface.clone(), b))
    })) {
        let (surface, b) = h;
        prop_assume!((b[0].weight_sum() + b[1].weight_sum()).is_integer());
        let (p, q) = (b[0].rank, b[1].rank);
        let Ok(count) = reps::component_count(p, q, &b[0].weights, &b[1].weights, &surface) else { return Ok(()) };
        let build = |a: i64| {
            let mut v = b[0].clone();
            let mut w = b[1].clone();
            v.degree = a;
            w.degree = count.total_degree - a;
            UpqHiggsData::new(surface.clone(), v, w).unwrap()
        };
        for &a in &count.admissible {
            let verdict = higgs::classify(&build(a)).unwrap().verdict;
            prop_assert!(matches!(verdict, Verdict::NonEmptyConnected | Verdict::BoundaryCase));
        }
        let lo = count.admissible.first().copied().unwrap_or(0) - 1;
        let hi = count.admissible.last().copied().unwrap_or(0) + 1;
        for a in [lo, hi] {
            if !count.admissible.contains(&a) {
                if let Ok(c) = higgs::classify(&build(a)) {
                    prop_assert_eq!(c.verdict, Verdict::Empty);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn orbifold_weights_scale_back(m in 2..12u32, g in 1..3u32, picks in proptest::collection::btree_set(0..12u32, 1..4)) {
        let l: Vec<u32> = picks.into_iter().filter(|&x| x < m).collect();
        prop_assume!(!l.is_empty());
        let surface = MarkedSurface::with_points(g, 1);
        let orders = [("x1".to_string(), m)].into_iter().collect();
        let exponents = [("V".to_string(), [("x1".to_string(), l.clone())].into_iter().collect())].into_iter().collect();
        let data = OrbifoldData::new(surface, orders, exponents).unwrap();
        let weights = reps::orbifold_to_weights(&data);
        let back: Vec<u32> = weights["V"]["x1"].as_slice().iter().map(|w| {
            let scaled = w * int(m as i64);
            assert!(scaled.is_integer());
            crate::rational::as_i64(&scaled).unwrap() as u32
        }).collect();
        prop_assert_eq!(back, l);
    }
}
