//! Degrees and Euler characteristics of parabolic hom bundles and of the
//! deformation complexes of pairs of triples.

use num_traits::One;

use crate::bundle::{twist_integral, HomConstraint, MarkedSurface, ParabolicBundle};
use crate::error::{Error, Result};
use crate::flagalg::dim_parhom_point;
use crate::rational::{self, Rational};
use crate::triples::TripleData;

/// Rank, degree and parabolic degree of a hom bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleInvariants {
    pub rank: usize,
    pub degree: i64,
    pub pdeg: Rational,
}

fn on_surface(bundle: &ParabolicBundle, surface: &MarkedSurface) -> Result<()> {
    if bundle.weights.len() != surface.s() || !surface.points().iter().all(|p| bundle.weights.contains_key(p)) {
        return Err(Error::SurfaceMismatch);
    }
    Ok(())
}

/// Invariants of `PH(source, target)` or `SPH(source, target)`.
pub fn parhom_bundle(
    source: &ParabolicBundle,
    target: &ParabolicBundle,
    surface: &MarkedSurface,
    c: HomConstraint,
) -> Result<BundleInvariants> {
    on_surface(source, surface)?;
    on_surface(target, surface)?;
    let (rs, rt) = (source.rank as i64, target.rank as i64);
    let mut degree = rs * target.degree - rt * source.degree;
    for point in surface.points() {
        let dim = dim_parhom_point(source.weights_at(point), target.weights_at(point), c) as i64;
        degree += dim - rs * rt;
    }
    Ok(BundleInvariants {
        rank: source.rank * target.rank,
        degree,
        pdeg: rational::int(rs) * target.pdeg() - rational::int(rt) * source.pdeg(),
    })
}

/// Riemann-Roch: `degree + rank (1 - g)`.
pub fn chi_bundle(inv: &BundleInvariants, genus: u32) -> Rational {
    rational::int(inv.degree + inv.rank as i64 * (1 - genus as i64))
}

/// `chi(PH(a1, b1)) + chi(PH(a2, b2)) - chi(SPH(a2, b1(D)))`.
pub fn chi_triple_pair(a: &TripleData, b: &TripleData) -> Result<Rational> {
    if a.surface != b.surface {
        return Err(Error::SurfaceMismatch);
    }
    let surface = &a.surface;
    let g = surface.genus();
    let ph1 = parhom_bundle(&a.e1, &b.e1, surface, HomConstraint::Parabolic)?;
    let ph2 = parhom_bundle(&a.e2, &b.e2, surface, HomConstraint::Parabolic)?;
    let twisted = twist_integral(&b.e1, surface, 1);
    let sph = parhom_bundle(&a.e2, &twisted, surface, HomConstraint::StronglyParabolic)?;
    Ok(chi_bundle(&ph1, g) + chi_bundle(&ph2, g) - chi_bundle(&sph, g))
}

/// Dimension of the moduli space of stable triples at `t`: `1 - chi(t, t)`.
pub fn triple_moduli_dimension(t: &TripleData) -> Rational {
    Rational::one() - chi_triple_pair(t, t).expect("a triple shares its own surface")
}

/// Lower bound on the codimension of flip loci: `-chi(sub, quot)`.
pub fn flip_codim_bound(sub: &TripleData, quot: &TripleData) -> Result<Rational> {
    chi_triple_pair(sub, quot).map(|c| -c)
}
