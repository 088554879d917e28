//! Parabolic U(p,q)-Higgs data `V + W` and the invariants that decide
//! whether its moduli space is nonempty.

use num_traits::{One, Signed, Zero};

use crate::bundle::{check_disjoint, MarkedSurface, ParabolicBundle};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::triples::{self, dualize, sigma_window, SigmaWindow, TripleData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpqHiggsData {
    pub surface: MarkedSurface,
    pub v: ParabolicBundle,
    pub w: ParabolicBundle,
}

impl UpqHiggsData {
    pub fn new(surface: MarkedSurface, v: ParabolicBundle, w: ParabolicBundle) -> Result<Self> {
        v.validate(&surface)?;
        w.validate(&surface)?;
        if v.rank == 0 || w.rank == 0 {
            return Err(Error::Invalid("both summands need positive rank".into()));
        }
        check_disjoint(&v, &w)?;
        Ok(UpqHiggsData { surface, v, w })
    }

    pub fn p(&self) -> usize {
        self.v.rank
    }

    pub fn q(&self) -> usize {
        self.w.rank
    }

    /// The same data with the roles of `V` and `W` exchanged.
    pub fn swapped(&self) -> Self {
        UpqHiggsData { surface: self.surface.clone(), v: self.w.clone(), w: self.v.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    NonEmptyConnected,
    Empty,
    BoundaryCase,
    Unsupported,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonEmptyConnected => "NonEmptyConnected",
            Verdict::Empty => "Empty",
            Verdict::BoundaryCase => "BoundaryCase",
            Verdict::Unsupported => "Unsupported",
        }
    }
}

/// `2pq/(p+q) (pmu(V) - pmu(W))`.
pub fn toledo(h: &UpqHiggsData) -> Rational {
    let (p, q) = (h.p() as i64, h.q() as i64);
    int(2 * p * q) / int(p + q) * (h.v.pmu() - h.w.pmu())
}

/// `min(p, q) (2g - 2 + s)`.
pub fn tau_max(h: &UpqHiggsData) -> Rational {
    int(h.p().min(h.q()) as i64 * (h.surface.canonical_degree() + h.surface.s() as i64))
}

/// Which summand became the target bundle of the triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Negative Toledo invariant: `V -> W` side, `E1` built from `V`.
    FromV,
    /// Positive Toledo invariant: `E1` built from `W`.
    FromW,
    /// Zero Toledo invariant, laid out as in the positive case.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedTriple {
    pub triple: TripleData,
    pub orientation: Orientation,
}

/// The triple whose `sigma = 2g - 2` moduli space holds the minima.
pub fn minima_to_triple(h: &UpqHiggsData) -> TranslatedTriple {
    let tau = toledo(h);
    let k = h.surface.canonical_degree();
    let (target, source, orientation) = if tau.is_negative() {
        (&h.v, &h.w, Orientation::FromV)
    } else if tau.is_zero() {
        (&h.w, &h.v, Orientation::Degenerate)
    } else {
        (&h.w, &h.v, Orientation::FromW)
    };
    let mut e1 = target.clone();
    e1.degree += target.rank as i64 * k;
    TranslatedTriple {
        triple: TripleData { surface: h.surface.clone(), e1, e2: source.clone() },
        orientation,
    }
}

/// The translated triple, dualized if needed so that `r1 >= r2`.
pub fn oriented_triple(h: &UpqHiggsData) -> TripleData {
    let t = minima_to_triple(h).triple;
    if t.r1() < t.r2() {
        dualize(&t)
    } else {
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub tau_max: Rational,
    /// Absent when `p = q`.
    pub epsilon: Option<Rational>,
    /// Shortcut evaluation of the same correction, for comparison.
    pub epsilon_recipe: Option<Rational>,
    pub tau_l: Rational,
}

/// `tau_M`, the correction `epsilon` of the oriented triple, and
/// `tau_L = tau_M - |p - q| / (p + q) epsilon`.
pub fn bounds(h: &UpqHiggsData) -> Bounds {
    let tau_max = tau_max(h);
    if h.p() == h.q() {
        return Bounds { tau_l: tau_max.clone(), tau_max, epsilon: None, epsilon_recipe: None };
    }
    let t = oriented_triple(h);
    let eps = triples::epsilon(&t).expect("oriented triple has r1 > r2");
    let recipe = triples::epsilon_recipe(&t).expect("oriented triple has r1 > r2");
    let (p, q) = (h.p() as i64, h.q() as i64);
    let tau_l = &tau_max - int((p - q).abs()) / int(p + q) * &eps;
    Bounds { tau_max, epsilon: Some(eps), epsilon_recipe: Some(recipe), tau_l }
}

/// Dimension of the moduli space: `1 + (g-1) n^2 + (s/2)(n^2 - n)`, `n = p + q`.
pub fn moduli_dimension(h: &UpqHiggsData) -> Rational {
    gl_dimension(h.p() + h.q(), h.surface.genus(), h.surface.s()) / int(2)
}

/// Dimension of the parabolic `GL(n)`-Higgs moduli space, twice the above.
pub fn gl_dimension(n: usize, genus: u32, s: usize) -> Rational {
    let n = n as i64;
    let half = Rational::one() + int((genus as i64 - 1) * n * n) + int(s as i64) * int(n * n - n) / int(2);
    half * int(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub tau: Rational,
    pub bounds: Bounds,
    pub translated: TranslatedTriple,
    pub window: SigmaWindow,
    /// Whether `2g - 2` lies in the closed sigma window of the translated triple.
    pub in_window: bool,
}

/// Decide emptiness and connectedness of the moduli space.
///
/// Genus zero or no marked points give [`Verdict::Unsupported`]. Weights
/// for which `2g - 2` is a wall of the translated triple are rejected.
pub fn classify(h: &UpqHiggsData) -> Result<Classification> {
    let tau = toledo(h);
    let bounds = bounds(h);
    let translated = minima_to_triple(h);
    let window = sigma_window(&translated.triple)?;
    let k = int(h.surface.canonical_degree());
    let in_window = window.contains(&k);
    let verdict = if h.surface.genus() == 0 || h.surface.s() == 0 {
        Verdict::Unsupported
    } else {
        if !triples::is_generic_at(&translated.triple, &k) {
            return Err(Error::NonGenericWeights);
        }
        let size = tau.abs();
        match size.cmp(&bounds.tau_l) {
            core::cmp::Ordering::Less => Verdict::NonEmptyConnected,
            core::cmp::Ordering::Equal => Verdict::BoundaryCase,
            core::cmp::Ordering::Greater => Verdict::Empty,
        }
    };
    Ok(Classification { verdict, tau, bounds, translated, window, in_window })
}
