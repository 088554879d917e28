//! Problem-instance files.
//!
//! ```json
//! {
//!   "kind": "higgs",
//!   "surface": {"genus": 1, "points": ["x1"]},
//!   "bundles": {
//!     "V": {"rank": 1, "degree": 0, "weights": {"x1": ["3/10"]}},
//!     "W": {"rank": 1, "degree": -1, "weights": {"x1": ["7/10"]}}
//!   }
//! }
//! ```
//!
//! `higgs` instances name their bundles `V` and `W`, `triple` instances `E1`
//! and `E2`, `flags` instances `source` and `target`. An `orbifold` instance
//! replaces `bundles` by `orders` (point -> m) and `exponents`
//! (`V`/`W` -> point -> increasing integers below m).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use parhiggs_core::bundle::check_disjoint;
use parhiggs_core::higgs::UpqHiggsData;
use parhiggs_core::reps::OrbifoldData;
use parhiggs_core::triples::TripleData;
use parhiggs_core::{rational, MarkedSurface, ParabolicBundle, Rational};
use serde::Deserialize;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Higgs,
    Triple,
    Orbifold,
    Flags,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Higgs => "higgs",
            Kind::Triple => "triple",
            Kind::Orbifold => "orbifold",
            Kind::Flags => "flags",
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceInput {
    genus: u32,
    #[serde(default)]
    points: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleInput {
    rank: usize,
    degree: i64,
    #[serde(default)]
    weights: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    kind: Kind,
    surface: SurfaceInput,
    #[serde(default)]
    bundles: BTreeMap<String, BundleInput>,
    #[serde(default)]
    orders: BTreeMap<String, u32>,
    #[serde(default)]
    exponents: BTreeMap<String, BTreeMap<String, Vec<u32>>>,
}

pub struct Instance {
    pub kind: Kind,
    pub surface: MarkedSurface,
    bundles: BTreeMap<String, ParabolicBundle>,
    orders: BTreeMap<String, u32>,
    exponents: BTreeMap<String, BTreeMap<String, Vec<u32>>>,
}

impl Instance {
    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::validation("Io", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let raw: RawInstance =
            serde_json::from_str(text).map_err(|e| Failure::validation("Schema", e.to_string()))?;
        let surface = MarkedSurface::new(raw.surface.genus, raw.surface.points)?;
        let mut bundles = BTreeMap::new();
        for (name, input) in raw.bundles {
            let mut weights = Vec::new();
            for (point, list) in input.weights {
                let parsed = list.iter().map(|w| rational::parse(w)).collect::<Result<Vec<_>, _>>()?;
                weights.push((point, parsed));
            }
            let bundle = ParabolicBundle::new(input.rank, input.degree, weights);
            bundle.validate(&surface)?;
            bundles.insert(name, bundle);
        }
        Ok(Instance { kind: raw.kind, surface, bundles, orders: raw.orders, exponents: raw.exponents })
    }

    fn expect(&self, kinds: &[Kind]) -> Result<(), Failure> {
        if kinds.contains(&self.kind) {
            return Ok(());
        }
        let wanted: Vec<String> = kinds.iter().map(Kind::to_string).collect();
        Err(Failure::validation("WrongKind", format!("expected a {} instance, got {}", wanted.join(" or "), self.kind)))
    }

    fn pair(&self, first: &str, second: &str) -> Result<(ParabolicBundle, ParabolicBundle), Failure> {
        let get = |name: &str| {
            self.bundles
                .get(name)
                .cloned()
                .ok_or_else(|| Failure::validation("MissingBundle", format!("instance has no bundle {name:?}")))
        };
        Ok((get(first)?, get(second)?))
    }

    pub fn higgs(&self) -> Result<UpqHiggsData, Failure> {
        self.expect(&[Kind::Higgs])?;
        let (v, w) = self.pair("V", "W")?;
        Ok(UpqHiggsData::new(self.surface.clone(), v, w)?)
    }

    pub fn triple(&self) -> Result<TripleData, Failure> {
        self.expect(&[Kind::Triple])?;
        let (e1, e2) = self.pair("E1", "E2")?;
        Ok(TripleData::new(self.surface.clone(), e1, e2)?)
    }

    /// Weight systems of `V` and `W` with their ranks; degrees are ignored.
    pub fn weight_systems(&self) -> Result<(ParabolicBundle, ParabolicBundle), Failure> {
        self.expect(&[Kind::Higgs])?;
        let (v, w) = self.pair("V", "W")?;
        check_disjoint(&v, &w)?;
        Ok((v, w))
    }

    /// Source and target weights at `point`, or at the only point.
    pub fn flags(&self, point: Option<&str>) -> Result<(String, Vec<Rational>, Vec<Rational>), Failure> {
        self.expect(&[Kind::Flags])?;
        let (source, target) = self.pair("source", "target")?;
        check_disjoint(&source, &target)?;
        let label = match (point, self.surface.points()) {
            (Some(p), _) if self.surface.contains(p) => p.to_string(),
            (Some(p), _) => return Err(parhiggs_core::Error::UnknownPoint(p.to_string()).into()),
            (None, [only]) => only.clone(),
            (None, _) => {
                return Err(Failure::validation("AmbiguousPoint", "surface has several points; pass --point".into()))
            }
        };
        let s = source.weights_at(&label).to_vec();
        let t = target.weights_at(&label).to_vec();
        Ok((label, s, t))
    }

    pub fn orbifold(&self) -> Result<OrbifoldData, Failure> {
        self.expect(&[Kind::Orbifold])?;
        Ok(OrbifoldData::new(self.surface.clone(), self.orders.clone(), self.exponents.clone())?)
    }
}
