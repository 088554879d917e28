//! Exact-arithmetic invariants of parabolic `U(p,q)`-Higgs bundles, parabolic
//! triples and the representation varieties they describe.
//!
//! Everything here is pure and allocation-only: no IO, no floating point.
//! Weights, slopes, stability parameters and Toledo invariants are all
//! [`Rational`] values, so genericity and wall membership are decided by exact
//! equality.
//!
//! Module map:
//!
//! * [`bundle`]: marked surfaces, weighted full flags, parabolic degree and the
//!   structural constructions (direct sum, dual, twists).
//! * [`flagalg`]: linear algebra of weighted flags at a single marked point
//!   (generic maps, `r_p`, destabilizing weight subsets).
//! * [`homcalc`]: Euler characteristics of hom bundles and of deformation
//!   complexes of triples.
//! * [`triples`]: sigma-stability of parabolic triples, windows and walls.
//! * [`higgs`]: Toledo invariant, Milnor–Wood type bounds and the
//!   connectedness verdict.
//! * [`reps`]: holonomy data, component counts and the orbifold layer.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bundle;
pub mod error;
pub mod flagalg;
pub mod higgs;
pub mod homcalc;
pub mod rational;
pub mod reps;
pub mod triples;

#[cfg(test)]
mod proptests;

pub use bundle::{HomConstraint, MarkedSurface, ParabolicBundle, WeightList};
pub use error::{Error, Result};
pub use rational::Rational;
