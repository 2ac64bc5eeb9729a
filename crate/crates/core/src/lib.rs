//! Restrictions of canonical classes to fixed points of GKM spaces.
//!
//! The crate works purely with moment-graph data: a [`GkmGraph`] with moment
//! images and edge weights, a generic vector `xi`, and the canonical graph
//! built from them. Restrictions `alpha_p(q)` are computed by several
//! independent engines (path-sum recursion, ordered/tower path filters,
//! closed formulas on classical flag manifolds, an interpolation solver and a
//! reduced-subword oracle) and compared exactly.

pub mod canonical;
pub mod error;
pub mod exactalg;
pub mod fibration;
pub mod gkm;
pub mod oracle;
pub mod orbits;

pub use error::{Error, Result};
pub use exactalg::{LinFrac, Poly, Rational, Weight, XiVector};
pub use canonical::RestrictionTable;
pub use gkm::{CanonicalGraph, GkmGraph, OrientedGraphData, Path};
pub use orbits::{CartanType, Orbit, OrbitSpec, SignedPerm};
