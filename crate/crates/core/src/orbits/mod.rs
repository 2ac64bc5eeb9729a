//! Root systems, Weyl groups, generic coadjoint orbits and their closed-form restriction formulas.

mod orbit;
mod roots;
mod typed;
mod weyl;

pub use orbit::{build_orbit_gkm, orbit_xi, CocanReport, Orbit, OrbitSpec};
pub use roots::{reflect, CartanType, RootSystem};
pub use typed::{
    classify_path, formula_ac, lift_path, FiberEngine, FiberPath, FiberResult, FiberTerm, LiftedPath,
    PairingReport, PathClassification, StdFiber, TrialityEngine, TypedCertificate, TypedEngine, TypedResult,
};
pub use weyl::{bruhat_le, reduced_words, simple_reflections, weyl_elements, weyl_length, SignedPerm};
