//! Generalized Dempster-Shafer evidence theory for open-world classification.
//!
//! The crate models frames of discernment with bitmask focal sets, mass
//! functions that may put mass on the empty set, triangular fuzzy class
//! models fitted from training data, the nested-band GBPA generator that
//! turns attribute readings into evidence, and three combination rules
//! (Dempster, GCR, mGCR) with a max-mass decision step on top.
//!
//! All numerics are generic over the scalar type via [`Real`]; the
//! `*32`/`*64` aliases below pin `f32` and `f64`.

pub mod classify;
pub mod combine;
pub mod error;
pub mod frame;
pub mod fuzzy;
pub mod generate;
pub mod mass;
pub mod scalar;

#[cfg(test)]
pub(crate) mod testdata;

pub use classify::{classify_sample, decide, Decision, DecisionDocument};
pub use combine::{
    combine_all, dempster_combine, gcr_combine, mgcr_combine, negate_bayesian, permutation_spread,
    CombinationRule, ConflictReport,
};
pub use error::{Error, MassViolation, Result};
pub use frame::{FocalSet, Frame, WorldMode, MAX_LABELS};
pub use fuzzy::{ModelDocument, ModelTable, TriangularFuzzyNumber};
pub use generate::{generate_gbpa, generate_gbpa_at, to_closed_world, OrdinateStack};
pub use mass::{MassDocument, MassFunction};
pub use scalar::Real;

pub type MassFunction32 = MassFunction<f32>;
pub type MassFunction64 = MassFunction<f64>;
pub type TriangularFuzzyNumber32 = TriangularFuzzyNumber<f32>;
pub type TriangularFuzzyNumber64 = TriangularFuzzyNumber<f64>;
pub type ModelTable32 = ModelTable<f32>;
pub type ModelTable64 = ModelTable<f64>;
pub type Decision32 = Decision<f32>;
pub type Decision64 = Decision<f64>;
