//! Per-sample classification: one GBPA per attribute, n-ary fusion, and the
//! max-mass decision. An open-world pipeline may predict the empty set,
//! meaning "unknown class".

use serde::{Deserialize, Serialize};

use crate::combine::{combine_all, CombinationRule};
use crate::error::{Error, Result};
use crate::frame::{FocalSet, WorldMode};
use crate::fuzzy::ModelTable;
use crate::generate::{generate_gbpa_at, to_closed_world};
use crate::mass::{MassDocument, MassFunction};
use crate::scalar::Real;

/// Outcome of classifying one sample.
#[derive(Debug, Clone)]
pub struct Decision<T: Real> {
    /// Argmax of the fused masses under the documented tie-break; the empty
    /// set means the sample looks like no known class.
    pub predicted: FocalSet,
    pub fused: MassFunction<T>,
    /// The per-attribute evidence that was folded, in model attribute order
    /// (already converted to closed world when the pipeline is closed).
    pub per_attribute: Vec<MassFunction<T>>,
}

impl<T: Real> Decision<T> {
    pub fn to_document(&self) -> DecisionDocument {
        DecisionDocument {
            predicted: self.fused.frame().set_key(self.predicted),
            fused: self.fused.to_document(),
            per_attribute: self.per_attribute.iter().map(|m| m.to_document()).collect(),
        }
    }
}

/// JSON form of a [`Decision`]; `predicted` uses the comma-joined key format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecisionDocument {
    pub predicted: String,
    pub fused: MassDocument,
    pub per_attribute: Vec<MassDocument>,
}

/// Runs the whole pipeline for one sample: per-attribute GBPA generation in
/// model order, optional closed-world conversion, a left fold with `rule`,
/// and the max-mass decision.
///
/// Dempster's rule cannot digest empty-set mass, so it demands the closed
/// world; GCR and mGCR run in either.
pub fn classify_sample<T: Real>(
    models: &ModelTable<T>,
    sample: &[T],
    rule: CombinationRule,
    world: WorldMode,
) -> Result<Decision<T>> {
    if sample.len() != models.attributes().len() {
        return Err(Error::ArityMismatch {
            expected: models.attributes().len(),
            got: sample.len(),
        });
    }
    if rule == CombinationRule::Dempster && world == WorldMode::Open {
        return Err(Error::IncompatibleRule { rule, world });
    }
    let per_attribute: Vec<MassFunction<T>> = sample
        .iter()
        .enumerate()
        .map(|(attr, &x)| {
            let gbpa = generate_gbpa_at(models, attr, x);
            match world {
                WorldMode::Open => gbpa,
                WorldMode::Closed => to_closed_world(&gbpa),
            }
        })
        .collect();
    let fused = combine_all(rule, &per_attribute)?;
    let predicted = decide(&fused);
    Ok(Decision {
        predicted,
        fused,
        per_attribute,
    })
}

/// The focal set with maximum mass. Ties break toward smaller cardinality,
/// then toward the set whose label indices come first; so the empty set wins
/// any tie it is part of, and `{a}` beats `{b}`. In a closed world the empty
/// set carries no mass and can never be returned.
pub fn decide<T: Real>(fused: &MassFunction<T>) -> FocalSet {
    let mut best: Option<(FocalSet, T)> = None;
    for (set, mass) in fused.iter() {
        let better = match best {
            None => true,
            Some((best_set, best_mass)) => {
                if mass != best_mass {
                    mass > best_mass
                } else if set.cardinality() != best_set.cardinality() {
                    set.cardinality() < best_set.cardinality()
                } else {
                    index_order(set, best_set) == std::cmp::Ordering::Less
                }
            }
        };
        if better {
            best = Some((set, mass));
        }
    }
    best.map(|(set, _)| set).unwrap_or(FocalSet::EMPTY)
}

/// Lexicographic order of the ascending label-index sequences.
fn index_order(a: FocalSet, b: FocalSet) -> std::cmp::Ordering {
    a.indices().cmp(b.indices())
}
