//! GBPA generation from one attribute reading, and the closed-world
//! degradation of open-world masses.
//!
//! A reading `x` intersects each class's triangle at some membership height.
//! Sorting the positive heights ascending as `w1 ≤ … ≤ wm` slices the unit
//! interval into nested bands: the band below `w1` is shared by every
//! intersected class, the band between `w(k-1)` and `wk` by the classes whose
//! membership reaches `wk`, and everything above `wm` belongs to no class at
//! all and goes to the empty set. Each band's width is the mass of its set.

use std::sync::Arc;

use crate::error::Result;
use crate::frame::{FocalSet, Frame, WorldMode};
use crate::fuzzy::ModelTable;
use crate::mass::MassFunction;
use crate::scalar::Real;

/// The positive memberships of one reading, ascending. Ties keep the frame's
/// label order, which makes the nested sets deterministic.
#[derive(Debug, Clone)]
pub struct OrdinateStack<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Real> OrdinateStack<T> {
    /// Collects and sorts the positive memberships of `x` against one
    /// attribute column of the model table.
    pub fn evaluate(models: &ModelTable<T>, attribute_index: usize, x: T) -> Self {
        let mut entries: Vec<(usize, T)> = models
            .column(attribute_index)
            .enumerate()
            .filter_map(|(class, tfn)| {
                let degree = tfn.membership(x);
                (degree > T::zero()).then_some((class, degree))
            })
            .collect();
        entries.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("memberships are finite"));
        OrdinateStack { entries }
    }

    /// `(class index, degree)` pairs, ascending by degree.
    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Turns one attribute reading into an open-world mass function.
///
/// The focal elements (other than ∅) form a nested chain: the largest set
/// collects every intersected class, each following set drops the classes
/// whose membership the band has passed. Zero-width bands (tied memberships)
/// contribute nothing. A reading outside every support yields `{∅: 1}`.
pub fn generate_gbpa<T: Real>(
    models: &ModelTable<T>,
    attribute: &str,
    x: T,
) -> Result<MassFunction<T>> {
    let attribute_index = models.attribute_index(attribute)?;
    Ok(generate_gbpa_at(models, attribute_index, x))
}

/// [`generate_gbpa`] by attribute index; the index is trusted to be valid.
pub fn generate_gbpa_at<T: Real>(
    models: &ModelTable<T>,
    attribute_index: usize,
    x: T,
) -> MassFunction<T> {
    let frame = open_frame(models);
    let stack = OrdinateStack::evaluate(models, attribute_index, x);
    let mut entries: Vec<(FocalSet, T)> = Vec::with_capacity(stack.entries().len() + 1);
    let mut previous = T::zero();
    for (k, &(_, degree)) in stack.entries().iter().enumerate() {
        let width = degree - previous;
        if width > T::zero() {
            // Classes whose membership reaches this band: the sorted suffix.
            let set = stack.entries()[k..]
                .iter()
                .fold(FocalSet::EMPTY, |acc, &(class, _)| {
                    acc.union(FocalSet::from_bits(1 << class))
                });
            entries.push((set, width));
        }
        previous = degree;
    }
    let leftover = T::one() - previous;
    if leftover > T::zero() {
        entries.push((FocalSet::EMPTY, leftover));
    }
    MassFunction::new(frame, entries).expect("band widths are positive and sum to one")
}

fn open_frame<T: Real>(models: &ModelTable<T>) -> Arc<Frame> {
    let frame = models.frame();
    match frame.world() {
        WorldMode::Open => frame.clone(),
        WorldMode::Closed => frame.with_world(WorldMode::Open),
    }
}

/// Moves the empty-set mass into the frame: every one of the `2^N − 1`
/// non-empty subsets receives an equal share, previously zero-mass subsets
/// included. The result lives on the closed-world version of the frame.
pub fn to_closed_world<T: Real>(m: &MassFunction<T>) -> MassFunction<T> {
    let closed = m.frame().with_world(WorldMode::Closed);
    let empty_mass = m.empty_set_mass();
    if empty_mass == T::zero() {
        let entries: Vec<_> = m.iter().collect();
        return MassFunction::new(closed, entries).expect("validated input stays valid");
    }
    let subset_count = (1u64 << closed.len()) - 1;
    let share = empty_mass / T::of(subset_count as f64);
    let entries = closed
        .subsets()
        .filter(|s| !s.is_empty())
        .map(|s| (s, m.mass(s) + share));
    MassFunction::new(closed, entries).expect("redistribution preserves total mass")
}
