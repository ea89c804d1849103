//! Frames of discernment and bitmask-encoded focal sets.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on frame cardinality. Power-set enumeration (oracles,
/// closed-world redistribution) must stay tractable.
pub const MAX_LABELS: usize = 20;

/// Whether the frame is assumed exhaustive.
///
/// In an open world the set of hypotheses may be incomplete and the empty
/// set is allowed to carry mass; in a closed world it must not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WorldMode {
    Open,
    Closed,
}

/// An ordered set of distinct class labels. Bit `i` of any [`FocalSet`]
/// used with this frame refers to `labels()[i]` permanently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
    world: WorldMode,
}

impl Frame {
    /// Builds a frame with a fixed label order.
    ///
    /// Labels must be non-empty, unique, free of commas (they become
    /// comma-joined JSON keys) and at most [`MAX_LABELS`] many.
    pub fn new<I, S>(labels: I, world: WorldMode) -> Result<Arc<Frame>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_LABELS {
            return Err(Error::TooManyLabels(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains(',') {
                return Err(Error::BadLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Arc::new(Frame { labels, world }))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of labels, usually written N.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one label by construction
    }

    pub fn world(&self) -> WorldMode {
        self.world
    }

    /// Same labels, different world assumption.
    pub fn with_world(&self, world: WorldMode) -> Arc<Frame> {
        Arc::new(Frame {
            labels: self.labels.clone(),
            world,
        })
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The whole frame as a focal set (Θ).
    pub fn full_set(&self) -> FocalSet {
        FocalSet((1u32 << self.len()) - 1)
    }

    pub fn singleton(&self, label: &str) -> Result<FocalSet> {
        self.label_index(label)
            .map(|i| FocalSet(1 << i))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Focal set from any collection of labels.
    pub fn set_of<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<FocalSet> {
        let mut bits = 0u32;
        for label in labels {
            bits |= self.singleton(label)?.bits();
        }
        Ok(FocalSet(bits))
    }

    /// True when `set` only uses bits backed by this frame's labels.
    pub fn contains(&self, set: FocalSet) -> bool {
        set.bits() < (1u32 << self.len())
    }

    fn check(&self, set: FocalSet) -> Result<FocalSet> {
        if self.contains(set) {
            Ok(set)
        } else {
            Err(Error::ForeignFocalSet {
                bits: set.bits(),
                frame_size: self.len(),
            })
        }
    }

    /// All `2^N` subsets of the frame, ∅ first, Θ last.
    pub fn subsets(&self) -> impl Iterator<Item = FocalSet> {
        (0..=self.full_set().bits()).map(FocalSet)
    }

    /// Parse the comma-joined key format; the empty string denotes ∅.
    pub fn parse_set(&self, key: &str) -> Result<FocalSet> {
        if key.is_empty() {
            return Ok(FocalSet::EMPTY);
        }
        self.set_of(key.split(','))
            .map_err(|_| Error::BadSetKey(key.to_string()))
    }

    /// Comma-joined labels in frame order; ∅ is the empty string.
    pub fn set_key(&self, set: FocalSet) -> String {
        let set = self.check(set).expect("focal set belongs to frame");
        let mut parts = Vec::with_capacity(set.cardinality());
        for (i, label) in self.labels.iter().enumerate() {
            if set.contains_index(i) {
                parts.push(label.as_str());
            }
        }
        parts.join(",")
    }

    /// Human-readable form: `{a,b}`, or `∅`.
    pub fn display_set(&self, set: FocalSet) -> String {
        if set.is_empty() {
            "∅".to_string()
        } else {
            format!("{{{}}}", self.set_key(set))
        }
    }

    /// Indices of the labels in `set`, ascending.
    pub fn check_member(&self, set: FocalSet) -> Result<FocalSet> {
        self.check(set)
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

/// A subset of a frame, encoded as a bitmask. `bits == 0` is the empty set,
/// which is a legal value throughout (open-world evidence lives on it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FocalSet(u32);

impl FocalSet {
    pub const EMPTY: FocalSet = FocalSet(0);

    pub fn from_bits(bits: u32) -> FocalSet {
        FocalSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains_index(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn intersection(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 & other.0)
    }

    pub fn union(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: FocalSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: FocalSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Label indices present in the set, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..u32::BITS as usize).filter(move |i| bits & (1 << i) != 0)
    }
}
