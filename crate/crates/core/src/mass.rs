//! Generalized mass functions (GBPAs): sparse maps from focal sets to mass.
//!
//! Unlike a classical basic probability assignment, a generalized one may put
//! mass on the empty set; that mass models evidence that the true class lies
//! outside the frame. A mass function on a closed-world frame must keep the
//! empty set at exactly zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, MassViolation, Result};
use crate::frame::{FocalSet, Frame, WorldMode};
use crate::scalar::Real;

/// A mass function over a frame. Stored sparsely: zero-mass sets are omitted,
/// iteration order is the bitmask order of the focal sets.
#[derive(Debug, Clone)]
pub struct MassFunction<T: Real> {
    frame: Arc<Frame>,
    masses: BTreeMap<FocalSet, T>,
}

impl<T: Real> MassFunction<T> {
    /// Builds and validates a mass function from `(focal set, mass)` pairs.
    ///
    /// Entries with zero mass are dropped; duplicated sets accumulate. The
    /// result must sum to one within `T::MASS_TOL` and respect the frame's
    /// world mode. Construction never renormalizes; use
    /// [`new_normalized`](Self::new_normalized) when that is wanted.
    pub fn new<I>(frame: Arc<Frame>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, T)>,
    {
        let m = Self::collect(frame, entries)?;
        m.validate()?;
        Ok(m)
    }

    /// Like [`new`](Self::new) but scales the masses to sum to one first.
    pub fn new_normalized<I>(frame: Arc<Frame>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, T)>,
    {
        let mut m = Self::collect(frame, entries)?;
        let total = m.total();
        if total <= T::zero() {
            return Err(Error::ZeroTotalMass);
        }
        for v in m.masses.values_mut() {
            *v = *v / total;
        }
        m.validate()?;
        Ok(m)
    }

    fn collect<I>(frame: Arc<Frame>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, T)>,
    {
        let mut masses = BTreeMap::new();
        for (set, mass) in entries {
            frame.check_member(set)?;
            if mass == T::zero() {
                continue;
            }
            let slot = masses.entry(set).or_insert_with(T::zero);
            *slot = *slot + mass;
        }
        Ok(MassFunction { frame, masses })
    }

    /// Total ignorance: all mass on Θ.
    pub fn vacuous(frame: Arc<Frame>) -> Self {
        let full = frame.full_set();
        let mut masses = BTreeMap::new();
        masses.insert(full, T::one());
        MassFunction { frame, masses }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn world(&self) -> WorldMode {
        self.frame.world()
    }

    /// Mass of a focal set; zero when the set is not stored.
    pub fn mass(&self, set: FocalSet) -> T {
        self.masses.get(&set).copied().unwrap_or_else(T::zero)
    }

    pub fn empty_set_mass(&self) -> T {
        self.mass(FocalSet::EMPTY)
    }

    /// Stored focal elements and masses, in bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = (FocalSet, T)> + '_ {
        self.masses.iter().map(|(&s, &m)| (s, m))
    }

    pub fn focal_count(&self) -> usize {
        self.masses.len()
    }

    pub fn total(&self) -> T {
        self.masses.values().fold(T::zero(), |acc, &m| acc + m)
    }

    /// Every focal element is a singleton (a classical probability).
    pub fn is_bayesian(&self) -> bool {
        self.masses.keys().all(|s| s.cardinality() == 1)
    }

    /// Checks every invariant for the frame's world mode and names the first
    /// violated one. Validation is the return value; it never panics.
    pub fn validate(&self) -> Result<(), MassViolation> {
        for (&set, &mass) in &self.masses {
            if !self.frame.contains(set) {
                return Err(MassViolation::ForeignFocalSet {
                    bits: set.bits(),
                    frame_size: self.frame.len(),
                });
            }
            if mass < T::zero() || mass > T::one() + T::MASS_TOL {
                return Err(MassViolation::OutOfRange {
                    value: mass.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let total = self.total();
        if (total - T::one()).abs() > T::MASS_TOL {
            return Err(MassViolation::SumNotOne {
                sum: total.to_f64().unwrap_or(f64::NAN),
            });
        }
        if self.frame.world() == WorldMode::Closed {
            let empty = self.empty_set_mass();
            if empty != T::zero() {
                return Err(MassViolation::EmptySetMassInClosedWorld {
                    value: empty.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }

    /// Generalized belief: total mass committed to non-empty subsets of `a`,
    /// or the empty-set mass itself when `a` is empty.
    pub fn gbel(&self, a: FocalSet) -> Result<T> {
        self.frame.check_member(a)?;
        if a.is_empty() {
            return Ok(self.empty_set_mass());
        }
        Ok(self
            .masses
            .iter()
            .filter(|(s, _)| !s.is_empty() && s.is_subset_of(a))
            .fold(T::zero(), |acc, (_, &m)| acc + m))
    }

    /// Generalized plausibility: total mass not contradicting `a`, or the
    /// empty-set mass when `a` is empty.
    pub fn gpl(&self, a: FocalSet) -> Result<T> {
        self.frame.check_member(a)?;
        if a.is_empty() {
            return Ok(self.empty_set_mass());
        }
        Ok(self
            .masses
            .iter()
            .filter(|(s, _)| s.intersects(a))
            .fold(T::zero(), |acc, (_, &m)| acc + m))
    }

    /// Entry-wise comparison after dropping entries below `T::ZERO_EPS`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        if self.frame.as_ref() != other.frame.as_ref() {
            return false;
        }
        let keys = self
            .masses
            .keys()
            .chain(other.masses.keys())
            .copied()
            .collect::<std::collections::BTreeSet<_>>();
        keys.into_iter().all(|set| {
            let a = self.mass(set);
            let b = other.mass(set);
            if a < T::ZERO_EPS && b < T::ZERO_EPS {
                true
            } else {
                (a - b).abs() <= tol
            }
        })
    }

    /// JSON-friendly form with string keys.
    pub fn to_document(&self) -> MassDocument {
        let masses = self
            .masses
            .iter()
            .map(|(&set, &mass)| (self.frame.set_key(set), mass.to_f64().unwrap_or(f64::NAN)))
            .collect();
        MassDocument {
            labels: self.frame.labels().to_vec(),
            world: self.frame.world(),
            masses,
        }
    }

    pub fn from_document(doc: &MassDocument) -> Result<Self> {
        let frame = Frame::new(doc.labels.iter().cloned(), doc.world)?;
        let entries = doc
            .masses
            .iter()
            .map(|(key, &mass)| Ok((frame.parse_set(key)?, T::of(mass))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(frame, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let doc: MassDocument =
            serde_json::from_str(json).map_err(|e| Error::BadDocument(e.to_string()))?;
        Self::from_document(&doc)
    }
}

impl<T: Real> PartialEq for MassFunction<T> {
    /// Sparse-map equality after dropping entries below `T::ZERO_EPS`.
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, T::ZERO_EPS)
    }
}

/// Serialized form of a mass function:
/// `{"labels": [...], "world": "open"|"closed", "masses": {"a,b": 0.5, "": 0.5}}`.
/// Keys are comma-joined labels; the empty string is the empty set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MassDocument {
    pub labels: Vec<String>,
    pub world: WorldMode,
    pub masses: BTreeMap<String, f64>,
}
