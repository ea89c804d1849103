//! Triangular fuzzy class models fitted from training data.
//!
//! One triangular fuzzy number per (class, attribute) pair, built from the
//! minimum, mean and maximum of the class's training values. Membership is
//! piecewise linear between those anchors and floored at 0.01 inside the
//! support, so a value sitting exactly on a boundary still counts as a weak
//! intersection instead of none at all.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::scalar::Real;

/// Minimum membership inside the support, see module docs.
fn membership_floor<T: Real>() -> T {
    T::of(0.01)
}

/// A `(lower, mode, upper)` triangle; `lower ≤ mode ≤ upper` always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularFuzzyNumber<T> {
    lower: T,
    mode: T,
    upper: T,
}

impl<T: Real> TriangularFuzzyNumber<T> {
    pub fn new(lower: T, mode: T, upper: T) -> Result<Self> {
        if !(lower.is_finite() && mode.is_finite() && upper.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        if lower > mode || mode > upper {
            return Err(Error::BadDocument(format!(
                "triangle ({lower}, {mode}, {upper}) is not ordered"
            )));
        }
        Ok(TriangularFuzzyNumber { lower, mode, upper })
    }

    /// Fits `(min, mean, max)` of the samples.
    pub fn fit(samples: &[T]) -> Result<Self> {
        let (first, rest) = samples.split_first().ok_or(Error::EmptySamples)?;
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        let mut min = *first;
        let mut max = *first;
        let mut sum = *first;
        for &v in rest {
            min = min.min(v);
            max = max.max(v);
            sum = sum + v;
        }
        let mean = sum / T::of(samples.len() as f64);
        // Guard against the mean drifting outside [min, max] by rounding.
        Self::new(min, mean.max(min).min(max), max)
    }

    pub fn lower(&self) -> T {
        self.lower
    }

    pub fn mode(&self) -> T {
        self.mode
    }

    pub fn upper(&self) -> T {
        self.upper
    }

    /// Floored membership degree of `x`.
    ///
    /// Zero outside `[lower, upper]`; inside, the rising/falling linear form
    /// clamped below by 0.01. A degenerate edge (`lower == mode` or
    /// `mode == upper`) evaluates to 1 at the shared abscissa.
    pub fn membership(&self, x: T) -> T {
        if x < self.lower || x > self.upper {
            return T::zero();
        }
        let raw = if x == self.mode {
            T::one()
        } else if x < self.mode {
            (x - self.lower) / (self.mode - self.lower)
        } else {
            (self.upper - x) / (self.upper - self.mode)
        };
        raw.max(membership_floor())
    }
}

/// The fitted triangles for every (class, attribute) pair, complete by
/// construction. The frame's label order and the attribute order fix the
/// meaning of every index used elsewhere in the pipeline.
#[derive(Debug, Clone)]
pub struct ModelTable<T> {
    frame: Arc<Frame>,
    attributes: Vec<String>,
    /// `cells[class_index][attribute_index]`
    cells: Vec<Vec<TriangularFuzzyNumber<T>>>,
}

impl<T: Real> ModelTable<T> {
    /// Fits one triangle per (class, attribute) cell from labeled rows.
    ///
    /// Every frame label needs at least one row and every row must carry one
    /// value per attribute. Rows with labels outside the frame are rejected;
    /// callers doing open-world training filter the unknown classes first.
    pub fn fit<S, V>(frame: Arc<Frame>, attributes: Vec<String>, rows: &[(S, V)]) -> Result<Self>
    where
        S: AsRef<str>,
        V: AsRef<[T]>,
    {
        let n_attrs = attributes.len();
        if n_attrs == 0 {
            return Err(Error::EmptySamples);
        }
        let mut per_class: Vec<Vec<Vec<T>>> = vec![vec![Vec::new(); n_attrs]; frame.len()];
        for (label, values) in rows {
            let class = frame
                .label_index(label.as_ref())
                .ok_or_else(|| Error::UnknownLabel(label.as_ref().to_string()))?;
            let values = values.as_ref();
            if values.len() != n_attrs {
                return Err(Error::ArityMismatch {
                    expected: n_attrs,
                    got: values.len(),
                });
            }
            for (attr, &v) in values.iter().enumerate() {
                per_class[class][attr].push(v);
            }
        }
        let mut cells = Vec::with_capacity(frame.len());
        for (class, columns) in per_class.into_iter().enumerate() {
            if columns[0].is_empty() {
                return Err(Error::MissingClassSamples(frame.labels()[class].clone()));
            }
            let row = columns
                .into_iter()
                .map(|samples| TriangularFuzzyNumber::fit(&samples))
                .collect::<Result<Vec<_>>>()?;
            cells.push(row);
        }
        Ok(ModelTable {
            frame,
            attributes,
            cells,
        })
    }

    pub fn from_cells(
        frame: Arc<Frame>,
        attributes: Vec<String>,
        cells: Vec<Vec<TriangularFuzzyNumber<T>>>,
    ) -> Result<Self> {
        if cells.len() != frame.len() || cells.iter().any(|row| row.len() != attributes.len()) {
            return Err(Error::BadDocument(
                "model cells do not cover the class × attribute cross product".into(),
            ));
        }
        Ok(ModelTable {
            frame,
            attributes,
            cells,
        })
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn cell(&self, class_index: usize, attribute_index: usize) -> &TriangularFuzzyNumber<T> {
        &self.cells[class_index][attribute_index]
    }

    /// Triangles of one attribute across all classes, in frame label order.
    pub fn column(
        &self,
        attribute_index: usize,
    ) -> impl Iterator<Item = &TriangularFuzzyNumber<T>> {
        self.cells.iter().map(move |row| &row[attribute_index])
    }

    /// CSV with one row per class and one `(lower,mode,upper)` cell per
    /// attribute. Cells contain commas, so they are quoted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class");
        for attr in &self.attributes {
            out.push(',');
            out.push_str(attr);
        }
        out.push('\n');
        for (class, row) in self.cells.iter().enumerate() {
            out.push_str(&self.frame.labels()[class]);
            for tfn in row {
                out.push_str(&format!(
                    ",\"({},{},{})\"",
                    tfn.lower.to_f64().unwrap_or(f64::NAN),
                    tfn.mode.to_f64().unwrap_or(f64::NAN),
                    tfn.upper.to_f64().unwrap_or(f64::NAN)
                ));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_document(&self) -> ModelDocument {
        let mut cells = BTreeMap::new();
        for (class, row) in self.cells.iter().enumerate() {
            let mut per_attr = BTreeMap::new();
            for (attr, tfn) in row.iter().enumerate() {
                per_attr.insert(
                    self.attributes[attr].clone(),
                    [
                        tfn.lower.to_f64().unwrap_or(f64::NAN),
                        tfn.mode.to_f64().unwrap_or(f64::NAN),
                        tfn.upper.to_f64().unwrap_or(f64::NAN),
                    ],
                );
            }
            cells.insert(self.frame.labels()[class].clone(), per_attr);
        }
        ModelDocument {
            classes: self.frame.labels().to_vec(),
            attributes: self.attributes.clone(),
            cells,
        }
    }

    pub fn from_document(doc: &ModelDocument) -> Result<Self> {
        use crate::frame::WorldMode;
        // GBPA generation is inherently open-world; the closed-world story
        // converts the generated masses afterwards.
        let frame = Frame::new(doc.classes.iter().cloned(), WorldMode::Open)?;
        let mut cells = Vec::with_capacity(doc.classes.len());
        for class in &doc.classes {
            let per_attr = doc
                .cells
                .get(class)
                .ok_or_else(|| Error::BadDocument(format!("missing class {class:?}")))?;
            let mut row = Vec::with_capacity(doc.attributes.len());
            for attr in &doc.attributes {
                let [lower, mode, upper] = per_attr.get(attr).ok_or_else(|| {
                    Error::BadDocument(format!("missing cell ({class:?}, {attr:?})"))
                })?;
                row.push(TriangularFuzzyNumber::new(
                    T::of(*lower),
                    T::of(*mode),
                    T::of(*upper),
                )?);
            }
            cells.push(row);
        }
        Self::from_cells(frame, doc.attributes.clone(), cells)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let doc: ModelDocument =
            serde_json::from_str(json).map_err(|e| Error::BadDocument(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// Serialized model table: class and attribute orders plus a
/// `class → attribute → [lower, mode, upper]` map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelDocument {
    pub classes: Vec<String>,
    pub attributes: Vec<String>,
    pub cells: BTreeMap<String, BTreeMap<String, [f64; 3]>>,
}
