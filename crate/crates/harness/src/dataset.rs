//! Dataset ingestion for the UCI files and header-driven CSVs.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A labeled sample: one value per dataset attribute plus the class label.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub values: Vec<f64>,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub attributes: Vec<String>,
    pub rows: Vec<Row>,
}

impl Dataset {
    /// Distinct labels in order of first appearance.
    pub fn classes(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for row in &self.rows {
            if !seen.contains(&row.label) {
                seen.push(row.label.clone());
            }
        }
        seen
    }

    pub fn class_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for row in &self.rows {
            *counts.entry(row.label.clone()).or_insert(0) += 1;
        }
        counts
    }

    /// Rows as `(label, values)` pairs, the shape model fitting expects.
    pub fn training_pairs(&self, indices: &[usize]) -> Vec<(&str, &[f64])> {
        indices
            .iter()
            .map(|&i| {
                let row = &self.rows[i];
                (row.label.as_str(), row.values.as_slice())
            })
            .collect()
    }
}

/// Input format of [`load_dataset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    /// UCI `iris.data`: four floats and a class string per line, no header.
    /// Class names map to the short labels a (setosa), b (versicolor),
    /// c (virginica); attributes are SL, SW, PL, PW.
    Iris,
    /// UCI `haberman.data`: three integers and a class digit per line, no
    /// header. Class 1 (survived 5+ years) maps to a, class 2 to b;
    /// attributes are age, year, nodes.
    Haberman,
    /// Header-driven CSV: every column but the last is a numeric attribute
    /// named by the header, the last column is the class label.
    GenericCsv,
}

impl FromStr for Schema {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iris" => Ok(Schema::Iris),
            "haberman" => Ok(Schema::Haberman),
            "generic-csv" | "generic" | "csv" => Ok(Schema::GenericCsv),
            other => Err(Error::BadPlan(format!("unknown schema {other:?}"))),
        }
    }
}

pub fn load_dataset(path: &Path, schema: Schema) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    parse_dataset(&text, &name, schema)
}

pub fn parse_dataset(text: &str, name: &str, schema: Schema) -> Result<Dataset> {
    match schema {
        Schema::Iris => parse_fixed(
            text,
            "iris",
            &["SL", "SW", "PL", "PW"],
            &[
                ("Iris-setosa", "a"),
                ("Iris-versicolor", "b"),
                ("Iris-virginica", "c"),
            ],
        ),
        Schema::Haberman => parse_fixed(
            text,
            "haberman",
            &["age", "year", "nodes"],
            &[("1", "a"), ("2", "b")],
        ),
        Schema::GenericCsv => parse_generic(text, name),
    }
}

fn parse_fixed(
    text: &str,
    name: &str,
    attributes: &[&str],
    class_map: &[(&str, &str)],
) -> Result<Dataset> {
    let mut rows = Vec::new();
    for (line_no, line) in non_empty_lines(text) {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != attributes.len() + 1 {
            return Err(Error::RowArity {
                line: line_no,
                expected: attributes.len() + 1,
                got: fields.len(),
            });
        }
        let values = parse_values(&fields[..attributes.len()], line_no)?;
        let token = fields[attributes.len()];
        let label = class_map
            .iter()
            .find(|(from, _)| *from == token)
            .map(|(_, to)| to.to_string())
            .ok_or_else(|| Error::UnknownClassToken {
                line: line_no,
                token: token.to_string(),
            })?;
        rows.push(Row { values, label });
    }
    if rows.is_empty() {
        return Err(Error::Malformed {
            line: 0,
            reason: "no data rows".into(),
        });
    }
    Ok(Dataset {
        name: name.to_string(),
        attributes: attributes.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn parse_generic(text: &str, name: &str) -> Result<Dataset> {
    let mut lines = non_empty_lines(text);
    let (_, header) = lines.next().ok_or(Error::Malformed {
        line: 0,
        reason: "no data rows".into(),
    })?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    if columns.len() < 2 {
        return Err(Error::Malformed {
            line: 1,
            reason: "header needs at least one attribute and the class column".into(),
        });
    }
    let attributes: Vec<String> = columns[..columns.len() - 1]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut rows = Vec::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != columns.len() {
            return Err(Error::RowArity {
                line: line_no,
                expected: columns.len(),
                got: fields.len(),
            });
        }
        let values = parse_values(&fields[..attributes.len()], line_no)?;
        rows.push(Row {
            values,
            label: fields[attributes.len()].to_string(),
        });
    }
    if rows.is_empty() {
        return Err(Error::Malformed {
            line: 0,
            reason: "no data rows".into(),
        });
    }
    Ok(Dataset {
        name: name.to_string(),
        attributes,
        rows,
    })
}

fn non_empty_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_values(fields: &[&str], line_no: usize) -> Result<Vec<f64>> {
    fields
        .iter()
        .map(|field| {
            field
                .parse::<f64>()
                .map_err(|_| Error::Malformed {
                    line: line_no,
                    reason: format!("cannot parse number {field:?}"),
                })
                .and_then(|v| {
                    if v.is_finite() {
                        Ok(v)
                    } else {
                        Err(Error::Malformed {
                            line: line_no,
                            reason: format!("non-finite value {field:?}"),
                        })
                    }
                })
        })
        .collect()
}
