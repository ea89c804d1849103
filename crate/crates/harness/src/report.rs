//! Experiment result containers and their CSV/JSON/table emitters.

use serde::{Deserialize, Serialize};

/// One per-class line of a classification report. `ideal` is what a perfect
/// classifier should output for this class: the class itself when it is in
/// the frame, "∅" when it plays the unknown class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub actual: String,
    pub ideal: String,
    pub count: usize,
    pub correct: usize,
}

impl ReportRow {
    pub fn accuracy(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.correct as f64 / self.count as f64
        }
    }
}

/// Per-class classification outcome plus totals, the layout of the published
/// open-world result tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    /// The frame the classifier ran with.
    pub frame: Vec<String>,
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn total_count(&self) -> usize {
        self.rows.iter().map(|r| r.count).sum()
    }

    pub fn total_correct(&self) -> usize {
        self.rows.iter().map(|r| r.correct).sum()
    }

    pub fn total_accuracy(&self) -> f64 {
        let count = self.total_count();
        if count == 0 {
            0.0
        } else {
            self.total_correct() as f64 / count as f64
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("actual_class,ideal_class,sample_count,correct_count,accuracy\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{:.6}\n",
                row.actual,
                row.ideal,
                row.count,
                row.correct,
                row.accuracy()
            ));
        }
        out.push_str(&format!(
            "total,,{},{},{:.6}\n",
            self.total_count(),
            self.total_correct(),
            self.total_accuracy()
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("frame: {{{}}}\n", self.frame.join(","));
        out.push_str("actual  ideal  samples  correct  accuracy\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{:<7} {:<6} {:>7} {:>8} {:>8.2}%\n",
                row.actual,
                row.ideal,
                row.count,
                row.correct,
                row.accuracy() * 100.0
            ));
        }
        out.push_str(&format!(
            "{:<7} {:<6} {:>7} {:>8} {:>8.2}%\n",
            "total",
            "-",
            self.total_count(),
            self.total_correct(),
            self.total_accuracy() * 100.0
        ));
        out
    }
}

/// Leave-out accuracies per training fraction: `accuracies[i][r]` is repeat
/// `r` at `fractions[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub fractions: Vec<f64>,
    pub accuracies: Vec<Vec<f64>>,
}

impl RobustnessReport {
    pub fn mean_at(&self, index: usize) -> f64 {
        mean(&self.accuracies[index])
    }

    pub fn means(&self) -> Vec<f64> {
        self.accuracies.iter().map(|runs| mean(runs)).collect()
    }

    pub fn to_csv(&self) -> String {
        let repeats = self.accuracies.first().map_or(0, Vec::len);
        let mut out = String::from("train_fraction");
        for r in 0..repeats {
            out.push_str(&format!(",run_{}", r + 1));
        }
        out.push_str(",mean\n");
        for (fraction, runs) in self.fractions.iter().zip(&self.accuracies) {
            out.push_str(&format!("{fraction}"));
            for acc in runs {
                out.push_str(&format!(",{acc:.6}"));
            }
            out.push_str(&format!(",{:.6}\n", mean(runs)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::from("fraction  mean accuracy\n");
        for (fraction, runs) in self.fractions.iter().zip(&self.accuracies) {
            out.push_str(&format!(
                "{:>7.0}% {:>13.2}%\n",
                fraction * 100.0,
                mean(runs) * 100.0
            ));
        }
        out
    }
}

/// Fold accuracies of a repeated cross-validation:
/// `fold_accuracies[r][j]` is fold `j` of repeat `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub k: usize,
    pub fold_accuracies: Vec<Vec<f64>>,
}

impl CrossValidationReport {
    /// Mean over every fold of every repeat.
    pub fn mean(&self) -> f64 {
        let all: Vec<f64> = self.fold_accuracies.iter().flatten().copied().collect();
        mean(&all)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("repeat");
        for j in 0..self.k {
            out.push_str(&format!(",fold_{}", j + 1));
        }
        out.push_str(",mean\n");
        for (r, folds) in self.fold_accuracies.iter().enumerate() {
            out.push_str(&format!("{}", r + 1));
            for acc in folds {
                out.push_str(&format!(",{acc:.6}"));
            }
            out.push_str(&format!(",{:.6}\n", mean(folds)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        format!(
            "{}-fold cross-validation, {} repeats: mean accuracy {:.2}%\n",
            self.k,
            self.fold_accuracies.len(),
            self.mean() * 100.0
        )
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}
