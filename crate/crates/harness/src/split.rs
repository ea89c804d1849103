//! Stratified split engines: randomized leave-out and k-fold.
//!
//! Both group rows by class, shuffle each group with the seeded generator,
//! and carve the groups up; so class proportions survive the split and the
//! same (plan, seed) always produces the same partition.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplitKind {
    /// Per class, `⌊train_fraction · class_size⌋` rows train, the rest test.
    LeaveOut { train_fraction: f64 },
    /// Class rows are dealt round-robin into k near-even folds.
    StratifiedKFold { k: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitPlan {
    pub kind: SplitKind,
    pub seed: u64,
    pub repeats: usize,
}

impl SplitPlan {
    pub fn leave_out(train_fraction: f64, seed: u64, repeats: usize) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::BadPlan(format!(
                "train fraction {train_fraction} not in (0, 1)"
            )));
        }
        if repeats == 0 {
            return Err(Error::BadPlan("repeats must be at least 1".into()));
        }
        Ok(SplitPlan {
            kind: SplitKind::LeaveOut { train_fraction },
            seed,
            repeats,
        })
    }

    pub fn stratified_kfold(k: usize, seed: u64, repeats: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadPlan(format!("k = {k} must be at least 2")));
        }
        if repeats == 0 {
            return Err(Error::BadPlan("repeats must be at least 1".into()));
        }
        Ok(SplitPlan {
            kind: SplitKind::StratifiedKFold { k },
            seed,
            repeats,
        })
    }

    pub fn with_seed(&self, seed: u64) -> SplitPlan {
        SplitPlan { seed, ..*self }
    }
}

/// Row indices of one train/test partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Row indices grouped by class, classes in first-appearance order, each
/// group shuffled by the plan's seed.
fn shuffled_class_groups(ds: &Dataset, seed: u64) -> Vec<(String, Vec<usize>)> {
    let mut rng = SplitMix64::new(seed);
    let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
    for (i, row) in ds.rows.iter().enumerate() {
        match groups.iter_mut().find(|(label, _)| *label == row.label) {
            Some((_, indices)) => indices.push(i),
            None => groups.push((row.label.clone(), vec![i])),
        }
    }
    for (_, indices) in &mut groups {
        rng.shuffle(indices);
    }
    groups
}

/// One stratified random train/test split at the plan's training fraction.
pub fn split_leave_out(ds: &Dataset, plan: &SplitPlan) -> Result<Split> {
    let SplitKind::LeaveOut { train_fraction } = plan.kind else {
        return Err(Error::BadPlan("plan is not a leave-out plan".into()));
    };
    let mut split = Split {
        train: Vec::new(),
        test: Vec::new(),
    };
    for (label, indices) in shuffled_class_groups(ds, plan.seed) {
        let take = (train_fraction * indices.len() as f64).floor() as usize;
        if take == 0 {
            return Err(Error::EmptySplit {
                class: label,
                side: "train",
            });
        }
        if take == indices.len() {
            return Err(Error::EmptySplit {
                class: label,
                side: "test",
            });
        }
        split.train.extend_from_slice(&indices[..take]);
        split.test.extend_from_slice(&indices[take..]);
    }
    Ok(split)
}

/// k mutually exclusive folds covering the dataset, class proportions within
/// one row of exact stratification. Fold i is the test side of entry i.
pub fn stratified_kfold(ds: &Dataset, plan: &SplitPlan) -> Result<Vec<Split>> {
    let SplitKind::StratifiedKFold { k } = plan.kind else {
        return Err(Error::BadPlan("plan is not a k-fold plan".into()));
    };
    let groups = shuffled_class_groups(ds, plan.seed);
    for (label, indices) in &groups {
        if k > indices.len() {
            return Err(Error::KTooLarge {
                k,
                class: label.clone(),
                size: indices.len(),
            });
        }
    }
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (_, indices) in &groups {
        for (position, &row) in indices.iter().enumerate() {
            folds[position % k].push(row);
        }
    }
    Ok((0..k)
        .map(|i| Split {
            train: folds
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .flat_map(|(_, fold)| fold.iter().copied())
                .collect(),
            test: folds[i].clone(),
        })
        .collect())
}
