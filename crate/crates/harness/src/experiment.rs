//! The classification experiments: open-world evaluation with an injected
//! unknown class, leave-out robustness curves, repeated cross-validation,
//! and the accuracy correction that averages the two estimates.

use std::sync::Arc;

use gbpa_core::{classify_sample, CombinationRule, FocalSet, Frame, ModelTable, WorldMode};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::report::{CrossValidationReport, ExperimentReport, ReportRow, RobustnessReport};
use crate::rng::substream;
use crate::split::{split_leave_out, stratified_kfold, SplitPlan};

/// Open-world evaluation. The frame covers only `frame_labels`; the dataset's
/// other classes play the unknown class, their held-out samples are injected
/// into the test set, and a prediction for them is correct exactly when it is
/// the empty set. Known classes count correct only on the exact singleton.
///
/// Each repeat draws a fresh stratified leave-out split from a seed
/// substream; counts accumulate across repeats into one report.
pub fn run_open_world(
    ds: &Dataset,
    frame_labels: &[String],
    plan: &SplitPlan,
    rule: CombinationRule,
) -> Result<ExperimentReport> {
    let classes = ds.classes();
    for label in frame_labels {
        if !classes.contains(label) {
            return Err(Error::UnknownFrameLabel(label.clone()));
        }
    }
    if frame_labels.len() >= classes.len() {
        return Err(Error::FrameNotProperSubset);
    }
    let frame = Frame::new(frame_labels.iter().cloned(), WorldMode::Open)?;
    let mut counts = vec![(0usize, 0usize); classes.len()];

    for repeat in 0..plan.repeats {
        let split_plan = plan.with_seed(substream(plan.seed, &[repeat as u64]).next_u64());
        let split = split_leave_out(ds, &split_plan)?;
        let train_pairs: Vec<(&str, &[f64])> = split
            .train
            .iter()
            .map(|&i| &ds.rows[i])
            .filter(|row| frame_labels.contains(&row.label))
            .map(|row| (row.label.as_str(), row.values.as_slice()))
            .collect();
        let models = ModelTable::<f64>::fit(frame.clone(), ds.attributes.clone(), &train_pairs)?;

        for &i in &split.test {
            let row = &ds.rows[i];
            let decision = classify_sample(&models, &row.values, rule, WorldMode::Open)?;
            let ideal = match frame.singleton(&row.label) {
                Ok(singleton) => singleton,
                Err(_) => FocalSet::EMPTY,
            };
            let class = classes
                .iter()
                .position(|c| *c == row.label)
                .expect("known class");
            counts[class].0 += 1;
            if decision.predicted == ideal {
                counts[class].1 += 1;
            }
        }
    }

    let rows = classes
        .iter()
        .zip(&counts)
        .map(|(class, &(count, correct))| ReportRow {
            actual: class.clone(),
            ideal: if frame_labels.contains(class) {
                class.clone()
            } else {
                "∅".to_string()
            },
            count,
            correct,
        })
        .collect();
    Ok(ExperimentReport {
        frame: frame_labels.to_vec(),
        rows,
    })
}

/// Classification accuracy over repeated leave-out splits at each training
/// fraction, with all dataset classes in the frame. The default published
/// setting is the closed world with Dempster's rule.
pub fn run_robustness(
    ds: &Dataset,
    fractions: &[f64],
    repeats: usize,
    seed: u64,
    rule: CombinationRule,
    world: WorldMode,
) -> Result<RobustnessReport> {
    if fractions.is_empty() || repeats == 0 {
        return Err(Error::BadPlan(
            "need at least one fraction and one repeat".into(),
        ));
    }
    let classes = ds.classes();
    let frame = Frame::new(classes, WorldMode::Open)?;
    let mut accuracies = Vec::with_capacity(fractions.len());
    for (fraction_index, &fraction) in fractions.iter().enumerate() {
        let mut runs = Vec::with_capacity(repeats);
        for repeat in 0..repeats {
            let run_seed = substream(seed, &[fraction_index as u64, repeat as u64]).next_u64();
            let plan = SplitPlan::leave_out(fraction, run_seed, 1)?;
            let split = split_leave_out(ds, &plan)?;
            let models = ModelTable::<f64>::fit(
                frame.clone(),
                ds.attributes.clone(),
                &ds.training_pairs(&split.train),
            )?;
            runs.push(accuracy_on(ds, &split.test, &models, &frame, rule, world)?);
        }
        accuracies.push(runs);
    }
    Ok(RobustnessReport {
        fractions: fractions.to_vec(),
        accuracies,
    })
}

/// Repeated stratified k-fold cross-validation in the closed world.
pub fn run_cross_validation(
    ds: &Dataset,
    k: usize,
    repeats: usize,
    seed: u64,
    rule: CombinationRule,
) -> Result<CrossValidationReport> {
    if repeats == 0 {
        return Err(Error::BadPlan("repeats must be at least 1".into()));
    }
    let frame = Frame::new(ds.classes(), WorldMode::Open)?;
    let mut fold_accuracies = Vec::with_capacity(repeats);
    for repeat in 0..repeats {
        let run_seed = substream(seed, &[repeat as u64]).next_u64();
        let plan = SplitPlan::stratified_kfold(k, run_seed, 1)?;
        let mut per_fold = Vec::with_capacity(k);
        for split in stratified_kfold(ds, &plan)? {
            let models = ModelTable::<f64>::fit(
                frame.clone(),
                ds.attributes.clone(),
                &ds.training_pairs(&split.train),
            )?;
            per_fold.push(accuracy_on(
                ds,
                &split.test,
                &models,
                &frame,
                rule,
                WorldMode::Closed,
            )?);
        }
        fold_accuracies.push(per_fold);
    }
    Ok(CrossValidationReport { k, fold_accuracies })
}

/// The corrected estimate is the arithmetic mean of the leave-out and
/// cross-validation accuracies. Both must be fractions in [0, 1].
pub fn corrected_accuracy(leave_out: f64, cross_validation: f64) -> Result<f64> {
    for value in [leave_out, cross_validation] {
        if !(0.0..=1.0).contains(&value) || value.is_nan() {
            return Err(Error::AccuracyOutOfRange(value));
        }
    }
    Ok((leave_out + cross_validation) / 2.0)
}

/// Fraction of test rows whose prediction is exactly the singleton of the
/// actual class.
fn accuracy_on(
    ds: &Dataset,
    test: &[usize],
    models: &ModelTable<f64>,
    frame: &Arc<Frame>,
    rule: CombinationRule,
    world: WorldMode,
) -> Result<f64> {
    let mut correct = 0usize;
    for &i in test {
        let row = &ds.rows[i];
        let decision = classify_sample(models, &row.values, rule, world)?;
        if decision.predicted == frame.singleton(&row.label)? {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.len() as f64)
}
