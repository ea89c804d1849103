//! Evidence combination: Dempster's rule, the generalized combination rule
//! (GCR), its modified form (mGCR), n-ary folding, and negation of Bayesian
//! mass functions.
//!
//! All three pairwise rules enumerate the products m1(B)·m2(C) over the
//! stored focal elements and differ only in how conflict is measured and how
//! the empty set is treated:
//!
//! * Dempster: inputs must carry no empty-set mass; conflict k is the total
//!   product mass on empty intersections and is renormalized away. Total
//!   conflict (k = 1) is an error, not a convention.
//! * GCR: the combined empty-set mass is m1(∅)·m2(∅); every empty-intersection
//!   pair (including pairs involving ∅) counts toward K; non-empty sets share
//!   the remaining 1 − m(∅).
//! * mGCR: like GCR but the (∅,∅) pair is excluded from K and the empty-set
//!   mass is renormalized by 1 − K like everything else, which keeps the
//!   output summing to one.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::MassFunction;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombinationRule {
    Dempster,
    Gcr,
    Mgcr,
}

impl CombinationRule {
    pub fn combine<T: Real>(
        self,
        m1: &MassFunction<T>,
        m2: &MassFunction<T>,
    ) -> Result<(MassFunction<T>, ConflictReport<T>)> {
        match self {
            CombinationRule::Dempster => dempster_combine(m1, m2),
            CombinationRule::Gcr => gcr_combine(m1, m2),
            CombinationRule::Mgcr => mgcr_combine(m1, m2),
        }
    }
}

impl fmt::Display for CombinationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CombinationRule::Dempster => "dempster",
            CombinationRule::Gcr => "gcr",
            CombinationRule::Mgcr => "mgcr",
        };
        f.write_str(name)
    }
}

impl FromStr for CombinationRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dempster" => Ok(CombinationRule::Dempster),
            "gcr" => Ok(CombinationRule::Gcr),
            "mgcr" => Ok(CombinationRule::Mgcr),
            other => Err(Error::BadDocument(format!("unknown rule {other:?}"))),
        }
    }
}

/// The conflict measured by a rule's own K formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConflictReport<T> {
    pub k: T,
    pub rule: CombinationRule,
}

/// Product table of two sparse mass functions, split by intersection kind.
struct PairTable<T: Real> {
    /// Σ m1(B)·m2(C) keyed by B∩C, for non-empty intersections.
    surviving: BTreeMap<FocalSet, T>,
    surviving_total: T,
    /// Σ m1(B)·m2(C) over all pairs with B∩C = ∅ (the (∅,∅) pair included).
    empty_intersection: T,
    /// m1(∅)·m2(∅).
    empty_pair: T,
    frame: Arc<Frame>,
}

fn pair_table<T: Real>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<PairTable<T>> {
    if m1.frame().as_ref() != m2.frame().as_ref() {
        return Err(Error::FrameMismatch);
    }
    let mut surviving = BTreeMap::new();
    let mut surviving_total = T::zero();
    let mut empty_intersection = T::zero();
    for (b, mb) in m1.iter() {
        for (c, mc) in m2.iter() {
            let product = mb * mc;
            let a = b.intersection(c);
            if a.is_empty() {
                empty_intersection = empty_intersection + product;
            } else {
                let slot = surviving.entry(a).or_insert_with(T::zero);
                *slot = *slot + product;
                surviving_total = surviving_total + product;
            }
        }
    }
    Ok(PairTable {
        surviving,
        surviving_total,
        empty_intersection,
        empty_pair: m1.empty_set_mass() * m2.empty_set_mass(),
        frame: m1.frame().clone(),
    })
}

/// Dempster's conjunctive rule. Inputs must carry zero empty-set mass; the
/// conflict k is reported alongside the fused mass. k = 1 is an error so the
/// caller can fall back to negation or abort.
pub fn dempster_combine<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
) -> Result<(MassFunction<T>, ConflictReport<T>)> {
    if m1.empty_set_mass() > T::zero() || m2.empty_set_mass() > T::zero() {
        return Err(Error::OpenWorldInput);
    }
    let table = pair_table(m1, m2)?;
    let report = ConflictReport {
        k: table.empty_intersection,
        rule: CombinationRule::Dempster,
    };
    if table.surviving_total == T::zero() {
        return Err(Error::TotalConflict {
            k: report.k.to_f64().unwrap_or(1.0),
        });
    }
    // Dividing by the surviving product mass (= 1 - k) keeps the output
    // summing to one at machine precision.
    let scale = table.surviving_total;
    let fused = MassFunction::new(
        table.frame,
        table.surviving.into_iter().map(|(a, p)| (a, p / scale)),
    )?;
    Ok((fused, report))
}

/// Generalized combination rule for open-world mass functions.
pub fn gcr_combine<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
) -> Result<(MassFunction<T>, ConflictReport<T>)> {
    let table = pair_table(m1, m2)?;
    let report = ConflictReport {
        k: table.empty_intersection,
        rule: CombinationRule::Gcr,
    };
    if table.surviving_total == T::zero() {
        // K = 1: everything conflicts, the combined evidence is all ∅. Only
        // an open-world frame can express that, whatever the inputs were.
        let open = table.frame.with_world(crate::frame::WorldMode::Open);
        let fused = MassFunction::new(open, [(FocalSet::EMPTY, T::one())])?;
        return Ok((fused, report));
    }
    let combined_empty = table.empty_pair;
    let scale = (T::one() - combined_empty) / table.surviving_total;
    let entries = table
        .surviving
        .into_iter()
        .map(|(a, p)| (a, p * scale))
        .chain(std::iter::once((FocalSet::EMPTY, combined_empty)));
    let fused = MassFunction::new(table.frame, entries)?;
    Ok((fused, report))
}

/// Modified generalized combination rule. The (∅,∅) product is excluded from
/// the conflict K and the empty-set mass is renormalized like any other
/// entry, so the fused masses always sum to one.
pub fn mgcr_combine<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
) -> Result<(MassFunction<T>, ConflictReport<T>)> {
    let table = pair_table(m1, m2)?;
    let report = ConflictReport {
        k: table.empty_intersection - table.empty_pair,
        rule: CombinationRule::Mgcr,
    };
    // 1 - K, accumulated from the products that survive.
    let denom = table.surviving_total + table.empty_pair;
    if denom == T::zero() {
        let open = table.frame.with_world(crate::frame::WorldMode::Open);
        let fused = MassFunction::new(open, [(FocalSet::EMPTY, T::one())])?;
        return Ok((fused, report));
    }
    let entries = table
        .surviving
        .into_iter()
        .map(|(a, p)| (a, p / denom))
        .chain(std::iter::once((FocalSet::EMPTY, table.empty_pair / denom)));
    let fused = MassFunction::new(table.frame, entries)?;
    Ok((fused, report))
}

/// Left fold of the rule over the list: `((m1 ∘ m2) ∘ m3) ∘ …`.
///
/// mGCR is not known to be associative, so the caller's list order is the
/// contract; see [`permutation_spread`] for an order-sensitivity diagnostic.
pub fn combine_all<T: Real>(
    rule: CombinationRule,
    masses: &[MassFunction<T>],
) -> Result<MassFunction<T>> {
    let (first, rest) = masses.split_first().ok_or(Error::EmptyCombination)?;
    let mut acc = first.clone();
    for m in rest {
        acc = rule.combine(&acc, m)?.0;
    }
    Ok(acc)
}

/// Maximum entry-wise difference between the fold of the list in the given
/// order and the fold of any permutation of it. Supports lists of up to four
/// mass functions (4! folds).
pub fn permutation_spread<T: Real>(rule: CombinationRule, masses: &[MassFunction<T>]) -> Result<T> {
    if masses.len() > 4 {
        return Err(Error::BadDocument(
            "permutation diagnostics supports at most 4 mass functions".into(),
        ));
    }
    let reference = combine_all(rule, masses)?;
    let mut spread = T::zero();
    let mut order: Vec<usize> = (0..masses.len()).collect();
    permute(&mut order, 0, &mut |perm| {
        let permuted: Vec<MassFunction<T>> = perm.iter().map(|&i| masses[i].clone()).collect();
        let fused = combine_all(rule, &permuted)?;
        for set in reference.frame().subsets() {
            let diff = (reference.mass(set) - fused.mass(set)).abs();
            if diff > spread {
                spread = diff;
            }
        }
        Ok(())
    })?;
    Ok(spread)
}

fn permute<F: FnMut(&[usize]) -> Result<()>>(
    order: &mut Vec<usize>,
    start: usize,
    visit: &mut F,
) -> Result<()> {
    if start == order.len() {
        return visit(order);
    }
    for i in start..order.len() {
        order.swap(start, i);
        permute(order, start + 1, visit)?;
        order.swap(start, i);
    }
    Ok(())
}

/// Negation of a Bayesian mass function: each label receives
/// `(1 − m({θ}))/(N − 1)`. Used to rescue totally conflicting evidence by
/// fusing the complements instead of the originals.
pub fn negate_bayesian<T: Real>(m: &MassFunction<T>) -> Result<MassFunction<T>> {
    if !m.is_bayesian() {
        return Err(Error::NotBayesian);
    }
    let frame = m.frame().clone();
    let n = frame.len();
    if n < 2 {
        return Err(Error::FrameTooSmall);
    }
    let divisor = T::of((n - 1) as f64);
    let entries = (0..n).map(|i| {
        let singleton = FocalSet::from_bits(1 << i);
        (singleton, (T::one() - m.mass(singleton)) / divisor)
    });
    MassFunction::new(frame, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::WorldMode;

    fn closed_abc() -> Arc<Frame> {
        Frame::new(["A", "B", "C"], WorldMode::Closed).unwrap()
    }

    fn bayesian(frame: &Arc<Frame>, masses: [f64; 3]) -> MassFunction<f64> {
        MassFunction::new(
            frame.clone(),
            masses
                .iter()
                .enumerate()
                .map(|(i, &m)| (FocalSet::from_bits(1 << i), m)),
        )
        .unwrap()
    }

    #[test]
    fn dempster_concentrates_on_shared_hypothesis() {
        let frame = closed_abc();
        let m1 = bayesian(&frame, [0.8, 0.0, 0.2]);
        let m2 = bayesian(&frame, [0.0, 0.8, 0.2]);
        let (fused, report) = dempster_combine(&m1, &m2).unwrap();
        assert!((report.k - 0.96).abs() < 1e-12);
        assert!((fused.mass(frame.singleton("C").unwrap()) - 1.0).abs() < 1e-12);
        assert_eq!(fused.focal_count(), 1);
    }

    #[test]
    fn vacuous_evidence_is_identity() {
        let frame = closed_abc();
        let m = bayesian(&frame, [0.5, 0.3, 0.2]);
        let vac = MassFunction::vacuous(frame.clone());
        let (fused, report) = dempster_combine(&m, &vac).unwrap();
        assert_eq!(report.k, 0.0);
        assert_eq!(fused, m);
    }

    #[test]
    fn disjoint_certainties_are_total_conflict() {
        let frame = closed_abc();
        let m1 = bayesian(&frame, [1.0, 0.0, 0.0]);
        let m2 = bayesian(&frame, [0.0, 1.0, 0.0]);
        match dempster_combine(&m1, &m2) {
            Err(Error::TotalConflict { k }) => assert!((k - 1.0).abs() < 1e-12),
            other => panic!("expected total conflict, got {other:?}"),
        }
    }

    #[test]
    fn dempster_rejects_empty_set_mass() {
        let frame = Frame::new(["a"], WorldMode::Open).unwrap();
        let m = MassFunction::<f64>::new(
            frame.clone(),
            [(FocalSet::EMPTY, 0.5), (frame.full_set(), 0.5)],
        )
        .unwrap();
        assert!(matches!(
            dempster_combine(&m, &m),
            Err(Error::OpenWorldInput)
        ));
    }

    // Hand-enumerated pair products: four pairs,
    // K = 0.5·0.4 + 0.5·0.6 + 0.5·0.4 = 0.7, m(∅) = 0.2, m({a}) = 0.8·0.3/0.3.
    #[test]
    fn gcr_on_two_single_label_gbpas() {
        let frame = Frame::new(["a"], WorldMode::Open).unwrap();
        let a = frame.singleton("a").unwrap();
        let m1 =
            MassFunction::<f64>::new(frame.clone(), [(FocalSet::EMPTY, 0.5), (a, 0.5)]).unwrap();
        let m2 =
            MassFunction::<f64>::new(frame.clone(), [(FocalSet::EMPTY, 0.4), (a, 0.6)]).unwrap();
        let (fused, report) = gcr_combine(&m1, &m2).unwrap();
        assert!((report.k - 0.7).abs() < 1e-12);
        assert!((fused.empty_set_mass() - 0.2).abs() < 1e-12);
        assert!((fused.mass(a) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn gcr_degenerates_to_dempster_without_empty_set_mass() {
        let frame = closed_abc();
        let m1 = bayesian(&frame, [0.6, 0.3, 0.1]);
        let m2 = bayesian(&frame, [0.2, 0.5, 0.3]);
        let (gcr, _) = gcr_combine(&m1, &m2).unwrap();
        let (dempster, _) = dempster_combine(&m1, &m2).unwrap();
        assert!(gcr.approx_eq(&dempster, 1e-12));
    }

    #[test]
    fn gcr_total_conflict_yields_all_empty() {
        let frame = Frame::new(["a"], WorldMode::Open).unwrap();
        let m = MassFunction::<f64>::new(frame.clone(), [(FocalSet::EMPTY, 1.0)]).unwrap();
        let (fused, report) = gcr_combine(&m, &m).unwrap();
        assert_eq!(report.k, 1.0);
        assert_eq!(fused.empty_set_mass(), 1.0);
    }

    // Same pair table as the GCR case, but the (∅,∅) product leaves K:
    // K = 0.5, m({a}) = 0.3/0.5, m(∅) = 0.2/0.5.
    #[test]
    fn mgcr_excludes_the_empty_pair_from_conflict() {
        let frame = Frame::new(["a"], WorldMode::Open).unwrap();
        let a = frame.singleton("a").unwrap();
        let m1 =
            MassFunction::<f64>::new(frame.clone(), [(FocalSet::EMPTY, 0.5), (a, 0.5)]).unwrap();
        let m2 =
            MassFunction::<f64>::new(frame.clone(), [(FocalSet::EMPTY, 0.4), (a, 0.6)]).unwrap();
        let (fused, report) = mgcr_combine(&m1, &m2).unwrap();
        assert!((report.k - 0.5).abs() < 1e-12);
        assert!((fused.empty_set_mass() - 0.4).abs() < 1e-12);
        assert!((fused.mass(a) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn mgcr_degenerates_to_dempster_without_empty_set_mass() {
        let frame = closed_abc();
        let m1 = bayesian(&frame, [0.6, 0.3, 0.1]);
        let m2 = bayesian(&frame, [0.2, 0.5, 0.3]);
        let (mgcr, _) = mgcr_combine(&m1, &m2).unwrap();
        let (dempster, _) = dempster_combine(&m1, &m2).unwrap();
        assert!(mgcr.approx_eq(&dempster, 1e-12));
    }

    #[test]
    fn fold_of_singleton_list_is_identity() {
        let frame = closed_abc();
        let m = bayesian(&frame, [0.5, 0.3, 0.2]);
        let fused = combine_all(CombinationRule::Dempster, std::slice::from_ref(&m)).unwrap();
        assert_eq!(fused, m);
    }

    #[test]
    fn fold_ignores_vacuous_elements() {
        let frame = closed_abc();
        let m = bayesian(&frame, [0.5, 0.3, 0.2]);
        let vac = MassFunction::vacuous(frame.clone());
        let fused = combine_all(CombinationRule::Dempster, &[m.clone(), vac.clone(), vac]).unwrap();
        assert!(fused.approx_eq(&m, 1e-12));
    }

    #[test]
    fn fold_of_empty_list_is_an_error() {
        assert!(matches!(
            combine_all(CombinationRule::Mgcr, &Vec::<MassFunction<f64>>::new()),
            Err(Error::EmptyCombination)
        ));
    }

    #[test]
    fn negation_spreads_complementary_belief() {
        let frame = closed_abc();
        let m = bayesian(&frame, [0.8, 0.0, 0.2]);
        let negated = negate_bayesian(&m).unwrap();
        assert!((negated.mass(frame.singleton("A").unwrap()) - 0.1).abs() < 1e-12);
        assert!((negated.mass(frame.singleton("B").unwrap()) - 0.5).abs() < 1e-12);
        assert!((negated.mass(frame.singleton("C").unwrap()) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn uniform_distribution_is_a_fixed_point_of_negation() {
        let frame = closed_abc();
        let third = 1.0 / 3.0;
        let m = bayesian(&frame, [third, third, third]);
        let negated = negate_bayesian(&m).unwrap();
        assert!(negated.approx_eq(&m, 1e-12));
    }

    #[test]
    fn negation_on_two_labels_swaps_certainty() {
        let frame = Frame::new(["A", "B"], WorldMode::Closed).unwrap();
        let m = MassFunction::<f64>::new(frame.clone(), [(frame.singleton("A").unwrap(), 1.0)])
            .unwrap();
        let negated = negate_bayesian(&m).unwrap();
        assert_eq!(negated.mass(frame.singleton("A").unwrap()), 0.0);
        assert_eq!(negated.mass(frame.singleton("B").unwrap()), 1.0);
    }

    #[test]
    fn negation_requires_bayesian_input() {
        let frame = closed_abc();
        let m = MassFunction::<f64>::vacuous(frame.clone());
        assert!(matches!(negate_bayesian(&m), Err(Error::NotBayesian)));

        let single = Frame::new(["A"], WorldMode::Closed).unwrap();
        let m = MassFunction::<f64>::new(single.clone(), [(single.full_set(), 1.0)]).unwrap();
        assert!(matches!(negate_bayesian(&m), Err(Error::FrameTooSmall)));
    }

    // Fusing the negations recovers a usable verdict from total conflict:
    // products per label are 0.1·0.5, 0.5·0.1, 0.4·0.4, normalized by 0.26.
    #[test]
    fn negation_rescues_total_conflict() {
        let frame = closed_abc();
        let m1 = bayesian(&frame, [0.8, 0.0, 0.2]);
        let m2 = bayesian(&frame, [0.0, 0.8, 0.2]);
        let (fused, _) = dempster_combine(
            &negate_bayesian(&m1).unwrap(),
            &negate_bayesian(&m2).unwrap(),
        )
        .unwrap();
        assert!((fused.mass(frame.singleton("A").unwrap()) - 0.19).abs() < 0.005);
        assert!((fused.mass(frame.singleton("B").unwrap()) - 0.19).abs() < 0.005);
        assert!((fused.mass(frame.singleton("C").unwrap()) - 0.62).abs() < 0.005);
    }

    #[test]
    fn permutation_spread_is_zero_for_dempster() {
        let frame = closed_abc();
        let m1 = bayesian(&frame, [0.6, 0.3, 0.1]);
        let m2 = bayesian(&frame, [0.2, 0.5, 0.3]);
        let m3 = MassFunction::vacuous(frame.clone());
        let spread = permutation_spread(CombinationRule::Dempster, &[m1, m2, m3]).unwrap();
        assert!(spread < 1e-12);
    }
}
