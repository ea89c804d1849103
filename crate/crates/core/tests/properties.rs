//! Property tests over random frames, mass functions and triangles.
//!
//! The combination rules are checked against a dense reference that
//! materializes the full 2^N x 2^N product table from dense mass vectors; it
//! shares no code with the sparse implementation.

use std::sync::Arc;

use proptest::prelude::*;

use gbpa_core::{
    classify::decide,
    combine::{combine_all, dempster_combine, gcr_combine, mgcr_combine, CombinationRule},
    frame::{FocalSet, Frame, WorldMode},
    fuzzy::{ModelTable, TriangularFuzzyNumber},
    generate::{generate_gbpa_at, to_closed_world},
    mass::MassFunction,
};

// ---------------------------------------------------------------------------
// dense reference combiner
// ---------------------------------------------------------------------------

enum DenseOutcome {
    Fused(Vec<f64>),
    TotalConflict,
}

/// Reference combiner on dense vectors indexed by bitmask. Walks every pair,
/// zero entries included, and applies the rule formulas literally.
fn dense_combine(rule: CombinationRule, d1: &[f64], d2: &[f64]) -> DenseOutcome {
    let size = d1.len();
    let mut products = vec![0.0f64; size];
    let mut empty_int = 0.0;
    let mut surviving = 0.0;
    for (i, &a) in d1.iter().enumerate() {
        for (j, &b) in d2.iter().enumerate() {
            let p = a * b;
            let inter = i & j;
            if inter == 0 {
                empty_int += p;
            } else {
                products[inter] += p;
                surviving += p;
            }
        }
    }
    let empty_pair = d1[0] * d2[0];
    let mut out = vec![0.0f64; size];
    match rule {
        CombinationRule::Dempster => {
            if surviving == 0.0 {
                return DenseOutcome::TotalConflict;
            }
            for (set, p) in products.iter().enumerate().skip(1) {
                out[set] = p / (1.0 - empty_int);
            }
        }
        CombinationRule::Gcr => {
            if surviving == 0.0 {
                out[0] = 1.0;
                return DenseOutcome::Fused(out);
            }
            out[0] = empty_pair;
            for (set, p) in products.iter().enumerate().skip(1) {
                out[set] = (1.0 - empty_pair) * p / (1.0 - empty_int);
            }
        }
        CombinationRule::Mgcr => {
            let k = empty_int - empty_pair;
            if surviving + empty_pair == 0.0 {
                out[0] = 1.0;
                return DenseOutcome::Fused(out);
            }
            out[0] = empty_pair / (1.0 - k);
            for (set, p) in products.iter().enumerate().skip(1) {
                out[set] = p / (1.0 - k);
            }
        }
    }
    DenseOutcome::Fused(out)
}

fn to_dense(m: &MassFunction<f64>) -> Vec<f64> {
    let size = 1usize << m.frame().len();
    (0..size)
        .map(|bits| m.mass(FocalSet::from_bits(bits as u32)))
        .collect()
}

// ---------------------------------------------------------------------------
// strategies
// ---------------------------------------------------------------------------

fn frame_of(n: usize, world: WorldMode) -> Arc<Frame> {
    let labels: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
    Frame::new(labels, world).unwrap()
}

/// Random mass function on an `n`-label frame: random weights on a random
/// subset of the power set, normalized to one.
fn mass_strategy(n: usize, world: WorldMode) -> impl Strategy<Value = MassFunction<f64>> {
    let size = 1usize << n;
    let weights = proptest::collection::vec(0.0f64..1.0, size);
    let keep = proptest::collection::vec(proptest::bool::weighted(0.45), size);
    (weights, keep).prop_map(move |(weights, keep)| {
        let frame = frame_of(n, world);
        let min_bits = if world == WorldMode::Closed { 1 } else { 0 };
        let mut entries: Vec<(FocalSet, f64)> = weights
            .iter()
            .zip(&keep)
            .enumerate()
            .skip(min_bits)
            .filter(|(_, (&w, &k))| k && w > 0.0)
            .map(|(bits, (&w, _))| (FocalSet::from_bits(bits as u32), w))
            .collect();
        if entries.is_empty() {
            entries.push((frame.full_set(), 1.0));
        }
        MassFunction::new_normalized(frame, entries).unwrap()
    })
}

fn pair_strategy(
    world: WorldMode,
) -> impl Strategy<Value = (MassFunction<f64>, MassFunction<f64>)> {
    (1usize..=4).prop_flat_map(move |n| (mass_strategy(n, world), mass_strategy(n, world)))
}

fn tfn_strategy() -> impl Strategy<Value = TriangularFuzzyNumber<f64>> {
    (0.0f64..10.0, 0.01f64..5.0, 0.01f64..5.0).prop_map(|(lower, rise, fall)| {
        TriangularFuzzyNumber::new(lower, lower + rise, lower + rise + fall).unwrap()
    })
}

/// A one-attribute model table over 1..=3 classes with overlapping supports.
fn models_strategy() -> impl Strategy<Value = ModelTable<f64>> {
    proptest::collection::vec(tfn_strategy(), 1..=3).prop_map(|tfns| {
        let frame = frame_of(tfns.len(), WorldMode::Open);
        let cells = tfns.into_iter().map(|t| vec![t]).collect();
        ModelTable::from_cells(frame, vec!["x".into()], cells).unwrap()
    })
}

// ---------------------------------------------------------------------------
// combination rules
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn rules_match_the_dense_reference((m1, m2) in pair_strategy(WorldMode::Open)) {
        for rule in [CombinationRule::Gcr, CombinationRule::Mgcr] {
            let result = rule.combine(&m1, &m2);
            match dense_combine(rule, &to_dense(&m1), &to_dense(&m2)) {
                DenseOutcome::Fused(expected) => {
                    let (fused, _) = result.unwrap();
                    prop_assert!(fused.validate().is_ok());
                    for (bits, &e) in expected.iter().enumerate() {
                        let got = fused.mass(FocalSet::from_bits(bits as u32));
                        prop_assert!((got - e).abs() < 1e-9,
                            "{rule:?} differs at {bits:#b}: {got} vs {e}");
                    }
                }
                DenseOutcome::TotalConflict => unreachable!("gcr/mgcr never error"),
            }
        }
    }

    #[test]
    fn dempster_matches_the_dense_reference((m1, m2) in pair_strategy(WorldMode::Closed)) {
        let result = dempster_combine(&m1, &m2);
        match dense_combine(CombinationRule::Dempster, &to_dense(&m1), &to_dense(&m2)) {
            DenseOutcome::Fused(expected) => {
                let (fused, _) = result.unwrap();
                prop_assert!(fused.validate().is_ok());
                for (bits, &e) in expected.iter().enumerate() {
                    let got = fused.mass(FocalSet::from_bits(bits as u32));
                    prop_assert!((got - e).abs() < 1e-9);
                }
            }
            DenseOutcome::TotalConflict => prop_assert!(result.is_err()),
        }
    }

    #[test]
    fn dempster_and_mgcr_are_commutative((m1, m2) in pair_strategy(WorldMode::Open)) {
        let ab = mgcr_combine(&m1, &m2).unwrap().0;
        let ba = mgcr_combine(&m2, &m1).unwrap().0;
        prop_assert!(ab.approx_eq(&ba, 1e-9));
    }

    #[test]
    fn dempster_is_commutative((m1, m2) in pair_strategy(WorldMode::Closed)) {
        match (dempster_combine(&m1, &m2), dempster_combine(&m2, &m1)) {
            (Ok((ab, _)), Ok((ba, _))) => prop_assert!(ab.approx_eq(&ba, 1e-9)),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "asymmetric outcome {other:?}"),
        }
    }

    #[test]
    fn dempster_is_associative(
        n in 1usize..=4,
        seed in proptest::collection::vec(0.0f64..1.0, 48),
    ) {
        let frame = frame_of(n, WorldMode::Closed);
        let size = 1usize << n;
        let mass_from = |chunk: &[f64]| {
            let entries: Vec<(FocalSet, f64)> = chunk
                .iter()
                .take(size)
                .enumerate()
                .skip(1)
                .map(|(bits, &w)| (FocalSet::from_bits(bits as u32), w + 1e-3))
                .collect();
            MassFunction::new_normalized(frame.clone(), entries).unwrap()
        };
        let (m1, m2, m3) = (mass_from(&seed[0..16]), mass_from(&seed[16..32]), mass_from(&seed[32..48]));
        let left = dempster_combine(&dempster_combine(&m1, &m2).unwrap().0, &m3).unwrap().0;
        let right = dempster_combine(&m1, &dempster_combine(&m2, &m3).unwrap().0).unwrap().0;
        prop_assert!(left.approx_eq(&right, 1e-9));
    }

    #[test]
    fn mgcr_without_empty_mass_is_dempster((m1, m2) in pair_strategy(WorldMode::Closed)) {
        let (mgcr, _) = mgcr_combine(&m1, &m2).unwrap();
        match dempster_combine(&m1, &m2) {
            Ok((dempster, _)) => prop_assert!(mgcr.approx_eq(&dempster, 1e-9)),
            Err(_) => prop_assert!(mgcr.empty_set_mass() > 1.0 - 1e-9),
        }
    }

    #[test]
    fn gcr_collapses_the_empty_mass_product((m1, m2) in pair_strategy(WorldMode::Open)) {
        let (fused, _) = gcr_combine(&m1, &m2).unwrap();
        prop_assert!(fused.validate().is_ok());
        let expected = m1.empty_set_mass() * m2.empty_set_mass();
        // either the K = 1 clause fired or m(∅) is the product
        prop_assert!(
            (fused.empty_set_mass() - expected).abs() < 1e-9
                || (fused.empty_set_mass() - 1.0).abs() < 1e-9
        );
    }
}

// ---------------------------------------------------------------------------
// belief and plausibility
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn belief_never_exceeds_plausibility(
        n in 1usize..=4,
        m in (1usize..=4).prop_flat_map(|n| mass_strategy(n, WorldMode::Open)),
    ) {
        let _ = n;
        let frame = m.frame().clone();
        for a in frame.subsets() {
            if !a.is_empty() {
                prop_assert!(m.gbel(a).unwrap() <= m.gpl(a).unwrap() + 1e-12);
            }
        }
        let full = frame.full_set();
        prop_assert!((m.gbel(full).unwrap() - (1.0 - m.empty_set_mass())).abs() < 1e-9);
        prop_assert!((m.gpl(full).unwrap() - (1.0 - m.empty_set_mass())).abs() < 1e-9);
    }

    /// On closed-world masses the generalized functionals coincide with the
    /// classical ones, checked by brute-force power-set summation.
    #[test]
    fn closed_world_matches_classical_belief(
        m in (1usize..=4).prop_flat_map(|n| mass_strategy(n, WorldMode::Closed)),
    ) {
        let frame = m.frame().clone();
        for a in frame.subsets() {
            let mut bel = 0.0;
            let mut pl = 0.0;
            for b in frame.subsets() {
                if !b.is_empty() && b.is_subset_of(a) {
                    bel += m.mass(b);
                }
                if b.intersects(a) {
                    pl += m.mass(b);
                }
            }
            if a.is_empty() {
                // both collapse to m(∅) = 0 on a closed world
                prop_assert_eq!(m.gbel(a).unwrap(), 0.0);
                prop_assert_eq!(m.gpl(a).unwrap(), 0.0);
            } else {
                prop_assert!((m.gbel(a).unwrap() - bel).abs() < 1e-9);
                prop_assert!((m.gpl(a).unwrap() - pl).abs() < 1e-9);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// GBPA generation and closed-world degradation
// ---------------------------------------------------------------------------

/// Independent generation reference: re-evaluates the floored piecewise
/// memberships from the raw triangle parameters and nests by "classes whose
/// membership reaches this level", walking distinct levels ascending.
fn dense_gbpa(triangles: &[(f64, f64, f64)], x: f64) -> Vec<(u32, f64)> {
    let degrees: Vec<f64> = triangles
        .iter()
        .map(|&(lower, mode, upper)| {
            if x < lower || x > upper {
                0.0
            } else {
                let raw = if x <= mode {
                    if mode == lower {
                        1.0
                    } else {
                        (x - lower) / (mode - lower)
                    }
                } else if upper == mode {
                    1.0
                } else {
                    (upper - x) / (upper - mode)
                };
                raw.max(0.01)
            }
        })
        .collect();
    let mut levels: Vec<f64> = degrees.iter().copied().filter(|&d| d > 0.0).collect();
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    levels.dedup();
    let mut out = Vec::new();
    let mut previous = 0.0;
    for &level in &levels {
        let mut bits = 0u32;
        for (class, &d) in degrees.iter().enumerate() {
            if d >= level {
                bits |= 1 << class;
            }
        }
        out.push((bits, level - previous));
        previous = level;
    }
    if previous < 1.0 {
        out.push((0, 1.0 - previous));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn generation_matches_the_dense_reference(
        models in models_strategy(),
        x in -2.0f64..22.0,
    ) {
        let m = generate_gbpa_at(&models, 0, x);
        prop_assert!(m.validate().is_ok());

        let triangles: Vec<(f64, f64, f64)> = models
            .column(0)
            .map(|t| (t.lower(), t.mode(), t.upper()))
            .collect();
        for (bits, expected) in dense_gbpa(&triangles, x) {
            let got = m.mass(FocalSet::from_bits(bits));
            prop_assert!((got - expected).abs() < 1e-9,
                "set {bits:#b}: {got} vs {expected}");
        }
    }

    #[test]
    fn generated_focal_elements_nest(
        models in models_strategy(),
        x in -2.0f64..22.0,
    ) {
        let m = generate_gbpa_at(&models, 0, x);
        let mut sets: Vec<FocalSet> = m.iter().map(|(s, _)| s).filter(|s| !s.is_empty()).collect();
        sets.sort_by_key(|s| std::cmp::Reverse(s.cardinality()));
        for pair in sets.windows(2) {
            prop_assert!(pair[1].is_subset_of(pair[0]));
        }
        // the empty-set mass complements the best membership
        let best = models.column(0).map(|t| t.membership(x)).fold(0.0f64, f64::max);
        prop_assert!((m.empty_set_mass() - (1.0 - best)).abs() < 1e-9);
    }

    /// On two-class frames the four masses partition the unit interval.
    #[test]
    fn two_class_masses_partition_unity(
        t1 in tfn_strategy(),
        t2 in tfn_strategy(),
        x in -2.0f64..22.0,
    ) {
        let frame = frame_of(2, WorldMode::Open);
        let models = ModelTable::from_cells(
            frame.clone(),
            vec!["x".into()],
            vec![vec![t1], vec![t2]],
        ).unwrap();
        let m = generate_gbpa_at(&models, 0, x);
        let residual = 1.0
            - m.mass(frame.parse_set("l0").unwrap())
            - m.mass(frame.parse_set("l1").unwrap())
            - m.mass(frame.parse_set("l0,l1").unwrap());
        prop_assert!((m.empty_set_mass() - residual).abs() < 1e-9);
    }

    #[test]
    fn closed_world_degradation_is_sound(
        m in (1usize..=4).prop_flat_map(|n| mass_strategy(n, WorldMode::Open)),
    ) {
        let closed = to_closed_world(&m);
        prop_assert!(closed.validate().is_ok());
        prop_assert_eq!(closed.empty_set_mass(), 0.0);
        prop_assert!((closed.total() - 1.0).abs() < 1e-9);
        let twice = to_closed_world(&closed);
        prop_assert!(closed.approx_eq(&twice, 1e-12));
    }
}

// ---------------------------------------------------------------------------
// triangles
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn fit_keeps_the_mean_inside_the_support(
        samples in proptest::collection::vec(-1e3f64..1e3, 1..40),
    ) {
        let tfn = TriangularFuzzyNumber::fit(&samples).unwrap();
        prop_assert!(tfn.lower() <= tfn.mode() && tfn.mode() <= tfn.upper());
    }

    #[test]
    fn membership_stays_in_unit_range_and_support(
        tfn in tfn_strategy(),
        x in -5.0f64..25.0,
    ) {
        let d = tfn.membership(x);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d > 0.0, (tfn.lower()..=tfn.upper()).contains(&x));
    }

    /// Wherever the raw form clears the floor, membership is linear on each
    /// side of the mode.
    #[test]
    fn membership_is_piecewise_linear(
        tfn in tfn_strategy(),
        t1 in 0.05f64..0.95,
        t2 in 0.05f64..0.95,
        rising in proptest::bool::ANY,
    ) {
        let (lo, hi) = if rising {
            (tfn.lower(), tfn.mode())
        } else {
            (tfn.mode(), tfn.upper())
        };
        prop_assume!(hi - lo > 1e-6);
        let x1 = lo + t1.min(t2) * (hi - lo);
        let x2 = lo + t1.max(t2) * (hi - lo);
        let (m1, m2) = (tfn.membership(x1), tfn.membership(x2));
        prop_assume!(m1 > 0.011 && m2 > 0.011);
        let mid = tfn.membership((x1 + x2) / 2.0);
        prop_assert!((mid - (m1 + m2) / 2.0).abs() < 1e-9);
    }
}

// ---------------------------------------------------------------------------
// decisions
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// The decision only depends on the mass map, not on insertion order.
    #[test]
    fn decide_ignores_entry_order(
        m in (1usize..=4).prop_flat_map(|n| mass_strategy(n, WorldMode::Open)),
        seed in 0u64..1000,
    ) {
        let mut entries: Vec<(FocalSet, f64)> = m.iter().collect();
        // cheap deterministic shuffle
        let len = entries.len();
        for i in 0..len {
            let j = (seed as usize + i * 7) % len;
            entries.swap(i, j);
        }
        let shuffled = MassFunction::new(m.frame().clone(), entries).unwrap();
        prop_assert_eq!(decide(&m), decide(&shuffled));
    }

    #[test]
    fn folding_any_rule_yields_valid_mass(
        ms in proptest::collection::vec(mass_strategy(3, WorldMode::Open), 1..5),
    ) {
        for rule in [CombinationRule::Gcr, CombinationRule::Mgcr] {
            let fused = combine_all(rule, &ms).unwrap();
            prop_assert!(fused.validate().is_ok());
        }
    }
}
