//! Measures, samples, the generalised Tukey depth and its brute-force
//! reformulations, contour sets, rankings, and the three-level depth for
//! hierarchical contexts.

mod common;

use common::*;
use fcadepth::{
    contour_sets, empirical_tukey, hierarchical_free_depth, make_measure, measure_family_diameter,
    rank, ranking_of, tukey_depth, tukey_depths, tukey_oracle, BigRational, DepthFunctionHandle,
    DepthMap, DiscreteMeasure, FcaError, FormalContext, MeasureKind, ObjectSet, One, OracleMode,
    Sample, Zero,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn uniform_measure_splits_mass_evenly() {
    let mu = DiscreteMeasure::uniform(5).unwrap();
    for g in 0..5 {
        assert_eq!(mu.weight(g), r(1, 5));
    }
    assert!(DiscreteMeasure::uniform(0).is_err());
}

#[test]
fn sample_counts_convert_to_an_empirical_measure() {
    let ctx = chain_context();
    let sample = Sample::from_labels(&ctx, &["g2", "g3"]).unwrap();
    assert_eq!(sample.counts(), vec![0, 1, 1]);
    let mu = sample.to_measure();
    assert_eq!(mu.weights(), vec![r(0, 1), r(1, 2), r(1, 2)]);
    assert_eq!(mu.support(), oset(3, &[1, 2]));
}

#[test]
fn explicit_weights_are_normalised_and_validated() {
    let mu = DiscreteMeasure::from_weights(&[r(1, 11), r(1, 11), r(3, 11), r(6, 11)]).unwrap();
    assert_eq!(mu.weights(), vec![r(1, 11), r(1, 11), r(3, 11), r(6, 11)]);

    // Unnormalised weights are scaled to total mass one.
    let mu = DiscreteMeasure::from_weights(&[r(2, 1), r(2, 1)]).unwrap();
    assert_eq!(mu.weights(), vec![r(1, 2), r(1, 2)]);

    assert!(DiscreteMeasure::from_weights(&[r(0, 1), r(0, 1)]).is_err());
    assert!(DiscreteMeasure::from_weights(&[r(3, 2), r(-1, 2)]).is_err());
    assert!(DiscreteMeasure::from_counts(&[0, 0, 0]).is_err());
}

#[test]
fn measure_of_a_set_sums_the_weights() {
    let mu = DiscreteMeasure::uniform(5).unwrap();
    assert_eq!(mu.of(&oset(5, &[])).unwrap(), r(0, 1));
    assert_eq!(mu.of(&ObjectSet::full(5)).unwrap(), r(1, 1));
    assert_eq!(mu.of(&oset(5, &[0, 3, 4])).unwrap(), r(3, 5));
    // Universe mismatch is an error.
    assert!(mu.of(&oset(4, &[0])).is_err());
}

#[test]
fn titanic_uniform_depths() {
    let ctx = titanic_context();
    let mu = DiscreteMeasure::uniform(5).unwrap();
    let depth = tukey_depths(&ctx, &mu).unwrap();
    assert_eq!(
        depth.values(),
        vec![r(2, 5), r(2, 5), r(1, 5), r(1, 5), r(2, 5)]
    );
    // The map carries labels and name for downstream reports.
    assert_eq!(depth.name(), "tukey");
    assert_eq!(depth.object_labels(), titanic_context().object_labels());
}

#[test]
fn an_object_with_every_attribute_has_depth_one() {
    let ctx = covering_row_context();
    let mu = DiscreteMeasure::uniform(3).unwrap();
    let depth = tukey_depths(&ctx, &mu).unwrap();
    assert_eq!(depth.values(), vec![r(1, 3), r(1, 3), r(1, 1)]);
    assert_eq!(depth.argmax_set(), oset(3, &[2]));
}

#[test]
fn contexts_with_equal_extent_families_get_equal_depths() {
    let k1 = equal_masses_k1();
    let k2 = equal_masses_k2();
    let mu = DiscreteMeasure::uniform(3).unwrap();
    let d1 = tukey_depths(&k1, &mu).unwrap();
    let d2 = tukey_depths(&k2, &mu).unwrap();
    assert_eq!(d1.values(), d2.values());
    assert_eq!(d1.values(), vec![r(1, 3), r(1, 3), r(2, 3)]);
}

#[test]
fn empirical_depth_from_a_two_point_sample() {
    let ctx = chain_context();
    let sample = Sample::from_labels(&ctx, &["g2", "g3"]).unwrap();
    assert_eq!(empirical_tukey(0, &ctx, &sample).unwrap(), r(0, 1));
    assert_eq!(empirical_tukey(1, &ctx, &sample).unwrap(), r(1, 2));
    assert_eq!(empirical_tukey(2, &ctx, &sample).unwrap(), r(1, 1));
}

#[test]
fn empirical_depth_from_a_three_point_sample() {
    let ctx = chain_context();
    let sample = Sample::from_labels(&ctx, &["g1", "g2", "g3"]).unwrap();
    assert_eq!(empirical_tukey(1, &ctx, &sample).unwrap(), r(2, 3));
    assert_eq!(empirical_tukey(2, &ctx, &sample).unwrap(), r(2, 3));
}

#[test]
fn empirical_depth_equals_tukey_depth_of_the_empirical_measure() {
    let ctx = titanic_context();
    let sample = Sample::new(5, vec![0, 1, 1, 4, 2]).unwrap();
    let mu = sample.to_measure();
    for g in 0..5 {
        assert_eq!(
            empirical_tukey(g, &ctx, &sample).unwrap(),
            tukey_depth(g, &ctx, &mu).unwrap()
        );
    }
}

#[test]
fn degenerate_sample_gives_its_point_full_depth() {
    let ctx = private_attrs_context();
    let sample = Sample::from_labels(&ctx, &["g1", "g1"]).unwrap();
    assert_eq!(empirical_tukey(0, &ctx, &sample).unwrap(), r(1, 1));
    assert_eq!(empirical_tukey(1, &ctx, &sample).unwrap(), r(0, 1));
}

#[test]
fn both_oracles_agree_with_the_closed_form_on_fixed_contexts() {
    let cases: Vec<(FormalContext, DiscreteMeasure)> = vec![
        (titanic_context(), DiscreteMeasure::uniform(5).unwrap()),
        (chain_context(), DiscreteMeasure::uniform(3).unwrap()),
        (
            covering_row_context(),
            DiscreteMeasure::from_counts(&[2, 1, 3]).unwrap(),
        ),
        (
            tree_context(),
            DiscreteMeasure::from_counts(&[6, 3, 1, 1]).unwrap(),
        ),
    ];
    for (ctx, mu) in &cases {
        for g in 0..ctx.n_objects() {
            let fast = tukey_depth(g, ctx, mu).unwrap();
            assert_eq!(
                tukey_oracle(g, ctx, mu, OracleMode::AttrSubsets).unwrap(),
                fast
            );
            assert_eq!(tukey_oracle(g, ctx, mu, OracleMode::Extents).unwrap(), fast);
        }
    }
}

#[test]
fn oracle_gives_depth_one_to_full_rows() {
    let ctx = covering_row_context();
    let mu = DiscreteMeasure::uniform(3).unwrap();
    assert_eq!(
        tukey_oracle(2, &ctx, &mu, OracleMode::AttrSubsets).unwrap(),
        r(1, 1)
    );
}

#[test]
fn oracles_enforce_their_caps() {
    // Attribute-subset mode caps the number of attributes.
    let wide = FormalContext::new(
        names("g", 1),
        names("m", 21),
        &(0..21).map(|m| (0, m)).collect::<Vec<_>>(),
    )
    .unwrap();
    let mu = DiscreteMeasure::uniform(1).unwrap();
    match tukey_oracle(0, &wide, &mu, OracleMode::AttrSubsets) {
        Err(FcaError::CapExceeded {
            actual: 21,
            cap: 20,
            ..
        }) => {}
        other => panic!("expected a cap error, got {other:?}"),
    }
    // The closed form itself has no such cap.
    assert_eq!(tukey_depth(0, &wide, &mu).unwrap(), r(1, 1));

    // Extent mode caps the number of objects.
    let tall = FormalContext::new(
        names("g", 21),
        names("m", 1),
        &(0..21).map(|g| (g, 0)).collect::<Vec<_>>(),
    )
    .unwrap();
    let mu = DiscreteMeasure::uniform(21).unwrap();
    match tukey_oracle(0, &tall, &mu, OracleMode::Extents) {
        Err(FcaError::CapExceeded {
            actual: 21,
            cap: 20,
            ..
        }) => {}
        other => panic!("expected a cap error, got {other:?}"),
    }
}

#[test]
fn contours_are_upper_level_sets_in_decreasing_order() {
    let ctx = titanic_context();
    let mu = DiscreteMeasure::uniform(5).unwrap();
    let depth = tukey_depths(&ctx, &mu).unwrap();
    let contours = contour_sets(&ctx, &depth).unwrap();
    assert_eq!(
        contours,
        vec![
            (r(2, 5), oset(5, &[0, 1, 4])),
            (r(1, 5), ObjectSet::full(5)),
        ]
    );
    for pair in contours.windows(2) {
        assert!(pair[0].1.is_subset(&pair[1].1));
    }
}

#[test]
fn constant_depth_has_a_single_contour() {
    let ctx = private_attrs_context();
    let depth = DepthMap::from_values(
        "const",
        ctx.object_labels().to_vec(),
        vec![r(2, 3), r(2, 3), r(2, 3)],
    )
    .unwrap();
    let contours = contour_sets(&ctx, &depth).unwrap();
    assert_eq!(contours, vec![(r(2, 3), ObjectSet::full(3))]);
}

#[test]
fn three_level_depth_contours_follow_the_tree() {
    let ctx = tree_context();
    let mu = DiscreteMeasure::from_counts(&[2, 1, 1, 1]).unwrap();
    let depth = hierarchical_free_depth(&ctx, &mu).unwrap();
    assert_eq!(depth.values(), vec![r(1, 1), r(1, 2), r(0, 1), r(0, 1)]);
    let contours = contour_sets(&ctx, &depth).unwrap();
    assert_eq!(
        contours,
        vec![
            (r(1, 1), oset(4, &[0])),
            (r(1, 2), oset(4, &[0, 1])),
            (r(0, 1), ObjectSet::full(4)),
        ]
    );
}

#[test]
fn three_level_depth_breaks_weight_ties_by_object_order() {
    let ctx = tree_context();
    let mu = DiscreteMeasure::uniform(4).unwrap();
    let depth = hierarchical_free_depth(&ctx, &mu).unwrap();
    assert_eq!(depth.values(), vec![r(1, 1), r(1, 2), r(0, 1), r(0, 1)]);
}

#[test]
fn three_level_depth_follows_the_weight() {
    let ctx = tree_context();
    let mu = DiscreteMeasure::from_counts(&[1, 1, 1, 3]).unwrap();
    let depth = hierarchical_free_depth(&ctx, &mu).unwrap();
    assert_eq!(depth.values(), vec![r(0, 1), r(0, 1), r(1, 2), r(1, 1)]);
}

#[test]
fn three_level_depth_rejects_non_hierarchical_contexts() {
    let ctx = titanic_context();
    let mu = DiscreteMeasure::uniform(5).unwrap();
    let err = hierarchical_free_depth(&ctx, &mu).unwrap_err();
    assert!(err.to_string().contains("not hierarchical"), "{err}");
}

#[test]
fn ranking_orders_by_depth_with_competition_ranks() {
    let ctx = titanic_context();
    let mu = DiscreteMeasure::uniform(5).unwrap();
    let ranking = ranking_of(&tukey_depths(&ctx, &mu).unwrap());
    assert_eq!(ranking.groups.len(), 2);
    assert_eq!(ranking.groups[0].depth, r(2, 5));
    assert_eq!(ranking.groups[0].rank, 1);
    assert_eq!(ranking.groups[0].objects, vec![0, 1, 4]);
    assert_eq!(ranking.groups[1].depth, r(1, 5));
    assert_eq!(ranking.groups[1].rank, 4);
    assert_eq!(ranking.groups[1].objects, vec![2, 3]);
    assert_eq!(ranking.order(), vec![0, 1, 4, 2, 3]);

    let same = rank(&ctx, &mu, "tukey").unwrap();
    assert_eq!(same.groups, ranking.groups);
}

#[test]
fn unknown_depth_function_names_are_rejected() {
    let ctx = titanic_context();
    let mu = DiscreteMeasure::uniform(5).unwrap();
    assert!(rank(&ctx, &mu, "banana").is_err());
    assert!(DepthFunctionHandle::by_name("banana").is_err());
    assert!(DepthFunctionHandle::by_name("tukey").is_ok());
    assert!(DepthFunctionHandle::by_name("hier-free").is_ok());
}

#[test]
fn duplicate_rows_share_a_rank_group() {
    let ctx =
        FormalContext::from_index_rows(names("g", 3), names("m", 2), &[vec![0], vec![0], vec![1]])
            .unwrap();
    let mu = DiscreteMeasure::uniform(3).unwrap();
    let ranking = rank(&ctx, &mu, "tukey").unwrap();
    let group_of = |g: usize| {
        ranking
            .groups
            .iter()
            .position(|grp| grp.objects.contains(&g))
            .unwrap()
    };
    assert_eq!(group_of(0), group_of(1));
}

#[test]
fn depth_handles_compute_the_same_maps() {
    let ctx = tree_context();
    let mu = DiscreteMeasure::from_counts(&[2, 1, 1, 1]).unwrap();
    let tukey = DepthFunctionHandle::tukey().depth_map(&ctx, &mu).unwrap();
    assert_eq!(tukey.values(), tukey_depths(&ctx, &mu).unwrap().values());
    let hier = DepthFunctionHandle::hierarchical_free()
        .depth_map(&ctx, &mu)
        .unwrap();
    assert_eq!(
        hier.values(),
        hierarchical_free_depth(&ctx, &mu).unwrap().values()
    );
    let fixed = DepthFunctionHandle::from_values("fixed", vec![r(1, 2); 4]);
    assert_eq!(
        fixed.depth_map(&ctx, &mu).unwrap().values(),
        vec![r(1, 2); 4]
    );
}

#[test]
fn measure_kinds_bind_to_a_context() {
    let ctx = chain_context();
    assert_eq!(
        make_measure(&MeasureKind::Uniform, &ctx).unwrap().weights(),
        vec![r(1, 3); 3]
    );
    let sample = Sample::from_labels(&ctx, &["g2", "g3"]).unwrap();
    assert_eq!(
        make_measure(&MeasureKind::Empirical(sample), &ctx)
            .unwrap()
            .weights(),
        vec![r(0, 1), r(1, 2), r(1, 2)]
    );
    assert_eq!(
        make_measure(
            &MeasureKind::Explicit(vec![r(1, 2), r(1, 4), r(1, 4)]),
            &ctx
        )
        .unwrap()
        .weights(),
        vec![r(1, 2), r(1, 4), r(1, 4)]
    );
    // Dimension mismatches are rejected at binding time.
    assert!(make_measure(&MeasureKind::Explicit(vec![r(1, 1)]), &ctx).is_err());
    let short = Sample::new(2, vec![0]).unwrap();
    assert!(make_measure(&MeasureKind::Empirical(short), &ctx).is_err());
}

#[test]
fn total_variation_and_family_diameter() {
    let a = DiscreteMeasure::uniform(2).unwrap();
    let b = DiscreteMeasure::from_counts(&[1, 0]).unwrap();
    let c = DiscreteMeasure::from_counts(&[0, 1]).unwrap();
    assert_eq!(a.total_variation(&b).unwrap(), r(1, 2));
    assert_eq!(b.total_variation(&c).unwrap(), r(1, 1));
    assert_eq!(a.total_variation(&a).unwrap(), r(0, 1));
    // Diameter is the largest pairwise distance.
    assert_eq!(
        measure_family_diameter(&[a.clone(), b.clone(), c.clone()]).unwrap(),
        r(1, 1)
    );
    assert_eq!(measure_family_diameter(&[a.clone(), b]).unwrap(), r(1, 2));
    assert_eq!(measure_family_diameter(&[a]).unwrap(), r(0, 1));
    assert!(measure_family_diameter(&[]).is_err());
}

#[test]
fn sampling_is_deterministic_under_a_fixed_seed() {
    let mu = DiscreteMeasure::from_counts(&[3, 0, 1, 2]).unwrap();
    let mut rng1 = ChaCha8Rng::seed_from_u64(7);
    let mut rng2 = ChaCha8Rng::seed_from_u64(7);
    let s1 = mu.draw_sample(&mut rng1, 200).unwrap();
    let s2 = mu.draw_sample(&mut rng2, 200).unwrap();
    assert_eq!(s1.items(), s2.items());
    assert_eq!(s1.len(), 200);
    // Only supported objects are ever drawn.
    assert!(s1.items().iter().all(|&g| g != 1));
    // The empirical frequencies land near the true weights.
    let counts = s1.counts();
    assert!(counts[0] > counts[2]);
    assert!(counts[3] > counts[2]);
}

#[test]
fn samples_can_be_extended_and_reduced() {
    let sample = Sample::new(4, vec![0, 2, 2]).unwrap();
    let bigger = sample.extended(1).unwrap();
    assert_eq!(bigger.counts(), vec![1, 1, 2, 0]);
    let smaller = sample.without_one(2).unwrap();
    assert_eq!(smaller.counts(), vec![1, 0, 1, 0]);
    assert!(sample.without_one(3).is_err());
    assert!(sample.extended(9).is_err());
    assert!(Sample::new(2, vec![5]).is_err());
    let ctx = chain_context();
    assert!(Sample::from_labels(&ctx, &["g1", "nope"]).is_err());
}

#[test]
fn random_contexts_agree_between_closed_form_and_both_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..60 {
        let ctx = random_context(&mut rng, 7, 7);
        let mu = random_measure(&mut rng, ctx.n_objects());
        for g in 0..ctx.n_objects() {
            let fast = tukey_depth(g, &ctx, &mu).unwrap();
            assert_eq!(
                tukey_oracle(g, &ctx, &mu, OracleMode::AttrSubsets).unwrap(),
                fast
            );
            assert_eq!(
                tukey_oracle(g, &ctx, &mu, OracleMode::Extents).unwrap(),
                fast
            );
            assert!(fast >= BigRational::zero() && fast <= BigRational::one());
        }
    }
}
