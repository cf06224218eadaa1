//! Context builders: nominal/ordinal/interordinal tables, hierarchies,
//! partial orders, and halfspace approximations of point clouds.

mod common;

use common::*;
use fcadepth::{
    all_extents, axis_directions, scale_halfspaces, scale_hierarchical, scale_posets,
    scale_posets_with, scale_table, Column, ColumnDirective, ColumnValues, DataTable, Direction,
    ObjectSet, PartialOrder, PosetScaleOptions, ScaleKind, ScalingSpec,
};

#[test]
fn titanic_scaling_produces_the_expected_attributes() {
    let ctx = titanic_context();
    assert_eq!(ctx.n_objects(), 5);
    assert_eq!(ctx.n_attributes(), 15);
    let expected = [
        "sex=f",
        "sex=m",
        "class=I",
        "class=II",
        "class=III",
        "age≤23",
        "age≤34.5",
        "age≤35",
        "age≤47",
        "age≤67",
        "age≥23",
        "age≥34.5",
        "age≥35",
        "age≥47",
        "age≥67",
    ];
    assert_eq!(ctx.attribute_labels(), expected.map(String::from));
    // Spot-check one full row: g5 is male, class II, age 35.
    let g5 = ctx.object_index("g5").unwrap();
    let row: Vec<&str> = ctx
        .row(g5)
        .iter()
        .map(|m| ctx.attribute_labels()[m].as_str())
        .collect();
    assert_eq!(
        row,
        [
            "sex=m",
            "class=II",
            "age≤35",
            "age≤47",
            "age≤67",
            "age≥23",
            "age≥34.5",
            "age≥35"
        ]
    );
}

#[test]
fn full_and_age_only_titanic_extent_families() {
    let full = all_extents(&titanic_context()).unwrap();
    assert!(same_family(full.as_slice(), &titanic_full_extents()));
    let age_only = all_extents(&titanic_age_only_context()).unwrap();
    assert!(same_family(
        age_only.as_slice(),
        &titanic_age_only_extents()
    ));
    // The richer scaling refines the family.
    for e in age_only.iter() {
        assert!(full.contains(e), "age-only extent {e} lost by full scaling");
    }
}

#[test]
fn nominal_scaling_partitions_the_objects() {
    let table = DataTable::new(
        names("g", 4),
        vec![Column {
            name: "color".into(),
            values: ColumnValues::Categorical(
                ["red", "blue", "red", "green"].map(String::from).to_vec(),
            ),
        }],
    )
    .unwrap();
    let spec = ScalingSpec {
        directives: vec![ColumnDirective {
            column: "color".into(),
            scale: ScaleKind::Nominal,
        }],
    };
    let ctx = scale_table(&table, &spec).unwrap();
    assert_eq!(
        ctx.attribute_labels(),
        ["color=blue", "color=green", "color=red"].map(String::from)
    );
    let blocks: Vec<ObjectSet> = (0..3).map(|m| ctx.col(m).clone()).collect();
    assert_eq!(blocks[0], oset(4, &[1]));
    assert_eq!(blocks[1], oset(4, &[3]));
    assert_eq!(blocks[2], oset(4, &[0, 2]));
    // Exactly one attribute per object: a partition.
    for g in 0..4 {
        assert_eq!(ctx.row(g).len(), 1);
    }
}

fn age_table() -> DataTable {
    DataTable::new(
        names("g", 5),
        vec![Column {
            name: "age".into(),
            values: ColumnValues::Numeric(vec![r(69, 2), r(47, 1), r(67, 1), r(23, 1), r(35, 1)]),
        }],
    )
    .unwrap()
}

fn age_spec(scale: ScaleKind) -> ScalingSpec {
    ScalingSpec {
        directives: vec![ColumnDirective {
            column: "age".into(),
            scale,
        }],
    }
}

#[test]
fn ordinal_extents_form_a_chain_inside_the_interordinal_family() {
    let ordinal = scale_table(
        &age_table(),
        &age_spec(ScaleKind::Ordinal {
            thresholds: None,
            direction: Direction::Leq,
        }),
    )
    .unwrap();
    let inter = scale_table(
        &age_table(),
        &age_spec(ScaleKind::Interordinal { thresholds: None }),
    )
    .unwrap();

    let chain = all_extents(&ordinal).unwrap();
    let family = all_extents(&inter).unwrap();
    // Chain: totally ordered by inclusion.
    for a in chain.iter() {
        for b in chain.iter() {
            assert!(a.is_subset(b) || b.is_subset(a));
        }
    }
    for e in chain.iter() {
        assert!(family.contains(e));
    }
    assert!(family.len() > chain.len());
}

#[test]
fn ordinal_scaling_can_keep_lower_bounds() {
    let ctx = scale_table(
        &age_table(),
        &age_spec(ScaleKind::Ordinal {
            thresholds: None,
            direction: Direction::Geq,
        }),
    )
    .unwrap();
    assert_eq!(
        ctx.attribute_labels(),
        ["age≥23", "age≥34.5", "age≥35", "age≥47", "age≥67"].map(String::from)
    );
    assert_eq!(ctx.col(4), &oset(5, &[2]));
}

#[test]
fn explicit_thresholds_are_validated_and_used() {
    let ctx = scale_table(
        &age_table(),
        &age_spec(ScaleKind::Interordinal {
            thresholds: Some(vec![r(30, 1), r(40, 1)]),
        }),
    )
    .unwrap();
    assert_eq!(
        ctx.attribute_labels(),
        ["age≤30", "age≤40", "age≥30", "age≥40"].map(String::from)
    );
    assert_eq!(ctx.col(0), &oset(5, &[3]));
    assert_eq!(ctx.col(1), &oset(5, &[0, 3, 4]));

    for bad in [vec![r(30, 1), r(30, 1)], vec![r(40, 1), r(30, 1)]] {
        let err = scale_table(
            &age_table(),
            &age_spec(ScaleKind::Interordinal {
                thresholds: Some(bad),
            }),
        )
        .unwrap_err();
        assert!(err.to_string().contains("strictly increasing"), "{err}");
    }
}

#[test]
fn directive_kind_must_match_column_kind() {
    let err = scale_table(
        &titanic_table(),
        &ScalingSpec {
            directives: vec![
                ColumnDirective {
                    column: "sex".into(),
                    scale: ScaleKind::Ordinal {
                        thresholds: None,
                        direction: Direction::Leq,
                    },
                },
                ColumnDirective {
                    column: "class".into(),
                    scale: ScaleKind::Nominal,
                },
                ColumnDirective {
                    column: "age".into(),
                    scale: ScaleKind::Interordinal { thresholds: None },
                },
            ],
        },
    )
    .unwrap_err();
    assert!(err.to_string().contains("sex"), "{err}");
}

#[test]
fn every_column_needs_exactly_one_directive() {
    let mut spec = titanic_spec();
    spec.directives.remove(0);
    let err = scale_table(&titanic_table(), &spec).unwrap_err();
    assert!(err.to_string().contains("sex"), "{err}");

    let mut doubled = titanic_spec();
    doubled.directives.push(ColumnDirective {
        column: "age".into(),
        scale: ScaleKind::Nominal,
    });
    assert!(scale_table(&titanic_table(), &doubled).is_err());
}

#[test]
fn apposition_order_does_not_change_the_extent_family() {
    let table = titanic_table();
    let reordered = DataTable::new(
        names("g", 5),
        vec![
            table.column("age").unwrap().clone(),
            table.column("sex").unwrap().clone(),
            table.column("class").unwrap().clone(),
        ],
    )
    .unwrap();
    let a = all_extents(&scale_table(&table, &titanic_spec()).unwrap()).unwrap();
    let b = all_extents(&scale_table(&reordered, &titanic_spec()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn interordinal_scaling_leaves_no_full_row() {
    let ctx = titanic_age_only_context();
    for g in 0..ctx.n_objects() {
        assert!(!ctx.row(g).is_full());
    }
}

#[test]
fn single_poset_scaling_matches_the_definition() {
    let chain = PartialOrder::new(2, &[(0, 1)]).unwrap();
    let ctx = scale_posets(2, &[chain]).unwrap();
    assert_eq!(
        ctx.attribute_labels(),
        ["1≺2", "2≺1", "¬(1≺2)", "¬(2≺1)"].map(String::from)
    );
    let held: Vec<&str> = ctx
        .row(0)
        .iter()
        .map(|m| ctx.attribute_labels()[m].as_str())
        .collect();
    assert_eq!(held, ["1≺2", "¬(2≺1)"]);

    let antichain = PartialOrder::new(2, &[]).unwrap();
    let ctx = scale_posets(2, &[antichain]).unwrap();
    let held: Vec<&str> = ctx
        .row(0)
        .iter()
        .map(|m| ctx.attribute_labels()[m].as_str())
        .collect();
    assert_eq!(held, ["¬(1≺2)", "¬(2≺1)"]);
}

/// All strict partial orders over three items, by filtering the 64 subsets
/// of the six ordered pairs.
fn all_posets_on_three_items() -> Vec<PartialOrder> {
    let pairs: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut posets = Vec::new();
    for mask in 0u32..1 << 6 {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if let Ok(p) = PartialOrder::new(3, &chosen) {
            posets.push(p);
        }
    }
    posets
}

#[test]
fn there_are_nineteen_posets_on_three_items() {
    let posets = all_posets_on_three_items();
    assert_eq!(posets.len(), 19);
    let ctx = scale_posets(3, &posets).unwrap();
    assert_eq!(ctx.n_objects(), 19);
    assert_eq!(ctx.n_attributes(), 12); // 2 · 3 · 2
    for g in 0..19 {
        assert_eq!(ctx.row(g).len(), 6, "one attribute per ordered pair");
    }
    // Exactly one of i≺j and ¬(i≺j) per pair.
    for g in 0..19 {
        for pair in 0..6 {
            let positive = ctx.row(g).contains(pair);
            let negative = ctx.row(g).contains(6 + pair);
            assert!(positive != negative);
        }
    }
}

#[test]
fn poset_validation_names_the_violated_axiom() {
    let err = PartialOrder::new(2, &[(0, 0)]).unwrap_err();
    assert!(err.to_string().contains("irreflexivity"), "{err}");
    let err = PartialOrder::new(2, &[(0, 1), (1, 0)]).unwrap_err();
    assert!(err.to_string().contains("antisymmetry"), "{err}");
    let err = PartialOrder::new(3, &[(0, 1), (1, 2)]).unwrap_err();
    assert!(err.to_string().contains("transitivity"), "{err}");
    // The transitive closure of the same pairs is accepted.
    assert!(PartialOrder::new(3, &[(0, 1), (1, 2), (0, 2)]).is_ok());
}

#[test]
fn non_dominance_block_can_be_dropped() {
    let chain = PartialOrder::new(2, &[(0, 1)]).unwrap();
    let options = PosetScaleOptions {
        include_non_dominance: false,
        ..PosetScaleOptions::default()
    };
    let ctx = scale_posets_with(2, &[chain], &options).unwrap();
    assert_eq!(ctx.attribute_labels(), ["1≺2", "2≺1"].map(String::from));
}

#[test]
fn poset_labels_and_item_names_are_configurable() {
    let chain = PartialOrder::new(2, &[(0, 1)]).unwrap();
    let options = PosetScaleOptions {
        poset_labels: Some(vec!["classifierA".into()]),
        item_names: Some(vec!["svm".into(), "tree".into()]),
        include_non_dominance: true,
    };
    let ctx = scale_posets_with(2, &[chain], &options).unwrap();
    assert_eq!(ctx.object_labels(), ["classifierA".to_string()]);
    assert_eq!(
        ctx.attribute_labels(),
        ["svm≺tree", "tree≺svm", "¬(svm≺tree)", "¬(tree≺svm)"].map(String::from)
    );
}

#[test]
fn one_dimensional_halfspaces_match_interordinal_scaling() {
    let values = [r(0, 1), r(2, 1), r(5, 1), r(9, 1)];
    let points: Vec<Vec<_>> = values.iter().map(|v| vec![v.clone()]).collect();
    let halfspace_ctx = scale_halfspaces(&points, &axis_directions(1), None).unwrap();

    let table = DataTable::new(
        names("x", 4),
        vec![Column {
            name: "v".into(),
            values: ColumnValues::Numeric(values.to_vec()),
        }],
    )
    .unwrap();
    let inter_ctx = scale_table(
        &table,
        &ScalingSpec {
            directives: vec![ColumnDirective {
                column: "v".into(),
                scale: ScaleKind::Interordinal { thresholds: None },
            }],
        },
    )
    .unwrap();

    assert_eq!(
        all_extents(&halfspace_ctx).unwrap(),
        all_extents(&inter_ctx).unwrap()
    );
}

#[test]
fn middle_of_three_collinear_points_is_implied_by_the_endpoints() {
    let points = vec![
        vec![r(0, 1), r(0, 1)],
        vec![r(1, 1), r(1, 1)],
        vec![r(2, 1), r(2, 1)],
    ];
    let ctx = scale_halfspaces(&points, &axis_directions(2), None).unwrap();
    let closed = ctx.closure(&oset(3, &[0, 2])).unwrap();
    assert!(closed.contains(1));
    assert_eq!(closed, oset(3, &[0, 1, 2]));
    // The endpoints are not implied by the middle point.
    assert_eq!(ctx.closure(&oset(3, &[1])).unwrap(), oset(3, &[1]));
}

#[test]
fn single_point_cloud_has_one_extent() {
    let ctx = scale_halfspaces(&[vec![r(3, 1)]], &axis_directions(1), None).unwrap();
    let family = all_extents(&ctx).unwrap();
    assert_eq!(family.len(), 1);
    assert!(family.as_slice()[0].is_full());
}

#[test]
fn halfspace_dimensions_must_agree() {
    let err = scale_halfspaces(&[vec![r(0, 1), r(1, 1)]], &[vec![r(1, 1)]], None).unwrap_err();
    assert!(
        err.to_string().contains("dimension") || err.to_string().contains("length"),
        "{err}"
    );
}

#[test]
fn hierarchical_scaling_reproduces_the_two_level_incidence() {
    let ctx = tree_context();
    assert_eq!(
        ctx.attribute_labels(),
        ["a1", "b1", "a1a2", "a1b2", "b1a2", "b1b2"].map(String::from)
    );
    let expected_rows = [vec![0usize, 2], vec![0, 3], vec![1, 4], vec![1, 5]];
    for (g, expected) in expected_rows.iter().enumerate() {
        assert_eq!(ctx.row(g).indices(), *expected);
    }
}

#[test]
fn depth_one_hierarchy_equals_nominal_scaling() {
    let paths: Vec<Vec<String>> = ["a", "b", "a", "c"]
        .iter()
        .map(|n| vec![n.to_string()])
        .collect();
    let hier = scale_hierarchical(names("g", 4), &paths).unwrap();

    let table = DataTable::new(
        names("g", 4),
        vec![Column {
            name: "cat".into(),
            values: ColumnValues::Categorical(["a", "b", "a", "c"].map(String::from).to_vec()),
        }],
    )
    .unwrap();
    let nominal = scale_table(
        &table,
        &ScalingSpec {
            directives: vec![ColumnDirective {
                column: "cat".into(),
                scale: ScaleKind::Nominal,
            }],
        },
    )
    .unwrap();

    assert_eq!(hier.n_attributes(), nominal.n_attributes());
    for m in 0..hier.n_attributes() {
        assert_eq!(hier.col(m), nominal.col(m));
    }
    assert_eq!(all_extents(&hier).unwrap(), all_extents(&nominal).unwrap());
}

#[test]
fn three_level_tree_extents_are_the_node_sets() {
    // Two branches per node, three levels: eight leaf objects.
    let mut labels = Vec::new();
    let mut paths = Vec::new();
    for top in ["x", "y"] {
        for mid in ["A", "B"] {
            for leaf in ["1", "2"] {
                labels.push(format!("{top}{mid}{leaf}"));
                paths.push(vec![
                    top.to_string(),
                    format!("{top}{mid}"),
                    format!("{top}{mid}{leaf}"),
                ]);
            }
        }
    }
    let ctx = scale_hierarchical(labels, &paths).unwrap();
    assert_eq!(ctx.n_attributes(), 2 + 4 + 8);
    let family = all_extents(&ctx).unwrap();

    let mut expected: Vec<ObjectSet> = vec![ObjectSet::empty(8), ObjectSet::full(8)];
    for m in 0..ctx.n_attributes() {
        expected.push(ctx.col(m).clone());
    }
    assert!(same_family(family.as_slice(), &expected));
    assert_eq!(family.len(), 16);
}

#[test]
fn inconsistent_hierarchies_are_rejected() {
    // Same node under two parents.
    let err = scale_hierarchical(
        names("g", 2),
        &[vec!["a".into(), "c".into()], vec!["b".into(), "c".into()]],
    )
    .unwrap_err();
    assert!(err.to_string().contains("two different parents"), "{err}");

    // Same node at two levels.
    let err = scale_hierarchical(
        names("g", 2),
        &[vec!["a".into(), "b".into()], vec!["b".into()]],
    )
    .unwrap_err();
    assert!(err.to_string().contains("two different levels"), "{err}");

    // Empty paths are invalid.
    assert!(scale_hierarchical(names("g", 1), &[vec![]]).is_err());
}
