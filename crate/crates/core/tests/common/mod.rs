//! Shared fixtures: the small golden contexts used across the integration
//! suites, plus seeded random generators for corpus-style tests.
#![allow(dead_code)]

use fcadepth::{
    ratio, scale_hierarchical, scale_table, BigRational, Column, ColumnDirective, ColumnValues,
    DataTable, DiscreteMeasure, FormalContext, ObjectSet, ScaleKind, ScalingSpec,
};
use rand::Rng;

pub fn r(p: i64, q: i64) -> BigRational {
    ratio(p, q)
}

pub fn oset(universe: usize, members: &[usize]) -> ObjectSet {
    ObjectSet::from_indices(universe, members.iter().copied())
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

/// Five passengers with sex, class, and age columns.
pub fn titanic_table() -> DataTable {
    DataTable::new(
        names("g", 5),
        vec![
            Column {
                name: "sex".into(),
                values: ColumnValues::Categorical(
                    ["m", "f", "f", "f", "m"].map(String::from).to_vec(),
                ),
            },
            Column {
                name: "class".into(),
                values: ColumnValues::Categorical(
                    ["III", "III", "II", "I", "II"].map(String::from).to_vec(),
                ),
            },
            Column {
                name: "age".into(),
                values: ColumnValues::Numeric(vec![
                    r(69, 2),
                    r(47, 1),
                    r(67, 1),
                    r(23, 1),
                    r(35, 1),
                ]),
            },
        ],
    )
    .unwrap()
}

pub fn titanic_spec() -> ScalingSpec {
    ScalingSpec {
        directives: vec![
            ColumnDirective {
                column: "sex".into(),
                scale: ScaleKind::Nominal,
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
    }
}

pub fn titanic_context() -> FormalContext {
    scale_table(&titanic_table(), &titanic_spec()).unwrap()
}

/// The age column alone, interordinally scaled.
pub fn titanic_age_only_context() -> FormalContext {
    let table = DataTable::new(
        names("g", 5),
        vec![Column {
            name: "age".into(),
            values: ColumnValues::Numeric(vec![r(69, 2), r(47, 1), r(67, 1), r(23, 1), r(35, 1)]),
        }],
    )
    .unwrap();
    let spec = ScalingSpec {
        directives: vec![ColumnDirective {
            column: "age".into(),
            scale: ScaleKind::Interordinal { thresholds: None },
        }],
    };
    scale_table(&table, &spec).unwrap()
}

/// The closed object sets of the age-only interordinal context.
pub fn titanic_age_only_extents() -> Vec<ObjectSet> {
    [
        &[][..],
        &[0],
        &[1],
        &[2],
        &[3],
        &[4],
        &[0, 3],
        &[0, 4],
        &[1, 4],
        &[1, 2],
        &[0, 3, 4],
        &[0, 1, 4],
        &[1, 2, 4],
        &[0, 1, 3, 4],
        &[0, 1, 2, 4],
        &[0, 1, 2, 3, 4],
    ]
    .iter()
    .map(|m| oset(5, m))
    .collect()
}

/// The closed object sets of the full three-column context (sex, class, age).
pub fn titanic_full_extents() -> Vec<ObjectSet> {
    let mut family = titanic_age_only_extents();
    for m in [&[0usize, 1][..], &[1, 3], &[2, 4], &[1, 2, 3], &[1, 2, 4]] {
        family.push(oset(5, m));
    }
    family.retain({
        let mut seen = std::collections::HashSet::new();
        move |s| seen.insert(s.clone())
    });
    family
}

/// Two-level classification context: four objects, six attributes
/// (a1, b1, a1a2, a1b2, b1a2, b1b2).
pub fn tree_context() -> FormalContext {
    let paths: Vec<Vec<String>> = vec![
        vec!["a1".into(), "a1a2".into()],
        vec!["a1".into(), "a1b2".into()],
        vec!["b1".into(), "b1a2".into()],
        vec!["b1".into(), "b1b2".into()],
    ];
    scale_hierarchical(
        ["a1a2", "a1b2", "b1a2", "b1b2"].map(String::from).to_vec(),
        &paths,
    )
    .unwrap()
}

pub fn tree_extents() -> Vec<ObjectSet> {
    [
        &[][..],
        &[0],
        &[1],
        &[2],
        &[3],
        &[0, 1],
        &[2, 3],
        &[0, 1, 2, 3],
    ]
    .iter()
    .map(|m| oset(4, m))
    .collect()
}

/// Three objects each holding one private attribute.
pub fn private_attrs_context() -> FormalContext {
    FormalContext::from_index_rows(names("g", 3), names("m", 3), &[vec![0], vec![1], vec![2]])
        .unwrap()
}

/// Four attributes; g2 and g3 overlap on m3, g1 and g3 on m4.
pub fn equal_masses_k1() -> FormalContext {
    FormalContext::from_index_rows(
        names("g", 3),
        names("m", 4),
        &[vec![0, 3], vec![1, 2], vec![2, 3]],
    )
    .unwrap()
}

/// Same attribute masses as `equal_masses_k1`, but g3's row covers g2's.
pub fn equal_masses_k2() -> FormalContext {
    FormalContext::from_index_rows(
        names("g", 3),
        names("m", 4),
        &[vec![0, 3], vec![1, 2], vec![1, 2, 3]],
    )
    .unwrap()
}

/// g3's row covers both other rows and is full.
pub fn covering_row_context() -> FormalContext {
    FormalContext::from_index_rows(
        names("g", 3),
        names("m", 4),
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 2, 3]],
    )
    .unwrap()
}

/// g3's row strictly covers g2's; g1 is isolated.
pub fn chain_context() -> FormalContext {
    FormalContext::from_index_rows(
        names("g", 3),
        names("m", 3),
        &[vec![0], vec![1], vec![1, 2]],
    )
    .unwrap()
}

/// Seeded random context with `1..=max_objects` objects, `1..=max_attributes`
/// attributes, and fair-coin incidences.
pub fn random_context(
    rng: &mut impl Rng,
    max_objects: usize,
    max_attributes: usize,
) -> FormalContext {
    let n_g = rng.gen_range(1..=max_objects);
    let n_m = rng.gen_range(1..=max_attributes);
    let mut pairs = Vec::new();
    for g in 0..n_g {
        for m in 0..n_m {
            if rng.gen_bool(0.5) {
                pairs.push((g, m));
            }
        }
    }
    FormalContext::new(names("g", n_g), names("m", n_m), &pairs).unwrap()
}

/// Seeded random rational measure: integer weights in `0..=6`, at least one
/// of them positive.
pub fn random_measure(rng: &mut impl Rng, n_objects: usize) -> DiscreteMeasure {
    loop {
        let counts: Vec<usize> = (0..n_objects).map(|_| rng.gen_range(0..=6)).collect();
        if counts.iter().any(|&c| c > 0) {
            return DiscreteMeasure::from_counts(&counts).unwrap();
        }
    }
}

/// Checks that two extent collections contain exactly the same sets.
pub fn same_family(actual: &[ObjectSet], expected: &[ObjectSet]) -> bool {
    let mut a: Vec<_> = actual.to_vec();
    let mut e: Vec<_> = expected.to_vec();
    a.sort();
    e.sort();
    a == e
}
