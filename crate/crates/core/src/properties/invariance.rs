//! Invariance properties: depth must depend only on the closed object sets
//! and their masses (P1), and duplicated objects must tie (P2).

use std::time::Instant;

use serde_json::json;

use crate::bitset::ObjectSet;
use crate::context::FormalContext;
use crate::depth::DepthFunctionHandle;
use crate::error::{FcaError, Result};
use crate::extents::all_extents;
use crate::measure::DiscreteMeasure;
use crate::properties::{finish, set_labels, PropertyReport, Verdict};
use crate::rational::rational_str;

/// Bound on |G| for the exhaustive bijection search of [`check_p1_search`].
pub const P1_SEARCH_CAP: usize = 7;

fn validate_bijection(n: usize, bijection: &[usize]) -> Result<()> {
    if bijection.len() != n {
        return Err(FcaError::invalid(format!(
            "bijection has {} entries for {} objects",
            bijection.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &img in bijection {
        if img >= n || seen[img] {
            return Err(FcaError::invalid("bijection is not a permutation"));
        }
        seen[img] = true;
    }
    Ok(())
}

/// Outcome of checking the two premises of depth invariance for one
/// candidate bijection.
enum PremiseCheck {
    Ok,
    ExtentMismatch(ObjectSet, &'static str),
    MassMismatch(ObjectSet),
}

fn check_premises(
    ctx1: &FormalContext,
    ctx2: &FormalContext,
    m1: &DiscreteMeasure,
    m2: &DiscreteMeasure,
    bijection: &[usize],
) -> Result<PremiseCheck> {
    let fam1 = all_extents(ctx1)?;
    let fam2 = all_extents(ctx2)?;
    for e in &fam1 {
        let image = e.map_indices(|g| bijection[g]);
        if !fam2.contains(&image) {
            return Ok(PremiseCheck::ExtentMismatch(
                e.clone(),
                "closed in the first context but its image is not closed in the second",
            ));
        }
    }
    if fam1.len() != fam2.len() {
        // The forward images are |fam1| distinct members of fam2, so some
        // extent of ctx2 has no preimage; find one for the witness.
        let inverse: Vec<usize> = {
            let mut inv = vec![0; bijection.len()];
            for (g, &img) in bijection.iter().enumerate() {
                inv[img] = g;
            }
            inv
        };
        for f in &fam2 {
            let preimage = f.map_indices(|g| inverse[g]);
            if !fam1.contains(&preimage) {
                return Ok(PremiseCheck::ExtentMismatch(
                    preimage,
                    "not closed in the first context but its image is closed in the second",
                ));
            }
        }
    }
    for e in &fam1 {
        let image = e.map_indices(|g| bijection[g]);
        if m1.of(e)? != m2.of(&image)? {
            return Ok(PremiseCheck::MassMismatch(e.clone()));
        }
    }
    Ok(PremiseCheck::Ok)
}

fn order_isomorphism_violation(
    values1: &[num::BigRational],
    values2: &[num::BigRational],
    bijection: &[usize],
) -> Option<(usize, usize)> {
    let n = values1.len();
    for g in 0..n {
        for h in 0..n {
            let le1 = values1[g] <= values1[h];
            let le2 = values2[bijection[g]] <= values2[bijection[h]];
            if le1 != le2 {
                return Some((g, h));
            }
        }
    }
    None
}

/// Checks invariance of a depth function under one candidate object
/// bijection between two contexts: if the bijection maps the closed sets of
/// the first context exactly onto those of the second and preserves their
/// masses, the two depth maps must be order-isomorphic along it.
pub fn check_p1(
    ctx1: &FormalContext,
    ctx2: &FormalContext,
    m1: &DiscreteMeasure,
    m2: &DiscreteMeasure,
    bijection: &[usize],
    depth_fn: &DepthFunctionHandle,
) -> Result<PropertyReport> {
    let start = Instant::now();
    if ctx1.n_objects() != ctx2.n_objects() {
        return Err(FcaError::invalid(format!(
            "contexts have {} and {} objects",
            ctx1.n_objects(),
            ctx2.n_objects()
        )));
    }
    validate_bijection(ctx1.n_objects(), bijection)?;

    match check_premises(ctx1, ctx2, m1, m2, bijection)? {
        PremiseCheck::ExtentMismatch(set, why) => {
            let report = PropertyReport::new("P1", Verdict::PremiseNotMet)
                .with_witness(json!({
                    "object_set": set_labels(ctx1, &set),
                    "problem": why,
                }))
                .with_note("the bijection does not carry the closed sets onto each other");
            return Ok(finish(start, report));
        }
        PremiseCheck::MassMismatch(e) => {
            let image = e.map_indices(|g| bijection[g]);
            let report = PropertyReport::new("P1", Verdict::PremiseNotMet)
                .with_witness(json!({
                    "extent": set_labels(ctx1, &e),
                    "mass": rational_str(&m1.of(&e)?),
                    "image": set_labels(ctx2, &image),
                    "image_mass": rational_str(&m2.of(&image)?),
                }))
                .with_note("the bijection does not preserve the measure of every extent");
            return Ok(finish(start, report));
        }
        PremiseCheck::Ok => {}
    }

    let map1 = depth_fn.depth_map(ctx1, m1)?;
    let map2 = depth_fn.depth_map(ctx2, m2)?;
    let report = match order_isomorphism_violation(map1.values(), map2.values(), bijection) {
        Some((g, h)) => PropertyReport::new("P1", Verdict::Fails).with_witness(json!({
            "pair": [ctx1.object_labels()[g].clone(), ctx1.object_labels()[h].clone()],
            "depths": [rational_str(map1.value(g)), rational_str(map1.value(h))],
            "image_pair": [
                ctx2.object_labels()[bijection[g]].clone(),
                ctx2.object_labels()[bijection[h]].clone(),
            ],
            "image_depths": [
                rational_str(map2.value(bijection[g])),
                rational_str(map2.value(bijection[h])),
            ],
        })),
        None => PropertyReport::new("P1", Verdict::Holds)
            .with_note("extent families and masses correspond; depth order is preserved"),
    };
    Ok(finish(start, report))
}

/// Exhaustive variant of [`check_p1`]: tries every bijection between the two
/// object sets. Fails if any extent- and mass-preserving bijection breaks the
/// depth order; premise-not-met if no bijection preserves extents and masses.
pub fn check_p1_search(
    ctx1: &FormalContext,
    ctx2: &FormalContext,
    m1: &DiscreteMeasure,
    m2: &DiscreteMeasure,
    depth_fn: &DepthFunctionHandle,
) -> Result<PropertyReport> {
    let start = Instant::now();
    let n = ctx1.n_objects();
    if ctx2.n_objects() != n {
        return Err(FcaError::invalid(format!(
            "contexts have {} and {} objects",
            n,
            ctx2.n_objects()
        )));
    }
    if n > P1_SEARCH_CAP {
        return Err(FcaError::CapExceeded {
            operation: "invariance bijection search",
            quantity: "number of objects",
            actual: n,
            cap: P1_SEARCH_CAP,
        });
    }

    let map1 = depth_fn.depth_map(ctx1, m1)?;
    let map2 = depth_fn.depth_map(ctx2, m2)?;
    let mut admissible = 0usize;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if matches!(check_premises(ctx1, ctx2, m1, m2, &perm)?, PremiseCheck::Ok) {
            admissible += 1;
            if let Some((g, h)) = order_isomorphism_violation(map1.values(), map2.values(), &perm) {
                let mapping: Vec<[String; 2]> = (0..n)
                    .map(|g| {
                        [
                            ctx1.object_labels()[g].clone(),
                            ctx2.object_labels()[perm[g]].clone(),
                        ]
                    })
                    .collect();
                let report = PropertyReport::new("P1", Verdict::Fails).with_witness(json!({
                    "bijection": mapping,
                    "pair": [ctx1.object_labels()[g].clone(), ctx1.object_labels()[h].clone()],
                    "depths": [rational_str(map1.value(g)), rational_str(map1.value(h))],
                    "image_depths": [
                        rational_str(map2.value(perm[g])),
                        rational_str(map2.value(perm[h])),
                    ],
                }));
                return Ok(finish(start, report));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let report = if admissible == 0 {
        PropertyReport::new("P1", Verdict::PremiseNotMet)
            .with_note("no bijection preserves the extent family and its masses")
    } else {
        PropertyReport::new("P1", Verdict::Holds).with_note(format!(
            "depth order preserved along all {admissible} admissible bijections"
        ))
    };
    Ok(finish(start, report))
}

/// Advances to the lexicographically next permutation; false once wrapped.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Objects with identical attribute rows must receive identical depths.
pub fn check_p2(
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
    depth_fn: &DepthFunctionHandle,
) -> Result<PropertyReport> {
    let start = Instant::now();
    let classification = ctx.classify_objects();
    let groups = classification.proper_duplicate_groups();
    if groups.is_empty() {
        let report = PropertyReport::new("P2", Verdict::Holds)
            .with_note("no two objects share an attribute row; holds vacuously");
        return Ok(finish(start, report));
    }
    let map = depth_fn.depth_map(ctx, measure)?;
    for group in groups {
        let first = group[0];
        for &g in &group[1..] {
            if map.value(g) != map.value(first) {
                let report = PropertyReport::new("P2", Verdict::Fails).with_witness(json!({
                    "duplicates": [
                        ctx.object_labels()[first].clone(),
                        ctx.object_labels()[g].clone(),
                    ],
                    "depths": [rational_str(map.value(first)), rational_str(map.value(g))],
                }));
                return Ok(finish(start, report));
            }
        }
    }
    let report = PropertyReport::new("P2", Verdict::Holds)
        .with_note("all duplicate groups are tied in depth");
    Ok(finish(start, report))
}
