//! Symmetry: under a measure-preserving involution of the objects, a point
//! lying in the closure of every orbit pair must be deepest.

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

/// Checks the symmetry-center property (`SYM`): given an involution `i` of
/// the objects that preserves the measure of every closed set, and a
/// candidate center `s` with `s ∈ γ({g, i(g)})` for every `g`, the depth of
/// `s` must be maximal. Either premise failing yields `premise-not-met`.
pub fn check_symmetry_center(
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
    involution: &[usize],
    s: usize,
    depth_fn: &DepthFunctionHandle,
) -> Result<PropertyReport> {
    let start = Instant::now();
    let n = ctx.n_objects();
    if involution.len() != n {
        return Err(FcaError::invalid(format!(
            "involution has {} entries for {n} objects",
            involution.len()
        )));
    }
    for (g, &img) in involution.iter().enumerate() {
        if img >= n {
            return Err(FcaError::invalid("involution maps outside the objects"));
        }
        if involution[img] != g {
            return Err(FcaError::invalid(format!(
                "map is not an involution: {} → {} → {}",
                ctx.object_labels()[g],
                ctx.object_labels()[img],
                ctx.object_labels()[involution[img]]
            )));
        }
    }
    if s >= n {
        return Err(FcaError::invalid(format!(
            "candidate center index {s} out of range"
        )));
    }

    // Premise 1: the involution preserves the mass of every closed set.
    for extent in &all_extents(ctx)? {
        let image = extent.map_indices(|g| involution[g]);
        let original_mass = measure.of(extent)?;
        let image_mass = measure.of(&image)?;
        if original_mass != image_mass {
            let report = PropertyReport::new("SYM", Verdict::PremiseNotMet)
                .with_witness(json!({
                    "extent": set_labels(ctx, extent),
                    "mass": rational_str(&original_mass),
                    "image": set_labels(ctx, &image),
                    "image_mass": rational_str(&image_mass),
                }))
                .with_note("the involution does not preserve the measure of every closed set");
            return Ok(finish(start, report));
        }
    }

    // Premise 2: s lies in the closure of every orbit pair {g, i(g)}.
    for (g, &image) in involution.iter().enumerate() {
        let pair = ObjectSet::from_indices(n, [g, image]);
        let closed = ctx.closure(&pair)?;
        if !closed.contains(s) {
            let report = PropertyReport::new("SYM", Verdict::PremiseNotMet)
                .with_witness(json!({
                    "candidate": ctx.object_labels()[s].clone(),
                    "orbit_pair": set_labels(ctx, &pair),
                    "closure": set_labels(ctx, &closed),
                }))
                .with_note("the candidate center lies outside the closure of an orbit pair");
            return Ok(finish(start, report));
        }
    }

    let map = depth_fn.depth_map(ctx, measure)?;
    let max = map.values().iter().max().expect("non-empty context");
    let report = if map.value(s) == max {
        PropertyReport::new("SYM", Verdict::Holds).with_witness(json!({
            "center": ctx.object_labels()[s].clone(),
            "depth": rational_str(max),
        }))
    } else {
        PropertyReport::new("SYM", Verdict::Fails)
            .with_witness(json!({
                "center": ctx.object_labels()[s].clone(),
                "depth": rational_str(map.value(s)),
                "max_depth": rational_str(max),
                "deepest": set_labels(ctx, &map.argmax_set()),
            }))
            .with_note(
                "a depth function that is invariant on extents and has a star center cannot \
                 fail here; the supplied depth function lacks one of those properties",
            )
    };
    Ok(finish(start, report))
}
