//! Constructive weak freeness: for any quasiconcave target depth map, build
//! a measure under which the generalised Tukey depth reproduces the target
//! up to an isotone relabeling of its values.

use std::time::Instant;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use serde_json::json;

use crate::context::FormalContext;
use crate::depth::{contour_sets, tukey_depths, DepthMap};
use crate::error::{FcaError, Result};
use crate::measure::DiscreteMeasure;
use crate::properties::{finish, PropertyReport, Verdict};
use crate::rational::rational_str;

/// Result of the weakly-free construction.
#[derive(Debug, Clone)]
pub struct WeaklyFreeConstruction {
    /// The constructed measure.
    pub measure: DiscreteMeasure,
    /// Generalised Tukey depth under the constructed measure.
    pub tukey: DepthMap,
    /// Isotone relabeling: pairs `(tukey value, target value)` sorted by the
    /// first component; applying it to the Tukey depths recovers the target.
    pub level_map: Vec<(BigRational, BigRational)>,
    /// `WFREE` report; `holds` when the recovery was verified exactly.
    pub report: PropertyReport,
}

/// Builds a measure such that the generalised Tukey depth under it is an
/// isotone relabeling of the given quasiconcave target depth map.
///
/// Objects are layered by increasing target value. The lowest layer gets
/// unnormalized weight 1 per object; each subsequent layer's per-object
/// weight is the total weight of all lower layers plus one, which forces the
/// Tukey depths of higher layers strictly above those of lower layers. The
/// recovery `f ∘ T = target` is verified exactly and reported.
pub fn construct_weakly_free(
    ctx: &FormalContext,
    target: &DepthMap,
) -> Result<WeaklyFreeConstruction> {
    let start = Instant::now();
    let n = ctx.n_objects();
    if target.len() != n {
        return Err(FcaError::DimensionMismatch {
            expected: n,
            got: target.len(),
        });
    }
    if n == 0 {
        return Err(FcaError::invalid("empty context"));
    }

    // The construction is only valid for quasiconcave targets; verify via
    // closed upper-level sets.
    for (alpha, contour) in contour_sets(ctx, target)? {
        let closed = ctx.closure(&contour)?;
        if closed != contour {
            return Err(FcaError::invalid(format!(
                "target depth map is not quasiconcave: its upper-level set at {} is not closed",
                rational_str(&alpha)
            )));
        }
    }

    // Layers by increasing target value.
    let levels = target.image();
    let layers: Vec<Vec<usize>> = levels
        .iter()
        .map(|lvl| (0..n).filter(|&g| target.value(g) == lvl).collect())
        .collect();

    let mut weights = vec![BigInt::one(); n];
    let mut lower_total = BigInt::from(0);
    for layer in &layers {
        let w: BigInt = &lower_total + 1;
        for &g in layer {
            weights[g] = w.clone();
        }
        lower_total += w * BigInt::from(layer.len());
    }
    let measure = DiscreteMeasure::from_integer_weights(&weights)?;
    let tukey = tukey_depths(ctx, &measure)?;

    // Build the relabeling from the per-object (tukey, target) pairs; it must
    // be a well-defined isotone function.
    let mut pairs: Vec<(BigRational, BigRational)> = (0..n)
        .map(|g| (tukey.value(g).clone(), target.value(g).clone()))
        .collect();
    pairs.sort();
    pairs.dedup();

    let mut conflict = None;
    for w in pairs.windows(2) {
        if w[0].0 == w[1].0 {
            conflict = Some(format!(
                "tukey value {} would have to map to both {} and {}",
                rational_str(&w[0].0),
                rational_str(&w[0].1),
                rational_str(&w[1].1),
            ));
            break;
        }
        if w[0].1 > w[1].1 {
            conflict = Some(format!(
                "relabeling is not isotone: tukey {} ↦ {} but tukey {} ↦ {}",
                rational_str(&w[0].0),
                rational_str(&w[0].1),
                rational_str(&w[1].0),
                rational_str(&w[1].1),
            ));
            break;
        }
    }

    let layer_json: Vec<serde_json::Value> = levels
        .iter()
        .zip(&layers)
        .map(|(lvl, layer)| {
            json!({
                "target": rational_str(lvl),
                "objects": layer
                    .iter()
                    .map(|&g| ctx.object_labels()[g].clone())
                    .collect::<Vec<_>>(),
                "weight": rational_str(&measure.weight(layer[0])),
            })
        })
        .collect();

    let report = match conflict {
        None => PropertyReport::new("WFREE", Verdict::Holds)
            .with_witness(json!({
                "layers": layer_json,
                "relabeling": pairs
                    .iter()
                    .map(|(t, v)| [rational_str(t), rational_str(v)])
                    .collect::<Vec<_>>(),
            }))
            .with_note("the relabeled Tukey depth reproduces the target exactly"),
        Some(reason) => PropertyReport::new("WFREE", Verdict::Fails)
            .with_witness(json!({
                "layers": layer_json,
                "problem": reason,
            }))
            .with_note(
                "the constructed measure does not separate the target layers; this contradicts \
                 the construction's guarantee and deserves investigation",
            ),
    };

    Ok(WeaklyFreeConstruction {
        measure,
        tukey,
        level_map: pairs,
        report: finish(start, report),
    })
}
