//! Quasiconcavity properties: closed upper-level sets (P7), strict
//! quasiconcavity (P8), contexts on which P8 is impossible, and the
//! measure-dependent context class on which the generalised Tukey depth is
//! strictly quasiconcave.

use std::time::Instant;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use serde_json::json;

use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::FormalContext;
use crate::depth::{contour_sets, DepthFunctionHandle, DepthMap};
use crate::error::{FcaError, Result};
use crate::measure::DiscreteMeasure;
use crate::properties::{finish, set_labels, PropertyReport, QuasiKer, Verdict};
use crate::rational::rational_str;

/// Bound on |G| for checks that enumerate all object subsets.
pub const QUASI_CAP: usize = 12;

/// Which formulation of quasiconcavity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuasiMode {
    /// Every upper-level set of the depth map is closed. Complete and cheap
    /// (one closure per depth level).
    Contour,
    /// For every non-empty `A` and every `g ∈ γ(A)∖A`: `D(g) ≥ min_A D`.
    /// Exponential in |G|, capped.
    BruteForce,
    /// Run both; the verdicts must agree (the two formulations are
    /// equivalent).
    Both,
}

fn check_cap(operation: &'static str, n: usize) -> Result<()> {
    if n > QUASI_CAP {
        return Err(FcaError::CapExceeded {
            operation,
            quantity: "number of objects",
            actual: n,
            cap: QUASI_CAP,
        });
    }
    Ok(())
}

fn mask_set(n: usize, mask: u32) -> ObjectSet {
    ObjectSet::from_indices(n, (0..n).filter(|&g| mask >> g & 1 == 1))
}

/// Per-level contour violation, if any: a level whose upper-level set is not
/// closed.
fn contour_violation(
    ctx: &FormalContext,
    map: &DepthMap,
) -> Result<Option<(BigRational, ObjectSet, ObjectSet)>> {
    for (alpha, contour) in contour_sets(ctx, map)? {
        let closed = ctx.closure(&contour)?;
        if closed != contour {
            return Ok(Some((alpha, contour, closed)));
        }
    }
    Ok(None)
}

struct BruteForceOutcome {
    violation: Option<(ObjectSet, usize, BigRational)>,
    ker: Vec<(ObjectSet, usize)>,
}

/// Enumerates all non-empty object subsets, recording strict violations and
/// the boundary (equality) pairs.
fn brute_force_scan(ctx: &FormalContext, map: &DepthMap) -> Result<BruteForceOutcome> {
    let n = ctx.n_objects();
    let mut ker = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let a = mask_set(n, mask);
        let closed = ctx.closure(&a)?;
        let min = a
            .iter()
            .map(|g| map.value(g))
            .min()
            .expect("non-empty subset");
        for g in closed.difference(&a).iter() {
            if map.value(g) < min {
                return Ok(BruteForceOutcome {
                    violation: Some((a, g, min.clone())),
                    ker,
                });
            }
            if map.value(g) == min {
                ker.push((a.clone(), g));
            }
        }
    }
    Ok(BruteForceOutcome {
        violation: None,
        ker,
    })
}

/// Checks quasiconcavity of a depth function (P7) in the requested
/// formulation. Returns the report together with the boundary pairs found by
/// the subset scan (empty in contour mode).
pub fn check_quasiconcavity(
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
    depth_fn: &DepthFunctionHandle,
    mode: QuasiMode,
) -> Result<(PropertyReport, QuasiKer)> {
    let start = Instant::now();
    let map = depth_fn.depth_map(ctx, measure)?;

    let contour = match mode {
        QuasiMode::Contour | QuasiMode::Both => Some(contour_violation(ctx, &map)?),
        QuasiMode::BruteForce => None,
    };
    let brute = match mode {
        QuasiMode::BruteForce | QuasiMode::Both => {
            check_cap("quasiconcavity subset scan", ctx.n_objects())?;
            Some(brute_force_scan(ctx, &map)?)
        }
        QuasiMode::Contour => None,
    };

    if let (Some(c), Some(b)) = (&contour, &brute) {
        if c.is_some() != b.violation.is_some() {
            let report = PropertyReport::new("P7", Verdict::Fails)
                .with_note(
                    "inconsistency: the upper-level-set and subset formulations disagree — the \
                     supplied depth evaluator is not a function of its stated inputs",
                )
                .with_witness(json!({
                    "contour_violation": c.is_some(),
                    "subset_violation": b.violation.is_some(),
                }));
            let ker = QuasiKer {
                pairs: brute.map(|b| b.ker).unwrap_or_default(),
            };
            return Ok((finish(start, report), ker));
        }
    }

    let mut report = if let Some(Some((alpha, cont, closed))) = &contour {
        PropertyReport::new("P7", Verdict::Fails).with_witness(json!({
            "level": rational_str(alpha),
            "upper_level_set": set_labels(ctx, cont),
            "its_closure": set_labels(ctx, closed),
        }))
    } else if let Some(BruteForceOutcome {
        violation: Some((a, g, min)),
        ..
    }) = &brute
    {
        PropertyReport::new("P7", Verdict::Fails).with_witness(json!({
            "subset": set_labels(ctx, a),
            "implied_object": ctx.object_labels()[*g].clone(),
            "implied_depth": rational_str(map.value(*g)),
            "subset_min": rational_str(min),
        }))
    } else {
        PropertyReport::new("P7", Verdict::Holds)
    };
    report = match mode {
        QuasiMode::Contour => report.with_note("verified via closed upper-level sets"),
        QuasiMode::BruteForce => report.with_note("verified by enumerating object subsets"),
        QuasiMode::Both => report
            .with_note("upper-level-set and subset formulations evaluated independently and agree"),
    };
    let ker = QuasiKer {
        pairs: brute.map(|b| b.ker).unwrap_or_default(),
    };
    Ok((finish(start, report), ker))
}

/// Checks strict quasiconcavity (P8): for every non-empty `A` and every
/// `g ∈ γ(A)∖A`, `D(g) > min_A D`.
pub fn check_strict_quasiconcavity(
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
    depth_fn: &DepthFunctionHandle,
) -> Result<PropertyReport> {
    let start = Instant::now();
    let n = ctx.n_objects();
    check_cap("strict quasiconcavity subset scan", n)?;
    let map = depth_fn.depth_map(ctx, measure)?;
    for mask in 1u32..(1u32 << n) {
        let a = mask_set(n, mask);
        let closed = ctx.closure(&a)?;
        let min = a
            .iter()
            .map(|g| map.value(g))
            .min()
            .expect("non-empty subset");
        for g in closed.difference(&a).iter() {
            if map.value(g) <= min {
                let report = PropertyReport::new("P8", Verdict::Fails).with_witness(json!({
                    "subset": set_labels(ctx, &a),
                    "implied_object": ctx.object_labels()[g].clone(),
                    "implied_depth": rational_str(map.value(g)),
                    "subset_min": rational_str(min),
                    "strict": false,
                }));
                return Ok(finish(start, report));
            }
        }
    }
    let report = PropertyReport::new("P8", Verdict::Holds)
        .with_note("every implied object is strictly deeper than its implying subset's minimum");
    Ok(finish(start, report))
}

/// Searches for structural certificates that no depth function on the given
/// context can be strictly quasiconcave:
///
/// * two objects with identical attribute rows,
/// * two disjoint non-empty object sets, each contained in the closure of
///   the other,
/// * three objects such that the closure of each pair contains the third.
///
/// A hit proves impossibility (`holds`); absence of a hit is reported as
/// `inconclusive-cap`, since these patterns are not claimed to be complete.
pub fn detect_p8_blocked(ctx: &FormalContext) -> Result<PropertyReport> {
    let start = Instant::now();
    let n = ctx.n_objects();
    check_cap("impossibility-certificate search", n)?;

    // (a) duplicate rows
    let classification = ctx.classify_objects();
    if let Some(group) = classification.proper_duplicate_groups().first() {
        let report = PropertyReport::new("C_notP8", Verdict::Holds)
            .with_witness(json!({
                "certificate": "duplicate-intents",
                "objects": [
                    ctx.object_labels()[group[0]].clone(),
                    ctx.object_labels()[group[1]].clone(),
                ],
            }))
            .with_note("no depth function on this context is strictly quasiconcave");
        return Ok(finish(start, report));
    }

    // Memoized closures of all subsets as bit masks.
    let full = 1u32 << n;
    let mut closure_mask = vec![0u32; full as usize];
    for mask in 1u32..full {
        let closed = ctx.closure(&mask_set(n, mask))?;
        closure_mask[mask as usize] = closed.iter().fold(0u32, |acc, g| acc | 1 << g);
    }

    // (b) mutually implying disjoint pairs
    for a in 1u32..full {
        let comp = (full - 1) & !a;
        let mut b = comp;
        while b != 0 {
            if b > a && a & closure_mask[b as usize] == a && b & closure_mask[a as usize] == b {
                let report = PropertyReport::new("C_notP8", Verdict::Holds)
                    .with_witness(json!({
                        "certificate": "mutually-implying-pair",
                        "sets": [
                            set_labels(ctx, &mask_set(n, a)),
                            set_labels(ctx, &mask_set(n, b)),
                        ],
                    }))
                    .with_note("no depth function on this context is strictly quasiconcave");
                return Ok(finish(start, report));
            }
            b = (b - 1) & comp;
        }
    }

    // (c) cyclic triples
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let pair = |x: usize, y: usize| 1u32 << x | 1u32 << y;
                if closure_mask[pair(i, j) as usize] >> k & 1 == 1
                    && closure_mask[pair(j, k) as usize] >> i & 1 == 1
                    && closure_mask[pair(i, k) as usize] >> j & 1 == 1
                {
                    let report = PropertyReport::new("C_notP8", Verdict::Holds)
                        .with_witness(json!({
                            "certificate": "cyclic-triple",
                            "objects": [
                                ctx.object_labels()[i].clone(),
                                ctx.object_labels()[j].clone(),
                                ctx.object_labels()[k].clone(),
                            ],
                        }))
                        .with_note("no depth function on this context is strictly quasiconcave");
                    return Ok(finish(start, report));
                }
            }
        }
    }

    let report = PropertyReport::new("C_notP8", Verdict::InconclusiveCap).with_note(
        "no impossibility certificate found; the searched patterns are sufficient but not \
         claimed complete",
    );
    Ok(finish(start, report))
}

/// Checks whether `(ctx, measure)` belongs to the class on which the
/// generalised Tukey depth is provably strictly quasiconcave: no duplicate
/// rows, and for every non-empty `A` and `g ∈ γ(A)∖A`, the row of `g`
/// contains the union of the rows of `A` and some attribute of `g` outside
/// their intersection has a column mass strictly above every column outside
/// `g`'s row.
pub fn check_c_p8_membership(
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
) -> Result<PropertyReport> {
    let start = Instant::now();
    let n = ctx.n_objects();
    check_cap("strict-quasiconcavity class membership", n)?;
    if measure.n_objects() != n {
        return Err(FcaError::DimensionMismatch {
            expected: n,
            got: measure.n_objects(),
        });
    }

    let classification = ctx.classify_objects();
    if let Some(group) = classification.proper_duplicate_groups().first() {
        let report = PropertyReport::new("C_P8", Verdict::Fails).with_witness(json!({
            "clause": "duplicate-intents",
            "objects": [
                ctx.object_labels()[group[0]].clone(),
                ctx.object_labels()[group[1]].clone(),
            ],
        }));
        return Ok(finish(start, report));
    }

    let col_mass: Vec<BigInt> = (0..ctx.n_attributes())
        .map(|m| {
            let mut sum = BigInt::zero();
            for g in ctx.col(m).iter() {
                sum += &measure.numerators()[g];
            }
            sum
        })
        .collect();

    for mask in 1u32..(1u32 << n) {
        let a = mask_set(n, mask);
        let closed = ctx.closure(&a)?;
        let mut union_rows = AttributeSet::empty(ctx.n_attributes());
        let mut inter_rows = AttributeSet::full(ctx.n_attributes());
        for g in a.iter() {
            union_rows.union_with(ctx.row(g));
            inter_rows.intersect_with(ctx.row(g));
        }
        for g in closed.difference(&a).iter() {
            let row = ctx.row(g);
            if !union_rows.is_subset(row) {
                let report = PropertyReport::new("C_P8", Verdict::Fails).with_witness(json!({
                    "clause": "union-of-rows",
                    "subset": set_labels(ctx, &a),
                    "implied_object": ctx.object_labels()[g].clone(),
                }));
                return Ok(finish(start, report));
            }
            let outside_max = (0..ctx.n_attributes())
                .filter(|&m| !row.contains(m))
                .map(|m| &col_mass[m])
                .max()
                .cloned()
                .unwrap_or_else(BigInt::zero);
            let has_separator = row
                .iter()
                .filter(|&m| !inter_rows.contains(m))
                .any(|m| col_mass[m] > outside_max);
            if !has_separator {
                let report = PropertyReport::new("C_P8", Verdict::Fails).with_witness(json!({
                    "clause": "separating-attribute",
                    "subset": set_labels(ctx, &a),
                    "implied_object": ctx.object_labels()[g].clone(),
                }));
                return Ok(finish(start, report));
            }
        }
    }

    let mut report = PropertyReport::new("C_P8", Verdict::Holds);
    let cross = check_strict_quasiconcavity(ctx, measure, &DepthFunctionHandle::tukey())?;
    if cross.verdict == Verdict::Holds {
        report = report.with_note(
            "cross-check: the generalised Tukey depth is strictly quasiconcave here, as implied",
        );
    } else {
        report.verdict = Verdict::Fails;
        report = report.with_note(
            "inconsistency: membership implies strict quasiconcavity of the generalised Tukey \
             depth, but the direct check disagrees",
        );
    }
    Ok(finish(start, report))
}
