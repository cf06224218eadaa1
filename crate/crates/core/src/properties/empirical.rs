//! Empirical-sample properties: sensitivity to duplicated observations (P9),
//! order stability under outliers (P10), and the Monte-Carlo consistency of
//! the empirical generalised Tukey depth (P11).

use std::time::Instant;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bitset::ObjectSet;
use crate::context::FormalContext;
use crate::depth::{tukey_depths, DepthFunctionHandle};
use crate::error::{FcaError, Result};
use crate::measure::{DiscreteMeasure, Sample};
use crate::properties::{finish, set_labels, PropertyReport, Verdict};
use crate::rational::{ratio, rational_str, rational_to_f64};

/// Duplicating an observation must strictly raise the depth of the objects
/// that share its attribute row (P9).
///
/// `dup` is `(i, j)`: one copy of object `i` is removed and the depth of
/// object `j` (which has the same attribute row) is compared with and
/// without it. When no attribute outside the shared row has sample support,
/// both depths are maximal and no strict increase is possible; that known
/// degenerate case is reported as `premise-not-met` with a note.
pub fn check_p9(
    ctx: &FormalContext,
    sample_with_dup: &Sample,
    dup: (usize, usize),
    depth_fn: &DepthFunctionHandle,
) -> Result<PropertyReport> {
    let start = Instant::now();
    let (i, j) = dup;
    let n = ctx.n_objects();
    if i >= n || j >= n {
        return Err(FcaError::invalid(format!(
            "duplicate indices ({i}, {j}) out of range for {n} objects"
        )));
    }
    if ctx.row(i) != ctx.row(j) {
        return Err(FcaError::invalid(format!(
            "objects {:?} and {:?} do not share an attribute row",
            ctx.object_labels()[i],
            ctx.object_labels()[j]
        )));
    }
    if !sample_with_dup.items().contains(&i) || !sample_with_dup.items().contains(&j) {
        return Err(FcaError::invalid(
            "both duplicate objects must occur in the sample",
        ));
    }

    let with_measure = sample_with_dup.to_measure();
    let without_measure = sample_with_dup.without_one(i)?.to_measure();
    let d_with = depth_fn.depth_map(ctx, &with_measure)?.value(j).clone();
    let d_without = depth_fn.depth_map(ctx, &without_measure)?.value(j).clone();

    let witness = json!({
        "object": ctx.object_labels()[j].clone(),
        "duplicated": ctx.object_labels()[i].clone(),
        "depth_with_duplicate": rational_str(&d_with),
        "depth_without_duplicate": rational_str(&d_without),
    });

    let report = if d_with > d_without {
        PropertyReport::new("P9", Verdict::Holds).with_witness(witness)
    } else if d_with == d_without {
        // Degenerate shape: no attribute outside the shared row has any
        // sample support, so the depth is pinned at its maximum.
        let counts = sample_with_dup.counts();
        let row = ctx.row(j);
        let outside_support = (0..ctx.n_attributes())
            .filter(|&m| !row.contains(m))
            .any(|m| ctx.col(m).iter().any(|h| counts[h] > 0));
        if outside_support {
            PropertyReport::new("P9", Verdict::Fails)
                .with_witness(witness)
                .with_note("the duplicate does not strictly raise the depth")
        } else {
            PropertyReport::new("P9", Verdict::PremiseNotMet)
                .with_witness(witness)
                .with_note(
                    "no attribute outside the duplicated row has sample support: the depth is \
                     maximal with or without the duplicate, so a strict increase is impossible",
                )
        }
    } else {
        PropertyReport::new("P9", Verdict::Fails)
            .with_witness(witness)
            .with_note("removing the duplicate raised the depth")
    };
    Ok(finish(start, report))
}

/// Removing an outlying observation must not reorder the remaining sampled
/// objects (P10). The premise requires the outlier to share no proper closed
/// set with any other sampled object.
pub fn check_p10(
    ctx: &FormalContext,
    sample: &Sample,
    outlier: usize,
    depth_fn: &DepthFunctionHandle,
) -> Result<PropertyReport> {
    let start = Instant::now();
    let n = ctx.n_objects();
    if outlier >= n {
        return Err(FcaError::invalid(format!(
            "outlier index {outlier} out of range for {n} objects"
        )));
    }
    let outlier_count = sample.items().iter().filter(|&&g| g == outlier).count();
    if outlier_count == 0 {
        return Err(FcaError::invalid(
            "the outlier does not occur in the sample",
        ));
    }
    let rest: Vec<usize> = sample
        .items()
        .iter()
        .copied()
        .filter(|&g| g != outlier)
        .collect();
    if rest.is_empty() {
        return Err(FcaError::invalid("the sample contains only the outlier"));
    }

    // Premise: every closed set containing the outlier and another sampled
    // observation is the full object set.
    let mut others = ObjectSet::empty(n);
    for &g in &rest {
        others.insert(g);
    }
    for h in others.iter() {
        let closed = ctx.closure_of_pair(outlier, h);
        if !closed.is_full() {
            let report = PropertyReport::new("P10", Verdict::PremiseNotMet).with_witness(json!({
                "outlier": ctx.object_labels()[outlier].clone(),
                "other": ctx.object_labels()[h].clone(),
                "shared_proper_closed_set": set_labels(ctx, &closed),
            }));
            return Ok(finish(start, report));
        }
    }
    if outlier_count >= 2 {
        let closed = ctx.closure_of_pair(outlier, outlier);
        if !closed.is_full() {
            let report = PropertyReport::new("P10", Verdict::PremiseNotMet)
                .with_witness(json!({
                    "outlier": ctx.object_labels()[outlier].clone(),
                    "other": ctx.object_labels()[outlier].clone(),
                    "shared_proper_closed_set": set_labels(ctx, &closed),
                }))
                .with_note(
                    "the outlier occurs more than once, so its own closure must already be the \
                     full object set",
                );
            return Ok(finish(start, report));
        }
    }

    let with_map = depth_fn.depth_map(ctx, &sample.to_measure())?;
    let without_sample = Sample::new(n, rest)?;
    let without_map = depth_fn.depth_map(ctx, &without_sample.to_measure())?;

    let kept: Vec<usize> = others.indices();
    for &g in &kept {
        for &h in &kept {
            let le_with = with_map.value(g) <= with_map.value(h);
            let le_without = without_map.value(g) <= without_map.value(h);
            if le_with != le_without {
                let report = PropertyReport::new("P10", Verdict::Fails).with_witness(json!({
                    "pair": [
                        ctx.object_labels()[g].clone(),
                        ctx.object_labels()[h].clone(),
                    ],
                    "depths_with_outlier": [
                        rational_str(with_map.value(g)),
                        rational_str(with_map.value(h)),
                    ],
                    "depths_without_outlier": [
                        rational_str(without_map.value(g)),
                        rational_str(without_map.value(h)),
                    ],
                }));
                return Ok(finish(start, report));
            }
        }
    }
    let report = PropertyReport::new("P10", Verdict::Holds)
        .with_note("depth order of the remaining objects is unchanged by the outlier");
    Ok(finish(start, report))
}

/// Per-sample-size summary of the gap between empirical and population
/// generalised Tukey depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyRow {
    pub n: usize,
    pub mean: BigRational,
    pub median: BigRational,
    pub max: BigRational,
}

/// Output of [`simulate_consistency`]: exact Monte-Carlo summaries of
/// `sup_g |T_n(g) − T(g)|` per sample size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyTable {
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<ConsistencyRow>,
}

impl ConsistencyTable {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "rows": self.rows.iter().map(|r| json!({
                "n": r.n,
                "mean": rational_str(&r.mean),
                "mean_float": rational_to_f64(&r.mean),
                "median": rational_str(&r.median),
                "max": rational_str(&r.max),
                "max_float": rational_to_f64(&r.max),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Draws `trials` i.i.d. samples of each size from the measure and reports
/// the mean, median, and maximum over trials of the largest per-object gap
/// between empirical and population depth. Fully determined by the seed; the
/// generator stream is re-derived per (size, trial), so results do not depend
/// on evaluation order.
pub fn simulate_consistency(
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
    sample_sizes: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ConsistencyTable> {
    if trials == 0 {
        return Err(FcaError::invalid("number of trials must be at least 1"));
    }
    if sample_sizes.is_empty() {
        return Err(FcaError::invalid("at least one sample size is required"));
    }
    if let Some(&bad) = sample_sizes.iter().find(|&&n| n == 0) {
        return Err(FcaError::invalid(format!("sample size {bad} is invalid")));
    }
    let population = tukey_depths(ctx, measure)?;

    let mut rows = Vec::with_capacity(sample_sizes.len());
    for (size_index, &n) in sample_sizes.iter().enumerate() {
        let mut gaps: Vec<BigRational> = Vec::with_capacity(trials);
        for trial in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((size_index * trials + trial) as u64);
            let sample = measure.draw_sample(&mut rng, n)?;
            let empirical = tukey_depths(ctx, &sample.to_measure())?;
            let gap = (0..ctx.n_objects())
                .map(|g| (empirical.value(g) - population.value(g)).abs())
                .max()
                .expect("non-empty context");
            gaps.push(gap);
        }
        let mean =
            gaps.iter().sum::<BigRational>() / BigRational::from_integer(BigInt::from(trials));
        let mut sorted = gaps.clone();
        sorted.sort();
        let median = if trials % 2 == 1 {
            sorted[trials / 2].clone()
        } else {
            (&sorted[trials / 2 - 1] + &sorted[trials / 2])
                / BigRational::from_integer(BigInt::from(2))
        };
        let max = sorted.last().expect("at least one trial").clone();
        rows.push(ConsistencyRow {
            n,
            mean,
            median,
            max,
        });
    }
    Ok(ConsistencyTable { seed, trials, rows })
}

/// Monte-Carlo noise allowance when requiring the mean gap to be
/// non-increasing across sample sizes.
pub fn default_consistency_noise() -> BigRational {
    ratio(1, 100)
}

/// Bound the mean gap must fall below at the largest sample size.
pub fn default_consistency_final_bound() -> BigRational {
    ratio(1, 20)
}

/// Evaluates a consistency table (P11): the mean gap must be non-increasing
/// in the sample size up to `noise`, and the final mean must fall below
/// `final_bound`.
pub fn consistency_report(
    table: &ConsistencyTable,
    noise: &BigRational,
    final_bound: &BigRational,
) -> PropertyReport {
    let start = Instant::now();
    let mut report = PropertyReport::new("P11", Verdict::Holds);
    for pair in table.rows.windows(2) {
        if pair[1].mean > &pair[0].mean + noise {
            report.verdict = Verdict::Fails;
            report = report.with_note(format!(
                "mean gap rose from {} (n={}) to {} (n={}), beyond the noise allowance {}",
                rational_str(&pair[0].mean),
                pair[0].n,
                rational_str(&pair[1].mean),
                pair[1].n,
                rational_str(noise),
            ));
        }
    }
    if let Some(last) = table.rows.last() {
        if &last.mean >= final_bound {
            report.verdict = Verdict::Fails;
            report = report.with_note(format!(
                "mean gap {} at n={} is not below the required bound {}",
                rational_str(&last.mean),
                last.n,
                rational_str(final_bound),
            ));
        }
    }
    if report.verdict == Verdict::Holds {
        report = report.with_note(format!(
            "mean gap non-increasing (allowance {}) and below {} at the largest size",
            rational_str(noise),
            rational_str(final_bound),
        ));
    }
    report.witness = Some(table.to_json());
    finish(start, report)
}
