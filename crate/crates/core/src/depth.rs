//! Depth functions on formal contexts.
//!
//! The central function is the generalised Tukey depth of an object `g`
//! under a probability measure `Pr` on the objects:
//!
//! ```text
//! T(g) = 1 − max { Pr(Φ({m})) : m an attribute g does not have }
//! ```
//!
//! with the convention that the maximum over an empty collection is 0, so an
//! object carrying every attribute has depth 1. Equivalent formulations via
//! attribute subsets or via extents are provided as cross-checking oracles.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::bitset::ObjectSet;
use crate::context::FormalContext;
use crate::error::{FcaError, Result};
use crate::extents::all_extents_capped;
use crate::measure::{DiscreteMeasure, Sample};

/// Bound on |M| (attribute-subset mode) or |G| (extent mode) for the
/// exhaustive depth oracles.
pub const ORACLE_CAP: usize = 20;

/// Depth values for every object of one context, tagged with the name of the
/// depth function that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthMap {
    name: String,
    object_labels: Vec<String>,
    values: Vec<BigRational>,
}

impl DepthMap {
    /// Wraps precomputed values. Depths must be non-negative and match the
    /// label list in length.
    pub fn from_values(
        name: impl Into<String>,
        object_labels: Vec<String>,
        values: Vec<BigRational>,
    ) -> Result<Self> {
        if object_labels.len() != values.len() {
            return Err(FcaError::invalid(format!(
                "{} depth values for {} objects",
                values.len(),
                object_labels.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| v < &&BigRational::zero()) {
            return Err(FcaError::invalid(format!("negative depth value {v}")));
        }
        Ok(DepthMap {
            name: name.into(),
            object_labels,
            values,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, g: usize) -> &BigRational {
        &self.values[g]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Distinct depth values in increasing order.
    pub fn image(&self) -> Vec<BigRational> {
        let mut levels = self.values.clone();
        levels.sort();
        levels.dedup();
        levels
    }

    /// Objects attaining the maximal depth value.
    pub fn argmax_set(&self) -> ObjectSet {
        let max = self.values.iter().max().expect("non-empty depth map");
        ObjectSet::from_indices(
            self.values.len(),
            (0..self.values.len()).filter(|&g| &self.values[g] == max),
        )
    }
}

fn check_measure(ctx: &FormalContext, measure: &DiscreteMeasure) -> Result<()> {
    if measure.n_objects() != ctx.n_objects() {
        return Err(FcaError::DimensionMismatch {
            expected: ctx.n_objects(),
            got: measure.n_objects(),
        });
    }
    Ok(())
}

/// Mass numerator of each attribute column over the measure's common
/// denominator; comparing these integers compares the column masses.
fn column_mass_numerators(ctx: &FormalContext, measure: &DiscreteMeasure) -> Vec<BigInt> {
    (0..ctx.n_attributes())
        .map(|m| {
            let mut sum = BigInt::zero();
            for g in ctx.col(m).iter() {
                sum += &measure.numerators()[g];
            }
            sum
        })
        .collect()
}

fn depth_from_max_numerator(max_num: Option<&BigInt>, denominator: &BigInt) -> BigRational {
    match max_num {
        Some(num) => BigRational::new(denominator - num, denominator.clone()),
        None => BigRational::one(),
    }
}

/// Generalised Tukey depth of a single object.
pub fn tukey_depth(
    g: usize,
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
) -> Result<BigRational> {
    check_measure(ctx, measure)?;
    if g >= ctx.n_objects() {
        return Err(FcaError::invalid(format!("object index {g} out of range")));
    }
    let col_nums = column_mass_numerators(ctx, measure);
    let row = ctx.row(g);
    let max_num = (0..ctx.n_attributes())
        .filter(|&m| !row.contains(m))
        .map(|m| &col_nums[m])
        .max();
    Ok(depth_from_max_numerator(max_num, measure.denominator()))
}

/// Generalised Tukey depth of every object, sharing the per-column mass
/// computation.
pub fn tukey_depths(ctx: &FormalContext, measure: &DiscreteMeasure) -> Result<DepthMap> {
    check_measure(ctx, measure)?;
    let col_nums = column_mass_numerators(ctx, measure);
    let values = (0..ctx.n_objects())
        .map(|g| {
            let row = ctx.row(g);
            let max_num = (0..ctx.n_attributes())
                .filter(|&m| !row.contains(m))
                .map(|m| &col_nums[m])
                .max();
            depth_from_max_numerator(max_num, measure.denominator())
        })
        .collect();
    DepthMap::from_values("tukey", ctx.object_labels().to_vec(), values)
}

/// Empirical generalised Tukey depth, computed by the count-based closed
/// form `1 − (1/n)·max_m |{k : x_k ∈ Φ({m})}|` over attributes `m` outside
/// the object's row. Agrees exactly with [`tukey_depth`] under the sample's
/// empirical measure.
pub fn empirical_tukey(g: usize, ctx: &FormalContext, sample: &Sample) -> Result<BigRational> {
    if sample.n_objects() != ctx.n_objects() {
        return Err(FcaError::DimensionMismatch {
            expected: ctx.n_objects(),
            got: sample.n_objects(),
        });
    }
    if g >= ctx.n_objects() {
        return Err(FcaError::invalid(format!("object index {g} out of range")));
    }
    let counts = sample.counts();
    let row = ctx.row(g);
    let max_count = (0..ctx.n_attributes())
        .filter(|&m| !row.contains(m))
        .map(|m| ctx.col(m).iter().map(|h| counts[h]).sum::<usize>())
        .max();
    let n = BigInt::from(sample.len());
    Ok(match max_count {
        Some(c) => BigRational::new(&n - BigInt::from(c), n),
        None => BigRational::one(),
    })
}

/// Exhaustive reformulations of the generalised Tukey depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// `1 − max { Pr(Φ(B)) : ∅ ≠ B ⊆ M∖Ψ({g}) }`. The empty attribute set is
    /// excluded: it would select the full object set, which says nothing
    /// about separating `g`.
    AttrSubsets,
    /// `1 − max { Pr(A) : A an extent with g ∉ A }`.
    Extents,
}

/// Recomputes the generalised Tukey depth by brute force. Must agree exactly
/// with [`tukey_depth`]; used as an independent test oracle.
pub fn tukey_oracle(
    g: usize,
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
    mode: OracleMode,
) -> Result<BigRational> {
    check_measure(ctx, measure)?;
    if g >= ctx.n_objects() {
        return Err(FcaError::invalid(format!("object index {g} out of range")));
    }
    match mode {
        OracleMode::AttrSubsets => {
            if ctx.n_attributes() > ORACLE_CAP {
                return Err(FcaError::CapExceeded {
                    operation: "depth oracle (attribute subsets)",
                    quantity: "number of attributes",
                    actual: ctx.n_attributes(),
                    cap: ORACLE_CAP,
                });
            }
            let missing: Vec<usize> = (0..ctx.n_attributes())
                .filter(|&m| !ctx.row(g).contains(m))
                .collect();
            let mut best: Option<BigRational> = None;
            for mask in 1u64..(1u64 << missing.len()) {
                let b = crate::bitset::AttributeSet::from_indices(
                    ctx.n_attributes(),
                    missing
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &m)| m),
                );
                let mass = measure.of(&ctx.extent_of(&b)?)?;
                if best.as_ref().is_none_or(|b| &mass > b) {
                    best = Some(mass);
                }
            }
            Ok(BigRational::one() - best.unwrap_or_else(BigRational::zero))
        }
        OracleMode::Extents => {
            let family = all_extents_capped(ctx, ORACLE_CAP).map_err(|e| match e {
                FcaError::CapExceeded { actual, cap, .. } => FcaError::CapExceeded {
                    operation: "depth oracle (extents)",
                    quantity: "number of objects",
                    actual,
                    cap,
                },
                other => other,
            })?;
            let mut best: Option<BigRational> = None;
            for extent in &family {
                if extent.contains(g) {
                    continue;
                }
                let mass = measure.of(extent)?;
                if best.as_ref().is_none_or(|b| &mass > b) {
                    best = Some(mass);
                }
            }
            Ok(BigRational::one() - best.unwrap_or_else(BigRational::zero))
        }
    }
}

/// Upper-level sets of a depth map, one per distinct depth value, in
/// decreasing order of the level. The sets are nested, smallest first.
pub fn contour_sets(
    ctx: &FormalContext,
    depth: &DepthMap,
) -> Result<Vec<(BigRational, ObjectSet)>> {
    if depth.len() != ctx.n_objects() {
        return Err(FcaError::DimensionMismatch {
            expected: ctx.n_objects(),
            got: depth.len(),
        });
    }
    let mut levels = depth.image();
    levels.reverse();
    Ok(levels
        .into_iter()
        .map(|alpha| {
            let set = ObjectSet::from_indices(
                depth.len(),
                (0..depth.len()).filter(|&g| depth.value(g) >= &alpha),
            );
            (alpha, set)
        })
        .collect())
}

/// One tie group of a ranking: all objects sharing a depth value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankGroup {
    pub depth: BigRational,
    /// 1-based competition rank (a group after `k` better objects has rank
    /// `k + 1`).
    pub rank: usize,
    /// Ascending object indices.
    pub objects: Vec<usize>,
}

/// Objects ordered by descending depth, ties grouped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    pub groups: Vec<RankGroup>,
}

impl Ranking {
    /// Flat object order: groups by descending depth, index order inside a
    /// group.
    pub fn order(&self) -> Vec<usize> {
        self.groups.iter().flat_map(|g| g.objects.clone()).collect()
    }
}

/// Groups the objects of a depth map into a deterministic descending ranking.
pub fn ranking_of(depth: &DepthMap) -> Ranking {
    let mut levels = depth.image();
    levels.reverse();
    let mut groups = Vec::with_capacity(levels.len());
    let mut placed = 0usize;
    for level in levels {
        let objects: Vec<usize> = (0..depth.len())
            .filter(|&g| depth.value(g) == &level)
            .collect();
        let size = objects.len();
        groups.push(RankGroup {
            depth: level,
            rank: placed + 1,
            objects,
        });
        placed += size;
    }
    Ranking { groups }
}

/// Ranks the objects of a context under a named depth function.
pub fn rank(
    ctx: &FormalContext,
    measure: &DiscreteMeasure,
    depth_fn_name: &str,
) -> Result<Ranking> {
    let handle = DepthFunctionHandle::by_name(depth_fn_name)?;
    let map = handle.depth_map(ctx, measure)?;
    Ok(ranking_of(&map))
}

type DepthEval = Arc<dyn Fn(&FormalContext, &DiscreteMeasure) -> Result<DepthMap> + Send + Sync>;

/// A named depth function: anything that produces a depth value per object
/// from a context and a measure. Used to run property checks uniformly over
/// built-in and caller-supplied depth functions.
#[derive(Clone)]
pub struct DepthFunctionHandle {
    name: String,
    eval: DepthEval,
}

impl std::fmt::Debug for DepthFunctionHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DepthFunctionHandle")
            .field("name", &self.name)
            .finish()
    }
}

impl DepthFunctionHandle {
    /// The generalised Tukey depth.
    pub fn tukey() -> Self {
        DepthFunctionHandle {
            name: "tukey".to_string(),
            eval: Arc::new(tukey_depths),
        }
    }

    /// The three-level depth on hierarchical contexts
    /// (see [`hierarchical_free_depth`]).
    pub fn hierarchical_free() -> Self {
        DepthFunctionHandle {
            name: "hier-free".to_string(),
            eval: Arc::new(hierarchical_free_depth),
        }
    }

    /// Looks up a built-in depth function by its registered name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "tukey" => Ok(Self::tukey()),
            "hier-free" => Ok(Self::hierarchical_free()),
            other => Err(FcaError::invalid(format!(
                "unknown depth function {other:?} (known: tukey, hier-free)"
            ))),
        }
    }

    /// A depth function with fixed per-object values, ignoring the measure.
    /// Useful as a check target or as a constructed counterexample.
    pub fn from_values(name: impl Into<String>, values: Vec<BigRational>) -> Self {
        let name = name.into();
        let fixed = values;
        DepthFunctionHandle {
            name: name.clone(),
            eval: Arc::new(move |ctx, _| {
                if fixed.len() != ctx.n_objects() {
                    return Err(FcaError::DimensionMismatch {
                        expected: ctx.n_objects(),
                        got: fixed.len(),
                    });
                }
                DepthMap::from_values(name.clone(), ctx.object_labels().to_vec(), fixed.clone())
            }),
        }
    }

    /// Wraps an arbitrary whole-map evaluator.
    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(&FormalContext, &DiscreteMeasure) -> Result<DepthMap> + Send + Sync + 'static,
    ) -> Self {
        DepthFunctionHandle {
            name: name.into(),
            eval: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Depth of a single object.
    pub fn eval(
        &self,
        g: usize,
        ctx: &FormalContext,
        measure: &DiscreteMeasure,
    ) -> Result<BigRational> {
        Ok(self.depth_map(ctx, measure)?.value(g).clone())
    }

    /// Depths of all objects.
    pub fn depth_map(&self, ctx: &FormalContext, measure: &DiscreteMeasure) -> Result<DepthMap> {
        check_measure(ctx, measure)?;
        (self.eval)(ctx, measure)
    }
}

/// The distinct, non-empty extents of the attributes of a hierarchical
/// context, split into the maximal ones (top-level classes) and the rest.
/// Errors if the context does not look hierarchical.
fn hierarchical_classes(ctx: &FormalContext) -> Result<Vec<ObjectSet>> {
    let n = ctx.n_objects();
    if n == 0 || ctx.n_attributes() == 0 {
        return Err(FcaError::invalid(
            "context is not hierarchical: no objects or no attributes",
        ));
    }
    let mut extents: Vec<ObjectSet> = Vec::new();
    for m in 0..ctx.n_attributes() {
        let col = ctx.col(m).clone();
        if col.is_empty() {
            return Err(FcaError::invalid(format!(
                "context is not hierarchical: attribute {:?} applies to no object",
                ctx.attribute_labels()[m]
            )));
        }
        if !extents.contains(&col) {
            extents.push(col);
        }
    }
    for (i, a) in extents.iter().enumerate() {
        for b in &extents[i + 1..] {
            let meet = a.intersection(b);
            if !meet.is_empty() && meet != *a && meet != *b {
                return Err(FcaError::invalid(
                    "context is not hierarchical: attribute extents overlap without nesting",
                ));
            }
        }
    }
    // Every object must sit in a singleton class (its own full category
    // path) — otherwise an argmax object cannot be separated.
    for g in 0..n {
        let singleton = ObjectSet::singleton(n, g);
        if !extents.contains(&singleton) {
            return Err(FcaError::invalid(format!(
                "context is not hierarchical: object {:?} has no class of its own",
                ctx.object_labels()[g]
            )));
        }
    }
    // Top-level classes must cover every object.
    let maximal: Vec<&ObjectSet> = extents
        .iter()
        .filter(|e| !extents.iter().any(|f| *e != f && e.is_subset(f)))
        .collect();
    let mut covered = ObjectSet::empty(n);
    for e in &maximal {
        covered.union_with(e);
    }
    if !covered.is_full() {
        return Err(FcaError::invalid(
            "context is not hierarchical: top-level classes do not cover all objects",
        ));
    }
    // At least two levels: some class properly contains another.
    let nested = extents
        .iter()
        .any(|e| extents.iter().any(|f| e != f && e.is_subset(f)));
    if !nested {
        return Err(FcaError::invalid(
            "context is not hierarchical: only one level of classes",
        ));
    }
    Ok(extents)
}

/// Three-level depth on a hierarchical context: the object with the largest
/// weight (lowest index on ties) gets depth 1, objects sharing its top-level
/// class get 1/2, all others 0. The result is quasiconcave with respect to
/// the context, for every measure.
pub fn hierarchical_free_depth(ctx: &FormalContext, measure: &DiscreteMeasure) -> Result<DepthMap> {
    check_measure(ctx, measure)?;
    let extents = hierarchical_classes(ctx)?;
    let n = ctx.n_objects();
    let star = (0..n)
        .max_by(|&a, &b| {
            measure.numerators()[a]
                .cmp(&measure.numerators()[b])
                .then(b.cmp(&a)) // prefer the lower index on ties
        })
        .expect("at least one object");
    let top_class = extents
        .iter()
        .filter(|e| e.contains(star))
        .find(|e| !extents.iter().any(|f| *e != f && e.is_subset(f)))
        .expect("top-level classes cover all objects")
        .clone();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let values = (0..n)
        .map(|g| {
            if g == star {
                BigRational::one()
            } else if top_class.contains(g) {
                half.clone()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    DepthMap::from_values("hier-free", ctx.object_labels().to_vec(), values)
}
