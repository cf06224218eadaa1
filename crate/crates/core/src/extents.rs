//! Enumeration of all closed object sets of a context.

use std::collections::HashSet;

use crate::bitset::ObjectSet;
use crate::context::FormalContext;
use crate::error::{FcaError, Result};

/// Default bound on the number of objects for exhaustive enumeration; the
/// family can have up to `2^|G|` members.
pub const DEFAULT_EXTENT_CAP: usize = 24;

/// All closed object sets of one context, in canonical order (ascending
/// cardinality, ties broken lexicographically on the index sequence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtentFamily {
    extents: Vec<ObjectSet>,
}

impl ExtentFamily {
    pub fn len(&self) -> usize {
        self.extents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extents.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ObjectSet> {
        self.extents.iter()
    }

    pub fn as_slice(&self) -> &[ObjectSet] {
        &self.extents
    }

    pub fn contains(&self, set: &ObjectSet) -> bool {
        self.extents.binary_search(set).is_ok()
    }

    /// Builds a family from an arbitrary collection, deduplicating and
    /// sorting into canonical order. Intended for tests and comparisons; no
    /// closure property is checked.
    pub fn from_sets<I: IntoIterator<Item = ObjectSet>>(sets: I) -> Self {
        let mut extents: Vec<ObjectSet> = sets.into_iter().collect();
        extents.sort();
        extents.dedup();
        ExtentFamily { extents }
    }
}

impl<'a> IntoIterator for &'a ExtentFamily {
    type Item = &'a ObjectSet;
    type IntoIter = std::slice::Iter<'a, ObjectSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.extents.iter()
    }
}

/// Enumerates every closed object set with the default object-count cap.
pub fn all_extents(ctx: &FormalContext) -> Result<ExtentFamily> {
    all_extents_capped(ctx, DEFAULT_EXTENT_CAP)
}

/// Enumerates every closed object set, refusing contexts with more than
/// `cap` objects instead of truncating the family.
///
/// The family is exactly the set of all intersections of attribute columns,
/// together with the full object set (the empty intersection). It is computed
/// by intersection closure: starting from the full set, each known member is
/// intersected with each distinct column until no new set appears.
pub fn all_extents_capped(ctx: &FormalContext, cap: usize) -> Result<ExtentFamily> {
    if ctx.n_objects() > cap {
        return Err(FcaError::CapExceeded {
            operation: "extent enumeration",
            quantity: "number of objects",
            actual: ctx.n_objects(),
            cap,
        });
    }

    let full = ObjectSet::full(ctx.n_objects());
    let mut columns: Vec<ObjectSet> = Vec::new();
    {
        let mut distinct: HashSet<ObjectSet> = HashSet::new();
        for m in 0..ctx.n_attributes() {
            let col = ctx.col(m).clone();
            if col != full && distinct.insert(col.clone()) {
                columns.push(col);
            }
        }
    }

    let mut seen: HashSet<ObjectSet> = HashSet::new();
    let mut stack: Vec<ObjectSet> = Vec::new();
    seen.insert(full.clone());
    stack.push(full);
    while let Some(e) = stack.pop() {
        for col in &columns {
            let cut = e.intersection(col);
            if !seen.contains(&cut) {
                seen.insert(cut.clone());
                stack.push(cut);
            }
        }
    }

    Ok(ExtentFamily::from_sets(seen))
}
