//! Formal contexts: a finite set of objects, a finite set of attributes, and
//! a binary incidence relation between them.

use std::collections::HashMap;

use crate::bitset::{AttributeSet, ObjectSet};
use crate::error::{FcaError, Result};

/// A binary cross table between objects and attributes.
///
/// Both the rows (per-object attribute sets) and the columns (per-attribute
/// object sets) are stored, so derivations in either direction are simple
/// intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    object_labels: Vec<String>,
    attribute_labels: Vec<String>,
    rows: Vec<AttributeSet>,
    cols: Vec<ObjectSet>,
}

impl FormalContext {
    /// Builds a context from labels and incidence pairs `(object, attribute)`.
    pub fn new(
        object_labels: Vec<String>,
        attribute_labels: Vec<String>,
        incidence: &[(usize, usize)],
    ) -> Result<Self> {
        let n_obj = object_labels.len();
        let n_attr = attribute_labels.len();
        validate_labels(&object_labels, "object")?;
        validate_labels(&attribute_labels, "attribute")?;
        let mut rows = vec![AttributeSet::empty(n_attr); n_obj];
        let mut cols = vec![ObjectSet::empty(n_obj); n_attr];
        for &(g, m) in incidence {
            if g >= n_obj {
                return Err(FcaError::invalid(format!(
                    "incidence pair ({g}, {m}): object index {g} out of range (have {n_obj} objects)"
                )));
            }
            if m >= n_attr {
                return Err(FcaError::invalid(format!(
                    "incidence pair ({g}, {m}): attribute index {m} out of range (have {n_attr} attributes)"
                )));
            }
            rows[g].insert(m);
            cols[m].insert(g);
        }
        Ok(FormalContext {
            object_labels,
            attribute_labels,
            rows,
            cols,
        })
    }

    /// Builds a context where `index_rows[g]` lists the attributes of object `g`.
    pub fn from_index_rows(
        object_labels: Vec<String>,
        attribute_labels: Vec<String>,
        index_rows: &[Vec<usize>],
    ) -> Result<Self> {
        if index_rows.len() != object_labels.len() {
            return Err(FcaError::invalid(format!(
                "expected {} incidence rows, got {}",
                object_labels.len(),
                index_rows.len()
            )));
        }
        let pairs: Vec<(usize, usize)> = index_rows
            .iter()
            .enumerate()
            .flat_map(|(g, ms)| ms.iter().map(move |&m| (g, m)))
            .collect();
        Self::new(object_labels, attribute_labels, &pairs)
    }

    pub fn n_objects(&self) -> usize {
        self.object_labels.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attribute_labels.len()
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn attribute_labels(&self) -> &[String] {
        &self.attribute_labels
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.object_labels.iter().position(|l| l == label)
    }

    pub fn attribute_index(&self, label: &str) -> Option<usize> {
        self.attribute_labels.iter().position(|l| l == label)
    }

    /// Attributes of a single object.
    pub fn row(&self, g: usize) -> &AttributeSet {
        &self.rows[g]
    }

    /// Objects carrying a single attribute.
    pub fn col(&self, m: usize) -> &ObjectSet {
        &self.cols[m]
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    fn check_objects(&self, a: &ObjectSet) -> Result<()> {
        if a.universe() != self.n_objects() {
            return Err(FcaError::DimensionMismatch {
                expected: self.n_objects(),
                got: a.universe(),
            });
        }
        Ok(())
    }

    fn check_attributes(&self, b: &AttributeSet) -> Result<()> {
        if b.universe() != self.n_attributes() {
            return Err(FcaError::DimensionMismatch {
                expected: self.n_attributes(),
                got: b.universe(),
            });
        }
        Ok(())
    }

    /// Attributes shared by every object in `a`. For the empty set this is
    /// the full attribute set.
    pub fn intent(&self, a: &ObjectSet) -> Result<AttributeSet> {
        self.check_objects(a)?;
        let mut out = AttributeSet::full(self.n_attributes());
        for g in a.iter() {
            out.intersect_with(&self.rows[g]);
        }
        Ok(out)
    }

    /// Objects carrying every attribute in `b`. For the empty set this is
    /// the full object set.
    pub fn extent_of(&self, b: &AttributeSet) -> Result<ObjectSet> {
        self.check_attributes(b)?;
        let mut out = ObjectSet::full(self.n_objects());
        for m in b.iter() {
            out.intersect_with(&self.cols[m]);
        }
        Ok(out)
    }

    /// Closure of an object set: all objects carrying every attribute the
    /// members of `a` share.
    pub fn closure(&self, a: &ObjectSet) -> Result<ObjectSet> {
        let intent = self.intent(a)?;
        self.extent_of(&intent)
    }

    /// Closure of a pair of objects, a frequently needed special case.
    pub fn closure_of_pair(&self, g: usize, h: usize) -> ObjectSet {
        let a = ObjectSet::from_indices(self.n_objects(), [g, h]);
        self.closure(&a).expect("indices within context")
    }

    /// Reorders the objects of the context according to `perm`, where the new
    /// object `k` is the old object `perm[k]`. Labels move along.
    pub fn permute_objects(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n_objects() {
            return Err(FcaError::invalid("permutation length mismatch"));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(FcaError::invalid("not a permutation"));
            }
            seen[p] = true;
        }
        let object_labels = perm
            .iter()
            .map(|&p| self.object_labels[p].clone())
            .collect();
        let index_rows: Vec<Vec<usize>> = perm.iter().map(|&p| self.rows[p].indices()).collect();
        Self::from_index_rows(object_labels, self.attribute_labels.clone(), &index_rows)
    }

    /// Groups the objects by identical attribute rows and flags the two
    /// structurally extreme kinds of object.
    pub fn classify_objects(&self) -> ObjectClassification {
        let n = self.n_objects();
        let mut groups_by_row: HashMap<&AttributeSet, Vec<usize>> = HashMap::new();
        for g in 0..n {
            groups_by_row.entry(&self.rows[g]).or_default().push(g);
        }
        let mut duplicate_groups: Vec<Vec<usize>> = groups_by_row.into_values().collect();
        duplicate_groups.sort_by_key(|grp| grp[0]);

        let mut maximal = ObjectSet::empty(n);
        for g in 0..n {
            if self.rows[g].is_full() {
                maximal.insert(g);
            }
        }

        let mut free = ObjectSet::empty(n);
        for g in 0..n {
            let singleton = ObjectSet::singleton(n, g);
            let closed = self.closure(&singleton).expect("index within context");
            if closed.is_full() {
                free.insert(g);
            }
        }

        ObjectClassification {
            duplicate_groups,
            maximal_objects: maximal,
            free_objects: free,
        }
    }
}

/// Structural classification of the objects of a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectClassification {
    /// Partition of the object indices by identical attribute rows, each
    /// group ascending, groups ordered by their first member. Groups with
    /// more than one member are genuine duplicates.
    pub duplicate_groups: Vec<Vec<usize>>,
    /// Objects carrying every attribute.
    pub maximal_objects: ObjectSet,
    /// Objects contained in no closed object set except the full one.
    pub free_objects: ObjectSet,
}

impl ObjectClassification {
    /// Only the groups with at least two members.
    pub fn proper_duplicate_groups(&self) -> Vec<&Vec<usize>> {
        self.duplicate_groups
            .iter()
            .filter(|g| g.len() > 1)
            .collect()
    }
}

fn validate_labels(labels: &[String], kind: &str) -> Result<()> {
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if l.contains('\n') || l.contains('\r') {
            return Err(FcaError::invalid(format!(
                "{kind} label {i:?} contains a line break"
            )));
        }
        if let Some(j) = seen.insert(l.as_str(), i) {
            return Err(FcaError::invalid(format!(
                "duplicate {kind} label {l:?} at positions {j} and {i}"
            )));
        }
    }
    Ok(())
}
