//! Fixed-universe index sets.
//!
//! Object sets and attribute sets are subsets of `{0, …, n−1}` where `n` is
//! fixed by the context they belong to. The phantom tag keeps the two
//! universes apart at the type level, so an attribute set cannot be passed
//! where an object set is expected.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use fixedbitset::FixedBitSet;

/// Marker for sets over a context's object universe.
pub enum ObjectKind {}
/// Marker for sets over a context's attribute universe.
pub enum AttributeKind {}

/// Subset of the objects of one context.
pub type ObjectSet = FixedSet<ObjectKind>;
/// Subset of the attributes of one context.
pub type AttributeSet = FixedSet<AttributeKind>;

/// A subset of a fixed universe `{0, …, n−1}`.
///
/// All binary operations require both operands to come from the same
/// universe size and panic otherwise; mixing sets from different contexts is
/// a programming error, not a runtime condition.
pub struct FixedSet<K> {
    bits: FixedBitSet,
    _kind: PhantomData<K>,
}

impl<K> FixedSet<K> {
    pub fn empty(universe: usize) -> Self {
        FixedSet {
            bits: FixedBitSet::with_capacity(universe),
            _kind: PhantomData,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.set_range(.., true);
        FixedSet {
            bits,
            _kind: PhantomData,
        }
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(index);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Size of the universe this set lives in (not the cardinality).
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Number of elements in the set.
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.count_ones(..) == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.universe(), "index {index} outside universe");
        self.bits.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        self.bits.set(index, false);
    }

    /// Ascending iterator over the member indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn assert_same_universe(&self, other: &Self) {
        assert_eq!(
            self.universe(),
            other.universe(),
            "sets from different universes"
        );
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.assert_same_universe(other);
        self.bits.intersect_with(&other.bits);
    }

    pub fn union_with(&mut self, other: &Self) {
        self.assert_same_universe(other);
        self.bits.union_with(&other.bits);
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &Self) -> Self {
        self.assert_same_universe(other);
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.assert_same_universe(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.assert_same_universe(other);
        self.bits.is_disjoint(&other.bits)
    }

    /// Image of the set under an index mapping (e.g. a permutation of the
    /// universe). The mapping must stay inside the universe.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_indices(self.universe(), self.iter().map(f))
    }
}

impl<K> Clone for FixedSet<K> {
    fn clone(&self) -> Self {
        FixedSet {
            bits: self.bits.clone(),
            _kind: PhantomData,
        }
    }
}

impl<K> PartialEq for FixedSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl<K> Eq for FixedSet<K> {}

impl<K> Hash for FixedSet<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

/// Canonical order: first by cardinality, then lexicographically on the
/// ascending index sequence. Used for deterministic extent listings.
impl<K> Ord for FixedSet<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.ones().cmp(other.bits.ones()))
    }
}

impl<K> PartialOrd for FixedSet<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_set<K>(set: &FixedSet<K>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{{")?;
    for (k, i) in set.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{i}")?;
    }
    write!(f, "}}")
}

impl<K> fmt::Debug for FixedSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_set(self, f)
    }
}

impl<K> fmt::Display for FixedSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_set(self, f)
    }
}
