//! Discrete probability measures over the objects of a context, with exact
//! rational arithmetic throughout.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use num_bigint::RandBigInt;
use rand::Rng;

use crate::bitset::ObjectSet;
use crate::context::FormalContext;
use crate::error::{FcaError, Result};

/// A probability measure on `{0, …, n−1}` stored as integer numerators over
/// one common denominator, so that the mass of any object set is a single
/// integer sum followed by one reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteMeasure {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl DiscreteMeasure {
    /// Uniform measure on `n` objects.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(FcaError::invalid(
                "cannot build a probability measure over zero objects",
            ));
        }
        Ok(DiscreteMeasure {
            numerators: vec![BigInt::one(); n],
            denominator: BigInt::from(n),
        })
    }

    /// Empirical measure from per-object counts; weight of `g` is
    /// `counts[g] / Σ counts`.
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        let total: usize = counts.iter().sum();
        if total == 0 {
            return Err(FcaError::invalid("sample counts sum to zero"));
        }
        let numerators = counts.iter().map(|&c| BigInt::from(c)).collect();
        Ok(Self::reduced(numerators, BigInt::from(total)))
    }

    /// Measure from non-negative rational weights, normalized to total mass 1.
    pub fn from_weights(weights: &[BigRational]) -> Result<Self> {
        if weights.is_empty() {
            return Err(FcaError::invalid("empty weight vector"));
        }
        for (g, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(FcaError::invalid(format!(
                    "negative weight {w} for object {g}"
                )));
            }
        }
        let sum: BigRational = weights.iter().sum();
        if sum.is_zero() {
            return Err(FcaError::invalid("weights sum to zero"));
        }
        let normalized: Vec<BigRational> = weights.iter().map(|w| w / &sum).collect();
        let mut denominator = BigInt::one();
        for w in &normalized {
            denominator = denominator.lcm(w.denom());
        }
        let numerators = normalized
            .iter()
            .map(|w| w.numer() * (&denominator / w.denom()))
            .collect();
        Ok(Self::reduced(numerators, denominator))
    }

    /// Measure from non-negative integer weights, normalized to total mass 1.
    pub fn from_integer_weights(weights: &[BigInt]) -> Result<Self> {
        if weights.is_empty() {
            return Err(FcaError::invalid("empty weight vector"));
        }
        for (g, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(FcaError::invalid(format!(
                    "negative weight {w} for object {g}"
                )));
            }
        }
        let total: BigInt = weights.iter().sum();
        if total.is_zero() {
            return Err(FcaError::invalid("weights sum to zero"));
        }
        Ok(Self::reduced(weights.to_vec(), total))
    }

    fn reduced(numerators: Vec<BigInt>, denominator: BigInt) -> Self {
        let mut g = denominator.clone();
        for n in &numerators {
            g = g.gcd(n);
        }
        if g.is_one() {
            return DiscreteMeasure {
                numerators,
                denominator,
            };
        }
        DiscreteMeasure {
            numerators: numerators.into_iter().map(|n| n / &g).collect(),
            denominator: denominator / &g,
        }
    }

    pub fn n_objects(&self) -> usize {
        self.numerators.len()
    }

    /// Common denominator of all weights (always positive).
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Weight numerators over the common denominator.
    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    /// Weight of one object as a reduced rational.
    pub fn weight(&self, g: usize) -> BigRational {
        BigRational::new(self.numerators[g].clone(), self.denominator.clone())
    }

    /// All weights as reduced rationals.
    pub fn weights(&self) -> Vec<BigRational> {
        (0..self.n_objects()).map(|g| self.weight(g)).collect()
    }

    /// Total mass of an object set.
    pub fn of(&self, set: &ObjectSet) -> Result<BigRational> {
        if set.universe() != self.n_objects() {
            return Err(FcaError::DimensionMismatch {
                expected: self.n_objects(),
                got: set.universe(),
            });
        }
        let mut sum = BigInt::zero();
        for g in set.iter() {
            sum += &self.numerators[g];
        }
        Ok(BigRational::new(sum, self.denominator.clone()))
    }

    /// Objects with strictly positive weight.
    pub fn support(&self) -> ObjectSet {
        ObjectSet::from_indices(
            self.n_objects(),
            (0..self.n_objects()).filter(|&g| self.numerators[g].is_positive()),
        )
    }

    /// Total-variation distance `(1/2)·Σ |p_g − q_g|`.
    pub fn total_variation(&self, other: &Self) -> Result<BigRational> {
        if other.n_objects() != self.n_objects() {
            return Err(FcaError::DimensionMismatch {
                expected: self.n_objects(),
                got: other.n_objects(),
            });
        }
        let mut sum = BigRational::zero();
        for g in 0..self.n_objects() {
            sum += (self.weight(g) - other.weight(g)).abs();
        }
        Ok(sum / BigRational::from_integer(BigInt::from(2)))
    }

    /// Draws `n` objects i.i.d. from the measure using the supplied generator.
    pub fn draw_sample(&self, rng: &mut (impl Rng + ?Sized), n: usize) -> Result<Sample> {
        if n == 0 {
            return Err(FcaError::invalid("sample size must be at least 1"));
        }
        let bound = self
            .denominator
            .to_biguint()
            .expect("denominator is positive");
        let mut cumulative = Vec::with_capacity(self.n_objects());
        let mut running = BigInt::zero();
        for num in &self.numerators {
            running += num;
            cumulative.push(running.clone());
        }
        let items = (0..n)
            .map(|_| {
                let ticket = BigInt::from(rng.gen_biguint_below(&bound));
                cumulative
                    .iter()
                    .position(|c| &ticket < c)
                    .expect("ticket below total mass")
            })
            .collect();
        Sample::new(self.n_objects(), items)
    }
}

/// Largest pairwise total-variation distance within a finite family of
/// measures over the same objects.
pub fn measure_family_diameter(measures: &[DiscreteMeasure]) -> Result<BigRational> {
    if measures.is_empty() {
        return Err(FcaError::invalid("empty measure family"));
    }
    let mut best = BigRational::zero();
    for (i, p) in measures.iter().enumerate() {
        for q in &measures[i + 1..] {
            let tv = p.total_variation(q)?;
            if tv > best {
                best = tv;
            }
        }
    }
    Ok(best)
}

/// A multiset of observed objects; the basis of empirical measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    n_objects: usize,
    items: Vec<usize>,
}

impl Sample {
    pub fn new(n_objects: usize, items: Vec<usize>) -> Result<Self> {
        if items.is_empty() {
            return Err(FcaError::invalid("sample must contain at least one item"));
        }
        for &g in &items {
            if g >= n_objects {
                return Err(FcaError::invalid(format!(
                    "sample item {g} out of range (have {n_objects} objects)"
                )));
            }
        }
        Ok(Sample { n_objects, items })
    }

    pub fn from_labels(ctx: &FormalContext, labels: &[impl AsRef<str>]) -> Result<Self> {
        let items = labels
            .iter()
            .map(|l| {
                ctx.object_index(l.as_ref()).ok_or_else(|| {
                    FcaError::invalid(format!("unknown object label {:?}", l.as_ref()))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        Self::new(ctx.n_objects(), items)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    /// Occurrences of each object in the sample.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_objects];
        for &g in &self.items {
            counts[g] += 1;
        }
        counts
    }

    /// The induced empirical measure (weight `count(g) / n`).
    pub fn to_measure(&self) -> DiscreteMeasure {
        DiscreteMeasure::from_counts(&self.counts()).expect("sample is non-empty")
    }

    /// A copy of the sample with one more observation appended.
    pub fn extended(&self, item: usize) -> Result<Self> {
        let mut items = self.items.clone();
        items.push(item);
        Self::new(self.n_objects, items)
    }

    /// A copy with a single occurrence of `item` removed.
    pub fn without_one(&self, item: usize) -> Result<Self> {
        let pos = self.items.iter().position(|&g| g == item).ok_or_else(|| {
            FcaError::invalid(format!("object {item} does not occur in the sample"))
        })?;
        let mut items = self.items.clone();
        items.remove(pos);
        Self::new(self.n_objects, items)
    }
}

/// Specification of a measure before it is bound to a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureKind {
    Uniform,
    Empirical(Sample),
    Explicit(Vec<BigRational>),
}

/// Binds a measure specification to a context, validating dimensions.
pub fn make_measure(kind: &MeasureKind, ctx: &FormalContext) -> Result<DiscreteMeasure> {
    match kind {
        MeasureKind::Uniform => DiscreteMeasure::uniform(ctx.n_objects()),
        MeasureKind::Empirical(sample) => {
            if sample.n_objects() != ctx.n_objects() {
                return Err(FcaError::DimensionMismatch {
                    expected: ctx.n_objects(),
                    got: sample.n_objects(),
                });
            }
            Ok(sample.to_measure())
        }
        MeasureKind::Explicit(weights) => {
            if weights.len() != ctx.n_objects() {
                return Err(FcaError::DimensionMismatch {
                    expected: ctx.n_objects(),
                    got: weights.len(),
                });
            }
            DiscreteMeasure::from_weights(weights)
        }
    }
}
