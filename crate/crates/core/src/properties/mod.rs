//! Structural property checks for depth functions on formal contexts.
//!
//! Every check produces a [`PropertyReport`]: a verdict plus, on failure, a
//! concrete counterexample that can be re-evaluated by hand. Exhaustive
//! checks are capped by context size and refuse larger inputs instead of
//! sampling, so a `holds` verdict is always an exhaustively verified one.

mod empirical;
mod freeness;
mod invariance;
mod order;
mod quasi;
mod symmetry;

pub use empirical::{
    check_p10, check_p9, consistency_report, default_consistency_final_bound,
    default_consistency_noise, simulate_consistency, ConsistencyRow, ConsistencyTable,
};
pub use freeness::{construct_weakly_free, WeaklyFreeConstruction};
pub use invariance::{check_p1, check_p1_search, check_p2, P1_SEARCH_CAP};
pub use order::{check_order_basics, check_starshaped, STARSHAPED_CAP};
pub use quasi::{
    check_c_p8_membership, check_quasiconcavity, check_strict_quasiconcavity, detect_p8_blocked,
    QuasiMode, QUASI_CAP,
};
pub use symmetry::check_symmetry_center;

use serde::{Deserialize, Serialize};

use crate::bitset::ObjectSet;
use crate::context::FormalContext;

/// Outcome of one property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The property was verified on the whole (capped) search space.
    Holds,
    /// A concrete counterexample was found; it is attached as the witness.
    Fails,
    /// The property's premises do not apply to this input, so the conclusion
    /// was not evaluated.
    PremiseNotMet,
    /// The search space exceeds the configured cap; nothing was concluded.
    InconclusiveCap,
}

/// Result of one property check, serializable as JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReport {
    /// Property identifier (`P1` … `P11`, `C_P8`, `C_notP8`, `SYM`, `WFREE`).
    pub property: String,
    pub verdict: Verdict,
    /// Counterexample or supporting data: object labels, sets, exact values.
    pub witness: Option<serde_json::Value>,
    pub notes: Vec<String>,
    pub runtime_ms: u128,
}

impl PropertyReport {
    pub fn new(property: impl Into<String>, verdict: Verdict) -> Self {
        PropertyReport {
            property: property.into(),
            verdict,
            witness: None,
            notes: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Witness pairs sitting exactly on the quasiconcavity boundary: `g` is
/// implied by `A` (that is, `g ∈ γ(A)∖A`) and its depth equals the minimum
/// over `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiKer {
    pub pairs: Vec<(ObjectSet, usize)>,
}

pub(crate) fn set_labels(ctx: &FormalContext, set: &ObjectSet) -> Vec<String> {
    set.iter().map(|g| ctx.object_labels()[g].clone()).collect()
}

pub(crate) fn finish(start: std::time::Instant, mut report: PropertyReport) -> PropertyReport {
    report.runtime_ms = start.elapsed().as_millis();
    report
}
