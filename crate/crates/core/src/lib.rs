//! Formal concept analysis of non-standard data with depth functions.
//!
//! The crate builds formal contexts from raw data (categorical tables,
//! numeric columns, hierarchies, partial orders, point clouds), enumerates
//! their closed object sets, computes the generalised Tukey depth of objects
//! with respect to a discrete probability measure, and checks a catalogue of
//! structural properties of depth functions (invariance, order preservation,
//! quasiconcavity, empirical behaviour, symmetry, freeness).

pub mod bitset;
pub mod context;
pub mod depth;
pub mod error;
pub mod extents;
pub mod io;
pub mod measure;
pub mod properties;
pub mod rational;
pub mod scaling;

pub use bitset::{AttributeKind, AttributeSet, FixedSet, ObjectKind, ObjectSet};
pub use context::{FormalContext, ObjectClassification};
pub use depth::{
    contour_sets, empirical_tukey, hierarchical_free_depth, rank, ranking_of, tukey_depth,
    tukey_depths, tukey_oracle, DepthFunctionHandle, DepthMap, OracleMode, RankGroup, Ranking,
    ORACLE_CAP,
};
pub use error::{FcaError, Result};
pub use extents::{all_extents, all_extents_capped, ExtentFamily, DEFAULT_EXTENT_CAP};
pub use io::{
    context_from_cxt, context_from_json, context_to_cxt, context_to_json, depth_map_to_json,
    depth_map_to_tsv, measure_kind_from_json, points_from_json, posets_from_json, read_cxt_file,
    sample_from_json, spec_from_json, table_from_csv_path, table_from_csv_reader, write_cxt_file,
    PointsInput, PosetsInput,
};
pub use measure::{make_measure, measure_family_diameter, DiscreteMeasure, MeasureKind, Sample};
pub use properties::{
    check_c_p8_membership, check_order_basics, check_p1, check_p10, check_p1_search, check_p2,
    check_p9, check_quasiconcavity, check_starshaped, check_strict_quasiconcavity,
    check_symmetry_center, consistency_report, construct_weakly_free,
    default_consistency_final_bound, default_consistency_noise, detect_p8_blocked,
    simulate_consistency, ConsistencyRow, ConsistencyTable, PropertyReport, QuasiKer, QuasiMode,
    Verdict, WeaklyFreeConstruction, P1_SEARCH_CAP, QUASI_CAP, STARSHAPED_CAP,
};
pub use rational::{
    parse_decimal, parse_rational, ratio, rational_str, rational_to_f64, whole, BigInt,
    BigRational, One, Zero,
};
pub use scaling::{
    axis_directions, format_rational, scale_halfspaces, scale_hierarchical, scale_posets,
    scale_posets_with, scale_table, Column, ColumnDirective, ColumnValues, DataTable, Direction,
    PartialOrder, PosetScaleOptions, ScaleKind, ScalingSpec,
};
