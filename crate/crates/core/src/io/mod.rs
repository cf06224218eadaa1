//! File formats: Burmeister `.cxt` contexts, JSON documents for contexts,
//! scaling specs, posets, point clouds, measures and samples, CSV data
//! tables, and report serialization.

pub mod cxt;
pub mod json;
pub mod report;
pub mod table;

pub use cxt::{context_from_cxt, context_to_cxt, read_cxt_file, write_cxt_file};
pub use json::{
    context_from_json, context_to_json, measure_kind_from_json, points_from_json, posets_from_json,
    sample_from_json, spec_from_json, PointsInput, PosetsInput,
};
pub use report::{depth_map_to_json, depth_map_to_tsv};
pub use table::{table_from_csv_path, table_from_csv_reader};
