//! Serialization of depth maps into JSON and tab-separated reports. Depths
//! are always reported exactly as `p/q`; float approximations are opt-in.

use serde_json::{json, Value};

use crate::depth::{ranking_of, DepthMap};
use crate::rational::{rational_str, rational_to_f64};

/// JSON report: depth-function name, per-object rows (in object order) with
/// exact depth, 1-based competition rank, and 0-based tie-group index, plus
/// the tie groups from deepest to shallowest.
pub fn depth_map_to_json(depth: &DepthMap, include_float: bool) -> Value {
    let ranking = ranking_of(depth);
    let mut rank = vec![0usize; depth.len()];
    let mut tie_group = vec![0usize; depth.len()];
    for (k, group) in ranking.groups.iter().enumerate() {
        for &g in &group.objects {
            rank[g] = group.rank;
            tie_group[g] = k;
        }
    }
    let objects: Vec<Value> = (0..depth.len())
        .map(|g| {
            let mut row = json!({
                "object": depth.object_labels()[g],
                "depth": rational_str(depth.value(g)),
                "rank": rank[g],
                "tie_group": tie_group[g],
            });
            if include_float {
                row["depth_float"] = json!(rational_to_f64(depth.value(g)));
            }
            row
        })
        .collect();
    let groups: Vec<Value> = ranking
        .groups
        .iter()
        .map(|group| {
            json!({
                "depth": rational_str(&group.depth),
                "rank": group.rank,
                "objects": group
                    .objects
                    .iter()
                    .map(|&g| depth.object_labels()[g].clone())
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "depth_function": depth.name(),
        "objects": objects,
        "tie_groups": groups,
    })
}

/// Tab-separated report with one row per object, in object order. Columns:
/// `object`, `depth` (exact `p/q`), optionally `depth_float`, `rank`
/// (1-based, competition style), and `tie_group` (0-based, 0 = deepest).
pub fn depth_map_to_tsv(depth: &DepthMap, include_float: bool) -> String {
    let ranking = ranking_of(depth);
    let mut rank = vec![0usize; depth.len()];
    let mut tie_group = vec![0usize; depth.len()];
    for (k, group) in ranking.groups.iter().enumerate() {
        for &g in &group.objects {
            rank[g] = group.rank;
            tie_group[g] = k;
        }
    }
    let mut out = String::new();
    out.push_str("object\tdepth");
    if include_float {
        out.push_str("\tdepth_float");
    }
    out.push_str("\trank\ttie_group\n");
    for g in 0..depth.len() {
        out.push_str(&depth.object_labels()[g]);
        out.push('\t');
        out.push_str(&rational_str(depth.value(g)));
        if include_float {
            out.push_str(&format!("\t{}", rational_to_f64(depth.value(g))));
        }
        out.push_str(&format!("\t{}\t{}\n", rank[g], tie_group[g]));
    }
    out
}
