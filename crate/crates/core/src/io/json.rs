//! JSON documents: contexts, scaling specs, poset families, point clouds,
//! measures, and samples. Numeric literals are parsed exactly (no float
//! round-trip), so thresholds and weights keep their rational values.

use num::rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::context::FormalContext;
use crate::error::{FcaError, Result};
use crate::measure::{MeasureKind, Sample};
use crate::rational::{parse_decimal, parse_rational};
use crate::scaling::{ColumnDirective, Direction, PartialOrder, ScaleKind, ScalingSpec};

fn value_to_rational(value: &Value, place: &str) -> Result<BigRational> {
    match value {
        Value::Number(n) => parse_decimal(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(FcaError::parse(format!(
            "{place}: expected a number or a numeric string, found {other}"
        ))),
    }
}

/// Context as a JSON document mirroring its fields; `incidence_rows[g]`
/// lists the attribute indices of object `g`.
pub fn context_to_json(ctx: &FormalContext) -> Value {
    json!({
        "object_labels": ctx.object_labels(),
        "attribute_labels": ctx.attribute_labels(),
        "incidence_rows": (0..ctx.n_objects())
            .map(|g| ctx.row(g).indices())
            .collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
struct ContextDoc {
    object_labels: Vec<String>,
    attribute_labels: Vec<String>,
    incidence_rows: Vec<Vec<usize>>,
}

pub fn context_from_json(text: &str) -> Result<FormalContext> {
    let doc: ContextDoc =
        serde_json::from_str(text).map_err(|e| FcaError::parse(format!("context json: {e}")))?;
    FormalContext::from_index_rows(doc.object_labels, doc.attribute_labels, &doc.incidence_rows)
}

#[derive(Deserialize)]
struct SpecDoc {
    columns: Vec<DirectiveDoc>,
}

#[derive(Deserialize)]
struct DirectiveDoc {
    column: String,
    scale: String,
    #[serde(default)]
    thresholds: Option<Vec<Value>>,
    #[serde(default)]
    direction: Option<String>,
}

/// Parses a scaling spec:
///
/// ```json
/// {"columns": [
///   {"column": "sex", "scale": "nominal"},
///   {"column": "age", "scale": "interordinal", "thresholds": [23, 34.5]},
///   {"column": "rank", "scale": "ordinal", "direction": "geq"},
///   {"column": "taxon", "scale": "hierarchical"}
/// ]}
/// ```
pub fn spec_from_json(text: &str) -> Result<ScalingSpec> {
    let doc: SpecDoc =
        serde_json::from_str(text).map_err(|e| FcaError::parse(format!("scaling spec: {e}")))?;
    let mut directives = Vec::with_capacity(doc.columns.len());
    for d in doc.columns {
        let thresholds = match &d.thresholds {
            None => None,
            Some(values) => Some(
                values
                    .iter()
                    .map(|v| value_to_rational(v, &format!("column {:?} thresholds", d.column)))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let direction = match d.direction.as_deref() {
            None => None,
            Some("leq") => Some(Direction::Leq),
            Some("geq") => Some(Direction::Geq),
            Some(other) => {
                return Err(FcaError::parse(format!(
                    "column {:?}: unknown direction {other:?} (expected \"leq\" or \"geq\")",
                    d.column
                )));
            }
        };
        let scale = match d.scale.as_str() {
            "nominal" | "hierarchical" => {
                if thresholds.is_some() || direction.is_some() {
                    return Err(FcaError::parse(format!(
                        "column {:?}: {} scaling takes no thresholds or direction",
                        d.column, d.scale
                    )));
                }
                if d.scale == "nominal" {
                    ScaleKind::Nominal
                } else {
                    ScaleKind::Hierarchical
                }
            }
            "ordinal" => ScaleKind::Ordinal {
                thresholds,
                direction: direction.unwrap_or(Direction::Leq),
            },
            "interordinal" => {
                if direction.is_some() {
                    return Err(FcaError::parse(format!(
                        "column {:?}: interordinal scaling takes no direction",
                        d.column
                    )));
                }
                ScaleKind::Interordinal { thresholds }
            }
            other => {
                return Err(FcaError::parse(format!(
                    "column {:?}: unknown scale {other:?} (expected nominal, ordinal, \
                     interordinal, or hierarchical)",
                    d.column
                )));
            }
        };
        directives.push(ColumnDirective {
            column: d.column,
            scale,
        });
    }
    Ok(ScalingSpec { directives })
}

/// A parsed poset-family document, ready for poset scaling.
#[derive(Debug, Clone)]
pub struct PosetsInput {
    pub n_items: usize,
    pub posets: Vec<PartialOrder>,
    pub poset_labels: Option<Vec<String>>,
    pub item_names: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct PosetsDoc {
    n_items: usize,
    #[serde(default)]
    item_labels: Option<Vec<String>>,
    posets: Vec<PosetDoc>,
}

#[derive(Deserialize)]
struct PosetDoc {
    #[serde(default)]
    label: Option<String>,
    dominates: Vec<(usize, usize)>,
}

/// Parses a poset family; items are numbered 1…n in the dominance pairs:
///
/// ```json
/// {"n_items": 3, "item_labels": ["a", "b", "c"],
///  "posets": [{"label": "p1", "dominates": [[1, 2], [2, 3], [1, 3]]}]}
/// ```
pub fn posets_from_json(text: &str) -> Result<PosetsInput> {
    let doc: PosetsDoc =
        serde_json::from_str(text).map_err(|e| FcaError::parse(format!("posets json: {e}")))?;
    let mut posets = Vec::with_capacity(doc.posets.len());
    let mut labels = Vec::with_capacity(doc.posets.len());
    let mut any_label = false;
    for (k, p) in doc.posets.iter().enumerate() {
        let mut pairs = Vec::with_capacity(p.dominates.len());
        for &(i, j) in &p.dominates {
            if i == 0 || j == 0 || i > doc.n_items || j > doc.n_items {
                return Err(FcaError::parse(format!(
                    "poset {}: dominance pair ({i}, {j}) out of range, items are numbered 1..{}",
                    k + 1,
                    doc.n_items
                )));
            }
            pairs.push((i - 1, j - 1));
        }
        posets.push(PartialOrder::new(doc.n_items, &pairs)?);
        match &p.label {
            Some(l) => {
                any_label = true;
                labels.push(l.clone());
            }
            None => labels.push(format!("p{}", k + 1)),
        }
    }
    Ok(PosetsInput {
        n_items: doc.n_items,
        posets,
        poset_labels: if any_label { Some(labels) } else { None },
        item_names: doc.item_labels,
    })
}

/// A parsed point-cloud document, ready for halfspace scaling.
#[derive(Debug, Clone)]
pub struct PointsInput {
    pub points: Vec<Vec<BigRational>>,
    pub directions: Option<Vec<Vec<BigRational>>>,
    pub labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct PointsDoc {
    #[serde(default)]
    labels: Option<Vec<String>>,
    points: Vec<Vec<Value>>,
    #[serde(default)]
    directions: Option<Vec<Vec<Value>>>,
}

/// Parses a point cloud with optional projection directions:
///
/// ```json
/// {"labels": ["a", "b"], "points": [[0, 1], [2, 3.5]],
///  "directions": [[1, 0], [0, 1]]}
/// ```
pub fn points_from_json(text: &str) -> Result<PointsInput> {
    let doc: PointsDoc =
        serde_json::from_str(text).map_err(|e| FcaError::parse(format!("points json: {e}")))?;
    let parse_vectors = |vectors: &[Vec<Value>], what: &str| -> Result<Vec<Vec<BigRational>>> {
        vectors
            .iter()
            .enumerate()
            .map(|(k, v)| {
                v.iter()
                    .map(|x| value_to_rational(x, &format!("{what} {}", k + 1)))
                    .collect()
            })
            .collect()
    };
    Ok(PointsInput {
        points: parse_vectors(&doc.points, "point")?,
        directions: match &doc.directions {
            Some(d) => Some(parse_vectors(d, "direction")?),
            None => None,
        },
        labels: doc.labels,
    })
}

#[derive(Deserialize)]
struct MeasureDoc {
    weights: Value,
}

/// Parses an explicit measure bound to a context's objects. Weights may be a
/// positional array or an object keyed by object label (absent labels get
/// weight zero); values may be numbers, `p/q` strings, or decimal strings.
pub fn measure_kind_from_json(text: &str, ctx: &FormalContext) -> Result<MeasureKind> {
    let doc: MeasureDoc =
        serde_json::from_str(text).map_err(|e| FcaError::parse(format!("measure json: {e}")))?;
    let weights = match &doc.weights {
        Value::Array(values) => {
            if values.len() != ctx.n_objects() {
                return Err(FcaError::invalid(format!(
                    "measure lists {} weights for {} objects",
                    values.len(),
                    ctx.n_objects()
                )));
            }
            values
                .iter()
                .enumerate()
                .map(|(g, v)| value_to_rational(v, &format!("weight {}", g + 1)))
                .collect::<Result<Vec<_>>>()?
        }
        Value::Object(map) => {
            let mut weights = vec![BigRational::new(0.into(), 1.into()); ctx.n_objects()];
            for (label, v) in map {
                let g = ctx.object_index(label).ok_or_else(|| {
                    FcaError::invalid(format!("measure names unknown object {label:?}"))
                })?;
                weights[g] = value_to_rational(v, &format!("weight of {label:?}"))?;
            }
            weights
        }
        other => {
            return Err(FcaError::parse(format!(
                "measure json: \"weights\" must be an array or an object, found {other}"
            )));
        }
    };
    Ok(MeasureKind::Explicit(weights))
}

#[derive(Deserialize)]
struct SampleDoc {
    sample: Vec<String>,
}

/// Parses a sample as a list of object labels with repetition:
/// `{"sample": ["g2", "g3", "g2"]}`.
pub fn sample_from_json(text: &str, ctx: &FormalContext) -> Result<Sample> {
    let doc: SampleDoc =
        serde_json::from_str(text).map_err(|e| FcaError::parse(format!("sample json: {e}")))?;
    Sample::from_labels(ctx, &doc.sample)
}
