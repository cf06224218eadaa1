//! Conceptual scaling: turning many-valued data (categorical tables, numeric
//! columns, hierarchies, partial orders, point clouds) into formal contexts.

use std::collections::{BTreeSet, HashMap};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::context::FormalContext;
use crate::error::{FcaError, Result};

/// A many-valued data table: one row per object, one column per
/// characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataTable {
    row_labels: Vec<String>,
    columns: Vec<Column>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub values: ColumnValues,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnValues {
    Categorical(Vec<String>),
    Numeric(Vec<BigRational>),
    /// Category paths from the top of a classification tree downwards; each
    /// element is the full name of a node.
    Paths(Vec<Vec<String>>),
}

impl ColumnValues {
    fn len(&self) -> usize {
        match self {
            ColumnValues::Categorical(v) => v.len(),
            ColumnValues::Numeric(v) => v.len(),
            ColumnValues::Paths(v) => v.len(),
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            ColumnValues::Categorical(_) => "categorical",
            ColumnValues::Numeric(_) => "numeric",
            ColumnValues::Paths(_) => "hierarchical-path",
        }
    }
}

impl DataTable {
    pub fn new(row_labels: Vec<String>, columns: Vec<Column>) -> Result<Self> {
        let mut names = HashMap::new();
        for (i, col) in columns.iter().enumerate() {
            if col.values.len() != row_labels.len() {
                return Err(FcaError::invalid(format!(
                    "column {:?} has {} values for {} rows",
                    col.name,
                    col.values.len(),
                    row_labels.len()
                )));
            }
            if let Some(j) = names.insert(col.name.as_str(), i) {
                return Err(FcaError::invalid(format!(
                    "duplicate column name {:?} at positions {j} and {i}",
                    col.name
                )));
            }
            if let ColumnValues::Paths(paths) = &col.values {
                for (r, p) in paths.iter().enumerate() {
                    if p.is_empty() {
                        return Err(FcaError::invalid(format!(
                            "column {:?}, row {r}: empty category path",
                            col.name
                        )));
                    }
                }
            }
        }
        Ok(DataTable {
            row_labels,
            columns,
        })
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }
}

/// Whether an ordinal scale keeps lower bounds or upper bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Attributes of the form `column ≤ t`.
    Leq,
    /// Attributes of the form `column ≥ t`.
    Geq,
}

/// How to scale one column. `None` thresholds default to the sorted distinct
/// observed values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaleKind {
    Nominal,
    Ordinal {
        thresholds: Option<Vec<BigRational>>,
        direction: Direction,
    },
    Interordinal {
        thresholds: Option<Vec<BigRational>>,
    },
    Hierarchical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnDirective {
    pub column: String,
    pub scale: ScaleKind,
}

/// Per-column scaling directives for a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingSpec {
    pub directives: Vec<ColumnDirective>,
}

impl ScalingSpec {
    pub fn directive_for(&self, column: &str) -> Option<&ColumnDirective> {
        self.directives.iter().find(|d| d.column == column)
    }
}

/// Formats a rational for attribute labels: integers plainly, fractions with
/// a power-of-ten denominator as terminating decimals, everything else as
/// `p/q`.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        return value.numer().to_string();
    }
    // The decimal expansion terminates exactly when the reduced denominator
    // is of the form 2^a · 5^b.
    let mut d = value.denom().clone();
    for p in [2u8, 5] {
        let p = BigInt::from(p);
        while (&d % &p).is_zero() {
            d /= &p;
        }
    }
    if !d.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    // Scale to an integer over 10^k with the smallest such k.
    let mut scaled = value.clone();
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut k = 0u32;
    while !scaled.denom().is_one() {
        scaled *= &ten;
        k += 1;
    }
    let digits = scaled.numer().abs().to_string();
    let sign = if value.is_negative() { "-" } else { "" };
    let k = k as usize;
    if digits.len() <= k {
        format!("{sign}0.{digits:0>width$}", width = k)
    } else {
        let (int_part, frac_part) = digits.split_at(digits.len() - k);
        format!("{sign}{int_part}.{frac_part}")
    }
}

fn sorted_distinct(values: &[BigRational]) -> Vec<BigRational> {
    let mut out = values.to_vec();
    out.sort();
    out.dedup();
    out
}

fn resolve_thresholds(
    column: &str,
    given: &Option<Vec<BigRational>>,
    observed: &[BigRational],
) -> Result<Vec<BigRational>> {
    let thresholds = match given {
        Some(t) => t.clone(),
        None => sorted_distinct(observed),
    };
    if thresholds.is_empty() {
        return Err(FcaError::invalid(format!(
            "column {column:?}: no thresholds (empty list and no observed values)"
        )));
    }
    for w in thresholds.windows(2) {
        if w[0] >= w[1] {
            return Err(FcaError::invalid(format!(
                "column {column:?}: thresholds not strictly increasing ({} then {})",
                format_rational(&w[0]),
                format_rational(&w[1])
            )));
        }
    }
    Ok(thresholds)
}

/// Attribute labels plus, per attribute, the rows that carry it.
struct ScaledBlock {
    labels: Vec<String>,
    incidences: Vec<Vec<usize>>,
}

fn scale_nominal_column(name: &str, values: &[String]) -> ScaledBlock {
    let categories: BTreeSet<&String> = values.iter().collect();
    let mut labels = Vec::new();
    let mut incidences = Vec::new();
    for cat in categories {
        labels.push(format!("{name}={cat}"));
        incidences.push(
            values
                .iter()
                .enumerate()
                .filter(|(_, v)| *v == cat)
                .map(|(r, _)| r)
                .collect(),
        );
    }
    ScaledBlock { labels, incidences }
}

fn scale_numeric_column(
    name: &str,
    values: &[BigRational],
    thresholds: &[BigRational],
    leq: bool,
    geq: bool,
) -> ScaledBlock {
    let mut labels = Vec::new();
    let mut incidences = Vec::new();
    if leq {
        for t in thresholds {
            labels.push(format!("{name}≤{}", format_rational(t)));
            incidences.push(
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| *v <= t)
                    .map(|(r, _)| r)
                    .collect(),
            );
        }
    }
    if geq {
        for t in thresholds {
            labels.push(format!("{name}≥{}", format_rational(t)));
            incidences.push(
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| *v >= t)
                    .map(|(r, _)| r)
                    .collect(),
            );
        }
    }
    ScaledBlock { labels, incidences }
}

/// A node of a classification tree, as discovered from the paths of a
/// hierarchical column.
struct TreeNode {
    level: usize,
    name: String,
}

fn hierarchy_nodes(column: &str, paths: &[Vec<String>]) -> Result<Vec<TreeNode>> {
    // name -> (level, parent name at level-1, or None at the top)
    let mut info: HashMap<&String, (usize, Option<&String>)> = HashMap::new();
    for (r, path) in paths.iter().enumerate() {
        for (lvl, node) in path.iter().enumerate() {
            let parent = if lvl == 0 { None } else { Some(&path[lvl - 1]) };
            match info.get(node) {
                None => {
                    info.insert(node, (lvl, parent));
                }
                Some(&(seen_lvl, seen_parent)) => {
                    if seen_lvl != lvl {
                        return Err(FcaError::invalid(format!(
                            "column {column:?}, row {r}: category {node:?} appears at two \
                             different levels ({} and {})",
                            seen_lvl + 1,
                            lvl + 1
                        )));
                    }
                    if seen_parent != parent {
                        return Err(FcaError::invalid(format!(
                            "column {column:?}, row {r}: category {node:?} appears under two \
                             different parents ({:?} and {:?})",
                            seen_parent.map(String::as_str).unwrap_or("<top>"),
                            parent.map(String::as_str).unwrap_or("<top>")
                        )));
                    }
                }
            }
        }
    }
    let mut nodes: Vec<TreeNode> = info
        .into_iter()
        .map(|(name, (level, _))| TreeNode {
            level,
            name: name.clone(),
        })
        .collect();
    nodes.sort_by(|a, b| a.level.cmp(&b.level).then_with(|| a.name.cmp(&b.name)));
    Ok(nodes)
}

fn scale_hierarchical_column(column: &str, paths: &[Vec<String>]) -> Result<ScaledBlock> {
    let nodes = hierarchy_nodes(column, paths)?;
    let mut labels = Vec::new();
    let mut incidences = Vec::new();
    for node in &nodes {
        labels.push(node.name.clone());
        incidences.push(
            paths
                .iter()
                .enumerate()
                .filter(|(_, p)| p.get(node.level) == Some(&node.name))
                .map(|(r, _)| r)
                .collect(),
        );
    }
    Ok(ScaledBlock { labels, incidences })
}

/// Scales every column of a table according to its directives and apposes the
/// per-column contexts (same objects, concatenated attribute blocks) in the
/// table's column order.
pub fn scale_table(table: &DataTable, spec: &ScalingSpec) -> Result<FormalContext> {
    for directive in &spec.directives {
        if table.column(&directive.column).is_none() {
            return Err(FcaError::invalid(format!(
                "scaling directive for unknown column {:?}",
                directive.column
            )));
        }
    }
    {
        let mut seen = HashMap::new();
        for (i, d) in spec.directives.iter().enumerate() {
            if let Some(j) = seen.insert(d.column.as_str(), i) {
                return Err(FcaError::invalid(format!(
                    "two scaling directives for column {:?} (positions {j} and {i})",
                    d.column
                )));
            }
        }
    }

    let mut labels: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for col in table.columns() {
        let directive = spec.directive_for(&col.name).ok_or_else(|| {
            FcaError::invalid(format!("no scaling directive for column {:?}", col.name))
        })?;
        let block = match (&directive.scale, &col.values) {
            (ScaleKind::Nominal, ColumnValues::Categorical(values)) => {
                scale_nominal_column(&col.name, values)
            }
            (
                ScaleKind::Ordinal {
                    thresholds,
                    direction,
                },
                ColumnValues::Numeric(values),
            ) => {
                let thresholds = resolve_thresholds(&col.name, thresholds, values)?;
                let (leq, geq) = match direction {
                    Direction::Leq => (true, false),
                    Direction::Geq => (false, true),
                };
                scale_numeric_column(&col.name, values, &thresholds, leq, geq)
            }
            (ScaleKind::Interordinal { thresholds }, ColumnValues::Numeric(values)) => {
                let thresholds = resolve_thresholds(&col.name, thresholds, values)?;
                scale_numeric_column(&col.name, values, &thresholds, true, true)
            }
            (ScaleKind::Hierarchical, ColumnValues::Paths(paths)) => {
                scale_hierarchical_column(&col.name, paths)?
            }
            (scale, values) => {
                return Err(FcaError::invalid(format!(
                    "column {:?} is {} but its directive is {}",
                    col.name,
                    values.kind_name(),
                    scale_kind_name(scale)
                )));
            }
        };
        let offset = labels.len();
        labels.extend(block.labels);
        for (k, rows) in block.incidences.into_iter().enumerate() {
            for r in rows {
                pairs.push((r, offset + k));
            }
        }
    }
    FormalContext::new(table.row_labels().to_vec(), labels, &pairs)
}

fn scale_kind_name(scale: &ScaleKind) -> &'static str {
    match scale {
        ScaleKind::Nominal => "nominal",
        ScaleKind::Ordinal { .. } => "ordinal",
        ScaleKind::Interordinal { .. } => "interordinal",
        ScaleKind::Hierarchical => "hierarchical",
    }
}

/// Scales one hierarchical-path column directly into a context.
pub fn scale_hierarchical(row_labels: Vec<String>, paths: &[Vec<String>]) -> Result<FormalContext> {
    if paths.len() != row_labels.len() {
        return Err(FcaError::invalid(format!(
            "{} paths for {} objects",
            paths.len(),
            row_labels.len()
        )));
    }
    for (r, p) in paths.iter().enumerate() {
        if p.is_empty() {
            return Err(FcaError::invalid(format!("row {r}: empty category path")));
        }
    }
    let block = scale_hierarchical_column("<hierarchy>", paths)?;
    let mut pairs = Vec::new();
    for (k, rows) in block.incidences.iter().enumerate() {
        for &r in rows {
            pairs.push((r, k));
        }
    }
    FormalContext::new(row_labels, block.labels, &pairs)
}

/// A strict partial order (dominance relation) on `n` items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOrder {
    n: usize,
    dominates: Vec<bool>,
}

impl PartialOrder {
    /// Builds the relation from 0-based `(i, j)` pairs meaning "item `i`
    /// dominates item `j`", and validates the strict-partial-order axioms.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut dominates = vec![false; n * n];
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(FcaError::invalid(format!(
                    "dominance pair ({i}, {j}) out of range for {n} items"
                )));
            }
            dominates[i * n + j] = true;
        }
        let order = PartialOrder { n, dominates };
        for i in 0..n {
            if order.dominates(i, i) {
                return Err(FcaError::invalid(format!(
                    "not a strict partial order: irreflexivity violated (item {} dominates itself)",
                    i + 1
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if order.dominates(i, j) && order.dominates(j, i) {
                    return Err(FcaError::invalid(format!(
                        "not a strict partial order: antisymmetry violated between items {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !order.dominates(i, j) {
                    continue;
                }
                for k in 0..n {
                    if order.dominates(j, k) && !order.dominates(i, k) {
                        return Err(FcaError::invalid(format!(
                            "not a strict partial order: transitivity violated on items {}, {}, {}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(order)
    }

    pub fn n_items(&self) -> usize {
        self.n
    }

    pub fn dominates(&self, i: usize, j: usize) -> bool {
        self.dominates[i * self.n + j]
    }

    /// All dominance pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.dominates(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Options for [`scale_posets_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetScaleOptions {
    /// Object labels; default `p1, p2, …`.
    pub poset_labels: Option<Vec<String>>,
    /// Item names used in attribute labels; default `1, 2, …`.
    pub item_names: Option<Vec<String>>,
    /// Whether to include the negated block of attributes (`¬(i≺j)`).
    /// Included by default; dropping it changes the extent family and is
    /// meant for sensitivity studies.
    pub include_non_dominance: bool,
}

impl Default for PosetScaleOptions {
    fn default() -> Self {
        PosetScaleOptions {
            poset_labels: None,
            item_names: None,
            include_non_dominance: true,
        }
    }
}

/// Scales a family of partial orders over the same `n` items into a context:
/// the posets are the objects; for every ordered pair `(i, j)` of distinct
/// items there is an attribute `i≺j` (the poset has it iff `i` dominates `j`)
/// and an attribute `¬(i≺j)` (iff it does not).
pub fn scale_posets(n_items: usize, posets: &[PartialOrder]) -> Result<FormalContext> {
    scale_posets_with(n_items, posets, &PosetScaleOptions::default())
}

pub fn scale_posets_with(
    n_items: usize,
    posets: &[PartialOrder],
    options: &PosetScaleOptions,
) -> Result<FormalContext> {
    for (p, poset) in posets.iter().enumerate() {
        if poset.n_items() != n_items {
            return Err(FcaError::invalid(format!(
                "poset {p} is over {} items, expected {n_items}",
                poset.n_items()
            )));
        }
    }
    let object_labels = match &options.poset_labels {
        Some(labels) => {
            if labels.len() != posets.len() {
                return Err(FcaError::invalid(format!(
                    "{} labels for {} posets",
                    labels.len(),
                    posets.len()
                )));
            }
            labels.clone()
        }
        None => (1..=posets.len()).map(|k| format!("p{k}")).collect(),
    };
    let item_names: Vec<String> = match &options.item_names {
        Some(names) => {
            if names.len() != n_items {
                return Err(FcaError::invalid(format!(
                    "{} item names for {n_items} items",
                    names.len()
                )));
            }
            names.clone()
        }
        None => (1..=n_items).map(|k| k.to_string()).collect(),
    };

    let ordered_pairs: Vec<(usize, usize)> = (0..n_items)
        .flat_map(|i| (0..n_items).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut labels: Vec<String> = ordered_pairs
        .iter()
        .map(|&(i, j)| format!("{}≺{}", item_names[i], item_names[j]))
        .collect();
    if options.include_non_dominance {
        labels.extend(
            ordered_pairs
                .iter()
                .map(|&(i, j)| format!("¬({}≺{})", item_names[i], item_names[j])),
        );
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (p, poset) in posets.iter().enumerate() {
        for (k, &(i, j)) in ordered_pairs.iter().enumerate() {
            if poset.dominates(i, j) {
                pairs.push((p, k));
            } else if options.include_non_dominance {
                pairs.push((p, ordered_pairs.len() + k));
            }
        }
    }
    FormalContext::new(object_labels, labels, &pairs)
}

/// The `d` coordinate axis directions, the default projection set for
/// [`scale_halfspaces`].
pub fn axis_directions(d: usize) -> Vec<Vec<BigRational>> {
    (0..d)
        .map(|k| {
            (0..d)
                .map(|i| {
                    if i == k {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn format_direction(direction: &[BigRational]) -> String {
    let parts: Vec<String> = direction.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

/// Scales a finite point cloud by closed halfspaces: for each direction `u`
/// and each threshold `t` among the projections `⟨u, x⟩` of the points, the
/// attributes `⟨u,·⟩≤t` and `⟨u,·⟩≥t`. With enough directions the extents
/// approximate the closed convex sets spanned by the points.
pub fn scale_halfspaces(
    points: &[Vec<BigRational>],
    directions: &[Vec<BigRational>],
    point_labels: Option<&[String]>,
) -> Result<FormalContext> {
    if directions.is_empty() {
        return Err(FcaError::invalid("at least one direction is required"));
    }
    let d = directions[0].len();
    for (k, u) in directions.iter().enumerate() {
        if u.len() != d {
            return Err(FcaError::invalid(format!(
                "direction {k} has dimension {}, expected {d}",
                u.len()
            )));
        }
    }
    for (r, x) in points.iter().enumerate() {
        if x.len() != d {
            return Err(FcaError::invalid(format!(
                "point {r} has dimension {}, expected {d}",
                x.len()
            )));
        }
    }
    let object_labels: Vec<String> = match point_labels {
        Some(labels) => {
            if labels.len() != points.len() {
                return Err(FcaError::invalid(format!(
                    "{} labels for {} points",
                    labels.len(),
                    points.len()
                )));
            }
            labels.to_vec()
        }
        None => (1..=points.len()).map(|k| format!("x{k}")).collect(),
    };

    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    for u in directions {
        let projections: Vec<BigRational> = points
            .iter()
            .map(|x| x.iter().zip(u).map(|(xi, ui)| xi * ui).sum())
            .collect();
        let thresholds = sorted_distinct(&projections);
        let dir_label = format_direction(u);
        for t in &thresholds {
            let m = labels.len();
            labels.push(format!("⟨{dir_label},·⟩≤{}", format_rational(t)));
            for (r, p) in projections.iter().enumerate() {
                if p <= t {
                    pairs.push((r, m));
                }
            }
        }
        for t in &thresholds {
            let m = labels.len();
            labels.push(format!("⟨{dir_label},·⟩≥{}", format_rational(t)));
            for (r, p) in projections.iter().enumerate() {
                if p >= t {
                    pairs.push((r, m));
                }
            }
        }
    }
    FormalContext::new(object_labels, labels, &pairs)
}
