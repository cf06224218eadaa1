//! CSV ingestion. The first column holds row labels; the remaining columns
//! are typed by the scaling spec: ordinal and interordinal columns parse as
//! exact numbers, hierarchical columns as `/`-separated paths, and all other
//! columns (nominal or unmentioned) stay categorical.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use num::rational::BigRational;

use crate::error::{FcaError, Result};
use crate::rational::parse_rational;
use crate::scaling::{Column, ColumnValues, DataTable, ScaleKind, ScalingSpec};

enum ColumnBuilder {
    Categorical(Vec<String>),
    Numeric(Vec<BigRational>),
    Paths(Vec<Vec<String>>),
}

pub fn table_from_csv_reader<R: Read>(reader: R, spec: &ScalingSpec) -> Result<DataTable> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = csv_reader
        .headers()
        .map_err(|e| FcaError::parse(format!("csv header: {e}")))?
        .clone();
    if headers.is_empty() {
        return Err(FcaError::parse("csv has no header row".to_string()));
    }
    let names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let mut builders: Vec<ColumnBuilder> = names
        .iter()
        .map(|name| match spec.directive_for(name).map(|d| &d.scale) {
            Some(ScaleKind::Ordinal { .. }) | Some(ScaleKind::Interordinal { .. }) => {
                ColumnBuilder::Numeric(Vec::new())
            }
            Some(ScaleKind::Hierarchical) => ColumnBuilder::Paths(Vec::new()),
            Some(ScaleKind::Nominal) | None => ColumnBuilder::Categorical(Vec::new()),
        })
        .collect();

    let mut row_labels = Vec::new();
    for (k, record) in csv_reader.records().enumerate() {
        let row = k + 2; // 1-based, after the header row
        let record = record.map_err(|e| FcaError::parse(format!("csv row {row}: {e}")))?;
        let mut fields = record.iter();
        let label = fields
            .next()
            .ok_or_else(|| FcaError::parse(format!("csv row {row} is empty")))?;
        row_labels.push(label.to_string());
        for (builder, (cell, name)) in builders.iter_mut().zip(fields.zip(&names)) {
            match builder {
                ColumnBuilder::Categorical(values) => values.push(cell.to_string()),
                ColumnBuilder::Numeric(values) => {
                    values.push(parse_rational(cell).map_err(|e| {
                        FcaError::parse(format!("csv row {row}, column {name:?}: {e}"))
                    })?)
                }
                ColumnBuilder::Paths(values) => {
                    let path: Vec<String> = cell
                        .split('/')
                        .map(|part| part.trim().to_string())
                        .collect();
                    if path.iter().any(String::is_empty) {
                        return Err(FcaError::parse(format!(
                            "csv row {row}, column {name:?}: path {cell:?} has an empty segment"
                        )));
                    }
                    values.push(path);
                }
            }
        }
    }

    let columns = names
        .into_iter()
        .zip(builders)
        .map(|(name, builder)| Column {
            name,
            values: match builder {
                ColumnBuilder::Categorical(v) => ColumnValues::Categorical(v),
                ColumnBuilder::Numeric(v) => ColumnValues::Numeric(v),
                ColumnBuilder::Paths(v) => ColumnValues::Paths(v),
            },
        })
        .collect();
    DataTable::new(row_labels, columns)
}

pub fn table_from_csv_path<P: AsRef<Path>>(path: P, spec: &ScalingSpec) -> Result<DataTable> {
    let file = File::open(path.as_ref())
        .map_err(|e| FcaError::parse(format!("cannot open {}: {e}", path.as_ref().display())))?;
    table_from_csv_reader(file, spec)
}
