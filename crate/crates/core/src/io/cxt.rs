//! Burmeister `.cxt` interchange format.
//!
//! The writer emits a canonical form — `B`, a blank line, the two counts, a
//! blank line, all labels, then the `X`/`.` grid — and the reader accepts
//! any placement of blank lines, so a context written here reads back and
//! re-writes byte-identically.

use std::path::Path;

use crate::context::FormalContext;
use crate::error::{FcaError, Result};

/// Renders a context in Burmeister format.
pub fn context_to_cxt(ctx: &FormalContext) -> Result<String> {
    for label in ctx.object_labels().iter().chain(ctx.attribute_labels()) {
        if label.trim().is_empty() {
            return Err(FcaError::invalid(
                "blank labels cannot be represented in the cxt format",
            ));
        }
    }
    let mut out = String::new();
    out.push_str("B\n\n");
    out.push_str(&format!("{}\n{}\n\n", ctx.n_objects(), ctx.n_attributes()));
    for label in ctx.object_labels() {
        out.push_str(label);
        out.push('\n');
    }
    for label in ctx.attribute_labels() {
        out.push_str(label);
        out.push('\n');
    }
    for g in 0..ctx.n_objects() {
        for m in 0..ctx.n_attributes() {
            out.push(if ctx.incident(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses a Burmeister-format context.
pub fn context_from_cxt(text: &str) -> Result<FormalContext> {
    let mut lines = text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .filter(|l| !l.trim().is_empty());
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| {
            FcaError::parse(format!("cxt: unexpected end of input, expected {what}"))
        })
    };

    let header = next("the format tag 'B'")?;
    if header.trim() != "B" {
        return Err(FcaError::parse(format!(
            "cxt: expected format tag 'B', found {header:?}"
        )));
    }
    let n_objects: usize = next("the object count")?
        .trim()
        .parse()
        .map_err(|_| FcaError::parse("cxt: invalid object count".to_string()))?;
    let n_attributes: usize = next("the attribute count")?
        .trim()
        .parse()
        .map_err(|_| FcaError::parse("cxt: invalid attribute count".to_string()))?;

    let mut object_labels = Vec::with_capacity(n_objects);
    for k in 0..n_objects {
        object_labels.push(next(&format!("object label {}", k + 1))?.to_string());
    }
    let mut attribute_labels = Vec::with_capacity(n_attributes);
    for k in 0..n_attributes {
        attribute_labels.push(next(&format!("attribute label {}", k + 1))?.to_string());
    }

    let mut pairs = Vec::new();
    // With zero attributes every incidence row is an empty line, which the
    // blank-line filter swallows; there is nothing to read.
    for g in 0..if n_attributes == 0 { 0 } else { n_objects } {
        let row = next(&format!("incidence row {}", g + 1))?;
        let cells: Vec<char> = row.trim_end().chars().collect();
        if cells.len() != n_attributes {
            return Err(FcaError::parse(format!(
                "cxt: incidence row {} has {} cells, expected {}",
                g + 1,
                cells.len(),
                n_attributes
            )));
        }
        for (m, c) in cells.into_iter().enumerate() {
            match c {
                'X' | 'x' => pairs.push((g, m)),
                '.' => {}
                other => {
                    return Err(FcaError::parse(format!(
                        "cxt: incidence row {} contains {other:?}, expected 'X' or '.'",
                        g + 1
                    )));
                }
            }
        }
    }
    FormalContext::new(object_labels, attribute_labels, &pairs)
}

/// Writes a context to a `.cxt` file.
pub fn write_cxt_file(ctx: &FormalContext, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, context_to_cxt(ctx)?)?;
    Ok(())
}

/// Reads a context from a `.cxt` file.
pub fn read_cxt_file(path: impl AsRef<Path>) -> Result<FormalContext> {
    context_from_cxt(&std::fs::read_to_string(path)?)
}
