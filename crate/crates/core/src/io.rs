//! Edge-list and Matrix Market readers, canonical edge-list writer.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Index base of node ids in an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum IndexBase {
    Zero,
    #[default]
    One,
}

impl IndexBase {
    pub fn offset(self) -> usize {
        match self {
            IndexBase::Zero => 0,
            IndexBase::One => 1,
        }
    }
}

/// Options for [`load_edge_list`].
#[derive(Debug, Clone, Copy, Default)]
pub struct EdgeListOptions {
    pub base: IndexBase,
    /// Declared node count. Indices at or beyond it are rejected; when
    /// absent the count is `1 + max index`.
    pub num_nodes: Option<usize>,
}

impl EdgeListOptions {
    pub fn with_base(base: IndexBase) -> Self {
        EdgeListOptions { base, num_nodes: None }
    }
}

fn parse_index(token: &str, line: usize, base: IndexBase, declared: Option<usize>) -> Result<usize> {
    let raw: i64 = token
        .parse()
        .map_err(|_| Error::Parse { line, message: format!("expected an integer node id, found {token:?}") })?;
    let shifted = raw - base.offset() as i64;
    let out_of_range = shifted < 0 || declared.is_some_and(|n| shifted as u64 >= n as u64);
    if out_of_range {
        return Err(Error::IndexOutOfRange { line, index: raw, n: declared.unwrap_or(0) });
    }
    Ok(shifted as usize)
}

fn parse_weight(token: &str, line: usize) -> Result<f64> {
    let w: f64 = token
        .parse()
        .map_err(|_| Error::Parse { line, message: format!("expected a numeric weight, found {token:?}") })?;
    if !w.is_finite() {
        return Err(Error::Parse { line, message: format!("non-finite weight {token:?}") });
    }
    if w < 0.0 {
        return Err(Error::NegativeWeight { line, weight: w });
    }
    Ok(w)
}

/// Reads lines `u v` or `u v w`. Blank lines and lines starting with `#`
/// are skipped. Self-loops are dropped (see
/// [`DirectedGraph::self_loops_dropped`]) and duplicate edges merged.
pub fn load_edge_list<R: BufRead>(reader: R, options: EdgeListOptions) -> Result<DirectedGraph> {
    let mut edges = Vec::new();
    let mut max_index: Option<usize> = None;
    for (k, line) in reader.lines().enumerate() {
        let line_no = k + 1;
        let line = line?;
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v` or `u v w`, found {} fields", tokens.len()),
            });
        }
        let u = parse_index(tokens[0], line_no, options.base, options.num_nodes)?;
        let v = parse_index(tokens[1], line_no, options.base, options.num_nodes)?;
        let w = match tokens.get(2) {
            Some(t) => parse_weight(t, line_no)?,
            None => 1.0,
        };
        max_index = Some(max_index.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, w));
    }
    let inferred = max_index.map_or(0, |m| m + 1);
    let n = options.num_nodes.unwrap_or(0).max(inferred);
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    DirectedGraph::from_weighted_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmField {
    Pattern,
    Real,
}

/// Reads a Matrix Market `coordinate` file with `pattern`, `real` or
/// `integer` field and `general` or `symmetric` symmetry. Indices are
/// 1-based by format definition.
pub fn load_matrix_market<R: BufRead>(reader: R) -> Result<DirectedGraph> {
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::EmptyInput)?;
    let header = header?;
    let tokens: Vec<String> = header.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::UnsupportedFormat(header.trim().to_string()));
    }
    if tokens[2] != "coordinate" {
        return Err(Error::UnsupportedFormat(format!("{} format", tokens[2])));
    }
    let field = match tokens[3].as_str() {
        "pattern" => MmField::Pattern,
        "real" | "integer" => MmField::Real,
        other => return Err(Error::UnsupportedFormat(format!("{other} field"))),
    };
    let symmetric = match tokens[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(Error::UnsupportedFormat(format!("{other} symmetry"))),
    };

    let mut size: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut entries = 0usize;
    for (k, line) in lines {
        let line_no = k + 1;
        let line = line?;
        let content = line.trim();
        if content.is_empty() || content.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some((n, nnz)) = size else {
            if fields.len() != 3 {
                return Err(Error::Parse { line: line_no, message: "expected `rows cols entries`".into() });
            }
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse { line: line_no, message: format!("invalid size field {t:?}") })
            };
            let (rows, cols, nnz) = (parse(fields[0])?, parse(fields[1])?, parse(fields[2])?);
            if rows != cols {
                return Err(Error::DimensionMismatch(format!("{rows} x {cols} matrix is not square")));
            }
            if rows == 0 {
                return Err(Error::EmptyInput);
            }
            size = Some((rows, nnz));
            edges.reserve(if symmetric { 2 * nnz } else { nnz });
            continue;
        };
        let expected = if field == MmField::Pattern { 2 } else { 3 };
        if fields.len() != expected {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {expected} fields, found {}", fields.len()),
            });
        }
        entries += 1;
        if entries > nnz {
            return Err(Error::DimensionMismatch(format!("more than the declared {nnz} entries")));
        }
        let i = parse_index(fields[0], line_no, IndexBase::One, Some(n))?;
        let j = parse_index(fields[1], line_no, IndexBase::One, Some(n))?;
        let w = match field {
            MmField::Pattern => 1.0,
            MmField::Real => parse_weight(fields[2], line_no)?,
        };
        edges.push((i, j, w));
        if symmetric && i != j {
            edges.push((j, i, w));
        }
    }
    let (n, nnz) = size.ok_or(Error::EmptyInput)?;
    if entries != nnz {
        return Err(Error::DimensionMismatch(format!("declared {nnz} entries, found {entries}")));
    }
    DirectedGraph::from_weighted_edges(n, edges)
}

/// Writes the canonical 0-based edge list: one `u v` line per edge in
/// row-major order, with a third weight column when the graph is weighted.
pub fn write_edge_list<W: Write>(graph: &DirectedGraph, mut out: W) -> Result<()> {
    let weighted = graph.is_weighted();
    for (u, v, w) in graph.edges() {
        if weighted {
            writeln!(out, "{u} {v} {w}")?;
        } else {
            writeln!(out, "{u} {v}")?;
        }
    }
    Ok(())
}
