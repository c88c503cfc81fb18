//! Matrix input documents and machine-readable reports.
//!
//! Plain text: a header line `m n`, then `m` lines of `n` signed decimal
//! integers. `#` starts a comment that runs to the end of the line.
//! Structured input is JSON, either a bare array of rows or an object
//! `{"rows": m, "cols": n, "matrix": [...]}` where `rows`/`cols` are optional.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{Decomposition, DecompositionRun, Verification};
use crate::graph::{ComponentPartition, ConnectivityCheck, Echelon};
use crate::hermite::HnfResult;
use crate::matrix::{IntMatrix, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    PlainText,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    pub source: String,
    pub matrix: IntMatrix,
    pub format: InputFormat,
}

impl MatrixDocument {
    /// Parses either format, picking structured when the first
    /// non-whitespace character is `{` or `[`.
    pub fn parse(source: impl Into<String>, text: &str) -> Result<Self, ParseError> {
        let structured = matches!(text.trim_start().chars().next(), Some('{' | '['));
        let (matrix, format) = if structured {
            (parse_structured(text)?, InputFormat::Structured)
        } else {
            (parse_plain(text)?, InputFormat::PlainText)
        };
        Ok(MatrixDocument {
            source: source.into(),
            matrix,
            format,
        })
    }
}

/// Tokens of one line with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in content.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(idx),
            (true, Some(s)) => {
                out.push((s, &content[s..idx]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &content[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_int(line: usize, column: usize, tok: &str) -> Result<BigInt, ParseError> {
    let digits = tok.strip_prefix(['+', '-']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::at(line, column, format!("invalid integer token {tok:?}")));
    }
    tok.parse()
        .map_err(|_| ParseError::at(line, column, format!("invalid integer token {tok:?}")))
}

pub fn parse_plain(text: &str) -> Result<IntMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::at(1, 1, "missing header line \"m n\""))?;
    if header.len() != 2 {
        return Err(ParseError::at(hline, 1, "header must be exactly \"m n\""));
    }
    let dim = |(col, tok): (usize, &str)| -> Result<usize, ParseError> {
        match tok.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(ParseError::at(hline, col, format!("invalid dimension {tok:?}"))),
        }
    };
    let m = dim(header[0])?;
    let n = dim(header[1])?;

    let mut rows = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lineno, toks) in lines {
        if rows.len() == m {
            return Err(ParseError::at(
                lineno,
                toks[0].0,
                format!("unexpected data after {m} rows"),
            ));
        }
        if toks.len() != n {
            let col = toks.get(n).map_or(toks.last().map_or(1, |t| t.0), |t| t.0);
            return Err(ParseError::at(
                lineno,
                col,
                format!("expected {n} entries, found {}", toks.len()),
            ));
        }
        let row = toks
            .iter()
            .map(|&(col, tok)| parse_int(lineno, col, tok))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        last_line = lineno;
    }
    if rows.len() != m {
        return Err(ParseError::at(
            last_line + 1,
            1,
            format!("expected {m} rows, found {}", rows.len()),
        ));
    }
    Ok(IntMatrix::from_rows(rows).expect("dimensions checked"))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StructuredInput {
    Bare(IntMatrix),
    Object {
        rows: Option<usize>,
        cols: Option<usize>,
        matrix: IntMatrix,
    },
}

pub fn parse_structured(text: &str) -> Result<IntMatrix, ParseError> {
    let input: StructuredInput = serde_json::from_str(text).map_err(|e| {
        ParseError::at(e.line(), e.column(), format!("invalid structured matrix: {e}"))
    })?;
    match input {
        StructuredInput::Bare(m) => Ok(m),
        StructuredInput::Object { rows, cols, matrix } => {
            if rows.is_some_and(|r| r != matrix.rows()) || cols.is_some_and(|c| c != matrix.cols()) {
                return Err(ParseError::at(
                    1,
                    1,
                    format!(
                        "declared shape {:?}x{:?} does not match {}x{} entries",
                        rows,
                        cols,
                        matrix.rows(),
                        matrix.cols()
                    ),
                ));
            }
            Ok(matrix)
        }
    }
}

/// Plain-text rendering accepted by [`parse_plain`].
pub fn to_plain(m: &IntMatrix) -> String {
    format!("{} {}\n{}", m.rows(), m.cols(), m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnfReport {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    #[serde(rename = "H")]
    pub h: IntMatrix,
    #[serde(rename = "P")]
    pub p: IntMatrix,
    #[serde(rename = "P_inverse")]
    pub p_inverse: IntMatrix,
}

impl From<&HnfResult> for HnfReport {
    fn from(r: &HnfResult) -> Self {
        HnfReport {
            rank: r.rank,
            pivot_cols: r.pivot_cols_one_based(),
            h: r.h.clone(),
            p: r.p.clone(),
            p_inverse: r.p_inv.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChecksReport {
    /// Whether the Laplacian-RREF components match the zero-pattern ones.
    pub laplacian_rref_agrees: bool,
    /// Vertex sets read off the Laplacian RREF when they disagree.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub laplacian_rref_sets: Option<Vec<Vec<usize>>>,
    /// `None` unless verification was requested.
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub verify_reasons: Vec<String>,
    /// Brute-force split oracle agrees with the gram test; `None` if skipped.
    pub split_oracle_agrees: Option<bool>,
    /// Brute-force reducibility oracle agrees; `None` if skipped.
    pub reducibility_oracle_agrees: Option<bool>,
}

impl ChecksReport {
    pub fn from_connectivity(c: &ConnectivityCheck) -> Self {
        ChecksReport {
            laplacian_rref_agrees: c.agrees(),
            laplacian_rref_sets: match c {
                ConnectivityCheck::Agree(_) => None,
                ConnectivityCheck::Disagree { rref_sets, .. } => Some(rref_sets.clone()),
            },
            ..Default::default()
        }
    }

    pub fn record_verification(&mut self, v: &Verification) {
        self.verified = Some(v.ok);
        self.verify_reasons = v.reasons.clone();
    }

    /// False when any requested check failed. Laplacian agreement is
    /// informational only.
    pub fn passed(&self) -> bool {
        self.verified != Some(false)
            && self.split_oracle_agrees != Some(false)
            && self.reducibility_oracle_agrees != Some(false)
    }
}

/// Machine-readable decomposition result. All indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub decomposable: bool,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    #[serde(rename = "P")]
    pub p: IntMatrix,
    #[serde(rename = "P_inverse")]
    pub p_inverse: IntMatrix,
    #[serde(rename = "Q_vector")]
    pub q_vector: Vec<usize>,
    pub blocks: Vec<IntMatrix>,
    pub row_partition: Vec<Vec<usize>>,
    pub column_partition: Vec<Vec<usize>>,
    /// Input rows removed by zero-row stripping, if any.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub stripped_rows: Vec<usize>,
    pub checks: ChecksReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inconsistent report: {0}")]
pub struct ReportError(String);

impl DecomposeReport {
    pub fn new(run: &DecompositionRun, checks: ChecksReport) -> Self {
        let d = &run.decomposition;
        DecomposeReport {
            decomposable: d.decomposable,
            rank: run.hnf.rank,
            pivot_cols: run.hnf.pivot_cols_one_based(),
            p: d.p.clone(),
            p_inverse: d.p_inv.clone(),
            q_vector: d.q.one_based(),
            blocks: d.blocks.clone(),
            row_partition: d.row_partition_one_based(),
            column_partition: d.column_partition.one_based(),
            stripped_rows: Vec::new(),
            checks,
        }
    }

    /// Rebuilds the decomposition so it can be re-verified independently.
    pub fn to_decomposition(&self) -> Result<Decomposition, ReportError> {
        let q = Permutation::from_one_based(&self.q_vector).map_err(|e| ReportError(e.to_string()))?;
        let column_partition = ComponentPartition::from_one_based(q.len(), &self.column_partition)
            .ok_or_else(|| ReportError("column_partition is not a partition".into()))?;
        let row_partition = self
            .row_partition
            .iter()
            .map(|r| r.iter().map(|&i| i.checked_sub(1)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| ReportError("row indices are 1-based".into()))?;
        Ok(Decomposition {
            p: self.p.clone(),
            p_inv: self.p_inverse.clone(),
            q,
            blocks: self.blocks.clone(),
            row_partition,
            column_partition,
            decomposable: self.decomposable,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentMethod {
    Rref,
    ZeroPattern,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentsReport {
    pub method: String,
    pub laplacian: IntMatrix,
    /// Exact rationals as `p/q` strings.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rref: Option<Vec<Vec<String>>>,
    pub components: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub methods_agree: Option<bool>,
    /// Sets read from the RREF when they disagree with `components`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rref_sets: Option<Vec<Vec<usize>>>,
}

impl ComponentsReport {
    pub fn rref_rows(e: &Echelon) -> Vec<Vec<String>> {
        e.matrix.to_string_rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{run_hnf_decomposition, verify_decomposition};
    use crate::imat;

    #[test]
    fn plain_text_with_comments() {
        let text = "# worked example\n3 5\n2 -4 2 5 -6\n  2 -2 2 5 -3 # trailing\n\n0 -2 1 2 -3\n";
        let doc = MatrixDocument::parse("mem", text).unwrap();
        assert_eq!(doc.format, InputFormat::PlainText);
        assert_eq!(doc.matrix, imat![[2, -4, 2, 5, -6], [2, -2, 2, 5, -3], [0, -2, 1, 2, -3]]);
    }

    #[test]
    fn malformed_token_located() {
        let err = parse_plain("2 2\n1 2\n3 2a\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        assert!(err.message.contains("\"2a\""), "{}", err.message);
    }

    #[test]
    fn shape_errors() {
        assert!(parse_plain("").is_err());
        assert!(parse_plain("2\n1 2\n").is_err());
        assert!(parse_plain("0 2\n").is_err());
        let short = parse_plain("2 2\n1 2\n").unwrap_err();
        assert!(short.message.contains("expected 2 rows"));
        let wide = parse_plain("1 2\n1 2 3\n").unwrap_err();
        assert_eq!((wide.line, wide.column), (2, 5));
        let extra = parse_plain("1 1\n1\n2\n").unwrap_err();
        assert_eq!(extra.line, 3);
        assert!(parse_plain("1 1\n+\n").is_err());
    }

    #[test]
    fn unbounded_integers() {
        let big = "-98765432109876543210987654321";
        let m = parse_plain(&format!("1 2\n{big} +7\n")).unwrap();
        assert_eq!(m.get(0, 0).to_string(), big);
        assert_eq!(m.get(0, 1), &BigInt::from(7));
    }

    #[test]
    fn structured_inputs() {
        let bare = MatrixDocument::parse("mem", "[[1, \"2\"], [3, 4]]").unwrap();
        assert_eq!(bare.format, InputFormat::Structured);
        assert_eq!(bare.matrix, imat![[1, 2], [3, 4]]);
        let obj = parse_structured(r#"{"rows": 1, "cols": 2, "matrix": [["1", "1"]]}"#).unwrap();
        assert_eq!(obj, imat![[1, 1]]);
        assert!(parse_structured(r#"{"rows": 2, "matrix": [["1", "1"]]}"#).is_err());
        assert!(parse_structured(r#"[[1, 2], [3]]"#).is_err());
        assert!(parse_structured("[[1, \"x\"]]").is_err());
    }

    #[test]
    fn plain_rendering_parses_back() {
        let m = imat![[2, -40], [0, 7]];
        assert_eq!(parse_plain(&to_plain(&m)).unwrap(), m);
    }

    #[test]
    fn decompose_report_round_trip() {
        let a = imat![[2, -4, 2, 5, -6], [2, -2, 2, 5, -3], [0, -2, 1, 2, -3]];
        let run = run_hnf_decomposition(&a).unwrap();
        let report = DecomposeReport::new(&run, ChecksReport::from_connectivity(&run.connectivity));
        let json = serde_json::to_string_pretty(&report).unwrap();
        for key in ["\"P\"", "\"P_inverse\"", "\"Q_vector\"", "\"blocks\"", "\"checks\""] {
            assert!(json.contains(key), "missing {key}");
        }
        let back: DecomposeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        let d = back.to_decomposition().unwrap();
        assert_eq!(d, run.decomposition);
        assert!(verify_decomposition(&a, &d).ok);
    }
}
