//! Knot-table ingestion and pretzel-candidacy matching.
//!
//! Records are JSON lines:
//!
//! ```text
//! {"name":"8_21","crossings":8,"alternating":false,"v1":{"min_deg":1,"coeffs":[2,-2,3,-3,2,-2,1]}}
//! ```
//!
//! `coeffs` ascend from `t^min_deg`. A knot whose unknot-normalized Jones
//! polynomial matches no diagram of the census for its span (up to
//! `t ↔ t^-1`) is not pretzel; otherwise the matching diagrams are
//! reported as candidates only.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{CensusEntry, CensusError};
use crate::diagram::PretzelDiagram;
use crate::laurent::{LaurentPoly, TPoly};
use crate::planar::{jones1, PlanarError};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate knot name {name:?}")]
    Duplicate { line: usize, name: String },
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct V1Json {
    min_deg: i64,
    coeffs: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordJson {
    name: String,
    crossings: u32,
    alternating: bool,
    v1: V1Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub crossings: u32,
    pub alternating: bool,
    pub v1: TPoly<i64>,
}

impl KnotRecord {
    /// `span V = span V₁ + 1`.
    pub fn span_v(&self) -> i64 {
        self.v1.span().expect("records hold a nonzero V1") + 1
    }

    /// The record as one JSON line in the input schema.
    pub fn to_json_line(&self) -> String {
        let (min_deg, coeffs) = self.v1.to_dense().expect("nonzero V1");
        serde_json::to_string(&RecordJson {
            name: self.name.clone(),
            crossings: self.crossings,
            alternating: self.alternating,
            v1: V1Json { min_deg, coeffs },
        })
        .expect("record serializes")
    }
}

fn parse_record(line: &str, line_no: usize) -> Result<KnotRecord, TableError> {
    let parse_err = |message: String| TableError::Parse {
        line: line_no,
        message,
    };
    let raw: RecordJson = serde_json::from_str(line).map_err(|e| parse_err(e.to_string()))?;
    if raw.crossings == 0 {
        return Err(parse_err("crossings must be positive".into()));
    }
    let v1 = LaurentPoly::from_dense(raw.v1.min_deg, &raw.v1.coeffs);
    if v1.is_zero() {
        return Err(parse_err("v1 is the zero polynomial".into()));
    }
    Ok(KnotRecord {
        name: raw.name,
        crossings: raw.crossings,
        alternating: raw.alternating,
        v1: TPoly(v1),
    })
}

/// Parses JSON-lines table text; blank lines are skipped.
pub fn parse_table(text: &str) -> Result<Vec<KnotRecord>, TableError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec = parse_record(line, i + 1)?;
        if !seen.insert(rec.name.clone()) {
            return Err(TableError::Duplicate {
                line: i + 1,
                name: rec.name,
            });
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, TableError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NOT_PRETZEL")]
    NotPretzel,
    #[serde(rename = "CANDIDATES")]
    Candidates,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotPretzel => "NOT_PRETZEL",
            Verdict::Candidates => "CANDIDATES",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub name: String,
    #[serde(rename = "span_V")]
    pub span_v: i64,
    /// Canonical census diagrams with the same `V₁` up to `t ↔ t^-1`.
    pub candidates: Vec<PretzelDiagram>,
    pub verdict: Verdict,
}

/// Census diagrams of one span with their `V₁`.
pub struct JonesCensus {
    pub span: i64,
    pub entries: Vec<(PretzelDiagram, TPoly<i64>)>,
}

impl JonesCensus {
    /// Computes `V₁` of every knot in `census`.
    pub fn new(span: i64, census: &[CensusEntry]) -> Result<Self, PlanarError> {
        let entries = census
            .par_iter()
            .filter(|e| e.is_knot)
            .map(|e| Ok((e.diagram.clone(), jones1::<i64>(&e.diagram)?)))
            .collect::<Result<_, PlanarError>>()?;
        Ok(Self { span, entries })
    }

    pub fn matches(&self, v1: &TPoly<i64>) -> Vec<PretzelDiagram> {
        let found: BTreeSet<PretzelDiagram> = self
            .entries
            .iter()
            .filter(|(_, w)| w.matches_up_to_mirror(v1))
            .map(|(d, _)| d.clone())
            .collect();
        found.into_iter().collect()
    }
}

/// Classifies each record against the census for its span, obtained from
/// `census_for` once per distinct span.
pub fn classify<F>(records: &[KnotRecord], mut census_for: F) -> Result<Vec<ClassificationReport>, TableError>
where
    F: FnMut(i64) -> Result<Vec<CensusEntry>, CensusError>,
{
    let mut by_span: BTreeMap<i64, JonesCensus> = BTreeMap::new();
    for rec in records {
        let s = rec.span_v();
        if let Entry::Vacant(slot) = by_span.entry(s) {
            let census = census_for(s)?;
            slot.insert(JonesCensus::new(s, &census)?);
        }
    }
    Ok(records
        .iter()
        .map(|rec| {
            let candidates = by_span[&rec.span_v()].matches(&rec.v1);
            let verdict = if candidates.is_empty() {
                Verdict::NotPretzel
            } else {
                Verdict::Candidates
            };
            ClassificationReport {
                name: rec.name.clone(),
                span_v: rec.span_v(),
                candidates,
                verdict,
            }
        })
        .collect())
}

pub fn render_reports_json(reports: &[ClassificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// Aligned text table, one knot per row.
pub fn render_reports_text(reports: &[ClassificationReport]) -> String {
    let header = ["knot", "span_V", "verdict", "candidates (up to mirror)"];
    let rows: Vec<[String; 4]> = reports
        .iter()
        .map(|r| {
            let cands = r
                .candidates
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            [r.name.clone(), r.span_v.to_string(), r.verdict.to_string(), cands]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: [&str; 4]| {
        let text = format!(
            "{:<w0$}  {:>w1$}  {:<w2$}  {}",
            cells[0],
            cells[1],
            cells[2],
            cells[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
        );
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(header);
    for row in &rows {
        line([&row[0], &row[1], &row[2], &row[3]]);
    }
    out
}
