//! Finite complete sets of reduced pretzel diagrams with a given span.
//!
//! Every reduced diagram whose span is `S` (apart from trivial knots and
//! two-strand torus links, which are covered by zero-entry diagrams) obeys
//!
//! * `|a| ≤ S + 4` for every entry, and at most `S/2 + 3` entries with `|a| > 1`,
//! * `Σ ≤ 2S + 8`: from `S ≥ Σ - M - 4` with `M ≤ S + 4`,
//! * at most `S` zero entries, and `|λ| ≤ max(S/2 + 2, S - 1)`.
//!
//! The generator walks multisets of entries with `|a| > 1` inside those
//! limits, then completes each with zeros or with `±1` entries.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::diagram::PretzelDiagram;
use crate::planar::{jones_span, PlanarError};
use crate::spanlaw::{span_formula, SpanVerdict};

/// Largest span accepted by [`brute_census`].
pub const BRUTE_CENSUS_MAX_SPAN: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census span {0} is too large for the brute-force oracle (limit {BRUTE_CENSUS_MAX_SPAN})")]
    TooLarge(i64),
    #[error("negative span {0}")]
    NegativeSpan(i64),
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

/// Generation limits derived from the target span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusBounds {
    pub max_abs_entry: i64,
    pub max_big_entries: usize,
    pub max_sigma: i64,
    pub max_zeros: usize,
    pub max_abs_lambda: i64,
}

impl CensusBounds {
    pub fn for_span(span: i64) -> Self {
        Self {
            max_abs_entry: span + 4,
            max_big_entries: (span / 2 + 3) as usize,
            max_sigma: 2 * span + 8,
            max_zeros: span as usize,
            max_abs_lambda: (span / 2 + 2).max(span - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    /// Canonical representative.
    pub diagram: PretzelDiagram,
    pub verdict: SpanVerdict,
    pub is_knot: bool,
}

impl CensusEntry {
    fn new(diagram: PretzelDiagram, verdict: SpanVerdict) -> Self {
        let is_knot = diagram.is_knot();
        Self {
            diagram,
            verdict,
            is_knot,
        }
    }
}

impl Serialize for CensusEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CensusEntry", 4)?;
        st.serialize_field("diagram", &self.diagram)?;
        st.serialize_field("S", &self.verdict.span)?;
        st.serialize_field("case", &self.verdict.case)?;
        st.serialize_field("knot", &self.is_knot)?;
        st.end()
    }
}

/// Multisets of entries with `|a| > 1`, as non-increasing vectors.
pub fn big_entry_multisets(bounds: &CensusBounds) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (2..=bounds.max_abs_entry)
        .rev()
        .chain((2..=bounds.max_abs_entry).map(|v| -v))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_multisets(&values, 0, 0, bounds, &mut current, &mut out);
    out
}

fn extend_multisets(
    values: &[i64],
    from: usize,
    sigma: i64,
    bounds: &CensusBounds,
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    out.push(current.clone());
    if current.len() == bounds.max_big_entries {
        return;
    }
    for (i, &v) in values.iter().enumerate().skip(from) {
        if sigma + v.abs() > bounds.max_sigma {
            continue;
        }
        current.push(v);
        extend_multisets(values, i, sigma + v.abs(), bounds, current, out);
        current.pop();
    }
}

/// All reduced diagrams (sorted non-increasing) built on one big-entry
/// multiset within the bounds.
fn completions(big: &[i64], bounds: &CensusBounds) -> Vec<PretzelDiagram> {
    let mut out = Vec::new();
    let build = |ones: usize, zeros: usize, minus_ones: usize| {
        let mut e = big.to_vec();
        e.extend(std::iter::repeat_n(1, ones));
        e.extend(std::iter::repeat_n(0, zeros));
        e.extend(std::iter::repeat_n(-1, minus_ones));
        e.sort_unstable_by(|a, b| b.cmp(a));
        e
    };
    for z in 1..=bounds.max_zeros {
        out.push(PretzelDiagram::of(&build(0, z, 0)));
    }
    for lambda in -bounds.max_abs_lambda..=bounds.max_abs_lambda {
        let e = build(lambda.max(0) as usize, 0, (-lambda).max(0) as usize);
        if !e.is_empty() {
            out.push(PretzelDiagram::of(&e));
        }
    }
    if big.is_empty() {
        out.push(PretzelDiagram::of(&[1, -1]));
    }
    out
}

/// How a candidate's span is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SpanSource {
    Formula,
    Bracket,
}

fn run_census(
    span: i64,
    knots_only: bool,
    source: SpanSource,
) -> Result<Vec<CensusEntry>, CensusError> {
    if span < 0 {
        return Err(CensusError::NegativeSpan(span));
    }
    let bounds = CensusBounds::for_span(span);
    let multisets = big_entry_multisets(&bounds);
    let per_multiset: Vec<Vec<(PretzelDiagram, PretzelDiagram, SpanVerdict)>> = multisets
        .par_iter()
        .map(|big| {
            let mut kept = Vec::new();
            for p in completions(big, &bounds) {
                let v = span_formula(&p).expect("generated diagrams are reduced and sorted");
                if v.case.is_census_excluded() || (knots_only && !p.is_knot()) {
                    continue;
                }
                let s = match source {
                    SpanSource::Formula => v.span,
                    SpanSource::Bracket => jones_span(&p)?,
                };
                if s == span {
                    kept.push((p.canonical(), p, v));
                }
            }
            Ok(kept)
        })
        .collect::<Result<_, CensusError>>()?;

    // Keep the canonical representative's own verdict when it survived.
    let mut classes: BTreeMap<PretzelDiagram, (bool, SpanVerdict)> = BTreeMap::new();
    for (canon, p, v) in per_multiset.into_iter().flatten() {
        let own = canon == p;
        let v = SpanVerdict { span, ..v };
        classes
            .entry(canon)
            .and_modify(|slot| {
                if own && !slot.0 {
                    *slot = (true, v);
                }
            })
            .or_insert((own, v));
    }
    let mut entries: Vec<CensusEntry> = classes
        .into_iter()
        .map(|(canon, (_, v))| CensusEntry::new(canon, v))
        .collect();
    entries.sort_by(|a, b| (a.verdict.case, &a.diagram).cmp(&(b.verdict.case, &b.diagram)));
    Ok(entries)
}

/// The complete set `L_S`, spans from the closed formula.
pub fn enumerate(span: i64, knots_only: bool) -> Result<Vec<CensusEntry>, CensusError> {
    run_census(span, knots_only, SpanSource::Formula)
}

/// Same generation, spans read off the Kauffman bracket instead.
pub fn brute_census(span: i64, knots_only: bool) -> Result<Vec<CensusEntry>, CensusError> {
    if span > BRUTE_CENSUS_MAX_SPAN {
        return Err(CensusError::TooLarge(span));
    }
    run_census(span, knots_only, SpanSource::Bracket)
}

/// Census as text, one `(a1,a2,…)` per line.
pub fn render_text(entries: &[CensusEntry]) -> String {
    entries.iter().map(|e| format!("{}\n", e.diagram)).collect()
}

pub fn render_json(entries: &[CensusEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("census entries serialize")
}

/// Parses a diagram list such as the bundled `L10.txt`: one tuple per
/// line, `#` comments and blank lines ignored.
pub fn parse_diagram_list(text: &str) -> Result<Vec<PretzelDiagram>, crate::diagram::DiagramError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}
