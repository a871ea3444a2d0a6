//! Kauffman brackets and Jones-polynomial spans of pretzel link diagrams.
//!
//! * [`laurent`]: exact Laurent polynomials, generic over the coefficient ring
//! * [`diagram`]: `P(a₁,…,aₙ)`, reduction and canonical forms
//! * [`bracket`]: closed formula and recurrence for `⟨P⟩`
//! * [`planar`]: crossing-level model (state sum, strand tracing, Jones)
//! * [`spanlaw`]: the case-by-case span law and its bounds
//! * [`census`]: complete sets of diagrams with a given span
//! * [`tables`]: knot-table matching

pub mod bracket;
pub mod census;
pub mod diagram;
pub mod laurent;
pub mod planar;
pub mod spanlaw;
pub mod tables;

pub use census::{brute_census, enumerate, CensusEntry};
pub use diagram::{DiagramParams, PretzelDiagram};
pub use laurent::{Coeff, LaurentError, LaurentPoly, TPoly};
pub use planar::{jones, jones1, jones_span, PlanarDiagram};
pub use spanlaw::{check_bounds, lower_bound, span_formula, CaseLabel, SpanVerdict};
pub use tables::{classify, load_table, ClassificationReport, KnotRecord, Verdict};

/// Laurent polynomial with checked `i64` coefficients; the default everywhere.
pub type Poly = LaurentPoly<i64>;
/// Wider fixed-width coefficients.
pub type Poly128 = LaurentPoly<i128>;
/// Arbitrary-precision coefficients, never overflows.
pub type BigPoly = LaurentPoly<num_bigint::BigInt>;
/// Jones polynomial in `t` with `i64` coefficients.
pub type JonesPoly = TPoly<i64>;
