//! Crossing-level model of a pretzel diagram.
//!
//! Column `i` is a vertical twist of two strands with `|aᵢ|` crossings.
//! Points on the diagram are `(column, level, side)` with levels
//! `0..=|aᵢ|`; crossing `j` of a column joins levels `j` and `j+1`. The top
//! ends of neighbouring columns are joined (right of `i` to left of `i+1`,
//! cyclically), and likewise the bottom ends.
//!
//! Crossing type: the A-smoothing of a crossing in a column with `aᵢ > 0`
//! is the vertical one (`P(a)` with `a > 0` is a chain of negative kinks);
//! for `aᵢ < 0` it is the horizontal one.

use rayon::prelude::*;
use thiserror::Error;

use crate::bracket::kb_closed;
use crate::diagram::PretzelDiagram;
use crate::laurent::{Coeff, LaurentError, LaurentPoly, TPoly};

/// Default crossing cap for [`PlanarDiagram::state_sum`].
pub const DEFAULT_STATE_SUM_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("state sum too large: {crossings} crossings exceeds the limit of {limit}")]
    StateSumTooLarge { crossings: usize, limit: usize },
    #[error("not a knot: the diagram has {0} components")]
    NotAKnot(usize),
    #[error("internal error: bracket span {0} is not divisible by 4")]
    SpanNotDivisible(i64),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Top or bottom closing strand between neighbouring columns.
    Closure,
    /// One of the two strands through a crossing.
    Strand { crossing: usize },
}

/// An undirected strand segment between two points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub ends: [usize; 2],
    pub kind: EdgeKind,
}

/// Four points around a crossing, plus which smoothing carries `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub column: usize,
    pub upper_left: usize,
    pub upper_right: usize,
    pub lower_left: usize,
    pub lower_right: usize,
    /// `true` when the A-smoothing joins upper-left to lower-left.
    pub a_smoothing_vertical: bool,
}

#[derive(Debug, Clone)]
pub struct PlanarDiagram {
    points: usize,
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    closures: Vec<[usize; 2]>,
}

/// Travel direction of a strand edge, in the sense of the `ends` array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub components: usize,
    /// Component index of every point.
    pub component_of_point: Vec<usize>,
    /// Orientation of every edge.
    pub edge_direction: Vec<Direction>,
    /// ±1 per crossing under the chosen orientation.
    pub crossing_signs: Vec<i8>,
    pub writhe: i64,
}

impl Trace {
    /// Writhe of a link depends on the orientation of each component.
    pub fn writhe_orientation_dependent(&self) -> bool {
        self.components > 1
    }
}

struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.sets -= 1;
        }
    }
}

impl PlanarDiagram {
    pub fn build(p: &PretzelDiagram) -> Self {
        let entries = p.entries();
        let n = entries.len();
        let mut offsets = Vec::with_capacity(n);
        let mut points = 0;
        for &a in entries {
            offsets.push(points);
            points += 2 * (a.unsigned_abs() as usize + 1);
        }
        let point = |col: usize, level: usize, right: bool| offsets[col] + 2 * level + right as usize;

        let mut crossings = Vec::new();
        let mut edges = Vec::new();
        for (col, &a) in entries.iter().enumerate() {
            for level in 0..a.unsigned_abs() as usize {
                let c = Crossing {
                    column: col,
                    upper_left: point(col, level, false),
                    upper_right: point(col, level, true),
                    lower_left: point(col, level + 1, false),
                    lower_right: point(col, level + 1, true),
                    a_smoothing_vertical: a > 0,
                };
                let idx = crossings.len();
                edges.push(Edge {
                    ends: [c.upper_left, c.lower_right],
                    kind: EdgeKind::Strand { crossing: idx },
                });
                edges.push(Edge {
                    ends: [c.upper_right, c.lower_left],
                    kind: EdgeKind::Strand { crossing: idx },
                });
                crossings.push(c);
            }
        }
        let mut closures = Vec::with_capacity(2 * n);
        for col in 0..n {
            let next = (col + 1) % n;
            let bottom = entries[col].unsigned_abs() as usize;
            let next_bottom = entries[next].unsigned_abs() as usize;
            closures.push([point(col, 0, true), point(next, 0, false)]);
            closures.push([point(col, bottom, true), point(next, next_bottom, false)]);
        }
        for &ends in &closures {
            edges.push(Edge {
                ends,
                kind: EdgeKind::Closure,
            });
        }
        Self {
            points,
            crossings,
            edges,
            closures,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// How many edges meet each point; 2 everywhere for a closed diagram.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.points];
        for e in &self.edges {
            deg[e.ends[0]] += 1;
            deg[e.ends[1]] += 1;
        }
        deg
    }

    fn circles(&self, state: u64) -> usize {
        let mut uf = UnionFind::new(self.points);
        for &[x, y] in &self.closures {
            uf.union(x, y);
        }
        for (i, c) in self.crossings.iter().enumerate() {
            let a_side = state >> i & 1 == 0;
            if a_side == c.a_smoothing_vertical {
                uf.union(c.upper_left, c.lower_left);
                uf.union(c.upper_right, c.lower_right);
            } else {
                uf.union(c.upper_left, c.upper_right);
                uf.union(c.lower_left, c.lower_right);
            }
        }
        uf.sets
    }

    /// Kauffman bracket as the sum over all `2^c` smoothings of
    /// `A^(#A - #B) δ^(#circles)`, with `⟨○⟩ = δ`.
    pub fn state_sum<C: Coeff>(&self, limit: usize) -> Result<LaurentPoly<C>, PlanarError> {
        let c = self.crossings.len();
        if c > limit {
            return Err(PlanarError::StateSumTooLarge { crossings: c, limit });
        }
        if c == 0 {
            return Ok(LaurentPoly::delta().pow(self.circles(0) as u32));
        }
        // Tally (#B smoothings, #circles); the exponent is c - 2·#B.
        let max_circles = self.points / 2 + 1;
        let tally_range = |range: std::ops::Range<u64>| {
            let mut counts = vec![0u64; (c + 1) * (max_circles + 1)];
            for state in range {
                let b = state.count_ones() as usize;
                counts[b * (max_circles + 1) + self.circles(state)] += 1;
            }
            counts
        };
        let total = 1u64 << c;
        let counts = if c > 14 {
            let chunk = 1u64 << 12;
            (0..total / chunk)
                .into_par_iter()
                .map(|k| tally_range(k * chunk..(k + 1) * chunk))
                .reduce(
                    || vec![0u64; (c + 1) * (max_circles + 1)],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                )
        } else {
            tally_range(0..total)
        };
        let delta = LaurentPoly::<C>::delta();
        let mut delta_powers = vec![LaurentPoly::one()];
        for k in 1..=max_circles {
            let next = delta_powers[k - 1].checked_mul(&delta)?;
            delta_powers.push(next);
        }
        let mut sum = LaurentPoly::zero();
        for b in 0..=c {
            for circles in 0..=max_circles {
                let n = counts[b * (max_circles + 1) + circles];
                if n == 0 {
                    continue;
                }
                let coeff = C::from(i32::try_from(n).map_err(|_| LaurentError::Overflow)?);
                let term = LaurentPoly::monomial(coeff, c as i64 - 2 * b as i64)
                    .checked_mul(&delta_powers[circles])?;
                sum = sum.checked_add(&term)?;
            }
        }
        Ok(sum)
    }

    /// Follows the strands: components, an orientation and the writhe.
    /// Each component is oriented starting from its lowest-numbered point,
    /// leaving along that point's lowest-numbered edge.
    pub fn trace(&self) -> Trace {
        let mut incident: Vec<Vec<usize>> = vec![Vec::with_capacity(2); self.points];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.ends[0]].push(i);
            incident[e.ends[1]].push(i);
        }
        const UNSEEN: usize = usize::MAX;
        let mut component_of_point = vec![UNSEEN; self.points];
        let mut edge_direction = vec![Direction::Forward; self.edges.len()];
        let mut components = 0;
        for start in 0..self.points {
            if component_of_point[start] != UNSEEN {
                continue;
            }
            let mut at = start;
            let mut via = *incident[start].iter().min().expect("closed diagram");
            loop {
                component_of_point[at] = components;
                let e = &self.edges[via];
                let (next, dir) = if e.ends[0] == at {
                    (e.ends[1], Direction::Forward)
                } else {
                    (e.ends[0], Direction::Backward)
                };
                edge_direction[via] = dir;
                at = next;
                if at == start {
                    break;
                }
                via = *incident[at].iter().find(|&&x| x != via).expect("degree two");
            }
            components += 1;
        }

        // Strand edges run upper -> lower when Forward; two strands heading
        // the same vertical way have the vertical smoothing as their
        // oriented smoothing. Positive iff that is the A-smoothing.
        let mut crossing_signs = Vec::with_capacity(self.crossings.len());
        for (i, c) in self.crossings.iter().enumerate() {
            let parallel = edge_direction[2 * i] == edge_direction[2 * i + 1];
            crossing_signs.push(if parallel == c.a_smoothing_vertical { 1 } else { -1 });
        }
        let writhe = crossing_signs.iter().map(|&s| s as i64).sum();
        Trace {
            components,
            component_of_point,
            edge_direction,
            crossing_signs,
            writhe,
        }
    }
}

/// Jones polynomial in the `A` variable, `(-A)^(-3w) ⟨P⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesA<C: Coeff> {
    pub poly: LaurentPoly<C>,
    pub components: usize,
    pub writhe: i64,
}

impl<C: Coeff> JonesA<C> {
    /// Rewritten in `t` when every exponent is a multiple of 4.
    pub fn in_t(&self) -> Option<TPoly<C>> {
        self.poly.to_t_poly().ok()
    }

    pub fn orientation_dependent(&self) -> bool {
        self.components > 1
    }
}

fn writhe_factor<C: Coeff>(writhe: i64) -> LaurentPoly<C> {
    // (-A)^(-3w)
    let c = if writhe % 2 == 0 { C::one() } else { -C::one() };
    LaurentPoly::monomial(c, -3 * writhe)
}

/// `V = (-A)^(-3w) ⟨P⟩`, left in `A` (half-integral in `t` for knots).
pub fn jones<C: Coeff>(p: &PretzelDiagram) -> Result<JonesA<C>, PlanarError> {
    let trace = PlanarDiagram::build(p).trace();
    let bracket: LaurentPoly<C> = kb_closed(p);
    Ok(JonesA {
        poly: writhe_factor::<C>(trace.writhe).checked_mul(&bracket)?,
        components: trace.components,
        writhe: trace.writhe,
    })
}

/// Unknot-normalized Jones polynomial `V₁` of a knot, in `t`.
pub fn jones1<C: Coeff>(p: &PretzelDiagram) -> Result<TPoly<C>, PlanarError> {
    let trace = PlanarDiagram::build(p).trace();
    if trace.components != 1 {
        return Err(PlanarError::NotAKnot(trace.components));
    }
    let bracket: LaurentPoly<C> = kb_closed(p);
    let normalized = bracket.divide_exact(&LaurentPoly::delta())?;
    let v1 = writhe_factor::<C>(trace.writhe).checked_mul(&normalized)?;
    Ok(v1.to_t_poly()?)
}

/// Span of the Jones polynomial, `span⟨P⟩ / 4`.
pub fn jones_span(p: &PretzelDiagram) -> Result<i64, PlanarError> {
    let bracket: LaurentPoly<i64> = kb_closed(p);
    let span = bracket.span()?;
    if span % 4 != 0 {
        return Err(PlanarError::SpanNotDivisible(span));
    }
    Ok(span / 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::kink_factor;

    type P = LaurentPoly<i64>;

    fn d(e: &[i64]) -> PretzelDiagram {
        PretzelDiagram::of(e)
    }

    #[test]
    fn build_counts() {
        assert_eq!(PlanarDiagram::build(&d(&[1, 1, 1])).crossing_count(), 3);
        assert_eq!(PlanarDiagram::build(&d(&[2, -3])).crossing_count(), 5);
        let unknot = PlanarDiagram::build(&d(&[0]));
        assert_eq!(unknot.crossing_count(), 0);
        assert_eq!(unknot.trace().components, 1);
        for e in [&[0][..], &[1, 1, 1], &[2, -3, 0, 4], &[5]] {
            let pd = PlanarDiagram::build(&d(e));
            assert!(pd.point_degrees().iter().all(|&k| k == 2), "{e:?}");
        }
    }

    #[test]
    fn state_sum_examples() {
        let delta = P::delta();
        let sum = |e: &[i64]| PlanarDiagram::build(&d(e)).state_sum::<i64>(20).unwrap();
        assert_eq!(sum(&[0]), delta);
        assert_eq!(sum(&[1]), &delta * &kink_factor(1));
        assert_eq!(sum(&[1, 1, 1]), kb_closed::<i64>(&d(&[1, 1, 1])));
        assert_eq!(sum(&[0, 0]), delta.pow(2));
    }

    #[test]
    fn state_sum_limit() {
        let pd = PlanarDiagram::build(&d(&[11, 11]));
        assert_eq!(
            pd.state_sum::<i64>(20),
            Err(PlanarError::StateSumTooLarge { crossings: 22, limit: 20 })
        );
    }

    #[test]
    fn parallel_state_sum_path() {
        // 16 crossings takes the chunked path
        let p = d(&[5, -4, 7]);
        let pd = PlanarDiagram::build(&p);
        assert_eq!(pd.state_sum::<i64>(20).unwrap(), kb_closed::<i64>(&p));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(PlanarDiagram::build(&d(&[1, -1])).trace().components, 2);
        assert_eq!(PlanarDiagram::build(&d(&[3, 3, 3])).trace().components, 1);
        // golden value fixed by the negative-kink anchor
        assert_eq!(PlanarDiagram::build(&d(&[1, 1, 1])).trace().writhe, -3);
    }

    #[test]
    fn positive_columns_are_negative_kinks() {
        for a in 1..=9 {
            assert_eq!(PlanarDiagram::build(&d(&[a])).trace().writhe, -a);
            assert_eq!(PlanarDiagram::build(&d(&[-a])).trace().writhe, a);
        }
    }

    #[test]
    fn knot_writhe_ignores_orientation() {
        // reversing a knot's orientation flips both strands at every crossing
        for e in [&[3, 3, -1, -2][..], &[1, 1, 1], &[5, -3, 2]] {
            let pd = PlanarDiagram::build(&d(e));
            let t = pd.trace();
            assert_eq!(t.components, 1);
            let reversed: Vec<Direction> = t
                .edge_direction
                .iter()
                .map(|x| match x {
                    Direction::Forward => Direction::Backward,
                    Direction::Backward => Direction::Forward,
                })
                .collect();
            let w: i64 = pd
                .crossings()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let par = reversed[2 * i] == reversed[2 * i + 1];
                    if par == c.a_smoothing_vertical { 1 } else { -1 }
                })
                .sum();
            assert_eq!(w, t.writhe);
        }
    }

    #[test]
    fn unknot_jones_is_delta_in_a_form() {
        let v = jones::<i64>(&d(&[0])).unwrap();
        assert_eq!(v.poly, P::delta());
        assert!(v.in_t().is_none());
        assert_eq!(jones1::<i64>(&d(&[0])).unwrap().to_string(), "1");
    }

    #[test]
    fn jones_of_kinked_unknot_is_trivial() {
        for a in -6..=6 {
            assert_eq!(jones::<i64>(&d(&[a])).unwrap().poly, P::delta(), "P({a})");
        }
    }

    #[test]
    fn trefoil_v1() {
        let v1 = jones1::<i64>(&d(&[1, 1, 1])).unwrap();
        assert_eq!(v1.span(), Ok(3));
        assert_eq!(v1.poly().len(), 3);
    }

    #[test]
    fn v_equals_delta_times_v1() {
        for e in [&[1, 1, 1][..], &[3, 3, -1, -2], &[3, 3, 3], &[2, 1, -3, 1], &[5, -3, -7]] {
            let v = jones::<i64>(&d(e)).unwrap();
            let v1 = jones1::<i64>(&d(e)).unwrap();
            // V₁(t) back in A, then times δ
            let v1_in_a = P::from_terms(v1.poly().terms().iter().map(|(k, c)| (-4 * k, *c))).unwrap();
            assert_eq!(v.poly, &v1_in_a * &P::delta(), "{e:?}");
        }
    }

    #[test]
    fn jones1_rejects_links() {
        assert_eq!(jones1::<i64>(&d(&[1, -1])), Err(PlanarError::NotAKnot(2)));
        assert_eq!(jones1::<i64>(&d(&[2, 2])), Err(PlanarError::NotAKnot(2)));
    }

    #[test]
    fn jones_span_examples() {
        assert_eq!(jones_span(&d(&[1, -1])), Ok(2));
        assert_eq!(jones_span(&d(&[2, -3, -4])), Ok(3));
        assert_eq!(jones_span(&d(&[2, -3, -4, -7])), Ok(10));
    }

    #[test]
    fn two_component_link_jones_is_integral_in_t() {
        let v = jones::<i64>(&d(&[2, 2])).unwrap();
        assert!(v.orientation_dependent());
        assert!(v.in_t().is_some());
    }
}
