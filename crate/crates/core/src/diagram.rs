//! Pretzel diagrams `P(a₁,…,aₙ)`: parameters, reduction, canonical forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("a pretzel diagram needs at least one entry")]
    Empty,
    #[error("invalid entry {0:?}: expected an integer")]
    BadEntry(String),
}

/// An ordered tuple of twist counts, one per column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct PretzelDiagram(Vec<i64>);

/// Counts attached to a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramParams {
    /// entries `> 1`
    pub r: usize,
    /// entries `< -1`
    pub s: usize,
    /// entries `== 0`
    pub z: usize,
    /// entries `== 1`
    pub alpha: usize,
    /// entries `== -1`
    pub beta: usize,
    /// `alpha - beta`
    pub lambda: i64,
    /// sum of `|a|` over entries with `|a| > 1`
    pub sigma: i64,
    /// smallest `|a|` among entries with `|a| > 1`
    pub min_big: Option<i64>,
}

impl DiagramParams {
    pub fn n(&self) -> usize {
        self.r + self.s + self.z + self.alpha + self.beta
    }
}

impl fmt::Display for DiagramParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} s={} z={} alpha={} beta={} lambda={} Sigma={} M=",
            self.r, self.s, self.z, self.alpha, self.beta, self.lambda, self.sigma
        )?;
        match self.min_big {
            Some(m) => write!(f, "{m}"),
            None => f.write_str("-"),
        }
    }
}

impl PretzelDiagram {
    pub fn new(entries: Vec<i64>) -> Result<Self, DiagramError> {
        if entries.is_empty() {
            Err(DiagramError::Empty)
        } else {
            Ok(Self(entries))
        }
    }

    /// Panicking constructor for literals in code and tests.
    pub fn of(entries: &[i64]) -> Self {
        Self::new(entries.to_vec()).expect("non-empty entries")
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total number of crossings, `Σ|aᵢ|`.
    pub fn crossings(&self) -> u64 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    pub fn params(&self) -> DiagramParams {
        let mut p = DiagramParams {
            r: 0,
            s: 0,
            z: 0,
            alpha: 0,
            beta: 0,
            lambda: 0,
            sigma: 0,
            min_big: None,
        };
        for &a in &self.0 {
            match a {
                0 => p.z += 1,
                1 => p.alpha += 1,
                -1 => p.beta += 1,
                _ => {
                    if a > 1 {
                        p.r += 1;
                    } else {
                        p.s += 1;
                    }
                    p.sigma += a.abs();
                    p.min_big = Some(p.min_big.map_or(a.abs(), |m| m.min(a.abs())));
                }
            }
        }
        p.lambda = p.alpha as i64 - p.beta as i64;
        p
    }

    pub fn is_reduced(&self) -> bool {
        if self.is_unlink_pair() {
            return true;
        }
        let p = self.params();
        p.alpha * p.beta == 0 && (p.z == 0 || p.alpha + p.beta == 0)
    }

    /// `P(1,-1)` in either order.
    pub fn is_unlink_pair(&self) -> bool {
        matches!(self.0.as_slice(), [1, -1] | [-1, 1])
    }

    /// Cancels `(1,-1)` pairs and, next to a zero entry, drops `±1` entries
    /// until the diagram is reduced. Surviving entries keep their order.
    pub fn reduce(&self) -> Self {
        let mut entries = self.0.clone();
        loop {
            let current = Self(entries.clone());
            if current.is_reduced() {
                return current;
            }
            let has_zero = entries.contains(&0);
            let plus = entries.iter().position(|&a| a == 1);
            let minus = entries.iter().position(|&a| a == -1);
            match (plus, minus) {
                (Some(i), Some(j)) => {
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    entries.remove(hi);
                    entries.remove(lo);
                }
                (Some(i), None) | (None, Some(i)) if has_zero => {
                    entries.remove(i);
                }
                _ => unreachable!("unreduced diagram without a reducible entry"),
            }
            if entries.is_empty() {
                return Self(vec![0]);
            }
        }
    }

    pub fn sort_desc(&self) -> Self {
        let mut entries = self.0.clone();
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Self(entries)
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn mirror(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    /// Representative of the orbit under reordering and mirror image: the
    /// lexicographically greater of the two descending sorts.
    pub fn canonical(&self) -> Self {
        let direct = self.sort_desc();
        let mirrored = self.mirror().sort_desc();
        direct.max(mirrored)
    }

    /// Component rule for pretzel diagrams: a knot iff exactly one entry is
    /// even, or none is and the number of entries is odd.
    pub fn is_knot(&self) -> bool {
        let evens = self.0.iter().filter(|a| *a % 2 == 0).count();
        evens == 1 || (evens == 0 && self.0.len() % 2 == 1)
    }
}

impl TryFrom<Vec<i64>> for PretzelDiagram {
    type Error = DiagramError;
    fn try_from(v: Vec<i64>) -> Result<Self, DiagramError> {
        Self::new(v)
    }
}

impl From<PretzelDiagram> for Vec<i64> {
    fn from(p: PretzelDiagram) -> Vec<i64> {
        p.0
    }
}

impl fmt::Display for PretzelDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PretzelDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{self}")
    }
}

/// Parses `2,-3,-4`; surrounding parentheses and whitespace are tolerated.
impl FromStr for PretzelDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        if body.trim().is_empty() {
            return Err(DiagramError::Empty);
        }
        let entries = body
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|_| DiagramError::BadEntry(tok.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(e: &[i64]) -> PretzelDiagram {
        PretzelDiagram::of(e)
    }

    #[test]
    fn params_examples() {
        let p = d(&[2, -3, -4]).params();
        assert_eq!((p.r, p.s, p.z, p.alpha, p.beta, p.lambda), (1, 2, 0, 0, 0, 0));
        assert_eq!((p.sigma, p.min_big), (9, Some(2)));

        let p = d(&[1, -1]).params();
        assert_eq!((p.r, p.s, p.z, p.alpha, p.beta, p.lambda), (0, 0, 0, 1, 1, 0));
        assert_eq!((p.sigma, p.min_big), (0, None));

        let p = d(&[3, 3, 0, -3]).params();
        assert_eq!((p.r, p.s, p.z, p.alpha, p.beta, p.lambda), (2, 1, 1, 0, 0, 0));
        assert_eq!((p.sigma, p.min_big), (9, Some(3)));
        assert_eq!(p.to_string(), "r=2 s=1 z=1 alpha=0 beta=0 lambda=0 Sigma=9 M=3");
    }

    #[test]
    fn reduced_examples() {
        assert!(d(&[1, -1]).is_reduced());
        assert!(d(&[-1, 1]).is_reduced());
        assert!(!d(&[3, 1, -1, 2]).is_reduced());
        assert!(!d(&[0, 1, 3]).is_reduced());
        assert!(d(&[0, 3, -3]).is_reduced());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(d(&[1, -1, 5]).reduce(), d(&[5]));
        assert_eq!(d(&[0, 1, 1, -3]).reduce(), d(&[0, -3]));
        assert_eq!(d(&[1, -1]).reduce(), d(&[1, -1]));
        assert_eq!(d(&[1, -1, 1, -1]).reduce(), d(&[1, -1]));
        assert_eq!(d(&[1, 0, -1]).reduce(), d(&[0]));
    }

    #[test]
    fn sort_and_mirror_examples() {
        assert_eq!(d(&[2, -3, 4]).sort_desc(), d(&[4, 2, -3]));
        assert_eq!(d(&[1, 1, 1]).sort_desc(), d(&[1, 1, 1]));
        assert_eq!(d(&[-1, 1]).sort_desc(), d(&[1, -1]));
        assert_eq!(d(&[2, -3]).mirror(), d(&[-2, 3]));
        assert_eq!(d(&[0]).mirror(), d(&[0]));
        assert_eq!(d(&[9, 0]).mirror(), d(&[-9, 0]));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(d(&[-2, 3]).canonical(), d(&[3, -2]));
        assert_eq!(d(&[3, -2]).canonical(), d(&[3, -2]));
        assert_eq!(d(&[-3, 0, -3, -3]).canonical(), d(&[3, 3, 3, 0]));
    }

    #[test]
    fn knot_examples() {
        assert!(d(&[3, 3, 3]).is_knot());
        assert!(!d(&[2, -3, -4]).is_knot());
        assert!(!d(&[1, -1]).is_knot());
        assert!(d(&[0]).is_knot());
        assert!(d(&[3, 3, -1, -2]).is_knot());
    }

    #[test]
    fn parsing() {
        assert_eq!("2,-3,-4".parse::<PretzelDiagram>(), Ok(d(&[2, -3, -4])));
        assert_eq!("(1, -1)".parse::<PretzelDiagram>(), Ok(d(&[1, -1])));
        assert_eq!("".parse::<PretzelDiagram>(), Err(DiagramError::Empty));
        assert!(matches!("2,x".parse::<PretzelDiagram>(), Err(DiagramError::BadEntry(_))));
        assert_eq!(PretzelDiagram::new(vec![]), Err(DiagramError::Empty));
        assert_eq!(d(&[2, -3, -4]).to_string(), "(2,-3,-4)");
    }

    fn permutations(v: &[i64]) -> Vec<Vec<i64>> {
        if v.len() <= 1 {
            return vec![v.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..v.len() {
            let mut rest = v.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn canonical_is_constant_on_orbits() {
        // every tuple of length <= 4 over -3..=3, every permutation and mirror
        let vals = [-3i64, -2, -1, 0, 1, 2, 3];
        let mut stack: Vec<Vec<i64>> = vals.iter().map(|v| vec![*v]).collect();
        while let Some(t) = stack.pop() {
            let c = d(&t).canonical();
            assert_eq!(c.canonical(), c);
            for perm in permutations(&t) {
                assert_eq!(d(&perm).canonical(), c);
                assert_eq!(d(&perm).mirror().canonical(), c);
            }
            if t.len() < 4 {
                for v in vals {
                    let mut u = t.clone();
                    u.push(v);
                    stack.push(u);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reduce_is_reduced_and_idempotent(e in prop::collection::vec(-3i64..=3, 1..8)) {
            let r = d(&e).reduce();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.reduce(), r.clone());
        }

        #[test]
        fn reduce_is_confluent_as_multiset(
            e in prop::collection::vec(-2i64..=2, 1..9),
            seed in any::<u64>(),
        ) {
            // shuffle deterministically from the seed, reduce, compare multisets
            let mut shuffled = e.clone();
            let mut state = seed | 1;
            for i in (1..shuffled.len()).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                shuffled.swap(i, (state % (i as u64 + 1)) as usize);
            }
            prop_assert_eq!(d(&e).reduce().sort_desc(), d(&shuffled).reduce().sort_desc());
        }

        #[test]
        fn mirror_is_involution(e in prop::collection::vec(-9i64..=9, 1..8)) {
            prop_assert_eq!(d(&e).mirror().mirror(), d(&e));
        }

        #[test]
        fn params_are_consistent(e in prop::collection::vec(-9i64..=9, 1..8)) {
            let p = d(&e).params();
            prop_assert_eq!(p.n(), e.len());
            prop_assert!(p.sigma >= 2 * (p.r + p.s) as i64);
            prop_assert!(p.min_big.map_or(p.r + p.s == 0, |m| m >= 2));
        }
    }
}
