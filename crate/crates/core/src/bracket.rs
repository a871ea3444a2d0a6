//! Kauffman brackets of pretzel diagrams.
//!
//! Two independent routes: the closed product formula and the
//! entry-elimination recurrence. The generic state sum lives in
//! [`crate::planar`].

use std::collections::HashMap;

use crate::diagram::PretzelDiagram;
use crate::laurent::{Coeff, LaurentPoly};

/// The twist polynomial `[a]`:
/// `A^(-2·sgn a - 3a) · Σ_{i=1}^{|a|} (-1)^(a+i) A^(4i·sgn a)`, and `[0] = 0`.
pub fn qbracket<C: Coeff>(a: i64) -> LaurentPoly<C> {
    if a == 0 {
        return LaurentPoly::zero();
    }
    let sign = a.signum();
    let base = -2 * sign - 3 * a;
    let terms = (1..=a.abs()).map(|i| {
        let c = if (a + i) % 2 == 0 { C::one() } else { -C::one() };
        (base + 4 * i * sign, c)
    });
    LaurentPoly::from_terms(terms).expect("unit coefficients cannot overflow")
}

/// `(-A^-3)^a` for any integer `a`.
pub fn kink_factor<C: Coeff>(a: i64) -> LaurentPoly<C> {
    let c = if a % 2 == 0 { C::one() } else { -C::one() };
    LaurentPoly::monomial(c, -3 * a)
}

/// `⟨P⟩ = ∏(A^aᵢ δ + [aᵢ]) + (δ² - 1) ∏[aᵢ]`.
pub fn kb_closed<C: Coeff>(p: &PretzelDiagram) -> LaurentPoly<C> {
    let delta = LaurentPoly::<C>::delta();
    let mut first = LaurentPoly::one();
    let mut second = LaurentPoly::one();
    for &a in p.entries() {
        let q = qbracket::<C>(a);
        first = &first * &(&(&LaurentPoly::power_of_var(a) * &delta) + &q);
        second = &second * &q;
    }
    let loop_term = &(&delta * &delta) - &LaurentPoly::one();
    &first + &(&loop_term * &second)
}

/// `⟨P⟩` by eliminating entries one at a time:
/// `⟨…,a,…⟩ = A^a ⟨…,0,…⟩ + [a] ⟨…,…⟩`, with `⟨P(a)⟩ = δ(-A^-3)^a` and
/// `⟨P(0,…,0)⟩ = δⁿ`. Memoized on the sorted multiset of entries.
pub fn kb_recursive<C: Coeff>(p: &PretzelDiagram) -> LaurentPoly<C> {
    let mut memo = HashMap::new();
    let mut key = p.entries().to_vec();
    key.sort_unstable();
    recurse(&key, &mut memo)
}

fn recurse<C: Coeff>(
    entries: &[i64],
    memo: &mut HashMap<Vec<i64>, LaurentPoly<C>>,
) -> LaurentPoly<C> {
    if let Some(hit) = memo.get(entries) {
        return hit.clone();
    }
    let delta = LaurentPoly::<C>::delta();
    let value = if entries.len() == 1 {
        &delta * &kink_factor(entries[0])
    } else if let Some(pos) = entries.iter().rposition(|&a| a != 0) {
        let a = entries[pos];
        let mut zeroed = entries.to_vec();
        zeroed[pos] = 0;
        zeroed.sort_unstable();
        let mut removed = entries.to_vec();
        removed.remove(pos);
        let with_zero = recurse(&zeroed, memo);
        let without = recurse(&removed, memo);
        &(&LaurentPoly::power_of_var(a) * &with_zero) + &(&qbracket(a) * &without)
    } else {
        delta.pow(entries.len() as u32)
    };
    memo.insert(entries.to_vec(), value.clone());
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<i64>;

    fn d(e: &[i64]) -> PretzelDiagram {
        PretzelDiagram::of(e)
    }

    fn a(e: i64) -> P {
        P::power_of_var(e)
    }

    #[test]
    fn qbracket_examples() {
        assert_eq!(qbracket::<i64>(1), a(-1));
        assert_eq!(qbracket::<i64>(-1), a(1));
        assert!(qbracket::<i64>(0).is_zero());
        // [2] = A[1] + A^-1 (-A^-3)^1
        assert_eq!(qbracket::<i64>(2), &P::one() - &a(-4));
    }

    #[test]
    fn delta_times_qbracket_identity() {
        let delta = P::delta();
        for x in -25..=25 {
            assert_eq!(
                &delta * &qbracket(x),
                &(-&a(x)) + &kink_factor(x),
                "a = {x}"
            );
        }
    }

    #[test]
    fn qbracket_recurrences() {
        for x in 1..=25 {
            let rhs = &(&a(1) * &qbracket(x - 1)) + &(&a(-1) * &kink_factor(x - 1));
            assert_eq!(qbracket::<i64>(x), rhs, "a = {x}");
        }
        for x in -25..=-1 {
            // A(-A^3)^(-a-1) = A · (-A^-3)^(a+1)
            let rhs = &(&a(-1) * &qbracket(x + 1)) + &(&a(1) * &kink_factor(x + 1));
            assert_eq!(qbracket::<i64>(x), rhs, "a = {x}");
        }
    }

    #[test]
    fn closed_formula_examples() {
        let delta = P::delta();
        assert_eq!(kb_closed::<i64>(&d(&[0])), delta);
        assert_eq!(kb_closed::<i64>(&d(&[0, 0])), delta.pow(2));
        let one = &(&a(1) * &delta) + &a(-1);
        let expect =
            &one.pow(3) + &(&(&delta.pow(2) - &P::one()) * &a(-3));
        assert_eq!(kb_closed::<i64>(&d(&[1, 1, 1])), expect);
    }

    #[test]
    fn recursive_examples() {
        let delta = P::delta();
        assert_eq!(kb_recursive::<i64>(&d(&[5])), &delta * &kink_factor(5));
        assert_eq!(
            kb_recursive::<i64>(&d(&[3, 0])),
            &(&(&a(3) * &delta) + &qbracket(3)) * &delta
        );
        assert_eq!(
            kb_recursive::<i64>(&d(&[2, -3, -4])),
            kb_closed::<i64>(&d(&[2, -3, -4]))
        );
    }

    #[test]
    fn single_entry_closed_matches_kinks() {
        for x in -12..=12 {
            assert_eq!(
                kb_closed::<i64>(&d(&[x])),
                &P::delta() * &kink_factor(x),
                "P({x})"
            );
        }
    }

    #[test]
    fn generic_over_coefficients() {
        let p = d(&[7, -5, 3, -9, 4]);
        let small: P = kb_closed(&p);
        let big: LaurentPoly<BigInt> = kb_closed(&p);
        let lifted =
            LaurentPoly::from_terms(small.terms().iter().map(|(e, c)| (*e, BigInt::from(*c))))
                .unwrap();
        assert_eq!(lifted, big);
    }
}
