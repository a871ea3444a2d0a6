//! Exact Laurent polynomials in one variable with integer coefficients.
//!
//! Terms are kept sorted by exponent with no zero coefficients, so equality
//! and printing are canonical. Coefficient arithmetic is checked: the
//! operator impls panic on overflow, the `checked_*` methods report it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};
use thiserror::Error;

/// Exact integer coefficient ring usable inside [`LaurentPoly`].
pub trait Coeff:
    Clone
    + Eq
    + Ord
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + From<i32>
    + Send
    + Sync
{
}

impl Coeff for i64 {}
impl Coeff for i128 {}
impl Coeff for BigInt {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("span undefined for the zero polynomial")]
    SpanUndefined,
    #[error("not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("non-integral t-degree (exponent {0} is not a multiple of 4)")]
    NonIntegralDegree(i64),
    #[error("coefficient overflow")]
    Overflow,
}

/// Sparse Laurent polynomial `Σ c_e · X^e`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<C> {
    terms: Vec<(i64, C)>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn monomial(coeff: C, exp: i64) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(exp, coeff)],
            }
        }
    }

    /// `X^exp`.
    pub fn power_of_var(exp: i64) -> Self {
        Self::monomial(C::one(), exp)
    }

    /// The loop value `δ = -A^-2 - A^2`.
    pub fn delta() -> Self {
        let minus_one = -C::one();
        Self {
            terms: vec![(-2, minus_one.clone()), (2, minus_one)],
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I>(terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert_with(C::zero);
            *slot = slot.checked_add(&c).ok_or(LaurentError::Overflow)?;
        }
        Ok(Self::from_sorted(acc.into_iter()))
    }

    /// Dense coefficients ascending from `min_exp`.
    pub fn from_dense(min_exp: i64, coeffs: &[C]) -> Self {
        Self::from_sorted(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (min_exp + i as i64, c.clone())),
        )
    }

    fn from_sorted<I: Iterator<Item = (i64, C)>>(terms: I) -> Self {
        Self {
            terms: terms.filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> C {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Highest exponent minus lowest exponent.
    pub fn span(&self) -> Result<i64, LaurentError> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(LaurentError::SpanUndefined),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.checked_add(&b[j].1).ok_or(LaurentError::Overflow)?;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Self { terms: out })
    }

    pub fn checked_neg(&self) -> Result<Self, LaurentError> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                C::zero()
                    .checked_sub(c)
                    .map(|n| (*e, n))
                    .ok_or(LaurentError::Overflow)
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        let (a, b) = (&self.terms, &other.terms);
        if a.is_empty() || b.is_empty() {
            return Ok(Self::zero());
        }
        let lo = a[0].0 + b[0].0;
        let hi = a[a.len() - 1].0 + b[b.len() - 1].0;
        let width = (hi - lo + 1) as usize;
        if width <= 8 * a.len() * b.len() + 64 {
            let mut dense = vec![C::zero(); width];
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let prod = ca.checked_mul(cb).ok_or(LaurentError::Overflow)?;
                    let slot = &mut dense[(ea + eb - lo) as usize];
                    *slot = slot.checked_add(&prod).ok_or(LaurentError::Overflow)?;
                }
            }
            Ok(Self::from_dense(lo, &dense))
        } else {
            let mut prods = Vec::with_capacity(a.len() * b.len());
            for (ea, ca) in a {
                for (eb, cb) in b {
                    prods.push((ea + eb, ca.checked_mul(cb).ok_or(LaurentError::Overflow)?));
                }
            }
            Self::from_terms(prods)
        }
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self, LaurentError> {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, k: u32) -> Self {
        self.checked_pow(k).expect("coefficient overflow")
    }

    /// Multiplies by `X^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Substitutes `X ↦ X^-1`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, failing if a remainder is left.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        let (d_lo, d_hi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::DivisionByZero),
        };
        let Some(p_lo) = self.min_exp() else {
            return Ok(Self::zero());
        };
        let lead = &divisor.terms[divisor.terms.len() - 1].1;
        // Every quotient exponent lies at or above this.
        let q_floor = p_lo - d_lo;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((e, c)) = rem.terms.last().cloned() {
            let qe = e - d_hi;
            if qe < q_floor || !(c.clone() % lead.clone()).is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let qc = c / lead.clone();
            let step = divisor.shift(qe).checked_mul(&Self::monomial(qc.clone(), 0))?;
            rem = rem.checked_sub(&step)?;
            quotient.push((qe, qc));
        }
        quotient.reverse();
        Ok(Self { terms: quotient })
    }

    /// Rewrites a polynomial in `A` as one in `t` under `A = t^(-1/4)`.
    pub fn to_t_poly(&self) -> Result<TPoly<C>, LaurentError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.iter().rev() {
            if e % 4 != 0 {
                return Err(LaurentError::NonIntegralDegree(*e));
            }
            terms.push((-e / 4, c.clone()));
        }
        Ok(TPoly(Self { terms }))
    }

    /// Renders with the given variable name, increasing exponents.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if *e == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&format!("{var}^{e}"));
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("A"))
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

macro_rules! checked_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Coeff> $tr<&LaurentPoly<C>> for &LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                self.$checked(rhs).expect("coefficient overflow")
            }
        }
        impl<C: Coeff> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coeff> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.checked_neg().expect("coefficient overflow")
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

/// A Laurent polynomial in the Jones variable `t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TPoly<C: Coeff>(pub LaurentPoly<C>);

impl<C: Coeff> TPoly<C> {
    pub fn poly(&self) -> &LaurentPoly<C> {
        &self.0
    }

    /// `t ↦ t^-1`.
    pub fn mirror(&self) -> Self {
        TPoly(self.0.mirror())
    }

    pub fn span(&self) -> Result<i64, LaurentError> {
        self.0.span()
    }

    /// Lowest exponent and dense ascending coefficients.
    pub fn to_dense(&self) -> Option<(i64, Vec<C>)> {
        let lo = self.0.min_exp()?;
        let hi = self.0.max_exp()?;
        Some((lo, (lo..=hi).map(|e| self.0.coeff(e)).collect()))
    }

    /// Equal to `other` or to its image under `t ↦ t^-1`.
    pub fn matches_up_to_mirror(&self, other: &Self) -> bool {
        self == other || *self == other.mirror()
    }
}

impl<C: Coeff> fmt::Display for TPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render("t"))
    }
}
