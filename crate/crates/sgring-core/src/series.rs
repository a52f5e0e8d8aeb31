//! Exact power-series arithmetic for Hilbert series.
//!
//! A series is a Laurent polynomial numerator over a product of factors
//! `(1 - t^a)`. Expansion and exact division run over checked `i64`
//! coefficients; every factor only shifts exponents upward, so the
//! coefficients on a window `[lo, hi]` are determined by the numerator
//! coefficients at or below `hi`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Integer Laurent polynomial, exponent -> coefficient, no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exponent: i64, coefficient: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exponent, coefficient).expect("single term");
        p
    }

    pub fn from_exponents(exponents: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut p = LaurentPoly::zero();
        for e in exponents {
            p.add_term(e, 1)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: i64) -> Result<()> {
        if coefficient == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry = entry
            .checked_add(coefficient)
            .ok_or(Error::overflow("series coefficient"))?;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
        Ok(())
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.checked_neg().ok_or(Error::overflow("series negation"))?)?;
        }
        Ok(out)
    }

    /// Multiplication by `t^shift`.
    pub fn shifted(&self, shift: i64) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            let exp = e.checked_add(shift).ok_or(Error::overflow("series shift"))?;
            out.add_term(exp, c)?;
        }
        Ok(out)
    }

    pub fn evaluate_at_one(&self) -> Result<i64> {
        self.terms
            .values()
            .try_fold(0i64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::overflow("series evaluation"))
    }

    /// Exact quotient by `(1 - t^a)`, or an error when the division leaves
    /// a remainder. Computed by the ascending recurrence
    /// `q[e] = p[e] + q[e - a]`.
    pub fn divide_by_one_minus(&self, a: i64) -> Result<LaurentPoly> {
        debug_assert!(a > 0);
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let lo = self.min_exponent().unwrap();
        let hi = self.max_exponent().unwrap();
        let mut quotient: BTreeMap<i64, i64> = BTreeMap::new();
        for e in lo..=hi {
            let prev = quotient.get(&(e - a)).copied().unwrap_or(0);
            let q = self
                .coefficient(e)
                .checked_add(prev)
                .ok_or(Error::overflow("series division"))?;
            if q != 0 {
                quotient.insert(e, q);
            }
        }
        // the quotient must terminate: the top `a` slots carry the remainder
        for e in (hi - a + 1)..=hi {
            if quotient.get(&e).copied().unwrap_or(0) != 0 {
                return Err(Error::internal(format!(
                    "numerator is not divisible by (1 - t^{a})"
                )));
            }
        }
        Ok(LaurentPoly { terms: quotient })
    }
}

/// A rational series `numerator / Π (1 - t^a)` with a finite Laurent
/// numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: LaurentPoly,
    /// Exponents `a` of the denominator factors `(1 - t^a)`.
    pub denominator: Vec<i64>,
}

impl HilbertSeries {
    pub fn new(numerator: LaurentPoly, denominator: Vec<i64>) -> Self {
        debug_assert!(denominator.iter().all(|&a| a > 0));
        HilbertSeries { numerator, denominator }
    }

    /// Expansion coefficients on the window `[lo, hi]`.
    pub fn coefficients(&self, lo: i64, hi: i64) -> Result<Vec<i64>> {
        if lo > hi {
            return Ok(Vec::new());
        }
        let Some(base) = self.numerator.min_exponent() else {
            return Ok(vec![0; (hi - lo + 1) as usize]);
        };
        let start = base.min(lo);
        let len = (hi - start + 1) as usize;
        let mut coeffs = vec![0i64; len];
        for (e, c) in self.numerator.terms() {
            if e <= hi {
                coeffs[(e - start) as usize] = c;
            }
        }
        for &a in &self.denominator {
            // prefix recurrence multiplies by the geometric series of t^a
            for i in a as usize..len {
                coeffs[i] = coeffs[i]
                    .checked_add(coeffs[i - a as usize])
                    .ok_or(Error::overflow("series expansion"))?;
            }
        }
        Ok(coeffs[(lo - start) as usize..].to_vec())
    }

    /// The value of `Π (1 - t^a) / (1 - t^m) * self` at `t = 1`, i.e. the
    /// normalization used for multiplicities: the numerator must be
    /// divisible by one denominator factor `(1 - t^m)`.
    pub fn normalized_value_at_one(&self) -> Result<i64> {
        let m = *self
            .denominator
            .first()
            .ok_or_else(|| Error::internal("normalization needs a denominator factor"))?;
        self.numerator.divide_by_one_minus(m)?.evaluate_at_one()
    }
}

/// Coefficients of `t^0 .. t^n` of the series expansion.
pub fn series_truncate(series: &HilbertSeries, n: i64) -> Result<Vec<i64>> {
    series.coefficients(0, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_series() {
        let s = HilbertSeries::new(LaurentPoly::monomial(0, 1), vec![1]);
        assert_eq!(series_truncate(&s, 3).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn cube_numerator_counts_elements_by_degree() {
        let numerator = LaurentPoly::from_exponents([0, 2, 2, 4]).unwrap();
        let s = HilbertSeries::new(numerator, vec![2, 2, 2]);
        assert_eq!(series_truncate(&s, 4).unwrap(), vec![1, 0, 5, 0, 13]);
    }

    #[test]
    fn shared_factor_cancels() {
        let numerator = LaurentPoly::from_exponents([0, 1]).unwrap();
        let s = HilbertSeries::new(numerator, vec![2]);
        assert_eq!(series_truncate(&s, 4).unwrap(), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn laurent_window_includes_negative_exponents() {
        // (t^-1 + t^2) / (1 - t^2) expands to t^-1 + t + t^2 + t^3 + ...
        let numerator = LaurentPoly::from_exponents([-1, 2]).unwrap();
        let s = HilbertSeries::new(numerator, vec![2]);
        assert_eq!(s.coefficients(-2, 4).unwrap(), vec![0, 1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn exact_division_detects_remainders() {
        let p = LaurentPoly::from_exponents([0, 1, 2, 3]).unwrap();
        let q = p.divide_by_one_minus(2);
        assert!(q.is_err());

        // (1 - t^2)(1 + t) = 1 + t - t^2 - t^3
        let mut p = LaurentPoly::zero();
        p.add_term(0, 1).unwrap();
        p.add_term(1, 1).unwrap();
        p.add_term(2, -1).unwrap();
        p.add_term(3, -1).unwrap();
        let q = p.divide_by_one_minus(2).unwrap();
        assert_eq!(q, LaurentPoly::from_exponents([0, 1]).unwrap());
    }

    #[test]
    fn normalized_value_is_the_quotient_at_one() {
        // (1 - t^6) / (1 - t^2)^2 normalizes to (1+t^2+t^4)/(1-t^2) at t=1 -> 3
        let mut numerator = LaurentPoly::monomial(0, 1);
        numerator.add_term(6, -1).unwrap();
        let s = HilbertSeries::new(numerator, vec![2, 2]);
        assert_eq!(s.normalized_value_at_one().unwrap(), 3);
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(
            exps in proptest::collection::vec((-6i64..=8, -4i64..=4), 1..6),
            a in 1i64..=4,
        ) {
            let mut p = LaurentPoly::zero();
            for (e, c) in exps {
                p.add_term(e, c).unwrap();
            }
            // q = p * (1 - t^a)
            let q = p.checked_sub(&p.shifted(a).unwrap()).unwrap();
            let back = q.divide_by_one_minus(a).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn truncation_windows_are_consistent(
            exps in proptest::collection::vec(0i64..=6, 1..5),
            denom in proptest::collection::vec(1i64..=3, 1..3),
        ) {
            let s = HilbertSeries::new(LaurentPoly::from_exponents(exps).unwrap(), denom);
            let long = s.coefficients(0, 12).unwrap();
            let short = s.coefficients(4, 9).unwrap();
            prop_assert_eq!(&long[4..=9], short.as_slice());
        }
    }
}
