//! Exact truncated power series over the integers.
//!
//! Coefficients are checked 64-bit integers; any overflow is reported as an
//! error instead of wrapping. Rational forms (integer polynomial quotients
//! with unit constant term in the denominator) expand to exact truncations
//! and serve as the reference route for closed-form series.

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::presentation::Presentation;
use crate::rewrite::Limits;

/// A formal power series truncated at a fixed order, with exact integer
/// coefficients `c_0 .. c_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    /// Truncation order `d`; coefficients above `t^d` are unknown.
    pub truncation: usize,
    /// Exactly `truncation + 1` coefficients, constant term first.
    pub coefficients: Vec<i64>,
}

impl TruncatedSeries {
    /// Wraps a coefficient list; the truncation order is `len - 1`.
    ///
    /// Panics on an empty list: a series always has a constant term.
    pub fn new(coefficients: Vec<i64>) -> Self {
        assert!(!coefficients.is_empty(), "series needs a constant term");
        TruncatedSeries {
            truncation: coefficients.len() - 1,
            coefficients,
        }
    }

    /// The multiplicative identity `1` truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coefficients = vec![0i64; order + 1];
        coefficients[0] = 1;
        TruncatedSeries::new(coefficients)
    }

    pub fn coefficient(&self, k: usize) -> Option<i64> {
        self.coefficients.get(k).copied()
    }

    /// Cauchy product, truncated at the smaller of the two orders so that no
    /// coefficient is fabricated.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, EngineError> {
        let order = self.truncation.min(other.truncation);
        let mut out = vec![0i64; order + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc: i64 = 0;
            for i in 0..=k {
                let term = self.coefficients[i]
                    .checked_mul(other.coefficients[k - i])
                    .ok_or(EngineError::Overflow)?;
                acc = acc.checked_add(term).ok_or(EngineError::Overflow)?;
            }
            *slot = acc;
        }
        Ok(TruncatedSeries::new(out))
    }

    /// Multiplicative inverse through the same truncation order.
    ///
    /// Requires a unit constant term (`c_0 = 1` or `-1`); the inverse is then
    /// unique and integral.
    pub fn inverse(&self) -> Result<TruncatedSeries, EngineError> {
        let c0 = self.coefficients[0];
        if c0 != 1 && c0 != -1 {
            return Err(EngineError::NonUnitConstantTerm(c0));
        }
        let mut out = vec![0i64; self.truncation + 1];
        out[0] = c0; // 1/1 = 1, 1/(-1) = -1
        for k in 1..=self.truncation {
            let mut acc: i64 = 0;
            for i in 1..=k {
                let term = self.coefficients[i]
                    .checked_mul(out[k - i])
                    .ok_or(EngineError::Overflow)?;
                acc = acc.checked_add(term).ok_or(EngineError::Overflow)?;
            }
            // c0 * out[k] + acc = 0, and c0 is its own inverse.
            out[k] = acc.checked_mul(-c0).ok_or(EngineError::Overflow)?;
        }
        Ok(TruncatedSeries::new(out))
    }

    pub fn is_one(&self) -> bool {
        self.coefficients[0] == 1 && self.coefficients[1..].iter().all(|&c| c == 0)
    }
}

/// Multiplies two integer polynomials given as coefficient lists.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![0];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `base` raised to a nonnegative integer power.
pub fn poly_pow(base: &[i64], exp: u32) -> Vec<i64> {
    let mut out = vec![1i64];
    for _ in 0..exp {
        out = poly_mul(&out, base);
    }
    out
}

/// A quotient of integer polynomials, used to expand closed forms into
/// truncated series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalForm {
    numerator: Vec<i64>,
    denominator: Vec<i64>,
}

impl RationalForm {
    /// Builds `numerator / denominator`. The denominator must have a nonzero
    /// constant term.
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>) -> Result<Self, EngineError> {
        if denominator.first().copied().unwrap_or(0) == 0 {
            return Err(EngineError::ZeroDenominatorConstant);
        }
        Ok(RationalForm {
            numerator,
            denominator,
        })
    }

    /// A plain polynomial (denominator 1).
    pub fn polynomial(numerator: Vec<i64>) -> Self {
        RationalForm {
            numerator,
            denominator: vec![1],
        }
    }

    /// Taylor coefficients of the quotient through order `d`, exact.
    ///
    /// Requires the denominator constant term to be `1` or `-1` so that long
    /// division stays in the integers.
    pub fn expand(&self, d: usize) -> Result<TruncatedSeries, EngineError> {
        let d0 = self.denominator[0];
        if d0 != 1 && d0 != -1 {
            return Err(EngineError::NonUnitConstantTerm(d0));
        }
        let mut out = vec![0i64; d + 1];
        for k in 0..=d {
            let mut acc = self.numerator.get(k).copied().unwrap_or(0);
            for j in 1..=k.min(self.denominator.len() - 1) {
                let term = self.denominator[j]
                    .checked_mul(out[k - j])
                    .ok_or(EngineError::Overflow)?;
                acc = acc.checked_sub(term).ok_or(EngineError::Overflow)?;
            }
            out[k] = if d0 == 1 {
                acc
            } else {
                acc.checked_neg().ok_or(EngineError::Overflow)?
            };
        }
        Ok(TruncatedSeries::new(out))
    }
}

/// Outcome of checking `P(t) * N(t) = 1` through a truncation order.
#[derive(Debug, Clone)]
pub struct InversionReport {
    pub presentation: String,
    pub d_max: usize,
    pub growth: TruncatedSeries,
    pub skew: TruncatedSeries,
    pub product: TruncatedSeries,
    pub pass: bool,
    pub first_failing_degree: Option<usize>,
}

/// Computes the growth series by element enumeration and the skew growth
/// series by tower enumeration, and reports whether their product is `1`
/// through order `d_max`. The two series come from independent pipelines, so
/// agreement is a genuine cross-check.
pub fn verify_inversion(
    p: &Presentation,
    d_max: usize,
    limits: &Limits,
) -> Result<InversionReport, EngineError> {
    let tables = crate::rewrite::ClassTables::build(p, d_max, limits)?;
    let growth = crate::enumerate::growth_series_from_tables(&tables, d_max)?;
    let skew = crate::towers::skew_growth_from_tables(&tables, d_max)?;
    let product = growth.mul(&skew)?;
    let first_failing_degree = product
        .coefficients
        .iter()
        .enumerate()
        .find(|&(k, &c)| c != if k == 0 { 1 } else { 0 })
        .map(|(k, _)| k);
    Ok(InversionReport {
        presentation: p.name().unwrap_or("(unnamed)").to_string(),
        d_max,
        growth,
        skew,
        product,
        pass: first_failing_degree.is_none(),
        first_failing_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(v.to_vec())
    }

    #[test]
    fn mul_geometric_times_one_minus_t() {
        let a = series(&[1, 1, 1]);
        let b = series(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), series(&[1, 0, 0]));
    }

    #[test]
    fn mul_bii_truncations_cancel() {
        let p = series(&[1, 3, 7]);
        let n = series(&[1, -3, 2]);
        assert_eq!(p.mul(&n).unwrap(), series(&[1, 0, 0]));
    }

    #[test]
    fn mul_identity_is_neutral() {
        let a = series(&[4, -7, 11, 0, 2]);
        assert_eq!(a.mul(&TruncatedSeries::one(4)).unwrap(), a);
    }

    #[test]
    fn mul_takes_min_order() {
        let a = series(&[1, 2, 3, 4]);
        let b = series(&[1, 1]);
        assert_eq!(a.mul(&b).unwrap().truncation, 1);
    }

    #[test]
    fn inverse_of_one_minus_two_t() {
        let a = series(&[1, -2, 0, 0, 0, 0]);
        assert_eq!(a.inverse().unwrap(), series(&[1, 2, 4, 8, 16, 32]));
    }

    #[test]
    fn inverse_of_bii_skew_is_bii_growth() {
        let n = series(&[1, -3, 2, 1, 0, -1, -1, 0, 1]);
        assert_eq!(
            n.inverse().unwrap(),
            series(&[1, 3, 7, 14, 25, 41, 63, 92, 129])
        );
    }

    #[test]
    fn inverse_of_constant_one() {
        assert_eq!(series(&[1]).inverse().unwrap(), series(&[1]));
    }

    #[test]
    fn inverse_rejects_non_unit() {
        assert_eq!(
            series(&[2, 1]).inverse(),
            Err(EngineError::NonUnitConstantTerm(2))
        );
    }

    #[test]
    fn expand_abelian_closed_form() {
        // (1-t)^2 / (1-t^2)
        let r = RationalForm::new(vec![1, -2, 1], vec![1, 0, -1]).unwrap();
        assert_eq!(r.expand(5).unwrap(), series(&[1, -2, 2, -2, 2, -2]));
    }

    #[test]
    fn expand_polynomial_with_unit_denominator() {
        // (1-t)(t^5 + t^4 - 2t + 1)
        let num = poly_mul(&[1, -1], &[1, -2, 0, 0, 1, 1]);
        let r = RationalForm::polynomial(num);
        assert_eq!(r.expand(8).unwrap(), series(&[1, -3, 2, 0, 1, 0, -1, 0, 0]));
    }

    #[test]
    fn expand_inverse_cube() {
        let r = RationalForm::new(vec![1], poly_pow(&[1, -1], 3)).unwrap();
        assert_eq!(r.expand(4).unwrap(), series(&[1, 3, 6, 10, 15]));
    }

    #[test]
    fn expand_rejects_zero_constant_denominator() {
        assert_eq!(
            RationalForm::new(vec![1], vec![0, 1]),
            Err(EngineError::ZeroDenominatorConstant)
        );
    }

    #[test]
    fn overflow_is_reported() {
        let a = series(&[1, i64::MAX]);
        let b = series(&[1, i64::MAX]);
        assert_eq!(a.mul(&b), Err(EngineError::Overflow));
    }

    #[test]
    fn json_field_names_are_stable() {
        let s = series(&[1, -3, 2]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"truncation":2,"coefficients":[1,-3,2]}"#);
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    proptest! {
        #[test]
        fn mul_commutes(a in proptest::collection::vec(-50i64..50, 1..8),
                        b in proptest::collection::vec(-50i64..50, 1..8)) {
            let (a, b) = (TruncatedSeries::new(a), TruncatedSeries::new(b));
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn mul_associates(a in proptest::collection::vec(-20i64..20, 4..7),
                          b in proptest::collection::vec(-20i64..20, 4..7),
                          c in proptest::collection::vec(-20i64..20, 4..7)) {
            let (a, b, c) = (
                TruncatedSeries::new(a),
                TruncatedSeries::new(b),
                TruncatedSeries::new(c),
            );
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_is_an_involution(mut v in proptest::collection::vec(-30i64..30, 1..9)) {
            v[0] = 1;
            let a = TruncatedSeries::new(v);
            prop_assert_eq!(a.inverse().unwrap().inverse().unwrap(), a.clone());
            prop_assert!(a.mul(&a.inverse().unwrap()).unwrap().is_one());
        }

        #[test]
        fn expand_times_denominator_recovers_numerator(
            num in proptest::collection::vec(-20i64..20, 1..6),
            mut den in proptest::collection::vec(-20i64..20, 1..6),
        ) {
            den[0] = 1;
            let order = 9;
            let q = RationalForm::new(num.clone(), den.clone()).unwrap()
                .expand(order).unwrap();
            let d = RationalForm::polynomial(den).expand(order).unwrap();
            let n = RationalForm::polynomial(num).expand(order).unwrap();
            prop_assert_eq!(q.mul(&d).unwrap(), n);
        }
    }
}
