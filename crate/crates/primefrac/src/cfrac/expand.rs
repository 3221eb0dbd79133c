//! Real-to-continued-fraction expansion with interval certification.
//!
//! The input is a decimal truncation with a proven error bound; a term is
//! emitted only when every real in the input interval shares it. This is
//! the only sound policy when expanding truncated constants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Result;
use crate::exactnum::{CertifiedDecimal, ExactRatio};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The input was exact and its finite expansion is complete.
    Exact,
    /// The interval endpoints disagreed on the next floor.
    IntervalAmbiguous,
    /// `max_terms` were emitted.
    MaxTerms,
}

/// Certified partial quotients `[a0; a1, ...]`; every emitted term is
/// correct for all reals within the input's certified interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionResult {
    pub terms: Vec<BigInt>,
    pub terminated: Termination,
}

impl ExpansionResult {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Expands a certified decimal. Exact inputs (terminating rationals) get
/// their full finite expansion; bounded inputs stop at the first ambiguous
/// floor or at `max_terms`.
pub fn expand_real(value: &CertifiedDecimal, max_terms: usize) -> Result<ExpansionResult> {
    if value.is_exact() {
        Ok(expand_exact(&value.value(), max_terms))
    } else {
        let (lo, hi) = value.interval();
        Ok(expand_interval(&lo, &hi, max_terms))
    }
}

/// Canonical finite expansion of an exact rational (Euclid's algorithm;
/// the last term is >= 2 except for integer input).
pub fn expand_exact(r: &ExactRatio, max_terms: usize) -> ExpansionResult {
    let mut num = r.numerator().clone();
    let mut den = r.denominator().clone();
    let mut terms = Vec::new();
    while !den.is_zero() && terms.len() < max_terms {
        let (q, rem) = num.div_mod_floor(&den);
        terms.push(q);
        num = std::mem::replace(&mut den, rem);
    }
    let terminated = if den.is_zero() { Termination::Exact } else { Termination::MaxTerms };
    ExpansionResult { terms, terminated }
}

/// Terms shared by every real in `[lo, hi]`.
pub fn expand_interval(lo: &ExactRatio, hi: &ExactRatio, max_terms: usize) -> ExpansionResult {
    if lo == hi {
        return expand_exact(lo, max_terms);
    }
    debug_assert!(lo < hi);
    // endpoint state: value = num/den
    let (mut la, mut lb) = (lo.numerator().clone(), lo.denominator().clone());
    let (mut ha, mut hb) = (hi.numerator().clone(), hi.denominator().clone());
    let mut terms = Vec::new();
    while terms.len() < max_terms {
        let fl = la.div_floor(&lb);
        let fh = ha.div_floor(&hb);
        if fl != fh {
            return ExpansionResult { terms, terminated: Termination::IntervalAmbiguous };
        }
        let rem_l = &la - &fl * &lb;
        let rem_h = &ha - &fh * &hb;
        terms.push(fl);
        if rem_l.is_zero() || rem_h.is_zero() {
            // an endpoint landed exactly on the emitted term; the interval
            // still contains reals on either side, so nothing further is
            // certain
            return ExpansionResult { terms, terminated: Termination::IntervalAmbiguous };
        }
        // x -> 1/(x - f) maps [lo, hi] to [1/(hi - f), 1/(lo - f)]
        la = std::mem::replace(&mut lb, rem_l);
        ha = std::mem::replace(&mut hb, rem_h);
        std::mem::swap(&mut la, &mut ha);
        std::mem::swap(&mut lb, &mut hb);
    }
    ExpansionResult { terms, terminated: Termination::MaxTerms }
}

/// Reads a digit file: optional leading `#` comment lines, then one decimal
/// numeral which may span several lines.
pub fn parse_digit_file(contents: &str, certified_exponent_hint: Option<i64>) -> Result<CertifiedDecimal> {
    let mut numeral = String::new();
    for line in contents.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        numeral.push_str(line);
    }
    let frac_digits = numeral.split('.').nth(1).map_or(0, |f| f.len());
    let exponent = certified_exponent_hint.unwrap_or(-(frac_digits as i64));
    CertifiedDecimal::new(numeral, crate::exactnum::ErrorBound::Pow10(exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{from_decimal, to_certified_decimal};
    use num_traits::ToPrimitive;

    #[test]
    fn exact_half_terminates() {
        let half = to_certified_decimal(&from_decimal("0.5").unwrap(), 6);
        let r = expand_real(&half, 100).unwrap();
        assert_eq!(r.terms, vec![BigInt::from(0), BigInt::from(2)]);
        assert_eq!(r.terminated, Termination::Exact);
    }

    #[test]
    fn interval_stops_when_ambiguous() {
        // an interval containing 1/3 in its interior certifies only a0
        let lo = from_decimal("0.3333").unwrap();
        let hi = from_decimal("0.3334").unwrap();
        let r = expand_interval(&lo, &hi, 100);
        assert_eq!(r.terminated, Termination::IntervalAmbiguous);
        assert_eq!(r.terms, vec![BigInt::zero()]);

        // strictly above 1/3: both endpoints start [0; 2, 1, ...]
        let lo = from_decimal("0.3334").unwrap();
        let hi = from_decimal("0.3339").unwrap();
        let r = expand_interval(&lo, &hi, 100);
        assert_eq!(r.terminated, Termination::IntervalAmbiguous);
        assert_eq!(r.terms, vec![BigInt::zero(), BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn all_certified_terms_hold_for_interior_points() {
        // expansion of an interval must be a prefix of the exact expansion
        // of any rational chosen inside it
        let lo = from_decimal("0.714285").unwrap();
        let hi = from_decimal("0.714286").unwrap();
        let certified = expand_interval(&lo, &hi, 50);
        let mid = ExactRatio::new(5.into(), 7.into()).unwrap(); // 0.714285714...
        let full = expand_exact(&mid, 50);
        assert!(certified.terms.len() <= full.terms.len());
        assert_eq!(certified.terms[..], full.terms[..certified.terms.len()]);
    }

    #[test]
    fn golden_ratio_is_all_ones() {
        // sqrt(5) to 220 digits via integer square root
        let scale = crate::exactnum::pow10(220);
        let five_scaled = BigInt::from(5) * &scale * &scale;
        let root = five_scaled.sqrt(); // floor(sqrt(5) * 10^220)
        let phi_lo = ExactRatio::new(&scale + &root, BigInt::from(2) * &scale).unwrap();
        let phi_hi = ExactRatio::new(&scale + &root + 1u32, BigInt::from(2) * &scale).unwrap();
        let r = expand_interval(&phi_lo, &phi_hi, 1000);
        assert!(r.terms.len() >= 200, "certified {} terms", r.terms.len());
        assert!(r.terms.iter().take(200).all(|t| t.to_u64() == Some(1)));
    }

    #[test]
    fn digit_file_parsing() {
        let file = "# a comment\n# another\n3.14\n159\n";
        let d = parse_digit_file(file, None).unwrap();
        assert_eq!(d.digits(), "3.14159");
        assert_eq!(d.certified_exponent(), Some(-5));
    }
}
