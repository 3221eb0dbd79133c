//! Exact continued-fraction engine: convergents by the forward recurrence
//! with exact integers, and certified evaluation driven by the classical
//! error bound `|r - P_k/Q_k| < 1/(Q_k Q_{k+1})`.

pub mod closed;
pub mod expand;

pub use closed::{ap_cf_value, bessel_i, champernowne};
pub use expand::{expand_exact, expand_interval, expand_real, ExpansionResult, Termination};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{pow10, render_interval, CertifiedDecimal, ExactRatio};
use crate::primes::QuotientStream;

/// A simple continued fraction `[a0; a1, a2, ...]` with explicit terms.
///
/// All partial quotients are at least 1; `a0` may be any integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    a0: BigInt,
    terms: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn new(a0: impl Into<BigInt>, terms: Vec<BigInt>) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|t| !t.is_positive()) {
            return Err(Error::Domain(format!("partial quotient {bad} is not positive")));
        }
        Ok(ContinuedFraction { a0: a0.into(), terms })
    }

    pub fn from_u64_terms(a0: i64, terms: &[u64]) -> Self {
        ContinuedFraction { a0: BigInt::from(a0), terms: terms.iter().map(|&t| BigInt::from(t)).collect() }
    }

    /// `[0; q1, q2, ...]` over a family's quotient stream.
    pub fn from_stream(stream: &QuotientStream) -> Self {
        ContinuedFraction { a0: BigInt::zero(), terms: stream.quotients.clone() }
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Rolling state of the convergent recurrence
/// `P_n = a_n P_{n-1} + P_{n-2}`, `Q_n = a_n Q_{n-1} + Q_{n-2}`.
#[derive(Debug, Clone)]
pub struct ConvergentPair {
    pub index: usize,
    pub p_prev: BigInt,
    pub q_prev: BigInt,
    pub p_cur: BigInt,
    pub q_cur: BigInt,
}

impl ConvergentPair {
    /// State after consuming only `a0`: `P_0/Q_0 = a0/1`.
    pub fn start(a0: &BigInt) -> Self {
        ConvergentPair {
            index: 0,
            p_prev: BigInt::one(),
            q_prev: BigInt::zero(),
            p_cur: a0.clone(),
            q_cur: BigInt::one(),
        }
    }

    pub fn advance(&mut self, a: &BigInt) {
        let p = a * &self.p_cur + &self.p_prev;
        let q = a * &self.q_cur + &self.q_prev;
        self.p_prev = std::mem::replace(&mut self.p_cur, p);
        self.q_prev = std::mem::replace(&mut self.q_cur, q);
        self.index += 1;
    }

    /// `P_n Q_{n-1} - P_{n-1} Q_n`, which must equal `(-1)^{n-1}`.
    pub fn determinant(&self) -> BigInt {
        &self.p_cur * &self.q_prev - &self.p_prev * &self.q_cur
    }

    pub fn ratio(&self) -> ExactRatio {
        ExactRatio::from_coprime(self.p_cur.clone(), self.q_cur.clone())
    }
}

/// The first `n` convergents `[a0; a1..a_k]` for `k = 1..=n`, exact.
///
/// If the fraction has fewer than `n` terms the available prefix is
/// returned; the result length is the count actually produced.
pub fn convergents(cf: &ContinuedFraction, n: usize) -> Vec<ExactRatio> {
    let mut state = ConvergentPair::start(&cf.a0);
    let mut out = Vec::with_capacity(n.min(cf.terms.len()));
    for a in cf.terms.iter().take(n) {
        state.advance(a);
        out.push(state.ratio());
    }
    out
}

/// Result of a certified evaluation.
#[derive(Debug, Clone)]
pub struct EvaluationResult {
    /// Truncated rendering of the final convergent at the requested digits.
    pub value: CertifiedDecimal,
    /// Number of partial quotients consumed (not counting `a0`).
    pub terms_used: usize,
    /// `1/(Q_{n-1} Q_n)` for the last two convergents: a proven bound on the
    /// distance between the final convergent and the limit of any
    /// continuation of the stream.
    pub final_error_bound: ExactRatio,
    /// Fractional digits of the rendering that provably match the limit.
    pub certified_digits: usize,
    /// False when the stream ran out before the requested digits were
    /// certified.
    pub fully_certified: bool,
    /// The final convergent itself.
    pub convergent: ExactRatio,
}

impl EvaluationResult {
    /// Certified error exponent of the evaluation: the least `e` with
    /// `final_error_bound <= 10^e`.
    pub fn error_exponent(&self) -> i64 {
        bound_exponent(&self.final_error_bound)
    }
}

/// Least `e` such that `b <= 10^e`, for positive `b`.
pub fn bound_exponent(b: &ExactRatio) -> i64 {
    assert!(!b.is_negative() && !b.is_zero());
    let num_len = b.numerator().to_string().len() as i64;
    let den_len = b.denominator().to_string().len() as i64;
    let mut e = num_len - den_len + 1;
    // adjust down while b <= 10^(e-1)
    loop {
        let smaller = ExactRatio::pow10(e - 1);
        if b <= &smaller {
            e -= 1;
        } else {
            return e;
        }
    }
}

const EVAL_GUARD_DIGITS: usize = 10;

/// Evaluates `[a0; quotients...]`, consuming quotients lazily until the
/// error bound `1/(Q_{n-1} Q_n)` certifies `digits` fractional digits, or
/// the stream is exhausted (flagged in the result).
pub fn evaluate_stream<I>(a0: &BigInt, quotients: I, digits: usize) -> Result<EvaluationResult>
where
    I: IntoIterator<Item = BigInt>,
{
    if digits == 0 {
        return Err(Error::Domain("evaluate requires digits >= 1".into()));
    }
    let threshold = pow10(digits + EVAL_GUARD_DIGITS);
    let mut state = ConvergentPair::start(a0);
    for a in quotients {
        if !a.is_positive() {
            return Err(Error::Domain(format!("partial quotient {a} is not positive")));
        }
        state.advance(&a);
        if &state.q_prev * &state.q_cur > threshold {
            break;
        }
    }
    if state.index == 0 {
        // no quotients at all: the value is exactly a0
        let ratio = ExactRatio::from_integer(a0.clone());
        let value = ratio.to_decimal(digits);
        return Ok(EvaluationResult {
            value,
            terms_used: 0,
            final_error_bound: ExactRatio::one(),
            certified_digits: 0,
            fully_certified: false,
            convergent: ratio,
        });
    }
    let bound = ExactRatio::new(BigInt::one(), (&state.q_prev * &state.q_cur).max(BigInt::one()))
        .expect("positive denominator");
    let convergent = state.ratio();
    let value = convergent.to_decimal(digits);
    let certified_digits = certified_truncation_digits(&convergent, &bound);
    Ok(EvaluationResult {
        terms_used: state.index,
        fully_certified: certified_digits >= digits,
        value,
        final_error_bound: bound,
        certified_digits,
        convergent,
    })
}

/// Counts the fractional digits on which every value within `r +- bound`
/// agrees with `r`'s truncation.
fn certified_truncation_digits(r: &ExactRatio, bound: &ExactRatio) -> usize {
    let mut k = (-bound_exponent(bound)).max(0) as usize;
    let lo = r - bound;
    let hi = r + bound;
    while k > 0 {
        if let Ok((_, achieved)) = render_interval(&lo, &hi, k) {
            return achieved;
        }
        k -= 1;
    }
    0
}

/// Convenience wrapper over [`evaluate_stream`] for explicit fractions.
pub fn evaluate(cf: &ContinuedFraction, digits: usize) -> Result<EvaluationResult> {
    evaluate_stream(&cf.a0, cf.terms.iter().cloned(), digits)
}

/// Evaluates consuming the *entire* stream, regardless of when the
/// requested digits became certified. The error bound then reflects the
/// full family at its bound, which is what reports quote.
pub fn evaluate_all<I>(a0: &BigInt, quotients: I, digits: usize) -> Result<EvaluationResult>
where
    I: IntoIterator<Item = BigInt>,
{
    if digits == 0 {
        return Err(Error::Domain("evaluate requires digits >= 1".into()));
    }
    let mut state = ConvergentPair::start(a0);
    for a in quotients {
        if !a.is_positive() {
            return Err(Error::Domain(format!("partial quotient {a} is not positive")));
        }
        state.advance(&a);
    }
    if state.index == 0 {
        let ratio = ExactRatio::from_integer(a0.clone());
        return Ok(EvaluationResult {
            value: ratio.to_decimal(digits),
            terms_used: 0,
            final_error_bound: ExactRatio::one(),
            certified_digits: 0,
            fully_certified: false,
            convergent: ratio,
        });
    }
    let bound = ExactRatio::new(BigInt::one(), (&state.q_prev * &state.q_cur).max(BigInt::one()))
        .expect("positive denominator");
    let convergent = state.ratio();
    let value = convergent.to_decimal(digits);
    let certified_digits = certified_truncation_digits(&convergent, &bound);
    Ok(EvaluationResult {
        terms_used: state.index,
        fully_certified: certified_digits >= digits,
        value,
        final_error_bound: bound,
        certified_digits,
        convergent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::{family_quotients, PrimeFamily};

    #[test]
    fn two_term_convergents() {
        let cf = ContinuedFraction::from_u64_terms(0, &[2, 3]);
        let c = convergents(&cf, 2);
        assert_eq!(c[0], ExactRatio::new(1.into(), 2.into()).unwrap());
        assert_eq!(c[1], ExactRatio::new(3.into(), 7.into()).unwrap());
    }

    #[test]
    fn determinant_alternates() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 1000 }).unwrap();
        let mut state = ConvergentPair::start(&BigInt::zero());
        for (i, a) in stream.quotients.iter().enumerate() {
            state.advance(a);
            // n = i + 1, determinant = (-1)^(n-1)
            let expected = if i % 2 == 0 { 1i32 } else { -1 };
            assert_eq!(state.determinant(), BigInt::from(expected), "index {}", i + 1);
        }
    }

    #[test]
    fn fi_eight_term_convergent_is_the_published_fraction() {
        // the eight-term prefix of the m^2+n^4 stream, with 97 twice
        let cf = ContinuedFraction::from_u64_terms(0, &[2, 5, 17, 17, 37, 41, 97, 97]);
        let c = convergents(&cf, 8);
        let last = c.last().unwrap();
        assert_eq!(last.numerator(), &BigInt::from(20993638525u64));
        assert_eq!(last.denominator(), &BigInt::from(46137348479u64));
    }

    #[test]
    fn prime_convergent_magnitudes_match_published_leading_digits() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 10_000 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let c = convergents(&cf, usize::MAX);
        assert_eq!(c.len(), 1229);
        let last = c.last().unwrap();
        let p = last.numerator().to_string();
        let q = last.denominator().to_string();
        assert_eq!(p.len(), 4298); // 3.38592889... * 10^4297
        assert!(p.starts_with("338592889"));
        assert_eq!(q.len(), 4298); // 7.83177790(5)... * 10^4297
        assert!(q.starts_with("78317779"));
    }

    #[test]
    fn evaluate_single_term() {
        let cf = ContinuedFraction::from_u64_terms(0, &[3]);
        let r = evaluate(&cf, 10).unwrap();
        assert_eq!(r.value.digits(), "0.3333333333");
        assert_eq!(r.terms_used, 1);
        assert_eq!(r.final_error_bound, ExactRatio::new(1.into(), 3.into()).unwrap());
        assert!(!r.fully_certified);
    }

    #[test]
    fn evaluate_stops_early_once_certified() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 10_000 }).unwrap();
        let r = evaluate_stream(&BigInt::zero(), stream.quotients.iter().cloned(), 30).unwrap();
        assert!(r.terms_used < 30, "consumed {} terms", r.terms_used);
        assert!(r.fully_certified);
        assert!(r.value.digits().starts_with("0.432332087185902868909253793241"));
    }

    #[test]
    fn sandwich_and_error_bound_containment() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 10_000 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let c = convergents(&cf, usize::MAX);
        let value = c.last().unwrap();
        // consecutive convergents alternate around the final value
        for w in c.windows(2).take(400) {
            let (lo, hi) = (&w[0], &w[1]);
            if lo < hi {
                assert!(lo < value && value <= hi);
            } else {
                assert!(hi <= value && value < lo);
            }
        }
        // |value - P_k/Q_k| < 1/(Q_k Q_{k+1})
        for (k, w) in c.windows(2).enumerate().take(400) {
            let err = (value - &w[0]).abs();
            let bound =
                ExactRatio::new(BigInt::one(), w[0].denominator() * w[1].denominator()).unwrap();
            assert!(err < bound, "containment fails at k = {}", k + 1);
        }
    }

    #[test]
    fn bound_exponent_examples() {
        let b = ExactRatio::new(1.into(), 3.into()).unwrap();
        assert_eq!(bound_exponent(&b), 0); // 1/3 <= 1
        let b = ExactRatio::new(1.into(), 1000.into()).unwrap();
        assert_eq!(bound_exponent(&b), -3);
        let b = ExactRatio::new(3.into(), 1000.into()).unwrap();
        assert_eq!(bound_exponent(&b), -2);
        let b = ExactRatio::new(1.into(), 1.into()).unwrap();
        assert_eq!(bound_exponent(&b), 0);
    }

    #[test]
    fn rejects_nonpositive_quotients() {
        assert!(ContinuedFraction::new(0, vec![BigInt::from(2), BigInt::zero()]).is_err());
        let r = evaluate_stream(&BigInt::zero(), vec![BigInt::from(-3)], 5);
        assert!(r.is_err());
    }
}
