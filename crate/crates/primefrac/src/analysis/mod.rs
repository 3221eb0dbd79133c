//! Diagnostic layer: Khinchin and Levy profiles, the per-convergent
//! exponent delta(n), Sondow's irrationality-measure forms, and the
//! transcendence-criterion statistics.

pub mod constants;
pub mod predictors;

pub use constants::{math_constants, ConstantName};
pub use predictors::{
    adaptive_simpson, gap_predictors, hl_predictor, li_paper, primorial_growth,
    wagstaff_fit, GapPrediction, PredictorComparison, WagstaffFit,
};

use num_bigint::BigInt;


use crate::error::{Error, Result};
use crate::exactnum::{big_ln, CertifiedDecimal, ExactRatio};

/// Which diagnostic a [`ProfileSeries`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileLabel {
    /// K(n) = (a_1 ... a_n)^{1/n}
    Khinchin,
    /// Q_n^{1/n}
    Levy,
    /// delta(n) = -ln|U - P_n/Q_n| / ln Q_n
    Delta,
    /// mu_n = 2 + ln a_{n+1} / ln Q_n
    Mu,
    /// sqrt(ln n) ln(ln Q_n) / n
    DavenportRoth,
    /// the printed form ln(ln Q_n) / (n^{2/3} (ln Q_n)^{2/3} ln(ln Q_n))
    AdamczewskiBugeaud,
    /// 1.0 when Q_n > 2^{c 2^{(n+1) e^-gamma}}, else 0.0
    MersenneBound,
}

impl ProfileLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProfileLabel::Khinchin => "khinchin",
            ProfileLabel::Levy => "levy",
            ProfileLabel::Delta => "delta",
            ProfileLabel::Mu => "mu",
            ProfileLabel::DavenportRoth => "dr",
            ProfileLabel::AdamczewskiBugeaud => "ab",
            ProfileLabel::MersenneBound => "mersenne-bound",
        }
    }
}

/// A sequence of (n, value) diagnostic points with strictly increasing
/// indices and finite values, plus free-form notes (skipped points,
/// flagged expressions).
#[derive(Debug, Clone)]
pub struct ProfileSeries {
    pub label: ProfileLabel,
    pub points: Vec<(u64, f64)>,
    pub notes: Vec<String>,
}

impl ProfileSeries {
    fn new(label: ProfileLabel) -> Self {
        ProfileSeries { label, points: Vec::new(), notes: Vec::new() }
    }

    pub fn value_at(&self, n: u64) -> Option<f64> {
        self.points.iter().find(|(i, _)| *i == n).map(|(_, v)| *v)
    }
}

/// Geometric-mean profile K(k) for `k <= up_to`, through [`big_ln`] so the
/// running product never materializes.
pub fn khinchin_profile(quotients: &[BigInt], up_to: usize) -> Result<ProfileSeries> {
    let mut series = ProfileSeries::new(ProfileLabel::Khinchin);
    let mut sum = 0.0f64;
    for (i, a) in quotients.iter().take(up_to).enumerate() {
        sum += big_ln(a)?.value();
        let k = (i + 1) as f64;
        series.points.push(((i + 1) as u64, (sum / k).exp()));
    }
    Ok(series)
}

/// Levy profile Q_k^{1/k} for `k <= up_to` over convergent denominators.
pub fn levy_profile(denominators: &[BigInt], up_to: usize) -> Result<ProfileSeries> {
    let mut series = ProfileSeries::new(ProfileLabel::Levy);
    for (i, q) in denominators.iter().take(up_to).enumerate() {
        let k = (i + 1) as f64;
        series.points.push(((i + 1) as u64, (big_ln(q)?.value() / k).exp()));
    }
    Ok(series)
}

/// Margin demanded of the reference value: its certified error must be
/// below 1e-10 times the smallest convergent distance in range.
const DELTA_PRECISION_MARGIN: i64 = 10;

/// delta(k) = -ln|U - P_k/Q_k| / ln Q_k from the exact rational
/// differences, for `k <= up_to`.
///
/// The reference `U` must carry enough certified digits; otherwise the
/// error demands more digits rather than producing junk points.
pub fn delta_profile(u: &CertifiedDecimal, convergents: &[ExactRatio], up_to: usize) -> Result<ProfileSeries> {
    let u_value = u.value();
    let u_err = match u.certified_exponent() {
        None => None,
        Some(e) => Some(ExactRatio::pow10(e)),
    };
    let mut series = ProfileSeries::new(ProfileLabel::Delta);
    for (i, conv) in convergents.iter().take(up_to).enumerate() {
        let n = (i + 1) as u64;
        let diff = (&u_value - conv).abs();
        if let Some(err) = &u_err {
            let margin = err * &ExactRatio::pow10(DELTA_PRECISION_MARGIN);
            if diff <= margin {
                let needed = (-crate::cfrac::bound_exponent(&diff)).max(0) as usize
                    + DELTA_PRECISION_MARGIN as usize
                    + 10;
                return Err(Error::InsufficientPrecision { needed_digits: needed });
            }
        } else if diff.is_zero() {
            series.notes.push(format!("n={n}: reference equals the convergent exactly; skipped"));
            continue;
        }
        let ln_diff = crate::exactnum::ratio_ln(&diff)?;
        let ln_q = big_ln(conv.denominator())?.value();
        if ln_q <= 0.0 {
            series.notes.push(format!("n={n}: ln Q_n not positive; skipped"));
            continue;
        }
        series.points.push((n, -ln_diff / ln_q));
    }
    Ok(series)
}

/// Both Sondow forms of the irrationality-measure profile:
/// `1 + ln Q_{n+1}/ln Q_n` and `2 + ln a_{n+1}/ln Q_n`.
///
/// They agree in the limit; pointwise they differ by exactly
/// `ln(1 + Q_{n-1}/(a_{n+1} Q_n)) / ln Q_n`, which is checked here
/// against that bound (plus logarithm error) at every point.
pub fn sondow_mu_forms(
    quotients: &[BigInt],
    denominators: &[BigInt],
    up_to: usize,
) -> Result<(ProfileSeries, ProfileSeries)> {
    if denominators.len() < 2 || quotients.len() < 2 {
        return Err(Error::Domain("sondow_mu needs at least two terms".into()));
    }
    let mut primary = ProfileSeries::new(ProfileLabel::Mu);
    let mut alt = ProfileSeries::new(ProfileLabel::Mu);
    // point n needs Q_n, Q_{n+1} and a_{n+1}
    let max_n = up_to.min(denominators.len() - 1).min(quotients.len() - 1);
    for n in 1..=max_n {
        let ln_q = big_ln(&denominators[n - 1])?.value();
        if ln_q <= 0.0 {
            primary.notes.push(format!("n={n}: ln Q_n not positive; skipped"));
            continue;
        }
        let ln_a_next = big_ln(&quotients[n])?.value();
        let mu2 = 2.0 + ln_a_next / ln_q;
        let mu1 = 1.0 + big_ln(&denominators[n])?.value() / ln_q;
        // the forms differ by ln(1 + Q_{n-1}/(a_{n+1} Q_n)) / ln Q_n,
        // bounded by ln(1 + 1/a_{n+1}) / ln Q_n
        let gap_bound = (-ln_a_next).exp().ln_1p() / ln_q + 1e-9 * (mu1.abs() + mu2.abs());
        if (mu1 - mu2).abs() > gap_bound + 1e-12 {
            return Err(Error::Domain(format!(
                "sondow forms disagree beyond their bound at n={n}: {mu1} vs {mu2}"
            )));
        }
        primary.points.push((n as u64, mu2));
        alt.points.push((n as u64, mu1));
    }
    Ok((primary, alt))
}

/// The canonical Sondow profile (`2 + ln a_{n+1}/ln Q_n`), with the
/// cross-form agreement check performed internally.
pub fn sondow_mu(quotients: &[BigInt], denominators: &[BigInt], up_to: usize) -> Result<ProfileSeries> {
    Ok(sondow_mu_forms(quotients, denominators, up_to)?.0)
}

/// Delta profile against the stream's own final convergent.
///
/// The reference is re-rendered at `2 * (decimal length of Q_{n+1}) + 20`
/// digits, and its certified error folds in the stream's own tail bound
/// `1/(Q_last Q_prev)`, so the per-point precision precondition stays
/// honest with respect to the underlying constant.
pub fn delta_profile_from_convergents(convergents: &[ExactRatio], up_to: usize) -> Result<ProfileSeries> {
    if convergents.len() < 4 {
        return Err(Error::Domain("delta profile needs at least four convergents".into()));
    }
    let n_max = up_to.min(convergents.len() - 3);
    let digits = 2 * convergents[n_max].denominator().to_string().len() + 20;
    let last = convergents.last().unwrap();
    let prev = &convergents[convergents.len() - 2];
    let tail_bound = ExactRatio::new(1.into(), last.denominator() * prev.denominator())
        .expect("positive denominators");
    let truncation = ExactRatio::pow10(-(digits as i64));
    let total = &tail_bound + &truncation;
    let exponent = crate::cfrac::bound_exponent(&total);
    let rendered = crate::exactnum::to_certified_decimal(last, digits);
    let reference = CertifiedDecimal::new(
        rendered.digits().to_string(),
        crate::exactnum::ErrorBound::Pow10(exponent),
    )?;
    delta_profile(&reference, &convergents[..n_max], n_max)
}

/// Which transcendence-criterion statistic to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranscendenceKind {
    DavenportRoth,
    AdamczewskiBugeaud,
    MersenneBound,
}

/// Transcendence-criterion statistics over convergent denominators.
///
/// `DavenportRoth`: sqrt(ln n) ln(ln Q_n) / n, points with Q_n <= e
/// skipped with a note.
///
/// `AdamczewskiBugeaud`: the printed expression evaluated literally,
/// ln(ln Q_n) / (n^{2/3} (ln Q_n)^{2/3} ln(ln Q_n)); the factor common to
/// numerator and denominator looks like a misprint in the source, so the
/// series is flagged in `notes` and not interpreted.
///
/// `MersenneBound`: 1.0 when Q_n > 2^{c 2^{(n+1) e^-gamma}} with
/// c = 1/(2^{e^-gamma} - 1), else 0.0.
pub fn transcendence_statistics(kind: TranscendenceKind, denominators: &[BigInt]) -> Result<ProfileSeries> {
    let mut series = ProfileSeries::new(match kind {
        TranscendenceKind::DavenportRoth => ProfileLabel::DavenportRoth,
        TranscendenceKind::AdamczewskiBugeaud => ProfileLabel::AdamczewskiBugeaud,
        TranscendenceKind::MersenneBound => ProfileLabel::MersenneBound,
    });
    if kind == TranscendenceKind::AdamczewskiBugeaud {
        series.notes.push(
            "expression evaluated exactly as printed; numerator and denominator share ln(ln Q_n)"
                .into(),
        );
    }
    let (c, e_neg_gamma) = if kind == TranscendenceKind::MersenneBound {
        let enc = constants::two_pow_exp_neg_gamma(-30)?;
        let c = (ExactRatio::one() / (enc.value.clone() - ExactRatio::one())).to_f64();
        let gamma: f64 = constants::GAMMA_50[..18].parse().unwrap();
        (c, (-gamma).exp())
    } else {
        (0.0, 0.0)
    };
    for (i, q) in denominators.iter().enumerate() {
        let n = (i + 1) as u64;
        let ln_q = big_ln(q)?.value();
        match kind {
            TranscendenceKind::DavenportRoth | TranscendenceKind::AdamczewskiBugeaud => {
                if ln_q <= 1.0 {
                    series.notes.push(format!("n={n}: Q_n <= e, ln ln Q_n undefined; skipped"));
                    continue;
                }
                let lnln = ln_q.ln();
                let nf = n as f64;
                let v = match kind {
                    TranscendenceKind::DavenportRoth => nf.ln().sqrt() * lnln / nf,
                    _ => lnln / (nf.powf(2.0 / 3.0) * ln_q.powf(2.0 / 3.0) * lnln),
                };
                series.points.push((n, v));
            }
            TranscendenceKind::MersenneBound => {
                // compare ln Q_n with c 2^{(n+1) e^-gamma} ln 2
                let rhs_log = c * 2f64.powf((n as f64 + 1.0) * e_neg_gamma) * std::f64::consts::LN_2;
                series.points.push((n, if ln_q > rhs_log { 1.0 } else { 0.0 }));
            }
        }
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::{convergents, ContinuedFraction};
    use crate::exactnum::to_certified_decimal;
    use crate::primes::{family_quotients, PrimeFamily};

    #[test]
    fn khinchin_of_constant_stream() {
        let twos: Vec<BigInt> = std::iter::repeat(BigInt::from(2)).take(50).collect();
        let s = khinchin_profile(&twos, 50).unwrap();
        for (_, v) in &s.points {
            assert!((v - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn khinchin_exceeds_n_for_primes_beyond_13() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 8000 }).unwrap();
        let s = khinchin_profile(&stream.quotients, 1000).unwrap();
        for &(n, v) in &s.points {
            if n == 2 || n == 3 || (13..=1000).contains(&n) {
                assert!(v > n as f64, "K({n}) = {v}");
            }
            if (4..=12).contains(&n) {
                assert!(v < n as f64, "K({n}) = {v} unexpectedly exceeds n");
            }
        }
    }

    #[test]
    fn levy_of_golden_ratio_tends_to_phi() {
        let ones = vec![BigInt::from(1); 60];
        let cf = ContinuedFraction::new(0, ones.clone()).unwrap();
        let qs: Vec<BigInt> = convergents(&cf, 60).iter().map(|c| c.denominator().clone()).collect();
        let s = levy_profile(&qs, 60).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let (_, last) = *s.points.last().unwrap();
        assert!((last - phi).abs() < 0.02, "Q_60^(1/60) = {last}");
    }

    #[test]
    fn levy_exceeds_n_for_primes() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 8000 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let qs: Vec<BigInt> = convergents(&cf, 1000).iter().map(|c| c.denominator().clone()).collect();
        let s = levy_profile(&qs, 1000).unwrap();
        for &(n, v) in &s.points {
            if (13..=1000).contains(&n) {
                assert!(v > n as f64, "Q_{n}^(1/{n}) = {v}");
            }
        }
    }

    #[test]
    fn delta_exceeds_two_everywhere() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 2000 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let convs = convergents(&cf, usize::MAX);
        let s = delta_profile_from_convergents(&convs, 250).unwrap();
        assert!(s.points.len() >= 240);
        for &(n, v) in &s.points {
            assert!(v > 2.0, "delta({n}) = {v}");
        }
    }

    #[test]
    fn delta_demands_precision() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 2000 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let convs = convergents(&cf, usize::MAX);
        let coarse = convs.last().unwrap().to_decimal(40);
        match delta_profile(&coarse, &convs, 200) {
            Err(Error::InsufficientPrecision { needed_digits }) => assert!(needed_digits > 40),
            other => panic!("expected InsufficientPrecision, got {other:?}"),
        }
    }

    #[test]
    fn sondow_mu_of_golden_is_two() {
        let ones = vec![BigInt::from(1); 80];
        let cf = ContinuedFraction::new(0, ones.clone()).unwrap();
        let qs: Vec<BigInt> = convergents(&cf, 80).iter().map(|c| c.denominator().clone()).collect();
        let s = sondow_mu(&ones, &qs, 70).unwrap();
        for &(n, v) in s.points.iter().skip(3) {
            assert!((v - 2.0).abs() < 1e-9, "mu_{n} = {v}");
        }
    }

    #[test]
    fn sondow_forms_agree_within_gap_bound_on_primes() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 10_000 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let qs: Vec<BigInt> = convergents(&cf, usize::MAX).iter().map(|c| c.denominator().clone()).collect();
        // the internal check runs at every point and errors on violation
        let (primary, alt) = sondow_mu_forms(&stream.quotients, &qs, 1228).unwrap();
        assert_eq!(primary.points.len(), alt.points.len());
        // at n = 1000 the two forms agree to 1e-9 relative and mu < 2.01
        let mu1000 = primary.value_at(1000).unwrap();
        let alt1000 = alt.value_at(1000).unwrap();
        assert!((mu1000 - alt1000).abs() / mu1000 < 1e-9);
        assert!(mu1000 < 2.01, "mu_1000 = {mu1000}");
    }

    #[test]
    fn davenport_roth_of_factorials_decreases() {
        let facts: Vec<BigInt> = {
            let mut v = Vec::new();
            let mut f = BigInt::from(1);
            for k in 1..=60u32 {
                f *= k;
                v.push(f.clone());
            }
            v
        };
        let cf = ContinuedFraction::new(0, facts).unwrap();
        let qs: Vec<BigInt> = convergents(&cf, 60).iter().map(|c| c.denominator().clone()).collect();
        let s = transcendence_statistics(TranscendenceKind::DavenportRoth, &qs).unwrap();
        let pts = &s.points;
        for w in pts.windows(2) {
            if w[0].0 >= 20 {
                assert!(w[0].1 > w[1].1, "not decreasing at n = {}", w[0].0);
            }
        }
    }

    #[test]
    fn doubly_exponential_toy_grows_past_one() {
        // a_n = 2^(2^n): the statistic keeps growing, passing 1.2 by n = 20
        let mut terms = Vec::new();
        for n in 1..=20u32 {
            terms.push(BigInt::from(1) << (1u64 << n));
        }
        let cf = ContinuedFraction::new(0, terms).unwrap();
        let qs: Vec<BigInt> = convergents(&cf, 20).iter().map(|c| c.denominator().clone()).collect();
        let s = transcendence_statistics(TranscendenceKind::DavenportRoth, &qs).unwrap();
        let v5 = s.value_at(5).unwrap();
        let v20 = s.value_at(20).unwrap();
        assert!(v5 < 1.0, "stat(5) = {v5}");
        assert!(v20 > 1.2, "stat(20) = {v20}");
    }

    #[test]
    fn ab_statistic_is_flagged_and_tiny() {
        let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 1000 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let qs: Vec<BigInt> = convergents(&cf, 100).iter().map(|c| c.denominator().clone()).collect();
        let s = transcendence_statistics(TranscendenceKind::AdamczewskiBugeaud, &qs).unwrap();
        assert!(!s.notes.is_empty());
        // after cancellation the printed form is 1/(n^{2/3} (ln Q_n)^{2/3})
        for &(n, v) in s.points.iter().skip(5) {
            let ln_q = (n as f64) * 5.0; // rough scale only
            assert!(v < 1.0 && v > 0.0, "ab({n}) = {v} (lnQ ~ {ln_q})");
        }
    }

    #[test]
    fn mersenne_bound_profile_desk_range() {
        let stream = family_quotients(&PrimeFamily::Mersenne { max_exponent: 607 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let qs: Vec<BigInt> = convergents(&cf, 14).iter().map(|c| c.denominator().clone()).collect();
        let s = transcendence_statistics(TranscendenceKind::MersenneBound, &qs).unwrap();
        // the printed inequality fails at n = 3 (Q_3 = 685 < ~1003) and
        // holds at every other desk index
        assert_eq!(s.value_at(3), Some(0.0));
        for n in 4..=13u64 {
            assert_eq!(s.value_at(n), Some(1.0), "bound at n = {n}");
        }
    }

    #[test]
    fn mersenne_delta_oscillates_in_band() {
        let stream = family_quotients(&PrimeFamily::Mersenne { max_exponent: 607 }).unwrap();
        let cf = ContinuedFraction::from_stream(&stream);
        let convs = convergents(&cf, usize::MAX);
        let reference = to_certified_decimal(convs.last().unwrap(), 600);
        let s = delta_profile(&reference, &convs, 10).unwrap();
        for &(n, v) in &s.points {
            if (3..=10).contains(&n) {
                assert!((2.2..=2.9).contains(&v), "delta({n}) = {v}");
            }
        }
    }
}
