//! Named constants: Khinchin and Levy, the twin and quadratic Hardy-
//! Littlewood products, the Friedlander-Iwaniec constant via the AGM,
//! Renyi's parking constant, and the Mersenne denominator coefficient.
//!
//! Each value carries provenance (closed form, partial product with a
//! documented cutoff, or a reference literal) and a certified error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::cfrac::closed::{exp_series, ln2_series, Enclosure};
use crate::error::{Error, Result};
use crate::exactnum::{from_decimal, pow10, render_interval, CertifiedDecimal, ExactRatio};
use crate::primes::sieve_primes;

/// 50-digit Euler-Mascheroni constant (OEIS A001620); reference literal,
/// not computed here.
pub const GAMMA_50: &str = "0.57721566490153286060651209008240243104215933593992";

/// 50-digit pi (OEIS A000796); reference literal.
pub const PI_50: &str = crate::cfrac::closed::PI_50;

/// Constants computable through this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantName {
    /// Khinchin's constant, partial product over m <= cutoff.
    K0,
    /// Levy's constant exp(pi^2 / (12 ln 2)), closed form.
    L0,
    /// Twin-prime constant 2 prod (1 - (p-1)^-2), partial product.
    C2,
    /// Hardy-Littlewood conjecture-E constant, partial product
    /// (conditionally convergent; about 4 digits at the default cutoff).
    Cq,
    /// Friedlander-Iwaniec constant sqrt(2) Gamma(1/4)^2 / (3 pi^{3/2}),
    /// which reduces to 4 / (3 agm(1, sqrt 2)).
    Cfi,
    /// Euler-Mascheroni constant (reference literal).
    Gamma,
    /// Renyi parking constant (1 - e^-2)/2, closed form.
    MR,
    /// 1 / (2^{e^-gamma} - 1), the coefficient in the Mersenne
    /// denominator bound.
    C,
    /// pi (reference literal).
    Pi,
}

impl ConstantName {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "k0" => ConstantName::K0,
            "l0" => ConstantName::L0,
            "c2" => ConstantName::C2,
            "cq" => ConstantName::Cq,
            "cfi" => ConstantName::Cfi,
            "gamma" => ConstantName::Gamma,
            "mr" => ConstantName::MR,
            "c" => ConstantName::C,
            "pi" => ConstantName::Pi,
            other => return Err(Error::Cli(format!("unknown constant {other:?}"))),
        })
    }

    pub fn all() -> &'static [ConstantName] {
        use ConstantName::*;
        &[K0, L0, C2, Cq, Cfi, Gamma, MR, C, Pi]
    }

    pub fn label(&self) -> &'static str {
        match self {
            ConstantName::K0 => "K0",
            ConstantName::L0 => "L0",
            ConstantName::C2 => "C2",
            ConstantName::Cq => "Cq",
            ConstantName::Cfi => "CFI",
            ConstantName::Gamma => "gamma",
            ConstantName::MR => "mR",
            ConstantName::C => "c",
            ConstantName::Pi => "pi",
        }
    }

    pub fn provenance(&self) -> &'static str {
        match self {
            ConstantName::K0 => "partial product over m <= 10^7 with integral tail bound",
            ConstantName::L0 => "closed form exp(pi^2/(12 ln 2)); pi from the 50-digit literal",
            ConstantName::C2 => "partial product over sieved primes <= 10^6 with integral tail bound",
            ConstantName::Cq => "partial product over sieved primes <= 10^7; conditionally convergent, heuristic 4-digit error",
            ConstantName::Cfi => "closed form 4/(3 agm(1, sqrt 2))",
            ConstantName::Gamma => "50-digit reference literal (OEIS A001620)",
            ConstantName::MR => "closed form (1 - e^-2)/2 by exact rational series",
            ConstantName::C => "closed form 1/(2^{e^-gamma} - 1); gamma from the 50-digit literal",
            ConstantName::Pi => "50-digit reference literal (OEIS A000796)",
        }
    }

    /// Largest digit count honoured by [`math_constants`].
    pub fn achievable_digits(&self) -> usize {
        match self {
            ConstantName::K0 => 5,
            ConstantName::L0 => 40,
            ConstantName::C2 => 6,
            ConstantName::Cq => 4,
            ConstantName::Cfi => 100,
            ConstantName::Gamma => 50,
            ConstantName::MR => 1000,
            ConstantName::C => 40,
            ConstantName::Pi => 50,
        }
    }
}

/// Default cutoffs for the product-based constants.
pub const K0_CUTOFF: u64 = 10_000_000;
pub const C2_CUTOFF: u64 = 1_000_000;
pub const CQ_CUTOFF: u64 = 10_000_000;

fn kahan_push(sum: &mut f64, comp: &mut f64, term: f64) {
    let t = term - *comp;
    let total = *sum + t;
    *comp = (total - *sum) - t;
    *sum = total;
}

/// Slack covering compensated-summation rounding in the f64 partials.
const F64_SLACK: f64 = 1e-10;

/// Khinchin's constant by partial product over `m <= cutoff`.
///
/// Every omitted factor exceeds 1, so the partial product sits below the
/// limit; the return value is the certified interval `[lo, hi]`.
pub fn khinchin_partial(cutoff: u64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for m in 2..=cutoff {
        let m = m as f64;
        kahan_push(&mut sum, &mut comp, (m.ln() / std::f64::consts::LN_2) * (1.0 / (m * (m + 2.0))).ln_1p());
    }
    let value = sum.exp();
    // log-tail: sum_{m>M} log2(m) ln(1 + 1/(m(m+2))) < integral (ln x)/(ln 2 x^2)
    //         = (ln M + 1)/(M ln 2)
    let m = cutoff as f64;
    let log_tail = (m.ln() + 1.0) / (m * std::f64::consts::LN_2);
    let tail = value * (log_tail.exp() - 1.0);
    (value - F64_SLACK, value + tail + F64_SLACK)
}

/// Twin-prime constant by partial product over odd primes `<= cutoff`.
///
/// Omitted factors are below 1, so partial products decrease toward the
/// limit; returns the certified interval `[lo, hi]`.
pub fn twin_constant_partial(cutoff: u64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for p in sieve_primes(cutoff).into_iter().skip(1) {
        let p = p as f64;
        kahan_push(&mut sum, &mut comp, (-1.0 / ((p - 1.0) * (p - 1.0))).ln_1p());
    }
    let value = 2.0 * sum.exp();
    // tail: sum_{p>M} 1/(p-1)^2 < integral dx/((x-1)^2 ln x) < 1/((M-1) ln M)
    let m = cutoff as f64;
    let tail = value * 2.0 / ((m - 1.0) * m.ln());
    (value - tail - F64_SLACK, value + F64_SLACK)
}

/// Conjecture-E constant by partial product over primes `3 <= p <= cutoff`.
///
/// The product converges only conditionally; the +-1e-4 half-width of the
/// returned interval is the documented heuristic, not a proven bound.
pub fn quadratic_constant_partial(cutoff: u64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for p in sieve_primes(cutoff).into_iter().skip(1) {
        // factor 1 - (-1)^{(p-1)/2}/(p-1)
        let sign = if ((p - 1) / 2) % 2 == 0 { -1.0 } else { 1.0 };
        kahan_push(&mut sum, &mut comp, (sign / (p as f64 - 1.0)).ln_1p());
    }
    let value = sum.exp();
    (value - 1e-4, value + 1e-4)
}

/// `agm(1, sqrt 2)` on scaled integers, certified to `10^-digits`.
fn agm_one_sqrt2(digits: usize) -> Result<Enclosure> {
    let guard = 15usize;
    let scale = pow10(digits + guard);
    let mut a = scale.clone();
    let mut b = (BigInt::from(2) * &scale * &scale).sqrt();
    let mut steps = 0;
    while (&b - &a).abs() > BigInt::from(4) {
        let next_a = (&a + &b) / 2;
        let next_b = (&a * &b).sqrt();
        a = next_a;
        b = next_b;
        steps += 1;
        if steps > 200 {
            return Err(Error::Domain("agm did not converge".into()));
        }
    }
    // each iteration truncates at most one ulp; the final bracket plus
    // accumulated truncation stays far below 10^-digits with 15 guard digits
    let err_ulps = BigInt::from(8 + 2 * steps);
    Ok(Enclosure {
        value: ExactRatio::new(a, scale.clone())?,
        error: ExactRatio::new(err_ulps, scale)?,
    })
}

fn gamma_ratio() -> ExactRatio {
    from_decimal(GAMMA_50).expect("valid literal")
}

fn literal_error() -> ExactRatio {
    ExactRatio::pow10(-50)
}

/// `2^{e^-gamma}` as an enclosure (used by `c` and by the transcendence
/// statistics).
pub fn two_pow_exp_neg_gamma(target_exponent: i64) -> Result<Enclosure> {
    let gamma = gamma_ratio();
    let e_neg_gamma = exp_series(&(-&gamma), target_exponent - 4)?;
    // propagate the gamma literal error: |d/dx e^-x| <= 1 near 0.577
    let e_err = &e_neg_gamma.error + &literal_error();
    let ln2 = ln2_series(target_exponent - 4);
    // x = e^-gamma * ln 2, with first-order error propagation
    let x = &e_neg_gamma.value * &ln2.value;
    let x_err = &(&e_err * &ln2.value) + &(&e_neg_gamma.value * &ln2.error);
    let result = exp_series(&x, target_exponent - 4)?;
    // |e^{x+d} - e^x| <= e^x (e^d - 1) <= 2 e^x d for d <= 1/2
    let prop = &(&result.value * &x_err) * &ExactRatio::from_integer(2);
    Ok(Enclosure { value: result.value, error: &result.error + &prop })
}

/// Computes `name` to `digits` fractional digits.
///
/// Product-based constants are limited by their cutoff; asking beyond the
/// documented achievable digits is an error stating the achievable count.
pub fn math_constants(name: ConstantName, digits: usize) -> Result<CertifiedDecimal> {
    if digits == 0 {
        return Err(Error::Domain("digits must be >= 1".into()));
    }
    if digits > name.achievable_digits() {
        return Err(Error::AchievableDigits {
            constant: name.label().into(),
            achievable: name.achievable_digits(),
        });
    }
    match name {
        // the literals are truncations; shorter renderings stay truncations
        ConstantName::Gamma => literal_prefix(GAMMA_50, digits),
        ConstantName::Pi => literal_prefix(PI_50, digits),
        ConstantName::K0 => render_f64(khinchin_partial(K0_CUTOFF), digits),
        ConstantName::C2 => render_f64(twin_constant_partial(C2_CUTOFF), digits),
        ConstantName::Cq => render_f64(quadratic_constant_partial(CQ_CUTOFF), digits),
        ConstantName::MR => {
            // (1 - e^-2)/2 by exact rational series
            let e = exp_series(&ExactRatio::from_integer(-2), -(digits as i64) - 6)?;
            let half = ExactRatio::new(1.into(), 2.into()).unwrap();
            let value = (ExactRatio::one() - e.value) * half.clone();
            let err = &e.error * &half;
            render_enclosure(&value, &err, digits)
        }
        ConstantName::Cfi => {
            // 4 / (3 agm(1, sqrt 2)); pi cancels out of the Gamma(1/4) form
            let agm = agm_one_sqrt2(digits + 8)?;
            let (alo, ahi) = agm.interval();
            let three = ExactRatio::from_integer(3);
            let four = ExactRatio::from_integer(4);
            let lo = &four / &(&three * &ahi);
            let hi = &four / &(&three * &alo);
            Ok(render_interval(&lo, &hi, digits)?.0)
        }
        ConstantName::C => {
            let t = two_pow_exp_neg_gamma(-(digits as i64) - 8)?;
            let (tlo, thi) = t.interval();
            let one = ExactRatio::one();
            let lo = (&tlo - &one).recip()?;
            let hi = (&thi - &one).recip()?;
            let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
            Ok(render_interval(&lo, &hi, digits)?.0)
        }
        ConstantName::L0 => {
            // exp(pi^2 / (12 ln 2))
            let pi = from_decimal(PI_50)?;
            let pi_sq = &pi * &pi;
            // |(pi+d)^2 - pi^2| <= d (2 pi + d)
            let pi_sq_err = &literal_error() * &ExactRatio::from_integer(7);
            let ln2 = ln2_series(-(digits as i64) - 12);
            let twelve = ExactRatio::from_integer(12);
            let den = &twelve * &ln2.value;
            let x = &pi_sq / &den;
            // error: d(a/b) <= da/b + a db/b^2, coarsened with b > 8
            let x_err = &(&pi_sq_err + &(&pi_sq * &ln2.error)) / &ExactRatio::from_integer(8);
            let result = exp_series(&x, -(digits as i64) - 8)?;
            let prop = &(&result.value * &x_err) * &ExactRatio::from_integer(2);
            render_enclosure(&result.value, &(&result.error + &prop), digits)
        }
    }
}

fn render_enclosure(value: &ExactRatio, err: &ExactRatio, digits: usize) -> Result<CertifiedDecimal> {
    render_measured(&(value - err), &(value + err), digits)
}

/// Renders a measured value known to lie in `[lo, hi]`: the midpoint is
/// rounded at `digits` fractional digits, the error exponent is computed
/// from the actual distance to the interval ends, and the digits before
/// the last are required to be exact under truncation (retrying with fewer
/// digits otherwise).
fn render_measured(lo: &ExactRatio, hi: &ExactRatio, digits: usize) -> Result<CertifiedDecimal> {
    let two = ExactRatio::from_integer(2);
    let mid = &(lo + hi) / &two;
    let mut k = digits;
    loop {
        let rendered = mid.to_rounded_string(k);
        let r_val = from_decimal(&rendered)?;
        let err = (&r_val - lo).abs().max((hi - &r_val).abs());
        let e = if err.is_zero() { -(k as i64) } else { crate::cfrac::bound_exponent(&err) };
        // digits before position -e-1 must be exact under truncation
        let prefix_len = ((-e) as usize).saturating_sub(1).min(k);
        let scale = pow10(prefix_len);
        let fl = (lo.numerator() * &scale).div_floor(lo.denominator());
        let fh = (hi.numerator() * &scale).div_floor(hi.denominator());
        let fr = (r_val.numerator() * &scale).div_floor(r_val.denominator());
        if fl == fh && fh == fr {
            return CertifiedDecimal::new(rendered, crate::exactnum::ErrorBound::Pow10(e));
        }
        if k == 0 {
            return Err(Error::InsufficientPrecision { needed_digits: digits });
        }
        k -= 1;
    }
}

fn literal_prefix(literal: &str, digits: usize) -> Result<CertifiedDecimal> {
    let v = from_decimal(literal)?;
    let truncated = crate::exactnum::to_certified_decimal(&v, digits);
    // the literal is itself a truncation of an irrational; never report Exact
    CertifiedDecimal::new(
        truncated.digits().to_string(),
        crate::exactnum::ErrorBound::Pow10(-(digits as i64)),
    )
}

fn render_f64((lo, hi): (f64, f64), digits: usize) -> Result<CertifiedDecimal> {
    let scale = 1e12;
    let lo = ExactRatio::new(BigInt::from((lo * scale).floor() as i64), BigInt::from(scale as i64))?;
    let hi = ExactRatio::new(BigInt::from((hi * scale).ceil() as i64), BigInt::from(scale as i64))?;
    render_measured(&lo, &hi, digits)
}
