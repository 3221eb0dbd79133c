//! Closed-form cross-validation oracles: modified Bessel series, values of
//! arithmetic-progression continued fractions, the Champernowne constant,
//! and the exact-rational series machinery behind them.
//!
//! Everything here works on `ExactRatio` values with explicit rational
//! tail bounds, so results arrive as enclosing intervals.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{pow10, render_interval, CertifiedDecimal, ErrorBound, ExactRatio};

/// A value together with a proven bound on its distance from the truth.
#[derive(Debug, Clone)]
pub struct Enclosure {
    pub value: ExactRatio,
    pub error: ExactRatio,
}

impl Enclosure {
    pub fn exact(value: ExactRatio) -> Self {
        Enclosure { value, error: ExactRatio::zero() }
    }

    pub fn interval(&self) -> (ExactRatio, ExactRatio) {
        (&self.value - &self.error, &self.value + &self.error)
    }

    pub fn render(&self, digits: usize) -> Result<CertifiedDecimal> {
        let (lo, hi) = self.interval();
        Ok(render_interval(&lo, &hi, digits)?.0)
    }
}

/// `exp(x)` by Taylor series with an explicit geometric tail bound.
/// Requires `|x| <= 8` (all uses here are far smaller).
pub fn exp_series(x: &ExactRatio, target_exponent: i64) -> Result<Enclosure> {
    if x.abs() > ExactRatio::from_integer(8) {
        return Err(Error::Domain("exp_series restricted to |x| <= 8".into()));
    }
    let eps = ExactRatio::pow10(target_exponent);
    let mut term = ExactRatio::one();
    let mut sum = ExactRatio::one();
    let mut k: u32 = 1;
    loop {
        term = &term * x / ExactRatio::from_integer(k as i64);
        sum = &sum + &term;
        // once k >= 2|x| the term ratio is below 1/2 and the tail is
        // bounded by twice the next term
        if k >= 17 && term.abs() < &eps / &ExactRatio::from_integer(4) {
            let tail = ExactRatio::from_integer(2) * term.abs();
            return Ok(Enclosure { value: sum, error: tail });
        }
        k += 1;
        if k > 10_000 {
            return Err(Error::Domain("exp_series did not converge".into()));
        }
    }
}

/// `cosh(x)` and `sinh(x)` from the even/odd parts of the series.
pub fn cosh_sinh_series(x: &ExactRatio, target_exponent: i64) -> Result<(Enclosure, Enclosure)> {
    let ep = exp_series(x, target_exponent - 1)?;
    let em = exp_series(&(-x), target_exponent - 1)?;
    let half = ExactRatio::new(1.into(), 2.into()).unwrap();
    let cosh = Enclosure {
        value: (&ep.value + &em.value) * half.clone(),
        error: &ep.error + &em.error,
    };
    let sinh = Enclosure {
        value: (&ep.value - &em.value) * half,
        error: &ep.error + &em.error,
    };
    Ok((cosh, sinh))
}

/// `ln 2 = 2 atanh(1/3)` with a geometric tail bound.
pub fn ln2_series(target_exponent: i64) -> Enclosure {
    let ninth = ExactRatio::new(1.into(), 9.into()).unwrap();
    let eps = ExactRatio::pow10(target_exponent);
    let mut power = ExactRatio::new(1.into(), 3.into()).unwrap(); // (1/3)^(2k+1)
    let mut sum = ExactRatio::zero();
    let mut k: i64 = 0;
    loop {
        sum = &sum + &(&power / &ExactRatio::from_integer(2 * k + 1));
        power = &power * &ninth;
        // remaining terms are below power * sum of 9^-j
        let tail = &power / &ExactRatio::from_integer(2 * k + 3)
            * ExactRatio::new(9.into(), 8.into()).unwrap();
        if tail < &eps / &ExactRatio::from_integer(4) {
            let two = ExactRatio::from_integer(2);
            return Enclosure { value: &two * &sum, error: &two * &tail };
        }
        k += 1;
    }
}

/// `sqrt(r)` for positive rational `r`, certified to `10^target_exponent`.
pub fn sqrt_ratio(r: &ExactRatio, target_exponent: i64) -> Result<Enclosure> {
    if r.is_negative() || r.is_zero() {
        return Err(Error::Domain("sqrt_ratio requires a positive argument".into()));
    }
    let digits = (-target_exponent).max(1) as usize + 2;
    let scale = pow10(digits);
    // sqrt(a/b) = sqrt(a*b)/b
    let ab = r.numerator() * r.denominator();
    let root = (&ab * &scale * &scale).sqrt();
    let den = r.denominator() * &scale;
    let value = ExactRatio::new(root, den.clone())?;
    // floor sqrt is within one scaled ulp
    let error = ExactRatio::new(BigInt::one(), den)?;
    Ok(Enclosure { value, error })
}

/// Modified Bessel function of the first kind `I_nu(x)` for integer
/// `nu >= 0` and rational `x > 0`, as an exact-rational enclosure.
///
/// The series is summed until the next term is both below the target and
/// decaying at ratio < 1/2, which bounds the tail by twice the next term.
pub fn bessel_i_integer_series(nu: u32, x: &ExactRatio, target_exponent: i64) -> Result<Enclosure> {
    if x.is_negative() || x.is_zero() {
        return Err(Error::Domain("bessel series requires x > 0".into()));
    }
    let eps = ExactRatio::pow10(target_exponent);
    let half_x = x / &ExactRatio::from_integer(2);
    let half_x_sq = &half_x * &half_x;
    // t_0 = (x/2)^nu / nu!
    let mut term = ExactRatio::one();
    for k in 1..=nu {
        term = &term * &half_x / &ExactRatio::from_integer(k as i64);
    }
    let mut sum = term.clone();
    let mut k: u32 = 0;
    loop {
        // t_{k+1} = t_k (x/2)^2 / ((k+1)(k+nu+1))
        let denom = ExactRatio::from_integer(((k + 1) as i64) * ((k + nu + 1) as i64));
        term = &term * &half_x_sq / &denom;
        let ratio_ok = half_x_sq < &denom * &ExactRatio::new(1.into(), 2.into()).unwrap();
        if ratio_ok && term < &eps / &ExactRatio::from_integer(4) {
            let tail = ExactRatio::from_integer(2) * term.clone();
            return Ok(Enclosure { value: sum, error: tail });
        }
        sum = &sum + &term;
        k += 1;
        if k > 100_000 {
            return Err(Error::Domain("bessel series did not converge".into()));
        }
    }
}

/// 50-digit reference value of pi (OEIS A000796); fixed literal, not
/// computed here.
pub const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

/// Largest certified digit count for results that involve the pi literal.
pub const PI_LIMITED_DIGITS: usize = 45;

/// `I_nu(x)` rendered to `digits` fractional digits.
///
/// Supported orders: integers `nu >= 0` via the series, and the
/// half-integer orders `-1/2, 1/2, -3/2` via their closed forms
/// `I_{+-1/2}(x) = sqrt(2/(pi x)) {cosh, sinh}(x)` and the downward
/// recurrence for `-3/2`. Half-integer results go through the pi literal
/// and are limited to [`PI_LIMITED_DIGITS`].
pub fn bessel_i(order_num: i64, order_den: i64, x: &ExactRatio, digits: usize) -> Result<CertifiedDecimal> {
    if order_den == 0 {
        return Err(Error::ZeroDenominator);
    }
    if x.is_negative() || x.is_zero() {
        return Err(Error::Domain("bessel_i requires x > 0".into()));
    }
    let target = -(digits as i64) - 6;
    if order_num % order_den == 0 {
        let nu = order_num / order_den;
        if nu < 0 {
            return Err(Error::UnsupportedOrder(format!("{order_num}/{order_den}")));
        }
        let enc = bessel_i_integer_series(nu as u32, x, target)?;
        return enc.render(digits);
    }
    // half-integer orders
    let doubled = 2 * order_num / order_den;
    if 2 * order_num % order_den != 0 {
        return Err(Error::UnsupportedOrder(format!("{order_num}/{order_den}")));
    }
    if digits > PI_LIMITED_DIGITS {
        return Err(Error::AchievableDigits {
            constant: format!("I_{order_num}/{order_den}"),
            achievable: PI_LIMITED_DIGITS,
        });
    }
    let (cosh, sinh) = cosh_sinh_series(x, target)?;
    let combo = match doubled {
        1 => sinh,                                               // I_{1/2}
        -1 => cosh,                                              // I_{-1/2}
        -3 => {
            // I_{-3/2}(x) = I_{1/2}(x) - I_{-1/2}(x)/x
            let scaled = Enclosure { value: &cosh.value / x, error: &cosh.error / x };
            Enclosure { value: &sinh.value - &scaled.value, error: &sinh.error + &scaled.error }
        }
        _ => return Err(Error::UnsupportedOrder(format!("{order_num}/{order_den}"))),
    };
    // sqrt(2/(pi x)) via the pi literal
    let pi = crate::exactnum::from_decimal(PI_50)?;
    let pi_err = ExactRatio::pow10(-50);
    let base_lo = ExactRatio::from_integer(2) / &((&pi + &pi_err) * x.clone());
    let base_hi = ExactRatio::from_integer(2) / &((&pi - &pi_err) * x.clone());
    let rt_lo = sqrt_ratio(&base_lo, target)?;
    let rt_hi = sqrt_ratio(&base_hi, target)?;
    let r1 = &rt_lo.value - &rt_lo.error;
    let r2 = &rt_hi.value + &rt_hi.error;
    let (clo, chi) = combo.interval();
    // four-corner interval product
    let corners = [&r1 * &clo, &r1 * &chi, &r2 * &clo, &r2 * &chi];
    let lo = corners.iter().min().unwrap().clone();
    let hi = corners.iter().max().unwrap().clone();
    Ok(render_interval(&lo, &hi, digits)?.0)
}

/// Value of the arithmetic-progression continued fraction
/// `[A; A+D, A+2D, ...] = I_{A/D-1}(2/D) / I_{A/D}(2/D)`.
///
/// Supported: `A/D` a positive integer (series route) or `A/D = 1/2`
/// (where the prefactors cancel and the value is `coth(2... /x)`
/// pi-free). Other orders are a domain error.
pub fn ap_cf_value(a: &ExactRatio, d: &ExactRatio, digits: usize) -> Result<CertifiedDecimal> {
    if a.is_zero() || a.is_negative() || d.is_zero() || d.is_negative() {
        return Err(Error::Domain("ap_cf_value requires A > 0 and D > 0".into()));
    }
    let nu = a / d;
    let x = ExactRatio::from_integer(2) / d.clone();
    let target = -(digits as i64) - 8;
    let (num, den) = if nu.denominator().is_one() {
        // integer order: I_{nu-1}(x) / I_nu(x)
        let nu_int: i64 = nu
            .numerator()
            .try_into()
            .map_err(|_| Error::UnsupportedOrder(nu.to_string()))?;
        if nu_int < 1 {
            return Err(Error::UnsupportedOrder(nu.to_string()));
        }
        let num = bessel_i_integer_series((nu_int - 1) as u32, &x, target)?;
        let den = bessel_i_integer_series(nu_int as u32, &x, target)?;
        (num, den)
    } else if nu == ExactRatio::new(1.into(), 2.into()).unwrap() {
        // I_{-1/2}(x)/I_{1/2}(x) = cosh(x)/sinh(x); sqrt(2/(pi x)) cancels
        let (cosh, sinh) = cosh_sinh_series(&x, target)?;
        (cosh, sinh)
    } else {
        return Err(Error::UnsupportedOrder(nu.to_string()));
    };
    // enclose the quotient
    let (nlo, nhi) = num.interval();
    let (dlo, dhi) = den.interval();
    if !dlo.is_negative() && !dlo.is_zero() {
        let lo = &nlo / &dhi;
        let hi = &nhi / &dlo;
        Ok(render_interval(&lo, &hi, digits)?.0)
    } else {
        Err(Error::Domain("denominator series enclosure includes zero".into()))
    }
}

/// The Champernowne constant truncated to `digits` fractional digits:
/// the base-10 numerals of 1, 2, 3, ... concatenated after "0.".
pub fn champernowne(digits: usize) -> Result<CertifiedDecimal> {
    if digits == 0 {
        return Err(Error::Domain("champernowne requires digits >= 1".into()));
    }
    let mut s = String::with_capacity(digits + 16);
    s.push_str("0.");
    let mut k: u64 = 1;
    while s.len() < digits + 2 {
        s.push_str(&k.to_string());
        k += 1;
    }
    s.truncate(digits + 2);
    CertifiedDecimal::new(s, ErrorBound::Pow10(-(digits as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::{evaluate, ContinuedFraction};
    use crate::exactnum::from_decimal;

    #[test]
    fn champernowne_digit_strings() {
        assert_eq!(champernowne(10).unwrap().digits(), "0.1234567891");
        assert_eq!(champernowne(15).unwrap().digits(), "0.123456789101112");
        assert_eq!(champernowne(1).unwrap().digits(), "0.1");
        // prefix printed in the source material
        assert!(champernowne(53)
            .unwrap()
            .digits()
            .starts_with("0.12345678910111213141516171819202122232425262728293031"));
    }

    #[test]
    fn bessel_values_match_independent_series() {
        // derived by direct series summation with a tail bound (30 terms
        // suffice); reference digits frozen from that oracle
        let two = ExactRatio::from_integer(2);
        let i0 = bessel_i(0, 1, &two, 16).unwrap();
        assert!(i0.digits().starts_with("2.279585302336067"));
        let i1 = bessel_i(1, 1, &two, 16).unwrap();
        assert!(i1.digits().starts_with("1.590636854637329"));
    }

    #[test]
    fn bessel_ratio_matches_printed_value() {
        // I1(2)/I0(2) = 0.697774657964...
        let one = ExactRatio::one();
        let s = ap_cf_value(&one, &one, 30).unwrap();
        // [1; 2, 3, ...] = I0(2)/I1(2); reciprocal is the printed s
        let v = s.value();
        let recip = v.recip().unwrap();
        let rendered = recip.to_decimal(12);
        assert_eq!(rendered.digits(), "0.697774657964");
    }

    #[test]
    fn ap_cf_agrees_with_direct_evaluation() {
        // [1; 2, 3, ..., 400] vs the Bessel ratio
        let terms: Vec<u64> = (2..=400).collect();
        let cf = ContinuedFraction::from_u64_terms(1, &terms);
        let eval = evaluate(&cf, 120).unwrap();
        let bessel = ap_cf_value(&ExactRatio::one(), &ExactRatio::one(), 120).unwrap();
        let diff = (&eval.convergent - &bessel.value()).abs();
        assert!(diff < ExactRatio::pow10(-100), "difference too large");
    }

    #[test]
    fn odd_progression_is_tanh_reciprocal() {
        let half_order = ap_cf_value(&ExactRatio::one(), &ExactRatio::from_integer(2), 30).unwrap();
        // [1; 3, 5, ...] = coth(1); tanh(1) printed in the source
        let coth = half_order.value();
        let tanh = coth.recip().unwrap();
        assert!(tanh.to_decimal(21).digits().starts_with("0.761594155955764888119"));
    }

    #[test]
    fn half_integer_bessel_closed_forms() {
        let one = ExactRatio::one();
        // I_{-1/2}(1) = sqrt(2/pi) cosh(1) = 1.2313...
        let m_half = bessel_i(-1, 2, &one, 20).unwrap();
        let v = from_decimal(m_half.digits()).unwrap();
        // independent check: sqrt(2/pi)*cosh(1) with f64
        let expect = (2.0 / std::f64::consts::PI).sqrt() * 1f64.cosh();
        assert!((v.to_f64() - expect).abs() < 1e-12);
        // paper identity: 1 + I_{-3/2}(1)/I_{-1/2}(1) = tanh(1)
        let m32 = from_decimal(bessel_i(-3, 2, &one, 30).unwrap().digits()).unwrap();
        let m12 = from_decimal(bessel_i(-1, 2, &one, 30).unwrap().digits()).unwrap();
        let lhs = ExactRatio::one() + (&m32 / &m12);
        assert!((lhs.to_f64() - 1f64.tanh()).abs() < 1e-12);
    }

    #[test]
    fn unsupported_orders_error() {
        let one = ExactRatio::one();
        assert!(bessel_i(1, 3, &one, 10).is_err());
        assert!(ap_cf_value(&ExactRatio::new(2.into(), 3.into()).unwrap(), &one, 10).is_err());
    }

    #[test]
    fn sqrt_enclosure_contains_truth() {
        let two = ExactRatio::from_integer(2);
        let enc = sqrt_ratio(&two, -40).unwrap();
        let (lo, hi) = enc.interval();
        // 1.41421356237309504880168872420969807856967187537694...
        let reference = from_decimal("1.4142135623730950488016887242096980785696718753769").unwrap();
        assert!(lo <= reference && reference <= hi);
    }

    #[test]
    fn exp_series_sanity() {
        let e2 = exp_series(&ExactRatio::from_integer(2), -60).unwrap();
        // e^2 = 7.38905609893065022723...
        let reference = from_decimal("7.3890560989306502272").unwrap();
        let diff = (&e2.value - &reference).abs();
        assert!(diff < ExactRatio::pow10(-18));
        assert!(e2.error < ExactRatio::pow10(-59));
    }
}
