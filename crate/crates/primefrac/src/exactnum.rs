//! Exact arbitrary-precision arithmetic substrate: integers, reduced
//! fractions, certified decimal rendering and approximate logarithms.
//!
//! Everything downstream (convergents, digit strings, diagnostics) is built
//! on these types. Values are immutable and safe to share across threads.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer. Zero carries no sign, equality is
/// value equality, and there is no precision ceiling.
pub type WholeNumber = BigInt;

/// 10^k as a `BigInt`.
pub fn pow10(k: usize) -> BigInt {
    BigInt::from(10u32).pow(k as u32)
}

// ---------------------------------------------------------------------------
// ExactRatio
// ---------------------------------------------------------------------------

/// A fraction in lowest terms with a strictly positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactRatio {
    num: BigInt,
    den: BigInt,
}

/// Builds the reduced fraction `numerator / denominator`.
///
/// Fails with [`Error::ZeroDenominator`] when the denominator is zero.
pub fn reduce(numerator: WholeNumber, denominator: WholeNumber) -> Result<ExactRatio> {
    ExactRatio::new(numerator, denominator)
}

impl ExactRatio {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / g);
        if den.sign() == Sign::Minus {
            num = -num;
            den = -den;
        }
        Ok(ExactRatio { num, den })
    }

    /// Constructs from parts already known to be coprime with `den > 0`.
    /// Convergents produced by the three-term recurrence qualify.
    pub(crate) fn from_coprime(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        debug_assert!(num.gcd(&den).is_one());
        ExactRatio { num, den }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRatio { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// 10^k for possibly negative `k`.
    pub fn pow10(k: i64) -> Self {
        if k >= 0 {
            ExactRatio { num: pow10(k as usize), den: BigInt::one() }
        } else {
            ExactRatio { num: BigInt::one(), den: pow10((-k) as usize) }
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactRatio { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        ExactRatio::new(self.den.clone(), self.num.clone())
    }

    /// Integer part, rounding toward negative infinity.
    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    pub fn to_f64(&self) -> f64 {
        // Exact conversion overflows for the sizes used here; go through
        // the logarithm when the parts are large.
        if self.num.is_zero() {
            return 0.0;
        }
        if self.num.bits() <= 52 && self.den.bits() <= 52 {
            return self.num.to_f64().unwrap() / self.den.to_f64().unwrap();
        }
        let ln = big_ln(&self.num.abs()).unwrap().value() - big_ln(&self.den).unwrap().value();
        let sign = if self.num.is_negative() { -1.0 } else { 1.0 };
        sign * ln.exp()
    }

    /// Truncated decimal rendering; see [`to_certified_decimal`].
    pub fn to_decimal(&self, digits: usize) -> CertifiedDecimal {
        to_certified_decimal(self, digits)
    }

    /// Decimal rendering rounded half away from zero at `digits` fractional
    /// digits. Published reference strings are rounded, not truncated, so
    /// comparisons against them go through this form.
    pub fn to_rounded_string(&self, digits: usize) -> String {
        let scale = pow10(digits);
        let scaled2: BigInt = (&self.num * &scale * BigInt::from(10)) / &self.den; // one guard digit, toward zero
        let mut scaled = scaled2.abs() / 10;
        if scaled2.abs() % 10 >= BigInt::from(5) {
            scaled += 1;
        }
        format_scaled(self.num.is_negative(), &scaled, digits)
    }

    /// Scientific-notation truncation with `sig` significant digits, for
    /// values in (0, 1). Returns e.g. `"4.341324...e-2"`.
    pub fn to_scientific(&self, sig: usize) -> Result<String> {
        if !self.num.is_positive() || self.num >= self.den {
            return Err(Error::Domain("scientific rendering expects a value in (0, 1)".into()));
        }
        let mut k: usize = 1;
        // smallest k with value >= 10^-k
        while &self.num * pow10(k) < self.den {
            k += 1;
        }
        let mantissa = (&self.num * pow10(k + sig - 1)) / &self.den;
        let m = mantissa.to_string();
        debug_assert_eq!(m.len(), sig);
        Ok(format!("{}.{}e-{}", &m[..1], &m[1..], k))
    }
}

fn format_scaled(negative: bool, scaled_abs: &BigInt, digits: usize) -> String {
    let s = scaled_abs.to_string();
    let s = if s.len() <= digits {
        format!("{}0.{}", if negative { "-" } else { "" }, "0".repeat(digits - s.len()) + &s)
    } else {
        let (int_part, frac_part) = s.split_at(s.len() - digits);
        format!("{}{}.{}", if negative { "-" } else { "" }, int_part, frac_part)
    };
    if digits == 0 {
        s.trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive, so cross-multiplication preserves order
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

macro_rules! ratio_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                (&self).$method(&rhs)
            }
        }
        impl $trait<ExactRatio> for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                self.$method(&rhs)
            }
        }
        impl $trait<&ExactRatio> for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                (&self).$method(rhs)
            }
        }
    };
}

ratio_binop!(Add, add, |a, b| ExactRatio::new(
    &a.num * &b.den + &b.num * &a.den,
    &a.den * &b.den
)
.expect("nonzero denominators"));

ratio_binop!(Sub, sub, |a, b| ExactRatio::new(
    &a.num * &b.den - &b.num * &a.den,
    &a.den * &b.den
)
.expect("nonzero denominators"));

ratio_binop!(Mul, mul, |a, b| ExactRatio::new(&a.num * &b.num, &a.den * &b.den)
    .expect("nonzero denominators"));

ratio_binop!(Div, div, |a, b| ExactRatio::new(&a.num * &b.den, &a.den * &b.num)
    .expect("division by zero ratio"));

impl Neg for &ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio { num: -self.num, den: self.den }
    }
}

impl From<i64> for ExactRatio {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

// ---------------------------------------------------------------------------
// CertifiedDecimal
// ---------------------------------------------------------------------------

/// Error bound attached to a rendered decimal: either the rendering is the
/// exact value, or the true value is within `10^exponent` of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorBound {
    Exact,
    Pow10(i64),
}

/// A decimal digit string together with a proven error bound.
///
/// `|true - rendered| <= 10^certified_exponent`; the exponent is always an
/// over-estimate of the error, never an under-estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedDecimal {
    digits: String,
    bound: ErrorBound,
}

impl CertifiedDecimal {
    pub fn new(digits: String, bound: ErrorBound) -> Result<Self> {
        from_decimal(&digits)?; // validate shape
        Ok(CertifiedDecimal { digits, bound })
    }

    pub fn digits(&self) -> &str {
        &self.digits
    }

    pub fn bound(&self) -> ErrorBound {
        self.bound
    }

    /// `None` marks an exact rendering.
    pub fn certified_exponent(&self) -> Option<i64> {
        match self.bound {
            ErrorBound::Exact => None,
            ErrorBound::Pow10(e) => Some(e),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.bound == ErrorBound::Exact
    }

    /// The rendered value as an exact fraction.
    pub fn value(&self) -> ExactRatio {
        from_decimal(&self.digits).expect("digits validated on construction")
    }

    /// Enclosing interval `[value - eps, value + eps]` for the true value.
    pub fn interval(&self) -> (ExactRatio, ExactRatio) {
        let v = self.value();
        match self.bound {
            ErrorBound::Exact => (v.clone(), v),
            ErrorBound::Pow10(e) => {
                let eps = ExactRatio::pow10(e);
                (&v - &eps, &v + &eps)
            }
        }
    }
}

impl fmt::Display for CertifiedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits)
    }
}

/// Renders `r` truncated (toward zero) to `digits` fractional digits.
///
/// Truncation, not rounding, is the library-wide contract; rationals whose
/// expansion terminates within the requested digits report exactness.
pub fn to_certified_decimal(r: &ExactRatio, digits: usize) -> CertifiedDecimal {
    let scale = pow10(digits);
    let scaled_num = r.numerator().abs() * &scale;
    let (q, rem) = scaled_num.div_rem(r.denominator());
    let digits_str = format_scaled(r.is_negative(), &q, digits);
    let bound = if rem.is_zero() { ErrorBound::Exact } else { ErrorBound::Pow10(-(digits as i64)) };
    CertifiedDecimal { digits: digits_str, bound }
}

/// Renders the interval `[lo, hi]` to at most `digits` fractional digits,
/// keeping only digits on which every value in the interval agrees.
///
/// Returns the decimal plus the number of fractional digits achieved.
pub fn render_interval(lo: &ExactRatio, hi: &ExactRatio, digits: usize) -> Result<(CertifiedDecimal, usize)> {
    if lo > hi {
        return Err(Error::Domain("render_interval: lo > hi".into()));
    }
    if lo == hi {
        let d = to_certified_decimal(lo, digits);
        return Ok((d, digits));
    }
    if lo.is_negative() != hi.is_negative() && !lo.is_zero() && !hi.is_zero() {
        return Err(Error::Domain("render_interval: interval straddles zero".into()));
    }
    let mut k = digits;
    loop {
        let scale = pow10(k);
        let fl = (lo.numerator() * &scale).div_floor(lo.denominator());
        let fh = (hi.numerator() * &scale).div_floor(hi.denominator());
        if fl == fh {
            let digits_str = format_scaled(fl.is_negative(), &fl.abs(), k);
            return Ok((
                CertifiedDecimal { digits: digits_str, bound: ErrorBound::Pow10(-(k as i64)) },
                k,
            ));
        }
        if k == 0 {
            return Err(Error::InsufficientPrecision { needed_digits: digits });
        }
        k -= 1;
    }
}

/// Parses a signed decimal numeral (`-12.75`, `0.5`, `42`) into the exact
/// fraction `digits / 10^k`.
pub fn from_decimal(text: &str) -> Result<ExactRatio> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let negative = match bytes.first() {
        Some(b'-') => {
            pos += 1;
            true
        }
        Some(b'+') => {
            pos += 1;
            false
        }
        _ => false,
    };
    let int_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == int_start {
        return Err(Error::Parse { position: pos, message: "expected a digit".into() });
    }
    let mut mantissa = String::from(&text[int_start..pos]);
    let mut frac_len = 0usize;
    if pos < bytes.len() && bytes[pos] == b'.' {
        pos += 1;
        let frac_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == frac_start {
            return Err(Error::Parse { position: pos, message: "expected a digit after '.'".into() });
        }
        frac_len = pos - frac_start;
        mantissa.push_str(&text[frac_start..pos]);
    }
    if pos != bytes.len() {
        return Err(Error::Parse { position: pos, message: format!("unexpected character {:?}", text[pos..].chars().next().unwrap()) });
    }
    let mut num: BigInt = mantissa.parse().expect("digits only");
    if negative {
        num = -num;
    }
    ExactRatio::new(num, pow10(frac_len))
}

// ---------------------------------------------------------------------------
// ApproxLog
// ---------------------------------------------------------------------------

/// Natural logarithm of a positive `WholeNumber`, accurate to a relative
/// error of at most 1e-12. Computed from the bit length and the leading
/// 128 bits, never by converting the whole number to floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxLog(f64);

impl ApproxLog {
    pub fn value(&self) -> f64 {
        self.0
    }

    /// Documented relative error ceiling of [`big_ln`].
    pub const RELATIVE_ERROR: f64 = 1e-12;
}

/// `ln n` for `n >= 1`; `big_ln(1) = 0`, `n = 0` is a domain error.
pub fn big_ln(n: &WholeNumber) -> Result<ApproxLog> {
    if !n.is_positive() {
        return Err(Error::Domain("big_ln requires n >= 1".into()));
    }
    let bits = n.bits();
    if bits <= 128 {
        let v = n.to_u128().expect("fits in 128 bits");
        return Ok(ApproxLog(ln_u128(v)));
    }
    let shift = bits - 128;
    let mant = (n >> shift).to_u128().expect("top 128 bits");
    Ok(ApproxLog(ln_u128(mant) + shift as f64 * std::f64::consts::LN_2))
}

fn ln_u128(v: u128) -> f64 {
    // split so the conversion to f64 stays exact in the leading word
    if v <= (1 << 52) {
        (v as f64).ln()
    } else {
        let bits = 128 - v.leading_zeros() as u64;
        let shift = bits - 52;
        let top = (v >> shift) as f64;
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// `ln` of a positive ratio through [`big_ln`] on both parts.
pub fn ratio_ln(r: &ExactRatio) -> Result<f64> {
    if !r.numerator().is_positive() {
        return Err(Error::Domain("ratio_ln requires a positive value".into()));
    }
    Ok(big_ln(r.numerator())?.value() - big_ln(r.denominator())?.value())
}
