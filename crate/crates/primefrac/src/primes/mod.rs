//! The seven prime families as ordered partial-quotient streams, plus
//! counting functions, Chebyshev's theta and primorials.

pub mod gaps;
pub mod sieve;
pub mod testing;

pub use gaps::{first_gap_occurrence, gap_pairs, GapRecord};
pub use sieve::{sieve_primes, sieve_primes_with_segment, PrimeIter, SieveSegment};
pub use testing::{is_prime_u64, is_probable_prime, lucas_lehmer};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Miller-Rabin rounds used when generating primorial-prime streams.
pub const FAMILY_MR_ROUNDS: u32 = 32;

/// Resource guard on stream generation.
const MAX_STREAM_QUOTIENTS: usize = 40_000_000;

/// One of the prime families, together with its search bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeFamily {
    /// Ascending primes `<= limit`.
    AllPrimes { limit: u64 },
    /// Twin pairs `(p, p+2)` with `p + 2 <= limit`; pair members are
    /// emitted in order, so a prime shared by two pairs appears twice
    /// (the Brun convention: 5 is counted two times).
    Twin { limit: u64 },
    /// Consecutive-prime pairs at gap `d`, same emission rule as `Twin`.
    DTwin { d: u64, limit: u64 },
    /// Primes of the form `m^2 + 1`, each once, ascending.
    QuadM2P1 { limit: u64 },
    /// Primes `m^2 + n^4` over the rectangle `1 <= m <= m_max`,
    /// `1 <= n <= n_max`, ascending, one emission per representation.
    FriedlanderIwaniec { m_max: u64, n_max: u64 },
    /// Mersenne primes `2^p - 1` for prime `p <= max_exponent`, verified by
    /// Lucas-Lehmer.
    Mersenne { max_exponent: u64 },
    /// Primorial primes `r# + 1` for primes `r <= limit`.
    PrimorialPlus { limit: u64 },
    /// Primorial primes `r# - 1` for primes `r <= limit`.
    PrimorialMinus { limit: u64 },
}

impl PrimeFamily {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            PrimeFamily::AllPrimes { limit }
            | PrimeFamily::Twin { limit }
            | PrimeFamily::QuadM2P1 { limit }
            | PrimeFamily::PrimorialPlus { limit }
            | PrimeFamily::PrimorialMinus { limit } => *limit > 0,
            PrimeFamily::DTwin { d, limit } => *limit > 0 && *d >= 2 && *d % 2 == 0,
            PrimeFamily::FriedlanderIwaniec { m_max, n_max } => *m_max > 0 && *n_max > 0,
            PrimeFamily::Mersenne { max_exponent } => *max_exponent > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamily(format!("{self:?}")))
        }
    }

    /// Stable identifier used by the CLI and cache files.
    pub fn slug(&self) -> &'static str {
        match self {
            PrimeFamily::AllPrimes { .. } => "all-primes",
            PrimeFamily::Twin { .. } => "twin",
            PrimeFamily::DTwin { .. } => "d-twin",
            PrimeFamily::QuadM2P1 { .. } => "quad-m2p1",
            PrimeFamily::FriedlanderIwaniec { .. } => "friedlander-iwaniec",
            PrimeFamily::Mersenne { .. } => "mersenne",
            PrimeFamily::PrimorialPlus { .. } => "primorial-plus",
            PrimeFamily::PrimorialMinus { .. } => "primorial-minus",
        }
    }

    /// Bound rendered for reports and cache headers.
    pub fn bound_string(&self) -> String {
        match self {
            PrimeFamily::AllPrimes { limit }
            | PrimeFamily::Twin { limit }
            | PrimeFamily::QuadM2P1 { limit }
            | PrimeFamily::PrimorialPlus { limit }
            | PrimeFamily::PrimorialMinus { limit } => limit.to_string(),
            PrimeFamily::DTwin { d, limit } => format!("d={d} limit={limit}"),
            PrimeFamily::FriedlanderIwaniec { m_max, n_max } => {
                format!("m_max={m_max} n_max={n_max}")
            }
            PrimeFamily::Mersenne { max_exponent } => format!("max_exponent={max_exponent}"),
        }
    }
}

/// Ordered partial quotients produced by one family at one bound.
///
/// Deterministic for a fixed family and bound; every quotient is >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientStream {
    pub family: PrimeFamily,
    pub quotients: Vec<BigInt>,
    pub provenance: String,
}

impl QuotientStream {
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }
}

/// Generates the ordered quotient stream for `family`.
pub fn family_quotients(family: &PrimeFamily) -> Result<QuotientStream> {
    family.validate()?;
    let quotients: Vec<BigInt> = match family {
        PrimeFamily::AllPrimes { limit } => {
            sieve_primes(*limit).into_iter().map(BigInt::from).collect()
        }
        PrimeFamily::Twin { limit } => dtwin_quotients(2, *limit)?,
        PrimeFamily::DTwin { d, limit } => dtwin_quotients(*d, *limit)?,
        PrimeFamily::QuadM2P1 { limit } => quad_primes(*limit).into_iter().map(BigInt::from).collect(),
        PrimeFamily::FriedlanderIwaniec { m_max, n_max } => {
            fi_representations(*m_max, *n_max)?.into_iter().map(BigInt::from).collect()
        }
        PrimeFamily::Mersenne { max_exponent } => {
            let mut out = Vec::new();
            for p in sieve_primes(*max_exponent) {
                if lucas_lehmer(p)? {
                    out.push((BigInt::one() << p) - 1);
                }
            }
            out
        }
        PrimeFamily::PrimorialPlus { limit } => primorial_stream(*limit, 1),
        PrimeFamily::PrimorialMinus { limit } => primorial_stream(*limit, -1),
    };
    let provenance = format!("{} quotients from family {} at bound {}", quotients.len(), family.slug(), family.bound_string());
    Ok(QuotientStream { family: family.clone(), quotients, provenance })
}

fn dtwin_quotients(d: u64, limit: u64) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for (p, q) in gap_pairs(d, limit) {
        out.push(BigInt::from(p));
        out.push(BigInt::from(q));
        if out.len() > MAX_STREAM_QUOTIENTS {
            return Err(Error::ResourceLimit { family: format!("d-twin d={d}"), completed: out.len() });
        }
    }
    Ok(out)
}

fn quad_primes(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for m in 1u64.. {
        let v = match m.checked_mul(m).and_then(|mm| mm.checked_add(1)) {
            Some(v) if v <= limit => v,
            _ => break,
        };
        if is_prime_u64(v) {
            out.push(v);
        }
    }
    out
}

fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |rr| rr > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|rr| rr <= n) {
        r += 1;
    }
    r
}

fn fi_representations(m_max: u64, n_max: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for n in 1..=n_max {
            let v = m
                .checked_mul(m)
                .and_then(|mm| n.checked_pow(4).and_then(|n4| mm.checked_add(n4)))
                .ok_or_else(|| Error::InvalidFamily("friedlander-iwaniec rectangle overflows u64".into()))?;
            if is_prime_u64(v) {
                out.push(v);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn primorial_stream(limit: u64, offset: i64) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut product = BigInt::one();
    for r in sieve_primes(limit) {
        product *= r;
        let candidate = &product + offset;
        if is_probable_prime(&candidate, FAMILY_MR_ROUNDS) {
            out.push(candidate);
        }
    }
    out
}

/// Counting result for [`count_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyCount {
    /// Number of primes (AllPrimes, QuadM2P1, Mersenne, primorials).
    Primes(u64),
    /// Pair count plus distinct-prime count (Twin / DTwin).
    Pairs { pairs: u64, distinct: u64 },
    /// Friedlander-Iwaniec: representations `(m, n)` and distinct primes.
    /// The published count of this family matches `representations`.
    Representations { representations: u64, distinct: u64 },
}

/// Counts family members with value at most `x` (pairs count when both
/// members are at most `x`). For Friedlander-Iwaniec this is the
/// value-ceiling mode: the whole region `m^2 + n^4 <= x` is enumerated.
pub fn count_family(family: &PrimeFamily, x: u64) -> Result<FamilyCount> {
    family.validate()?;
    Ok(match family {
        PrimeFamily::AllPrimes { .. } => FamilyCount::Primes(PrimeIter::new(x).count() as u64),
        PrimeFamily::Twin { .. } => pair_count(2, x),
        PrimeFamily::DTwin { d, .. } => pair_count(*d, x),
        PrimeFamily::QuadM2P1 { .. } => FamilyCount::Primes(quad_primes(x).len() as u64),
        PrimeFamily::FriedlanderIwaniec { .. } => {
            let mut reps = 0u64;
            let mut values = Vec::new();
            for n in 1u64.. {
                let n4 = match n.checked_pow(4) {
                    Some(n4) if n4 < x => n4,
                    _ => break,
                };
                for m in 1..=isqrt_u64(x - n4) {
                    let v = m * m + n4;
                    if is_prime_u64(v) {
                        reps += 1;
                        values.push(v);
                    }
                }
            }
            values.sort_unstable();
            values.dedup();
            FamilyCount::Representations { representations: reps, distinct: values.len() as u64 }
        }
        PrimeFamily::Mersenne { max_exponent } => {
            let mut count = 0u64;
            for p in sieve_primes(*max_exponent) {
                if lucas_lehmer(p)? && (BigInt::one() << p) - 1 <= BigInt::from(x) {
                    count += 1;
                }
            }
            FamilyCount::Primes(count)
        }
        PrimeFamily::PrimorialPlus { limit } => FamilyCount::Primes(
            primorial_stream(*limit, 1).iter().filter(|v| **v <= BigInt::from(x)).count() as u64,
        ),
        PrimeFamily::PrimorialMinus { limit } => FamilyCount::Primes(
            primorial_stream(*limit, -1).iter().filter(|v| **v <= BigInt::from(x)).count() as u64,
        ),
    })
}

fn pair_count(d: u64, x: u64) -> FamilyCount {
    let mut pairs = 0u64;
    let mut members = Vec::new();
    for (p, q) in gap_pairs(d, x) {
        pairs += 1;
        members.push(p);
        members.push(q);
    }
    members.sort_unstable();
    members.dedup();
    FamilyCount::Pairs { pairs, distinct: members.len() as u64 }
}

/// Chebyshev theta: the sum of natural logs of primes `<= x`, by
/// compensated (Kahan) summation.
pub fn chebyshev_theta(x: u64) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for p in PrimeIter::new(x) {
        let term = (p as f64).ln() - comp;
        let total = sum + term;
        comp = (total - sum) - term;
        sum = total;
    }
    sum
}

/// The primorial `p# = 2 * 3 * 5 * ... * p`. Errors when `p` is composite.
pub fn primorial(p: u64) -> Result<BigInt> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("primorial requires a prime argument, got {p}")));
    }
    let mut product = BigInt::one();
    for q in sieve_primes(p) {
        product *= q;
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn smalls(stream: &QuotientStream) -> Vec<u64> {
        stream.quotients.iter().map(|q| q.to_u64().unwrap()).collect()
    }

    #[test]
    fn twin_stream_matches_paper_listing() {
        let s = family_quotients(&PrimeFamily::Twin { limit: 20 }).unwrap();
        assert_eq!(smalls(&s), vec![3, 5, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn d6_stream_doubles_shared_primes() {
        let s = family_quotients(&PrimeFamily::DTwin { d: 6, limit: 100 }).unwrap();
        assert_eq!(smalls(&s)[..10], [23, 29, 31, 37, 47, 53, 53, 59, 61, 67]);
        let s = family_quotients(&PrimeFamily::DTwin { d: 6, limit: 200 }).unwrap();
        // 167, 173, 179 is a chain of two gap-6 pairs, so 173 appears twice
        assert_eq!(
            smalls(&s),
            vec![23, 29, 31, 37, 47, 53, 53, 59, 61, 67, 73, 79, 83, 89, 131, 137, 151, 157, 157, 163, 167, 173, 173, 179]
        );
    }

    #[test]
    fn twin_equals_dtwin_2() {
        for limit in [20u64, 100, 1000, 10_000] {
            let a = family_quotients(&PrimeFamily::Twin { limit }).unwrap();
            let b = family_quotients(&PrimeFamily::DTwin { d: 2, limit }).unwrap();
            assert_eq!(a.quotients, b.quotients);
        }
    }

    #[test]
    fn twin_stream_shape() {
        let s = family_quotients(&PrimeFamily::Twin { limit: 10_000 }).unwrap();
        assert_eq!(s.len() % 2, 0);
        // removing the duplication rule leaves strictly increasing primes
        let mut dedup = smalls(&s);
        dedup.dedup();
        assert!(dedup.windows(2).all(|w| w[0] < w[1]));
        assert!(dedup.iter().all(|&p| is_prime_u64(p)));
    }

    #[test]
    fn quad_stream_matches_paper_set() {
        let s = family_quotients(&PrimeFamily::QuadM2P1 { limit: 1700 }).unwrap();
        assert_eq!(smalls(&s), vec![2, 5, 17, 37, 101, 197, 257, 401, 577, 677, 1297, 1601]);
    }

    #[test]
    fn fi_stream_prefix_and_multiplicity() {
        let s = family_quotients(&PrimeFamily::FriedlanderIwaniec { m_max: 10, n_max: 3 }).unwrap();
        assert_eq!(smalls(&s)[..8], [2, 5, 17, 17, 37, 41, 97, 97]);

        let s = family_quotients(&PrimeFamily::FriedlanderIwaniec { m_max: 100, n_max: 10 }).unwrap();
        let values = smalls(&s);
        assert_eq!(*values.last().unwrap(), 19_801); // 99^2 + 10^4
        for &q in &values {
            assert!(is_prime_u64(q));
            let reps = (1..=100u64)
                .flat_map(|m| (1..=10u64).map(move |n| m * m + n * n * n * n))
                .filter(|&v| v == q)
                .count();
            let multiplicity = values.iter().filter(|&&v| v == q).count();
            assert_eq!(reps, multiplicity, "q = {q}");
        }
    }

    #[test]
    fn mersenne_stream_up_to_exponent_31() {
        let s = family_quotients(&PrimeFamily::Mersenne { max_exponent: 31 }).unwrap();
        assert_eq!(smalls(&s), vec![3, 7, 31, 127, 8191, 131071, 524287, 2147483647]);
    }

    #[test]
    fn primorial_streams_desk_prefixes() {
        let s = family_quotients(&PrimeFamily::PrimorialMinus { limit: 13 }).unwrap();
        assert_eq!(smalls(&s), vec![5, 29, 2309, 30029]);
        let s = family_quotients(&PrimeFamily::PrimorialPlus { limit: 11 }).unwrap();
        assert_eq!(smalls(&s), vec![3, 7, 31, 211, 2311]);
    }

    #[test]
    fn twin_counts() {
        match count_family(&PrimeFamily::Twin { limit: 10_000 }, 10_000).unwrap() {
            FamilyCount::Pairs { pairs, distinct } => {
                assert_eq!(pairs, 205);
                assert_eq!(distinct, 409);
            }
            other => panic!("unexpected {other:?}"),
        }
        match count_family(&PrimeFamily::Twin { limit: 100 }, 100).unwrap() {
            // derived by enumerating (3,5),(5,7),(11,13),(17,19),(29,31),(41,43),(59,61),(71,73)
            FamilyCount::Pairs { pairs, .. } => assert_eq!(pairs, 8),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pi_at_small_scales() {
        assert_eq!(count_family(&PrimeFamily::AllPrimes { limit: 100 }, 100).unwrap(), FamilyCount::Primes(25));
        assert_eq!(count_family(&PrimeFamily::AllPrimes { limit: 10_000 }, 10_000).unwrap(), FamilyCount::Primes(1229));
    }

    #[test]
    fn theta_examples() {
        assert!((chebyshev_theta(2) - 2f64.ln()).abs() < 1e-12);
        // derived: ln(2*3*5*7) = ln 210
        assert!((chebyshev_theta(10) - 210f64.ln()).abs() < 1e-12);
        let t = chebyshev_theta(1_000_000);
        assert!((t - 1e6).abs() / 1e6 < 0.003, "theta(1e6) = {t}");
    }

    #[test]
    fn primorial_examples() {
        assert_eq!(primorial(2).unwrap(), BigInt::from(2));
        assert_eq!(primorial(7).unwrap(), BigInt::from(210));
        let p13 = primorial(13).unwrap();
        assert_eq!(p13, BigInt::from(30030));
        assert!(is_probable_prime(&(&p13 - 1), 16));
        assert!(!is_probable_prime(&(&p13 + 1), 16));
        assert!(primorial(8).is_err());
    }

    #[test]
    fn primorial_matches_theta() {
        for p in [97u64, 541, 1021] {
            let logp = crate::exactnum::big_ln(&primorial(p).unwrap()).unwrap().value();
            let theta = chebyshev_theta(p);
            assert!((logp - theta).abs() < 1e-9 * theta.max(1.0));
        }
    }

    #[test]
    fn invalid_families_rejected() {
        assert!(family_quotients(&PrimeFamily::DTwin { d: 3, limit: 100 }).is_err());
        assert!(family_quotients(&PrimeFamily::DTwin { d: 0, limit: 100 }).is_err());
        assert!(count_family(&PrimeFamily::AllPrimes { limit: 0 }, 10).is_err());
    }

    #[test]
    fn product_exceeds_n_to_the_n_from_13() {
        // exact check at the tight spots, compensated logs across the range
        let primes = sieve_primes(104_729 + 1); // first 10^4 primes
        assert_eq!(primes.len(), 10_000);
        let mut product = BigInt::one();
        for (i, &p) in primes.iter().enumerate().take(200) {
            product *= p;
            let n = i as u64 + 1;
            if n >= 13 {
                assert!(product > BigInt::from(n).pow(n as u32), "exact check fails at n = {n}");
            }
        }
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (i, &p) in primes.iter().enumerate() {
            let term = (p as f64).ln() - comp;
            let total = sum + term;
            comp = (total - sum) - term;
            sum = total;
            let n = (i + 1) as f64;
            if i + 1 >= 13 {
                assert!(sum > n * n.ln() + 1e-4 || i + 1 == 13, "log margin at n = {}", i + 1);
                if i + 1 == 13 {
                    assert!(sum > n * n.ln());
                }
            }
        }
        // spot exact checks higher up
        let mut product = BigInt::one();
        for (i, &p) in primes.iter().enumerate() {
            product *= p;
            let n = i as u64 + 1;
            if n == 500 || n == 2000 || n == 10_000 {
                assert!(product > BigInt::from(n).pow(n as u32), "exact check fails at n = {n}");
            }
        }
    }
}
