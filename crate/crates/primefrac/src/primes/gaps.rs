//! Prime gap scanning: consecutive-prime pairs at a fixed gap and first
//! occurrences.

use crate::primes::sieve::PrimeIter;

/// A pair of consecutive primes `(lower, upper)` with `upper - lower = d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapRecord {
    pub d: u64,
    pub lower: u64,
    pub upper: u64,
    pub is_first_occurrence: bool,
}

/// Iterator over consecutive-prime pairs `(p, p + d)` with `p + d <= limit`,
/// ascending by `p`.
pub fn gap_pairs(d: u64, limit: u64) -> impl Iterator<Item = (u64, u64)> {
    let mut primes = PrimeIter::new(limit);
    let mut prev = primes.next();
    std::iter::from_fn(move || {
        for p in primes.by_ref() {
            let q = prev.replace(p);
            if let Some(q) = q {
                if p - q == d {
                    return Some((q, p));
                }
            }
        }
        None
    })
}

/// The smallest consecutive-prime pair with difference exactly `d` below
/// `limit`, or `None` when no such pair exists in range.
pub fn first_gap_occurrence(d: u64, limit: u64) -> Option<GapRecord> {
    gap_pairs(d, limit)
        .next()
        .map(|(lower, upper)| GapRecord { d, lower, upper, is_first_occurrence: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve::sieve_primes;

    #[test]
    fn first_occurrences() {
        assert_eq!(first_gap_occurrence(2, 100).unwrap().lower, 3);
        assert_eq!(first_gap_occurrence(6, 1000).unwrap(), GapRecord {
            d: 6,
            lower: 23,
            upper: 29,
            is_first_occurrence: true
        });
        // derived by scanning consecutive primes below 100
        assert_eq!(first_gap_occurrence(4, 100).unwrap().lower, 7);
        assert_eq!(first_gap_occurrence(540, 1000), None);
    }

    #[test]
    fn no_smaller_pair_below_the_answer() {
        for d in [2u64, 4, 6, 8, 10, 12, 14, 16] {
            let rec = first_gap_occurrence(d, 100_000).unwrap();
            let primes = sieve_primes(rec.upper);
            for w in primes.windows(2) {
                if w[1] - w[0] == d {
                    assert_eq!((w[0], w[1]), (rec.lower, rec.upper), "d = {d}");
                    break;
                }
            }
        }
    }

    #[test]
    fn pairs_are_consecutive_primes() {
        let primes = sieve_primes(10_000);
        for (lo, hi) in gap_pairs(6, 10_000) {
            assert!(primes.binary_search(&lo).is_ok());
            assert!(primes.binary_search(&hi).is_ok());
            // nothing prime strictly between
            let i = primes.binary_search(&lo).unwrap();
            assert_eq!(primes[i + 1], hi);
        }
    }
}
