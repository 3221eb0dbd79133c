//! Segmented sieve of Eratosthenes.
//!
//! Output is segmentation-invariant: any segment size produces the same
//! prime list as a monolithic sieve.

/// Default segment size in odd-number entries.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 20;

/// One sieved window `[start, end]` with an odd-number primality bitmap.
#[derive(Debug, Clone)]
pub struct SieveSegment {
    start: u64,
    end: u64,
    // bit i covers the odd number `first_odd + 2*i`; set = composite
    first_odd: u64,
    composite: Vec<u64>,
}

impl SieveSegment {
    /// Sieves `[start, end]` given the odd base primes `<= sqrt(end)`.
    fn new(start: u64, end: u64, odd_base_primes: &[u64]) -> Self {
        let first_odd = if start <= 3 { 3 } else { start | 1 };
        let n_odds = if end < first_odd { 0 } else { ((end - first_odd) / 2 + 1) as usize };
        let mut composite = vec![0u64; n_odds.div_ceil(64)];
        for &p in odd_base_primes {
            if p * p > end {
                break;
            }
            let mut m = p * p;
            if m < first_odd {
                // first odd multiple of p at or above first_odd
                let mut k = (first_odd + p - 1) / p;
                if k % 2 == 0 {
                    k += 1;
                }
                m = p * k;
            }
            while m <= end {
                let idx = ((m - first_odd) / 2) as usize;
                composite[idx / 64] |= 1 << (idx % 64);
                m += 2 * p;
            }
        }
        SieveSegment { start, end, first_odd, composite }
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> u64 {
        self.end
    }

    /// Primality of `n` within this segment's range.
    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(self.start <= n && n <= self.end);
        if n < 2 {
            return false;
        }
        if n == 2 {
            return true;
        }
        if n % 2 == 0 {
            return false;
        }
        let idx = ((n - self.first_odd) / 2) as usize;
        self.composite[idx / 64] & (1 << (idx % 64)) == 0
    }

    fn push_primes(&self, out: &mut Vec<u64>) {
        if self.start <= 2 && self.end >= 2 {
            out.push(2);
        }
        let mut n = self.first_odd;
        let mut idx = 0usize;
        while n <= self.end {
            if self.composite[idx / 64] & (1 << (idx % 64)) == 0 {
                out.push(n);
            }
            n += 2;
            idx += 1;
        }
    }
}

fn simple_odd_sieve(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n_odds = ((limit - 3) / 2 + 1) as usize;
    let mut composite = vec![false; n_odds];
    let mut i = 0usize;
    loop {
        let p = 2 * i as u64 + 3;
        if p * p > limit {
            break;
        }
        if !composite[i] {
            let mut m = ((p * p) - 3) / 2;
            while (m as usize) < n_odds {
                composite[m as usize] = true;
                m += p;
            }
        }
        i += 1;
    }
    (0..n_odds).filter(|&i| !composite[i]).map(|i| 2 * i as u64 + 3).collect()
}

/// All primes `<= limit`, ascending. `limit < 2` yields an empty list.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    sieve_primes_with_segment(limit, DEFAULT_SEGMENT_SIZE)
}

/// Same as [`sieve_primes`] with an explicit segment size (in odd entries).
pub fn sieve_primes_with_segment(limit: u64, segment_odds: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for seg in segments(limit, segment_odds) {
        seg.push_primes(&mut out);
    }
    out
}

/// Iterator over the sieve segments covering `[0, limit]`.
pub fn segments(limit: u64, segment_odds: usize) -> impl Iterator<Item = SieveSegment> {
    let root = (limit as f64).sqrt() as u64 + 2;
    let base = simple_odd_sieve(root.min(limit));
    let span = 2 * segment_odds as u64;
    let mut start = 0u64;
    std::iter::from_fn(move || {
        if start > limit {
            return None;
        }
        let end = limit.min(start + span - 1);
        let seg = SieveSegment::new(start, end, &base);
        start = end + 1;
        Some(seg)
    })
}

/// Lazy ascending prime stream up to `limit`.
pub struct PrimeIter {
    buffer: std::vec::IntoIter<u64>,
    segs: Box<dyn Iterator<Item = SieveSegment>>,
}

impl PrimeIter {
    pub fn new(limit: u64) -> Self {
        PrimeIter { buffer: Vec::new().into_iter(), segs: Box::new(segments(limit, DEFAULT_SEGMENT_SIZE)) }
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(p) = self.buffer.next() {
                return Some(p);
            }
            let seg = self.segs.next()?;
            let mut v = Vec::new();
            seg.push_primes(&mut v);
            self.buffer = v.into_iter();
        }
    }
}
