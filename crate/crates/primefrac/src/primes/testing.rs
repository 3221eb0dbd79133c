//! Primality testing: deterministic 64-bit Miller-Rabin, Miller-Rabin for
//! big integers, and the Lucas-Lehmer test for Mersenne numbers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::primes::sieve::sieve_primes;

/// Witnesses making Miller-Rabin exact for every n < 3.3e24, which covers
/// all 64-bit inputs (Sorenson & Webster).
const U64_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic and exact for all `n < 2^64` (fixed witness set above).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in U64_WITNESSES.iter() {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin for arbitrary-precision candidates.
///
/// Composite verdicts are certain. Prime verdicts have error probability
/// at most `4^-rounds`. The witness-derivation rule is fixed and documented:
/// the bases are the first `rounds` primes, so the verdict is deterministic
/// for a given input.
///
/// Panics if `rounds < 16` (contract violation).
pub fn is_probable_prime(n: &BigInt, rounds: u32) -> bool {
    assert!(rounds >= 16, "is_probable_prime requires rounds >= 16");
    if n < &BigInt::from(2) {
        return false;
    }
    // enough primes for the witnesses plus cheap trial division
    let small = sieve_primes(8000);
    for &p in small.iter().take(200) {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 2 is odd here");
    let d: BigInt = &n_minus_1 >> s;
    let mut witnesses = small.into_iter();
    'witness: for _ in 0..rounds {
        let a = BigInt::from(witnesses.next().expect("witness supply"));
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest exponent accepted by [`lucas_lehmer`]; the recurrence is
/// quadratic in `p`, so full-scale exponents are out of reach here.
pub const LUCAS_LEHMER_MAX_EXPONENT: u64 = 10_000;

/// Lucas-Lehmer test: `2^p - 1` is prime iff `s_{p-2} == 0` in the
/// recurrence `s_0 = 4`, `s_{k+1} = s_k^2 - 2 (mod 2^p - 1)`.
///
/// `p = 2` is the special case `M_2 = 3`, prime. A composite or even
/// exponent (other than 2) is a domain error.
pub fn lucas_lehmer(p: u64) -> Result<bool> {
    if p == 2 {
        return Ok(true);
    }
    if !is_prime_u64(p) || p % 2 == 0 {
        return Err(Error::Domain(format!("Lucas-Lehmer requires an odd prime exponent, got {p}")));
    }
    if p > LUCAS_LEHMER_MAX_EXPONENT {
        return Err(Error::ResourceLimit { family: format!("mersenne exponent {p}"), completed: 0 });
    }
    let m: BigInt = (BigInt::one() << p) - 1;
    let mut s = BigInt::from(4);
    for _ in 0..p - 2 {
        s = (&s * &s - 2) % &m;
        if s.is_negative() {
            s += &m;
        }
    }
    Ok(s.is_zero())
}
