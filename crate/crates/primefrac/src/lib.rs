//! Continued fractions whose partial quotients are prime numbers.
//!
//! The library builds simple continued fractions from seven prime
//! families (all primes, twins, d-twins, primes m^2+n^4, primes m^2+1,
//! Mersenne primes, primorial primes), evaluates them with exact
//! big-integer convergents to certified decimal precision, and computes
//! the associated diagnostics: Khinchin and Levy profiles, per-convergent
//! irrationality exponents, transcendence-criterion statistics and
//! Hardy-Littlewood predictors.
//!
//! # Quick start
//!
//! ```
//! use num_bigint::BigInt;
//! use primefrac::primes::{family_quotients, PrimeFamily};
//! use primefrac::cfrac::evaluate_stream;
//!
//! // the continued fraction [0; 2, 3, 5, 7, 11, ...] over all primes
//! let stream = family_quotients(&PrimeFamily::AllPrimes { limit: 10_000 }).unwrap();
//! let eval = evaluate_stream(&BigInt::from(0), stream.quotients.iter().cloned(), 30).unwrap();
//! assert!(eval.value.digits().starts_with("0.432332087185902868909253793241"));
//! ```
//!
//! The `primefrac` binary exposes the same functionality as subcommands
//! (`eval`, `table1`, `profile`, `predict`, `expand`, `constants`); see
//! the book under `book/` for a guided tour.

pub mod analysis;
pub mod cache;
pub mod cfrac;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod primes;
pub mod report;

mod book;

pub use error::{Error, Result};
pub use exactnum::{
    big_ln, from_decimal, reduce, to_certified_decimal, ApproxLog, CertifiedDecimal, ErrorBound,
    ExactRatio, WholeNumber,
};
