//! Doc-test bridge for the book.
//!
//! mdBook cannot run its code blocks against this crate, so each chapter
//! is included here as a doc comment; `cargo test --doc` then compiles and
//! runs every Rust snippet in the book, keeping the two in sync.

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/prime-families.md")]
pub mod prime_families {}

#[doc = include_str!("../../../book/src/continued-fractions.md")]
pub mod continued_fractions {}

#[doc = include_str!("../../../book/src/diagnostics.md")]
pub mod diagnostics {}
