//! Exact counting and probability for mutual pairs in Secret Santa draws.
//!
//! A Secret Santa draw among `n` people is a derangement of `n` elements.
//! Two people who draw each other form a 2-cycle. This crate counts
//! derangements by their number of 2-cycles with arbitrary-precision
//! integers, turns those counts into the exact law of the pair count, and
//! measures how fast that law approaches Poisson(½).
//!
//! ```
//! use wichtel::counting::{derangement_count_sum, pair_count_recurrence};
//! use wichtel::distribution::prob_at_least;
//!
//! // 7 people: 1854 valid draws, 714 of them with at least one mutual pair.
//! assert_eq!(derangement_count_sum(7), 1854u32.into());
//! assert_eq!(pair_count_recurrence(7), 714u32.into());
//! assert_eq!(prob_at_least(7, 1)?.to_string(), "119/309");
//! # Ok::<(), wichtel::Error>(())
//! ```
//!
//! Modules:
//!
//! * [`permutation`]: explicit permutations and the exhaustive census oracle.
//! * [`counting`]: `n!`, derangements, `|P_n|`, `g≥3(n)`, `|P_n^k|`, partitions.
//! * [`distribution`]: exact pmf, tails, moments, Poisson comparison.
//! * [`sampler`]: seeded rejection sampling of uniform derangements.
//!
//! The guide in `book/` walks through each of these with runnable snippets.

mod cache;
pub mod counting;
pub mod distribution;
mod error;
pub mod permutation;
pub mod sampler;

pub use error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type ExactCount = num_bigint::BigUint;

/// Signed intermediate for alternating sums.
pub type SignedExactCount = num_bigint::BigInt;

/// Exact rational in lowest terms with positive denominator.
pub type ExactRatio = num_rational::BigRational;

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/cycle-types.md")]
    mod cycle_types {}
    #[doc = include_str!("../../../book/src/rounding.md")]
    mod rounding {}
    #[doc = include_str!("../../../book/src/distribution.md")]
    mod distribution {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
