//! `|F_n|` as the integer nearest to `n!/e`, with the rounding certified by an
//! exact rational bracket around `1/e`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factorial;
use crate::error::{domain, Error, Result};
use crate::ExactCount;

/// Evidence that `⌊n!/e + 1/2⌋` was resolved unambiguously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingCertificate {
    pub n: usize,
    /// Number of terms after which the alternating series was truncated.
    pub terms: usize,
    pub lower: BigRational,
    pub upper: BigRational,
    pub value: ExactCount,
}

/// `S_m = Σ_{k=0}^{m} (−1)^k / k!`.
fn partial_sum(m: usize) -> BigRational {
    // Numerator over m!: Σ (−1)^k m!/k!, built from the falling product.
    let mut numerator = BigInt::zero();
    let mut falling = BigInt::one();
    for k in (0..=m).rev() {
        if k % 2 == 0 {
            numerator += &falling;
        } else {
            numerator -= &falling;
        }
        falling *= k.max(1);
    }
    BigRational::new(numerator, BigInt::from(factorial(m)))
}

/// Consecutive partial sums `S_m`, `S_{m+1}` of the series for `1/e`, ordered
/// so that `lower < 1/e < upper`. The bracket width is `1/(m+1)!`.
pub fn inverse_e_bracket(m: usize) -> (BigRational, BigRational) {
    let a = partial_sum(m);
    let b = partial_sum(m + 1);
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn nearest(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

/// `|F_n|` computed as the integer closest to `n!/e`, for `n >= 2`.
pub fn derangement_count_rounding(n: usize) -> Result<ExactCount> {
    Ok(certify_rounding(n)?.value)
}

/// Like [`derangement_count_rounding`], returning the bracket used.
///
/// The series is truncated at the first `m` with `(m+1)! > 2·n! + 2`; both
/// `n!·lower + 1/2` and `n!·upper + 1/2` must then share the same floor.
pub fn certify_rounding(n: usize) -> Result<RoundingCertificate> {
    if n < 2 {
        return Err(domain(
            "derangement_count_rounding",
            format!("n = {n} (requires n >= 2)"),
        ));
    }
    let n_fact = factorial(n);
    let threshold = &n_fact * 2u32 + 2u32;
    let mut m = 0;
    while factorial(m + 1) <= threshold {
        m += 1;
    }
    let (lower, upper) = inverse_e_bracket(m);
    let scale = BigRational::from_integer(BigInt::from(n_fact));
    let lo = nearest(&(&lower * &scale));
    let hi = nearest(&(&upper * &scale));
    if lo != hi {
        return Err(Error::RoundingUnresolved { n });
    }
    let value = lo.to_biguint().expect("n!/e is positive");
    Ok(RoundingCertificate {
        n,
        terms: m,
        lower,
        upper,
        value,
    })
}
