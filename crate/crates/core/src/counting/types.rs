//! Cycle types and the per-type permutation count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factorial;
use super::partitions::partitions_at_most;
use crate::error::{domain, Error, Result};
use crate::permutation::CycleType;
use crate::ExactCount;

/// Number of permutations of type `a`: `n! / (∏ i^{a_i} · ∏ a_i!)`.
///
/// The quotient is formed as an exact rational and then checked to be an
/// integer.
pub fn count_of_type(a: &CycleType) -> Result<ExactCount> {
    let n = a.n();
    let weighted_sum: usize = a
        .counts()
        .iter()
        .enumerate()
        .map(|(i, c)| (i + 1) * c)
        .sum();
    if weighted_sum != n {
        return Err(Error::InvalidCycleType { n, weighted_sum });
    }
    let mut denominator = BigInt::one();
    for (i, &c) in a.counts().iter().enumerate() {
        if c > 0 {
            denominator *= BigInt::from(i + 1).pow(c as u32);
            denominator *= BigInt::from(factorial(c));
        }
    }
    let ratio = BigRational::new(BigInt::from(factorial(n)), denominator);
    assert!(ratio.is_integer(), "count of type {a} is not an integer");
    Ok(ratio
        .to_integer()
        .to_biguint()
        .expect("count of type is nonnegative"))
}

/// Every partition of `n` into parts `>= min_part`, as a non-increasing list of parts.
fn partitions_with_min_part(n: usize, min_part: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, max_part: usize, min_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (min_part..=max_part.min(remaining)).rev() {
            acc.push(part);
            go(remaining - part, part, min_part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out
}

fn to_cycle_type(n: usize, parts: &[usize]) -> CycleType {
    let mut counts = vec![0; n];
    for &p in parts {
        counts[p - 1] += 1;
    }
    CycleType::from_counts_unchecked(counts)
}

/// All of `T_n`, sorted lexicographically on the count vector.
pub fn enumerate_cycle_types(n: usize) -> Vec<CycleType> {
    let mut types: Vec<_> = partitions_with_min_part(n, 1)
        .iter()
        .map(|parts| to_cycle_type(n, parts))
        .collect();
    types.sort();
    types
}

/// Cycle types with no fixed points and at least one 2-cycle, sorted
/// lexicographically on the count vector.
pub fn enumerate_pair_types(n: usize) -> Vec<CycleType> {
    let mut types: Vec<_> = partitions_with_min_part(n, 2)
        .iter()
        .filter(|parts| parts.contains(&2))
        .map(|parts| to_cycle_type(n, parts))
        .collect();
    types.sort();
    types
}

/// How the number of summands in the type sum for `|P_n|` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeCountVariant {
    /// `Σ_{k=2}^{⌊n/2⌋} p_{k−1}(n−2k) + 1`, evaluated as printed.
    /// Exceeds the true count by one for every `n >= 3`.
    Paper,
    /// Length of [`enumerate_pair_types`].
    Enumerated,
}

/// Number of cycle types contributing to `|P_n|`.
pub fn pair_type_count(n: usize, variant: TypeCountVariant) -> Result<ExactCount> {
    if n < 2 {
        return Err(domain("pair_type_count", format!("n = {n} (requires n >= 2)")));
    }
    Ok(match variant {
        TypeCountVariant::Paper => partition_sum(n) + 1u32,
        TypeCountVariant::Enumerated => enumerate_pair_types(n).len().into(),
    })
}

/// `Σ_{k=2}^{⌊n/2⌋} p_{k−1}(n−2k)`: partitions of `n − 2` into `k − 1 >= 1`
/// parts that are all at least 2, shifted down by 2.
pub fn partition_sum(n: usize) -> ExactCount {
    (2..=n / 2)
        .map(|k| partitions_at_most(k - 1, n - 2 * k))
        .fold(ExactCount::zero(), |acc, p| acc + p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(v: &[usize]) -> CycleType {
        CycleType::new(v.to_vec()).unwrap()
    }

    #[test]
    fn count_of_type_examples() {
        assert_eq!(count_of_type(&ty(&[0, 2, 1, 0, 0, 0, 0])).unwrap(), 210u32.into());
        assert_eq!(count_of_type(&ty(&[3, 0, 0])).unwrap(), 1u32.into());
        assert_eq!(count_of_type(&ty(&[0, 1])).unwrap(), 1u32.into());
        // an n-cycle: (n−1)!
        assert_eq!(count_of_type(&ty(&[0, 0, 0, 0, 1])).unwrap(), 24u32.into());
    }

    #[test]
    fn pair_type_examples() {
        assert_eq!(enumerate_pair_types(4), vec![ty(&[0, 2, 0, 0])]);
        assert_eq!(
            enumerate_pair_types(7),
            vec![ty(&[0, 1, 0, 0, 1, 0, 0]), ty(&[0, 2, 1, 0, 0, 0, 0])]
        );
        assert!(enumerate_pair_types(3).is_empty());
        assert!(enumerate_pair_types(1).is_empty());
        assert!(enumerate_pair_types(0).is_empty());
    }

    #[test]
    fn type_counts() {
        use TypeCountVariant::*;
        assert_eq!(pair_type_count(2, Enumerated).unwrap(), 1u32.into());
        assert_eq!(pair_type_count(2, Paper).unwrap(), 1u32.into());
        assert_eq!(pair_type_count(7, Enumerated).unwrap(), 2u32.into());
        assert_eq!(pair_type_count(7, Paper).unwrap(), 3u32.into());
        assert!(pair_type_count(1, Enumerated).is_err());
    }

    #[test]
    fn printed_formula_is_one_too_many_from_three_on() {
        for n in 3..=40 {
            let paper = pair_type_count(n, TypeCountVariant::Paper).unwrap();
            let enumerated = pair_type_count(n, TypeCountVariant::Enumerated).unwrap();
            assert_eq!(paper, enumerated + 1u32, "n = {n}");
        }
    }

    #[test]
    fn type_enumeration_counts_partitions() {
        for n in 0..=15 {
            assert_eq!(
                ExactCount::from(enumerate_cycle_types(n).len()),
                partitions_at_most(n, n)
            );
        }
    }

    #[test]
    fn types_are_sorted() {
        let types = enumerate_cycle_types(8);
        assert!(types.windows(2).all(|w| w[0] < w[1]));
    }
}
