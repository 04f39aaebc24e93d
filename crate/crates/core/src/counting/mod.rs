//! Exact counts of derangements and of derangements containing 2-cycles.
//!
//! Notation used throughout:
//!
//! * `F_n`: derangements of `n` elements.
//! * `P_n`: derangements with at least one 2-cycle.
//! * `P_n^k`: derangements with exactly `k` 2-cycles.
//! * `g≥3(n)`: permutations whose cycles all have length at least 3.
//!
//! `|P_n|` is available by three independent routes (type sum, recursion,
//! and `|F_n| − g≥3(n)`) plus the explicit double-sum formula, and `|F_n|` by
//! three (alternating sum, classical recurrence, certified rounding of `n!/e`).
//!
//! # Thread safety
//!
//! All functions are safe to call concurrently. Factorials, the classical
//! derangement recurrence, `g≥3` and the partition table are memoized in
//! process-wide tables guarded by a mutex; an entry is computed at most once
//! and never evicted.

mod partitions;
mod rounding;
mod types;

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cache::Table;
use crate::error::{domain, Result};
use crate::{ExactCount, SignedExactCount};

pub use partitions::partitions_at_most;
pub use rounding::{certify_rounding, derangement_count_rounding, inverse_e_bracket, RoundingCertificate};
pub use types::{
    count_of_type, enumerate_cycle_types, enumerate_pair_types, pair_type_count, partition_sum,
    TypeCountVariant,
};

static FACTORIALS: Table<BigUint> = Table::new();
static DERANGEMENTS_REC: Table<BigUint> = Table::new();
static DERANGEMENTS_SUM: Mutex<Option<HashMap<usize, BigUint>>> = Mutex::new(None);
// inner[k] = Σ_j (−1)^j k!/((k−2j)! j! 2^j)
static G3_INNER: Table<BigInt> = Table::new();
// scaled[n] = n! Σ_{k≤n} (−1)^k inner[k]/k! = g≥3(n)
static G3_SCALED: Table<BigInt> = Table::new();

/// `n!`
pub fn factorial(n: usize) -> ExactCount {
    FACTORIALS.get(n, |prev| match prev.last() {
        None => BigUint::one(),
        Some(last) => last * prev.len(),
    })
}

fn signed(x: ExactCount) -> SignedExactCount {
    BigInt::from_biguint(Sign::Plus, x)
}

fn unsigned(x: SignedExactCount, what: &str) -> ExactCount {
    assert!(!x.is_negative(), "{what} came out negative: {x}");
    x.into_parts().1
}

/// `|F_n| = Σ_{k=0}^{n} (−1)^k n!/k!`.
pub fn derangement_count_sum(n: usize) -> ExactCount {
    {
        let cache = DERANGEMENTS_SUM.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(hit) = cache.as_ref().and_then(|m| m.get(&n)) {
            return hit.clone();
        }
    }
    // n!/k! built as the falling product n·(n−1)·…·(k+1), from k = n downwards.
    let mut total = SignedExactCount::zero();
    let mut falling = BigInt::one();
    for k in (0..=n).rev() {
        if k % 2 == 0 {
            total += &falling;
        } else {
            total -= &falling;
        }
        falling *= k.max(1);
    }
    let value = unsigned(total, "derangement sum");
    DERANGEMENTS_SUM
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get_or_insert_with(HashMap::new)
        .insert(n, value.clone());
    value
}

/// `D_n = (n−1)(D_{n−1} + D_{n−2})`, `D_0 = 1`, `D_1 = 0`.
pub fn derangement_count_recurrence(n: usize) -> ExactCount {
    DERANGEMENTS_REC.get(n, |prev| match prev.len() {
        0 => BigUint::one(),
        1 => BigUint::zero(),
        m => (m - 1) * (&prev[m - 1] + &prev[m - 2]),
    })
}

fn g3_inner(k: usize) -> BigInt {
    G3_INNER.get(k, |prev| {
        let k = prev.len();
        // term_j = k!/((k−2j)! j! 2^j); term_{j+1} = term_j (k−2j)(k−2j−1) / (2(j+1)).
        let mut term = BigInt::one();
        let mut sum = BigInt::one();
        for j in 0..k / 2 {
            term *= (k - 2 * j) * (k - 2 * j - 1);
            let (q, r) = term.div_rem(&BigInt::from(2 * (j + 1)));
            assert!(r.is_zero(), "inner g≥3 term is not integral at k = {k}, j = {}", j + 1);
            term = q;
            if j % 2 == 0 {
                sum -= &term;
            } else {
                sum += &term;
            }
        }
        sum
    })
}

/// `g≥3(n) = n! Σ_{k=0}^{n} (−1)^k Σ_{j=0}^{⌊k/2⌋} (−1)^j / ((k−2j)! j! 2^j)`,
/// the number of permutations of `n` elements with every cycle of length `>= 3`.
///
/// Evaluated term by term over the common denominator `n!`, so every
/// intermediate value is an integer.
pub fn g_ge3(n: usize) -> ExactCount {
    let scaled = G3_SCALED.get(n, |prev| {
        let m = prev.len();
        let inner = g3_inner(m);
        let signed_inner = if m % 2 == 0 { inner } else { -inner };
        match prev.last() {
            None => signed_inner,
            Some(last) => last * m + signed_inner,
        }
    });
    unsigned(scaled, "g≥3")
}

/// `g≥3(n)` from the uncontracted double sum over `j` even, evaluated in exact
/// rationals with the integrality of the product checked at the end.
pub fn g_ge3_formula(n: usize) -> ExactCount {
    let mut sum = BigRational::zero();
    for k in 0..=n {
        for j in (0..=k).step_by(2) {
            let half = j / 2;
            let denominator = BigInt::from(factorial(k - j))
                * BigInt::from(factorial(half))
                * BigInt::from(2u32).pow(half as u32);
            let sign = if (k - j + half) % 2 == 0 { 1 } else { -1 };
            sum += BigRational::new(BigInt::from(sign), denominator);
        }
    }
    let value = sum * BigRational::from_integer(signed(factorial(n)));
    assert!(value.is_integer(), "g≥3({n}) double sum is not an integer");
    unsigned(value.to_integer(), "g≥3 double sum")
}

/// `|P_n|` as the sum of [`count_of_type`] over [`enumerate_pair_types`].
///
/// Cost grows with the number of integer partitions of `n`.
pub fn pair_count_typesum(n: usize) -> ExactCount {
    enumerate_pair_types(n)
        .iter()
        .map(|a| count_of_type(a).expect("enumerated types are valid"))
        .fold(ExactCount::zero(), |acc, c| acc + c)
}

/// `|P_n|` from the first recursion, classifying by the cycle containing the
/// last element:
/// `|P_n| = Σ_{k=2}^{n−3} |P_k| (n−1)!/k! + |F_{n−2}| (n−1)` for `n >= 2`,
/// with `|P_0| = |P_1| = 0`.
pub fn pair_count_first_recursion(n: usize) -> ExactCount {
    let mut table: Vec<ExactCount> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let value = if m < 2 {
            ExactCount::zero()
        } else {
            first_recursion_step(m, &table)
        };
        table.push(value);
    }
    table.swap_remove(n)
}

fn first_recursion_step(m: usize, lower: &[ExactCount]) -> ExactCount {
    let mut total = derangement_count_sum(m - 2) * (m - 1);
    let top = factorial(m - 1);
    for (k, p) in lower.iter().enumerate().take(m.saturating_sub(2)).skip(2) {
        if !p.is_zero() {
            total += p * (&top / factorial(k));
        }
    }
    total
}

/// `|P_n|` via `|P_n| = (n−1)(|P_{n−1}| + (n−2)|P_{n−3}| + (−1)^n)` for `n >= 4`.
///
/// The seeds `|P_2|` and `|P_3|` are taken from the first recursion rather
/// than hard-coded.
pub fn pair_count_recurrence(n: usize) -> ExactCount {
    let mut table: Vec<SignedExactCount> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let value = match m {
            0 | 1 => BigInt::zero(),
            2 | 3 => signed(first_recursion_step(m, &[])),
            _ => {
                let parity = if m % 2 == 0 { 1 } else { -1 };
                let inner = &table[m - 1] + &table[m - 3] * (m - 2) + parity;
                inner * (m - 1)
            }
        };
        table.push(value);
    }
    unsigned(table.swap_remove(n), "|P_n| recurrence")
}

/// `|P_n| = |F_n| − g≥3(n)`.
pub fn pair_count_subtraction(n: usize) -> ExactCount {
    derangement_count_sum(n) - g_ge3(n)
}

/// `|P_n|` from the explicit formula: the alternating derangement sum minus
/// the double sum for `g≥3(n)`, both in exact rationals.
pub fn pair_count_explicit(n: usize) -> ExactCount {
    derangement_count_sum(n) - g_ge3_formula(n)
}

/// `|P_n^k| = n! / ((n−2k)! 2^k k!) · g≥3(n−2k)`.
///
/// `k > ⌊n/2⌋` is rejected rather than returning zero.
pub fn exact_pair_k_count(n: usize, k: usize) -> Result<ExactCount> {
    if 2 * k > n {
        return Err(domain(
            "exact_pair_k_count",
            format!("k = {k} with n = {n} (requires k <= n/2)"),
        ));
    }
    let rest = n - 2 * k;
    let arrangements = factorial(n);
    let divisor = factorial(rest) * factorial(k) * (BigUint::one() << k);
    let (matchings, remainder) = arrangements.div_rem(&divisor);
    assert!(remainder.is_zero(), "pair selections for n = {n}, k = {k} not integral");
    Ok(matchings * g_ge3(rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: [u32; 11] = [0, 0, 1, 0, 3, 20, 105, 714, 5845, 52632, 525105];

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), 1u32.into());
        assert_eq!(factorial(5), 120u32.into());
        assert_eq!(factorial(20), 2_432_902_008_176_640_000u64.into());
        assert_eq!(factorial(20), factorial(19) * 20u32);
    }

    #[test]
    fn derangement_examples() {
        assert_eq!(derangement_count_sum(2), 1u32.into());
        assert_eq!(derangement_count_sum(3), 2u32.into());
        assert_eq!(derangement_count_sum(6), 265u32.into());
        assert_eq!(derangement_count_sum(0), 1u32.into());
        assert_eq!(derangement_count_sum(1), 0u32.into());
        assert_eq!(derangement_count_recurrence(0), 1u32.into());
        assert_eq!(derangement_count_recurrence(1), 0u32.into());
        assert_eq!(derangement_count_recurrence(4), 9u32.into());
    }

    #[test]
    fn derangement_routes_agree() {
        for n in 0..=60 {
            assert_eq!(derangement_count_sum(n), derangement_count_recurrence(n), "n = {n}");
        }
    }

    #[test]
    fn pair_count_table() {
        for (n, &expected) in TABLE.iter().enumerate() {
            let expected = ExactCount::from(expected);
            assert_eq!(pair_count_typesum(n), expected, "typesum n = {n}");
            assert_eq!(pair_count_recurrence(n), expected, "recurrence n = {n}");
            assert_eq!(pair_count_subtraction(n), expected, "subtraction n = {n}");
            assert_eq!(pair_count_first_recursion(n), expected, "first recursion n = {n}");
            assert_eq!(pair_count_explicit(n), expected, "explicit n = {n}");
        }
    }

    #[test]
    fn g3_examples() {
        assert_eq!(g_ge3(3), 2u32.into());
        assert_eq!(g_ge3(5), 24u32.into());
        assert_eq!(g_ge3(0), 1u32.into());
        assert_eq!(g_ge3(1), 0u32.into());
        assert_eq!(g_ge3(2), 0u32.into());
    }

    #[test]
    fn g3_routes_agree() {
        for n in 0..=40 {
            assert_eq!(g_ge3(n), g_ge3_formula(n), "n = {n}");
        }
    }

    // Sum over cycle types with every part >= 3, independent of both formulas.
    #[test]
    fn g3_matches_type_sum() {
        for n in 0..=25 {
            let by_types = enumerate_cycle_types(n)
                .iter()
                .filter(|t| t.fixed_points() == 0 && t.two_cycles() == 0)
                .map(|t| count_of_type(t).unwrap())
                .fold(ExactCount::zero(), |a, c| a + c);
            assert_eq!(g_ge3(n), by_types, "n = {n}");
        }
    }

    #[test]
    fn pair_k_examples() {
        assert_eq!(exact_pair_k_count(4, 2).unwrap(), 3u32.into());
        assert_eq!(exact_pair_k_count(2, 1).unwrap(), 1u32.into());
        assert_eq!(exact_pair_k_count(6, 3).unwrap(), 15u32.into());
        assert_eq!(exact_pair_k_count(5, 2).unwrap(), 0u32.into());
        assert!(exact_pair_k_count(5, 3).is_err());
    }

    #[test]
    fn pair_k_rows_sum_to_derangements() {
        for n in 0..=60 {
            let row = (0..=n / 2)
                .map(|k| exact_pair_k_count(n, k).unwrap())
                .fold(ExactCount::zero(), |a, c| a + c);
            assert_eq!(row, derangement_count_sum(n), "n = {n}");
            assert_eq!(exact_pair_k_count(n, 0).unwrap(), g_ge3(n));
        }
    }

    #[test]
    fn pair_k_zero_exactly_when_remainder_is_one_or_two() {
        for n in 0..=40 {
            for k in 0..=n / 2 {
                let zero = exact_pair_k_count(n, k).unwrap().is_zero();
                assert_eq!(zero, matches!(n - 2 * k, 1 | 2), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn three_way_pair_count_agreement() {
        for n in 0..=60 {
            let sub = pair_count_subtraction(n);
            assert_eq!(pair_count_recurrence(n), sub, "n = {n}");
            assert_eq!(pair_count_typesum(n), sub, "n = {n}");
        }
    }

    #[test]
    fn summand_count_identity() {
        for n in 2..=60 {
            let expected = partition_sum(n) + u32::from(n == 2);
            assert_eq!(
                pair_type_count(n, TypeCountVariant::Enumerated).unwrap(),
                expected,
                "n = {n}"
            );
        }
    }

    #[test]
    fn concurrent_lookups_agree() {
        let handles: Vec<_> = (0..8)
            .map(|t| {
                std::thread::spawn(move || {
                    (0..=80)
                        .map(|n| (g_ge3((n + 7 * t) % 81), factorial(n), derangement_count_recurrence(n)))
                        .collect::<Vec<_>>()
                        .len()
                })
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), 81);
        }
        for n in 0..=80 {
            assert_eq!(g_ge3(n), derangement_count_sum(n) - pair_count_recurrence(n));
        }
    }
}
