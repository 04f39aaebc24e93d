use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::ExactCount;

// rows[k][m] = p_k(m); every row has the same width.
static TABLE: Mutex<Vec<Vec<BigUint>>> = Mutex::new(Vec::new());

/// `p_k(n)`, the number of partitions of `n` into at most `k` parts.
///
/// Uses `p_k(n) = p_{k−1}(n) + p_k(n−k)` with `p_k(0) = 1` and `p_0(n) = 0`
/// for `n > 0`. The table is memoized and grown on demand.
pub fn partitions_at_most(k: usize, n: usize) -> ExactCount {
    // At most n parts can be nonzero.
    let k = k.min(n);
    let mut rows = TABLE.lock().unwrap_or_else(|e| e.into_inner());
    let width = rows.first().map_or(0, Vec::len);
    if rows.len() <= k || width <= n {
        let new_rows = (k + 1).max(rows.len());
        let new_width = (n + 1).max(width);
        *rows = build(new_rows, new_width);
    }
    rows[k][n].clone()
}

fn build(rows: usize, width: usize) -> Vec<Vec<BigUint>> {
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(rows);
    for k in 0..rows {
        let mut row = Vec::with_capacity(width);
        for m in 0..width {
            let value = if m == 0 {
                BigUint::one()
            } else if k == 0 {
                BigUint::zero()
            } else {
                let fewer = &table[k - 1][m];
                if m >= k {
                    fewer + &row[m - k]
                } else {
                    fewer.clone()
                }
            };
            row.push(value);
        }
        table.push(row);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    // Direct enumeration of non-increasing sequences.
    fn brute(k: usize, n: usize) -> u64 {
        fn go(remaining: usize, max_part: usize, parts_left: usize) -> u64 {
            if remaining == 0 {
                return 1;
            }
            if parts_left == 0 {
                return 0;
            }
            (1..=max_part.min(remaining))
                .map(|p| go(remaining - p, p, parts_left - 1))
                .sum()
        }
        go(n, n, k)
    }

    #[test]
    fn examples() {
        assert_eq!(partitions_at_most(2, 1), 1u32.into());
        assert_eq!(partitions_at_most(1, 0), 1u32.into());
        assert_eq!(partitions_at_most(2, 4), 3u32.into());
        assert_eq!(partitions_at_most(0, 0), 1u32.into());
        assert_eq!(partitions_at_most(0, 3), 0u32.into());
    }

    #[test]
    fn matches_enumeration() {
        for n in 0..=20 {
            for k in 0..=22 {
                assert_eq!(partitions_at_most(k, n), brute(k, n).into(), "p_{k}({n})");
            }
        }
    }

    #[test]
    fn unrestricted_partition_numbers() {
        // p(100) = 190569292
        assert_eq!(partitions_at_most(100, 100), 190_569_292u64.into());
        assert_eq!(partitions_at_most(500, 200), 3_972_999_029_388u64.into());
    }
}
