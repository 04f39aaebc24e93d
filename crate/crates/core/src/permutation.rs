//! Explicit permutations of `{0, …, n−1}` and the exhaustive census used as
//! ground truth for every closed-form count in [`crate::counting`].
//!
//! Labels are 0-based: `mapping[i]` is the image of `i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ExactCount;

/// Default upper bound on `n` for exhaustive enumeration (9! = 362 880).
pub const DEFAULT_ORACLE_CAP: usize = 9;

/// Hard upper bound any override may raise the cap to (10! = 3 628 800).
pub const MAX_ORACLE_CAP: usize = 10;

/// A bijection on `{0, …, n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation, checking that `mapping` is a bijection on `0..mapping.len()`.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &image in &mapping {
            if image >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {image} out of range for n = {n}"
                )));
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {image} appears twice"
                )));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    /// Caller guarantees `mapping` is a bijection.
    pub(crate) fn from_vec_unchecked(mapping: Vec<usize>) -> Self {
        debug_assert!(Self::new(mapping.clone()).is_ok());
        Self { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn image(&self, i: usize) -> usize {
        self.mapping[i]
    }

    /// The cycle type `(a_1, …, a_n)` of this permutation.
    pub fn cycle_type(&self) -> CycleType {
        cycle_type(&self.mapping)
    }

    /// Number of 2-cycles, i.e. unordered pairs `i < j` with `σ(i) = j` and `σ(j) = i`.
    pub fn count_two_cycles(&self) -> usize {
        count_two_cycles(&self.mapping)
    }

    /// `true` iff no element is mapped to itself. The empty permutation is a derangement.
    pub fn is_derangement(&self) -> bool {
        is_derangement(&self.mapping)
    }
}

impl fmt::Display for Permutation {
    /// One-line notation with 1-based labels, e.g. `(3 1 2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, image) in self.mapping.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", image + 1)?;
        }
        f.write_str(")")
    }
}

/// Vector `(a_1, …, a_n)` where `a_i` counts the cycles of length `i`.
///
/// Always stores the full length-`n` vector; `Σ i·a_i = n` holds for every value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    /// Checks `Σ i·a_i = counts.len()`.
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let n = counts.len();
        let weighted_sum = counts.iter().enumerate().map(|(i, a)| (i + 1) * a).sum();
        if weighted_sum != n {
            return Err(Error::InvalidCycleType { n, weighted_sum });
        }
        Ok(Self { counts })
    }

    pub(crate) fn from_counts_unchecked(counts: Vec<usize>) -> Self {
        debug_assert!(Self::new(counts.clone()).is_ok());
        Self { counts }
    }

    /// The ambient size `n`.
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `a_len`, the number of cycles of length `len` (1-based; 0 for `len` out of range).
    pub fn cycles_of_length(&self, len: usize) -> usize {
        match len {
            0 => 0,
            _ => self.counts.get(len - 1).copied().unwrap_or(0),
        }
    }

    pub fn fixed_points(&self) -> usize {
        self.cycles_of_length(1)
    }

    pub fn two_cycles(&self) -> usize {
        self.cycles_of_length(2)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

fn cycle_type(mapping: &[usize]) -> CycleType {
    let n = mapping.len();
    let mut counts = vec![0; n];
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = mapping[i];
            len += 1;
        }
        counts[len - 1] += 1;
    }
    CycleType { counts }
}

fn count_two_cycles(mapping: &[usize]) -> usize {
    mapping
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i < j && mapping[j] == i)
        .count()
}

fn is_derangement(mapping: &[usize]) -> bool {
    mapping.iter().enumerate().all(|(i, &j)| i != j)
}

/// Returns the cap on exhaustive enumeration, honouring the
/// `WICHTEL_ORACLE_CAP` environment variable when it is set.
pub fn oracle_cap_from_env() -> Result<usize> {
    match std::env::var("WICHTEL_ORACLE_CAP") {
        Ok(raw) => {
            let requested: usize = raw.trim().parse().map_err(|_| {
                crate::error::domain("WICHTEL_ORACLE_CAP", format!("value {raw:?}"))
            })?;
            check_cap(requested)
        }
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

/// Validates a cap override against [`MAX_ORACLE_CAP`].
pub fn check_cap(requested: usize) -> Result<usize> {
    if requested > MAX_ORACLE_CAP {
        Err(Error::CapTooLarge {
            requested,
            limit: MAX_ORACLE_CAP,
        })
    } else {
        Ok(requested)
    }
}

/// Lexicographic stream over all `n!` permutations of `0..n`.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(Permutation { mapping: out })
    }
}

// Narayana's algorithm; returns false once `v` is the last (descending) arrangement.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(pivot) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let successor = (pivot + 1..v.len()).rev().find(|&j| v[j] > v[pivot]).unwrap();
    v.swap(pivot, successor);
    v[pivot + 1..].reverse();
    true
}

/// Enumerates every permutation of `0..n` in lexicographic order of the mapping.
///
/// Fails with [`Error::CapExceeded`] when `n > cap`.
pub fn enumerate_permutations(n: usize, cap: usize) -> Result<Permutations> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(Permutations {
        current: Some((0..n).collect()),
    })
}

/// Classification of all of `S_n` by a single exhaustive pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCensus {
    pub n: usize,
    /// `n!`
    pub total: ExactCount,
    pub derangements: ExactCount,
    /// Permutations whose cycles all have length at least 3.
    pub no_short_cycles: ExactCount,
    /// `k` ↦ number of derangements with exactly `k` 2-cycles.
    pub pair_histogram: BTreeMap<usize, ExactCount>,
    pub type_counts: BTreeMap<CycleType, ExactCount>,
}

impl OracleCensus {
    /// Histogram entry for `k`, zero if absent.
    pub fn pairs(&self, k: usize) -> ExactCount {
        self.pair_histogram.get(&k).cloned().unwrap_or_default()
    }

    /// Number of derangements with at least one 2-cycle.
    pub fn with_pairs(&self) -> ExactCount {
        self.pair_histogram
            .iter()
            .filter(|(&k, _)| k > 0)
            .map(|(_, c)| c)
            .sum()
    }
}

/// Enumerates `S_n` once and tallies derangements, pair counts and cycle types.
pub fn oracle_census(n: usize, cap: usize) -> Result<OracleCensus> {
    let mut total = 0u64;
    let mut derangements = 0u64;
    let mut no_short_cycles = 0u64;
    let mut pair_histogram: BTreeMap<usize, u64> = BTreeMap::new();
    let mut type_counts: BTreeMap<CycleType, u64> = BTreeMap::new();

    for perm in enumerate_permutations(n, cap)? {
        total += 1;
        let ty = perm.cycle_type();
        if ty.fixed_points() == 0 {
            derangements += 1;
            *pair_histogram.entry(ty.two_cycles()).or_default() += 1;
            if ty.two_cycles() == 0 {
                no_short_cycles += 1;
            }
        }
        *type_counts.entry(ty).or_default() += 1;
    }

    let big = |c: u64| -> ExactCount {
        if c == 0 {
            BigUint::zero()
        } else if c == 1 {
            BigUint::one()
        } else {
            BigUint::from(c)
        }
    };
    Ok(OracleCensus {
        n,
        total: big(total),
        derangements: big(derangements),
        no_short_cycles: big(no_short_cycles),
        pair_histogram: pair_histogram.into_iter().map(|(k, c)| (k, big(c))).collect(),
        type_counts: type_counts.into_iter().map(|(t, c)| (t, big(c))).collect(),
    })
}
