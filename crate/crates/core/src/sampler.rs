//! Seeded Monte Carlo sampling of uniform derangements.
//!
//! Derangements are drawn by rejection: shuffle the identity with an unbiased
//! Fisher–Yates shuffle and retry while any fixed point remains. Conditioning
//! a uniform permutation on having no fixed point yields a uniform
//! derangement; the expected number of proposals per draw is `n!/|F_n| → e`.
//!
//! The generator is ChaCha8 ([`rand_chacha::ChaCha8Rng`]) seeded with
//! `seed_from_u64`, so a `(n, trials, seed)` triple always produces the same
//! histogram for a given build. Sampling is single-threaded.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::PairCountDistribution;
use crate::error::{domain, Error, Result};
use crate::permutation::Permutation;

/// Draws a uniformly random derangement of `n >= 2` elements.
pub fn sample_derangement<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
    let mut buf = Vec::with_capacity(n);
    draw_into(n, rng, &mut buf)?;
    Ok(Permutation::from_vec_unchecked(buf))
}

// Fills `buf` with a derangement, returning the number of rejected proposals.
fn draw_into<R: Rng + ?Sized>(n: usize, rng: &mut R, buf: &mut Vec<usize>) -> Result<u64> {
    if n < 2 {
        return Err(domain("sample_derangement", format!("n = {n} (requires n >= 2)")));
    }
    let mut rejected = 0;
    loop {
        buf.clear();
        buf.extend(0..n);
        buf.shuffle(rng);
        if buf.iter().enumerate().all(|(i, &j)| i != j) {
            return Ok(rejected);
        }
        rejected += 1;
    }
}

/// Histogram of 2-cycle counts over `trials` sampled derangements.
#[derive(Debug, Clone)]
pub struct SampleReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// `k` ↦ number of sampled derangements with exactly `k` 2-cycles.
    pub histogram: BTreeMap<usize, u64>,
    /// Proposals discarded because they had a fixed point.
    pub rejected: u64,
    pub elapsed: Duration,
}

impl SampleReport {
    /// Fraction of proposals that were derangements.
    pub fn accept_rate(&self) -> f64 {
        self.trials as f64 / (self.trials + self.rejected) as f64
    }

    pub fn frequency(&self, k: usize) -> f64 {
        self.histogram.get(&k).copied().unwrap_or(0) as f64 / self.trials as f64
    }

    /// Equality ignoring `elapsed`.
    pub fn same_outcome(&self, other: &Self) -> bool {
        (self.n, self.trials, self.seed, &self.histogram, self.rejected)
            == (other.n, other.trials, other.seed, &other.histogram, other.rejected)
    }
}

/// Samples `trials` derangements of `n` elements from `seed` and tallies
/// their 2-cycle counts.
pub fn monte_carlo_histogram(n: usize, trials: u64, seed: u64) -> Result<SampleReport> {
    if trials == 0 {
        return Err(domain("monte_carlo_histogram", "trials = 0"));
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = BTreeMap::new();
    let mut rejected = 0;
    let mut buf = Vec::with_capacity(n);
    for _ in 0..trials {
        rejected += draw_into(n, &mut rng, &mut buf)?;
        let pairs = buf
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j && buf[j] == i)
            .count();
        *histogram.entry(pairs).or_insert(0) += 1;
    }
    Ok(SampleReport {
        n,
        trials,
        seed,
        histogram,
        rejected,
        elapsed: start.elapsed(),
    })
}

/// `max_k |histogram[k]/trials − pmf[k]|`.
pub fn compare_empirical(report: &SampleReport, dist: &PairCountDistribution) -> Result<f64> {
    if report.n != dist.n() {
        return Err(Error::SizeMismatch {
            report: report.n,
            dist: dist.n(),
        });
    }
    let support = dist.pmf().len().max(report.histogram.keys().max().map_or(0, |k| k + 1));
    Ok((0..support)
        .map(|k| {
            let exact = dist.prob(k).to_f64().unwrap_or(0.0);
            (report.frequency(k) - exact).abs()
        })
        .fold(0.0, f64::max))
}
