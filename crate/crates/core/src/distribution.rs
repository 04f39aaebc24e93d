//! The law of `X_n`, the number of 2-cycles in a uniformly random derangement
//! of `n` elements, and its convergence to Poisson(½).
//!
//! Finite-`n` quantities are exact rationals. Floats only appear for the
//! Poisson limit and at the output boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::counting::{derangement_count_sum, exact_pair_k_count};
use crate::error::{domain, Result};
use crate::ExactRatio;

/// Poisson tail mass below which terms are dropped from distance sums.
pub const POISSON_TAIL_CUTOFF: f64 = 1e-12;

/// Exact pmf of `X_n` over `k = 0..=⌊n/2⌋`, with its first two moments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCountDistribution {
    n: usize,
    pmf: Vec<ExactRatio>,
    mean: ExactRatio,
    second_moment: ExactRatio,
}

impl PairCountDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `P(X_n = k)` for `k = 0..=⌊n/2⌋`.
    pub fn pmf(&self) -> &[ExactRatio] {
        &self.pmf
    }

    /// `P(X_n = k)`, zero outside the support.
    pub fn prob(&self, k: usize) -> ExactRatio {
        self.pmf.get(k).cloned().unwrap_or_else(ExactRatio::zero)
    }

    pub fn mean(&self) -> &ExactRatio {
        &self.mean
    }

    pub fn second_moment(&self) -> &ExactRatio {
        &self.second_moment
    }

    /// `E[X_n^r]`
    pub fn moment(&self, r: u32) -> ExactRatio {
        raw_moment(&self.pmf, r)
    }

    /// `P(X_n >= k) = 1 − Σ_{j<k} P(X_n = j)`.
    pub fn prob_at_least(&self, k: usize) -> ExactRatio {
        let below: ExactRatio = self.pmf.iter().take(k).sum();
        ExactRatio::one() - below
    }
}

fn raw_moment(pmf: &[ExactRatio], r: u32) -> ExactRatio {
    pmf.iter()
        .enumerate()
        .map(|(k, p)| p * BigRational::from_integer(BigInt::from(k).pow(r)))
        .sum()
}

fn require_pairs_possible(what: &'static str, n: usize) -> Result<()> {
    if n < 2 {
        Err(domain(what, format!("n = {n} (requires n >= 2)")))
    } else {
        Ok(())
    }
}

/// `P(X_n = k) = |P_n^k| / |F_n|` for every `k`, as reduced fractions.
pub fn pair_distribution(n: usize) -> Result<PairCountDistribution> {
    require_pairs_possible("pair_distribution", n)?;
    let total = BigInt::from(derangement_count_sum(n));
    let pmf: Vec<ExactRatio> = (0..=n / 2)
        .map(|k| {
            let count = exact_pair_k_count(n, k).expect("k is within 0..=n/2");
            BigRational::new(BigInt::from(count), total.clone())
        })
        .collect();
    let norm: ExactRatio = pmf.iter().sum();
    assert!(norm.is_one(), "pmf for n = {n} sums to {norm}");
    let mean = raw_moment(&pmf, 1);
    let second_moment = raw_moment(&pmf, 2);
    Ok(PairCountDistribution {
        n,
        pmf,
        mean,
        second_moment,
    })
}

/// `P(X_n >= k)`, exact. `k = 0` gives 1 and `k > ⌊n/2⌋` gives 0.
pub fn prob_at_least(n: usize, k: usize) -> Result<ExactRatio> {
    Ok(pair_distribution(n)?.prob_at_least(k))
}

/// `E[X_n]`, exact.
pub fn mean_pair_count(n: usize) -> Result<ExactRatio> {
    Ok(pair_distribution(n)?.mean)
}

/// Poisson(½) pmf, `(1/2)^k e^{−1/2} / k!`.
///
/// `(1/2)^k / k!` is rounded once from its exact value, then multiplied by
/// the platform `exp(−0.5)`, so the result is within a couple of ulps.
pub fn poisson_half_pmf(k: usize) -> f64 {
    let weight = BigRational::new(
        BigInt::one(),
        BigInt::from(crate::counting::factorial(k)) << k,
    );
    weight.to_f64().unwrap_or(0.0) * (-0.5f64).exp()
}

/// `P(X >= k)` for `X ~ Poisson(½)`: `1 − Σ_{j<k} poisson_half_pmf(j)`.
pub fn asymptotic_at_least(k: usize) -> f64 {
    1.0 - (0..k).map(poisson_half_pmf).sum::<f64>()
}

/// `E[X^r]` for `X ~ Poisson(½)`, from `Σ_j S(r, j) λ^j` with Stirling
/// numbers of the second kind.
pub fn poisson_half_moment(r: u32) -> ExactRatio {
    let r = r as usize;
    // stirling[j] = S(row, j), updated row by row.
    let mut stirling = vec![BigInt::zero(); r + 1];
    stirling[0] = BigInt::one();
    for row in 1..=r {
        for j in (1..=row).rev() {
            stirling[j] = &stirling[j] * j + &stirling[j - 1];
        }
        stirling[0] = BigInt::zero();
    }
    stirling
        .iter()
        .enumerate()
        .map(|(j, s)| BigRational::new(s.clone(), BigInt::one() << j))
        .sum()
}

/// Total variation distance between the law of `X_n` and Poisson(½).
///
/// Terms are summed until the support of `X_n` is exhausted and the
/// remaining Poisson tail is below [`POISSON_TAIL_CUTOFF`].
pub fn total_variation_to_poisson(n: usize) -> Result<f64> {
    let dist = pair_distribution(n)?;
    Ok(total_variation(&dist))
}

fn total_variation(dist: &PairCountDistribution) -> f64 {
    let mut sum = 0.0;
    let mut k = 0;
    loop {
        let exact = dist.prob(k).to_f64().unwrap_or(0.0);
        sum += (exact - poisson_half_pmf(k)).abs();
        // Terms past k + 1 shrink by at least a factor of two each, so the
        // tail after k is at most twice the next term.
        if k >= dist.pmf.len() && 2.0 * poisson_half_pmf(k + 1) < POISSON_TAIL_CUTOFF {
            break;
        }
        k += 1;
    }
    0.5 * sum
}

/// One line of the convergence table (the data behind the at-least-one and
/// at-least-three curves).
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub prob_at_least_1: f64,
    pub prob_at_least_3: f64,
    pub tv_to_poisson: f64,
    pub mean: f64,
}

fn to_f64(x: &ExactRatio) -> f64 {
    x.to_f64().expect("probabilities fit in f64")
}

/// Rows for every `n` in `n_min..=n_max`.
pub fn convergence_table(n_min: usize, n_max: usize) -> Result<Vec<ConvergenceRow>> {
    require_pairs_possible("convergence_table", n_min)?;
    if n_min > n_max {
        return Err(domain(
            "convergence_table",
            format!("empty range {n_min}..={n_max}"),
        ));
    }
    (n_min..=n_max)
        .map(|n| {
            let dist = pair_distribution(n)?;
            Ok(ConvergenceRow {
                n,
                prob_at_least_1: to_f64(&dist.prob_at_least(1)),
                prob_at_least_3: to_f64(&dist.prob_at_least(3)),
                tv_to_poisson: total_variation(&dist),
                mean: to_f64(dist.mean()),
            })
        })
        .collect()
}
