//! Exact, Monte Carlo and asymptotic counts of connected bipartite graphs
//! with a given surplus.
//!
//! Every connected spanning subgraph of `K_{n,m}` with surplus `k` is a
//! spanning tree plus `k` of that tree's candidate edges, so
//!
//! ```text
//! #G_{n,m}(k) = sum over trees T of binom(W(T), k)
//!             = n^{m-1} m^{n-1} E[binom(W, k)]
//! ```
//!
//! with `W` the candidate count of a uniform spanning tree.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bigcount::BigCount;
use crate::error::{Error, Result};
use crate::exploration::{
    composition_pair_count, for_each_black_completion, tree_count_for, w_of_counts_unchecked,
    white_compositions, ChildCountPair,
};
use crate::graph::{binomial_big, scoins_count};
use crate::rng::{par_batches, RngStream};
use crate::sampling::{hits_tree_event, sample_excursion_area, sample_w};
use crate::stats::Accumulator;

/// Refuse exact counts whose composition search space exceeds this.
pub const DEFAULT_EXACT_BUDGET: u64 = 100_000_000;

/// Monte Carlo mean with its standard error and the stream that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: RngStream,
}

impl MomentEstimate {
    fn from_accumulator(acc: &Accumulator, seed: RngStream) -> Self {
        MomentEstimate {
            mean: acc.mean(),
            stderr: acc.stderr(),
            samples: acc.count(),
            seed,
        }
    }

    /// `(mean - target) / stderr`; infinite when the estimate has no spread
    /// and misses the target.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = self.mean - target;
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }
}

/// Natural logarithm of a positive quantity too large for `f64`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct LogValue(pub f64);

impl LogValue {
    pub fn ln(self) -> f64 {
        self.0
    }

    /// `exp` of the stored value; overflows to infinity for large counts.
    pub fn value(self) -> f64 {
        self.0.exp()
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.0)
    }
}

/// `binom(w, k)`, zero when `w < k`.
pub fn binom_count(w: u64, k: u64) -> BigCount {
    BigCount::from(binomial_big(w, k))
}

/// `binom(w, k)` in floating point.
pub fn binom_f64(w: u64, k: u64) -> f64 {
    if k > w {
        return 0.0;
    }
    let k = k.min(w - k);
    (0..k).fold(1.0, |acc, i| acc * (w - i) as f64 / (i + 1) as f64)
}

fn check_exact_budget(n: usize, m: usize, budget: u64) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::EmptyClass { n, m });
    }
    let pairs = composition_pair_count(n, m);
    if pairs > budget.into() {
        return Err(Error::ExactBudget {
            pairs: pairs.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Number of spanning trees of `K_{n,m}` with each value of `W`.
pub fn w_distribution(n: usize, m: usize) -> Result<BTreeMap<u64, BigCount>> {
    w_distribution_with_budget(n, m, DEFAULT_EXACT_BUDGET)
}

pub fn w_distribution_with_budget(n: usize, m: usize, budget: u64) -> Result<BTreeMap<u64, BigCount>> {
    check_exact_budget(n, m, budget)?;
    let merge = |mut a: BTreeMap<u64, BigCount>, b: BTreeMap<u64, BigCount>| {
        for (w, c) in b {
            *a.entry(w).or_insert_with(BigCount::zero) += &c;
        }
        a
    };
    Ok(white_compositions(n, m)
        .into_par_iter()
        .map(|white| {
            let mut hist = BTreeMap::new();
            for_each_black_completion(&white, m, |black| {
                let c = ChildCountPair::new(white.clone(), black.to_vec());
                let trees = tree_count_for(&c).expect("enumerated pairs are admissible");
                *hist.entry(w_of_counts_unchecked(&c)).or_insert_with(BigCount::zero) += &trees;
            });
            hist
        })
        .reduce(BTreeMap::new, merge))
}

/// `#G_{n,m}(k)`, summed over admissible child-count pairs.
pub fn exact_count(n: usize, m: usize, k: usize) -> Result<BigCount> {
    exact_count_with_budget(n, m, k, DEFAULT_EXACT_BUDGET)
}

pub fn exact_count_with_budget(n: usize, m: usize, k: usize, budget: u64) -> Result<BigCount> {
    Ok(count_from_distribution(&w_distribution_with_budget(n, m, budget)?, k))
}

fn count_from_distribution(dist: &BTreeMap<u64, BigCount>, k: usize) -> BigCount {
    dist.iter()
        .map(|(&w, trees)| binom_count(w, k as u64) * trees.clone())
        .sum()
}

/// `#G_{n,m}(k)` for every `k` from 0 to the largest nonzero surplus.
pub fn exact_count_table(n: usize, m: usize, budget: u64) -> Result<Vec<BigCount>> {
    let dist = w_distribution_with_budget(n, m, budget)?;
    let max_w = dist.keys().next_back().copied().unwrap_or(0) as usize;
    Ok((0..=max_w).map(|k| count_from_distribution(&dist, k)).collect())
}

/// `#G_{n,m}(1)` in closed form, independent of the exploration machinery:
/// a unicyclic graph is an even cycle on `j` whites and `j` blacks with a
/// spanning forest rooted at the cycle, and `K_{n,m}` has
/// `n^{m-b-1} m^{n-a-1} (bn + am - ab)` forests rooted at `a` whites and `b`
/// blacks.
pub fn unicyclic_count(n: usize, m: usize) -> BigCount {
    assert!(n >= 1 && m >= 1, "need n, m >= 1");
    let (nu, mu) = (n as u64, m as u64);
    // every term is multiplied by 2nm to keep exponents nonnegative
    let scaled: BigCount = (2..=n.min(m) as u64)
        .map(|j| {
            // (j!)^2 / (2j) hamiltonian cycles in K_{j,j}, times 2
            let cycles = BigCount::factorial(j) * BigCount::factorial(j - 1);
            binom_count(nu, j)
                * binom_count(mu, j)
                * cycles
                * BigCount::pow(nu, (mu - j) as u32)
                * BigCount::pow(mu, (nu - j) as u32)
                * BigCount::from(j * nu + j * mu - j * j)
        })
        .sum();
    scaled.div_exact(&BigCount::from(2 * nu * mu))
}

/// Monte Carlo estimate of `E[binom(W, k)]` over uniform spanning trees,
/// with the log of the implied count `n^{m-1} m^{n-1} E[binom(W, k)]`.
pub fn estimate_count(
    n: usize,
    m: usize,
    k: usize,
    samples: usize,
    seed: RngStream,
) -> (MomentEstimate, LogValue) {
    assert!(samples >= 2, "need at least two samples");
    let acc = accumulate(seed, samples, |rng| binom_f64(sample_w(n, m, rng), k as u64));
    let est = MomentEstimate::from_accumulator(&acc, seed);
    let log = LogValue(est.mean.ln() + scoins_count(n, m).ln());
    (est, log)
}

/// Monte Carlo estimate of `E[(W / (m sqrt(n)))^k]`.
pub fn estimate_w_moment(n: usize, m: usize, k: u32, samples: usize, seed: RngStream) -> MomentEstimate {
    let scale = m as f64 * (n as f64).sqrt();
    let acc = accumulate(seed, samples, |rng| (sample_w(n, m, rng) as f64 / scale).powi(k as i32));
    MomentEstimate::from_accumulator(&acc, seed)
}

/// Monte Carlo estimate of `rho_k = E[A^k] / k!` with `A` the area of a
/// standard Brownian excursion, discretised at `resolution` steps.
pub fn estimate_rho(k: u32, resolution: usize, samples: usize, seed: RngStream) -> MomentEstimate {
    let fact: f64 = (1..=k).map(f64::from).product();
    let acc = accumulate(seed, samples, |rng| {
        if k == 0 {
            1.0
        } else {
            sample_excursion_area(resolution, rng).powi(k as i32) / fact
        }
    });
    MomentEstimate::from_accumulator(&acc, seed)
}

fn accumulate<F>(seed: RngStream, samples: usize, draw: F) -> Accumulator
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> f64 + Sync,
{
    par_batches(seed, samples, |rng, count| (0..count).map(|_| draw(rng)).collect::<Accumulator>())
        .iter()
        .fold(Accumulator::new(), |mut acc, b| {
            acc.merge(b);
            acc
        })
}

/// Large-`n` approximation
/// `(1 + n/m)^{k/2} rho_k n^{m-1+k/2} m^{n-1+k}`, as a logarithm.
pub fn asymptotic_count(n: usize, m: usize, k: usize, rho_k: f64) -> LogValue {
    assert!(rho_k > 0.0, "rho_k must be positive");
    let (nf, mf, kf) = (n as f64, m as f64, k as f64);
    let alpha = nf / mf;
    LogValue(
        kf / 2.0 * (1.0 + alpha).ln()
            + rho_k.ln()
            + (mf - 1.0 + kf / 2.0) * nf.ln()
            + (nf - 1.0 + kf) * mf.ln(),
    )
}

/// The same approximation written with `gamma = n / (n + m)`:
/// `(gamma (1 - gamma))^{k/2} rho_k (n + m)^{3k/2} n^{m-1} m^{n-1}`.
pub fn asymptotic_count_gamma(n: usize, m: usize, k: usize, rho_k: f64) -> LogValue {
    assert!(rho_k > 0.0, "rho_k must be positive");
    let (nf, mf, kf) = (n as f64, m as f64, k as f64);
    let gamma = nf / (nf + mf);
    LogValue(
        kf / 2.0 * (gamma * (1.0 - gamma)).ln()
            + rho_k.ln()
            + 1.5 * kf * (nf + mf).ln()
            + (mf - 1.0) * nf.ln()
            + (nf - 1.0) * mf.ln(),
    )
}

/// Probability that independent Poisson(1) child counts form a tree:
/// `e^{-(n+m)} n^{m-1} m^{n-1} / ((n-1)! m!)`, as a logarithm.
pub fn prob_tree_event(n: usize, m: usize) -> LogValue {
    assert!(n >= 1 && m >= 1, "need n, m >= 1");
    let ln_fact = |x: usize| (1..=x).map(|i| (i as f64).ln()).sum::<f64>();
    LogValue(
        -((n + m) as f64) + scoins_count(n, m).ln() - ln_fact(n - 1) - ln_fact(m),
    )
}

/// Empirical frequency of the tree event over unconditioned Poisson draws.
pub fn empirical_prob_tree_event(n: usize, m: usize, samples: usize, seed: RngStream) -> MomentEstimate {
    let acc = accumulate(seed, samples, |rng| f64::from(u8::from(hits_tree_event(n, m, rng))));
    MomentEstimate::from_accumulator(&acc, seed)
}
