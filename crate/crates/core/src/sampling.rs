//! Exact samplers built on conditioned Poisson child counts.
//!
//! Independent Poisson(1) child counts conditioned on the bridge event
//! (whites' counts sum to `m`, blacks' counts sum to `n - 1`) are uniform
//! multinomials. Rotating such a pair at the first minimum of
//! `S(k) = Y●(Y°(k)) - k` gives the child counts of a uniform labeled tree.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use crate::cyclic::{argmin_time, first_passage, vervaat, SkipFreeBridge};
use crate::error::{Error, Result};
use crate::exploration::{assemble_tree, w_of_counts_unchecked, ChildCountPair, PathProcess};
use crate::graph::BipartiteGraph;

/// Default number of steps for excursion-area samples.
pub const DEFAULT_RESOLUTION: usize = 2000;

/// Child counts on the bridge event: `white` has `n` entries summing to `m`
/// and `black` has `m` entries summing to `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionedPair {
    white: Vec<usize>,
    black: Vec<usize>,
}

impl ConditionedPair {
    pub fn new(white: Vec<usize>, black: Vec<usize>) -> Result<Self> {
        let (n, m) = (white.len(), black.len());
        if n == 0 || white.iter().sum::<usize>() != m || black.iter().sum::<usize>() + 1 != n {
            return Err(Error::InvalidArgument(format!(
                "conditioned pair needs sum(white) = {m} and sum(black) = {}",
                n.saturating_sub(1)
            )));
        }
        Ok(ConditionedPair { white, black })
    }

    pub fn n(&self) -> usize {
        self.white.len()
    }

    pub fn m(&self) -> usize {
        self.black.len()
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    /// `(Y°, Y●)`.
    pub fn processes(&self) -> (PathProcess, PathProcess) {
        (prefix_path(&self.white), prefix_path(&self.black))
    }

    /// `S(k) = Y●(Y°(k)) - k` on `{0..n}`.
    pub fn s_process(&self) -> PathProcess {
        let (yw, yb) = self.processes();
        let values = yw
            .values()
            .iter()
            .enumerate()
            .map(|(k, &y)| yb.at(y as usize) - k as i64)
            .collect();
        PathProcess::from_values(values).expect("starts at 0")
    }

    pub fn to_counts(&self) -> ChildCountPair {
        ChildCountPair::new(self.white.clone(), self.black.clone())
    }
}

fn prefix_path(counts: &[usize]) -> PathProcess {
    let incs: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
    PathProcess::from_increments(&incs)
}

/// Uniform multinomial: `total` balls in `cells` equally likely cells,
/// sampled by sequential binomial splitting.
pub fn sample_multinomial_equal<R: Rng + ?Sized>(total: usize, cells: usize, rng: &mut R) -> Vec<usize> {
    let mut out = vec![0usize; cells];
    if cells == 0 {
        assert_eq!(total, 0, "cannot place balls in zero cells");
        return out;
    }
    let mut left = total as u64;
    for (i, slot) in out.iter_mut().enumerate().take(cells - 1) {
        if left == 0 {
            break;
        }
        let p = 1.0 / (cells - i) as f64;
        let x = Binomial::new(left, p).expect("valid binomial").sample(rng);
        *slot = x as usize;
        left -= x;
    }
    out[cells - 1] += left as usize;
    out
}

/// Poisson(1) child counts conditioned on the bridge event.
pub fn sample_conditioned_pair<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> ConditionedPair {
    assert!(n >= 1, "need at least one white vertex");
    assert!(m >= 1 || n == 1, "the bridge event is empty for m = 0, n > 1");
    let white = sample_multinomial_equal(m, n, rng);
    let black = sample_multinomial_equal(n - 1, m, rng);
    ConditionedPair { white, black }
}

/// Rotates whites by `τ`, the first argmin of `S`, and blacks by `Y°(τ)`.
/// The result is always admissible.
pub fn to_excursion_pair(p: &ConditionedPair) -> (ConditionedPair, usize) {
    let tau = argmin_time(&p.s_process());
    let (n, m) = (p.n(), p.m());
    let (yw, _) = p.processes();
    let black_shift = yw.at(tau) as usize;
    let white = (0..n).map(|k| p.white[(k + tau) % n]).collect();
    let black = if m == 0 {
        Vec::new()
    } else {
        (0..m).map(|k| p.black[(k + black_shift) % m]).collect()
    };
    (ConditionedPair { white, black }, tau)
}

/// `W` written directly in terms of a bridge-conditioned pair, without
/// rotating it:
///
/// ```text
/// W = sum_{j<=n} (Y°(j) - (m/n) j) - n (Y°(τ) - (m/n) τ)
///   + sum_{j<=m} (Y●(j) - (n/m) j) - m (Y●(Y°(τ)) - (n/m) Y°(τ)) - Y°(τ)
///   + (m - n + 2)/2
/// ```
///
/// evaluated in exact rationals.
pub fn w_direct(p: &ConditionedPair) -> u64 {
    let (n, m) = (p.n() as i128, p.m() as i128);
    assert!(m >= 1, "W needs at least one black vertex");
    let (yw, yb) = p.processes();
    let tau = argmin_time(&p.s_process());
    let q = |a: i128, b: i128| Ratio::new(a, b);
    let int = Ratio::from_integer;

    let yw_tau = yw.at(tau) as i128;
    let yb_at = yb.at(yw_tau as usize) as i128;
    let sum_w: i128 = yw.values().iter().map(|&v| v as i128).sum();
    let sum_b: i128 = yb.values().iter().map(|&v| v as i128).sum();

    let white_area = int(sum_w) - q(m, n) * int(n * (n + 1) / 2);
    let white_shift = -int(n) * (int(yw_tau) - q(m, n) * int(tau as i128));
    let black_area = int(sum_b) - q(n, m) * int(m * (m + 1) / 2);
    let black_shift = -int(m) * (int(yb_at) - q(n, m) * int(yw_tau));
    let w = white_area + white_shift + black_area + black_shift - int(yw_tau) + q(m - n + 2, 2);

    debug_assert!(w.is_integer() && w >= int(0));
    w.to_integer() as u64
}

/// `W` of a uniform spanning tree of `K_{n,m}`, via [`w_direct`].
pub fn sample_w<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> u64 {
    w_direct(&sample_conditioned_pair(n, m, rng))
}

/// `W` of a uniform spanning tree of `K_{n,m}`, via the rotated child counts.
pub fn sample_w_via_counts<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> u64 {
    let p = sample_conditioned_pair(n, m, rng);
    w_of_counts_unchecked(&to_excursion_pair(&p).0.to_counts())
}

/// Child counts of a uniform spanning tree of `K_{n,m}`.
pub fn sample_tree_counts<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> ChildCountPair {
    to_excursion_pair(&sample_conditioned_pair(n, m, rng)).0.to_counts()
}

/// Splits a shuffled label list into consecutive sibling groups and sorts
/// each group, so labels increase among siblings.
fn assign_labels<R: Rng + ?Sized>(mut labels: Vec<usize>, groups: &[usize], rng: &mut R) -> Vec<usize> {
    labels.shuffle(rng);
    let mut start = 0;
    for &g in groups {
        labels[start..start + g].sort_unstable();
        start += g;
    }
    labels
}

/// A uniformly random spanning tree of `K_{n,m}`.
pub fn sample_uniform_tree<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> BipartiteGraph {
    assert!(n >= 1 && m >= 1, "need n, m >= 1");
    let counts = sample_tree_counts(n, m, rng);
    let mut white_order = vec![1];
    white_order.extend(assign_labels((2..=n).collect(), counts.black(), rng));
    let black_order = assign_labels((1..=m).collect(), counts.white(), rng);
    assemble_tree(&counts, &white_order, &black_order).expect("admissible counts give a tree")
}

/// `N^{-3/2}` times the area under the queue-length path `V + 1`, where `V`
/// is the Vervaat transform of a Poisson(1) skip-free bridge of `N` steps.
/// Converges in law to the area of a standard Brownian excursion.
pub fn sample_excursion_area<R: Rng + ?Sized>(resolution: usize, rng: &mut R) -> f64 {
    assert!(resolution >= 2, "resolution must be at least 2");
    let offspring = sample_multinomial_equal(resolution - 1, resolution, rng);
    let bridge = SkipFreeBridge::from_offspring(&offspring);
    let excursion = vervaat(&bridge).expect("offspring sum to N - 1");
    let path = excursion.path();
    let area: i64 = path.values()[..resolution].iter().map(|v| v + 1).sum();
    area as f64 / (resolution as f64).powf(1.5)
}

/// Draws unconditioned Poisson(1) child counts and reports whether they land
/// in the tree event: `Y°(n) = m` and `S` first reaches `-1` at time `n`.
pub fn hits_tree_event<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> bool {
    let poisson = Poisson::new(1.0).expect("valid rate");
    let white: Vec<usize> = (0..n).map(|_| poisson.sample(rng) as usize).collect();
    if white.iter().sum::<usize>() != m {
        return false;
    }
    let black: Vec<usize> = (0..m).map(|_| poisson.sample(rng) as usize).collect();
    let p = ConditionedPair { white, black };
    first_passage(&p.s_process(), -1) == Some(n)
}
