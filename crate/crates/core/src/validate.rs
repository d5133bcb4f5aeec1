//! Fixed-seed statistical checks of the finite-n behaviour of the samplers.
//!
//! Each check reduces a limit statement to a mean, variance or chi-square
//! test at one time point and reports a pass/fail verdict at a stated band.

use std::fmt;

use serde::Serialize;

use crate::counting::{
    empirical_prob_tree_event, estimate_rho, estimate_w_moment, prob_tree_event, MomentEstimate,
};
use crate::exploration::is_admissible;
use crate::rng::{par_samples, RngStream};
use crate::sampling::{sample_conditioned_pair, to_excursion_pair, DEFAULT_RESOLUTION};
use crate::stats::{chi_square, variance_stderr, Accumulator};

/// `|z|` above this fails a moment test.
pub const Z_THRESHOLD: f64 = 4.0;
/// Chi-square p-values below this fail.
pub const P_THRESHOLD: f64 = 0.001;
/// Relative band for sample variances against their limits.
pub const VARIANCE_BAND: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatTestReport {
    pub name: String,
    pub statistic: f64,
    /// Standard error of `statistic`, when it is a sample mean or variance.
    pub stderr: Option<f64>,
    pub z_score: Option<f64>,
    pub p_value: Option<f64>,
    pub threshold: String,
    pub passed: bool,
    pub seed: RngStream,
    pub detail: String,
}

impl fmt::Display for StatTestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: statistic={:.6}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.statistic
        )?;
        if let Some(z) = self.z_score {
            write!(f, " z={z:.3}")?;
        }
        if let Some(p) = self.p_value {
            write!(f, " p={p:.4}")?;
        }
        write!(f, " [{}] {} seed={}/{}", self.threshold, self.detail, self.seed.seed, self.seed.stream)
    }
}

/// Which child-count bridge to look at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    White,
    Black,
}

/// Mean near 0 and variance near `t(1-t)` for the rescaled bridge
/// `sqrt(m) (Y°(nt)/m - t)`, or `sqrt(n) (Y●(mt)/n - t)` on the black side.
pub fn bridge_marginal_test(
    n: usize,
    m: usize,
    t: f64,
    side: Side,
    samples: usize,
    seed: RngStream,
) -> StatTestReport {
    assert!(t > 0.0 && t < 1.0, "t must lie in (0, 1)");
    let xs = par_samples(seed, samples, |rng| {
        let (yw, yb) = sample_conditioned_pair(n, m, rng).processes();
        match side {
            Side::White => {
                let j = (n as f64 * t).floor() as usize;
                (m as f64).sqrt() * (yw.at(j) as f64 / m as f64 - j as f64 / n as f64)
            }
            Side::Black => {
                let u = (m as f64 * t).floor() as usize;
                (n as f64).sqrt() * (yb.at(u) as f64 / n as f64 - u as f64 / m as f64)
            }
        }
    });
    let scale = match side {
        Side::White => m,
        Side::Black => n,
    };
    let name = match side {
        Side::White => "bridge_marginal_white",
        Side::Black => "bridge_marginal_black",
    };
    moment_report(name, &xs, t * (1.0 - t), scale, seed, format!("n={n} m={m} t={t}"))
}

/// Variance of `n^{-1/2} S(nt)` near `(1 + n/m) t(1-t)`.
pub fn s_marginal_test(n: usize, m: usize, t: f64, samples: usize, seed: RngStream) -> StatTestReport {
    assert!(t > 0.0 && t < 1.0, "t must lie in (0, 1)");
    let k = (n as f64 * t).floor() as usize;
    let xs = par_samples(seed, samples, |rng| {
        sample_conditioned_pair(n, m, rng).s_process().at(k) as f64 / (n as f64).sqrt()
    });
    let alpha = n as f64 / m as f64;
    moment_report(
        "s_marginal",
        &xs,
        (1.0 + alpha) * t * (1.0 - t),
        n,
        seed,
        format!("n={n} m={m} t={t} alpha={alpha}"),
    )
}

/// Mean within `4 SE + 1/sqrt(scale)` of 0 (the lattice drift is of order
/// `1/sqrt(scale)`) and variance within 5% of `target`.
fn moment_report(
    name: &str,
    xs: &[f64],
    target: f64,
    scale: usize,
    seed: RngStream,
    params: String,
) -> StatTestReport {
    let acc: Accumulator = xs.iter().copied().collect();
    let var = acc.variance();
    let mean_band = Z_THRESHOLD * acc.stderr() + 1.0 / (scale as f64).sqrt();
    let mean_ok = acc.mean().abs() <= mean_band;
    let var_ok = (var - target).abs() <= VARIANCE_BAND * target;
    StatTestReport {
        name: name.into(),
        statistic: var,
        stderr: Some(variance_stderr(xs)),
        z_score: Some((var - target) / variance_stderr(xs)),
        p_value: None,
        threshold: format!(
            "|mean| <= {mean_band:.4}, variance within {:.0}% of {target:.4}",
            VARIANCE_BAND * 100.0
        ),
        passed: mean_ok && var_ok,
        seed,
        detail: format!("{params} mean={:.5} samples={}", acc.mean(), acc.count()),
    }
}

/// Chi-square of the first argmin `τ` of `S` against uniform on `{1..n}`.
pub fn tau_uniformity_test(n: usize, m: usize, samples: usize, seed: RngStream) -> StatTestReport {
    let taus = par_samples(seed, samples, |rng| to_excursion_pair(&sample_conditioned_pair(n, m, rng)).1);
    let mut hist = vec![0u64; n];
    for tau in taus {
        hist[tau - 1] += 1;
    }
    let r = chi_square(&hist, &vec![1.0 / n as f64; n]);
    StatTestReport {
        name: "tau_uniformity".into(),
        statistic: r.statistic,
        stderr: None,
        z_score: None,
        p_value: Some(r.p_value),
        threshold: format!("p > {P_THRESHOLD}"),
        passed: r.p_value > P_THRESHOLD,
        seed,
        detail: format!("n={n} m={m} dof={} samples={samples}", r.dof),
    }
}

/// Fraction of conditioned pairs that are already admissible, against `1/n`.
pub fn admissible_fraction_test(n: usize, m: usize, samples: usize, seed: RngStream) -> StatTestReport {
    let acc: Accumulator = par_samples(seed, samples, |rng| {
        f64::from(u8::from(is_admissible(&sample_conditioned_pair(n, m, rng).to_counts())))
    })
    .into_iter()
    .collect();
    let target = 1.0 / n as f64;
    let se = (target * (1.0 - target) / samples as f64).sqrt();
    let z = (acc.mean() - target) / se;
    StatTestReport {
        name: "admissible_fraction".into(),
        statistic: acc.mean(),
        stderr: Some(acc.stderr()),
        z_score: Some(z),
        p_value: None,
        threshold: format!("|z| < 3 against {target:.5}"),
        passed: z.abs() < 3.0,
        seed,
        detail: format!("n={n} m={m} samples={samples}"),
    }
}

/// Frequency of the tree event under unconditioned Poisson(1) counts,
/// against `e^{-(n+m)} n^{m-1} m^{n-1} / ((n-1)! m!)`.
pub fn tree_event_test(n: usize, m: usize, samples: usize, seed: RngStream) -> StatTestReport {
    let est = empirical_prob_tree_event(n, m, samples, seed);
    let target = prob_tree_event(n, m).value();
    let se = (target * (1.0 - target) / samples as f64).sqrt();
    let z = (est.mean - target) / se;
    StatTestReport {
        name: "tree_event_probability".into(),
        statistic: est.mean,
        stderr: Some(est.stderr),
        z_score: Some(z),
        p_value: None,
        threshold: format!("|z| < 3 against {target:.6}"),
        passed: z.abs() < 3.0,
        seed,
        detail: format!("n={n} m={m} samples={samples}"),
    }
}

/// Relative band for the `k`-th normalised moment of `W`.
pub fn w_scaling_band(k: u32) -> f64 {
    if k <= 1 {
        0.03
    } else {
        0.05
    }
}

/// Sample mean of `(W / (m sqrt(n)))^k` against `(1 + n/m)^{k/2} k! rho_k`,
/// with `rho_k` estimated live from excursion areas.
pub fn w_scaling_test(n: usize, m: usize, k: u32, samples: usize, seed: RngStream) -> StatTestReport {
    assert!(k <= 2, "w_scaling_test covers k in 0..=2");
    let moment = estimate_w_moment(n, m, k, samples, seed);
    let rho = estimate_rho(k, DEFAULT_RESOLUTION, 10 * samples, seed.with_stream(seed.stream ^ 0x5a5a));
    let fact = if k == 2 { 2.0 } else { 1.0 };
    let alpha = n as f64 / m as f64;
    let scale = (1.0 + alpha).powf(k as f64 / 2.0) * fact;
    let target = MomentEstimate {
        mean: scale * rho.mean,
        stderr: scale * rho.stderr,
        ..rho
    };
    w_scaling_report(n, m, k, &moment, &target)
}

pub(crate) fn w_scaling_report(
    n: usize,
    m: usize,
    k: u32,
    moment: &MomentEstimate,
    target: &MomentEstimate,
) -> StatTestReport {
    let band = w_scaling_band(k);
    let rel = moment.mean / target.mean - 1.0;
    let combined = moment.stderr.hypot(target.stderr);
    let z = if combined == 0.0 { 0.0 } else { (moment.mean - target.mean) / combined };
    StatTestReport {
        name: format!("w_scaling_k{k}"),
        statistic: moment.mean,
        stderr: Some(moment.stderr),
        z_score: Some(z),
        p_value: None,
        threshold: format!("within {:.0}% of {:.5}", band * 100.0, target.mean),
        passed: rel.abs() <= band,
        seed: moment.seed,
        detail: format!("n={n} m={m} relative={rel:+.4} samples={}", moment.samples),
    }
}

/// Named groups of checks.
pub const SUITES: [&str; 6] = ["bridge", "s-marginal", "tau", "cycle", "tree-event", "w-scaling"];

/// Runs one named suite, or every suite for `"all"`. Returns `None` for an
/// unknown name. `samples` overrides the per-test default.
pub fn run_suite(name: &str, seed: u64, samples: Option<usize>) -> Option<Vec<StatTestReport>> {
    let s = |default: usize| samples.unwrap_or(default);
    let stream = |i: u64| RngStream::new(seed, i);
    let reports = match name {
        "all" => {
            return Some(
                SUITES
                    .iter()
                    .flat_map(|suite| run_suite(suite, seed, samples).expect("known suite"))
                    .collect(),
            )
        }
        "bridge" => vec![
            bridge_marginal_test(2000, 2000, 0.5, Side::White, s(10_000), stream(101)),
            bridge_marginal_test(2000, 2000, 0.5, Side::Black, s(10_000), stream(102)),
            bridge_marginal_test(2000, 1000, 0.3, Side::White, s(10_000), stream(103)),
            bridge_marginal_test(2000, 1000, 0.3, Side::Black, s(10_000), stream(104)),
        ],
        "s-marginal" => vec![
            s_marginal_test(2000, 2000, 0.5, s(10_000), stream(201)),
            s_marginal_test(2000, 1000, 0.5, s(10_000), stream(202)),
        ],
        "tau" => vec![
            tau_uniformity_test(1, 1, s(1000), stream(301)),
            tau_uniformity_test(2, 1, s(100_000), stream(302)),
            tau_uniformity_test(10, 10, s(100_000), stream(303)),
        ],
        "cycle" => vec![admissible_fraction_test(10, 10, s(100_000), stream(401))],
        "tree-event" => vec![
            tree_event_test(3, 3, s(1_000_000), stream(501)),
            tree_event_test(4, 2, s(1_000_000), stream(502)),
        ],
        "w-scaling" => vec![
            w_scaling_test(1600, 1600, 1, s(10_000), stream(601)),
            w_scaling_test(1600, 1600, 2, s(10_000), stream(602)),
        ],
        _ => return None,
    };
    Some(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_degenerate_single_white() {
        let r = tau_uniformity_test(1, 3, 200, RngStream::new(1, 0));
        assert!(r.passed);
        assert_eq!(r.p_value, Some(1.0));
    }

    #[test]
    fn tau_small_cases() {
        assert!(tau_uniformity_test(2, 1, 20_000, RngStream::new(2, 0)).passed);
        assert!(tau_uniformity_test(5, 3, 20_000, RngStream::new(3, 0)).passed);
    }

    #[test]
    fn bridge_variance_moderate_n() {
        for side in [Side::White, Side::Black] {
            let r = bridge_marginal_test(400, 400, 0.5, side, 10_000, RngStream::new(4, 0));
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn s_variance_moderate_n() {
        let r = s_marginal_test(400, 200, 0.5, 10_000, RngStream::new(5, 0));
        assert!(r.passed, "{r}");
    }

    #[test]
    fn w_scaling_k_zero_is_exact() {
        let r = w_scaling_test(20, 20, 0, 100, RngStream::new(6, 0));
        assert_eq!(r.statistic, 1.0);
        assert!(r.passed);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("cycle", 9, Some(5000)).unwrap();
        let b = run_suite("cycle", 9, Some(5000)).unwrap();
        assert_eq!(a, b);
        assert!(run_suite("nope", 9, None).is_none());
    }
}
