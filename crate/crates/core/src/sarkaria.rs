//! Lifting Tverberg questions to origin-in-hull questions, and the random
//! partition experiment.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::RNG_NAME;
use crate::geometry::PointConfig;
use crate::lp::lp_feasible;
use crate::partition::Partition;
use crate::scalar::Scalar;
use crate::tverberg::{common_point, tolerance_check};

/// Each base point `a` becomes the `r` points `(a, 1) ⊗ v_j` in dimension
/// `(d+1)(r-1)`, where `v_j = e_j` for `j < r` and `v_r = -(e_1 + … + e_{r-1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedConfig<S> {
    pub base: PointConfig<S>,
    pub r: usize,
    pub simplex_vectors: Vec<Vec<i64>>,
    /// `lifted[a][j]` is `(a, 1) ⊗ v_j`.
    pub lifted: Vec<Vec<Vec<S>>>,
}

fn simplex_vectors(r: usize) -> Vec<Vec<i64>> {
    let mut vs: Vec<Vec<i64>> = (0..r - 1)
        .map(|j| (0..r - 1).map(|k| i64::from(j == k)).collect())
        .collect();
    vs.push(vec![-1; r - 1]);
    vs
}

/// Tensor product laid out as `(v[0]·x, v[1]·x, …)` for `x = (a, 1)`.
fn tensor<S: Scalar>(point: &[S], v: &[i64]) -> Vec<S> {
    let mut out = Vec::with_capacity(v.len() * (point.len() + 1));
    for &c in v {
        let c = S::from_i64(c);
        out.extend(point.iter().map(|x| c.mul(x)));
        out.push(c);
    }
    out
}

pub fn sarkaria_lift<S: Scalar>(config: &PointConfig<S>, r: usize) -> Result<LiftedConfig<S>> {
    if r < 2 {
        return Err(Error::InvalidArguments(format!("need r >= 2, got {r}")));
    }
    let vs = simplex_vectors(r);
    let lifted = config
        .points()
        .iter()
        .map(|a| vs.iter().map(|v| tensor(a, v)).collect())
        .collect();
    Ok(LiftedConfig {
        base: config.clone(),
        r,
        simplex_vectors: vs,
        lifted,
    })
}

impl<S: Scalar> LiftedConfig<S> {
    /// Dimension `(d+1)(r-1)` of the lifted points.
    pub fn lifted_dim(&self) -> usize {
        (self.base.dim() + 1) * (self.r - 1)
    }

    /// Every block sums to zero, so its hull holds the origin with all
    /// coefficients `1/r`.
    pub fn blocks_contain_origin(&self) -> bool {
        self.lifted.iter().all(|block| {
            (0..self.lifted_dim()).all(|c| block.iter().fold(S::zero(), |acc, y| acc.add(&y[c])).is_zero())
        })
    }
}

/// Whether the origin lies in the hull of the points selected by `labels`
/// (label `j` picks `(a, 1) ⊗ v_j`). Labels need not use every part.
pub fn tverberg_via_lift<S: Scalar>(lifted: &LiftedConfig<S>, labels: &[usize]) -> Result<bool> {
    let n = lifted.base.len();
    if labels.len() != n {
        return Err(Error::PartitionMismatch(format!("{} labels for {n} points", labels.len())));
    }
    if let Some(&bad) = labels.iter().find(|&&l| l >= lifted.r) {
        return Err(Error::InvalidArguments(format!("label {bad} out of range for r={}", lifted.r)));
    }
    let dim = lifted.lifted_dim();
    let chosen: Vec<&Vec<S>> = labels.iter().enumerate().map(|(a, &l)| &lifted.lifted[a][l]).collect();
    let mut rows: Vec<Vec<S>> = (0..dim).map(|c| chosen.iter().map(|y| y[c].clone()).collect()).collect();
    rows.push(vec![S::one(); n]);
    let mut rhs = vec![S::zero(); dim];
    rhs.push(S::one());
    Ok(lp_feasible(&rows, &rhs).is_feasible())
}

/// One trial of the random labeling experiment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub labels: Vec<usize>,
    pub nonempty_parts: usize,
    pub is_tverberg: bool,
    pub is_max_degree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub trials: u64,
    pub successes: u64,
    pub frequency: f64,
    pub bound: f64,
    pub seed: u64,
    pub generator: String,
    #[serde(skip)]
    pub log: Vec<TrialRecord>,
}

impl MonteCarloReport {
    /// Binomial standard error of the frequency.
    pub fn std_error(&self) -> f64 {
        (self.frequency * (1.0 - self.frequency) / self.trials as f64).sqrt()
    }

    pub fn log_csv(&self) -> String {
        let mut out = String::from("trial,label_vector,nonempty_parts,is_tverberg,is_max_degree\n");
        for t in &self.log {
            let labels: Vec<String> = t.labels.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(
                out,
                "{},\"{}\",{},{},{}",
                t.trial,
                labels.join(","),
                t.nonempty_parts,
                t.is_tverberg,
                t.is_max_degree
            );
        }
        out
    }

    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Draws `trials` uniform labelings with values in `0..r`. A trial succeeds
/// when the labeling has `r` nonempty parts, is Tverberg, and stays Tverberg
/// after deleting any single point (so every move keeps it a vertex, giving
/// degree `n(r-1)`). Trial `k` uses stream `k` of a ChaCha8 generator seeded
/// with `seed`.
pub fn mc_max_degree_probability<S: Scalar>(
    config: &PointConfig<S>,
    r: usize,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloReport> {
    if r < 2 || trials < 1 {
        return Err(Error::InvalidArguments(format!("need r >= 2 and trials >= 1, got r={r}, trials={trials}")));
    }
    let n = config.len();
    let log: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..r)).collect();
            let mut seen = vec![false; r];
            labels.iter().for_each(|&l| seen[l] = true);
            let nonempty_parts = seen.iter().filter(|&&s| s).count();
            let (is_tverberg, is_max_degree) = if nonempty_parts == r {
                let p = Partition::from_labels(&labels).expect("labels in range");
                let tv = common_point(config, &p.parts()).is_some();
                (tv, tv && tolerance_check(config, &p, 1).expect("sizes agree"))
            } else {
                (false, false)
            };
            TrialRecord {
                trial,
                labels,
                nonempty_parts,
                is_tverberg,
                is_max_degree,
            }
        })
        .collect();
    let successes = log.iter().filter(|t| t.is_max_degree).count() as u64;
    Ok(MonteCarloReport {
        n,
        d: config.dim(),
        r,
        trials,
        successes,
        frequency: successes as f64 / trials as f64,
        bound: probability_lower_bound(n, r, config.dim()),
        seed,
        generator: RNG_NAME.to_string(),
        log,
    })
}

/// `1 - r^k n^k exp(-2(n-r)^2 / (n r^2))` with `k = (r-1)(d+1)`, evaluated
/// through logarithms. Negative values are vacuous but returned unchanged.
pub fn probability_lower_bound(n: usize, r: usize, d: usize) -> f64 {
    let (nf, rf) = (n as f64, r as f64);
    let k = ((r - 1) * (d + 1)) as f64;
    let log_term = k * rf.ln() + k * nf.ln() - 2.0 * (nf - rf).powi(2) / (nf * rf * rf);
    1.0 - log_term.exp()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToleranceBounds {
    /// `(t+1)(r-1)(d+1) + 1`
    pub general: BigUint,
    /// `2^(d-1) (r(t+2) - 1)`
    pub low_dimensional: BigUint,
}

/// Upper bounds on the number of points forcing a Tverberg `r`-partition of
/// tolerance `t` in `R^d`.
pub fn tolerance_point_bounds(d: usize, t: usize, r: usize) -> Result<ToleranceBounds> {
    if d < 1 || r < 1 {
        return Err(Error::InvalidArguments(format!("need d, r >= 1, got d={d}, r={r}")));
    }
    let general = BigUint::from((t + 1) * (r - 1) * (d + 1) + 1);
    let low_dimensional = (BigUint::from(1u32) << (d - 1)) * BigUint::from(r * (t + 2) - 1);
    Ok(ToleranceBounds { general, low_dimensional })
}
