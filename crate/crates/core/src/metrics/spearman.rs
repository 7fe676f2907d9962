//! Spearman rank correlation with a Monte Carlo permutation p-value.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutationConfig {
    pub iterations: usize,
    pub seed: u64,
}

impl Default for PermutationConfig {
    fn default() -> Self {
        Self {
            iterations: 10_000,
            seed: 0x5EED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spearman {
    pub rho: f64,
    /// Two-sided permutation p-value, `(hits + 1) / (iterations + 1)`.
    pub p: f64,
    pub n: usize,
}

/// 1-based ranks; tied values share the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

fn check(xs: &[f64], ys: &[f64]) -> Result<(), MetricsError> {
    if xs.len() != ys.len() {
        return Err(MetricsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 3 {
        return Err(MetricsError::TooShort(xs.len()));
    }
    let constant = |v: &[f64]| v.iter().all(|x| *x == v[0]);
    if constant(xs) || constant(ys) {
        return Err(MetricsError::Degenerate);
    }
    Ok(())
}

/// Rank correlation coefficient alone.
pub fn spearman_rho(xs: &[f64], ys: &[f64]) -> Result<f64, MetricsError> {
    check(xs, ys)?;
    Ok(pearson(&average_ranks(xs), &average_ranks(ys)))
}

pub fn spearman(
    xs: &[f64],
    ys: &[f64],
    config: PermutationConfig,
) -> Result<Spearman, MetricsError> {
    check(xs, ys)?;
    let rx = average_ranks(xs);
    let mut ry = average_ranks(ys);
    let rho = pearson(&rx, &ry);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let threshold = rho.abs() - 1e-12;
    let mut hits = 0usize;
    for _ in 0..config.iterations {
        ry.shuffle(&mut rng);
        if pearson(&rx, &ry).abs() >= threshold {
            hits += 1;
        }
    }
    Ok(Spearman {
        rho,
        p: (hits + 1) as f64 / (config.iterations + 1) as f64,
        n: xs.len(),
    })
}
