use std::collections::BTreeMap;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::table::build_ratio_table;
use crate::error::{LatticeError, Result};
use crate::lattice::GeneratorMatrix;

/// Distribution of one node's observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "lowercase", deny_unknown_fields)]
pub enum SourceModel {
    Uniform { lo: f64, hi: f64 },
    Gaussian { mean: f64, sigma: f64 },
}

impl SourceModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SourceModel::Uniform { lo, hi } if lo.is_finite() && hi.is_finite() && hi > lo => {
                Ok(())
            }
            SourceModel::Gaussian { mean, sigma }
                if mean.is_finite() && sigma.is_finite() && sigma > 0.0 =>
            {
                Ok(())
            }
            other => Err(LatticeError::Domain(format!("invalid source {other:?}"))),
        }
    }

    /// Differential entropy in bits.
    pub fn differential_entropy(&self) -> f64 {
        match *self {
            SourceModel::Uniform { lo, hi } => (hi - lo).log2(),
            SourceModel::Gaussian { sigma, .. } => {
                0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * sigma * sigma).log2()
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            SourceModel::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            SourceModel::Gaussian { mean, sigma } => Normal::new(mean, sigma)
                .expect("validated sigma")
                .sample(rng),
        }
    }
}

impl FromStr for SourceModel {
    type Err = LatticeError;

    /// `uniform:lo:hi` or `gaussian:mean:sigma`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            LatticeError::Parse(format!(
                "expected uniform:LO:HI or gaussian:MEAN:SIGMA, got {s:?}"
            ))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let [kind, p, q] = parts.as_slice() else {
            return Err(bad());
        };
        let p: f64 = p.trim().parse().map_err(|_| bad())?;
        let q: f64 = q.trim().parse().map_err(|_| bad())?;
        let model = match kind.trim() {
            "uniform" => SourceModel::Uniform { lo: p, hi: q },
            "gaussian" => SourceModel::Gaussian { mean: p, sigma: q },
            _ => return Err(bad()),
        };
        model.validate()?;
        Ok(model)
    }
}

fn check_inputs(sources: &[SourceModel], v: &GeneratorMatrix, alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(LatticeError::Domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if sources.len() != v.n() {
        return Err(LatticeError::DimensionMismatch {
            expected: v.n(),
            got: sources.len(),
        });
    }
    sources.iter().try_for_each(SourceModel::validate)
}

/// Upper bound on the centralized rate:
/// `sum h_i - log2|det V| - n log2 alpha + sum_{i<n} log2 q_i`.
pub fn centralized_rate_bound(
    sources: &[SourceModel],
    v: &GeneratorMatrix,
    alpha: f64,
) -> Result<f64> {
    check_inputs(sources, v, alpha)?;
    let table = build_ratio_table(v)?;
    let h: f64 = sources.iter().map(SourceModel::differential_entropy).sum();
    Ok(h - v.abs_det().log2() - v.n() as f64 * alpha.log2() + table.side_info_bound())
}

/// Small-`alpha` rate of the broadcast protocol: `(n - 1) sum_i [h_i - log2(alpha v_ii)]`.
pub fn interactive_rate(sources: &[SourceModel], v: &GeneratorMatrix, alpha: f64) -> Result<f64> {
    check_inputs(sources, v, alpha)?;
    if !v.is_upper_triangular() {
        return Err(LatticeError::ProtocolUnsupported(
            "basis must be upper triangular".into(),
        ));
    }
    let per_node: f64 = sources
        .iter()
        .enumerate()
        .map(|(i, s)| s.differential_entropy() - (alpha * v.entry(i, i).abs()).log2())
        .sum();
    Ok((v.n() - 1) as f64 * per_node)
}

/// Discrete entropy estimators over empirical samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyEstimator {
    /// Entropy of the empirical distribution.
    #[default]
    PlugIn,
    /// Plug-in plus `(K - 1) / (2 N ln 2)` for `K` observed values, removing the
    /// first-order downward bias when `K` is not small against `N`.
    MillerMadow,
}

fn estimate<K: Ord>(
    samples: impl ExactSizeIterator<Item = K>,
    estimator: EntropyEstimator,
) -> Result<f64> {
    let total = samples.len() as f64;
    if total == 0.0 {
        return Err(LatticeError::EmptyInput);
    }
    let mut counts: BTreeMap<K, u64> = BTreeMap::new();
    for s in samples {
        *counts.entry(s).or_default() += 1;
    }
    let plug_in: f64 = counts
        .values()
        .map(|&c| c as f64 / total)
        .map(|p| p * (1.0 / p).log2())
        .sum();
    Ok(match estimator {
        EntropyEstimator::PlugIn => plug_in,
        EntropyEstimator::MillerMadow => {
            plug_in + (counts.len() - 1) as f64 / (2.0 * total * std::f64::consts::LN_2)
        }
    })
}

/// Plug-in Shannon entropy of the empirical distribution, in bits.
pub fn empirical_entropy(samples: &[i64]) -> Result<f64> {
    empirical_entropy_with(samples, EntropyEstimator::PlugIn)
}

pub fn empirical_entropy_with(samples: &[i64], estimator: EntropyEstimator) -> Result<f64> {
    estimate(samples.iter(), estimator)
}

/// Plug-in `H(U_i | U_{i+1}, ..., U_n) = H(U_i, ..., U_n) - H(U_{i+1}, ..., U_n)`
/// from whole coefficient vectors (`i` is zero-based).
pub fn empirical_conditional_entropy(samples: &[Vec<i64>], i: usize) -> Result<f64> {
    empirical_conditional_entropy_with(samples, i, EntropyEstimator::PlugIn)
}

pub fn empirical_conditional_entropy_with(
    samples: &[Vec<i64>],
    i: usize,
    estimator: EntropyEstimator,
) -> Result<f64> {
    if let Some(bad) = samples.iter().find(|s| s.len() <= i) {
        return Err(LatticeError::DimensionMismatch {
            expected: i + 1,
            got: bad.len(),
        });
    }
    Ok(estimate(samples.iter().map(|s| &s[i..]), estimator)?
        - estimate(samples.iter().map(|s| &s[i + 1..]), estimator)?)
}
