//! Distribution fitting and inequality measurement.
//!
//! Exponential and Pareto-tail maximum-likelihood fits, a two-class
//! decomposition that splices an exponential bulk to a power-law tail,
//! Kolmogorov-Smirnov distances, and (in [`lorenz`]) Lorenz curves, Gini
//! coefficients, and the family-income convolution. Weighted samples are
//! supported throughout so population-weighted data (country-level energy
//! use, survey rows) flow through the same code path.

mod lorenz;

pub use lorenz::{family_income_density, gini_two_class, lorenz_closed_form, lorenz_empirical,
                 LorenzCurve};

use thiserror::Error;

/// Minimum rows retained by [`fit_exponential`].
const MIN_EXPONENTIAL_ROWS: usize = 10;
/// Minimum rows for [`fit_two_class`].
const MIN_TWO_CLASS_ROWS: usize = 1000;
/// Minimum rows a candidate boundary must leave in the tail.
const MIN_TAIL_ROWS: usize = 50;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("sample is empty")]
    EmptySample,
    #[error("need at least {min} values {context}; found {actual}")]
    TooFewValues {
        min: usize,
        actual: usize,
        context: &'static str,
    },
    #[error("degenerate fit: every retained value equals the lower bound, so T = 0")]
    Degenerate,
    #[error("no candidate boundary leaves at least {MIN_TAIL_ROWS} tail values")]
    DegenerateTail,
    /// By convention the Gini coefficient of an all-zero sample is 0; the
    /// curve itself cannot be normalized, so the case is surfaced here.
    #[error("all values are zero; Gini is 0 by convention but no Lorenz curve exists")]
    AllZeroValues,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("value at index {0} is not finite")]
    NonFinite(usize),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
}

/// Observations with optional positive weights and a unit label.
///
/// Values may be negative (ledger balances under debt); the inequality
/// measures that require nonnegative data reject negatives themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    weights: Option<Vec<f64>>,
    unit: String,
}

impl Sample {
    pub fn new(values: Vec<f64>, unit: impl Into<String>) -> Result<Self, FitError> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(FitError::NonFinite(i));
        }
        Ok(Self {
            values,
            weights: None,
            unit: unit.into(),
        })
    }

    pub fn with_weights(
        values: Vec<f64>,
        weights: Vec<f64>,
        unit: impl Into<String>,
    ) -> Result<Self, FitError> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(FitError::NonFinite(i));
        }
        if weights.len() != values.len() {
            return Err(FitError::InvalidWeights(format!(
                "{} weights for {} values",
                weights.len(),
                values.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(FitError::InvalidWeights(
                "weights must be finite and positive".into(),
            ));
        }
        Ok(Self {
            values,
            weights: Some(weights),
            unit: unit.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Weight of row i (1 when unweighted).
    fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[i])
    }

    /// Rows sorted ascending by value, as (value, weight) pairs.
    fn sorted_rows(&self) -> Vec<(f64, f64)> {
        let mut rows: Vec<(f64, f64)> = (0..self.len())
            .map(|i| (self.values[i], self.weight(i)))
            .collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        rows
    }
}

/// Shifted-exponential maximum-likelihood fit.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialFit {
    /// Fitted temperature (mean excess over the lower bound).
    pub temperature: f64,
    pub lower_bound: f64,
    /// KS distance of the retained values against the fitted CDF.
    pub ks_distance: f64,
    /// Number of rows at or above the lower bound.
    pub sample_size: usize,
}

/// Fits `P(x) ~ exp(-(x - lower_bound)/T)` to the values at or above
/// `lower_bound`; the MLE temperature is their mean excess.
pub fn fit_exponential(sample: &Sample, lower_bound: f64) -> Result<ExponentialFit, FitError> {
    let mut rows: Vec<(f64, f64)> = (0..sample.len())
        .filter(|&i| sample.values[i] >= lower_bound)
        .map(|i| (sample.values[i], sample.weight(i)))
        .collect();
    if rows.len() < MIN_EXPONENTIAL_ROWS {
        return Err(FitError::TooFewValues {
            min: MIN_EXPONENTIAL_ROWS,
            actual: rows.len(),
            context: "at or above the lower bound",
        });
    }
    let total_weight: f64 = rows.iter().map(|r| r.1).sum();
    let mean: f64 = rows.iter().map(|(v, w)| v * w).sum::<f64>() / total_weight;
    let temperature = mean - lower_bound;
    if temperature <= 0.0 {
        return Err(FitError::Degenerate);
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ks_distance = ks_on_sorted(&rows, |x| 1.0 - (-(x - lower_bound) / temperature).exp());
    Ok(ExponentialFit {
        temperature,
        lower_bound,
        ks_distance,
        sample_size: rows.len(),
    })
}

/// Exponential bulk spliced to a Pareto tail at a KS-optimal boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoClassFit {
    /// Bulk temperature T_r.
    pub temperature: f64,
    /// Tail exponent of `C(r) ~ (r_b/r)^alpha`.
    pub pareto_exponent: f64,
    /// Splice point r_b between the two classes.
    pub boundary: f64,
    /// Fraction of rows (by weight) at or above the boundary.
    pub upper_population_share: f64,
    /// Fraction f of total income received by the upper class, from the
    /// full-sample mean and the bulk temperature: f = (mean - T_r)/mean.
    pub income_fraction: f64,
    /// Full-sample weighted mean.
    pub mean: f64,
    /// Segment KS distances at the selected boundary.
    pub ks_bulk: f64,
    pub ks_tail: f64,
}

/// Decomposes income data into an exponential bulk and a Pareto tail.
///
/// Candidate boundaries run over the 80th-99.9th weighted percentiles in 0.1
/// steps. For each boundary the bulk is fitted by the maximum-likelihood
/// temperature of an exponential truncated to [0, r_b) (a plain mean would
/// be biased low by the truncation) and the tail by the Hill estimator
/// `alpha = W_tail / sum w ln(r/r_b)`; the boundary minimizing the larger of
/// the two segment KS distances wins.
pub fn fit_two_class(sample: &Sample) -> Result<TwoClassFit, FitError> {
    if sample.len() < MIN_TWO_CLASS_ROWS {
        return Err(FitError::TooFewValues {
            min: MIN_TWO_CLASS_ROWS,
            actual: sample.len(),
            context: "for two-class decomposition",
        });
    }
    if sample.values.iter().any(|&v| v < 0.0) {
        return Err(FitError::DomainError(
            "two-class decomposition requires nonnegative incomes".into(),
        ));
    }
    let rows = sample.sorted_rows();
    let n = rows.len();
    // Prefix sums over the sorted rows: weight and weighted value.
    let mut cum_weight = Vec::with_capacity(n + 1);
    let mut cum_value = Vec::with_capacity(n + 1);
    cum_weight.push(0.0);
    cum_value.push(0.0);
    for &(v, w) in &rows {
        cum_weight.push(cum_weight.last().unwrap() + w);
        cum_value.push(cum_value.last().unwrap() + w * v);
    }
    let total_weight = *cum_weight.last().unwrap();
    let total_value = *cum_value.last().unwrap();
    let mean = total_value / total_weight;

    let mut best: Option<(f64, TwoClassFit)> = None;
    let mut last_index = usize::MAX;
    let mut percentile = 80.0;
    while percentile <= 99.9 + 1e-9 {
        let target = percentile / 100.0 * total_weight;
        let index = cum_weight.partition_point(|&c| c < target).min(n - 1);
        percentile += 0.1;
        if index == last_index {
            continue;
        }
        last_index = index;
        let boundary = rows[index].0;
        if boundary <= 0.0 || n - index < MIN_TAIL_ROWS {
            continue;
        }
        let bulk_weight = cum_weight[index];
        let bulk_mean = cum_value[index] / bulk_weight;
        let Some(temperature) = truncated_exponential_mle(bulk_mean, boundary) else {
            continue;
        };

        let tail_weight = total_weight - cum_weight[index];
        let log_sum: f64 = rows[index..]
            .iter()
            .map(|&(v, w)| w * (v / boundary).ln())
            .sum();
        if log_sum <= 0.0 {
            continue;
        }
        let alpha = tail_weight / log_sum;

        let truncated_cdf = |x: f64| {
            ((-x / temperature).exp() - 1.0) / ((-boundary / temperature).exp() - 1.0)
        };
        let ks_bulk = ks_on_sorted(&rows[..index], truncated_cdf);
        let ks_tail = ks_on_sorted(&rows[index..], |x| 1.0 - (boundary / x).powf(alpha));
        let score = ks_bulk.max(ks_tail);
        if best.as_ref().is_none_or(|(s, _)| score < *s) {
            let fit = TwoClassFit {
                temperature,
                pareto_exponent: alpha,
                boundary,
                upper_population_share: tail_weight / total_weight,
                income_fraction: (mean - temperature) / mean,
                mean,
                ks_bulk,
                ks_tail,
            };
            best = Some((score, fit));
        }
    }
    best.map(|(_, fit)| fit).ok_or(FitError::DegenerateTail)
}

/// MLE temperature of an exponential truncated to [0, bound), given the
/// truncated sample mean. Solves `mean = T - bound/(e^{bound/T} - 1)`, whose
/// right side increases from 0 (T -> 0) to bound/2 (T -> inf); means at or
/// beyond bound/2 have no exponential solution and yield `None`.
fn truncated_exponential_mle(mean: f64, bound: f64) -> Option<f64> {
    if !(0.0 < mean && mean < bound / 2.0) {
        return None;
    }
    let truncated_mean = |t: f64| t - bound / (bound / t).exp_m1();
    let mut lo = mean; // truncated mean at T is below T, so T > mean.
    let mut hi = mean;
    for _ in 0..200 {
        hi *= 2.0;
        if truncated_mean(hi) > mean {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if truncated_mean(mid) < mean {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Sup-norm distance between the weighted empirical CDF and `cdf`.
pub fn ks_distance(sample: &Sample, cdf: impl Fn(f64) -> f64) -> Result<f64, FitError> {
    if sample.is_empty() {
        return Err(FitError::EmptySample);
    }
    Ok(ks_on_sorted(&sample.sorted_rows(), cdf))
}

/// KS statistic over rows already sorted ascending by value; the empirical
/// CDF steps by weight, and both sides of each jump are compared.
fn ks_on_sorted(rows: &[(f64, f64)], cdf: impl Fn(f64) -> f64) -> f64 {
    let total: f64 = rows.iter().map(|r| r.1).sum();
    let mut cumulative = 0.0;
    let mut distance: f64 = 0.0;
    for &(value, weight) in rows {
        let theory = cdf(value);
        distance = distance.max((theory - cumulative / total).abs());
        cumulative += weight;
        distance = distance.max((theory - cumulative / total).abs());
    }
    distance
}
