//! Statistical equilibrium of a two-commodity labor market.
//!
//! Workers offer one unit of labor for a wage at or above a minimum; firms
//! offer capital for labor. Market clearing holds only statistically: offers
//! are weighted by `e^{-pi . x}` over the offer sets, and the entropic price
//! vector `pi` is solved so that wages and labor clear in expectation. The
//! wage side then follows a shifted exponential whose temperature is the
//! reciprocal wage price.

use rand::Rng;
use thiserror::Error;

/// Residual infinity-norm below which a solution counts as converged.
const RESIDUAL_TOLERANCE: f64 = 1e-8;
const MAX_NEWTON_ITERATIONS: usize = 200;
const BISECTION_ITERATIONS: usize = 200;

#[derive(Debug, Error, PartialEq)]
pub enum MarketError {
    #[error("invalid market spec: {0}")]
    InvalidSpec(String),
    #[error("infeasible market spec: {0}")]
    InfeasibleSpec(String),
    #[error("entropic prices must be strictly positive")]
    NonPositivePrices,
    #[error("solver did not converge: residual norm {residual:e}")]
    NoConvergence { residual: f64 },
}

/// Two-commodity labor market: `worker_count` workers each offering one unit
/// of labor at wage >= `min_wage`, `firm_count` firms each spending
/// `capital_per_firm` and absorbing labor >= `min_labor`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaborMarketSpec {
    worker_count: u64,
    firm_count: u64,
    capital_per_firm: f64,
    min_wage: f64,
    min_labor: f64,
    unemployment_weight: f64,
}

impl LaborMarketSpec {
    /// Builds a spec with the unemployment weight defaulted to 1.
    pub fn new(
        worker_count: u64,
        firm_count: u64,
        capital_per_firm: f64,
        min_wage: f64,
        min_labor: f64,
    ) -> Result<Self, MarketError> {
        Self::with_unemployment_weight(
            worker_count,
            firm_count,
            capital_per_firm,
            min_wage,
            min_labor,
            1.0,
        )
    }

    /// The unemployment weight is the statistical measure of the idle (0, 0)
    /// offer. It competes with the employed-offer measure, which carries the
    /// wage integration unit, so when money units change it should be
    /// rescaled by the same factor.
    pub fn with_unemployment_weight(
        worker_count: u64,
        firm_count: u64,
        capital_per_firm: f64,
        min_wage: f64,
        min_labor: f64,
        unemployment_weight: f64,
    ) -> Result<Self, MarketError> {
        if worker_count == 0 || firm_count == 0 {
            return Err(MarketError::InvalidSpec("counts must be at least 1".into()));
        }
        if !capital_per_firm.is_finite() || !min_wage.is_finite() || !min_labor.is_finite() {
            return Err(MarketError::InvalidSpec("parameters must be finite".into()));
        }
        if min_wage < 0.0 {
            return Err(MarketError::InvalidSpec("min_wage must be nonnegative".into()));
        }
        if min_labor <= 0.0 {
            return Err(MarketError::InvalidSpec("min_labor must be positive".into()));
        }
        if capital_per_firm <= min_wage {
            return Err(MarketError::InvalidSpec(
                "capital per firm must exceed the minimum wage".into(),
            ));
        }
        if unemployment_weight <= 0.0 || !unemployment_weight.is_finite() {
            return Err(MarketError::InvalidSpec(
                "unemployment weight must be positive and finite".into(),
            ));
        }
        Ok(Self {
            worker_count,
            firm_count,
            capital_per_firm,
            min_wage,
            min_labor,
            unemployment_weight,
        })
    }

    pub fn worker_count(&self) -> u64 {
        self.worker_count
    }

    pub fn firm_count(&self) -> u64 {
        self.firm_count
    }

    pub fn capital_per_firm(&self) -> f64 {
        self.capital_per_firm
    }

    pub fn min_wage(&self) -> f64 {
        self.min_wage
    }

    pub fn min_labor(&self) -> f64 {
        self.min_labor
    }

    pub fn unemployment_weight(&self) -> f64 {
        self.unemployment_weight
    }

    /// Aggregate capital spent on wages.
    pub fn total_capital(&self) -> f64 {
        self.capital_per_firm * self.firm_count as f64
    }
}

/// Entropic price vector: wage price in 1/money, labor price in 1/labor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropicPrices {
    pi_wage: f64,
    pi_labor: f64,
}

impl EntropicPrices {
    pub fn new(pi_wage: f64, pi_labor: f64) -> Result<Self, MarketError> {
        if !pi_wage.is_finite() || !pi_labor.is_finite() || pi_wage <= 0.0 || pi_labor <= 0.0 {
            return Err(MarketError::NonPositivePrices);
        }
        Ok(Self { pi_wage, pi_labor })
    }

    pub fn pi_wage(&self) -> f64 {
        self.pi_wage
    }

    pub fn pi_labor(&self) -> f64 {
        self.pi_labor
    }
}

/// Converged market solution with the wage temperature and the residuals of
/// the two clearing conditions re-evaluated at the returned prices.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketSolution {
    pub prices: EntropicPrices,
    /// Expected number of employed workers (real-valued).
    pub employed_count: f64,
    pub unemployed_count: f64,
    /// Mean wage per employed worker, `min_wage + T_w`.
    pub mean_wage: f64,
    /// Mean labor absorbed per firm, `min_labor + 1/pi_labor`.
    pub mean_labor: f64,
    /// Wage temperature `T_w = 1/pi_wage`.
    pub wage_temperature: f64,
    /// (wage clearing, labor clearing) residuals at the returned prices.
    pub clearing_residuals: [f64; 2],
}

/// Unnormalized statistical weight `e^{-pi . x}` of a trade vector whose
/// components are (money received, labor received). The caller normalizes
/// over whatever offer set is in play.
pub fn trade_probability(trade: [f64; 2], prices: &EntropicPrices) -> f64 {
    (-prices.pi_wage * trade[0] - prices.pi_labor * trade[1]).exp()
}

/// Conditional means over the offer sets: the employed-worker wage
/// `min_wage + 1/pi_wage` and the per-firm labor `min_labor + 1/pi_labor`,
/// both shifted exponentials.
pub fn conditional_means(spec: &LaborMarketSpec, prices: &EntropicPrices) -> (f64, f64) {
    (
        spec.min_wage + 1.0 / prices.pi_wage,
        spec.min_labor + 1.0 / prices.pi_labor,
    )
}

/// Employment probability of a single worker at the given prices:
/// the employed-offer measure `Z_e = e^{pi_l - pi_w w_0} / pi_w` against the
/// idle-state weight. Evaluated as `1/(1 + mu e^{-t})` with
/// `t = ln Z_e`, which stays finite however large `Z_e` grows.
fn employment_probability(spec: &LaborMarketSpec, prices: &EntropicPrices) -> f64 {
    let log_employed_measure =
        prices.pi_labor - prices.pi_wage * spec.min_wage - prices.pi_wage.ln();
    1.0 / (1.0 + spec.unemployment_weight * (-log_employed_measure).exp())
}

/// Statistical clearing residuals at the given prices: wage side
/// `N_e <w> - K N_f` and labor side `N_f <l> - N_e`.
pub fn clearing_residuals(
    spec: &LaborMarketSpec,
    prices: &EntropicPrices,
) -> Result<[f64; 2], MarketError> {
    let (mean_wage, mean_labor) = conditional_means(spec, prices);
    let employed = employment_probability(spec, prices) * spec.worker_count as f64;
    Ok([
        employed * mean_wage - spec.total_capital(),
        spec.firm_count as f64 * mean_labor - employed,
    ])
}

/// Solves for the entropic prices that zero both clearing residuals.
///
/// The wage condition pins the employed count as a function of the wage
/// price, which reduces the system to one dimension; a bracketing bisection
/// over the employment probability finds the labor-clearing root, and a
/// damped Newton iteration in log-price coordinates then polishes both
/// residuals below the certification tolerance.
pub fn solve_equilibrium(spec: &LaborMarketSpec) -> Result<MarketSolution, MarketError> {
    let workers = spec.worker_count as f64;
    let firms = spec.firm_count as f64;
    let capital = spec.total_capital();
    if capital <= spec.min_wage {
        return Err(MarketError::InfeasibleSpec(
            "total capital cannot pay even one minimum wage".into(),
        ));
    }
    if firms * spec.min_labor >= workers {
        return Err(MarketError::InfeasibleSpec(
            "minimum labor demand exceeds the workforce".into(),
        ));
    }
    if spec.min_wage > 0.0 && capital <= spec.min_wage * firms * spec.min_labor {
        return Err(MarketError::InfeasibleSpec(
            "capital cannot fund the minimum labor demand at the minimum wage".into(),
        ));
    }

    // Wage clearing fixes N_e(pi_w): N_e (w_0 + 1/pi_w) = K N_f. Parametrize
    // by the employment probability p = N_e / N_w instead of pi_w; the wage
    // price follows from 1/pi_w = K N_f / (p N_w) - w_0, which stays
    // positive for p below the capital-exhaustion cap.
    let p_cap = if spec.min_wage > 0.0 {
        (capital / (spec.min_wage * workers)).min(1.0) * (1.0 - 1e-12)
    } else {
        1.0 - 1e-12
    };
    let pi_wage_at = |p: f64| 1.0 / (capital / (p * workers) - spec.min_wage);
    // Log-measure of the employed offer set when the idle weight exactly
    // balances the target employment probability; the labor price that
    // realizes probability p is read off from it.
    let pi_labor_at = |p: f64| {
        let pi_w = pi_wage_at(p);
        (spec.unemployment_weight * p / (1.0 - p)).ln() + pi_w.ln() + pi_w * spec.min_wage
    };
    // Labor residual along the wage-clearing curve.
    let labor_gap = |p: f64| {
        let pi_l = pi_labor_at(p);
        firms * (spec.min_labor + 1.0 / pi_l) - p * workers
    };

    // The labor price is positive only above a threshold probability; its
    // log-measure is strictly increasing in p, so bisect for the threshold.
    let mut lo = p_cap * 1e-14;
    let mut hi = p_cap;
    if pi_labor_at(lo) > 0.0 {
        // Even near-zero employment needs a positive labor price; the root
        // bracket starts at the bottom.
    } else {
        for _ in 0..BISECTION_ITERATIONS {
            let mid = 0.5 * (lo + hi);
            if pi_labor_at(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo = hi; // first probability with a positive labor price
    }
    // Just above the threshold the labor price vanishes and firms' demand
    // blows up (positive gap); at the cap the gap is negative by the
    // feasibility checks. Bisect the sign change.
    let mut hi = p_cap;
    if labor_gap(hi) >= 0.0 {
        return Err(MarketError::InfeasibleSpec(
            "labor demand cannot be met at any feasible employment level".into(),
        ));
    }
    for _ in 0..BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if labor_gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = 0.5 * (lo + hi);
    let mut pi_wage = pi_wage_at(p);
    let mut pi_labor = pi_labor_at(p).max(f64::MIN_POSITIVE);

    // Damped Newton in (ln pi_w, ln pi_l) to certify both residuals.
    let residuals_at = |pi_w: f64, pi_l: f64| -> [f64; 2] {
        let prices = EntropicPrices {
            pi_wage: pi_w,
            pi_labor: pi_l,
        };
        let p = employment_probability(spec, &prices);
        [
            p * workers * (spec.min_wage + 1.0 / pi_w) - capital,
            firms * (spec.min_labor + 1.0 / pi_l) - p * workers,
        ]
    };
    let norm = |r: [f64; 2]| r[0].abs().max(r[1].abs());
    let mut residual = residuals_at(pi_wage, pi_labor);
    for _ in 0..MAX_NEWTON_ITERATIONS {
        if norm(residual) <= RESIDUAL_TOLERANCE * 1e-3 {
            break;
        }
        let prices = EntropicPrices {
            pi_wage,
            pi_labor,
        };
        let p = employment_probability(spec, &prices);
        let mean_wage = spec.min_wage + 1.0 / pi_wage;
        // dp/dpi through the logistic form; p(1-p) is the logistic slope.
        let dp_dpi_w = p * (1.0 - p) * (-spec.min_wage - 1.0 / pi_wage);
        let dp_dpi_l = p * (1.0 - p);
        // Jacobian in log-price coordinates (chain rule multiplies by pi).
        let j00 = (dp_dpi_w * workers * mean_wage - p * workers / (pi_wage * pi_wage)) * pi_wage;
        let j01 = dp_dpi_l * workers * mean_wage * pi_labor;
        let j10 = -dp_dpi_w * workers * pi_wage;
        let j11 = (-firms / (pi_labor * pi_labor) - dp_dpi_l * workers) * pi_labor;
        let det = j00 * j11 - j01 * j10;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let step_u = (residual[0] * j11 - residual[1] * j01) / det;
        let step_v = (residual[1] * j00 - residual[0] * j10) / det;
        // Backtracking line search on the residual norm.
        let mut scale = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let candidate_w = pi_wage * (-scale * step_u).exp();
            let candidate_l = pi_labor * (-scale * step_v).exp();
            if candidate_w > 0.0 && candidate_l > 0.0 {
                let candidate_residual = residuals_at(candidate_w, candidate_l);
                if norm(candidate_residual) < norm(residual) {
                    pi_wage = candidate_w;
                    pi_labor = candidate_l;
                    residual = candidate_residual;
                    improved = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !improved {
            break;
        }
    }

    let prices = EntropicPrices::new(pi_wage, pi_labor)?;
    // Certify independently of the solver loop.
    let certified = clearing_residuals(spec, &prices)?;
    if norm(certified) > RESIDUAL_TOLERANCE {
        return Err(MarketError::NoConvergence {
            residual: norm(certified),
        });
    }
    let employed = employment_probability(spec, &prices) * workers;
    let wage_temperature = 1.0 / pi_wage;
    let (mean_wage, mean_labor) = conditional_means(spec, &prices);
    Ok(MarketSolution {
        prices,
        employed_count: employed,
        unemployed_count: workers - employed,
        mean_wage,
        mean_labor,
        wage_temperature,
        clearing_residuals: certified,
    })
}

/// Draws employed-worker wages from the solution's shifted exponential via
/// the inverse CDF; deterministic for a seeded generator.
pub fn sample_wages(solution: &MarketSolution, count: usize, rng: &mut impl Rng) -> Vec<f64> {
    let floor = solution.mean_wage - solution.wage_temperature;
    (0..count)
        .map(|_| floor - solution.wage_temperature * (1.0 - rng.random::<f64>()).ln())
        .collect()
}
