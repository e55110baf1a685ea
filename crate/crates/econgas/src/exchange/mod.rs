//! Seeded Monte Carlo engine for pairwise money exchange.
//!
//! Agents hold signed fixed-point balances in minor units (1 money unit =
//! 100 minor units). Each time step draws an ordered pair, computes a
//! transfer per the exchange rule, and applies it only if the payer's
//! post-balance respects the boundary condition; the same rounded amount is
//! debited and credited, so the total is conserved exactly as long as
//! interest stays disabled. Runs are bit-reproducible for a given seed.

mod boundary;
mod rules;

pub use boundary::{BoundaryCondition, InterestPolicy};
pub use rules::{ExchangeRule, SavingSpec};

use crate::money::{Money, MINOR_PER_UNIT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("stationarity needs at least {required} snapshots; trace has {found}")]
    TooFewSnapshots { found: usize, required: usize },
}

/// Full description of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub agent_count: usize,
    /// Starting balance of every agent, in minor units.
    pub initial_balance: Money,
    pub rule: ExchangeRule,
    pub boundary: BoundaryCondition,
    pub interest: InterestPolicy,
    pub seed: u64,
    pub sweeps: u64,
    /// Snapshot cadence in sweeps; sweep 0 and the final sweep are always
    /// recorded.
    pub snapshot_every: u64,
    /// Histogram bin width for the entropy trace, in minor units.
    pub entropy_bin_width: Money,
}

impl SimConfig {
    /// Config with the common defaults: no debt, no interest, seed 0,
    /// 1000 sweeps snapshotted every 10, entropy bins of a twentieth of the
    /// initial balance.
    pub fn new(agent_count: usize, initial_balance: Money, rule: ExchangeRule) -> Self {
        Self {
            agent_count,
            initial_balance,
            rule,
            boundary: BoundaryCondition::NoDebt,
            interest: InterestPolicy::disabled(),
            seed: 0,
            sweeps: 1000,
            snapshot_every: 10,
            entropy_bin_width: (initial_balance / 20).max(MINOR_PER_UNIT),
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let invalid = |msg: String| Err(SimError::InvalidConfig(msg));
        if self.agent_count < 2 {
            return invalid("at least 2 agents are required".into());
        }
        if self.sweeps < 1 {
            return invalid("at least 1 sweep is required".into());
        }
        if self.snapshot_every < 1 {
            return invalid("snapshot cadence must be at least 1 sweep".into());
        }
        if self.entropy_bin_width <= 0 {
            return invalid("entropy bin width must be positive".into());
        }
        if let Err(msg) = self.rule.validate(self.agent_count) {
            return invalid(msg);
        }
        if let Err(msg) = self.boundary.validate() {
            return invalid(msg);
        }
        if let Err(msg) = self.interest.validate() {
            return invalid(msg);
        }
        let floor = match self.boundary {
            BoundaryCondition::NoDebt => Some(0),
            BoundaryCondition::DebtLimit(limit) => Some(-limit),
            // The bank needs a nonnegative monetary base to lend against.
            BoundaryCondition::ReserveBank(_) => Some(0),
            BoundaryCondition::UnlimitedDebt => None,
        };
        if let Some(floor) = floor {
            if self.initial_balance < floor {
                return invalid(format!(
                    "initial balance {} violates the boundary floor {}",
                    self.initial_balance, floor
                ));
            }
        }
        if (self.initial_balance.checked_mul(self.agent_count as Money)).is_none() {
            return invalid("total initial money overflows the ledger".into());
        }
        Ok(())
    }
}

/// Loan accounts layered on the net balances under [`BoundaryCondition::ReserveBank`].
///
/// An agent's deposits are `balance + loans`, kept nonnegative; total loans
/// never exceed the cap `M_b (1 - R)/R`.
#[derive(Debug, Clone, PartialEq)]
struct CreditBook {
    loans: Vec<Money>,
    total_loans: Money,
    cap: Money,
}

/// The state of all agent balances at a point in simulation time.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentLedger {
    balances: Vec<Money>,
    total_initial: Money,
    time_sweeps: u64,
    rejected: u64,
    credit: Option<CreditBook>,
}

/// Transaction attempt result; rejection leaves the ledger untouched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Applied,
    Rejected,
}

/// Stationarity verdict over a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StationarityVerdict {
    Stationary,
    NonStationary,
    Undetermined,
}

impl fmt::Display for StationarityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StationarityVerdict::Stationary => "stationary",
            StationarityVerdict::NonStationary => "non_stationary",
            StationarityVerdict::Undetermined => "undetermined",
        })
    }
}

/// One trace snapshot. Money statistics are reported in money units; the
/// fixed-point columns stay in minor units until serialization.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub sweep: u64,
    /// Per-agent entropy of the binned balance distribution.
    pub entropy: f64,
    /// Mean balance in money units.
    pub mean: f64,
    /// Balance variance in squared money units.
    pub variance: f64,
    pub min: Money,
    pub max: Money,
    pub total: Money,
    /// Total debt, the summed magnitude of negative balances.
    pub debt: Money,
    /// Rejected transactions since the start of the run (cumulative).
    pub rejections: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimTrace {
    records: Vec<TraceRecord>,
}

impl SimTrace {
    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }
}

impl AgentLedger {
    pub fn balances(&self) -> &[Money] {
        &self.balances
    }

    /// Balances converted to money units.
    pub fn balances_in_units(&self) -> Vec<f64> {
        self.balances
            .iter()
            .map(|&b| b as f64 / MINOR_PER_UNIT as f64)
            .collect()
    }

    pub fn total_initial(&self) -> Money {
        self.total_initial
    }

    pub fn time_sweeps(&self) -> u64 {
        self.time_sweeps
    }

    pub fn rejected_transactions(&self) -> u64 {
        self.rejected
    }

    pub fn total(&self) -> Money {
        self.balances.iter().sum()
    }

    /// Summed magnitude of negative balances.
    pub fn total_debt(&self) -> Money {
        self.balances.iter().map(|&b| (-b).max(0)).sum()
    }

    /// Outstanding loans and the loan cap, under a reserve-bank boundary.
    pub fn credit_summary(&self) -> Option<(Money, Money)> {
        self.credit.as_ref().map(|c| (c.total_loans, c.cap))
    }

    /// Per-agent outstanding loans under a reserve-bank boundary; an
    /// agent's deposits are its net balance plus its loans.
    pub fn outstanding_loans(&self) -> Option<&[Money]> {
        self.credit.as_ref().map(|c| c.loans.as_slice())
    }

    fn snapshot(&self, bin_width: Money) -> TraceRecord {
        let n = self.balances.len() as f64;
        let total = self.total();
        let mean_minor = total as f64 / n;
        let variance_minor = self
            .balances
            .iter()
            .map(|&b| {
                let d = b as f64 - mean_minor;
                d * d
            })
            .sum::<f64>()
            / n;
        let unit = MINOR_PER_UNIT as f64;
        TraceRecord {
            sweep: self.time_sweeps,
            entropy: ledger_entropy(self, bin_width),
            mean: mean_minor / unit,
            variance: variance_minor / (unit * unit),
            min: *self.balances.iter().min().unwrap(),
            max: *self.balances.iter().max().unwrap(),
            total,
            debt: self.total_debt(),
            rejections: self.rejected,
        }
    }
}

/// Creates the starting ledger: every agent holds the same balance, time 0.
pub fn init_ledger(config: &SimConfig) -> Result<AgentLedger, SimError> {
    config.validate()?;
    let total_initial = config.initial_balance * config.agent_count as Money;
    let credit = match config.boundary {
        BoundaryCondition::ReserveBank(ratio) => Some(CreditBook {
            loans: vec![0; config.agent_count],
            total_loans: 0,
            cap: (total_initial as f64 * (1.0 - ratio) / ratio).round() as Money,
        }),
        _ => None,
    };
    Ok(AgentLedger {
        balances: vec![config.initial_balance; config.agent_count],
        total_initial,
        time_sweeps: 0,
        rejected: 0,
        credit,
    })
}

/// Applies a payment of `amount` if the boundary permits it; exactly the
/// same amount is debited and credited.
fn try_pay(
    ledger: &mut AgentLedger,
    boundary: &BoundaryCondition,
    payer: usize,
    payee: usize,
    amount: Money,
) -> Outcome {
    debug_assert!(amount >= 0);
    if amount == 0 {
        return Outcome::Applied;
    }
    match boundary {
        BoundaryCondition::NoDebt => {
            if ledger.balances[payer] < amount {
                return Outcome::Rejected;
            }
        }
        BoundaryCondition::DebtLimit(limit) => {
            if ledger.balances[payer] - amount < -limit {
                return Outcome::Rejected;
            }
        }
        BoundaryCondition::UnlimitedDebt => {}
        BoundaryCondition::ReserveBank(_) => {
            let book = ledger
                .credit
                .as_mut()
                .expect("reserve-bank ledger carries a credit book");
            let deposits = ledger.balances[payer] + book.loans[payer];
            let headroom = (book.cap - book.total_loans).max(0);
            if deposits + headroom < amount {
                return Outcome::Rejected;
            }
            // Borrow exactly the shortfall; the proceeds land in the
            // payer's deposit account, so the net balance still moves by
            // the plain transfer below. The payee's receipt credits
            // deposits; loans are retired by the refinancing churn instead.
            let shortfall = (amount - deposits).max(0);
            book.loans[payer] += shortfall;
            book.total_loans += shortfall;
        }
    }
    ledger.balances[payer] -= amount;
    ledger.balances[payee] += amount;
    Outcome::Applied
}

/// One round of bank refinancing under the reserve boundary: a random agent
/// repays a loan quantum out of deposits, and another re-borrows against
/// the freed headroom. Both moves pair a deposit change with an equal loan
/// change, so no agent's net balance moves; the churn keeps total credit at
/// the regulatory cap and lets the loan pool mix independently of the trade
/// flow.
fn refinance_churn(ledger: &mut AgentLedger, quantum: Money, rng: &mut impl Rng) {
    let n = ledger.balances.len();
    let Some(book) = ledger.credit.as_mut() else {
        return;
    };
    if quantum <= 0 {
        return;
    }
    // Both legs move the full quantum or nothing at all: partial moves at
    // the floors would bias the stationary loan distribution away from the
    // equal-weight microstate measure, the same way partial payments would
    // bias the money game.
    let repayer = rng.random_range(0..n);
    let deposits = ledger.balances[repayer] + book.loans[repayer];
    if book.loans[repayer] >= quantum && deposits >= quantum {
        book.loans[repayer] -= quantum;
        book.total_loans -= quantum;
    }

    let borrower = rng.random_range(0..n);
    if book.cap - book.total_loans >= quantum {
        book.loans[borrower] += quantum;
        book.total_loans += quantum;
    }
}

/// One transaction attempt: draw an ordered pair, compute the transfer per
/// the rule, and apply it if the boundary allows. Rejection is an outcome,
/// not an error, and leaves the ledger unchanged.
pub fn step_transaction(
    ledger: &mut AgentLedger,
    rule: &ExchangeRule,
    boundary: &BoundaryCondition,
    rng: &mut impl Rng,
) -> Outcome {
    let n = ledger.balances.len();
    let i = rng.random_range(0..n);
    let j = loop {
        let j = rng.random_range(0..n);
        if j != i {
            break j;
        }
    };
    let (payer, payee, amount) = match rule {
        ExchangeRule::Constant(dm) => (i, j, *dm),
        ExchangeRule::UniformRandom(max) => {
            // Uniform over (0, max], rounded to the nearest minor unit.
            (i, j, ((1.0 - rng.random::<f64>()) * *max as f64).round() as Money)
        }
        ExchangeRule::Proportional(gamma) => {
            (i, j, (gamma * ledger.balances[i].max(0) as f64).round() as Money)
        }
        ExchangeRule::SavingPropensity(spec) => {
            let (li, lj) = (spec.lambda(i), spec.lambda(j));
            let (mi, mj) = (ledger.balances[i] as f64, ledger.balances[j] as f64);
            let pool = (1.0 - li) * mi + (1.0 - lj) * mj;
            let epsilon = rng.random::<f64>();
            // Round the first agent's new balance; the pair's exact sum is
            // preserved, so the rounding residual lands on the second agent.
            let new_i = (li * mi + epsilon * pool).round() as Money;
            let delta = ledger.balances[i] - new_i;
            if delta >= 0 {
                (i, j, delta)
            } else {
                (j, i, -delta)
            }
        }
    };
    let outcome = try_pay(ledger, boundary, payer, payee, amount);
    if outcome == Outcome::Rejected {
        ledger.rejected += 1;
    }
    if matches!(boundary, BoundaryCondition::ReserveBank(_)) {
        refinance_churn(ledger, amount, rng);
    }
    outcome
}

/// Accrues one sweep of interest: positive positions grow at the deposit
/// rate, negative ones at the loan rate, each rounded to minor units. The
/// bank sits outside the agent system, so the ledger total drifts.
pub fn apply_interest(ledger: &mut AgentLedger, policy: &InterestPolicy) {
    if !policy.enabled {
        return;
    }
    let grow = |amount: Money, rate: f64| (amount as f64 * (1.0 + rate)).round() as Money;
    if let Some(book) = ledger.credit.as_mut() {
        // Deposit and loan sub-accounts accrue separately; the net balance
        // is re-derived from them.
        let mut total_loans = 0;
        for (balance, loan) in ledger.balances.iter_mut().zip(&mut book.loans) {
            let deposits = grow(*balance + *loan, policy.deposit_rate_per_sweep);
            *loan = grow(*loan, policy.loan_rate_per_sweep);
            total_loans += *loan;
            *balance = deposits - *loan;
        }
        book.total_loans = total_loans;
        return;
    }
    for balance in &mut ledger.balances {
        let rate = if *balance >= 0 {
            policy.deposit_rate_per_sweep
        } else {
            policy.loan_rate_per_sweep
        };
        *balance = grow(*balance, rate);
    }
}

/// Runs the configured simulation: `sweeps` sweeps of N transaction attempts
/// each, interest once per sweep if enabled, snapshots at sweep 0, every
/// `snapshot_every` sweeps, and the final sweep. Output is bit-identical
/// for identical config (the seed included).
pub fn run_sweeps(config: &SimConfig) -> Result<(AgentLedger, SimTrace), SimError> {
    let mut ledger = init_ledger(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trace = SimTrace {
        records: vec![ledger.snapshot(config.entropy_bin_width)],
    };
    for sweep in 1..=config.sweeps {
        for _ in 0..config.agent_count {
            step_transaction(&mut ledger, &config.rule, &config.boundary, &mut rng);
        }
        apply_interest(&mut ledger, &config.interest);
        ledger.time_sweeps = sweep;
        if sweep % config.snapshot_every == 0 || sweep == config.sweeps {
            trace.records.push(ledger.snapshot(config.entropy_bin_width));
        }
    }
    Ok((ledger, trace))
}

/// Runs `replicas` independent copies of the config concurrently; replica
/// `r` seeds its generator with `seed XOR r`, so replica 0 reproduces the
/// base run exactly.
pub fn run_replicas(
    config: &SimConfig,
    replicas: u32,
) -> Result<Vec<(AgentLedger, SimTrace)>, SimError> {
    config.validate()?;
    (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut replica_config = config.clone();
            replica_config.seed = config.seed ^ r as u64;
            run_sweeps(&replica_config)
        })
        .collect()
}

/// Entropy per agent of the binned balance distribution,
/// `-sum_k P_k ln P_k` over bins `[k w, (k+1) w)`; negative balances fall
/// into negative bins.
pub fn ledger_entropy(ledger: &AgentLedger, bin_width: Money) -> f64 {
    assert!(bin_width > 0, "bin width must be positive");
    let mut bins: BTreeMap<Money, u64> = BTreeMap::new();
    for &balance in &ledger.balances {
        *bins.entry(balance.div_euclid(bin_width)).or_insert(0) += 1;
    }
    let n = ledger.balances.len() as f64;
    let entropy: f64 = bins
        .values()
        .map(|&count| {
            let p = count as f64 / n;
            -p * p.ln()
        })
        .sum();
    // A single occupied bin sums to IEEE -0; report plain zero.
    entropy + 0.0
}

/// Ordinary least squares of y on x: slope, its t-statistic, and R².
fn linear_trend(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    if sxx == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let slope = sxy / sxx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - mean_y - slope * (x - mean_x);
            r * r
        })
        .sum();
    let sst: f64 = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum();
    let r_squared = if sst > 0.0 { 1.0 - sse / sst } else { 0.0 };
    let se_squared = sse / (n - 2.0) / sxx;
    let t = if se_squared > 0.0 {
        slope / se_squared.sqrt()
    } else if slope == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    (slope, t, r_squared)
}

/// Classifies a trace: stationary when the entropy means of the last two
/// quarters agree within 0.5% relative and the variance shows no
/// significant linear trend over the last half (|t| < 2); non-stationary
/// when variance grows linearly (R² > 0.9, positive slope); undetermined
/// otherwise.
pub fn detect_stationarity(trace: &SimTrace) -> Result<StationarityVerdict, SimError> {
    const REQUIRED: usize = 20;
    let records = &trace.records;
    if records.len() < REQUIRED {
        return Err(SimError::TooFewSnapshots {
            found: records.len(),
            required: REQUIRED,
        });
    }
    let n = records.len();
    let mean_entropy = |slice: &[TraceRecord]| {
        slice.iter().map(|r| r.entropy).sum::<f64>() / slice.len() as f64
    };
    let third = mean_entropy(&records[n / 2..3 * n / 4]);
    let fourth = mean_entropy(&records[3 * n / 4..]);
    let entropy_settled = (fourth - third).abs() / third.abs().max(1e-12) < 0.005;

    let half = &records[n / 2..];
    let sweeps: Vec<f64> = half.iter().map(|r| r.sweep as f64).collect();
    let variances: Vec<f64> = half.iter().map(|r| r.variance).collect();
    let (slope, t, r_squared) = linear_trend(&sweeps, &variances);

    if entropy_settled && t.abs() < 2.0 {
        Ok(StationarityVerdict::Stationary)
    } else if r_squared > 0.9 && slope > 0.0 {
        Ok(StationarityVerdict::NonStationary)
    } else {
        Ok(StationarityVerdict::Undetermined)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base_config(rule: ExchangeRule) -> SimConfig {
        SimConfig::new(500, 100_000, rule)
    }

    #[test]
    fn init_gives_equal_balances_and_zero_entropy() {
        let config = base_config(ExchangeRule::Constant(100));
        let ledger = init_ledger(&config).unwrap();
        assert_eq!(ledger.balances().len(), 500);
        assert!(ledger.balances().iter().all(|&b| b == 100_000));
        assert_eq!(ledger.total(), 50_000_000);
        assert_eq!(ledger.time_sweeps(), 0);
        assert_eq!(ledger_entropy(&ledger, config.entropy_bin_width), 0.0);
    }

    #[test]
    fn init_community_currency_starts_from_nothing() {
        let mut config = SimConfig::new(2, 0, ExchangeRule::Constant(100));
        config.boundary = BoundaryCondition::DebtLimit(50_000);
        let ledger = init_ledger(&config).unwrap();
        assert_eq!(ledger.balances(), &[0, 0]);
        assert_eq!(ledger.total_initial(), 0);
    }

    #[test]
    fn init_rejects_bad_configs() {
        let lonely = SimConfig::new(1, 0, ExchangeRule::Constant(100));
        assert!(matches!(
            init_ledger(&lonely),
            Err(SimError::InvalidConfig(_))
        ));
        let mut negative = SimConfig::new(2, -100, ExchangeRule::Constant(100));
        assert!(init_ledger(&negative).is_err());
        negative.boundary = BoundaryCondition::UnlimitedDebt;
        assert!(init_ledger(&negative).is_ok());
        let bad_rate = {
            let mut c = base_config(ExchangeRule::Constant(100));
            c.interest = InterestPolicy::new(0.5, 0.0);
            c
        };
        assert!(init_ledger(&bad_rate).is_err());
        let bad_gamma = base_config(ExchangeRule::Proportional(1.0));
        assert!(init_ledger(&bad_gamma).is_err());
        let short_list =
            base_config(ExchangeRule::SavingPropensity(SavingSpec::PerAgent(vec![0.5; 3])));
        assert!(init_ledger(&short_list).is_err());
    }

    #[test]
    fn broke_agents_cannot_pay_a_fixed_amount() {
        let config = SimConfig::new(2, 0, ExchangeRule::Constant(100));
        let mut ledger = init_ledger(&config).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let outcome =
            step_transaction(&mut ledger, &config.rule, &config.boundary, &mut rng);
        assert_eq!(outcome, Outcome::Rejected);
        assert_eq!(ledger.balances(), &[0, 0]);
        assert_eq!(ledger.rejected_transactions(), 1);
    }

    #[test]
    fn constant_transfer_moves_exactly_the_amount() {
        let config = SimConfig::new(2, 100_000, ExchangeRule::Constant(100));
        let mut ledger = init_ledger(&config).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let outcome =
            step_transaction(&mut ledger, &config.rule, &config.boundary, &mut rng);
        assert_eq!(outcome, Outcome::Applied);
        let mut sorted = ledger.balances().to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![99_900, 100_100]);
        assert_eq!(ledger.total(), 200_000);
    }

    #[test]
    fn proportional_transfer_takes_the_fraction_of_the_payer() {
        let config = SimConfig::new(2, 40_000, ExchangeRule::Proportional(0.25));
        let mut ledger = init_ledger(&config).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        step_transaction(&mut ledger, &config.rule, &config.boundary, &mut rng);
        let mut sorted = ledger.balances().to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![30_000, 50_000]);
    }

    #[test]
    fn interest_accrues_per_side_and_drifts_the_total() {
        let mut ledger = AgentLedger {
            balances: vec![10_000, -10_000],
            total_initial: 0,
            time_sweeps: 0,
            rejected: 0,
            credit: None,
        };
        apply_interest(&mut ledger, &InterestPolicy::new(0.001, 0.002));
        assert_eq!(ledger.balances(), &[10_010, -10_020]);
        assert_eq!(ledger.total(), -10);

        let mut unchanged = ledger.clone();
        apply_interest(&mut unchanged, &InterestPolicy::new(0.0, 0.0));
        assert_eq!(unchanged.balances(), ledger.balances());

        let mut positive = AgentLedger {
            balances: vec![5_000, 7_000],
            total_initial: 12_000,
            time_sweeps: 0,
            rejected: 0,
            credit: None,
        };
        apply_interest(&mut positive, &InterestPolicy::new(0.005, 0.0));
        assert!(positive.total() > 12_000);
    }

    #[test]
    fn conservation_and_floors_hold_across_rules_and_boundaries() {
        let rules = [
            ExchangeRule::Constant(1_000),
            ExchangeRule::UniformRandom(10_000),
            ExchangeRule::Proportional(0.25),
            ExchangeRule::SavingPropensity(SavingSpec::Common(0.5)),
        ];
        let boundaries = [
            BoundaryCondition::NoDebt,
            BoundaryCondition::DebtLimit(80_000),
            BoundaryCondition::ReserveBank(0.8),
            BoundaryCondition::UnlimitedDebt,
        ];
        for rule in &rules {
            for boundary in &boundaries {
                let mut config = SimConfig::new(50, 100_000, rule.clone());
                config.boundary = *boundary;
                config.seed = 99;
                let mut ledger = init_ledger(&config).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                for _ in 0..5_000 {
                    step_transaction(&mut ledger, rule, boundary, &mut rng);
                    assert_eq!(ledger.total(), ledger.total_initial());
                }
                let min = *ledger.balances().iter().min().unwrap();
                match boundary {
                    BoundaryCondition::NoDebt => assert!(min >= 0),
                    BoundaryCondition::DebtLimit(limit) => assert!(min >= -limit),
                    BoundaryCondition::ReserveBank(_) => {
                        let (loans, cap) = ledger.credit_summary().unwrap();
                        assert!(loans <= cap, "loans {loans} exceed cap {cap}");
                        assert!(ledger.total_debt() <= cap);
                        // Deposits never go negative.
                        let book = ledger.credit.as_ref().unwrap();
                        for (b, l) in ledger.balances.iter().zip(&book.loans) {
                            assert!(*l >= 0);
                            assert!(b + l >= 0);
                        }
                    }
                    BoundaryCondition::UnlimitedDebt => {}
                }
            }
        }
    }

    #[test]
    fn runs_are_bit_identical_per_seed() {
        let mut config = base_config(ExchangeRule::UniformRandom(10_000));
        config.sweeps = 200;
        config.snapshot_every = 20;
        config.seed = 42;
        let (ledger_a, trace_a) = run_sweeps(&config).unwrap();
        let (ledger_b, trace_b) = run_sweeps(&config).unwrap();
        assert_eq!(ledger_a, ledger_b);
        assert_eq!(trace_a, trace_b);

        config.seed = 43;
        let (ledger_c, _) = run_sweeps(&config).unwrap();
        assert_ne!(ledger_a.balances(), ledger_c.balances());
    }

    #[test]
    fn replicas_split_the_seed_stream() {
        let mut config = base_config(ExchangeRule::Constant(1_000));
        config.sweeps = 50;
        config.seed = 7;
        let replicas = run_replicas(&config, 3).unwrap();
        assert_eq!(replicas.len(), 3);
        let (base_ledger, _) = run_sweeps(&config).unwrap();
        assert_eq!(replicas[0].0, base_ledger);
        assert_ne!(replicas[1].0.balances(), replicas[0].0.balances());
    }

    #[test]
    fn trace_is_ordered_and_starts_at_zero_entropy() {
        let mut config = base_config(ExchangeRule::Constant(1_000));
        config.sweeps = 105;
        config.snapshot_every = 10;
        let (_, trace) = run_sweeps(&config).unwrap();
        let records = trace.records();
        assert_eq!(records[0].sweep, 0);
        assert_eq!(records[0].entropy, 0.0);
        assert_eq!(records.last().unwrap().sweep, 105);
        assert!(records.windows(2).all(|w| w[0].sweep < w[1].sweep));
        assert!(records.iter().all(|r| r.total == 50_000_000));
        assert!(records.last().unwrap().entropy > 0.0);
    }

    #[test]
    fn entropy_of_two_even_bins_is_ln_two() {
        let ledger = AgentLedger {
            balances: vec![100, 100, 300, 300],
            total_initial: 800,
            time_sweeps: 0,
            rejected: 0,
            credit: None,
        };
        assert_relative_eq!(
            ledger_entropy(&ledger, 200),
            std::f64::consts::LN_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn entropy_matches_discretized_exponential() {
        // Geometric bin masses p_k = (1 - a) a^k with a = e^{-w/T} give
        // H = -ln(1 - a) - a ln(a) / (1 - a).
        let temperature = 100_000.0;
        let width = (temperature / 20.0) as Money;
        let a = (-(width as f64) / temperature).exp();
        let analytic = -(1.0 - a).ln() - a * a.ln() / (1.0 - a);

        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let balances: Vec<Money> = (0..1_000_000)
            .map(|_| (-temperature * (1.0 - rng.random::<f64>()).ln()).round() as Money)
            .collect();
        let ledger = AgentLedger {
            total_initial: balances.iter().sum(),
            balances,
            time_sweeps: 0,
            rejected: 0,
            credit: None,
        };
        let entropy = ledger_entropy(&ledger, width);
        assert!(
            (entropy - analytic).abs() / analytic < 0.02,
            "entropy {entropy} vs analytic {analytic}"
        );
    }

    #[test]
    fn stationarity_detection_separates_regimes() {
        // Small stakes relative to the transfer size equilibrate quickly.
        let mut settled = SimConfig::new(300, 10_000, ExchangeRule::Constant(1_000));
        settled.sweeps = 3_000;
        settled.snapshot_every = 50;
        settled.seed = 5;
        let (_, trace) = run_sweeps(&settled).unwrap();
        assert_eq!(
            detect_stationarity(&trace).unwrap(),
            StationarityVerdict::Stationary
        );

        let mut diffusive = settled.clone();
        diffusive.boundary = BoundaryCondition::UnlimitedDebt;
        let (_, trace) = run_sweeps(&diffusive).unwrap();
        assert_eq!(
            detect_stationarity(&trace).unwrap(),
            StationarityVerdict::NonStationary
        );

        let mut short = settled.clone();
        short.sweeps = 100;
        short.snapshot_every = 50;
        let (_, trace) = run_sweeps(&short).unwrap();
        assert_eq!(
            detect_stationarity(&trace),
            Err(SimError::TooFewSnapshots {
                found: 3,
                required: 20
            })
        );
    }

    #[test]
    fn saving_rule_conserves_with_heterogeneous_propensities() {
        let lambdas: Vec<f64> = (0..40).map(|i| i as f64 / 40.0).collect();
        let mut config = SimConfig::new(
            40,
            50_000,
            ExchangeRule::SavingPropensity(SavingSpec::PerAgent(lambdas)),
        );
        config.sweeps = 500;
        config.snapshot_every = 100;
        let (ledger, trace) = run_sweeps(&config).unwrap();
        assert_eq!(ledger.total(), ledger.total_initial());
        assert!(ledger.balances().iter().all(|&b| b >= 0));
        assert!(trace.records().iter().all(|r| r.total == 2_000_000));
    }

    #[test]
    fn reserve_bank_expands_positive_money_toward_the_multiplier() {
        // With R = 0.8 the loan cap is a quarter of the base, so positive
        // money can reach M_b / R once credit saturates.
        let mut config = SimConfig::new(200, 100_000, ExchangeRule::Constant(1_000));
        config.boundary = BoundaryCondition::ReserveBank(0.8);
        config.sweeps = 2_000;
        config.snapshot_every = 100;
        config.seed = 11;
        let (ledger, _) = run_sweeps(&config).unwrap();
        let (loans, cap) = ledger.credit_summary().unwrap();
        assert_eq!(cap, 5_000_000);
        assert!(
            loans > cap * 9 / 10,
            "credit should be nearly saturated, loans = {loans}"
        );
        assert_eq!(ledger.total(), ledger.total_initial());
        let positive: Money = ledger.balances().iter().filter(|&&b| b > 0).sum();
        assert!(positive > ledger.total_initial());
    }

    #[test]
    fn unlimited_debt_spreads_without_bound() {
        let mut config = SimConfig::new(200, 0, ExchangeRule::Constant(1_000));
        config.boundary = BoundaryCondition::UnlimitedDebt;
        config.sweeps = 2_000;
        config.snapshot_every = 100;
        let (_, trace) = run_sweeps(&config).unwrap();
        let records = trace.records();
        let early = records[2].variance;
        let late = records.last().unwrap().variance;
        assert!(late > 5.0 * early, "variance must keep growing");
    }
}
