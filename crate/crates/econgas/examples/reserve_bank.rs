//! Fractional-reserve banking: two money temperatures.
//!
//! With a required reserve ratio R, a monetary base M_b supports positive
//! money up to M_b/R while total debt is capped at M_b(1-R)/R. The
//! stationary balance distribution develops two exponential sides with
//! different temperatures: T+ = M_b/(R N) for positive balances and
//! T- = M_b(1-R)/(R N) for debt.
//!
//! Run with: cargo run --release --example reserve_bank

use econgas::analytics::{fit_exponential, Sample};
use econgas::exchange::{run_replicas, BoundaryCondition, ExchangeRule, SimConfig};
use econgas::money::to_minor;

fn main() {
    let reserve_ratio = 0.8;
    let agents = 500;
    let base_per_agent = 1000.0; // money units
    let replicas = 8;

    let mut config = SimConfig::new(
        agents,
        to_minor(base_per_agent),
        ExchangeRule::Constant(to_minor(10.0)),
    );
    config.boundary = BoundaryCondition::ReserveBank(reserve_ratio);
    config.sweeps = 30_000;
    config.snapshot_every = 1_000;
    config.seed = 2024;

    println!(
        "reserve bank: N={agents}, base M_b/N=${base_per_agent:.0}, R={reserve_ratio}, \
         {} sweeps, {replicas} replicas",
        config.sweeps
    );
    let runs = run_replicas(&config, replicas).expect("valid config");
    let (loans, cap) = runs[0].0.credit_summary().expect("reserve boundary");
    println!(
        "replica 0 credit: {loans} of {cap} minor units drawn ({:.1}% of cap)",
        100.0 * loans as f64 / cap as f64
    );

    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (ledger, _) in &runs {
        for b in ledger.balances_in_units() {
            if b > 0.0 {
                positive.push(b);
            } else if b < 0.0 {
                negative.push(-b);
            }
        }
    }
    println!(
        "pooled final states: {} agents in credit, {} in debt",
        positive.len(),
        negative.len()
    );

    let t_plus_expected = base_per_agent / reserve_ratio;
    let t_minus_expected = base_per_agent * (1.0 - reserve_ratio) / reserve_ratio;
    let plus = fit_exponential(&Sample::new(positive, "$").unwrap(), 0.0).unwrap();
    let minus = fit_exponential(&Sample::new(negative, "$").unwrap(), 0.0).unwrap();
    println!(
        "positive side: fitted T+ = ${:.0} (expected ${:.0}), KS = {:.3}",
        plus.temperature, t_plus_expected, plus.ks_distance
    );
    println!(
        "negative side: fitted T- = ${:.0} (expected ${:.0}), KS = {:.3}",
        minus.temperature, t_minus_expected, minus.ks_distance
    );

    let last = runs[0].1.records().last().unwrap();
    println!(
        "replica 0 final sweep {}: mean ${:.2}, rejected {} of {} attempts",
        last.sweep,
        last.mean,
        last.rejections,
        config.sweeps * agents as u64
    );
}
