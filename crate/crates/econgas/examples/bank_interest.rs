//! Interest perturbs the exponential without destroying it.
//!
//! With a debt limit in place, paying deposit interest on positive
//! balances and charging loan interest on negative ones injects and
//! removes money each sweep, so the total is no longer conserved to the
//! cent. As long as the per-sweep rates are small the stationary shape
//! stays exponential and only the temperature shifts with the drifting
//! mean.
//!
//! Run with: cargo run --release --example bank_interest

use econgas::analytics::{fit_exponential, Sample};
use econgas::exchange::{
    run_sweeps, BoundaryCondition, ExchangeRule, InterestPolicy, SimConfig,
};
use econgas::money::{format_minor, to_minor};

fn main() {
    let debt_limit = 800.0;
    let mut config = SimConfig::new(500, to_minor(1000.0), ExchangeRule::Constant(to_minor(20.0)));
    config.boundary = BoundaryCondition::DebtLimit(to_minor(debt_limit));
    config.sweeps = 40_000;
    config.snapshot_every = 1_000;
    config.seed = 23;

    println!("bank interest: N=500, <m>=$1000, debt limit $800, {} sweeps", config.sweeps);
    for (label, policy) in [
        ("no interest            ", InterestPolicy::disabled()),
        ("deposits 0.02bp a sweep", InterestPolicy::new(2e-6, 0.0)),
        ("loans 0.20bp a sweep   ", InterestPolicy::new(0.0, 2e-5)),
    ] {
        config.interest = policy;
        let (ledger, trace) = run_sweeps(&config).expect("valid config");
        let last = trace.records().last().unwrap();
        let fit = fit_exponential(
            &Sample::new(ledger.balances_in_units(), "$").unwrap(),
            -debt_limit,
        )
        .unwrap();
        println!(
            "  {label}  total {:>12}  fitted T = ${:>7.2}  KS = {:.4}",
            format_minor(last.total),
            fit.temperature,
            fit.ks_distance
        );
    }
    println!("deposit interest heats the gas, loan interest cools it; the shape survives");
}
