//! Debt shifts the exponential without changing its shape.
//!
//! When every agent may borrow up to m_d, balances live on [-m_d, inf) and
//! the stationary distribution is the same exponential measured from the
//! new floor: P(m) ~ exp(-(m + m_d)/T) with T = <m> + m_d. Letting agents
//! go $800 into debt around a $1000 mean heats the system from T = $1000
//! to T = $1800.
//!
//! Run with: cargo run --release --example debt_limit

use econgas::analytics::{fit_exponential, Sample};
use econgas::exchange::{run_sweeps, BoundaryCondition, ExchangeRule, SimConfig};
use econgas::money::{format_minor, to_minor};

fn main() {
    let agents = 500;
    let mean_money = 1000.0;
    let debt_limit = 800.0;

    // T = 1800 here, so $20 steps relax in about (1800/20)^2 = 8100 sweeps.
    let mut config = SimConfig::new(agents, to_minor(mean_money), ExchangeRule::Constant(to_minor(20.0)));
    config.boundary = BoundaryCondition::DebtLimit(to_minor(debt_limit));
    config.sweeps = 40_000;
    config.snapshot_every = 1_000;
    config.seed = 11;

    println!(
        "debt limit: N={agents}, <m>=${mean_money:.0}, floor at -${debt_limit:.0}, {} sweeps",
        config.sweeps
    );
    let (ledger, trace) = run_sweeps(&config).expect("valid config");

    let floor = trace.records().iter().map(|r| r.min).min().unwrap();
    println!(
        "lowest balance ever recorded: {} (floor is -{})",
        format_minor(floor),
        format_minor(to_minor(debt_limit))
    );
    let last = trace.records().last().unwrap();
    println!(
        "final sweep {}: mean {}, total debt outstanding {}",
        last.sweep,
        format_minor(to_minor(last.mean)),
        format_minor(last.debt)
    );

    let sample = Sample::new(ledger.balances_in_units(), "$").unwrap();
    let fit = fit_exponential(&sample, -debt_limit).unwrap();
    println!(
        "fitted temperature T = ${:.2} (expected ${:.2} = mean + debt limit)",
        fit.temperature,
        mean_money + debt_limit
    );
    println!("KS distance to the shifted exponential: {:.4}", fit.ks_distance);
}
