//! Without a debt floor there is no stationary state.
//!
//! Unlimited borrowing removes the lower bound on balances, so no
//! normalizable equilibrium exists: the mean stays pinned by conservation
//! while the variance grows without limit, like free diffusion. The trace
//! diagnostics flag the run as non-stationary from the linear variance
//! trend.
//!
//! Run with: cargo run --release --example unlimited_debt

use econgas::exchange::{
    detect_stationarity, run_sweeps, BoundaryCondition, ExchangeRule, SimConfig,
};
use econgas::money::to_minor;

fn main() {
    let agents = 500;

    let mut config = SimConfig::new(agents, to_minor(1000.0), ExchangeRule::Constant(to_minor(20.0)));
    config.boundary = BoundaryCondition::UnlimitedDebt;
    config.sweeps = 10_000;
    config.snapshot_every = 200;
    config.seed = 3;

    println!("unlimited debt: N={agents}, <m>=$1000, {} sweeps", config.sweeps);
    let (_, trace) = run_sweeps(&config).expect("valid config");

    let records = trace.records();
    for r in records.iter().step_by(records.len() / 5) {
        println!(
            "sweep {:>6}: variance {:>12.0} $^2, min balance ${:.2}",
            r.sweep,
            r.variance,
            r.min as f64 / 100.0
        );
    }
    let quarter = &records[records.len() / 4];
    let last = records.last().unwrap();
    println!(
        "variance grew {:.1}x since the quarter mark while the mean moved ${:.2}",
        last.variance / quarter.variance,
        (last.mean - quarter.mean).abs()
    );

    let verdict = detect_stationarity(&trace).expect("enough snapshots");
    println!("stationarity verdict: {verdict}");
}
