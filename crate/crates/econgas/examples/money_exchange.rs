//! Basic kinetic money exchange: random pairs, fixed transfer, no debt.
//!
//! Money is conserved at every transaction, so the mean balance is pinned
//! at its initial value while the distribution relaxes to the exponential
//! (Boltzmann-Gibbs) form P(m) ~ exp(-m/T) with T = <m>. Entropy climbs
//! from zero (everyone identical) to its stationary plateau along the way.
//!
//! Run with: cargo run --release --example money_exchange

use econgas::analytics::{fit_exponential, Sample};
use econgas::exchange::{run_sweeps, ExchangeRule, SimConfig};
use econgas::money::{format_minor, to_minor};

fn main() {
    let agents = 500;
    let mean_money = 1000.0; // money units

    // Balances random-walk in $20 steps, so the relaxation time is about
    // (T / 20)^2 = 2500 sweeps; 20k sweeps is deep in the stationary state.
    let mut config = SimConfig::new(agents, to_minor(mean_money), ExchangeRule::Constant(to_minor(20.0)));
    config.sweeps = 20_000;
    config.snapshot_every = 500;
    config.seed = 7;

    println!(
        "money exchange: N={agents}, <m>=${mean_money:.0}, constant $20 transfers, {} sweeps",
        config.sweeps
    );
    let (ledger, trace) = run_sweeps(&config).expect("valid config");

    let records = trace.records();
    let first = records.first().unwrap();
    let mid = &records[records.len() / 2];
    let last = records.last().unwrap();
    println!("entropy per agent: {:.4} (start) -> {:.4} (midway) -> {:.4} (end)", first.entropy, mid.entropy, last.entropy);
    println!(
        "total money: {} at start, {} at end (conserved to the cent)",
        format_minor(first.total),
        format_minor(last.total)
    );

    let sample = Sample::new(ledger.balances_in_units(), "$").unwrap();
    let fit = fit_exponential(&sample, 0.0).unwrap();
    println!(
        "fitted temperature T = ${:.2} (conservation pins it at ${mean_money:.2})",
        fit.temperature
    );
    println!("KS distance to the exponential: {:.4}", fit.ks_distance);
    println!(
        "poorest agent holds {}, richest {}",
        format_minor(last.min),
        format_minor(last.max)
    );
}
