//! Statistical equilibrium of a labor market.
//!
//! Instead of assuming every worker is paid one market-clearing wage, the
//! entropic approach weighs each feasible (wage, labor) trade by
//! exp(-pi . x) and solves for the two prices that clear money and labor
//! in expectation. Wages then come out exponentially distributed above
//! the minimum wage with temperature T_w = <w> - w_0, and unemployment is
//! an equilibrium outcome rather than a friction.
//!
//! Run with: cargo run --release --example labor_market

use econgas::analytics::{fit_exponential, Sample};
use econgas::market::{sample_wages, solve_equilibrium, LaborMarketSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let spec = LaborMarketSpec::new(1_000, 60, 900.0, 10.0, 1.0).expect("valid spec");
    println!(
        "labor market: {} workers, {} firms, ${:.0} capital per firm, minimum wage ${:.0}",
        spec.worker_count(),
        spec.firm_count(),
        spec.capital_per_firm(),
        spec.min_wage()
    );

    let solution = solve_equilibrium(&spec).expect("feasible market");
    println!(
        "employed {:.1} of {}, unemployment rate {:.1}%",
        solution.employed_count,
        spec.worker_count(),
        100.0 * solution.unemployed_count / spec.worker_count() as f64
    );
    println!(
        "mean wage ${:.2}, wage temperature T_w = ${:.2}, mean labor per firm {:.3}",
        solution.mean_wage, solution.wage_temperature, solution.mean_labor
    );
    println!(
        "clearing residuals: money {:.2e}, labor {:.2e}",
        solution.clearing_residuals[0], solution.clearing_residuals[1]
    );

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let wages = sample_wages(&solution, 100_000, &mut rng);
    let floor = solution.mean_wage - solution.wage_temperature;
    let fit = fit_exponential(&Sample::new(wages, "$").unwrap(), floor).unwrap();
    println!(
        "100k sampled wages: fitted T = ${:.2} above the ${:.2} floor, KS = {:.4}",
        fit.temperature, floor, fit.ks_distance
    );
}
