//! Entropy maximization on a small discrete spectrum, checked exactly.
//!
//! Ten agents share seven units of energy across four levels. The
//! continuous entropy maximum under the count and energy constraints is
//! the Boltzmann distribution p_k ~ exp(-beta e_k); for a system this
//! small we can also enumerate every occupancy vector and pick the one
//! with the largest multiplicity N!/(N_0! N_1! ...). The integer optimum
//! tracks the continuous solution to within one agent per level; the gap
//! is the finite-size correction that vanishes as N grows.
//!
//! Run with: cargo run --release --example maxent_boltzmann

use econgas::maxent::{
    brute_force_most_probable, partition_function, solve_boltzmann, MaxEntProblem,
};

fn main() {
    let problem = MaxEntProblem::new(vec![0.0, 1.0, 2.0, 3.0], 10, 7.0);
    println!(
        "maxent: {} agents, total energy {}, levels {:?}",
        problem.total_count, problem.total_energy, problem.energies
    );

    let solution = solve_boltzmann(&problem).expect("interior constraints");
    println!(
        "beta = {:.6}  (temperature {:.6}), chemical potential {:.6}",
        solution.beta, solution.temperature, solution.chemical_potential
    );

    let z = partition_function(&problem.energies, solution.temperature, true).unwrap();
    println!("partition function Z = {:.6}", z.value);

    let occupancies = solution.occupancies(problem.total_count);
    let exact = brute_force_most_probable(&problem, 1e-9).expect("small system");
    println!("level  energy  p_k       continuous N_k  exhaustive N_k");
    for (k, &e) in problem.energies.iter().enumerate() {
        println!(
            "  {k}    {e:>4.1}    {:.6}  {:>10.3}      {:>6}",
            solution.probabilities[k], occupancies[k], exact.counts()[k]
        );
    }

    let constraint_n: f64 = occupancies.iter().sum();
    let constraint_e: f64 = occupancies
        .iter()
        .zip(&problem.energies)
        .map(|(n, e)| n * e)
        .sum();
    println!("constraints reproduced: sum N_k = {constraint_n:.9}, sum N_k e_k = {constraint_e:.9}");
    let gap = occupancies
        .iter()
        .zip(exact.counts())
        .map(|(c, &n)| (c - n as f64).abs())
        .fold(0.0_f64, f64::max);
    println!("largest continuous-vs-integer gap: {gap:.3} agents");
    println!(
        "most probable occupancy has ln(multiplicity) = {:.4}, entropy bound {:.4}",
        exact.log_multiplicity(),
        exact.entropy()
    );
}
