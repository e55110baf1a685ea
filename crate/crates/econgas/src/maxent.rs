//! Entropy maximization over discrete state occupancies.
//!
//! Given q states with energies `e_k`, N agents, and a fixed total energy E,
//! the most probable occupancy maximizes the multiplicity
//! `Omega = N! / (N_1! ... N_q!)`. [`solve_boltzmann`] finds the continuous
//! maximizer `P(e_k) = exp(alpha - beta * e_k)` whose two Lagrange
//! multipliers are pinned by the count and energy constraints;
//! [`brute_force_most_probable`] enumerates integer occupancies exactly for
//! small systems so the two routes can be cross-checked.

use statrs::function::gamma::ln_gamma;
use thiserror::Error;

const EXHAUSTIVE_MAX_COUNT: u64 = 12;
const EXHAUSTIVE_MAX_STATES: usize = 4;

/// Solver residual bound on the mean-energy constraint.
const MEAN_ENERGY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum MaxEntError {
    #[error("total energy {total_energy} pins every agent to a boundary state")]
    DegenerateConstraint { total_energy: f64 },
    #[error("total energy {total_energy} is outside the feasible range [{min}, {max}]")]
    InfeasibleConstraint { total_energy: f64, min: f64, max: f64 },
    #[error(
        "exhaustive search is limited to {max_count} agents over {max_states} states; \
         got {count} over {states}"
    )]
    TooLarge {
        count: u64,
        states: usize,
        max_count: u64,
        max_states: usize,
    },
    #[error("no occupancy meets the energy constraint within tolerance {tolerance}")]
    NoFeasibleOccupancy { tolerance: f64 },
    #[error("partition sum requires a nonzero temperature")]
    ZeroTemperature,
    #[error("energy spectrum is empty")]
    EmptySpectrum,
    #[error("energies must be finite; state {0} is not")]
    NonFiniteEnergy(usize),
    #[error("agent count must be positive")]
    ZeroCount,
}

/// `ln n!`, exact at the 0! = 1! = 1 boundary where ln_gamma wobbles by an ulp.
fn ln_factorial(n: u64) -> f64 {
    if n <= 1 {
        0.0
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// How N agents distribute over q states: `counts[k]` agents occupy state k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyVector {
    counts: Vec<u64>,
}

impl OccupancyVector {
    pub fn new(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total number of agents.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `ln Omega = ln N! - sum_k ln N_k!`, computed in log space.
    ///
    /// An empty occupancy has a single realization, so the result is 0.
    pub fn log_multiplicity(&self) -> f64 {
        let total = self.total();
        self.counts
            .iter()
            .fold(ln_factorial(total), |acc, &n| acc - ln_factorial(n))
    }

    /// Boltzmann entropy `S = -sum_k N_k ln(N_k / N)` with `0 ln 0 = 0`.
    ///
    /// Converges to [`log_multiplicity`](Self::log_multiplicity) for large
    /// per-state counts (Stirling), but differs substantially for small ones.
    pub fn entropy(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let n = total as f64;
        self.counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let c = c as f64;
                -c * (c / n).ln()
            })
            .sum()
    }

    /// Exact multiplicity for small systems; `None` if it overflows u128.
    fn exact_multiplicity(&self) -> Option<u128> {
        let mut value: u128 = 1;
        let mut placed: u64 = 0;
        // Omega = prod_k C(placed + N_k, N_k), accumulated state by state.
        for &count in &self.counts {
            for step in 1..=count {
                placed += 1;
                value = value.checked_mul(placed as u128)?;
                value /= step as u128;
            }
        }
        Some(value)
    }
}

/// Constraint set: q state energies, N agents, and a total energy E.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntProblem {
    pub energies: Vec<f64>,
    pub total_count: u64,
    pub total_energy: f64,
}

impl MaxEntProblem {
    pub fn new(energies: Vec<f64>, total_count: u64, total_energy: f64) -> Self {
        Self {
            energies,
            total_count,
            total_energy,
        }
    }

    fn validate(&self) -> Result<(), MaxEntError> {
        if self.energies.is_empty() {
            return Err(MaxEntError::EmptySpectrum);
        }
        if let Some(k) = self.energies.iter().position(|e| !e.is_finite()) {
            return Err(MaxEntError::NonFiniteEnergy(k));
        }
        if self.total_count == 0 {
            return Err(MaxEntError::ZeroCount);
        }
        Ok(())
    }
}

/// Continuous entropy maximizer under count and energy constraints.
#[derive(Debug, Clone)]
pub struct MaxEntSolution {
    /// `P(e_k) = exp(alpha - beta * e_k)`, normalized over states.
    pub probabilities: Vec<f64>,
    pub beta: f64,
    pub alpha: f64,
    /// `T = 1/beta`; infinite when the energy constraint sits at the
    /// unweighted spectrum mean (beta = 0).
    pub temperature: f64,
    /// `mu = alpha * T`.
    pub chemical_potential: f64,
}

impl MaxEntSolution {
    /// Expected occupancies `N * P(e_k)`.
    pub fn occupancies(&self, total_count: u64) -> Vec<f64> {
        self.probabilities
            .iter()
            .map(|p| p * total_count as f64)
            .collect()
    }
}

/// Mean energy under the Boltzmann weights at inverse temperature `beta`,
/// computed with an exponent shift so large `|beta * e|` cannot overflow.
fn boltzmann_mean(energies: &[f64], beta: f64) -> f64 {
    let shift = energies
        .iter()
        .map(|e| -beta * e)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut weight_sum = 0.0;
    let mut energy_sum = 0.0;
    for &e in energies {
        let w = (-beta * e - shift).exp();
        weight_sum += w;
        energy_sum += e * w;
    }
    energy_sum / weight_sum
}

/// Log partition sum `ln Z(beta)`, exponent-shifted.
fn log_partition(energies: &[f64], beta: f64) -> f64 {
    let shift = energies
        .iter()
        .map(|e| -beta * e)
        .fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = energies.iter().map(|e| (-beta * e - shift).exp()).sum();
    shift + sum.ln()
}

/// Solves for the Boltzmann distribution meeting the problem's constraints.
///
/// The mean energy `m(beta) = sum_k e_k P(e_k)` decreases strictly in beta,
/// so the unique root of `m(beta) = E/N` is found by expanding a bracket
/// geometrically from `[-1, 1]` and bisecting. Feasible problems require
/// `E/N` strictly between the smallest and largest energy; equality pins
/// every agent to one boundary state and is reported as degenerate. `E/N`
/// above the unweighted spectrum mean yields a negative beta, which is valid
/// for a finite spectrum.
pub fn solve_boltzmann(problem: &MaxEntProblem) -> Result<MaxEntSolution, MaxEntError> {
    problem.validate()?;
    let energies = &problem.energies;
    let target = problem.total_energy / problem.total_count as f64;
    let min = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = energies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if target < min || target > max {
        return Err(MaxEntError::InfeasibleConstraint {
            total_energy: problem.total_energy,
            min: min * problem.total_count as f64,
            max: max * problem.total_count as f64,
        });
    }
    if target == min || target == max {
        // Includes spectra where every energy is equal.
        return Err(MaxEntError::DegenerateConstraint {
            total_energy: problem.total_energy,
        });
    }

    // m(beta) is decreasing: m(lo) >= target requires lo small enough.
    let mut lo = -1.0;
    let mut hi = 1.0;
    for _ in 0..80 {
        if boltzmann_mean(energies, lo) >= target {
            break;
        }
        lo *= 2.0;
    }
    for _ in 0..80 {
        if boltzmann_mean(energies, hi) <= target {
            break;
        }
        hi *= 2.0;
    }

    let mut beta = 0.5 * (lo + hi);
    for _ in 0..200 {
        beta = 0.5 * (lo + hi);
        let mean = boltzmann_mean(energies, beta);
        if (mean - target).abs() <= MEAN_ENERGY_TOLERANCE * 1e-3 {
            break;
        }
        if mean > target {
            lo = beta;
        } else {
            hi = beta;
        }
    }

    let ln_z = log_partition(energies, beta);
    let alpha = -ln_z;
    let probabilities: Vec<f64> = energies.iter().map(|e| (alpha - beta * e).exp()).collect();
    let temperature = 1.0 / beta;
    Ok(MaxEntSolution {
        probabilities,
        beta,
        alpha,
        temperature,
        chemical_potential: alpha * temperature,
    })
}

/// Exhaustively enumerates integer occupancies and returns the one with the
/// largest multiplicity among those whose total energy is within
/// `energy_tolerance` of the constraint.
///
/// Multiplicities are compared exactly (u128 integers), and ties go to the
/// lexicographically smallest counts vector. Kept deliberately small
/// (N <= 12, q <= 4) since the state space grows combinatorially; the role
/// of this routine is to validate [`solve_boltzmann`], not to scale.
pub fn brute_force_most_probable(
    problem: &MaxEntProblem,
    energy_tolerance: f64,
) -> Result<OccupancyVector, MaxEntError> {
    problem.validate()?;
    let states = problem.energies.len();
    let count = problem.total_count;
    if count > EXHAUSTIVE_MAX_COUNT || states > EXHAUSTIVE_MAX_STATES {
        return Err(MaxEntError::TooLarge {
            count,
            states,
            max_count: EXHAUSTIVE_MAX_COUNT,
            max_states: EXHAUSTIVE_MAX_STATES,
        });
    }

    let mut best: Option<(u128, Vec<u64>)> = None;
    let mut counts = vec![0u64; states];
    enumerate_compositions(count, 0, &mut counts, &mut |occ: &[u64]| {
        let energy: f64 = occ
            .iter()
            .zip(&problem.energies)
            .map(|(&n, &e)| n as f64 * e)
            .sum();
        if (energy - problem.total_energy).abs() > energy_tolerance {
            return;
        }
        let candidate = OccupancyVector::new(occ.to_vec());
        let multiplicity = candidate
            .exact_multiplicity()
            .expect("multiplicity fits u128 for N <= 12");
        let better = match &best {
            None => true,
            Some((best_mult, best_counts)) => {
                multiplicity > *best_mult
                    || (multiplicity == *best_mult && occ < best_counts.as_slice())
            }
        };
        if better {
            best = Some((multiplicity, occ.to_vec()));
        }
    });

    best.map(|(_, counts)| OccupancyVector::new(counts))
        .ok_or(MaxEntError::NoFeasibleOccupancy {
            tolerance: energy_tolerance,
        })
}

fn enumerate_compositions(
    remaining: u64,
    state: usize,
    counts: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]),
) {
    if state == counts.len() - 1 {
        counts[state] = remaining;
        visit(counts);
        return;
    }
    for n in 0..=remaining {
        counts[state] = n;
        enumerate_compositions(remaining - n, state + 1, counts, visit);
    }
}

/// Partition sum over a finite spectrum, with a divergence flag.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    /// `sum_k exp(-e_k / T)`; infinite when the sum diverges.
    pub value: f64,
    /// True when the model's support is unbounded below, in which case the
    /// sum diverges for either sign of the temperature.
    pub diverges: bool,
}

/// Evaluates `Z = sum_k exp(-e_k / T)` over a finite energy list.
///
/// `support_bounded_below = false` declares that the listed energies sample a
/// spectrum extending to negative infinity (balances with no debt floor);
/// the partition sum then diverges regardless of the sign of T and the value
/// is reported as infinite.
pub fn partition_function(
    energies: &[f64],
    temperature: f64,
    support_bounded_below: bool,
) -> Result<PartitionResult, MaxEntError> {
    if temperature == 0.0 {
        return Err(MaxEntError::ZeroTemperature);
    }
    if !support_bounded_below {
        return Ok(PartitionResult {
            value: f64::INFINITY,
            diverges: true,
        });
    }
    let value = energies.iter().map(|e| (-e / temperature).exp()).sum();
    Ok(PartitionResult {
        value,
        diverges: false,
    })
}
