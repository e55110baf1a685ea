#![forbid(unsafe_code)]

//! Statistical mechanics of money: kinetic exchange simulations driven to
//! their stationary distributions, constrained entropy maximization, an
//! entropic labor-market equilibrium, and the inequality analytics
//! (exponential and Pareto fits, Lorenz curves, Gini coefficients) used to
//! read the results.
//!
//! Balances are exact fixed-point minor units ([`money::Money`]), so total
//! money is conserved to the cent across billions of transactions. All
//! randomness flows from seeded ChaCha streams; identical configs produce
//! byte-identical artifacts.

pub mod analytics;
pub mod cli;
pub mod exchange;
pub mod io;
pub mod market;
pub mod maxent;
pub mod money;
