//! Debt boundary conditions and bank interest.

use crate::money::Money;

/// How far an agent's balance may fall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    /// Balances never go negative; an unaffordable transfer is rejected.
    NoDebt,
    /// Each agent may owe up to the limit (minor units).
    DebtLimit(Money),
    /// A bank holds deposits and extends loans; the reserve ratio caps total
    /// outstanding debt at `M_b (1 - R)/R`. A payer short on deposits
    /// borrows exactly the shortfall while headroom remains, and loans are
    /// refinanced between agents rather than forcibly repaid.
    ReserveBank(f64),
    /// No floor at all; balances spread without bound.
    UnlimitedDebt,
}

impl BoundaryCondition {
    pub(crate) fn validate(&self) -> Result<(), String> {
        match self {
            BoundaryCondition::DebtLimit(limit) => {
                if *limit < 0 {
                    return Err("debt limit must be nonnegative".into());
                }
            }
            BoundaryCondition::ReserveBank(ratio) => {
                if !(0.0 < *ratio && *ratio <= 1.0) {
                    return Err("reserve ratio must lie in (0, 1]".into());
                }
            }
            BoundaryCondition::NoDebt | BoundaryCondition::UnlimitedDebt => {}
        }
        Ok(())
    }
}

/// Per-sweep bank interest on deposits and loans. The bank is external to
/// the agent system, so enabling interest breaks conservation by design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterestPolicy {
    pub deposit_rate_per_sweep: f64,
    pub loan_rate_per_sweep: f64,
    pub enabled: bool,
}

impl InterestPolicy {
    pub fn disabled() -> Self {
        Self {
            deposit_rate_per_sweep: 0.0,
            loan_rate_per_sweep: 0.0,
            enabled: false,
        }
    }

    pub fn new(deposit_rate_per_sweep: f64, loan_rate_per_sweep: f64) -> Self {
        Self {
            deposit_rate_per_sweep,
            loan_rate_per_sweep,
            enabled: true,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), String> {
        // Per-sweep rates beyond 1% compound absurdly within a single run;
        // treat them as configuration mistakes.
        for (name, rate) in [
            ("deposit", self.deposit_rate_per_sweep),
            ("loan", self.loan_rate_per_sweep),
        ] {
            if !rate.is_finite() || !(0.0..0.01).contains(&rate) {
                return Err(format!("{name} rate must lie in [0, 0.01) per sweep"));
            }
        }
        Ok(())
    }
}
