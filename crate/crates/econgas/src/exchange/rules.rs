//! Pairwise exchange rules: how much money moves when two agents trade.

use crate::money::Money;

/// Saving propensity: the fraction of wealth each party withholds from the
/// pooled exchange. Either one common value or one value per agent.
#[derive(Debug, Clone, PartialEq)]
pub enum SavingSpec {
    Common(f64),
    PerAgent(Vec<f64>),
}

impl SavingSpec {
    /// Propensity of agent `i`.
    pub fn lambda(&self, i: usize) -> f64 {
        match self {
            SavingSpec::Common(l) => *l,
            SavingSpec::PerAgent(ls) => ls[i],
        }
    }
}

/// The transfer (or reshuffle) rule applied to a drawn pair.
#[derive(Debug, Clone, PartialEq)]
pub enum ExchangeRule {
    /// Payer hands over a fixed amount, in minor units.
    Constant(Money),
    /// Payer hands over an amount drawn uniformly from (0, max], rounded to
    /// minor units.
    UniformRandom(Money),
    /// Payer hands over the fraction `gamma` of its positive balance.
    Proportional(f64),
    /// Both parties pool the unsaved fractions of their wealth and split the
    /// pool at a uniform random point; the rounding residual goes to the
    /// second agent of the pair.
    SavingPropensity(SavingSpec),
}

impl ExchangeRule {
    /// True for rules whose transfer amount is independent of the trading
    /// pair's balances; these relax to the exponential distribution, while
    /// the others produce Gamma-like shapes.
    pub fn time_reversal_symmetric(&self) -> bool {
        matches!(
            self,
            ExchangeRule::Constant(_) | ExchangeRule::UniformRandom(_)
        )
    }

    /// Validates rule parameters; `agent_count` checks per-agent lists.
    pub(crate) fn validate(&self, agent_count: usize) -> Result<(), String> {
        match self {
            ExchangeRule::Constant(dm) => {
                if *dm <= 0 {
                    return Err("constant transfer amount must be positive".into());
                }
            }
            ExchangeRule::UniformRandom(max) => {
                if *max <= 0 {
                    return Err("uniform transfer bound must be positive".into());
                }
            }
            ExchangeRule::Proportional(gamma) => {
                if !(0.0 < *gamma && *gamma < 1.0) {
                    return Err("proportional fraction must lie in (0, 1)".into());
                }
            }
            ExchangeRule::SavingPropensity(spec) => {
                let check = |l: f64| (0.0..1.0).contains(&l);
                match spec {
                    SavingSpec::Common(l) => {
                        if !check(*l) {
                            return Err("saving propensity must lie in [0, 1)".into());
                        }
                    }
                    SavingSpec::PerAgent(ls) => {
                        if ls.len() != agent_count {
                            return Err(format!(
                                "{} saving propensities for {} agents",
                                ls.len(),
                                agent_count
                            ));
                        }
                        if !ls.iter().all(|l| check(*l)) {
                            return Err("saving propensities must lie in [0, 1)".into());
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
