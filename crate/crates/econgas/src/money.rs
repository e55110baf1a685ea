//! Fixed-point money arithmetic.
//!
//! All balances are carried as signed integer minor units (1 unit = 1/100 of
//! the configured currency unit) so that pairwise transfers conserve the
//! ledger total exactly; floating point enters only when amounts are derived
//! from rates or random fractions, and each such amount is rounded once
//! before it is debited and credited.

/// Balance or transfer amount in minor units.
pub type Money = i64;

/// Minor units per whole currency unit.
pub const MINOR_PER_UNIT: i64 = 100;

/// Converts whole currency units to minor units, rounding half away from zero.
pub fn to_minor(units: f64) -> Money {
    (units * MINOR_PER_UNIT as f64).round() as Money
}

/// Converts minor units to whole currency units.
pub fn to_units(amount: Money) -> f64 {
    amount as f64 / MINOR_PER_UNIT as f64
}

/// Formats minor units as a decimal currency string with two places.
///
/// The sign is attached to the whole string, so `-50` renders as `"-0.50"`.
pub fn format_minor(amount: Money) -> String {
    let sign = if amount < 0 { "-" } else { "" };
    let magnitude = amount.unsigned_abs();
    format!(
        "{sign}{}.{:02}",
        magnitude / MINOR_PER_UNIT as u64,
        magnitude % MINOR_PER_UNIT as u64
    )
}
