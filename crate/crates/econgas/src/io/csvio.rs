//! CSV ingestion and emission.
//!
//! Ingestion is fail-fast: the first malformed row aborts with its line
//! number, so no partial sample is ever analyzed. Emission is deterministic
//! byte-for-byte for a given input; money columns carry two decimals, all
//! other numeric columns use the shortest representation that parses back
//! to the same float.

use std::collections::BTreeMap;
use std::io::{self, Write};

use thiserror::Error;

use crate::analytics::{LorenzCurve, Sample};
use crate::exchange::TraceRecord;
use crate::maxent::{MaxEntProblem, MaxEntSolution};
use crate::money::{format_minor, to_units, Money};

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("missing column `{column}` (header has: {header})")]
    MissingColumn { column: String, header: String },
    #[error("line {line}: {message}")]
    MalformedRow { line: usize, message: String },
    #[error("no data rows")]
    EmptyData,
}

fn from_csv_error(err: csv::Error) -> CsvError {
    let line = err.position().map(|p| p.line() as usize).unwrap_or(0);
    if matches!(err.kind(), csv::ErrorKind::Io(_)) {
        match err.into_kind() {
            csv::ErrorKind::Io(io_err) => CsvError::Io(io_err),
            _ => unreachable!("kind checked above"),
        }
    } else {
        CsvError::MalformedRow {
            line,
            message: err.to_string(),
        }
    }
}

/// Reads one value column (plus an optional weight column) into a [`Sample`]
/// whose unit label is the value column's header name.
pub fn ingest_sample<R: io::Read>(
    reader: R,
    value_column: &str,
    weight_column: Option<&str>,
) -> Result<Sample, CsvError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(from_csv_error)?.clone();
    let locate = |column: &str| -> Result<usize, CsvError> {
        headers
            .iter()
            .position(|h| h == column)
            .ok_or_else(|| CsvError::MissingColumn {
                column: column.to_string(),
                header: headers.iter().collect::<Vec<_>>().join(", "),
            })
    };
    let value_idx = locate(value_column)?;
    let weight_idx = weight_column.map(locate).transpose()?;

    let mut values = Vec::new();
    let mut weights = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(from_csv_error)?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        // Negative values are legitimate (balances under a debt boundary);
        // operations that need nonnegative data reject them downstream.
        let value = parse_field(&record, value_idx, value_column, line)?;
        values.push(value);
        if let Some(idx) = weight_idx {
            let name = weight_column.expect("weight index implies weight column");
            let weight = parse_field(&record, idx, name, line)?;
            if weight <= 0.0 {
                return Err(CsvError::MalformedRow {
                    line,
                    message: format!("weight in column `{name}` must be positive, found {weight}"),
                });
            }
            weights.push(weight);
        }
    }
    if values.is_empty() {
        return Err(CsvError::EmptyData);
    }
    let sample = match weight_idx {
        Some(_) => Sample::with_weights(values, weights, value_column),
        None => Sample::new(values, value_column),
    };
    // Row-level checks above already reject everything Sample validates.
    sample.map_err(|e| CsvError::MalformedRow {
        line: 0,
        message: e.to_string(),
    })
}

fn parse_field(
    record: &csv::StringRecord,
    idx: usize,
    column: &str,
    line: usize,
) -> Result<f64, CsvError> {
    let text = record.get(idx).unwrap_or("");
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CsvError::MalformedRow {
            line,
            message: format!("value `{text}` in column `{column}` is not a number"),
        }),
    }
}

/// `agent_id,balance` rows in agent order, balances in units.
pub fn write_snapshot(w: &mut impl Write, balances: &[Money]) -> io::Result<()> {
    writeln!(w, "agent_id,balance")?;
    for (id, balance) in balances.iter().enumerate() {
        writeln!(w, "{id},{}", format_minor(*balance))?;
    }
    Ok(())
}

/// `sweep,entropy,mean,variance,min,max,total,debt,rejections` rows.
pub fn write_trace(w: &mut impl Write, records: &[TraceRecord]) -> io::Result<()> {
    writeln!(w, "sweep,entropy,mean,variance,min,max,total,debt,rejections")?;
    for r in records {
        writeln!(
            w,
            "{},{},{:.2},{},{},{},{},{},{}",
            r.sweep,
            r.entropy,
            r.mean,
            r.variance,
            format_minor(r.min),
            format_minor(r.max),
            format_minor(r.total),
            format_minor(r.debt),
            r.rejections,
        )?;
    }
    Ok(())
}

/// Contiguous fixed-width bins covering the balance range. Density is per
/// money unit, normalized so the column integrates to one.
pub fn write_histogram(w: &mut impl Write, balances: &[Money], bin: Money) -> io::Result<()> {
    debug_assert!(bin > 0, "bin width must be positive");
    writeln!(w, "bin_left,bin_right,count,density")?;
    if balances.is_empty() {
        return Ok(());
    }
    let mut counts: BTreeMap<Money, u64> = BTreeMap::new();
    for &balance in balances {
        *counts.entry(balance.div_euclid(bin)).or_insert(0) += 1;
    }
    let (&lo, _) = counts.first_key_value().expect("nonempty counts");
    let (&hi, _) = counts.last_key_value().expect("nonempty counts");
    let total = balances.len() as f64;
    let bin_units = to_units(bin);
    for idx in lo..=hi {
        let count = counts.get(&idx).copied().unwrap_or(0);
        let density = count as f64 / (total * bin_units);
        writeln!(
            w,
            "{},{},{count},{density}",
            format_minor(idx * bin),
            format_minor((idx + 1) * bin),
        )?;
    }
    Ok(())
}

/// `x,y` rows of a Lorenz curve.
pub fn write_lorenz(w: &mut impl Write, curve: &LorenzCurve) -> io::Result<()> {
    write_xy(w, ("x", "y"), curve.points.iter().copied())
}

/// Generic two-column numeric table.
pub fn write_xy(
    w: &mut impl Write,
    header: (&str, &str),
    rows: impl IntoIterator<Item = (f64, f64)>,
) -> io::Result<()> {
    writeln!(w, "{},{}", header.0, header.1)?;
    for (x, y) in rows {
        writeln!(w, "{x},{y}")?;
    }
    Ok(())
}

/// `x,empirical,model` rows pairing an empirical curve with a closed form.
pub fn write_overlay(w: &mut impl Write, rows: &[(f64, f64, f64)]) -> io::Result<()> {
    writeln!(w, "x,empirical,model")?;
    for (x, empirical, model) in rows {
        writeln!(w, "{x},{empirical},{model}")?;
    }
    Ok(())
}

/// Single-column wage sample, in units.
pub fn write_wages(w: &mut impl Write, wages: &[f64]) -> io::Result<()> {
    writeln!(w, "wage")?;
    for wage in wages {
        writeln!(w, "{wage:.2}")?;
    }
    Ok(())
}

/// `parameter,value` rows for fit and solution reports.
pub fn write_key_values(w: &mut impl Write, rows: &[(&str, String)]) -> io::Result<()> {
    writeln!(w, "parameter,value")?;
    for (key, value) in rows {
        writeln!(w, "{key},{value}")?;
    }
    Ok(())
}

/// `state,energy,probability,occupancy` rows of a maxent solution.
pub fn write_maxent_table(
    w: &mut impl Write,
    problem: &MaxEntProblem,
    solution: &MaxEntSolution,
) -> io::Result<()> {
    writeln!(w, "state,energy,probability,occupancy")?;
    let occupancies = solution.occupancies(problem.total_count);
    for (k, (energy, (p, occupancy))) in problem
        .energies
        .iter()
        .zip(solution.probabilities.iter().zip(&occupancies))
        .enumerate()
    {
        writeln!(w, "{k},{energy},{p},{occupancy}")?;
    }
    Ok(())
}
