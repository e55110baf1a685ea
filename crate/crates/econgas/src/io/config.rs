//! Flat `key = value` run configuration.
//!
//! One assignment per line, `#` starts a comment line, blank lines are
//! skipped. `--set key=value` flags layer on top of the file and win.
//! Every key must belong to the invoked subcommand's schema; unknown and
//! duplicate keys are rejected so a typo can never fall back to a default.

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::exchange::{BoundaryCondition, ExchangeRule, InterestPolicy, SavingSpec, SimConfig};
use crate::market::LaborMarketSpec;
use crate::maxent::MaxEntProblem;
use crate::money::{format_minor, to_minor, Money};

/// Where an assignment came from, for error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// 1-based line in the config file.
    Line(usize),
    /// A `--set` or `--seed` flag.
    Flag,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Flag => f.write_str("command line"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{origin}: expected `key = value`, found `{text}`")]
    Syntax { origin: Origin, text: String },
    #[error("{origin}: unknown key `{key}`")]
    UnknownKey { key: String, origin: Origin },
    #[error("{origin}: duplicate key `{key}` (already set at {first})")]
    DuplicateKey {
        key: String,
        origin: Origin,
        first: Origin,
    },
    #[error("{origin}: key `{key}`: {message}")]
    TypeError {
        key: String,
        origin: Origin,
        message: String,
    },
    #[error("missing required key `{key}`")]
    MissingRequired { key: String },
}

fn type_error(key: &str, origin: Origin, message: impl Into<String>) -> ConfigError {
    ConfigError::TypeError {
        key: key.to_string(),
        origin,
        message: message.into(),
    }
}

/// Ordered assignments with their origins, before schema resolution.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: Vec<RawEntry>,
}

#[derive(Debug, Clone)]
struct RawEntry {
    key: String,
    value: String,
    origin: Origin,
}

impl RawConfig {
    /// Parses config-file text. Repeating a key within one file is rejected;
    /// overriding happens through [`RawConfig::set`], not repetition.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = RawConfig::default();
        for (idx, line) in text.lines().enumerate() {
            let origin = Origin::Line(idx + 1);
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let split = line.split_once('=');
            let Some((key, value)) = split else {
                return Err(ConfigError::Syntax {
                    origin,
                    text: line.to_string(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::Syntax {
                    origin,
                    text: line.to_string(),
                });
            }
            if let Some(first) = raw.entries.iter().find(|e| e.key == key) {
                return Err(ConfigError::DuplicateKey {
                    key: key.to_string(),
                    origin,
                    first: first.origin,
                });
            }
            raw.entries.push(RawEntry {
                key: key.to_string(),
                value: value.to_string(),
                origin,
            });
        }
        Ok(raw)
    }

    /// Applies one `--set key=value` assignment.
    pub fn apply_set(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let split = assignment.split_once('=');
        let Some((key, value)) = split else {
            return Err(ConfigError::Syntax {
                origin: Origin::Flag,
                text: assignment.to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Syntax {
                origin: Origin::Flag,
                text: assignment.to_string(),
            });
        }
        self.set(key, value);
        Ok(())
    }

    /// Inserts or replaces one assignment as a flag-level override.
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        match self.entries.iter_mut().find(|e| e.key == key) {
            Some(entry) => {
                entry.value = value;
                entry.origin = Origin::Flag;
            }
            None => self.entries.push(RawEntry {
                key: key.to_string(),
                value,
                origin: Origin::Flag,
            }),
        }
    }

    /// The stored assignments in declaration order.
    pub fn pairs(&self) -> Vec<(&str, &str)> {
        self.entries
            .iter()
            .map(|e| (e.key.as_str(), e.value.as_str()))
            .collect()
    }
}

/// Pulls typed values out of a [`RawConfig`]. Construction rejects any key
/// outside the subcommand's schema up front, so a typo'd key is always
/// reported as unknown rather than as a missing requirement.
struct Resolver<'a> {
    entries: &'a [RawEntry],
    used: Vec<bool>,
}

impl<'a> Resolver<'a> {
    fn new(raw: &'a RawConfig, known: &[&str]) -> Result<Self, ConfigError> {
        if let Some(entry) = raw.entries.iter().find(|e| !known.contains(&e.key.as_str())) {
            return Err(ConfigError::UnknownKey {
                key: entry.key.clone(),
                origin: entry.origin,
            });
        }
        Ok(Self {
            entries: &raw.entries,
            used: vec![false; raw.entries.len()],
        })
    }

    fn take(&mut self, key: &str) -> Option<(&'a str, Origin)> {
        for (i, entry) in self.entries.iter().enumerate() {
            if entry.key == key {
                self.used[i] = true;
                return Some((entry.value.as_str(), entry.origin));
            }
        }
        None
    }

    fn string(&mut self, key: &str) -> Option<(String, Origin)> {
        self.take(key).map(|(v, o)| (v.to_string(), o))
    }

    fn u64(&mut self, key: &str) -> Result<Option<(u64, Origin)>, ConfigError> {
        match self.take(key) {
            None => Ok(None),
            Some((text, origin)) => text.parse::<u64>().map(|v| Some((v, origin))).map_err(|_| {
                type_error(
                    key,
                    origin,
                    format!("expected a nonnegative integer, found `{text}`"),
                )
            }),
        }
    }

    fn f64(&mut self, key: &str) -> Result<Option<(f64, Origin)>, ConfigError> {
        match self.take(key) {
            None => Ok(None),
            Some((text, origin)) => match text.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(Some((v, origin))),
                _ => Err(type_error(
                    key,
                    origin,
                    format!("expected a finite number, found `{text}`"),
                )),
            },
        }
    }

    /// Money amount given in units (two-decimal precision survives exactly).
    fn money(&mut self, key: &str) -> Result<Option<(Money, Origin)>, ConfigError> {
        Ok(self.f64(key)?.map(|(v, o)| (to_minor(v), o)))
    }

    fn finish(self) -> Result<(), ConfigError> {
        match self.entries.iter().zip(&self.used).find(|(_, used)| !**used) {
            Some((entry, _)) => Err(ConfigError::UnknownKey {
                key: entry.key.clone(),
                origin: entry.origin,
            }),
            None => Ok(()),
        }
    }
}

fn required<T>(value: Option<T>, key: &str) -> Result<T, ConfigError> {
    value.ok_or_else(|| ConfigError::MissingRequired {
        key: key.to_string(),
    })
}

const RULE_FORMS: &str = "constant:<amount>, uniform:<max>, proportional:<fraction>, saving:<propensity>";

fn parse_rule(text: &str, origin: Origin) -> Result<ExchangeRule, ConfigError> {
    let (kind, payload) = match text.split_once(':') {
        Some((k, p)) => (k.trim(), Some(p.trim())),
        None => (text, None),
    };
    let number = |what: &str| -> Result<f64, ConfigError> {
        let Some(payload) = payload else {
            return Err(type_error(
                "rule",
                origin,
                format!("`{kind}` needs {what}; expected one of {RULE_FORMS}"),
            ));
        };
        match payload.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(type_error(
                "rule",
                origin,
                format!("expected a number after `{kind}:`, found `{payload}`"),
            )),
        }
    };
    match kind {
        "constant" => {
            let amount = to_minor(number("an amount")?);
            if amount < 1 {
                return Err(type_error("rule", origin, "amount must be at least 0.01"));
            }
            Ok(ExchangeRule::Constant(amount))
        }
        "uniform" => {
            let max = to_minor(number("a maximum amount")?);
            if max < 1 {
                return Err(type_error(
                    "rule",
                    origin,
                    "maximum amount must be at least 0.01",
                ));
            }
            Ok(ExchangeRule::UniformRandom(max))
        }
        "proportional" => {
            let fraction = number("a fraction")?;
            if fraction <= 0.0 || fraction >= 1.0 {
                return Err(type_error(
                    "rule",
                    origin,
                    format!("fraction must be within (0, 1), found {fraction}"),
                ));
            }
            Ok(ExchangeRule::Proportional(fraction))
        }
        "saving" => {
            let propensity = number("a propensity")?;
            if !(0.0..1.0).contains(&propensity) {
                return Err(type_error(
                    "rule",
                    origin,
                    format!("propensity must be within [0, 1), found {propensity}"),
                ));
            }
            Ok(ExchangeRule::SavingPropensity(SavingSpec::Common(propensity)))
        }
        other => Err(type_error(
            "rule",
            origin,
            format!("unknown rule `{other}`; expected one of {RULE_FORMS}"),
        )),
    }
}

/// Canonical config text for a rule, inverse of [`parse_rule`].
pub fn rule_text(rule: &ExchangeRule) -> String {
    match rule {
        ExchangeRule::Constant(amount) => format!("constant:{}", format_minor(*amount)),
        ExchangeRule::UniformRandom(max) => format!("uniform:{}", format_minor(*max)),
        ExchangeRule::Proportional(fraction) => format!("proportional:{fraction}"),
        ExchangeRule::SavingPropensity(SavingSpec::Common(l)) => format!("saving:{l}"),
        // Per-agent vectors are library-level; the config grammar has no
        // literal for them.
        ExchangeRule::SavingPropensity(SavingSpec::PerAgent(_)) => "saving:per-agent".to_string(),
    }
}

fn resolve_boundary(r: &mut Resolver<'_>) -> Result<BoundaryCondition, ConfigError> {
    let kind = r.string("boundary");
    let debt_limit = r.money("debt_limit")?;
    let reserve_ratio = r.f64("reserve_ratio")?;
    // Range-check payloads even before the kind is known, so a bad value is
    // reported as such rather than as a stray key.
    if let Some((limit, origin)) = debt_limit {
        if limit < 0 {
            return Err(type_error(
                "debt_limit",
                origin,
                format!("must be nonnegative, found {}", format_minor(limit)),
            ));
        }
    }
    if let Some((ratio, origin)) = reserve_ratio {
        if ratio <= 0.0 || ratio > 1.0 {
            return Err(type_error(
                "reserve_ratio",
                origin,
                format!("must be within (0, 1], found {ratio}"),
            ));
        }
    }
    let reject = |payload: Option<(Money, Origin)>,
                  ratio: Option<(f64, Origin)>,
                  kind: &str|
     -> Result<(), ConfigError> {
        if let Some((_, origin)) = payload {
            return Err(type_error(
                "debt_limit",
                origin,
                format!("only applies with `boundary = debt_limit` (boundary is `{kind}`)"),
            ));
        }
        if let Some((_, origin)) = ratio {
            return Err(type_error(
                "reserve_ratio",
                origin,
                format!("only applies with `boundary = reserve` (boundary is `{kind}`)"),
            ));
        }
        Ok(())
    };
    match kind.as_ref().map(|(k, o)| (k.as_str(), *o)) {
        None => {
            reject(debt_limit, reserve_ratio, "none")?;
            Ok(BoundaryCondition::NoDebt)
        }
        Some(("none", _)) => {
            reject(debt_limit, reserve_ratio, "none")?;
            Ok(BoundaryCondition::NoDebt)
        }
        Some(("debt_limit", _)) => {
            reject(None, reserve_ratio, "debt_limit")?;
            let (limit, _) = required(debt_limit, "debt_limit")?;
            Ok(BoundaryCondition::DebtLimit(limit))
        }
        Some(("reserve", _)) => {
            reject(debt_limit, None, "reserve")?;
            let (ratio, _) = required(reserve_ratio, "reserve_ratio")?;
            Ok(BoundaryCondition::ReserveBank(ratio))
        }
        Some(("unlimited", _)) => {
            reject(debt_limit, reserve_ratio, "unlimited")?;
            Ok(BoundaryCondition::UnlimitedDebt)
        }
        Some((other, origin)) => Err(type_error(
            "boundary",
            origin,
            format!("unknown boundary `{other}`; expected one of none, debt_limit, reserve, unlimited"),
        )),
    }
}

/// Manifest lines for a boundary, inverse of the `boundary`/payload keys.
pub fn boundary_pairs(boundary: &BoundaryCondition) -> Vec<(String, String)> {
    let pair = |k: &str, v: String| (k.to_string(), v);
    match boundary {
        BoundaryCondition::NoDebt => vec![pair("boundary", "none".into())],
        BoundaryCondition::DebtLimit(limit) => vec![
            pair("boundary", "debt_limit".into()),
            pair("debt_limit", format_minor(*limit)),
        ],
        BoundaryCondition::ReserveBank(ratio) => vec![
            pair("boundary", "reserve".into()),
            pair("reserve_ratio", ratio.to_string()),
        ],
        BoundaryCondition::UnlimitedDebt => vec![pair("boundary", "unlimited".into())],
    }
}

/// Fully resolved `simulate` run.
#[derive(Debug, Clone)]
pub struct SimulateJob {
    pub config: SimConfig,
    pub replicas: u32,
    /// Output histogram bin width in minor units.
    pub histogram_bin: Money,
}

pub fn resolve_simulate(raw: &RawConfig) -> Result<SimulateJob, ConfigError> {
    let mut r = Resolver::new(
        raw,
        &[
            "agents",
            "mean_money",
            "rule",
            "boundary",
            "debt_limit",
            "reserve_ratio",
            "sweeps",
            "snapshot_every",
            "seed",
            "replicas",
            "entropy_bin",
            "histogram_bin",
            "deposit_rate",
            "loan_rate",
        ],
    )?;
    let (agents, agents_origin) = required(r.u64("agents")?, "agents")?;
    if agents < 2 {
        return Err(type_error(
            "agents",
            agents_origin,
            format!("need at least 2 agents, found {agents}"),
        ));
    }
    let (mean_money, mean_origin) = required(r.money("mean_money")?, "mean_money")?;
    let (rule_word, rule_origin) = required(r.string("rule"), "rule")?;
    let rule = parse_rule(&rule_word, rule_origin)?;

    let mut config = SimConfig::new(agents as usize, mean_money, rule);
    config.boundary = resolve_boundary(&mut r)?;
    if let Some((sweeps, origin)) = r.u64("sweeps")? {
        if sweeps == 0 {
            return Err(type_error("sweeps", origin, "must be at least 1"));
        }
        config.sweeps = sweeps;
    }
    if let Some((every, origin)) = r.u64("snapshot_every")? {
        if every == 0 {
            return Err(type_error("snapshot_every", origin, "must be at least 1"));
        }
        config.snapshot_every = every;
    }
    if let Some((seed, _)) = r.u64("seed")? {
        config.seed = seed;
    }
    let mut replicas = 1u32;
    if let Some((count, origin)) = r.u64("replicas")? {
        if count == 0 || count > u32::MAX as u64 {
            return Err(type_error(
                "replicas",
                origin,
                format!("must be within 1..={}, found {count}", u32::MAX),
            ));
        }
        replicas = count as u32;
    }
    if let Some((bin, origin)) = r.money("entropy_bin")? {
        if bin < 1 {
            return Err(type_error("entropy_bin", origin, "must be at least 0.01"));
        }
        config.entropy_bin_width = bin;
    }
    let mut histogram_bin = config.entropy_bin_width;
    if let Some((bin, origin)) = r.money("histogram_bin")? {
        if bin < 1 {
            return Err(type_error("histogram_bin", origin, "must be at least 0.01"));
        }
        histogram_bin = bin;
    }
    let mut deposit_rate = 0.0;
    let mut loan_rate = 0.0;
    for (key, slot) in [
        ("deposit_rate", &mut deposit_rate),
        ("loan_rate", &mut loan_rate),
    ] {
        if let Some((rate, origin)) = r.f64(key)? {
            if !(0.0..0.01).contains(&rate) {
                return Err(type_error(
                    key,
                    origin,
                    format!("per-sweep rate must be within [0, 0.01), found {rate}"),
                ));
            }
            *slot = rate;
        }
    }
    if deposit_rate > 0.0 || loan_rate > 0.0 {
        config.interest = InterestPolicy::new(deposit_rate, loan_rate);
    }
    r.finish()?;

    // Cross-key constraints (initial balance vs boundary floor, overflow)
    // are owned by the simulation config; attribute them to `mean_money`.
    config
        .validate()
        .map_err(|e| type_error("mean_money", mean_origin, e.to_string()))?;
    Ok(SimulateJob {
        config,
        replicas,
        histogram_bin,
    })
}

impl SimulateJob {
    /// Canonical resolved key/value pairs, exact under re-parsing.
    pub fn manifest_pairs(&self) -> Vec<(String, String)> {
        let c = &self.config;
        let mut pairs = vec![
            ("agents".to_string(), c.agent_count.to_string()),
            ("mean_money".to_string(), format_minor(c.initial_balance)),
            ("rule".to_string(), rule_text(&c.rule)),
        ];
        pairs.extend(boundary_pairs(&c.boundary));
        pairs.push(("sweeps".to_string(), c.sweeps.to_string()));
        pairs.push(("snapshot_every".to_string(), c.snapshot_every.to_string()));
        pairs.push(("replicas".to_string(), self.replicas.to_string()));
        pairs.push(("entropy_bin".to_string(), format_minor(c.entropy_bin_width)));
        pairs.push(("histogram_bin".to_string(), format_minor(self.histogram_bin)));
        if c.interest.enabled {
            pairs.push((
                "deposit_rate".to_string(),
                c.interest.deposit_rate_per_sweep.to_string(),
            ));
            pairs.push((
                "loan_rate".to_string(),
                c.interest.loan_rate_per_sweep.to_string(),
            ));
        }
        pairs
    }
}

/// Which fit `analyze` runs on the ingested sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitKind {
    Exponential,
    TwoClass,
}

/// Fully resolved `analyze` run.
#[derive(Debug, Clone)]
pub struct AnalyzeJob {
    pub input: PathBuf,
    pub value_column: String,
    pub weight_column: Option<String>,
    pub fit: FitKind,
    /// Lower support bound for the exponential fit, in money units.
    pub lower_bound: f64,
    pub seed: u64,
}

pub fn resolve_analyze(raw: &RawConfig) -> Result<AnalyzeJob, ConfigError> {
    let mut r = Resolver::new(
        raw,
        &["input", "value_column", "weight_column", "fit", "lower_bound", "seed"],
    )?;
    let (input, _) = required(r.string("input"), "input")?;
    let value_column = r
        .string("value_column")
        .map(|(v, _)| v)
        .unwrap_or_else(|| "balance".to_string());
    let weight_column = r.string("weight_column").map(|(v, _)| v);
    let fit = match r.string("fit") {
        None => FitKind::Exponential,
        Some((word, origin)) => match word.as_str() {
            "exponential" => FitKind::Exponential,
            "two_class" => FitKind::TwoClass,
            other => {
                return Err(type_error(
                    "fit",
                    origin,
                    format!("unknown fit `{other}`; expected exponential or two_class"),
                ))
            }
        },
    };
    let lower_bound = r.f64("lower_bound")?.map(|(v, _)| v).unwrap_or(0.0);
    let seed = r.u64("seed")?.map(|(v, _)| v).unwrap_or(0);
    r.finish()?;
    Ok(AnalyzeJob {
        input: PathBuf::from(input),
        value_column,
        weight_column,
        fit,
        lower_bound,
        seed,
    })
}

impl AnalyzeJob {
    pub fn manifest_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = vec![
            ("input".to_string(), self.input.display().to_string()),
            ("value_column".to_string(), self.value_column.clone()),
        ];
        if let Some(weight) = &self.weight_column {
            pairs.push(("weight_column".to_string(), weight.clone()));
        }
        let fit = match self.fit {
            FitKind::Exponential => "exponential",
            FitKind::TwoClass => "two_class",
        };
        pairs.push(("fit".to_string(), fit.to_string()));
        pairs.push(("lower_bound".to_string(), self.lower_bound.to_string()));
        pairs
    }
}

/// Fully resolved `market` run.
#[derive(Debug, Clone)]
pub struct MarketJob {
    pub spec: LaborMarketSpec,
    pub wage_samples: u64,
    pub seed: u64,
}

pub fn resolve_market(raw: &RawConfig) -> Result<MarketJob, ConfigError> {
    let mut r = Resolver::new(
        raw,
        &[
            "workers",
            "firms",
            "capital",
            "min_wage",
            "min_labor",
            "unemployment_weight",
            "wage_samples",
            "seed",
        ],
    )?;
    let (workers, workers_origin) = required(r.u64("workers")?, "workers")?;
    let (firms, firms_origin) = required(r.u64("firms")?, "firms")?;
    let (capital, capital_origin) = required(r.f64("capital")?, "capital")?;
    let min_wage = r.f64("min_wage")?;
    let min_labor = r.f64("min_labor")?;
    let weight = r.f64("unemployment_weight")?;
    let wage_samples = r.u64("wage_samples")?.map(|(v, _)| v).unwrap_or(0);
    let seed = r.u64("seed")?.map(|(v, _)| v).unwrap_or(0);
    r.finish()?;

    if workers == 0 {
        return Err(type_error("workers", workers_origin, "must be at least 1"));
    }
    if firms == 0 {
        return Err(type_error("firms", firms_origin, "must be at least 1"));
    }
    if capital <= 0.0 {
        return Err(type_error(
            "capital",
            capital_origin,
            format!("must be positive, found {capital}"),
        ));
    }
    if let Some((w0, origin)) = min_wage {
        if w0 < 0.0 {
            return Err(type_error(
                "min_wage",
                origin,
                format!("must be nonnegative, found {w0}"),
            ));
        }
    }
    if let Some((l0, origin)) = min_labor {
        if l0 <= 0.0 {
            return Err(type_error(
                "min_labor",
                origin,
                format!("must be positive, found {l0}"),
            ));
        }
    }
    if let Some((mu, origin)) = weight {
        if mu <= 0.0 {
            return Err(type_error(
                "unemployment_weight",
                origin,
                format!("must be positive, found {mu}"),
            ));
        }
    }
    let spec = LaborMarketSpec::with_unemployment_weight(
        workers,
        firms,
        capital,
        min_wage.map(|(v, _)| v).unwrap_or(0.0),
        min_labor.map(|(v, _)| v).unwrap_or(1.0),
        weight.map(|(v, _)| v).unwrap_or(1.0),
    )
    .map_err(|e| type_error("capital", capital_origin, e.to_string()))?;
    Ok(MarketJob {
        spec,
        wage_samples,
        seed,
    })
}

impl MarketJob {
    pub fn manifest_pairs(&self) -> Vec<(String, String)> {
        let s = &self.spec;
        vec![
            ("workers".to_string(), s.worker_count().to_string()),
            ("firms".to_string(), s.firm_count().to_string()),
            ("capital".to_string(), s.capital_per_firm().to_string()),
            ("min_wage".to_string(), s.min_wage().to_string()),
            ("min_labor".to_string(), s.min_labor().to_string()),
            (
                "unemployment_weight".to_string(),
                s.unemployment_weight().to_string(),
            ),
            ("wage_samples".to_string(), self.wage_samples.to_string()),
        ]
    }
}

/// Fully resolved `maxent` run.
#[derive(Debug, Clone)]
pub struct MaxentJob {
    pub problem: MaxEntProblem,
    pub seed: u64,
}

pub fn resolve_maxent(raw: &RawConfig) -> Result<MaxentJob, ConfigError> {
    let mut r = Resolver::new(raw, &["energies", "agents", "total_energy", "seed"])?;
    let (list, list_origin) = required(r.string("energies"), "energies")?;
    let mut energies = Vec::new();
    for piece in list.split(',') {
        let piece = piece.trim();
        match piece.parse::<f64>() {
            Ok(v) if v.is_finite() => energies.push(v),
            _ => {
                return Err(type_error(
                    "energies",
                    list_origin,
                    format!("expected comma-separated numbers, found `{piece}`"),
                ))
            }
        }
    }
    let (agents, agents_origin) = required(r.u64("agents")?, "agents")?;
    if agents == 0 {
        return Err(type_error("agents", agents_origin, "must be at least 1"));
    }
    let (total_energy, _) = required(r.f64("total_energy")?, "total_energy")?;
    let seed = r.u64("seed")?.map(|(v, _)| v).unwrap_or(0);
    r.finish()?;
    Ok(MaxentJob {
        problem: MaxEntProblem::new(energies, agents, total_energy),
        seed,
    })
}

impl MaxentJob {
    pub fn manifest_pairs(&self) -> Vec<(String, String)> {
        let energies = self
            .problem
            .energies
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",");
        vec![
            ("energies".to_string(), energies),
            ("agents".to_string(), self.problem.total_count.to_string()),
            (
                "total_energy".to_string(),
                self.problem.total_energy.to_string(),
            ),
        ]
    }
}

/// Closed-form table the `theory` subcommand emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoryCurve {
    Lorenz,
    Gini,
    IncomeDensity,
}

impl TheoryCurve {
    pub fn name(&self) -> &'static str {
        match self {
            TheoryCurve::Lorenz => "lorenz",
            TheoryCurve::Gini => "gini",
            TheoryCurve::IncomeDensity => "income_density",
        }
    }
}

/// Fully resolved `theory` run.
#[derive(Debug, Clone)]
pub struct TheoryJob {
    pub curve: TheoryCurve,
    /// Two-class income fraction for the Lorenz table.
    pub fraction: f64,
    /// Temperature for the income-density table, in money units.
    pub temperature: f64,
    /// Grid step over [0, 1] for the Lorenz and Gini tables.
    pub x_step: f64,
    pub r_max: f64,
    pub r_step: f64,
    pub seed: u64,
}

pub fn resolve_theory(raw: &RawConfig) -> Result<TheoryJob, ConfigError> {
    let mut r = Resolver::new(
        raw,
        &["curve", "fraction", "temperature", "x_step", "r_max", "r_step", "seed"],
    )?;
    let curve = match r.string("curve") {
        None => TheoryCurve::Lorenz,
        Some((word, origin)) => match word.as_str() {
            "lorenz" => TheoryCurve::Lorenz,
            "gini" => TheoryCurve::Gini,
            "income_density" => TheoryCurve::IncomeDensity,
            other => {
                return Err(type_error(
                    "curve",
                    origin,
                    format!("unknown curve `{other}`; expected lorenz, gini, or income_density"),
                ))
            }
        },
    };
    let mut fraction = 0.0;
    if let Some((f, origin)) = r.f64("fraction")? {
        if !(0.0..1.0).contains(&f) {
            return Err(type_error(
                "fraction",
                origin,
                format!("must be within [0, 1), found {f}"),
            ));
        }
        fraction = f;
    }
    let mut temperature = 1.0;
    if let Some((t, origin)) = r.f64("temperature")? {
        if t <= 0.0 {
            return Err(type_error(
                "temperature",
                origin,
                format!("must be positive, found {t}"),
            ));
        }
        temperature = t;
    }
    let mut x_step = 0.01;
    if let Some((s, origin)) = r.f64("x_step")? {
        if s <= 0.0 || s > 1.0 {
            return Err(type_error(
                "x_step",
                origin,
                format!("must be within (0, 1], found {s}"),
            ));
        }
        x_step = s;
    }
    let mut r_max = 5.0 * temperature;
    if let Some((v, origin)) = r.f64("r_max")? {
        if v <= 0.0 {
            return Err(type_error(
                "r_max",
                origin,
                format!("must be positive, found {v}"),
            ));
        }
        r_max = v;
    }
    let mut r_step = temperature / 20.0;
    if let Some((v, origin)) = r.f64("r_step")? {
        if v <= 0.0 {
            return Err(type_error(
                "r_step",
                origin,
                format!("must be positive, found {v}"),
            ));
        }
        r_step = v;
    }
    let seed = r.u64("seed")?.map(|(v, _)| v).unwrap_or(0);
    r.finish()?;
    Ok(TheoryJob {
        curve,
        fraction,
        temperature,
        x_step,
        r_max,
        r_step,
        seed,
    })
}

impl TheoryJob {
    pub fn manifest_pairs(&self) -> Vec<(String, String)> {
        vec![
            ("curve".to_string(), self.curve.name().to_string()),
            ("fraction".to_string(), self.fraction.to_string()),
            ("temperature".to_string(), self.temperature.to_string()),
            ("x_step".to_string(), self.x_step.to_string()),
            ("r_max".to_string(), self.r_max.to_string()),
            ("r_step".to_string(), self.r_step.to_string()),
        ]
    }
}
