// SPDX-License-Identifier: Apache-2.0

//! Flat key-value config files, written as TOML.

use csbm_core::recovery::{eps_feasible, fallback_eps, RecoveryConfig};
use csbm_core::DEFAULT_K;
use toml::{Table, Value};

use crate::error::{LabError, Result};
use crate::harness::{Pipeline, SweepSpec};
use crate::io::{Generator, Meta};

fn bad(key: &str, reason: impl std::fmt::Display) -> LabError {
    LabError::Config(format!("{key}: {reason}"))
}

fn parse_table(text: &str, allowed: &[&str]) -> Result<Table> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| LabError::Config(e.message().to_string()))?;
    if let Some(key) = table.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(bad(key, "unknown key"));
    }
    Ok(table)
}

fn number(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(x) => Ok(*x as f64),
        _ => Err(bad(key, "expected a number")),
    }
}

fn unsigned(key: &str, v: &Value) -> Result<u64> {
    match v {
        Value::Integer(x) if *x >= 0 => Ok(*x as u64),
        _ => Err(bad(key, "expected a nonnegative integer")),
    }
}

fn count(key: &str, v: &Value) -> Result<usize> {
    usize::try_from(unsigned(key, v)?).map_err(|_| bad(key, "too large"))
}

fn numbers(key: &str, v: &Value) -> Result<Vec<f64>> {
    match v {
        Value::Array(items) => items.iter().map(|x| number(key, x)).collect(),
        other => Ok(vec![number(key, other)?]),
    }
}

fn strings<'a>(key: &str, v: &'a Value) -> Result<Vec<&'a str>> {
    match v {
        Value::Array(items) => items
            .iter()
            .map(|x| x.as_str().ok_or_else(|| bad(key, "expected a string")))
            .collect(),
        Value::String(s) => Ok(vec![s.as_str()]),
        _ => Err(bad(key, "expected a string or a list of strings")),
    }
}

/// `eps` from a config file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsSetting {
    /// Largest feasible value, or the fallback when none exists.
    Auto,
    Value(f64),
}

/// A recovery config file. Missing rates come from the instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoverySettings {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub s: Option<f64>,
    pub eps: EpsSetting,
    pub k: usize,
    pub seed: Option<u64>,
}

impl Default for RecoverySettings {
    fn default() -> Self {
        Self {
            alpha: None,
            beta: None,
            s: None,
            eps: EpsSetting::Auto,
            k: DEFAULT_K,
            seed: None,
        }
    }
}

impl RecoverySettings {
    pub fn parse(text: &str) -> Result<Self> {
        let table = parse_table(text, &["alpha", "beta", "s", "eps", "k", "seed"])?;
        let mut out = Self::default();
        for (key, v) in &table {
            match key.as_str() {
                "alpha" => out.alpha = Some(number(key, v)?),
                "beta" => out.beta = Some(number(key, v)?),
                "s" => out.s = Some(number(key, v)?),
                "eps" => {
                    out.eps = match v {
                        Value::String(s) if s == "auto" => EpsSetting::Auto,
                        Value::String(_) => return Err(bad(key, "expected a number or \"auto\"")),
                        other => EpsSetting::Value(number(key, other)?),
                    }
                }
                "k" => out.k = count(key, v)?,
                "seed" => out.seed = Some(unsigned(key, v)?),
                _ => unreachable!(),
            }
        }
        Ok(out)
    }

    /// Builds the config, filling missing rates from `meta`. The flag is
    /// true when `eps = auto` had to fall back.
    pub fn resolve(&self, meta: &Meta) -> Result<(RecoveryConfig, bool)> {
        let alpha = self.alpha.unwrap_or(meta.alpha);
        let beta = self.beta.unwrap_or(meta.beta);
        let s = self.s.unwrap_or(meta.s);
        let (eps, fallback) = match self.eps {
            EpsSetting::Value(eps) => (eps, false),
            EpsSetting::Auto => match eps_feasible(alpha, beta, s) {
                Some(eps) => (eps, false),
                None => (fallback_eps(alpha, beta, s), true),
            },
        };
        Ok((RecoveryConfig::new(alpha, beta, s, eps, self.k)?, fallback))
    }
}

/// Parses a sweep spec. `alpha`, `beta` and `s` take a number or a list.
pub fn parse_sweep(text: &str) -> Result<SweepSpec> {
    let allowed = ["n", "alpha", "beta", "s", "trials", "seed", "pipelines", "k", "generator"];
    let table = parse_table(text, &allowed)?;
    let need = |key: &str| table.get(key).ok_or_else(|| bad(key, "missing"));
    let mut spec = SweepSpec::new(
        count("n", need("n")?)?,
        numbers("alpha", need("alpha")?)?,
        numbers("beta", need("beta")?)?,
        numbers("s", need("s")?)?,
        count("trials", need("trials")?)?,
        table.get("seed").map(|v| unsigned("seed", v)).transpose()?.unwrap_or(0),
    );
    if let Some(v) = table.get("pipelines") {
        spec.pipelines = strings("pipelines", v)?
            .into_iter()
            .map(|s| Pipeline::parse(s).ok_or_else(|| bad("pipelines", format!("unknown pipeline {s:?}"))))
            .collect::<Result<_>>()?;
    }
    if let Some(v) = table.get("k") {
        spec.k = count("k", v)?;
    }
    if let Some(v) = table.get("generator") {
        spec.generator = match v.as_str() {
            Some("subsampling") => Generator::Subsampling,
            Some("partition") => Generator::Partition,
            _ => return Err(bad("generator", "expected \"subsampling\" or \"partition\"")),
        };
    }
    spec.validate()?;
    Ok(spec)
}
