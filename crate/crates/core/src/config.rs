//! `key = value` configuration file.
//!
//! ```text
//! # budgets
//! budget = 10000000
//! table_budget = 200000
//! field_cap = 1048576
//! modulus_cap = 1000000
//! seed = 0
//! jobs = 4
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Command-line flags
//! override values read from the file.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cosets::DEFAULT_MODULUS_CAP;
use crate::gf::DEFAULT_FIELD_CAP;
use crate::oracle::DEFAULT_CODEWORD_BUDGET;
use crate::tables::TABLE_ORACLE_BUDGET;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{value}` is not a valid value for `{key}`")]
    Value {
        line: usize,
        key: String,
        value: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Codeword budget for `code`, `css`, `conv` and `verify`.
    pub budget: u64,
    /// Codeword budget for `table`.
    pub table_budget: u64,
    /// Largest field order `q^m` that will be built.
    pub field_cap: u64,
    /// Largest modulus a coset sweep will partition.
    pub modulus_cap: u64,
    pub seed: u64,
    /// Worker threads; `None` lets rayon decide.
    pub jobs: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: DEFAULT_CODEWORD_BUDGET,
            table_budget: TABLE_ORACLE_BUDGET,
            field_cap: DEFAULT_FIELD_CAP,
            modulus_cap: DEFAULT_MODULUS_CAP,
            seed: 0,
            jobs: None,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                value.parse::<u64>().map_err(|_| ConfigError::Value {
                    line,
                    key: key.into(),
                    value: value.into(),
                })
            };
            match key {
                "budget" => cfg.budget = num()?,
                "table_budget" => cfg.table_budget = num()?,
                "field_cap" => cfg.field_cap = num()?,
                "modulus_cap" => cfg.modulus_cap = num()?,
                "seed" => cfg.seed = num()?,
                "jobs" => cfg.jobs = Some(num()? as usize),
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.into(),
                    })
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Config::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_defaults() {
        let cfg = Config::parse("# c\n\nbudget = 5\n jobs=2 \n").unwrap();
        assert_eq!(cfg.budget, 5);
        assert_eq!(cfg.jobs, Some(2));
        assert_eq!(cfg.table_budget, TABLE_ORACLE_BUDGET);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(Config::parse("budget"), Err(ConfigError::Syntax { line: 1 })));
        assert!(matches!(
            Config::parse("\nfoo = 1"),
            Err(ConfigError::UnknownKey { line: 2, .. })
        ));
        assert!(matches!(Config::parse("seed = x"), Err(ConfigError::Value { .. })));
    }
}
