use exact_arith::numth::is_prime_power;
use serde_json::{json, Value};
use std::path::PathBuf;
use thiserror::Error;
use variety_model::{builtin_by_name, builtin_xn, parse_descriptor, ModelError, VarietyDescriptor};

/// Seed for every randomized check unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 0x6d61_6e69_6e6c_6162;

/// Largest field size accepted on the command line.
pub const MAX_Q: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("empty variety selector")]
    EmptySelector,
    #[error("bad family index in {0:?}")]
    BadIndex(String),
    #[error("empty q list")]
    EmptyQList,
    #[error("{0:?} is not an integer")]
    NotInteger(String),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} exceeds the supported maximum {MAX_Q}")]
    TooLarge(u64),
    #[error("reading {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Xn(usize),
    Dp6a2,
    Path(PathBuf),
}

/// `xn:<n>`, `dp6a2`, another built-in name such as `x3`, or a path to a
/// descriptor file (anything containing a path separator or ending in
/// `.json`).
pub fn parse_selector(s: &str) -> Result<Selector, ConfigError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ConfigError::EmptySelector);
    }
    if let Some(n) = s.strip_prefix("xn:") {
        return n.parse().map(Selector::Xn).map_err(|_| ConfigError::BadIndex(s.to_string()));
    }
    if s.contains('/') || s.ends_with(".json") {
        return Ok(Selector::Path(PathBuf::from(s)));
    }
    let v = builtin_by_name(s)?;
    Ok(if v.name == "dP6-A2" { Selector::Dp6a2 } else { Selector::Xn(v.t.len()) })
}

impl Selector {
    pub fn load(&self) -> Result<VarietyDescriptor, ConfigError> {
        match self {
            Selector::Xn(n) => Ok(builtin_xn(*n)?),
            Selector::Dp6a2 => Ok(variety_model::builtin_dp6a2()),
            Selector::Path(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| ConfigError::Io { path: p.display().to_string(), msg: e.to_string() })?;
                Ok(parse_descriptor(&text)?)
            }
        }
    }
}

/// Comma-separated prime powers, order kept, duplicates dropped.
pub fn parse_q_list(s: &str) -> Result<Vec<u64>, ConfigError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let q: u64 = part.parse().map_err(|_| ConfigError::NotInteger(part.to_string()))?;
        if q > MAX_Q {
            return Err(ConfigError::TooLarge(q));
        }
        if !is_prime_power(q) {
            return Err(ConfigError::NotPrimePower(q));
        }
        if !out.contains(&q) {
            out.push(q);
        }
    }
    if out.is_empty() {
        return Err(ConfigError::EmptyQList);
    }
    Ok(out)
}

/// Everything that determines a report; echoed into it.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub command: String,
    pub variety: Option<String>,
    pub q: Vec<u64>,
    pub m_max: Option<i64>,
    pub box_bound: Option<u32>,
    pub euler_bound: Option<u32>,
    pub seed: u64,
}

impl RunConfig {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "variety": self.variety,
            "q": self.q,
            "m_max": self.m_max,
            "box": self.box_bound,
            "euler_bound": self.euler_bound,
            "seed": self.seed.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(parse_selector("xn:4").unwrap(), Selector::Xn(4));
        assert_eq!(parse_selector("dp6a2").unwrap(), Selector::Dp6a2);
        assert_eq!(parse_selector("X3").unwrap(), Selector::Xn(3));
        assert_eq!(parse_selector("data/v.json").unwrap(), Selector::Path("data/v.json".into()));
        assert!(parse_selector("xn:x").is_err());
        assert!(parse_selector("torus").is_err());
        assert!(parse_selector("xn:2").unwrap().load().is_err());
    }

    #[test]
    fn q_lists() {
        assert_eq!(parse_q_list("2,3, 4,5,3").unwrap(), vec![2, 3, 4, 5]);
        assert!(matches!(parse_q_list("6"), Err(ConfigError::NotPrimePower(6))));
        assert!(matches!(parse_q_list(" , "), Err(ConfigError::EmptyQList)));
        assert!(parse_q_list("-2").is_err());
        assert!(parse_q_list("131072").is_err());
    }
}
