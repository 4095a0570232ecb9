//! JSON pipeline configuration.
//!
//! ```json
//! {
//!   "categories": [
//!     { "name": "lower", "mu": 109.5, "sigma": 7.5, "weight": 1.0 }
//!   ],
//!   "kind": "rational",
//!   "p": 2.0,
//!   "encoding": "code_point",
//!   "alphabet": "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ",
//!   "key": "secret",
//!   "selection": { "top_k": 10 }
//! }
//! ```
//!
//! Only `categories` is required. `selection` is `"all"`, `{"top_k": k}`
//! or `{"threshold": tau}`. Weights are either given for every category or
//! omitted everywhere, in which case each category weighs `1/m`.

use std::path::Path;

use fuzzcrypt_core::{Alphabet, CategorySet, Encoding, FuzzyCategory, MembershipKind};
use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_P: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    Gaussian,
    #[default]
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionConfig {
    #[default]
    All,
    TopK(usize),
    Threshold(f64),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    name: String,
    mu: f64,
    sigma: f64,
    weight: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    categories: Vec<RawCategory>,
    #[serde(default)]
    kind: KindName,
    p: Option<f64>,
    #[serde(default)]
    encoding: Encoding,
    alphabet: Option<String>,
    key: Option<String>,
    #[serde(default)]
    selection: SelectionConfig,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub categories: CategorySet,
    pub encoding: Encoding,
    pub alphabet: Alphabet,
    pub key: Option<String>,
    pub selection: SelectionConfig,
}

impl PipelineConfig {
    /// The key, or a validation error when encryption needs one and none
    /// was configured.
    pub fn require_key(&self) -> Result<&str, CliError> {
        self.key.as_deref().ok_or_else(|| CliError::validation("key", "required for encrypt/decrypt"))
    }
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<PipelineConfig, CliError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<PipelineConfig, CliError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::validation("config", e.to_string()))?;
    raw.validate()
}

fn finite(field: impl Into<String>, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::validation(field, format!("must be finite, got {v}")))
    }
}

impl RawConfig {
    fn validate(self) -> Result<PipelineConfig, CliError> {
        let m = self.categories.len();
        if m == 0 {
            return Err(CliError::validation("categories", "at least one category is required"));
        }
        let given = self.categories.iter().filter(|c| c.weight.is_some()).count();
        if given != 0 && given != m {
            return Err(CliError::validation(
                "weight",
                "give a weight for every category or for none",
            ));
        }

        let mut categories = Vec::with_capacity(m);
        for (j, c) in self.categories.into_iter().enumerate() {
            let at = |f: &str| format!("categories[{j}].{f}");
            if c.name.is_empty() {
                return Err(CliError::validation(at("name"), "must not be empty"));
            }
            if categories.iter().any(|prev: &FuzzyCategory| prev.name() == c.name) {
                return Err(CliError::validation(at("name"), format!("duplicate category name {:?}", c.name)));
            }
            let mu = finite(at("mu"), c.mu)?;
            if !(c.sigma.is_finite() && c.sigma > 0.0) {
                return Err(CliError::validation(at("sigma"), format!("must be finite and > 0, got {}", c.sigma)));
            }
            let weight = c.weight.unwrap_or(1.0 / m as f64);
            if !(weight.is_finite() && weight >= 0.0) {
                return Err(CliError::validation(at("weight"), format!("must be finite and >= 0, got {weight}")));
            }
            categories.push(FuzzyCategory::new(c.name, mu, c.sigma, weight).map_err(CliError::from)?);
        }

        if let Some(p) = self.p {
            if !(p.is_finite() && p > 0.0) {
                return Err(CliError::validation("p", format!("must be finite and > 0, got {p}")));
            }
        }
        let kind = match self.kind {
            KindName::Gaussian => MembershipKind::Gaussian,
            KindName::Rational => MembershipKind::Rational {
                p: self.p.unwrap_or(DEFAULT_P),
            },
        };
        let categories = CategorySet::new(categories, kind)?;

        let alphabet = match self.alphabet {
            None => Alphabet::default(),
            Some(s) => Alphabet::new(s.chars()).map_err(|e| CliError::validation("alphabet", e.to_string()))?,
        };

        if matches!(self.key.as_deref(), Some("")) {
            return Err(CliError::validation("key", "must not be empty"));
        }

        match self.selection {
            SelectionConfig::TopK(0) => return Err(CliError::validation("selection.top_k", "k must be at least 1")),
            SelectionConfig::Threshold(t) => {
                finite("selection.threshold", t)?;
            }
            _ => {}
        }

        Ok(PipelineConfig {
            categories,
            encoding: self.encoding,
            alphabet,
            key: self.key,
            selection: self.selection,
        })
    }
}
