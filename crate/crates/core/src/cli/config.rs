//! Run configuration: a curve document plus run options, read from JSON or TOML.

use std::collections::BTreeSet;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::CurveSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Hilbert,
    Root,
    Homology,
    Pages,
    Pe,
    BoldPe,
    Motivic,
    Hfl,
    YOps,
    Checks,
}

impl Output {
    pub const ALL: [Output; 10] = [
        Output::Hilbert,
        Output::Root,
        Output::Homology,
        Output::Pages,
        Output::Pe,
        Output::BoldPe,
        Output::Motivic,
        Output::Hfl,
        Output::YOps,
        Output::Checks,
    ];
}

impl FromStr for Output {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.trim().to_string()))
            .map_err(|_| Error::Parse(format!("unknown output '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub curve: CurveSpec,
    #[serde(default)]
    pub n_max: Option<i64>,
    #[serde(default, alias = "t_degree_max")]
    pub t_max: Option<i64>,
    #[serde(default)]
    pub weights: Option<Vec<i64>>,
    #[serde(default)]
    pub outputs: Option<BTreeSet<Output>>,
    #[serde(default)]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn new(curve: CurveSpec) -> Self {
        RunConfig { curve, n_max: None, t_max: None, weights: None, outputs: None, format: None }
    }

    pub fn with_n_max(mut self, n: i64) -> Self {
        self.n_max = Some(n);
        self
    }

    /// Parse a JSON document, or TOML when it does not start with `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
        } else {
            toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Requested outputs; all of them when none were given.
    pub fn outputs(&self) -> BTreeSet<Output> {
        match &self.outputs {
            Some(o) if !o.is_empty() => o.clone(),
            _ => Output::ALL.into_iter().collect(),
        }
    }
}

/// `a1,..,ar` as a vector.
pub fn parse_weights(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight '{x}'"))))
        .collect()
}

pub fn parse_outputs(s: &str) -> Result<BTreeSet<Output>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(Output::from_str).collect()
}
