//! Run configuration: a `key=value` file merged under command-line flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use flipdist::search::MAX_SEARCH_N;
use flipdist::sphere::MIN_ROTATED_N;
use flipdist::weights::{Variant, VariantConfig};
use thiserror::Error;

/// Keys accepted in a config file.
pub const CONFIG_KEYS: &[&str] = &[
    "n",
    "variant",
    "c",
    "c_outer",
    "r0",
    "r",
    "node_budget",
    "solver_budget",
    "threads",
    "output",
    "format",
    "max_n",
];

/// Largest `n` the weight sweep accepts unless raised with `max_n`.
pub const DEFAULT_SWEEP_MAX_N: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid value for `{key}`: {message}")]
    Value { key: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// Parsed `key=value` pairs, in key order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    /// Blank lines and `#` comments are skipped. Unknown and repeated keys
    /// are errors.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let bad = |message: String| ConfigError::Syntax { line, message };
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| bad(format!("expected `key=value`, found `{body}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if !CONFIG_KEYS.contains(&key) {
                return Err(bad(format!("unknown key `{key}`")));
            }
            if value.is_empty() {
                return Err(bad(format!("empty value for `{key}`")));
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(bad(format!("key `{key}` given twice")));
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn typed<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse().map_err(|e: T::Err| ConfigError::Value {
                    key: key.into(),
                    message: e.to_string(),
                })
            })
            .transpose()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Dot,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Dot => "dot",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "dot" => Ok(Format::Dot),
            _ => Err(format!("unknown format `{s}` (expected text, csv or dot)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Distance {
        trees: bool,
        show_path: bool,
        decompose: bool,
        /// Fall back to IDA* when the BFS budget runs out.
        fallback: bool,
    },
    Bound {
        verify: Option<PathBuf>,
        certificate: Option<PathBuf>,
    },
    Construct {
        single: bool,
        relaxed: bool,
        out_dir: Option<PathBuf>,
    },
    VerifyWeights {
        verify: Option<PathBuf>,
        certificate: Option<PathBuf>,
        provenance: Option<PathBuf>,
        vertex: usize,
    },
    Diameter {
        sweep: bool,
        sampled: Option<usize>,
        seed: u64,
    },
    Convert,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Distance { .. } => "distance",
            Command::Bound { .. } => "bound",
            Command::Construct { .. } => "construct",
            Command::VerifyWeights { .. } => "verify-weights",
            Command::Diameter { .. } => "diameter",
            Command::Convert => "convert",
        }
    }
}

/// Values given on the command line; `None` falls back to the config file,
/// then to the default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub n: Option<usize>,
    pub variant: Option<Variant>,
    pub c: Option<usize>,
    pub c_outer: Option<usize>,
    pub r0: Option<usize>,
    pub r: Option<usize>,
    pub node_budget: Option<usize>,
    pub solver_budget: Option<usize>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub max_n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub n: Option<usize>,
    pub variant: Variant,
    pub c: usize,
    /// Defaults to `10c + 1`.
    pub c_outer: Option<usize>,
    pub r0: usize,
    /// Rotation offset; chosen by the separation rule when absent.
    pub r: Option<usize>,
    pub node_budget: usize,
    /// Defaults to the variant's own budget.
    pub solver_budget: Option<usize>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub max_n: usize,
}

impl RunConfig {
    pub fn resolve(
        command: Command,
        inputs: Vec<PathBuf>,
        file: &ConfigFile,
        flags: Overrides,
    ) -> Result<Self, ConfigError> {
        let defaults = flipdist::search::SearchOptions::default();
        let cfg = RunConfig {
            command,
            inputs,
            n: flags.n.or(file.typed("n")?),
            variant: flags.variant.or(file.typed("variant")?).unwrap_or(Variant::Simplified),
            c: flags.c.or(file.typed("c")?).unwrap_or(flipdist::weights::DEFAULT_C),
            c_outer: flags.c_outer.or(file.typed("c_outer")?),
            r0: flags.r0.or(file.typed("r0")?).unwrap_or(1),
            r: flags.r.or(file.typed("r")?),
            node_budget: flags
                .node_budget
                .or(file.typed("node_budget")?)
                .unwrap_or(defaults.node_budget),
            solver_budget: flags.solver_budget.or(file.typed("solver_budget")?),
            threads: flags.threads.or(file.typed("threads")?),
            output: flags.output.or(file.typed("output")?),
            format: flags.format.or(file.typed("format")?).unwrap_or_default(),
            max_n: flags.max_n.or(file.typed("max_n")?).unwrap_or(DEFAULT_SWEEP_MAX_N),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The weight-engine configuration these values describe.
    pub fn variant_config(&self) -> VariantConfig {
        let mut v = match self.variant {
            Variant::Simplified => VariantConfig::simplified(self.c),
            Variant::Full => VariantConfig::full(self.c),
        };
        if let Some(c_outer) = self.c_outer {
            v.c_outer = c_outer;
        }
        v.r0 = self.r0;
        if let Some(b) = self.solver_budget {
            v.solver_budget = b;
        }
        v
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        if self.threads == Some(0) {
            return invalid("threads must be at least 1".into());
        }
        if self.node_budget == 0 {
            return invalid("node_budget must be at least 1".into());
        }
        self.variant_config()
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let need_inputs = |k: usize| -> Result<(), ConfigError> {
            if self.inputs.len() != k {
                return Err(ConfigError::Invalid(format!(
                    "{} expects {k} input file(s), got {}",
                    self.command.name(),
                    self.inputs.len()
                )));
            }
            Ok(())
        };
        let need_n = || {
            self.n
                .ok_or_else(|| ConfigError::Invalid(format!("{} requires -n", self.command.name())))
        };
        match &self.command {
            Command::Distance { .. } | Command::Bound { .. } => need_inputs(2)?,
            Command::Convert => need_inputs(1)?,
            Command::Construct { single, .. } => {
                need_inputs(0)?;
                let n = need_n()?;
                let min = if *single { 3 } else { MIN_ROTATED_N };
                if n < min {
                    return invalid(format!("construct needs n >= {min}, got {n}"));
                }
            }
            Command::VerifyWeights { .. } => {
                need_inputs(0)?;
                let n = need_n()?;
                if n < MIN_ROTATED_N || n > self.max_n {
                    return invalid(format!(
                        "verify-weights needs {MIN_ROTATED_N} <= n <= {} (max_n), got {n}",
                        self.max_n
                    ));
                }
            }
            Command::Diameter { sampled, .. } => {
                need_inputs(0)?;
                let n = need_n()?;
                let max = if sampled.is_some() {
                    MAX_SEARCH_N
                } else {
                    flipdist::search::MAX_EXHAUSTIVE_DIAMETER_N
                };
                if n == 0 || n > max {
                    return invalid(format!("diameter needs 1 <= n <= {max}, got {n}"));
                }
                if *sampled == Some(0) {
                    return invalid("--sampled needs at least one source".into());
                }
            }
        }
        Ok(())
    }
}
