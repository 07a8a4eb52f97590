use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use su21_core::lie::Weight;
use su21_core::rational;
use su21_core::Rational;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Structure,
    Clifford,
    Enveloping,
    Algebra,
    Module,
    Cohomology,
    Induction,
}

impl Suite {
    /// Dependency order.
    pub const ALL: [Suite; 7] =
        [Suite::Structure, Suite::Clifford, Suite::Enveloping, Suite::Algebra, Suite::Module, Suite::Cohomology, Suite::Induction];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Clifford => "clifford",
            Suite::Enveloping => "enveloping",
            Suite::Algebra => "algebra",
            Suite::Module => "module",
            Suite::Cohomology => "cohomology",
            Suite::Induction => "induction",
        }
    }

    pub fn needs_module(self) -> bool {
        matches!(self, Suite::Module | Suite::Cohomology | Suite::Induction)
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL.iter().copied().find(|x| x.name() == s.trim()).ok_or_else(|| CliError::Config(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    #[serde(alias = "md")]
    Markdown,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(CliError::Config(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub p1: Rational,
    pub p2: Rational,
    pub window: (u32, u32),
    pub max_deg: u32,
    pub basis: (u32, u32),
    pub suites: Vec<Suite>,
    pub threads: usize,
    pub format: Format,
    pub fail_fast: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p1: rational::int(1),
            p2: rational::int(-1),
            window: (4, 4),
            max_deg: 3,
            basis: (3, 3),
            suites: Suite::ALL.to_vec(),
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            format: Format::Json,
            fail_fast: false,
        }
    }
}

/// Partial configuration, as read from a file or assembled from flags.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub p1: Option<String>,
    pub p2: Option<String>,
    pub window: Option<(u32, u32)>,
    #[serde(alias = "max_deg")]
    pub deg: Option<u32>,
    pub basis: Option<(u32, u32)>,
    pub suites: Option<Vec<Suite>>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub fail_fast: Option<bool>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    rational::parse(s).map_err(|_| CliError::Config(format!("'{s}' is not a rational number")))
}

/// Parses `"N,M"`.
pub fn parse_pair(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Config(format!("expected two counts 'N,M', got '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl RunConfig {
    pub fn apply(&mut self, layer: &ConfigLayer) -> Result<(), CliError> {
        if let Some(p1) = &layer.p1 {
            self.p1 = parse_rational(p1)?;
        }
        if let Some(p2) = &layer.p2 {
            self.p2 = parse_rational(p2)?;
        }
        if let Some(w) = layer.window {
            self.window = w;
        }
        if let Some(d) = layer.deg {
            self.max_deg = d;
        }
        if let Some(b) = layer.basis {
            self.basis = b;
        }
        if let Some(s) = &layer.suites {
            let mut s = s.clone();
            s.sort();
            s.dedup();
            self.suites = s;
        }
        if let Some(t) = layer.threads {
            self.threads = t;
        }
        if let Some(f) = layer.format {
            self.format = f;
        }
        if let Some(f) = layer.fail_fast {
            self.fail_fast = f;
        }
        Ok(())
    }

    /// Defaults, then the config file, then flags, then `SU21_THREADS`.
    pub fn resolve(file: Option<&str>, flags: &ConfigLayer) -> Result<RunConfig, CliError> {
        let mut c = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
            let layer: ConfigLayer = serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
            c.apply(&layer)?;
        }
        c.apply(flags)?;
        if let Ok(t) = std::env::var("SU21_THREADS") {
            c.threads = t.trim().parse().map_err(|_| CliError::Config(format!("SU21_THREADS='{t}' is not a count")))?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn p(&self) -> Weight {
        Weight::new(self.p1.clone(), self.p2.clone())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [self.window.0, self.window.1, self.max_deg, self.basis.0, self.basis.1];
        if positive.contains(&0) || self.threads == 0 {
            return Err(CliError::Config("window, degree, basis bounds and threads must be positive".into()));
        }
        if self.suites.contains(&Suite::Induction) {
            let need_n = self.basis.0.max(self.max_deg).max(3);
            let need_m = self.basis.1.max(self.max_deg).max(3);
            if self.window.0 < need_n || self.window.1 < need_m {
                return Err(CliError::Config(format!(
                    "the induction suite needs a window of at least {need_n},{need_m}, got {},{}",
                    self.window.0, self.window.1
                )));
            }
        }
        Ok(())
    }

    /// Config echo for reports, with rationals as `"num/den"`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": [rational::format_fraction(&self.p1), rational::format_fraction(&self.p2)],
            "window": [self.window.0, self.window.1],
            "max_deg": self.max_deg,
            "basis": [self.basis.0, self.basis.1],
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "fail_fast": self.fail_fast,
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layering() {
        let mut c = RunConfig::default();
        let file: ConfigLayer = serde_json::from_str(r#"{"p1": "4/3", "window": [5, 6], "suites": ["module", "structure"]}"#).unwrap();
        c.apply(&file).unwrap();
        c.apply(&ConfigLayer { window: Some((4, 4)), ..Default::default() }).unwrap();
        assert_eq!(c.p1, rational::ratio(4, 3));
        assert_eq!(c.window, (4, 4));
        assert_eq!(c.suites, vec![Suite::Structure, Suite::Module]);
        assert!(serde_json::from_str::<ConfigLayer>(r#"{"colour": 1}"#).is_err());
        assert_eq!(parse_pair("3, 4").unwrap(), (3, 4));
        assert!(parse_pair("3").is_err());
    }
}
