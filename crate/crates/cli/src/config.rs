use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use zonomorse::coxeter::{FiniteType, TypeTag};
use zonomorse::error::{Error, Result};
use zonomorse::suites::{SuiteOptions, SUITES};
use zonomorse::zonotope::Richness;

pub const SCHEMA_VERSION: u32 = 1;

/// Suites that run on apartment patches.
const APARTMENT_SUITES: [&str; 6] = ["contains-vertex", "gradient-criterion", "depth", "no-critical-edges", "descending-join", "filtration"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Structured,
    Csv,
}

/// Scenario file contents, as written by the user.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub schema_version: Option<u32>,
    #[serde(rename = "type", default)]
    pub affine_type: Option<String>,
    #[serde(default)]
    pub radius: Option<usize>,
    #[serde(default)]
    pub richness: Option<String>,
    #[serde(default)]
    pub q: Option<u32>,
    #[serde(default)]
    pub seed: u64,
    /// Suite names, `all`, or `all-apartment`.
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

/// A checked scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub options: SuiteOptions,
    pub suites: Vec<&'static str>,
    pub format: Format,
}

pub fn parse_type(s: &str) -> Result<FiniteType> {
    s.parse::<TypeTag>().map(|t| t.finite).map_err(|e| Error::InvalidConfig(format!("type `{s}`: {e}")))
}

pub fn parse_richness(s: &str) -> Result<Richness> {
    s.parse()
}

pub fn check_radius(r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::InvalidConfig("radius must be at least 1".into()));
    }
    Ok(r)
}

pub fn check_q(q: u32) -> Result<u32> {
    if !(2..=5).contains(&q) {
        return Err(Error::InvalidConfig(format!("thickness q = {q} is not modeled; use a prime power up to 5")));
    }
    Ok(q)
}

fn suite_name(s: &str) -> Result<Vec<&'static str>> {
    let norm = s.trim().replace('_', "-");
    match norm.as_str() {
        "all" => Ok(SUITES.to_vec()),
        "all-apartment" => Ok(APARTMENT_SUITES.to_vec()),
        _ => SUITES.iter().find(|&&n| n == norm).map(|&n| vec![n]).ok_or(Error::UnknownSuite(s.to_string())),
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// Validates every field before anything is computed.
    pub fn validate(self) -> Result<Scenario> {
        if let Some(v) = self.schema_version {
            if v != SCHEMA_VERSION {
                return Err(Error::InvalidConfig(format!("schema_version {v} is not supported (expected {SCHEMA_VERSION})")));
            }
        }
        let types = self.affine_type.as_deref().map(parse_type).transpose()?.map(|t| vec![t]);
        let radius = self.radius.map(check_radius).transpose()?;
        let richness = self.richness.as_deref().map(parse_richness).transpose()?;
        let q = self.q.map(check_q).transpose()?;
        let mut suites = Vec::new();
        let names = if self.suites.is_empty() { vec!["all".to_string()] } else { self.suites.clone() };
        for s in &names {
            for n in suite_name(s)? {
                if !suites.contains(&n) {
                    suites.push(n);
                }
            }
        }
        let format = self.format.unwrap_or_default();
        Ok(Scenario { options: SuiteOptions { types, radius, richness, q, seed: self.seed }, suites, format, config: self })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_are_rejected() {
        let e = ScenarioConfig::from_json(r#"{"type": "~A2", "colour": 3}"#).unwrap_err();
        assert!(matches!(e, Error::InvalidConfig(m) if m.contains("colour")));
    }

    #[test]
    fn names_normalized_and_expanded() {
        let s = ScenarioConfig::from_json(r#"{"suites": ["gradient_criterion", "all-apartment"]}"#).unwrap().validate().unwrap();
        assert_eq!(s.suites[0], "gradient-criterion");
        assert_eq!(s.suites.len(), APARTMENT_SUITES.len());
    }

    #[test]
    fn bad_values_are_usage_errors() {
        for text in [r#"{"type": "~E9"}"#, r#"{"radius": 0}"#, r#"{"richness": "filthy"}"#, r#"{"q": 7}"#, r#"{"schema_version": 2}"#] {
            let r = ScenarioConfig::from_json(text).and_then(ScenarioConfig::validate);
            assert!(matches!(r, Err(Error::InvalidConfig(_))), "{text}");
        }
        let r = ScenarioConfig::from_json(r#"{"suites": ["nope"]}"#).unwrap().validate();
        assert!(matches!(r, Err(Error::UnknownSuite(_))));
    }
}
