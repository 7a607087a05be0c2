use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hahn_core::figures::Params;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Command of a run, written as in the command line: `figure 4`, `phase 1`,
/// `spectrum 3`, `reconstruct`, `check all`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Figure(u32),
    Phase(u32),
    Spectrum(u32),
    Reconstruct,
    Check(String),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Figure(id) => write!(f, "figure {id}"),
            Command::Phase(id) => write!(f, "phase {id}"),
            Command::Spectrum(id) => write!(f, "spectrum {id}"),
            Command::Reconstruct => f.write_str("reconstruct"),
            Command::Check(suite) => write!(f, "check {suite}"),
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let id = |w: &str| {
            w.parse::<u32>()
                .map_err(|_| format!("expected a numeric id, got '{w}'"))
        };
        match words.as_slice() {
            ["figure", n] => Ok(Command::Figure(id(n)?)),
            ["phase", n] => Ok(Command::Phase(id(n)?)),
            ["spectrum", n] => Ok(Command::Spectrum(id(n)?)),
            ["reconstruct"] => Ok(Command::Reconstruct),
            ["check"] => Ok(Command::Check("all".into())),
            ["check", suite] => Ok(Command::Check(suite.to_string())),
            _ => Err(format!("unrecognized command '{s}'")),
        }
    }
}

impl Serialize for Command {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Command {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub parameters: Params,
    #[serde(default)]
    pub output: Output,
}

/// Parse a `key=value` flag.
pub fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(format!("empty parameter name in '{s}'"));
    }
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("parameter {k}: '{v}' is not a number"))?;
    Ok((k.to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_text_round_trip() {
        for text in [
            "figure 4",
            "phase 1",
            "spectrum 3",
            "reconstruct",
            "check specfun",
        ] {
            assert_eq!(text.parse::<Command>().unwrap().to_string(), text);
        }
        assert!("figure".parse::<Command>().is_err());
        assert!("plot 1".parse::<Command>().is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let mut parameters = Params::new();
        parameters.insert("mu".into(), -14.5);
        let cfg = RunConfig {
            command: Command::Figure(1),
            parameters,
            output: Output {
                path: Some("f1.csv".into()),
                format: Format::Csv,
            },
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
    }

    #[test]
    fn params() {
        assert_eq!(parse_param("mu=-14.5").unwrap(), ("mu".into(), -14.5));
        assert!(parse_param("mu").is_err());
        assert!(parse_param("mu=x").is_err());
        assert!(parse_param("=1").is_err());
    }
}
