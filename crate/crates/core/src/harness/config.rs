use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::scenario::DEFAULT_FRAME_LENGTH;
use crate::{ChannelGenerator, ScenarioConfig};

/// Keys accepted in a scenario file, besides `preset`.
pub const CONFIG_KEYS: [&str; 10] = [
    "name",
    "relays",
    "modulation",
    "f_sd",
    "f_sr",
    "f_rd",
    "spacing_n",
    "generator",
    "frame_length",
    "seed",
];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given more than once")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: key `{key}`: {message}")]
    BadValue { line: usize, key: String, message: String },
    #[error("unknown preset `{0}` (expected scenario_I, scenario_II or scenario_III)")]
    UnknownPreset(String),
    #[error("invalid configuration: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

struct Entry {
    line: usize,
    value: String,
}

/// Reads and validates a scenario file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

/// Parses `key = value` lines; `#` starts a comment and list values are
/// comma separated. A `preset` key seeds every field from a named scenario
/// before the remaining keys override it.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut entries: HashMap<String, Entry> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Syntax {
                line,
                message: format!("expected `key = value`, found `{content}`"),
            });
        };
        let key = key.trim().to_ascii_lowercase();
        if key != "preset" && !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey { line, key });
        }
        if entries.contains_key(&key) {
            return Err(ConfigError::DuplicateKey { line, key });
        }
        entries.insert(
            key,
            Entry {
                line,
                value: value.trim().to_string(),
            },
        );
    }

    let bad = |key: &str, e: &Entry, message: String| ConfigError::BadValue {
        line: e.line,
        key: key.to_string(),
        message,
    };
    let int = |key: &str| -> Result<Option<u64>, ConfigError> {
        entries
            .get(key)
            .map(|e| e.value.parse::<u64>().map_err(|err| bad(key, e, err.to_string())))
            .transpose()
    };
    let real = |key: &str| -> Result<Option<f64>, ConfigError> {
        entries
            .get(key)
            .map(|e| e.value.parse::<f64>().map_err(|err| bad(key, e, err.to_string())))
            .transpose()
    };
    let list = |key: &str| -> Result<Option<Vec<f64>>, ConfigError> {
        entries
            .get(key)
            .map(|e| {
                e.value
                    .split(',')
                    .map(|s| s.trim().parse::<f64>().map_err(|err| bad(key, e, err.to_string())))
                    .collect()
            })
            .transpose()
    };

    let relays = int("relays")?.map(|r| r as usize);
    let modulation = int("modulation")?.map(|m| m as usize);
    let mut missing = Vec::new();
    let mut cfg = match entries.get("preset") {
        Some(p) => ScenarioConfig::preset(&p.value, relays.unwrap_or(2), modulation.unwrap_or(2))
            .ok_or_else(|| ConfigError::UnknownPreset(p.value.clone()))?,
        None => {
            for key in ["relays", "modulation", "f_sd", "f_sr", "f_rd"] {
                if !entries.contains_key(key) {
                    missing.push(format!("{key}: required when no preset is given"));
                }
            }
            ScenarioConfig {
                name: "custom".to_string(),
                relays: relays.unwrap_or(0),
                modulation: modulation.unwrap_or(2),
                f_sd: 0.0,
                f_sr: Vec::new(),
                f_rd: Vec::new(),
                spacing_n: 1,
                generator: ChannelGenerator::Ar1,
                frame_length: DEFAULT_FRAME_LENGTH,
                seed: crate::scenario::DEFAULT_SEED,
            }
        }
    };
    if let Some(e) = entries.get("name") {
        cfg.name = e.value.clone();
    }
    if let Some(f) = real("f_sd")? {
        cfg.f_sd = f;
    }
    if let Some(v) = list("f_sr")? {
        cfg.f_sr = v;
    }
    if let Some(v) = list("f_rd")? {
        cfg.f_rd = v;
    }
    if let Some(n) = int("spacing_n")? {
        cfg.spacing_n = n as usize;
    }
    if let Some(n) = int("frame_length")? {
        cfg.frame_length = n as usize;
    }
    if let Some(s) = int("seed")? {
        cfg.seed = s;
    }
    if let Some(e) = entries.get("generator") {
        cfg.generator = e.value.parse().map_err(|m| bad("generator", e, m))?;
    }

    let absent: Vec<String> = missing.iter().filter_map(|m| m.split(':').next()).map(str::to_string).collect();
    missing.extend(
        cfg.violations()
            .into_iter()
            .filter(|v| !absent.iter().any(|key| v.starts_with(key.as_str()))),
    );
    if missing.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigError::Invalid(missing))
    }
}
