//! Flat `key = value` configuration files.
//!
//! Blank lines and `#` comments are ignored. Every key is optional; missing
//! keys take the defaults below. Unknown and repeated keys are rejected.
//!
//! | key          | default                      |
//! |--------------|------------------------------|
//! | link         | uplink                       |
//! | n            | 2                            |
//! | rs_bits      | 0.1                          |
//! | lambda_db    | 1.25 (uplink), 5 (downlink)  |
//! | g_main       | 1.0                          |
//! | g_eve        | 1.1                          |
//! | r_g          | 15                           |
//! | chord_l      | 15                           |
//! | chord_b      | 15                           |
//! | r_s          | 20                           |
//! | height_h     | 10                           |
//! | mc_samples   | 100000                       |
//! | seed         | 1                            |
//! | quad_rel_tol | 1e-9                         |

use std::fmt;
use std::path::{Path, PathBuf};

use uavsec_core::montecarlo::MIN_TRIALS;
use uavsec_core::{CapGeometry, ChordGeometry, DownlinkScenario, QuadratureConfig, Scenario, UplinkScenario};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error("constraint violated: {0}")]
    Constraint(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Link {
    #[default]
    Uplink,
    Downlink,
}

impl Link {
    /// Short tag used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            Link::Uplink => "up",
            Link::Downlink => "dn",
        }
    }

    pub fn default_lambda_db(&self) -> f64 {
        match self {
            Link::Uplink => 1.25,
            Link::Downlink => 5.0,
        }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Link::Uplink => "uplink",
            Link::Downlink => "downlink",
        })
    }
}

impl std::str::FromStr for Link {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uplink" | "up" => Ok(Link::Uplink),
            "downlink" | "dn" | "down" => Ok(Link::Downlink),
            _ => Err(format!("link must be uplink or downlink, got {s:?}")),
        }
    }
}

/// Every tunable of a run. `g_main`/`g_eve` are g_GS/g_GE on the uplink and
/// g_SG/g_SE on the downlink.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub link: Link,
    pub n: f64,
    pub rs_bits: f64,
    pub lambda_db: Option<f64>,
    pub g_main: f64,
    pub g_eve: f64,
    pub r_g: f64,
    pub chord_l: f64,
    pub chord_b: f64,
    pub r_s: f64,
    pub height_h: f64,
    pub mc_samples: u64,
    pub seed: u64,
    pub quad_rel_tol: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            link: Link::Uplink,
            n: 2.0,
            rs_bits: 0.1,
            lambda_db: None,
            g_main: 1.0,
            g_eve: 1.1,
            r_g: 15.0,
            chord_l: 15.0,
            chord_b: 15.0,
            r_s: 20.0,
            height_h: 10.0,
            mc_samples: 100_000,
            seed: 1,
            quad_rel_tol: 1e-9,
        }
    }
}

/// Names of the real-valued fields that `set_real` accepts, in CSV order.
pub const REAL_FIELDS: [&str; 10] = [
    "n", "rs_bits", "lambda_db", "g_main", "g_eve", "r_g", "chord_b", "chord_l", "r_s", "height_h",
];

const KEYS: [&str; 14] = [
    "link",
    "n",
    "rs_bits",
    "lambda_db",
    "g_main",
    "g_eve",
    "r_g",
    "chord_l",
    "chord_b",
    "r_s",
    "height_h",
    "mc_samples",
    "seed",
    "quad_rel_tol",
];

impl Params {
    pub fn lambda_db(&self) -> f64 {
        self.lambda_db.unwrap_or_else(|| self.link.default_lambda_db())
    }

    pub fn lambda_linear(&self) -> f64 {
        10f64.powf(self.lambda_db() / 10.0)
    }

    pub fn real(&self, name: &str) -> Option<f64> {
        Some(match name {
            "n" => self.n,
            "rs_bits" => self.rs_bits,
            "lambda_db" => self.lambda_db(),
            "g_main" => self.g_main,
            "g_eve" => self.g_eve,
            "r_g" => self.r_g,
            "chord_b" => self.chord_b,
            "chord_l" => self.chord_l,
            "r_s" => self.r_s,
            "height_h" => self.height_h,
            _ => return None,
        })
    }

    /// Assigns a real-valued field by name.
    pub fn set_real(&mut self, name: &str, v: f64) -> Result<(), ConfigError> {
        match name {
            "n" => self.n = v,
            "rs_bits" => self.rs_bits = v,
            "lambda_db" => self.lambda_db = Some(v),
            "g_main" => self.g_main = v,
            "g_eve" => self.g_eve = v,
            "r_g" => self.r_g = v,
            "chord_b" => self.chord_b = v,
            "chord_l" => self.chord_l = v,
            "r_s" => self.r_s = v,
            "height_h" => self.height_h = v,
            _ => {
                return Err(ConfigError::Invalid(format!(
                    "{name:?} is not a real-valued parameter (expected one of {})",
                    REAL_FIELDS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Assigns any key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "link" => self.link = value.parse()?,
            "mc_samples" => self.mc_samples = parse_count(value)?,
            "seed" => self.seed = value.parse().map_err(|_| format!("seed must be an unsigned integer, got {value:?}"))?,
            "quad_rel_tol" => self.quad_rel_tol = parse_real(value)?,
            k if REAL_FIELDS.contains(&k) => self.set_real(k, parse_real(value)?).map_err(|e| e.to_string())?,
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Checks every parameter constraint, whichever link is selected.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let checks: [(bool, &'static str); 14] = [
            (self.n >= 2.0 && self.n.is_finite(), "n >= 2"),
            (self.rs_bits >= 0.0 && self.rs_bits.is_finite(), "rs_bits >= 0"),
            (self.lambda_db().is_finite(), "lambda_db finite"),
            (self.g_main > 0.0 && self.g_main.is_finite(), "g_main > 0"),
            (self.g_eve > 0.0 && self.g_eve.is_finite(), "g_eve > 0"),
            (self.chord_b > 0.0 && self.chord_b.is_finite(), "chord_b > 0"),
            (self.chord_l > 0.0, "chord_l > 0"),
            (self.chord_l <= 2.0 * self.chord_b, "chord_l <= 2*chord_b"),
            (self.r_g.is_finite() && self.chord_b <= self.r_g, "chord_b <= r_g"),
            (self.r_s > 0.0 && self.r_s.is_finite(), "r_s > 0"),
            (self.height_h >= 0.0, "height_h >= 0"),
            (self.height_h <= self.r_s, "height_h <= r_s"),
            (self.mc_samples >= MIN_TRIALS, "mc_samples >= 1000"),
            (self.quad_rel_tol > 0.0 && self.quad_rel_tol < 1e-2, "0 < quad_rel_tol < 1e-2"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, what)) => Err(ConfigError::Constraint(what)),
            None => Ok(()),
        }
    }

    pub fn quad_config(&self) -> QuadratureConfig {
        QuadratureConfig::with_rel_tol(self.quad_rel_tol)
    }

    pub fn uplink(&self) -> Result<UplinkScenario, ConfigError> {
        self.validate()?;
        let chord = ChordGeometry::new(self.chord_b, self.chord_l).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(UplinkScenario {
            chord,
            r_g: self.r_g,
            n: self.n,
            lambda_g: self.lambda_linear(),
            g_gs: self.g_main,
            g_ge: self.g_eve,
            rs_bits: self.rs_bits,
        })
    }

    pub fn downlink(&self) -> Result<DownlinkScenario, ConfigError> {
        self.validate()?;
        let cap = CapGeometry::new(self.r_s, self.height_h).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(DownlinkScenario {
            cap,
            n: self.n,
            lambda_s: self.lambda_linear(),
            g_sg: self.g_main,
            g_se: self.g_eve,
            rs_bits: self.rs_bits,
        })
    }

    pub fn scenario(&self) -> Result<Scenario, ConfigError> {
        Ok(match self.link {
            Link::Uplink => Scenario::Uplink(self.uplink()?),
            Link::Downlink => Scenario::Downlink(self.downlink()?),
        })
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("expected a finite number, got {s:?}")),
    }
}

// Accepts plain integers and exact float notation such as 1e6.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v < 1.8e19 => Ok(v as u64),
        _ => Err(format!("expected a non-negative integer, got {s:?}")),
    }
}

/// Parses configuration text. Constraint checks run after all keys are read.
pub fn parse_config_str(text: &str) -> Result<Params, ConfigError> {
    let mut params = Params::default();
    let mut seen: Vec<&str> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Parse {
                line,
                detail: format!("expected key = value, got {content:?}"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(ConfigError::Parse {
                line,
                detail: format!("unknown key {key:?}"),
            });
        }
        if seen.contains(&key) {
            return Err(ConfigError::Parse {
                line,
                detail: format!("duplicate key {key:?}"),
            });
        }
        seen.push(key);
        params
            .set(key, value)
            .map_err(|detail| ConfigError::Parse { line, detail: format!("{key}: {detail}") })?;
    }
    params.validate()?;
    Ok(params)
}

pub fn parse_config(path: &Path) -> Result<Params, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text)
}
