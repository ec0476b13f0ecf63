use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::character::LimitConfig;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    /// Double-double arithmetic, about 32 digits.
    Extended,
}

impl FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "double" => Ok(Self::Double),
            "extended" => Ok(Self::Extended),
            _ => Err(format!("unknown precision {s:?} (expected double or extended)")),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Double => "double",
            Self::Extended => "extended",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub precision: Precision,
    pub limit: LimitConfig,
    /// Relative tolerance for tau multiset comparison.
    pub compare_tol: f64,
    /// Coefficient tolerance for the x/y Wada agreement diagnostic.
    pub wada_tol: f64,
    /// Attach the torus closed-form value to records of `b(q, 1)`.
    pub torus_cross_check: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            precision: Precision::Double,
            limit: LimitConfig::default(),
            compare_tol: 1e-6,
            wada_tol: 1e-8,
            torus_cross_check: true,
        }
    }
}

impl Config {
    /// Hash of every setting plus the crate version; cache entries are keyed on it.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update(serde_json::to_vec(self).expect("config serializes"));
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fingerprint_tracks_settings() {
        let a = Config::default();
        let mut b = a.clone();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 16);
        b.limit.h0 = 5e-3;
        assert_ne!(a.fingerprint(), b.fingerprint());
        let mut c = a.clone();
        c.precision = Precision::Extended;
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn precision_parsing() {
        assert_eq!("extended".parse::<Precision>().unwrap(), Precision::Extended);
        assert!("quad".parse::<Precision>().is_err());
        assert_eq!(Precision::Double.to_string(), "double");
    }
}
