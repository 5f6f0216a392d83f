//! Built-in base policies used by the figure reproductions.

use std::fmt;
use std::str::FromStr;

use bon_core::BasePolicy;

use crate::error::{ExpError, Result};

/// Named base policies.
///
/// * `example1`: two equiprobable outcomes with rewards 0 and 1.
/// * `uniform:L` (also `uniform(L)`): L equiprobable outcomes, rewards `0..L`.
/// * `cherry_left`: support 5; the top-reward outcome has probability 1e-4,
///   the other four share the rest equally.
/// * `cherry_right`: support 200; the three highest rewards carry 1e-1,
///   1e-3 and 1e-5 (in increasing reward order), the remaining 197 outcomes
///   share the rest equally and rank below them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinScenario {
    Example1,
    Uniform(usize),
    CherryLeft,
    CherryRight,
}

/// Largest support accepted for `uniform:L`.
pub const MAX_UNIFORM_L: usize = 10_000_000;

impl BuiltinScenario {
    /// Outcome rows `(id, prob, reward)` in reward order.
    pub fn rows(&self) -> Vec<(String, f64, f64)> {
        match *self {
            BuiltinScenario::Example1 => vec![("0".into(), 0.5, 0.0), ("1".into(), 0.5, 1.0)],
            BuiltinScenario::Uniform(l) => {
                (0..l).map(|i| (format!("y{i}"), 1.0 / l as f64, i as f64)).collect()
            }
            BuiltinScenario::CherryLeft => {
                let top = 1e-4;
                let rest = (1.0 - top) / 4.0;
                let mut rows: Vec<_> = (0..4).map(|i| (format!("y{i}"), rest, i as f64)).collect();
                rows.push(("top".into(), top, 4.0));
                rows
            }
            BuiltinScenario::CherryRight => {
                let named = [("third", 1e-1), ("second", 1e-3), ("top", 1e-5)];
                let rest = (1.0 - 1e-5 - 1e-3 - 1e-1) / 197.0;
                let mut rows: Vec<_> = (0..197).map(|i| (format!("y{i}"), rest, i as f64)).collect();
                for (k, (id, p)) in named.into_iter().enumerate() {
                    rows.push((id.into(), p, (197 + k) as f64));
                }
                rows
            }
        }
    }

    pub fn policy(&self) -> Result<BasePolicy> {
        Ok(BasePolicy::new(self.rows())?)
    }

    /// File-name friendly label.
    pub fn slug(&self) -> String {
        match self {
            BuiltinScenario::Example1 => "example1".into(),
            BuiltinScenario::Uniform(l) => format!("uniform_{l}"),
            BuiltinScenario::CherryLeft => "cherry_left".into(),
            BuiltinScenario::CherryRight => "cherry_right".into(),
        }
    }
}

impl FromStr for BuiltinScenario {
    type Err = ExpError;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || ExpError::Config(format!("unknown scenario {s:?}"));
        match s {
            "example1" => return Ok(BuiltinScenario::Example1),
            "cherry_left" => return Ok(BuiltinScenario::CherryLeft),
            "cherry_right" => return Ok(BuiltinScenario::CherryRight),
            _ => {}
        }
        let size = s
            .strip_prefix("uniform:")
            .or_else(|| s.strip_prefix("uniform(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(unknown)?;
        let l: usize = size.parse().map_err(|_| unknown())?;
        if !(2..=MAX_UNIFORM_L).contains(&l) {
            return Err(ExpError::Config(format!("uniform support must be in 2..={MAX_UNIFORM_L}, got {l}")));
        }
        Ok(BuiltinScenario::Uniform(l))
    }
}

impl fmt::Display for BuiltinScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinScenario::Uniform(l) => write!(f, "uniform:{l}"),
            other => f.write_str(&other.slug()),
        }
    }
}
