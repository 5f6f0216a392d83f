//! n-grid specifications: `a:b:logK` (K log-spaced integers from a to b,
//! rounded and deduplicated) or an explicit comma list.

use std::fmt;
use std::str::FromStr;

use crate::error::{ExpError, Result};

/// Largest n accepted in a grid.
pub const MAX_N: u64 = 10_000_000;

/// Strictly increasing, positive sample counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGrid(Vec<u64>);

impl NGrid {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(ExpError::Config("n-grid is empty".into()));
        }
        if values[0] == 0 {
            return Err(ExpError::Config("n-grid values must be positive".into()));
        }
        if let Some(w) = values.windows(2).find(|w| w[1] <= w[0]) {
            return Err(ExpError::Config(format!(
                "n-grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if *values.last().unwrap() > MAX_N {
            return Err(ExpError::Config(format!("n-grid exceeds the maximum n = {MAX_N}")));
        }
        Ok(NGrid(values))
    }

    /// `points` log-spaced values from `start` to `stop`, rounded, deduplicated.
    pub fn log_spaced(start: u64, stop: u64, points: usize) -> Result<Self> {
        if start == 0 || stop < start {
            return Err(ExpError::Config(format!("invalid log range {start}:{stop}")));
        }
        if points == 0 {
            return Err(ExpError::Config("log grid needs at least one point".into()));
        }
        if points == 1 || start == stop {
            return NGrid::new(vec![start]);
        }
        let (lo, hi) = ((start as f64).ln(), (stop as f64).ln());
        let step = (hi - lo) / (points - 1) as f64;
        let mut values: Vec<u64> = (0..points)
            .map(|i| {
                if i + 1 == points {
                    stop
                } else {
                    ((lo + step * i as f64).exp().round() as u64).clamp(start, stop)
                }
            })
            .collect();
        values.dedup();
        NGrid::new(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }
}

impl FromStr for NGrid {
    type Err = ExpError;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |why: &str| ExpError::Config(format!("bad n-grid spec {spec:?}: {why}"));
        let int = |s: &str| s.trim().parse::<u64>().map_err(|_| bad("expected a positive integer"));
        if spec.contains(':') {
            let parts: Vec<&str> = spec.split(':').collect();
            let [a, b, k] = parts[..] else {
                return Err(bad("expected start:stop:logK"));
            };
            let k = k.trim().strip_prefix("log").ok_or_else(|| bad("third field must be logK"))?;
            let points: usize = k.parse().map_err(|_| bad("K must be an integer"))?;
            if points > 100_000 {
                return Err(bad("too many points"));
            }
            NGrid::log_spaced(int(a)?, int(b)?, points)
        } else {
            NGrid::new(spec.split(',').map(int).collect::<Result<Vec<_>>>()?)
        }
    }
}

impl fmt::Display for NGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&items.join(","))
    }
}
