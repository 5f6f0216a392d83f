//! Tab-separated distribution files.
//!
//! ```text
//! # optional comments
//! outcome_id	reward	prob
//! a	0	0.5
//! b	1	0.5
//! ```
//!
//! UTF-8, LF line endings (a CR anywhere is rejected), `#` starts a comment
//! line, blank lines are ignored. Numbers use `.` as the decimal point
//! regardless of locale.

use std::path::Path;

use crate::error::{Error, Result};
use crate::policy::{validate_policy_with, BasePolicy, Jitter, Outcome};

pub const HEADER: &str = "outcome_id\treward\tprob";

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_number(field: &str, what: &str, line: usize) -> Result<f64> {
    let ok_chars = field
        .bytes()
        .all(|c| c.is_ascii_digit() || matches!(c, b'.' | b'-' | b'+' | b'e' | b'E'));
    let value = if ok_chars && !field.is_empty() { field.parse::<f64>().ok() } else { None };
    match value {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(parse_error(line, format!("{what} {field:?} is not a finite decimal number"))),
    }
}

/// Parse the rows of a distribution file without validating the policy.
pub fn parse_distribution(text: &str) -> Result<Vec<Outcome>> {
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (idx, line) in text.split('\n').enumerate() {
        let lineno = idx + 1;
        if line.contains('\r') {
            return Err(parse_error(lineno, "carriage return found; LF line endings are required"));
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != HEADER {
                return Err(parse_error(lineno, format!("expected header {HEADER:?}")));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [id, reward, prob] = fields[..] else {
            return Err(parse_error(lineno, format!("expected 3 tab-separated fields, got {}", fields.len())));
        };
        if id.is_empty() {
            return Err(parse_error(lineno, "empty outcome_id"));
        }
        let reward = parse_number(reward, "reward", lineno)?;
        let prob = parse_number(prob, "prob", lineno)?;
        rows.push(Outcome::new(id, prob, reward));
    }
    if !header_seen {
        return Err(parse_error(1, format!("missing header {HEADER:?}")));
    }
    Ok(rows)
}

/// Parse raw bytes (must be UTF-8).
pub fn parse_distribution_bytes(bytes: &[u8]) -> Result<Vec<Outcome>> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| parse_error(1, format!("input is not valid UTF-8: {e}")))?;
    parse_distribution(text)
}

/// Parse and validate a distribution.
pub fn policy_from_str(text: &str, jitter: Option<Jitter>) -> Result<BasePolicy> {
    validate_policy_with(parse_distribution(text)?, jitter)
}

/// Read, parse and validate a distribution file.
pub fn read_policy(path: &Path, jitter: Option<Jitter>) -> Result<BasePolicy> {
    let bytes = std::fs::read(path)
        .map_err(|e| parse_error(0, format!("cannot read {}: {e}", path.display())))?;
    validate_policy_with(parse_distribution_bytes(&bytes)?, jitter)
}

/// Serialize outcomes in file order; numbers round-trip exactly.
pub fn write_distribution(outcomes: &[Outcome]) -> String {
    let mut out = String::with_capacity(32 * (outcomes.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for o in outcomes {
        out.push_str(&format!("{}\t{:?}\t{:?}\n", o.id, o.reward, o.prob));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_file() {
        let text = "# example\noutcome_id\treward\tprob\nb\t1\t0.5\na\t0.0\t5e-1\n";
        let rows = parse_distribution(text).unwrap();
        assert_eq!(rows, vec![Outcome::new("b", 0.5, 1.0), Outcome::new("a", 0.5, 0.0)]);
        let p = policy_from_str(text, None).unwrap();
        assert_eq!(p.outcomes()[0].id, "a");
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("", 1),
            ("a\tb\tc\n", 1),
            ("outcome_id\treward\tprob\r\na\t0\t1\r\n", 1),
            ("outcome_id\treward\tprob\na\t0\n", 2),
            ("outcome_id\treward\tprob\na\t0\t1\textra\n", 2),
            ("outcome_id\treward\tprob\na\t0,5\t1\n", 2),
            ("outcome_id\treward\tprob\na\tnan\t1\n", 2),
            ("outcome_id\treward\tprob\na\t0\tinf\n", 2),
            ("outcome_id\treward\tprob\n\t0\t1\n", 2),
            ("outcome_id\treward\tprob\na\t 1\t1\n", 2),
        ];
        for (text, line) in cases {
            match parse_distribution(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn validation_errors_surface() {
        let text = "outcome_id\treward\tprob\na\t1\t0.5\nb\t1\t0.5\n";
        assert!(matches!(policy_from_str(text, None), Err(Error::DuplicateReward { .. })));
        let jitter = Jitter { eps: 1e-9, seed: 1 };
        assert!(policy_from_str(text, Some(jitter)).is_ok());
    }

    #[test]
    fn writer_round_trips() {
        let rows = vec![
            Outcome::new("x", 0.1, -3.25),
            Outcome::new("y", 1e-300, 1e300),
            Outcome::new("z", 0.9 - 1e-300, 0.30000000000000004),
        ];
        let text = write_distribution(&rows);
        assert_eq!(parse_distribution(&text).unwrap(), rows);
    }

    #[test]
    fn non_utf8_rejected() {
        assert!(matches!(parse_distribution_bytes(&[0xff, 0xfe]), Err(Error::Parse { .. })));
    }
}
