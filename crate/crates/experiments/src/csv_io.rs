//! CSV schemas for sweep and Monte Carlo variance output.
//!
//! RFC 4180 layout with LF record terminators; floats are written with 17
//! significant digits in scientific notation so every `f64` survives a
//! parse/emit round trip byte for byte.

use bon_core::KlReport;

use crate::error::{ExpError, Result};

pub const SWEEP_HEADER: [&str; 12] = [
    "n",
    "exact_kl",
    "formula",
    "alt_expected",
    "proposed_expected",
    "gap_upper",
    "gap_lower",
    "gap_lower_simple",
    "thm4_bound",
    "eps_inf",
    "expected_reward",
    "mc_tv",
];

pub const MC_VAR_HEADER: [&str; 10] = [
    "n",
    "samples",
    "proposed_mean",
    "proposed_sd",
    "proposed_expected",
    "alt_mean",
    "alt_sd",
    "alt_expected",
    "proposed_within_5se",
    "alt_within_5se",
];

/// One row of a sweep CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub report: KlReport,
    pub expected_reward: f64,
    pub mc_tv: Option<f64>,
}

impl SweepRow {
    /// Value of a float column by header name.
    pub fn column(&self, name: &str) -> Option<f64> {
        let r = &self.report;
        Some(match name {
            "n" => r.n as f64,
            "exact_kl" => r.exact_kl,
            "formula" => r.formula,
            "alt_expected" => r.alt_estimator_expected,
            "proposed_expected" => r.proposed_estimator_expected,
            "gap_upper" => r.gap_upper,
            "gap_lower" => r.gap_lower,
            "gap_lower_simple" => r.gap_lower_simple,
            "thm4_bound" => r.thm4_bound,
            "eps_inf" => r.eps_inf,
            "expected_reward" => self.expected_reward,
            "mc_tv" => return self.mc_tv,
            _ => return None,
        })
    }
}

/// One row of a Monte Carlo variance CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct McVarRow {
    pub n: u64,
    pub samples: u64,
    pub proposed_mean: f64,
    pub proposed_sd: f64,
    pub proposed_expected: f64,
    pub alt_mean: f64,
    pub alt_sd: f64,
    pub alt_expected: f64,
    pub proposed_within_5se: bool,
    pub alt_within_5se: bool,
}

/// `f64` with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("csv output is ASCII")
}

/// Serialize sweep rows, re-checking every report invariant first.
pub fn write_sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = writer();
    w.write_record(SWEEP_HEADER).expect("in-memory write");
    for row in rows {
        row.report.check_invariants()?;
        let r = &row.report;
        let mut rec = vec![r.n.to_string()];
        rec.extend(
            [
                r.exact_kl,
                r.formula,
                r.alt_estimator_expected,
                r.proposed_estimator_expected,
                r.gap_upper,
                r.gap_lower,
                r.gap_lower_simple,
                r.thm4_bound,
                r.eps_inf,
                row.expected_reward,
            ]
            .map(fmt_f64),
        );
        rec.push(row.mc_tv.map(fmt_f64).unwrap_or_default());
        w.write_record(&rec).expect("in-memory write");
    }
    Ok(finish(w))
}

pub fn write_mc_var_csv(rows: &[McVarRow]) -> String {
    let mut w = writer();
    w.write_record(MC_VAR_HEADER).expect("in-memory write");
    for r in rows {
        let mut rec = vec![r.n.to_string(), r.samples.to_string()];
        rec.extend(
            [r.proposed_mean, r.proposed_sd, r.proposed_expected, r.alt_mean, r.alt_sd, r.alt_expected]
                .map(fmt_f64),
        );
        rec.push(r.proposed_within_5se.to_string());
        rec.push(r.alt_within_5se.to_string());
        w.write_record(&rec).expect("in-memory write");
    }
    finish(w)
}

fn records(text: &str, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());
    let got = rdr.headers().map_err(|e| ExpError::Parse(format!("csv header: {e}")))?;
    if got.iter().ne(header.iter().copied()) {
        return Err(ExpError::Parse(format!("unexpected csv header {:?}", got.iter().collect::<Vec<_>>())));
    }
    rdr.records()
        .map(|r| r.map_err(|e| ExpError::Parse(format!("csv record: {e}"))))
        .collect()
}

fn field_f64(rec: &csv::StringRecord, i: usize) -> Result<f64> {
    let s = &rec[i];
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ExpError::Parse(format!("column {} is not a finite number: {s:?}", i + 1))),
    }
}

fn field_u64(rec: &csv::StringRecord, i: usize) -> Result<u64> {
    rec[i]
        .parse::<u64>()
        .map_err(|_| ExpError::Parse(format!("column {} is not an unsigned integer: {:?}", i + 1, &rec[i])))
}

fn field_bool(rec: &csv::StringRecord, i: usize) -> Result<bool> {
    match &rec[i] {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(ExpError::Parse(format!("column {} is not a boolean: {other:?}", i + 1))),
    }
}

/// Parse a sweep CSV produced by [`write_sweep_csv`].
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>> {
    records(text, &SWEEP_HEADER)?
        .iter()
        .map(|rec| {
            let f = |i| field_f64(rec, i);
            let report = KlReport {
                n: field_u64(rec, 0)?,
                exact_kl: f(1)?,
                formula: f(2)?,
                alt_estimator_expected: f(3)?,
                proposed_estimator_expected: f(4)?,
                gap_upper: f(5)?,
                gap_lower: f(6)?,
                gap_lower_simple: f(7)?,
                thm4_bound: f(8)?,
                eps_inf: f(9)?,
            };
            let mc_tv = if rec[11].is_empty() { None } else { Some(f(11)?) };
            Ok(SweepRow { report, expected_reward: f(10)?, mc_tv })
        })
        .collect()
}

/// Parse a Monte Carlo variance CSV produced by [`write_mc_var_csv`].
pub fn parse_mc_var_csv(text: &str) -> Result<Vec<McVarRow>> {
    records(text, &MC_VAR_HEADER)?
        .iter()
        .map(|rec| {
            let f = |i| field_f64(rec, i);
            Ok(McVarRow {
                n: field_u64(rec, 0)?,
                samples: field_u64(rec, 1)?,
                proposed_mean: f(2)?,
                proposed_sd: f(3)?,
                proposed_expected: f(4)?,
                alt_mean: f(5)?,
                alt_sd: f(6)?,
                alt_expected: f(7)?,
                proposed_within_5se: field_bool(rec, 8)?,
                alt_within_5se: field_bool(rec, 9)?,
            })
        })
        .collect()
}
