//! CSV and JSON rendering of criterion reports and scan results.

use std::io::Write;

use entrosep_core::criteria::CriterionReport;
use entrosep_core::linalg::Subsystem;
use serde::ser::Serializer;
use serde::Serialize;

use crate::error::CliError;

/// Parameter columns, in CSV order.
pub const PARAM_COLUMNS: [&str; 7] = ["alpha", "beta", "k", "kappa", "a", "d", "theta"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Named real parameters. Infinite values print as `"inf"`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(pub Vec<(&'static str, f64)>);

impl Params {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    pub fn set(&mut self, name: &'static str, value: f64) {
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name, value)),
        }
    }

    fn columns(&self) -> Vec<String> {
        PARAM_COLUMNS.iter().map(|c| self.get(c).map(format_number).unwrap_or_default()).collect()
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut ordered: Vec<_> = self.0.clone();
        ordered.sort_by_key(|(n, _)| PARAM_COLUMNS.iter().position(|c| c == n).unwrap_or(usize::MAX));
        let mut map = s.serialize_map(Some(ordered.len()))?;
        for (k, v) in &ordered {
            map.serialize_entry(k, &Number(*v))?;
        }
        map.end()
    }
}

/// A float that serializes infinities as strings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Number(pub f64);

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else if self.0 > 0.0 {
            s.serialize_str("inf")
        } else if self.0 < 0.0 {
            s.serialize_str("-inf")
        } else {
            s.serialize_str("nan")
        }
    }
}

pub fn format_number(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        // Shortest representation that round-trips.
        format!("{x}")
    }
}

fn side_name(side: Option<Subsystem>) -> Option<&'static str> {
    side.map(|s| match s {
        Subsystem::A => "A",
        Subsystem::B => "B",
    })
}

/// One evaluated criterion, with CLI-level parameters such as `theta` merged in.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub criterion_id: String,
    pub params: Params,
    pub observed: Number,
    pub bound: Number,
    pub margin: Number,
    pub violated: bool,
    pub side: Option<&'static str>,
}

impl ReportRow {
    pub fn new(report: &CriterionReport, extra: &Params) -> Self {
        let mut params = Params(report.params.clone());
        for (k, v) in &extra.0 {
            if params.get(k).is_none() {
                params.set(k, *v);
            }
        }
        Self {
            criterion_id: report.criterion_id.clone(),
            params,
            observed: Number(report.observed),
            bound: Number(report.bound),
            margin: Number(report.margin),
            violated: report.violated,
            side: side_name(report.side),
        }
    }
}

pub fn write_reports(out: &mut dyn Write, rows: &[ReportRow], format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["criterion_id"];
            header.extend(PARAM_COLUMNS);
            header.extend(["observed", "bound", "margin", "violated", "side"]);
            w.write_record(&header)?;
            for r in rows {
                let mut rec = vec![r.criterion_id.clone()];
                rec.extend(r.params.columns());
                rec.extend([
                    format_number(r.observed.0),
                    format_number(r.bound.0),
                    format_number(r.margin.0),
                    r.violated.to_string(),
                    r.side.unwrap_or("").to_string(),
                ]);
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Threshold of a criterion along a one-parameter family. `c_star` is `None`
/// when the criterion is not violated anywhere on `[0, 1]`.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    pub family: String,
    pub criterion_id: String,
    pub params: Params,
    #[serde(serialize_with = "serialize_threshold")]
    pub c_star: Option<f64>,
    pub bracket: Option<(f64, f64)>,
    pub iterations: usize,
}

fn serialize_threshold<S: Serializer>(c: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match c {
        Some(c) => s.serialize_f64(*c),
        None => s.serialize_str("NONE"),
    }
}

pub fn format_threshold(c: Option<f64>) -> String {
    c.map_or_else(|| "NONE".into(), |c| format!("{c:.10}"))
}

pub fn write_thresholds(out: &mut dyn Write, rows: &[ThresholdResult], format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["family", "criterion_id"];
            header.extend(PARAM_COLUMNS);
            header.extend(["c_star", "c_lo", "c_hi", "iterations"]);
            w.write_record(&header)?;
            for r in rows {
                let mut rec = vec![r.family.clone(), r.criterion_id.clone()];
                rec.extend(r.params.columns());
                let (lo, hi) = r.bracket.map_or((String::new(), String::new()), |(a, b)| (format!("{a:.12}"), format!("{b:.12}")));
                rec.extend([format_threshold(r.c_star), lo, hi, r.iterations.to_string()]);
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
