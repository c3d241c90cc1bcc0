//! The reference threshold table for the Werner and two-qutrit families.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;

use entrosep_core::criteria::{MajCriterion, QubitVariant};
use entrosep_core::entropy::EntropyOrder;
use entrosep_core::linalg::Subsystem;
use entrosep_core::states::StateFamily;
use serde::Serialize;

use crate::error::CliError;
use crate::report::{format_threshold, Format, Number};
use crate::scan::{scan_threshold, ScanOptions};
use crate::setup::{build_criterion, CriterionId, CriterionOptions, Pairing, Setup, DEFAULT_ALPHA_GRID};

pub const CASES: [&str; 8] = [
    "werner-qubit-mu",
    "werner-qubit-maj-a",
    "werner-qubit-maj-b",
    "werner-qubit-mu-grid",
    "werner-qubit-maj-b-pi6",
    "werner-qubit-mub3",
    "qutrit-mub3",
    "correlation",
];

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub case: &'static str,
    pub description: &'static str,
    pub expected: String,
    /// Threshold found by the scanner, `None` when nothing is detected.
    #[serde(serialize_with = "serialize_measured")]
    pub measured: Option<f64>,
    pub tolerance: Number,
    pub note: String,
    pub pass: bool,
}

fn serialize_measured<S: serde::Serializer>(c: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match c {
        Some(c) => s.serialize_f64(*c),
        None => s.serialize_str("NONE"),
    }
}

fn threshold(id: CriterionId, setup: &Setup, alpha: EntropyOrder, family: &StateFamily) -> Result<Option<f64>, CliError> {
    let test = build_criterion(id, setup, alpha, &CriterionOptions::default())?;
    Ok(scan_threshold(test.as_ref(), family, &ScanOptions::default())?.c_star)
}

fn close(measured: Option<f64>, expected: f64, tol: f64) -> bool {
    measured.is_some_and(|c| (c - expected).abs() <= tol)
}

fn row(case: &'static str, description: &'static str, expected: f64, measured: Option<f64>, tol: f64) -> CaseResult {
    CaseResult {
        case,
        description,
        expected: format!("{expected:.7}"),
        measured,
        tolerance: Number(tol),
        note: String::new(),
        pass: close(measured, expected, tol),
    }
}

/// `√(2‖w′‖₂ − 1)` for the `(Z, R_θ)` pair.
pub fn variant_b_closed_form(theta: f64) -> Result<f64, CliError> {
    let s = Setup::rotated(theta);
    let m = |t: usize| entrosep_core::criteria::ConvolutionPovm::new(s.pairs[t].0.clone(), s.pairs[t].1.clone());
    let crit = MajCriterion::qubit(m(0)?, m(1)?, EntropyOrder::Finite(2.0), QubitVariant::B)?;
    let wp = crit.profile(Subsystem::A).w_prime();
    Ok((2.0 * wp.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).sqrt())
}

/// Per-order Maassen–Uffink thresholds at `θ = π/6` over the default grid.
pub fn mu_grid(theta: f64) -> Result<Vec<(f64, Option<f64>)>, CliError> {
    let setup = Setup::rotated(theta);
    let werner = StateFamily::werner_qubit();
    DEFAULT_ALPHA_GRID
        .iter()
        .map(|&a| {
            let alpha = if a.is_infinite() { EntropyOrder::Infinity } else { EntropyOrder::Finite(a) };
            Ok((a, threshold(CriterionId::MuRenyi, &setup, alpha, &werner)?))
        })
        .collect()
}

pub fn run_case(case: &str) -> Result<CaseResult, CliError> {
    let werner = StateFamily::werner_qubit();
    let qutrit = StateFamily::qutrit();
    let two = EntropyOrder::Finite(2.0);
    let inv_sqrt3 = 1.0 / 3f64.sqrt();
    Ok(match case {
        "werner-qubit-mu" => row(
            "werner-qubit-mu",
            "Werner, Maassen-Uffink Renyi (inf, 1/2), theta = pi/4",
            FRAC_1_SQRT_2,
            threshold(CriterionId::MuRenyi, &Setup::rotated(PI / 4.0), EntropyOrder::Infinity, &werner)?,
            1e-6,
        ),
        "werner-qubit-maj-a" => row(
            "werner-qubit-maj-a",
            "Werner, qubit majorization variant A, alpha = 2, theta = pi/4",
            (2.0 - 2f64.sqrt()).sqrt(),
            threshold(CriterionId::MajQubitA, &Setup::rotated(PI / 4.0), two, &werner)?,
            1e-6,
        ),
        "werner-qubit-maj-b" => {
            let closed = variant_b_closed_form(PI / 4.0)?;
            let c = threshold(CriterionId::MajQubitB, &Setup::rotated(PI / 4.0), two, &werner)?;
            let mut r = row(
                "werner-qubit-maj-b",
                "Werner, qubit majorization variant B, alpha = 2, theta = pi/4",
                closed,
                c,
                1e-6,
            );
            r.pass &= close(c, 0.7450, 5e-4);
            r.note = "also within 5e-4 of 0.7450".into();
            r
        }
        "werner-qubit-mu-grid" => {
            let grid = mu_grid(PI / 6.0)?;
            let best = grid
                .iter()
                .filter_map(|&(a, c)| c.map(|c| (a, c)))
                .fold(None, |acc: Option<(f64, f64)>, (a, c)| match acc {
                    Some((_, bc)) if bc <= c => acc,
                    _ => Some((a, c)),
                });
            let mut r = row(
                "werner-qubit-mu-grid",
                "Werner, best Maassen-Uffink Renyi over the (alpha, beta) grid, theta = pi/6",
                0.9347,
                best.map(|b| b.1),
                5e-4,
            );
            let arg = best.map_or(f64::NAN, |b| b.0);
            r.pass &= arg == 1.0;
            r.note = format!("minimum at alpha = {arg}");
            r
        }
        "werner-qubit-maj-b-pi6" => row(
            "werner-qubit-maj-b-pi6",
            "Werner, qubit majorization variant B, alpha = 2, theta = pi/6",
            0.8719,
            threshold(CriterionId::MajQubitB, &Setup::rotated(PI / 6.0), two, &werner)?,
            5e-4,
        ),
        "werner-qubit-mub3" => {
            let setup = Setup::mubs(2, Some(3), Pairing::Diagonal)?;
            let tsallis = threshold(CriterionId::MubTsallis, &setup, two, &werner)?;
            let renyi = threshold(CriterionId::MubRenyi, &setup, two, &werner)?;
            let mut r = row("werner-qubit-mub3", "Werner, three Pauli bases, Tsallis and Renyi alpha = 2", inv_sqrt3, tsallis, 1e-6);
            r.pass &= close(renyi, inv_sqrt3, 1e-6);
            r.note = format!("Renyi threshold {}", format_threshold(renyi));
            r
        }
        "qutrit-mub3" => row(
            "qutrit-mub3",
            "Two-qutrit family, pairs (Z,X), (X,Z), (ZX,ZX), Tsallis alpha = 2",
            inv_sqrt3,
            threshold(CriterionId::MubTsallis, &Setup::mubs(3, Some(3), Pairing::Cross)?, two, &qutrit)?,
            1e-6,
        ),
        "correlation" => correlation_case()?,
        other => return Err(CliError::usage(format!("unknown case {other:?}; known cases: {}", CASES.join(", ")))),
    })
}

fn correlation_case() -> Result<CaseResult, CliError> {
    let werner = StateFamily::werner_qubit();
    let qutrit = StateFamily::qutrit();
    let qubit_setup = Setup::mubs(2, Some(3), Pairing::Diagonal)?;
    let qutrit_setup = Setup::mubs(3, Some(3), Pairing::Diagonal)?;
    let cross_setup = Setup::mubs(3, Some(3), Pairing::Cross)?;
    let alpha = EntropyOrder::Finite(1.0);
    let j_qubit = build_criterion(CriterionId::Correlation, &qubit_setup, alpha, &CriterionOptions::default())?;
    let mut worst = 0.0f64;
    for i in 0..=100 {
        let c = i as f64 / 100.0;
        let r = j_qubit.evaluate(&werner.at(c)?)?;
        worst = worst.max((r.observed - (3.0 + c) / 2.0).abs());
    }
    let mut j_qutrit = 0.0f64;
    for setup in [&qutrit_setup, &cross_setup] {
        let test = build_criterion(CriterionId::Correlation, setup, alpha, &CriterionOptions::default())?;
        for i in 0..=10 {
            let r = test.evaluate(&qutrit.at(i as f64 / 10.0)?)?;
            j_qutrit = j_qutrit.max((r.observed - 1.0).abs());
        }
    }
    let none_qubit = threshold(CriterionId::Correlation, &qubit_setup, alpha, &werner)?;
    let none_qutrit = threshold(CriterionId::Correlation, &qutrit_setup, alpha, &qutrit)?;
    let none_cross = threshold(CriterionId::Correlation, &cross_setup, alpha, &qutrit)?;
    let pass = worst <= 1e-10 && j_qutrit <= 1e-10 && none_qubit.is_none() && none_qutrit.is_none() && none_cross.is_none();
    Ok(CaseResult {
        case: "correlation",
        description: "Correlation measure: J = (3+c)/2 <= 2 on Werner, J = 1 <= 5/3 on the qutrit family",
        expected: "NONE".into(),
        measured: none_qubit.or(none_qutrit).or(none_cross),
        tolerance: Number(1e-10),
        note: format!("max |J - (3+c)/2| = {worst:.1e}, max |J - 1| = {j_qutrit:.1e}"),
        pass,
    })
}

pub fn write_table(out: &mut dyn Write, rows: &[CaseResult], format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["case", "expected", "measured", "tolerance", "status", "note", "description"])?;
            for r in rows {
                w.write_record([
                    r.case.to_string(),
                    r.expected.clone(),
                    format_threshold(r.measured),
                    format!("{:e}", r.tolerance.0),
                    if r.pass { "PASS" } else { "FAIL" }.to_string(),
                    r.note.clone(),
                    r.description.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
