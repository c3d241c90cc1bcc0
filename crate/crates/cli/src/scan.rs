//! Violation thresholds along one-parameter state families.

use std::fmt::Write as _;

use entrosep_core::criteria::SeparabilityTest;
use entrosep_core::states::StateFamily;

use crate::error::CliError;
use crate::report::{Params, ThresholdResult};

/// Points of the monotonicity pre-scan, `c = 0, 0.1, ..., 1`.
pub const PRESCAN_POINTS: usize = 11;
/// Bisection stops once the bracket is at most this wide.
pub const BRACKET_WIDTH: f64 = 1e-10;
/// Slack allowed when checking that the margin does not increase with `c`.
pub const MONOTONE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub c: f64,
    pub margin: f64,
    pub violated: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// Initial bracket `(lo, hi)`; `lo` must not be violated and `hi` must be.
    pub bracket: Option<(f64, f64)>,
}

fn point(test: &dyn SeparabilityTest, family: &StateFamily, c: f64) -> Result<CurvePoint, CliError> {
    let r = test.evaluate(&family.at(c)?)?;
    Ok(CurvePoint { c, margin: r.margin, violated: r.violated })
}

/// `n` evenly spaced margins on `[0, 1]`.
pub fn curve(test: &dyn SeparabilityTest, family: &StateFamily, n: usize) -> Result<Vec<CurvePoint>, CliError> {
    let n = n.max(2);
    (0..n).map(|i| point(test, family, i as f64 / (n - 1) as f64)).collect()
}

fn trace(points: &[CurvePoint]) -> String {
    let mut s = String::new();
    for p in points {
        let _ = writeln!(s, "  c = {:.1}  margin = {:+.6e}  violated = {}", p.c, p.margin, p.violated);
    }
    s
}

/// Finds the smallest `c` at which `test` is violated on `family`.
///
/// The margin must be non-increasing in `c` on an 11-point grid; otherwise
/// bisection would be meaningless and an error with the grid is returned.
pub fn scan_threshold(
    test: &dyn SeparabilityTest,
    family: &StateFamily,
    opts: &ScanOptions,
) -> Result<ThresholdResult, CliError> {
    let grid = curve(test, family, PRESCAN_POINTS)?;
    if grid.windows(2).any(|w| w[1].margin > w[0].margin + MONOTONE_SLACK) {
        return Err(CliError::input(format!(
            "margin is not monotone in c on {}; pre-scan:\n{}",
            family.name,
            trace(&grid)
        )));
    }
    let report = test.evaluate(&family.at(1.0)?)?;
    let mut result = ThresholdResult {
        family: family.name.to_string(),
        criterion_id: report.criterion_id.clone(),
        params: Params(report.params.clone()),
        c_star: None,
        bracket: None,
        iterations: 0,
    };
    if !report.violated {
        return Ok(result);
    }
    let (mut lo, mut hi) = match opts.bracket {
        Some((lo, hi)) => {
            if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
                return Err(CliError::usage(format!("bracket ({lo}, {hi}) must satisfy 0 ≤ lo < hi ≤ 1")));
            }
            if point(test, family, lo)?.violated || !point(test, family, hi)?.violated {
                return Err(CliError::usage(format!("bracket ({lo}, {hi}) does not straddle the threshold")));
            }
            (lo, hi)
        }
        None => {
            let first = grid.iter().position(|p| p.violated).unwrap_or(grid.len() - 1);
            if first == 0 {
                return Err(CliError::input(format!("{} is violated already at c = 0", report.criterion_id)));
            }
            (grid[first - 1].c, grid[first].c)
        }
    };
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if point(test, family, mid)?.violated {
            hi = mid;
        } else {
            lo = mid;
        }
        result.iterations += 1;
    }
    result.c_star = Some(0.5 * (lo + hi));
    result.bracket = Some((lo, hi));
    Ok(result)
}
