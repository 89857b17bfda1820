//! Density bounds for small radii, as printed and as recomputed.
//!
//! Rows are r² ∈ {1, 2, 4, 5, 8} and columns (r+Δ)² ∈ {1, 2, 4, 5, 8, 9, 10}.

use num_rational::Rational64;

use super::frames::{default_margin, BoundsError, FrameShape, DEFAULT_BUDGET};
use super::{asserted_lower_bounds, frame_certificate, pattern_lower_bound, Provenance};
use crate::codes::builtin_code;
use crate::codes::{construct_38, construct_diag, construct_int_half};
use crate::codes::PeriodicCode;
use crate::lattice::RadiusPair;
use crate::patterns::exists_code;
use crate::verify::verify_identifying;

pub const ROWS: [i64; 5] = [1, 2, 4, 5, 8];
pub const COLUMNS: [i64; 7] = [1, 2, 4, 5, 8, 9, 10];

/// A printed value and its footnote letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Noted {
    pub value: Rational64,
    pub note: Option<char>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintedCell {
    /// Δ < 0, nothing printed.
    Blank,
    NoCode,
    Bounds { lower: Noted, upper: Noted },
}

impl PrintedCell {
    pub fn is_populated(&self) -> bool {
        matches!(self, PrintedCell::Bounds { .. })
    }
}

fn n(num: i64, den: i64, note: Option<char>) -> Noted {
    Noted {
        value: Rational64::new(num, den),
        note,
    }
}

fn exact(num: i64, den: i64, note: Option<char>) -> PrintedCell {
    PrintedCell::Bounds {
        lower: n(num, den, note),
        upper: n(num, den, note),
    }
}

fn interval(lower: Noted, upper: Noted) -> PrintedCell {
    PrintedCell::Bounds { lower, upper }
}

/// The printed entry at (r², R²).
pub fn printed_cell(r2: i64, big_r2: i64) -> PrintedCell {
    use PrintedCell::*;
    if big_r2 < r2 {
        return Blank;
    }
    match (r2, big_r2) {
        (1, 1) => exact(35, 100, None),
        (1, 2) => exact(1, 2, Some('b')),
        (1, _) => NoCode,
        (2, 2) => exact(2, 9, Some('a')),
        (2, 4) => interval(n(16, 57, None), n(1, 3, None)),
        (2, _) => NoCode,
        (4, 4) => interval(n(15, 100, Some('a')), n(17, 100, Some('a'))),
        (4, 5) | (4, 8) => exact(1, 2, Some('b')),
        (4, _) => NoCode,
        (5, 5) => exact(1, 8, Some('a')),
        (5, 8) => interval(n(17, 100, None), n(2, 9, None)),
        (5, 9) => interval(n(1, 4, Some('b')), n(1, 3, Some('d'))),
        (5, _) => NoCode,
        (8, 8) => exact(1, 8, Some('a')),
        (8, 9) => interval(n(1, 7, None), n(4, 21, None)),
        (8, 10) => interval(n(1, 4, Some('b')), n(3, 8, Some('d'))),
        _ => Blank,
    }
}

/// All printed cells in row-major order.
pub fn printed_table() -> Vec<(i64, i64, PrintedCell)> {
    ROWS.iter()
        .flat_map(|&r2| COLUMNS.iter().map(move |&c| (r2, c, printed_cell(r2, c))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableBound {
    pub value: Rational64,
    pub provenance: Provenance,
    pub source: String,
}

/// A code offered as an upper bound, with the outcome of verifying it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCode {
    pub name: String,
    pub density: Rational64,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellReport {
    pub r2: i64,
    pub big_r2: i64,
    pub printed: PrintedCell,
    pub exists: bool,
    pub lower: Vec<TableBound>,
    pub upper: Vec<TableCode>,
    /// Values quoted from earlier work for Δ = 0.
    pub literature: Vec<TableBound>,
}

impl CellReport {
    /// Best verified upper bound.
    pub fn best_upper(&self) -> Option<Rational64> {
        self.upper.iter().filter(|c| c.verified).map(|c| c.density).min()
    }

    /// Best machine-proved lower bound.
    pub fn best_machine_lower(&self) -> Option<Rational64> {
        self.lower
            .iter()
            .filter(|b| b.provenance == Provenance::MachineProved)
            .map(|b| b.value)
            .max()
    }
}

fn upper_codes(r2: i64, big_r2: i64) -> Vec<(String, PeriodicCode)> {
    let builtin = |name: &str| (name.to_string(), builtin_code(name).expect("builtin").1);
    let half = |r: i64| (format!("int-half r={r}"), construct_int_half(r).expect("valid r"));
    match (r2, big_r2) {
        (1, 2) => vec![half(1), builtin("fig3-r1")],
        (2, 4) => vec![builtin("fig8-sqrt2")],
        (4, 5) | (4, 8) => vec![half(2)],
        (5, 5) => vec![builtin("fig1-sqrt5")],
        (5, 8) => vec![builtin("fig10-sqrt5")],
        (5, 9) => vec![(
            "diag s=4 t=6 removed".into(),
            construct_diag(4, Some(6), true).expect("valid moduli"),
        )],
        (8, 9) => vec![builtin("fig11-sqrt8")],
        (8, 10) => vec![(
            "c38".into(),
            construct_38(RadiusPair::ints(8, 10)).expect("four-point pattern"),
        )],
        _ => Vec::new(),
    }
}

fn frame_for(r2: i64, big_r2: i64) -> Option<FrameShape> {
    match (r2, big_r2) {
        (2, 4) => Some(FrameShape::f12()),
        (5, 8) => Some(FrameShape::f20()),
        (8, 9) => Some(FrameShape::f14()),
        _ => None,
    }
}

fn literature(r2: i64, big_r2: i64) -> Vec<TableBound> {
    let lit = |num, den| TableBound {
        value: Rational64::new(num, den),
        provenance: Provenance::Literature,
        source: "identifying codes with Δ = 0".into(),
    };
    match (r2, big_r2) {
        (1, 1) => vec![lit(35, 100)],
        (2, 2) => vec![lit(2, 9)],
        (4, 4) => vec![lit(15, 100), lit(17, 100)],
        (5, 5) | (8, 8) => vec![lit(1, 8)],
        _ => Vec::new(),
    }
}

/// Recomputes one cell: existence, the pattern bound, the frame bound where
/// one applies, and verification of every code offered as upper bound.
pub fn compute_cell(r2: i64, big_r2: i64) -> Result<CellReport, BoundsError> {
    let printed = printed_cell(r2, big_r2);
    let mut report = CellReport {
        r2,
        big_r2,
        printed,
        exists: false,
        lower: Vec::new(),
        upper: Vec::new(),
        literature: literature(r2, big_r2),
    };
    if big_r2 < r2 {
        return Ok(report);
    }
    let rp = RadiusPair::ints(r2, big_r2);
    report.exists = exists_code(rp);
    if !report.exists {
        return Ok(report);
    }
    if big_r2 > r2 {
        let c = pattern_lower_bound(rp)?;
        report.lower.push(TableBound {
            value: c.bound,
            provenance: c.provenance,
            source: format!("pattern |S|={}", c.witness.len()),
        });
        if let Some(f) = frame_for(r2, big_r2) {
            if let Some(c) = frame_certificate(rp, &f, default_margin(rp), DEFAULT_BUDGET)? {
                report.lower.push(TableBound {
                    value: c.bound,
                    provenance: c.provenance,
                    source: format!("frame {} {}/{}", f.name(), c.min_count, f.len()),
                });
            }
        }
        for a in asserted_lower_bounds(rp) {
            report.lower.push(TableBound {
                value: a.value,
                provenance: a.provenance,
                source: a.source.into(),
            });
        }
    }
    for (name, code) in upper_codes(r2, big_r2) {
        let verified = verify_identifying(&code, rp).map(|r| r.ok).unwrap_or(false);
        report.upper.push(TableCode {
            name,
            density: code.density(),
            verified,
        });
    }
    Ok(report)
}

pub fn compute_table() -> Result<Vec<CellReport>, BoundsError> {
    printed_table()
        .into_iter()
        .map(|(r2, c, _)| compute_cell(r2, c))
        .collect()
}
