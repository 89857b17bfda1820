//! Certified density lower bounds and the reference values they are compared
//! against.

pub mod frames;
pub mod search;
pub mod table;

use std::fmt;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::codes::PeriodicCode;
use crate::lattice::{PointSet, RadiusPair};
use crate::patterns::{exists_code, horizontal_pattern};
use frames::{default_margin, frame_min_count, BoundsError, FrameCount, FrameShape, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CertificateKind {
    Pattern,
    Frame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    MachineProved,
    Asserted,
    Literature,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::MachineProved => "machine-proved",
            Provenance::Asserted => "asserted",
            Provenance::Literature => "literature",
        })
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::Pattern => "pattern",
            CertificateKind::Frame => "frame",
        })
    }
}

/// A lower bound min_count/|witness| on the density of every code at `rp`:
/// every translate of the witness holds at least `min_count` code vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub rp: RadiusPair,
    pub bound: Rational64,
    pub witness: PointSet,
    pub min_count: usize,
    pub kind: CertificateKind,
    pub provenance: Provenance,
}

impl Certificate {
    /// Text report; the witness is listed as `point x y` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::from("certificate v1\n");
        out.push_str(&format!("kind {}\n", self.kind));
        out.push_str(&format!("provenance {}\n", self.provenance));
        out.push_str(&format!("r2 {}\nR2 {}\n", self.rp.r2, self.rp.big_r2));
        out.push_str(&format!("min_count {}\n", self.min_count));
        out.push_str(&format!("bound {}\n", self.bound));
        for p in &self.witness {
            out.push_str(&format!("point {} {}\n", p.x, p.y));
        }
        out
    }
}

/// Every code meets the horizontal pattern, so density ≥ 1/|S|.
pub fn pattern_lower_bound(rp: RadiusPair) -> Result<Certificate, BoundsError> {
    if !exists_code(rp) {
        return Err(BoundsError::NoCode(rp));
    }
    let witness = horizontal_pattern(rp);
    Ok(Certificate {
        rp,
        bound: Rational64::new(1, witness.len() as i64),
        min_count: 1,
        witness,
        kind: CertificateKind::Pattern,
        provenance: Provenance::MachineProved,
    })
}

/// min over translates v of |(v + s) ∩ C|. Periodicity reduces v to one
/// fundamental domain. Returns 0 for an empty `s`.
pub fn translate_min_count(code: &PeriodicCode, s: &PointSet) -> usize {
    if s.is_empty() {
        return 0;
    }
    let cells: Vec<_> = s.to_vec();
    code.fundamental_domain()
        .par_iter()
        .map(|&v| cells.iter().filter(|&&p| code.contains(v + p)).count())
        .min()
        .unwrap_or(0)
}

/// Frame certificate when the frame count is proved.
pub fn frame_certificate(
    rp: RadiusPair,
    frame: &FrameShape,
    margin: i64,
    budget: u64,
) -> Result<Option<Certificate>, BoundsError> {
    Ok(match frame_min_count(rp, frame, margin, budget)? {
        FrameCount::Proved { min } => Some(Certificate {
            rp,
            bound: Rational64::new(min as i64, frame.len() as i64),
            witness: frame.cells().clone(),
            min_count: min,
            kind: CertificateKind::Frame,
            provenance: Provenance::MachineProved,
        }),
        FrameCount::Inconclusive { .. } => None,
    })
}

/// A value quoted rather than computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertedBound {
    pub value: Rational64,
    pub provenance: Provenance,
    pub source: &'static str,
}

/// Lower bounds asserted for the small cases whose discharging arguments are
/// only checked at the level of their local frame lemmas.
pub fn asserted_lower_bounds(rp: RadiusPair) -> Vec<AssertedBound> {
    let key = (rp.r2.is_integer() && rp.big_r2.is_integer())
        .then(|| (rp.r2.num(), rp.big_r2.num()));
    let a = |n, d, source| AssertedBound {
        value: Rational64::new(n, d),
        provenance: Provenance::Asserted,
        source,
    };
    match key {
        Some((2, 4)) => vec![
            a(4, 15, "F12 discharging, one neighbouring frame with four vertices"),
            a(16, 57, "F12 discharging with frame cases A to E"),
        ],
        Some((5, 8)) => vec![a(17, 100, "F20 discharging")],
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug)]
pub struct ReferenceBounds {
    pub rp: RadiusPair,
    /// 1/(3.22·r + 4), a decimal approximation only.
    pub fixed_reference: f64,
    pub pattern: Certificate,
    pub frame: Option<Certificate>,
    pub asserted: Vec<AssertedBound>,
    /// Exact density of the grid code when it is defined.
    pub grid_upper: Option<Rational64>,
}

/// Frames are searched only up to this R².
pub const FRAME_SEARCH_MAX_R2: i64 = 16;

pub fn reference_bounds(rp: RadiusPair) -> Result<ReferenceBounds, BoundsError> {
    let pattern = pattern_lower_bound(rp)?;
    let r = (rp.r2.num() as f64 / rp.r2.den() as f64).sqrt();
    let mut frame: Option<Certificate> = None;
    if rp.big_r2 <= crate::lattice::SqRadius::int(FRAME_SEARCH_MAX_R2) {
        for name in frames::FRAME_NAMES {
            let f = FrameShape::named(name)?;
            if let Some(c) = frame_certificate(rp, &f, default_margin(rp), DEFAULT_BUDGET)? {
                if frame.as_ref().is_none_or(|b| c.bound > b.bound) {
                    frame = Some(c);
                }
            }
        }
    }
    let grid_upper = crate::codes::construct_grid(rp)
        .ok()
        .map(|c| c.density());
    Ok(ReferenceBounds {
        rp,
        fixed_reference: 1.0 / (3.22 * r + 4.0),
        pattern,
        frame,
        asserted: asserted_lower_bounds(rp),
        grid_upper,
    })
}

/// Largest machine-proved lower bound available for `rp` among the pattern
/// and the three frames.
pub fn best_machine_bound(rp: RadiusPair) -> Result<Rational64, BoundsError> {
    let r = reference_bounds(rp)?;
    Ok(r.frame.map_or(r.pattern.bound, |f| f.bound.max(r.pattern.bound)))
}
