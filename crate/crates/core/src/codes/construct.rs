use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{CodeError, PeriodicCode};
use crate::lattice::{Point, PointSet, RadiusPair, SqRadius};
use crate::patterns::{
    column_profile, horizontal_pattern, lines_mod_check, LineDirection, PatternError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("grid construction degenerates: k = ⌊r⌋ − x1 = {0} must be at least 2")]
    DegenerateGrid(i64),
    #[error("construction needs a horizontal pattern of size 4, found {0}")]
    PatternSize(usize),
    #[error("no pattern vertex (a,b) with a ≥ b > 0")]
    NoCornerVertex,
    #[error("parameter {name} = {value} is invalid: {reason}")]
    Parameter {
        name: &'static str,
        value: i64,
        reason: &'static str,
    },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn param(name: &'static str, value: i64, reason: &'static str) -> ConstructError {
    ConstructError::Parameter {
        name,
        value,
        reason,
    }
}

/// L^v_k ∪ L^h_k with k = ⌊r⌋ − x1, density (2k−1)/k².
pub fn construct_grid(rp: RadiusPair) -> Result<PeriodicCode, ConstructError> {
    let profile = column_profile(rp)?;
    let k = rp.r2.floor_root() - profile.x1;
    if k <= 1 {
        return Err(ConstructError::DegenerateGrid(k));
    }
    Ok(PeriodicCode::from_predicate(
        Point::new(k, 0),
        Point::new(0, k),
        |p| p.x == 0 || p.y == 0,
    )?)
}

/// L^d_s ∪ L^h_t, or L^d_s alone when `t` is `None`. With `remove_intersection`
/// the cells on both a diagonal and a horizontal line are dropped.
pub fn construct_diag(
    s: u64,
    t: Option<u64>,
    remove_intersection: bool,
) -> Result<PeriodicCode, ConstructError> {
    if s == 0 || s > i32::MAX as u64 {
        return Err(param("s", s as i64, "must be a positive integer"));
    }
    let s = s as i64;
    let Some(t) = t else {
        return Ok(PeriodicCode::new(
            Point::new(s, 0),
            Point::new(1, 1),
            [Point::ORIGIN],
        )?);
    };
    if t == 0 || t > i32::MAX as u64 {
        return Err(param("t", t as i64, "must be a positive integer"));
    }
    let t = t as i64;
    Ok(PeriodicCode::from_predicate(
        Point::new(s, 0),
        Point::new(t, t),
        |p| {
            let diag = (p.y - p.x).rem_euclid(s) == 0;
            let horiz = p.y.rem_euclid(t) == 0;
            if remove_intersection {
                diag != horiz
            } else {
                diag || horiz
            }
        },
    )?)
}

fn int_half_x(r: i64) -> BTreeSet<i64> {
    if r % 2 == 1 {
        return (0..=2 * r).collect();
    }
    let mut x: BTreeSet<i64> = (0..=r - 2).step_by(2).collect();
    x.insert(r - 1);
    x.extend((r + 1..=2 * r - 3).step_by(2));
    x.insert(2 * r);
    x
}

/// Columns modulo 4r+2 that carry the odd-ordinate cells.
pub fn int_half_flagged_columns(r: i64) -> Vec<i64> {
    let x = int_half_x(r);
    (0..4 * r + 2)
        .filter(|&i| {
            if i <= 2 * r {
                x.contains(&i)
            } else {
                !x.contains(&(i - (2 * r + 1)))
            }
        })
        .collect()
}

/// Density 1/2 code for integer r: every column holds every other cell, the
/// parity of the occupied ordinates being chosen per column modulo 4r+2.
pub fn construct_int_half(r: i64) -> Result<PeriodicCode, ConstructError> {
    if !(1..=1_000_000).contains(&r) {
        return Err(param("r", r, "must be a positive integer"));
    }
    let flagged: BTreeSet<i64> = int_half_flagged_columns(r).into_iter().collect();
    let width = 4 * r + 2;
    let residues = (0..width).map(|i| Point::new(i, i64::from(flagged.contains(&i))));
    Ok(PeriodicCode::new(
        Point::new(width, 0),
        Point::new(0, 2),
        residues,
    )?)
}

/// Density 3/8 code C1 ∪ C2 for radius pairs whose horizontal pattern has
/// four vertices (a,±b), (−a−1,±b).
pub fn construct_38(rp: RadiusPair) -> Result<PeriodicCode, ConstructError> {
    let pattern = horizontal_pattern(rp);
    if pattern.len() != 4 {
        return Err(ConstructError::PatternSize(pattern.len()));
    }
    let &Point { y: b, .. } = pattern
        .iter()
        .find(|p| p.x >= p.y && p.y > 0)
        .ok_or(ConstructError::NoCornerVertex)?;
    let k = b.trailing_zeros();
    if k > 20 {
        return Err(param("b", b, "power of two in b too large"));
    }
    let modulus = 1i64 << (k + 2);
    let c2: BTreeSet<i64> = (1..=1i64 << k).map(|j| 2 * j).collect();
    Ok(PeriodicCode::from_predicate(
        Point::new(modulus, 0),
        Point::new(2, 2),
        |p| {
            let c1 = p.x % 2 == 0 && p.y % 2 == 0;
            c1 || c2.contains(&(p.y - p.x).rem_euclid(modulus))
        },
    )?)
}

/// Infinite families whose horizontal pattern has exactly s vertices on s
/// distinct diagonals modulo s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeFamily {
    S4 { k: i64, i: i64 },
    S6 { k: i64 },
    S8 { k: i64 },
}

impl CodeFamily {
    pub fn modulus(&self) -> u64 {
        match self {
            CodeFamily::S4 { .. } => 4,
            CodeFamily::S6 { .. } => 6,
            CodeFamily::S8 { .. } => 8,
        }
    }

    /// Radius pair of the family member, after checking its preconditions.
    pub fn radius_pair(&self) -> Result<RadiusPair, ConstructError> {
        let (r2, big_r2) = match *self {
            CodeFamily::S4 { k, i } => {
                if !(1..=1_000_000).contains(&k) {
                    return Err(param("k", k, "must be in 1..=1000000"));
                }
                if i <= 0 || i % 2 == 0 {
                    return Err(param("i", i, "must be a positive odd integer"));
                }
                if i * i > 2 * k {
                    return Err(param("i", i, "needs i² < 2k+1"));
                }
                (k * k + i * i, k * k + i * i + 2 * k)
            }
            CodeFamily::S6 { k } => {
                if !(1..=10_000).contains(&k) || k % 2 == 0 {
                    return Err(param("k", k, "must be a positive odd integer up to 10000"));
                }
                if k % 3 == 0 {
                    return Err(param("k", k, "must not be divisible by 3"));
                }
                let r = 2 * k * k + 1;
                (r * r, r * r + 2 * r - 3)
            }
            CodeFamily::S8 { k } => {
                if !(18..=2_000).contains(&k) {
                    return Err(param("k", k, "must be in 18..=2000"));
                }
                if k % 16 != 2 {
                    return Err(param("k", k, "needs k ≡ 2 mod 16"));
                }
                let l = (k / 2) * (k / 2) - 1;
                (l * l + 8, l * l + 2 * l + 4)
            }
        };
        Ok(RadiusPair::new(SqRadius::int(r2), SqRadius::int(big_r2))
            .expect("family radii are ordered"))
    }
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFamily::S4 { k, i } => write!(f, "s4(k={k}, i={i})"),
            CodeFamily::S6 { k } => write!(f, "s6(k={k})"),
            CodeFamily::S8 { k } => write!(f, "s8(k={k})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub family: CodeFamily,
    pub rp: RadiusPair,
    /// The code L^d_s.
    pub code: PeriodicCode,
    pub modulus: u64,
    pub pattern: PointSet,
    /// y − x mod s for each pattern vertex, in pattern order.
    pub diagonal_residues: Vec<i64>,
    pub size_matches: bool,
    pub residues_distinct: bool,
    pub covers_diagonals: bool,
}

impl FamilyReport {
    pub fn holds(&self) -> bool {
        self.size_matches && self.residues_distinct && self.covers_diagonals
    }
}

pub fn construct_family(family: CodeFamily) -> Result<FamilyReport, ConstructError> {
    let rp = family.radius_pair()?;
    let s = family.modulus();
    let pattern = horizontal_pattern(rp);
    let diagonal_residues: Vec<i64> = pattern
        .iter()
        .map(|p| LineDirection::Diagonal.residue(*p).rem_euclid(s as i64))
        .collect();
    let distinct: BTreeSet<i64> = diagonal_residues.iter().copied().collect();
    Ok(FamilyReport {
        family,
        rp,
        code: construct_diag(s, None, false)?,
        modulus: s,
        size_matches: pattern.len() == s as usize,
        residues_distinct: distinct.len() == diagonal_residues.len(),
        covers_diagonals: lines_mod_check(&pattern, s, LineDirection::Diagonal),
        pattern,
        diagonal_residues,
    })
}
