//! Periodic codes: a full-rank sublattice of Z² plus a set of residues.

mod builtin;
mod codespec;
mod construct;

pub use builtin::{builtin_code, BUILTIN_NAMES};
pub use codespec::{parse_codespec, serialize_codespec, CodespecError};
pub use construct::{
    construct_38, construct_diag, construct_family, construct_grid, construct_int_half,
    int_half_flagged_columns, CodeFamily, ConstructError, FamilyReport,
};

use num_integer::Integer;
use num_rational::Rational64;
use thiserror::Error;

use crate::lattice::Point;

/// Largest admissible |det| of a period lattice; membership is stored as a
/// bitmap over one fundamental domain.
pub const MAX_PERIOD_AREA: i64 = 1 << 24;
/// Largest admissible absolute value of a basis or residue coordinate.
pub const MAX_COORD: i64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("basis vectors {0} and {1} are linearly dependent")]
    DependentBasis(Point, Point),
    #[error("residues {0} and {1} coincide modulo the period lattice")]
    DuplicateResidue(Point, Point),
    #[error("a code needs at least one residue")]
    EmptyResidues,
    #[error("period lattice area {0} exceeds the supported maximum")]
    PeriodTooLarge(i128),
    #[error("coordinate {0} is out of the supported range")]
    CoordinateOutOfRange(i64),
    #[error("unknown builtin code {0:?}")]
    UnknownBuiltin(String),
}

/// Hermite normal form of a rank-2 lattice: basis (a,0), (b,c) with
/// a, c > 0 and 0 ≤ b < a. Unique per lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hnf {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Hnf {
    pub fn from_basis(b1: Point, b2: Point) -> Result<Hnf, CodeError> {
        for v in [b1.x, b1.y, b2.x, b2.y] {
            if v.abs() > MAX_COORD {
                return Err(CodeError::CoordinateOutOfRange(v));
            }
        }
        let det = b1.x as i128 * b2.y as i128 - b2.x as i128 * b1.y as i128;
        if det == 0 {
            return Err(CodeError::DependentBasis(b1, b2));
        }
        if det.abs() > MAX_PERIOD_AREA as i128 {
            return Err(CodeError::PeriodTooLarge(det.abs()));
        }
        let eg = b1.y.extended_gcd(&b2.y);
        let (g, s, t) = if eg.gcd < 0 {
            (-eg.gcd, -eg.x, -eg.y)
        } else {
            (eg.gcd, eg.x, eg.y)
        };
        let vx = s as i128 * b1.x as i128 + t as i128 * b2.x as i128;
        let a = (det.abs() / g as i128) as i64;
        let b = vx.rem_euclid(a as i128) as i64;
        Ok(Hnf { a, b, c: g })
    }

    pub fn area(&self) -> i64 {
        self.a * self.c
    }

    /// Representative of `p` in [0,a) × [0,c).
    #[inline]
    pub fn reduce(&self, p: Point) -> Point {
        let q = p.y.div_euclid(self.c);
        let y = p.y - q * self.c;
        let x = (p.x - q * self.b).rem_euclid(self.a);
        Point::new(x, y)
    }

    #[inline]
    fn index(&self, reduced: Point) -> usize {
        (reduced.y * self.a + reduced.x) as usize
    }

    /// Cells of the fundamental domain [0,a) × [0,c), lexicographic.
    pub fn domain(&self) -> Vec<Point> {
        let mut cells: Vec<Point> = (0..self.a)
            .flat_map(|x| (0..self.c).map(move |y| Point::new(x, y)))
            .collect();
        cells.sort();
        cells
    }
}

/// An infinite code invariant under a full-rank period lattice.
#[derive(Clone, Debug)]
pub struct PeriodicCode {
    basis: [Point; 2],
    hnf: Hnf,
    residues: Vec<Point>,
    member: Vec<bool>,
}

impl PeriodicCode {
    /// Builds a code from a period basis and representatives. Residues are
    /// reduced into the canonical fundamental domain and must be pairwise
    /// distinct modulo the lattice.
    pub fn new(
        b1: Point,
        b2: Point,
        residues: impl IntoIterator<Item = Point>,
    ) -> Result<Self, CodeError> {
        let hnf = Hnf::from_basis(b1, b2)?;
        let mut member = vec![false; hnf.area() as usize];
        let mut first_seen: Vec<Option<Point>> = vec![None; hnf.area() as usize];
        let mut reduced = Vec::new();
        for p in residues {
            for v in [p.x, p.y] {
                if v.abs() > MAX_COORD {
                    return Err(CodeError::CoordinateOutOfRange(v));
                }
            }
            let r = hnf.reduce(p);
            let i = hnf.index(r);
            if let Some(prev) = first_seen[i] {
                return Err(CodeError::DuplicateResidue(prev, p));
            }
            first_seen[i] = Some(p);
            member[i] = true;
            reduced.push(r);
        }
        if reduced.is_empty() {
            return Err(CodeError::EmptyResidues);
        }
        reduced.sort();
        Ok(PeriodicCode {
            basis: [b1, b2],
            hnf,
            residues: reduced,
            member,
        })
    }

    /// Code given by a membership predicate over one fundamental domain.
    pub fn from_predicate(
        b1: Point,
        b2: Point,
        pred: impl Fn(Point) -> bool,
    ) -> Result<Self, CodeError> {
        let hnf = Hnf::from_basis(b1, b2)?;
        Self::new(b1, b2, hnf.domain().into_iter().filter(|&p| pred(p)))
    }

    pub fn basis(&self) -> [Point; 2] {
        self.basis
    }

    pub fn hnf(&self) -> Hnf {
        self.hnf
    }

    /// Canonical residues, sorted.
    pub fn residues(&self) -> &[Point] {
        &self.residues
    }

    /// |det| of the period lattice.
    pub fn period_area(&self) -> i64 {
        self.hnf.area()
    }

    pub fn density(&self) -> Rational64 {
        Rational64::new(self.residues.len() as i64, self.hnf.area())
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        self.member[self.hnf.index(self.hnf.reduce(p))]
    }

    /// Cells of the canonical fundamental domain, sorted.
    pub fn fundamental_domain(&self) -> Vec<Point> {
        self.hnf.domain()
    }

    /// Code vertices in the closed rectangle [lo, hi].
    pub fn points_in(&self, lo: Point, hi: Point) -> Vec<Point> {
        (lo.x..=hi.x)
            .flat_map(|x| (lo.y..=hi.y).map(move |y| Point::new(x, y)))
            .filter(|&p| self.contains(p))
            .collect()
    }

    /// Same code with one residue class dropped.
    pub fn without_residue(&self, p: Point) -> Result<Self, CodeError> {
        let r = self.hnf.reduce(p);
        PeriodicCode::new(
            self.basis[0],
            self.basis[1],
            self.residues.iter().copied().filter(|&q| q != r),
        )
    }
}

impl PartialEq for PeriodicCode {
    fn eq(&self, other: &Self) -> bool {
        self.hnf == other.hnf && self.residues == other.residues
    }
}

impl Eq for PeriodicCode {}

/// The trivial code Z².
pub fn full_lattice() -> PeriodicCode {
    PeriodicCode::new(Point::new(1, 0), Point::new(0, 1), [Point::ORIGIN])
        .expect("unit lattice is valid")
}
