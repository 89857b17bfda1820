//! Integer geometry on Z²: points, exact squared radii, balls and the
//! symmetry group of the square.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::exact::floor_sqrt_ratio;

/// A vertex of Z².
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Squared Euclidean distance.
pub fn sq_dist(u: Point, v: Point) -> i64 {
    let dx = u.x - v.x;
    let dy = u.y - v.y;
    dx * dx + dy * dy
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RadiusError {
    #[error("squared radius must be nonnegative, got {0}")]
    Negative(i64),
    #[error("denominator must be positive, got {0}")]
    BadDenominator(i64),
    #[error("cannot parse squared radius {0:?}: expected N or N/D")]
    Parse(String),
    #[error("outer squared radius {outer} is smaller than inner squared radius {inner}")]
    Unordered { inner: SqRadius, outer: SqRadius },
}

/// A squared radius r² = num/den, kept in lowest terms.
///
/// Radii in this crate are always handled through their squares so that
/// every membership test is an integer comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SqRadius {
    num: i64,
    den: i64,
}

impl SqRadius {
    pub fn new(num: i64, den: i64) -> Result<Self, RadiusError> {
        if den <= 0 {
            return Err(RadiusError::BadDenominator(den));
        }
        if num < 0 {
            return Err(RadiusError::Negative(num));
        }
        let g = num.gcd(&den);
        Ok(SqRadius {
            num: num / g,
            den: den / g,
        })
    }

    /// Integer squared radius. Panics on negative input.
    pub fn int(n: i64) -> Self {
        Self::new(n, 1).expect("negative squared radius")
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn as_ratio(&self) -> Ratio<i128> {
        Ratio::new_raw(self.num as i128, self.den as i128)
    }

    /// Whether a squared distance `d2` lies within this radius.
    #[inline]
    pub fn admits(&self, d2: i64) -> bool {
        (self.den as i128) * (d2 as i128) <= self.num as i128
    }

    /// ⌊r⌋ for r = √(num/den).
    pub fn floor_root(&self) -> i64 {
        floor_sqrt_ratio(self.as_ratio()) as i64
    }

    /// ⌊r² ⌋.
    pub fn floor(&self) -> i64 {
        self.num / self.den
    }

    /// ⌈r²⌉.
    pub fn ceil(&self) -> i64 {
        ((self.num as i128 + self.den as i128 - 1) / self.den as i128) as i64
    }

    /// Whether r itself is rational (r² is the square of a rational).
    pub fn is_perfect_square(&self) -> bool {
        let a = (self.num as u64).isqrt();
        let b = (self.den as u64).isqrt();
        a * a == self.num as u64 && b * b == self.den as u64
    }
}

impl PartialOrd for SqRadius {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqRadius {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.as_ratio().cmp(&other.as_ratio())
    }
}

impl fmt::Display for SqRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for SqRadius {
    type Err = RadiusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RadiusError::Parse(s.to_string());
        let parse_part = |p: &str| -> Result<i64, RadiusError> {
            let p = p.trim();
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit() || b == b'-' || b == b'+') {
                return Err(bad());
            }
            p.parse::<i64>().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((n, d)) => SqRadius::new(parse_part(n)?, parse_part(d)?),
            None => SqRadius::new(parse_part(s)?, 1),
        }
    }
}

impl From<i64> for SqRadius {
    fn from(n: i64) -> Self {
        SqRadius::int(n)
    }
}

/// The pair (r², (r+Δ)²) describing a tolerant identification problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RadiusPair {
    pub r2: SqRadius,
    pub big_r2: SqRadius,
}

impl RadiusPair {
    pub fn new(r2: SqRadius, big_r2: SqRadius) -> Result<Self, RadiusError> {
        if big_r2 < r2 {
            return Err(RadiusError::Unordered {
                inner: r2,
                outer: big_r2,
            });
        }
        Ok(RadiusPair { r2, big_r2 })
    }

    /// Integer pair, panicking if unordered. Handy for tests and tables.
    pub fn ints(r2: i64, big_r2: i64) -> Self {
        Self::new(SqRadius::int(r2), SqRadius::int(big_r2)).expect("invalid radius pair")
    }

    /// Exact integer upper bound on (r + R)², the distance past which two
    /// vertices can only be separated by a whole ball.
    pub fn cutoff_sq(&self) -> i64 {
        let prod = self.r2.as_ratio() * self.big_r2.as_ratio();
        let prod_ceil = prod.ceil().to_integer();
        let root_ceil = crate::exact::ceil_sqrt(prod_ceil as u128) as i64;
        self.r2.ceil() + self.big_r2.ceil() + 2 * root_ceil
    }
}

impl fmt::Display for RadiusPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r²={} R²={}", self.r2, self.big_r2)
    }
}

/// A finite set of points, iterated in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(BTreeSet<Point>);

impl PointSet {
    pub fn new() -> Self {
        PointSet(BTreeSet::new())
    }

    pub fn insert(&mut self, p: Point) -> bool {
        self.0.insert(p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> + '_ {
        self.0.iter()
    }

    pub fn first(&self) -> Option<Point> {
        self.0.first().copied()
    }

    pub fn translate(&self, t: Point) -> PointSet {
        self.0.iter().map(|&p| p + t).collect()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.0.intersection(&other.0).copied().collect()
    }

    /// (min corner, max corner) of the bounding box.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let first = self.first()?;
        let (mut lo, mut hi) = (first, first);
        for p in self.iter() {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        Some((lo, hi))
    }

    /// Translate so that the bounding box starts at the origin.
    pub fn normalized(&self) -> PointSet {
        match self.bounding_box() {
            Some((lo, _)) => self.translate(-lo),
            None => PointSet::new(),
        }
    }

    pub fn to_vec(&self) -> Vec<Point> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        PointSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::collections::btree_set::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for PointSet {
    type Item = Point;
    type IntoIter = std::collections::btree_set::IntoIter<Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Half-height of the ball column at horizontal offset `dx`, i.e. the
/// largest `h` with dx² + h² ≤ r², or `None` when the column is empty.
pub fn column_half_height(r2: SqRadius, dx: i64) -> Option<i64> {
    let rest = r2.as_ratio() - Ratio::from_integer((dx as i128) * (dx as i128));
    if rest < Ratio::from_integer(0) {
        None
    } else {
        Some(floor_sqrt_ratio(rest) as i64)
    }
}

/// All lattice points at squared distance ≤ r² from `center`.
pub fn ball(center: Point, r2: SqRadius) -> PointSet {
    ball_offsets(r2).into_iter().map(|o| center + o).collect()
}

/// Offsets of the ball around the origin, column by column.
pub fn ball_offsets(r2: SqRadius) -> Vec<Point> {
    let reach = r2.floor_root();
    let mut out = Vec::new();
    for dx in -reach..=reach {
        if let Some(h) = column_half_height(r2, dx) {
            out.extend((-h..=h).map(|dy| Point::new(dx, dy)));
        }
    }
    out
}

/// One of the eight symmetries of the square, acting linearly on Z².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    /// Row-major 2×2 integer matrix.
    m: [i64; 4],
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { m: [1, 0, 0, 1] };

    /// The eight elements: rotations by 0, 90, 180, 270 degrees followed by
    /// the same rotations composed with the reflection x ↦ −x.
    pub const ALL: [Symmetry; 8] = [
        Symmetry { m: [1, 0, 0, 1] },
        Symmetry { m: [0, -1, 1, 0] },
        Symmetry { m: [-1, 0, 0, -1] },
        Symmetry { m: [0, 1, -1, 0] },
        Symmetry { m: [-1, 0, 0, 1] },
        Symmetry { m: [0, 1, 1, 0] },
        Symmetry { m: [1, 0, 0, -1] },
        Symmetry { m: [0, -1, -1, 0] },
    ];

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.m[0] * p.x + self.m[1] * p.y,
            self.m[2] * p.x + self.m[3] * p.y,
        )
    }

    pub fn apply_set(&self, s: &PointSet) -> PointSet {
        s.iter().map(|&p| self.apply(p)).collect()
    }
}

/// Images of `s` under the eight symmetries of the square, in the order of
/// [`Symmetry::ALL`].
pub fn d4_images(s: &PointSet) -> Vec<PointSet> {
    Symmetry::ALL.iter().map(|g| g.apply_set(s)).collect()
}
