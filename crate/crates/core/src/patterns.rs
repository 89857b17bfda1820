//! Separating patterns S(u,v) = (B_r(u) ∖ B_R(v)) ∪ (B_r(v) ∖ B_R(u)) and the
//! quantities derived from them: existence threshold, column profile,
//! cardinality formula and coverage of lines modulo k.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::exact::{
    ceil_root_difference, cmp_root_difference, floor_shifted_root_over, floor_sqrt_ratio, Q,
};
use crate::lattice::{column_half_height, Point, PointSet, RadiusPair, SqRadius};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern is only defined for distinct vertices, got {0} twice")]
    SameVertex(Point),
    #[error("no identifying code exists for {0}: the horizontal pattern is empty")]
    NoCode(RadiusPair),
    #[error("column domain [0, ⌊r+Δ−1⌋] is empty for {0}")]
    EmptyDomain(RadiusPair),
    #[error("operation needs a nonempty point set")]
    EmptySet,
}

/// Precomputed column half-heights of B_r and B_R around the origin.
///
/// A pattern is scanned column by column: inside a column the points of
/// B_r(u) form one interval and removing the B_R(v) interval leaves at most
/// two runs, so no per-point distance test is needed.
#[derive(Clone, Debug)]
pub struct PatternGeometry {
    rp: RadiusPair,
    reach_r: i64,
    reach_big: i64,
    half_r: Vec<i64>,
    half_big: Vec<i64>,
}

impl PatternGeometry {
    pub fn new(rp: RadiusPair) -> Self {
        let reach_r = rp.r2.floor_root();
        let reach_big = rp.big_r2.floor_root();
        let half_r = (-reach_r..=reach_r)
            .map(|dx| column_half_height(rp.r2, dx).unwrap_or(-1))
            .collect();
        let half_big = (-reach_big..=reach_big)
            .map(|dx| column_half_height(rp.big_r2, dx).unwrap_or(-1))
            .collect();
        PatternGeometry {
            rp,
            reach_r,
            reach_big,
            half_r,
            half_big,
        }
    }

    pub fn radius_pair(&self) -> RadiusPair {
        self.rp
    }

    pub fn reach(&self) -> i64 {
        self.reach_r
    }

    fn half_big_at(&self, dx: i64) -> Option<i64> {
        if dx.abs() > self.reach_big {
            None
        } else {
            let h = self.half_big[(dx + self.reach_big) as usize];
            (h >= 0).then_some(h)
        }
    }

    /// Visits the runs (x, y_lo, y_hi) of B_r(a) ∖ B_R(b).
    fn half_runs<B>(
        &self,
        a: Point,
        b: Point,
        f: &mut impl FnMut(i64, i64, i64) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        for dx in -self.reach_r..=self.reach_r {
            let h = self.half_r[(dx + self.reach_r) as usize];
            if h < 0 {
                continue;
            }
            let x = a.x + dx;
            let (lo, hi) = (a.y - h, a.y + h);
            match self.half_big_at(x - b.x) {
                None => f(x, lo, hi)?,
                Some(hb) => {
                    let (blo, bhi) = (b.y - hb, b.y + hb);
                    if lo < blo {
                        f(x, lo, hi.min(blo - 1))?;
                    }
                    if hi > bhi {
                        f(x, lo.max(bhi + 1), hi)?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// Visits every run (x, y_lo, y_hi) of S(u,v). The two halves are
    /// disjoint whenever R ≥ r, so each point is reported once.
    pub fn runs<B>(
        &self,
        u: Point,
        v: Point,
        mut f: impl FnMut(i64, i64, i64) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        self.half_runs(u, v, &mut f)?;
        self.half_runs(v, u, &mut f)
    }

    /// First point of S(u,v) (in scan order) satisfying `pred`.
    pub fn find(&self, u: Point, v: Point, mut pred: impl FnMut(Point) -> bool) -> Option<Point> {
        let flow = self.runs(u, v, |x, lo, hi| {
            for y in lo..=hi {
                let p = Point::new(x, y);
                if pred(p) {
                    return ControlFlow::Break(p);
                }
            }
            ControlFlow::Continue(())
        });
        match flow {
            ControlFlow::Break(p) => Some(p),
            ControlFlow::Continue(()) => None,
        }
    }

    /// S(u,v) as an explicit set; `u` and `v` may coincide (empty result).
    pub fn collect(&self, u: Point, v: Point) -> PointSet {
        let mut out = PointSet::new();
        let _ = self.runs::<()>(u, v, |x, lo, hi| {
            for y in lo..=hi {
                out.insert(Point::new(x, y));
            }
            ControlFlow::Continue(())
        });
        out
    }
}

/// S(u,v) for distinct vertices.
pub fn sym_diff_pattern(u: Point, v: Point, rp: RadiusPair) -> Result<PointSet, PatternError> {
    if u == v {
        return Err(PatternError::SameVertex(u));
    }
    Ok(PatternGeometry::new(rp).collect(u, v))
}

/// The horizontal pattern S((0,0),(−1,0)).
pub fn horizontal_pattern(rp: RadiusPair) -> PointSet {
    PatternGeometry::new(rp).collect(Point::ORIGIN, Point::new(-1, 0))
}

/// The diagonal pattern S((0,0),(−1,−1)).
pub fn diagonal_pattern(rp: RadiusPair) -> PointSet {
    PatternGeometry::new(rp).collect(Point::ORIGIN, Point::new(-1, -1))
}

/// Whether an (r,Δ)-identifying code exists, i.e. the horizontal pattern is
/// nonempty.
pub fn exists_code(rp: RadiusPair) -> bool {
    PatternGeometry::new(rp)
        .find(Point::ORIGIN, Point::new(-1, 0), |_| true)
        .is_some()
}

/// max over w ∈ B_r(0) of |w − (−1,0)|², the exclusive threshold on R²:
/// a code exists iff R² < this value.
pub fn delta_m_sq(r2: SqRadius) -> SqRadius {
    let reach = r2.floor_root();
    let best = (-reach..=reach)
        .filter_map(|x| column_half_height(r2, x).map(|h| (x + 1) * (x + 1) + h * h))
        .max()
        .unwrap_or(1);
    SqRadius::int(best)
}

/// Witness vertex (⌊r⌋, ⌊√(r² − ⌊r⌋²)⌋) of the ball.
pub fn max_delta_witness(r2: SqRadius) -> Point {
    let fr = r2.floor_root();
    let rest = r2.as_ratio() - Q::from_integer((fr * fr) as i128);
    Point::new(fr, floor_sqrt_ratio(rest) as i64)
}

/// Column profile of the horizontal pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnProfile {
    /// Least nonnegative abscissa of a pattern element.
    pub x0: i64,
    /// Largest x in [0, ⌊r+Δ−1⌋] with h(x) ≤ 1.
    pub x1: i64,
    /// ⌈h(⌊r+Δ−1⌋)⌉.
    pub m: i64,
    /// ⌈(Δ(2r+Δ) − 1)/2⌉, a lower bound on `x0`.
    pub x0_formula_lb: i64,
    /// Closed form for x1; `None` when its radicand is negative.
    pub x1_formula: Option<i64>,
    pub m_formula: i64,
    /// ⌊r+Δ−1⌋, the right end of the domain of h.
    pub domain_end: i64,
}

/// Orders h(x) = √(r² − x²) − √(R² − (x+1)²) against `theta`.
pub fn cmp_h(rp: RadiusPair, x: i64, theta: i64) -> Ordering {
    let (a, b) = h_radicands(rp, x);
    cmp_root_difference(a, b, Q::from_integer(theta as i128))
}

fn h_radicands(rp: RadiusPair, x: i64) -> (Q, Q) {
    let x = x as i128;
    (
        rp.r2.as_ratio() - Q::from_integer(x * x),
        rp.big_r2.as_ratio() - Q::from_integer((x + 1) * (x + 1)),
    )
}

pub fn column_profile(rp: RadiusPair) -> Result<ColumnProfile, PatternError> {
    let pattern = horizontal_pattern(rp);
    if pattern.is_empty() {
        return Err(PatternError::NoCode(rp));
    }
    let domain_end = rp.big_r2.floor_root() - 1;
    if domain_end < 0 {
        return Err(PatternError::EmptyDomain(rp));
    }
    let x0 = pattern
        .iter()
        .filter(|p| p.x >= 0)
        .map(|p| p.x)
        .min()
        .expect("horizontal pattern is symmetric about x = -1/2");

    let x1 = (0..=domain_end)
        .rev()
        .find(|&x| cmp_h(rp, x, 1) != Ordering::Greater)
        .unwrap_or(-1);

    let (a, b) = h_radicands(rp, domain_end);
    let m = ceil_root_difference(a, b) as i64;

    let r2 = rp.r2.as_ratio();
    let big_r2 = rp.big_r2.as_ratio();
    let d = big_r2 - r2;
    let one = Q::from_integer(1);
    let two = Q::from_integer(2);
    let x0_formula_lb = ((d - one) / two).ceil().to_integer() as i64;

    let four = Q::from_integer(4);
    let radicand = Q::from_integer(8) * big_r2 - d * d - four * d - four;
    let x1_formula = (radicand >= Q::from_integer(0))
        .then(|| floor_shifted_root_over(d - two, radicand, 4) as i64);

    let fr = rp.big_r2.floor_root() as i128;
    let xe = domain_end as i128;
    let m_formula =
        ceil_root_difference(r2 - Q::from_integer(xe * xe), big_r2 - Q::from_integer(fr * fr)) as i64;

    Ok(ColumnProfile {
        x0,
        x1,
        m,
        x0_formula_lb,
        x1_formula,
        m_formula,
        domain_end,
    })
}

/// |S((0,0),(−1,0))| by enumeration and by the closed column-sum formula.
pub fn pattern_size(rp: RadiusPair) -> (usize, usize) {
    let pattern = horizontal_pattern(rp);
    let enumerated = pattern.len();

    let r2 = rp.r2.as_ratio();
    let big_r2 = rp.big_r2.as_ratio();
    let floor_r = rp.r2.floor_root();
    let floor_big = rp.big_r2.floor_root();
    let end = floor_big - 1;
    let x0 = pattern.iter().filter(|p| p.x >= 0).map(|p| p.x).min();

    let mut total: i128 = 0;
    if let Some(x0) = x0 {
        for x in x0..=end {
            let xi = x as i128;
            let top = floor_sqrt_ratio(r2 - Q::from_integer(xi * xi));
            let cut = floor_sqrt_ratio(big_r2 - Q::from_integer((xi + 1) * (xi + 1)));
            total += 4 * (top - cut);
        }
    }
    if floor_r == floor_big {
        let fr = floor_r as i128;
        total += 4 * floor_sqrt_ratio(r2 - Q::from_integer(fr * fr)) + 2;
    }
    (enumerated, total as usize)
}

/// Families of parallel lattice lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineDirection {
    Horizontal,
    Vertical,
    Diagonal,
    Antidiagonal,
}

impl LineDirection {
    /// Index of the line through `p`: y, x, y − x or x + y.
    pub fn residue(&self, p: Point) -> i64 {
        match self {
            LineDirection::Horizontal => p.y,
            LineDirection::Vertical => p.x,
            LineDirection::Diagonal => p.y - p.x,
            LineDirection::Antidiagonal => p.x + p.y,
        }
    }
}

/// Whether `s` meets every line of direction `dir` modulo `k`.
pub fn lines_mod_check(s: &PointSet, k: u64, dir: LineDirection) -> bool {
    assert!(k > 0, "modulus must be positive");
    let k = k as i64;
    let mut seen = vec![false; k as usize];
    let mut missing = k;
    for p in s {
        let i = dir.residue(*p).rem_euclid(k) as usize;
        if !seen[i] {
            seen[i] = true;
            missing -= 1;
            if missing == 0 {
                return true;
            }
        }
    }
    false
}

/// Largest k such that `s` meets every line of direction `dir` modulo k.
/// Coverage is not monotone in k, so every candidate is tested.
pub fn max_mod(s: &PointSet, dir: LineDirection) -> Result<u64, PatternError> {
    let residues: Vec<i64> = s.iter().map(|p| dir.residue(*p)).collect();
    let lo = residues.iter().min().ok_or(PatternError::EmptySet)?;
    let hi = residues.iter().max().ok_or(PatternError::EmptySet)?;
    let span = (hi - lo + 1) as u64;
    Ok((1..=span)
        .rev()
        .find(|&k| lines_mod_check(s, k, dir))
        .unwrap_or(1))
}

fn diag_ball_parts(r2: SqRadius) -> (i64, bool) {
    let a = floor_sqrt_ratio(r2.as_ratio() / Q::from_integer(2)) as i64;
    let extra = Q::from_integer((a * a + (a + 1) * (a + 1)) as i128) <= r2.as_ratio();
    (a, extra)
}

/// Number of consecutive diagonals met by a ball, 4⌊r/√2⌋ + 2δ + 1 with
/// δ = 1 exactly when (−a−1, a) lies in the ball for a = ⌊r/√2⌋.
pub fn diag_ball_formula(r2: SqRadius) -> u64 {
    let (a, extra) = diag_ball_parts(r2);
    (4 * a + 2 * i64::from(extra) + 1) as u64
}

/// The same closed form with δ read the other way round (δ = 0 when the
/// extra diagonal fits). Kept to document that this reading disagrees with
/// enumeration, e.g. at r² = 1 and r² = 5.
pub fn diag_ball_formula_swapped_delta(r2: SqRadius) -> u64 {
    let (a, extra) = diag_ball_parts(r2);
    (4 * a + 2 * i64::from(!extra) + 1) as u64
}

/// Whether `s` contains three cells of some 2×2 square.
pub fn contains_l_pattern(s: &PointSet) -> bool {
    s.iter().any(|p| {
        [(0, 0), (-1, 0), (0, -1), (-1, -1)].iter().any(|&(dx, dy)| {
            let corner = Point::new(p.x + dx, p.y + dy);
            let hits = [(0, 0), (1, 0), (0, 1), (1, 1)]
                .iter()
                .filter(|&&(ex, ey)| s.contains(&Point::new(corner.x + ex, corner.y + ey)))
                .count();
            hits >= 3
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ball, sq_dist};

    fn pts(v: &[(i64, i64)]) -> PointSet {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    /// Direct definition, point by point.
    fn brute_pattern(u: Point, v: Point, rp: RadiusPair) -> PointSet {
        let left = ball(u, rp.r2)
            .into_iter()
            .filter(|&w| !rp.big_r2.admits(sq_dist(w, v)));
        let right = ball(v, rp.r2)
            .into_iter()
            .filter(|&w| !rp.big_r2.admits(sq_dist(w, u)));
        left.chain(right).collect()
    }

    #[test]
    fn pattern_examples() {
        let u = Point::new(-1, 0);
        let v = Point::ORIGIN;
        assert_eq!(
            sym_diff_pattern(u, v, RadiusPair::ints(1, 2)).unwrap(),
            pts(&[(-2, 0), (1, 0)])
        );
        assert_eq!(
            sym_diff_pattern(u, v, RadiusPair::ints(2, 4)).unwrap(),
            pts(&[(-2, 1), (-2, -1), (1, 1), (1, -1)])
        );
        assert_eq!(
            sym_diff_pattern(u, v, RadiusPair::ints(9, 10)).unwrap(),
            pts(&[(-3, -2), (-4, 0), (-3, 2), (2, -2), (2, 2), (3, 0)])
        );
        let diag = sym_diff_pattern(Point::new(-1, -1), v, RadiusPair::ints(9, 10)).unwrap();
        assert_eq!(diag.len(), 10);
        for p in [(3, 0), (0, 3), (2, 2), (2, 1), (1, 2)] {
            assert!(diag.contains(&Point::new(p.0, p.1)));
        }
        assert_eq!(
            sym_diff_pattern(v, v, RadiusPair::ints(1, 2)),
            Err(PatternError::SameVertex(v))
        );
    }

    #[test]
    fn scan_matches_brute_force() {
        for r2 in 1..30 {
            for big in r2..r2 + 8 {
                let rp = RadiusPair::ints(r2, big);
                let geo = PatternGeometry::new(rp);
                for d in [(1, 0), (1, 1), (2, 1), (3, -2), (0, 5), (7, 7)] {
                    let u = Point::new(2, -3);
                    let v = u + Point::new(d.0, d.1);
                    assert_eq!(geo.collect(u, v), brute_pattern(u, v, rp), "{rp} d={d:?}");
                }
            }
        }
    }

    #[test]
    fn existence_examples() {
        assert!(exists_code(RadiusPair::ints(1, 2)));
        assert!(!exists_code(RadiusPair::ints(1, 4)));
        assert!(exists_code(RadiusPair::ints(4, 8)));
    }

    #[test]
    fn delta_m_examples() {
        assert_eq!(delta_m_sq(SqRadius::int(1)), SqRadius::int(4));
        assert_eq!(delta_m_sq(SqRadius::int(4)), SqRadius::int(9));
        assert!(exists_code(RadiusPair::ints(4, 8)));
        assert!(!exists_code(RadiusPair::ints(4, 9)));
    }

    #[test]
    fn delta_m_threshold_contract() {
        for r2 in 1..400 {
            let m = delta_m_sq(SqRadius::int(r2)).num();
            assert!(m > r2 && exists_code(RadiusPair::ints(r2, m - 1)), "r2={r2}");
            assert!(!exists_code(RadiusPair::ints(r2, m)), "r2={r2}");
            // brute-force oracle over the ball
            let brute = ball(Point::ORIGIN, SqRadius::int(r2))
                .iter()
                .map(|&w| sq_dist(w, Point::new(-1, 0)))
                .max()
                .unwrap();
            assert_eq!(m, brute);
        }
    }

    #[test]
    fn profile_examples() {
        let p = column_profile(RadiusPair::ints(5, 9)).unwrap();
        assert_eq!((p.x0, p.x1, p.m), (2, 2, 1));
        let p = column_profile(RadiusPair::ints(1, 2)).unwrap();
        assert_eq!((p.x0, p.x0_formula_lb), (1, 0));
        let p = column_profile(RadiusPair::ints(2, 4)).unwrap();
        assert_eq!(p.m, 1);
        assert_eq!(
            column_profile(RadiusPair::ints(1, 4)),
            Err(PatternError::NoCode(RadiusPair::ints(1, 4)))
        );
    }

    #[test]
    fn pattern_size_examples() {
        assert_eq!(pattern_size(RadiusPair::ints(1, 2)), (2, 2));
        assert_eq!(pattern_size(RadiusPair::ints(2, 4)), (4, 4));
        assert_eq!(pattern_size(RadiusPair::ints(9, 10)), (6, 6));
    }

    #[test]
    fn line_coverage_examples() {
        let hor = horizontal_pattern(RadiusPair::ints(9, 10));
        let diag = diagonal_pattern(RadiusPair::ints(9, 10));
        assert!(lines_mod_check(&hor, 6, LineDirection::Diagonal));
        assert!(lines_mod_check(&hor, 6, LineDirection::Antidiagonal));
        assert!(!lines_mod_check(&hor, 4, LineDirection::Diagonal));
        assert!(lines_mod_check(&diag, 8, LineDirection::Horizontal));
        assert!(lines_mod_check(&diag, 8, LineDirection::Vertical));
        assert!(lines_mod_check(&pts(&[(5, 9)]), 1, LineDirection::Diagonal));
    }

    #[test]
    fn max_mod_examples() {
        let b5 = ball(Point::ORIGIN, SqRadius::int(5));
        assert_eq!(max_mod(&b5, LineDirection::Diagonal).unwrap(), 7);
        let b2 = ball(Point::ORIGIN, SqRadius::int(2));
        assert_eq!(max_mod(&b2, LineDirection::Diagonal).unwrap(), 5);
        let hor = horizontal_pattern(RadiusPair::ints(9, 10));
        assert_eq!(max_mod(&hor, LineDirection::Diagonal).unwrap(), 6);
        assert_eq!(max_mod(&PointSet::new(), LineDirection::Diagonal), Err(PatternError::EmptySet));
    }

    #[test]
    fn diag_formula_examples() {
        assert_eq!(diag_ball_formula(SqRadius::int(1)), 3);
        assert_eq!(diag_ball_formula(SqRadius::int(2)), 5);
        assert_eq!(diag_ball_formula(SqRadius::int(5)), 7);
        assert_eq!(diag_ball_formula_swapped_delta(SqRadius::int(1)), 1);
        assert_eq!(diag_ball_formula_swapped_delta(SqRadius::int(5)), 5);
    }

    #[test]
    fn l_pattern_detection() {
        assert!(contains_l_pattern(&pts(&[(0, 0), (1, 0), (0, 1)])));
        assert!(contains_l_pattern(&pts(&[(5, 5), (4, 5), (4, 4)])));
        assert!(!contains_l_pattern(&pts(&[(0, 0), (1, 1), (2, 0)])));
    }
}
