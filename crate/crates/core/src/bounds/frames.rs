//! Frame lemmas: the least number of code vertices any identifying code puts
//! in a translate of a fixed shape, the configurations attaining it, and
//! claims forced by a configuration on nearby cells.
//!
//! Every constraint is positive ("this ball or pattern holds a code vertex"),
//! so a cell that no count limit mentions can always be put in the code. Only
//! balls and patterns lying entirely inside the limited cells restrict a
//! search, and those are necessarily inside any window containing them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use thiserror::Error;

use super::search::{minimize_clauses, Bits, Outcome, Problem};
use crate::lattice::{ball_offsets, Point, PointSet, RadiusPair, Symmetry};
use crate::patterns::{exists_code, PatternGeometry};

pub const FRAME_NAMES: [&str; 3] = ["F12", "F20", "F14"];

/// Search nodes allowed per satisfiability call before giving up.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

const MAX_CLAIM_COORD: i64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("no identifying code exists for {0}")]
    NoCode(RadiusPair),
    #[error("window margin must be nonnegative, got {0}")]
    NegativeMargin(i64),
    #[error("unknown frame {0:?}")]
    UnknownFrame(String),
    #[error("configuration {0:?} is not inside the frame")]
    ConfigOutsideFrame(Vec<Point>),
    #[error(transparent)]
    Claim(#[from] ClaimError),
}

/// A finite shape whose translates are counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameShape {
    name: String,
    cells: PointSet,
}

fn rect(lo: Point, hi: Point) -> PointSet {
    (lo.x..=hi.x)
        .flat_map(|x| (lo.y..=hi.y).map(move |y| Point::new(x, y)))
        .collect()
}

impl FrameShape {
    pub fn new(name: impl Into<String>, cells: PointSet) -> Self {
        FrameShape {
            name: name.into(),
            cells,
        }
    }

    /// 4×4 square minus its central 2×2.
    pub fn f12() -> Self {
        let outer = rect(Point::new(-2, -2), Point::new(1, 1));
        let inner = rect(Point::new(-1, -1), Point::new(0, 0));
        FrameShape::new("F12", outer.difference(&inner))
    }

    /// 6×6 square minus its central 4×4.
    pub fn f20() -> Self {
        let outer = rect(Point::new(-3, -3), Point::new(2, 2));
        let inner = rect(Point::new(-2, -2), Point::new(1, 1));
        FrameShape::new("F20", outer.difference(&inner))
    }

    /// Two columns of seven cells, five apart.
    pub fn f14() -> Self {
        let left = rect(Point::new(-3, -4), Point::new(-3, 2));
        let right = rect(Point::new(2, -4), Point::new(2, 2));
        FrameShape::new("F14", left.union(&right))
    }

    pub fn named(name: &str) -> Result<Self, BoundsError> {
        match name {
            "F12" => Ok(Self::f12()),
            "F20" => Ok(Self::f20()),
            "F14" => Ok(Self::f14()),
            _ => Err(BoundsError::UnknownFrame(name.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cells(&self) -> &PointSet {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn translate(&self, t: Point) -> PointSet {
        self.cells.translate(t)
    }

    /// Bounding box grown by `margin` on every side.
    pub fn window(&self, margin: i64) -> (Point, Point) {
        let (lo, hi) = self.cells.bounding_box().expect("frames are nonempty");
        (
            Point::new(lo.x - margin, lo.y - margin),
            Point::new(hi.x + margin, hi.y + margin),
        )
    }

    /// Maps p ↦ g(p) + t for every symmetry g of the square that carries the
    /// frame onto itself.
    pub fn stabilizer(&self) -> Vec<(Symmetry, Point)> {
        let (lo, _) = self.cells.bounding_box().expect("frames are nonempty");
        Symmetry::ALL
            .iter()
            .filter_map(|g| {
                let img = g.apply_set(&self.cells);
                let (ilo, _) = img.bounding_box()?;
                let t = lo - ilo;
                (img.translate(t) == self.cells).then_some((*g, t))
            })
            .collect()
    }
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// ⌈√R²⌉ + 2.
pub fn default_margin(rp: RadiusPair) -> i64 {
    let fr = rp.big_r2.floor_root();
    let ceil = if rp.big_r2.is_perfect_square() { fr } else { fr + 1 };
    ceil + 2
}

/// Every ball B_r(w) and every pattern S(u,v) contained in `region`,
/// minimized so that no kept constraint contains another.
pub fn constraints_within(rp: RadiusPair, region: &PointSet) -> Vec<PointSet> {
    let Some((lo, hi)) = region.bounding_box() else {
        return Vec::new();
    };
    let mut out: Vec<PointSet> = Vec::new();
    let ball = ball_offsets(rp.r2);
    for w in rect(lo, hi) {
        if ball.iter().all(|&o| region.contains(&(w + o))) {
            out.push(ball.iter().map(|&o| w + o).collect());
        }
    }
    let geom = PatternGeometry::new(rp);
    let reach = geom.reach();
    let cutoff = rp.cutoff_sq();
    let grown = rect(
        Point::new(lo.x - reach, lo.y - reach),
        Point::new(hi.x + reach, hi.y + reach),
    );
    for &u in &grown {
        for &v in &grown {
            if v <= u || crate::lattice::sq_dist(u, v) > cutoff {
                continue;
            }
            let mut set = PointSet::new();
            let inside = geom.runs(u, v, |x, ylo, yhi| {
                for y in ylo..=yhi {
                    let p = Point::new(x, y);
                    if !region.contains(&p) {
                        return ControlFlow::Break(());
                    }
                    set.insert(p);
                }
                ControlFlow::Continue(())
            });
            if inside.is_continue() && !set.is_empty() {
                out.push(set);
            }
        }
    }
    let index: BTreeMap<Point, usize> = region.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = region.len();
    let bits: Vec<Bits> = out
        .iter()
        .map(|s| Bits::from_indices(n, s.iter().map(|p| index[p])))
        .collect();
    let cells = region.to_vec();
    minimize_clauses(bits)
        .into_iter()
        .map(|b| b.ones().map(|i| cells[i]).collect())
        .collect()
}

/// A search problem over the cells of `region`.
struct Encoded {
    cells: Vec<Point>,
    index: BTreeMap<Point, usize>,
    problem: Problem,
}

impl Encoded {
    fn new(rp: RadiusPair, region: &PointSet) -> Self {
        let cells = region.to_vec();
        let index: BTreeMap<Point, usize> = cells.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let n = cells.len();
        let clauses = constraints_within(rp, region)
            .iter()
            .map(|s| Bits::from_indices(n, s.iter().map(|p| index[p])))
            .collect();
        Encoded {
            cells,
            index,
            problem: Problem {
                n,
                clauses,
                limits: Vec::new(),
            },
        }
    }

    fn bits(&self, s: &PointSet) -> Bits {
        Bits::from_indices(self.cells.len(), s.iter().filter_map(|p| self.index.get(p).copied()))
    }

    fn points(&self, b: &Bits) -> PointSet {
        b.ones().map(|i| self.cells[i]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameCount {
    Proved { min: usize },
    Inconclusive { reason: String },
}

/// Least number of code vertices in a translate of `frame`, over all cell
/// choices that meet every ball and pattern inside the window.
pub fn frame_min_count(
    rp: RadiusPair,
    frame: &FrameShape,
    margin: i64,
    budget: u64,
) -> Result<FrameCount, BoundsError> {
    if margin < 0 {
        return Err(BoundsError::NegativeMargin(margin));
    }
    if !exists_code(rp) {
        return Err(BoundsError::NoCode(rp));
    }
    let mut enc = Encoded::new(rp, frame.cells());
    let all = enc.bits(frame.cells());
    let none = Bits::new(enc.cells.len());
    for k in 0..=frame.len() {
        enc.problem.limits = vec![(all.clone(), k)];
        match enc.problem.solve(&none, &none, budget) {
            Outcome::Sat(_) => return Ok(FrameCount::Proved { min: k }),
            Outcome::Unsat => {}
            Outcome::Exhausted => {
                return Ok(FrameCount::Inconclusive {
                    reason: format!("search budget of {budget} nodes exhausted at count {k}"),
                })
            }
        }
    }
    Ok(FrameCount::Inconclusive {
        reason: "no feasible configuration".into(),
    })
}

/// A configuration of code vertices inside a frame, up to the frame's
/// symmetries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConfigClass {
    /// Lexicographically least member of the orbit.
    pub representative: PointSet,
    pub orbit: usize,
}

fn orbit(frame: &FrameShape, config: &PointSet) -> Vec<PointSet> {
    let mut images: Vec<PointSet> = frame
        .stabilizer()
        .iter()
        .map(|(g, t)| g.apply_set(config).translate(*t))
        .collect();
    images.sort();
    images.dedup();
    images
}

/// Least image of `config` under the frame's symmetries.
pub fn canonicalize(frame: &FrameShape, config: &PointSet) -> PointSet {
    orbit(frame, config).swap_remove(0)
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// All feasible configurations with exactly `count` code vertices in the
/// frame, one class per symmetry orbit.
pub fn classify_min_configs(
    rp: RadiusPair,
    frame: &FrameShape,
    count: usize,
) -> Result<Vec<ConfigClass>, BoundsError> {
    if !exists_code(rp) {
        return Err(BoundsError::NoCode(rp));
    }
    let cells = frame.cells().to_vec();
    let constraints = constraints_within(rp, frame.cells());
    let mut classes: BTreeMap<PointSet, usize> = BTreeMap::new();
    subsets(cells.len(), count.min(cells.len()), &mut |pick| {
        let config: PointSet = pick.iter().map(|&i| cells[i]).collect();
        if constraints.iter().all(|c| c.iter().any(|p| config.contains(p))) {
            let images = orbit(frame, &config);
            classes.entry(images[0].clone()).or_insert(images.len());
        }
    });
    if count > cells.len() {
        classes.clear();
    }
    Ok(classes
        .into_iter()
        .map(|(representative, orbit)| ConfigClass {
            representative,
            orbit,
        })
        .collect())
}

/// Images of `config` under the frame's symmetries that put a code vertex
/// on `cell`.
pub fn orientations_with(frame: &FrameShape, config: &PointSet, cell: Point) -> Vec<PointSet> {
    orbit(frame, config)
        .into_iter()
        .filter(|img| img.contains(&cell))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Some,
    Every,
}

/// A set of cells named in a claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellSet {
    /// The frame translated by the offset.
    Frame(Point),
    Cells(Vec<Point>),
}

impl CellSet {
    pub fn resolve(&self, frame: &FrameShape) -> PointSet {
        match self {
            CellSet::Frame(t) => frame.translate(*t),
            CellSet::Cells(v) => v.iter().copied().collect(),
        }
    }
}

/// "some/every listed cell set holds at least `at_least` code vertices".
///
/// Text form: `some 4 F(1,0) F(-1,0) F(0,1) F(0,-1)` or
/// `every 1 {(0,2),(0,-3)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub quantifier: Quantifier,
    pub at_least: usize,
    pub sets: Vec<CellSet>,
}

impl Claim {
    /// Some unit-offset translate of the frame holds at least `k` vertices.
    pub fn some_neighbor_frame(k: usize) -> Self {
        Claim {
            quantifier: Quantifier::Some,
            at_least: k,
            sets: [(1, 0), (-1, 0), (0, 1), (0, -1)]
                .iter()
                .map(|&(x, y)| CellSet::Frame(Point::new(x, y)))
                .collect(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClaimError {
    #[error("empty claim")]
    Empty,
    #[error("expected \"some\" or \"every\", found {0:?}")]
    Quantifier(String),
    #[error("expected a vertex count, found {0:?}")]
    Count(String),
    #[error("claim lists no cell set")]
    NoSets,
    #[error("malformed cell set {0:?}")]
    Set(String),
}

fn parse_pair(s: &str) -> Option<Point> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let x: i64 = a.trim().parse().ok()?;
    let y: i64 = b.trim().parse().ok()?;
    (x.abs() <= MAX_CLAIM_COORD && y.abs() <= MAX_CLAIM_COORD).then_some(Point::new(x, y))
}

fn parse_set(tok: &str) -> Option<CellSet> {
    if let Some(rest) = tok.strip_prefix('F') {
        return parse_pair(rest).map(CellSet::Frame);
    }
    let inner = tok.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(CellSet::Cells(Vec::new()));
    }
    let mut cells = Vec::new();
    let mut rest = inner;
    loop {
        let end = rest.find(')')?;
        cells.push(parse_pair(&rest[..=end])?);
        rest = &rest[end + 1..];
        if rest.is_empty() {
            return Some(CellSet::Cells(cells));
        }
        rest = rest.strip_prefix(',')?;
    }
}

impl FromStr for Claim {
    type Err = ClaimError;

    fn from_str(s: &str) -> Result<Self, ClaimError> {
        let mut toks = s.split_whitespace();
        let quantifier = match toks.next().ok_or(ClaimError::Empty)? {
            "some" => Quantifier::Some,
            "every" => Quantifier::Every,
            other => return Err(ClaimError::Quantifier(other.to_string())),
        };
        let count = toks.next().ok_or(ClaimError::Count(String::new()))?;
        let at_least: usize = count
            .parse()
            .map_err(|_| ClaimError::Count(count.to_string()))?;
        let sets = toks
            .map(|t| parse_set(t).ok_or_else(|| ClaimError::Set(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if sets.is_empty() {
            return Err(ClaimError::NoSets);
        }
        Ok(Claim {
            quantifier,
            at_least,
            sets,
        })
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match self.quantifier {
            Quantifier::Some => "some",
            Quantifier::Every => "every",
        };
        write!(f, "{q} {}", self.at_least)?;
        for s in &self.sets {
            match s {
                CellSet::Frame(t) => write!(f, " F({},{})", t.x, t.y)?,
                CellSet::Cells(v) => {
                    let inner: Vec<String> = v.iter().map(|p| format!("({},{})", p.x, p.y)).collect();
                    write!(f, " {{{}}}", inner.join(","))?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Forcing {
    Proved,
    Inconclusive {
        reason: String,
        /// Cells chosen by a window completion violating the claim, if any.
        witness: Option<PointSet>,
    },
}

/// Decides whether every code agreeing with `config` on the frame satisfies
/// `claim`, using only constraints inside the window.
pub fn check_forcing(
    rp: RadiusPair,
    frame: &FrameShape,
    config: &PointSet,
    claim: &Claim,
    margin: i64,
    budget: u64,
) -> Result<Forcing, BoundsError> {
    if margin < 0 {
        return Err(BoundsError::NegativeMargin(margin));
    }
    if !exists_code(rp) {
        return Err(BoundsError::NoCode(rp));
    }
    if !config.is_subset(frame.cells()) {
        return Err(BoundsError::ConfigOutsideFrame(config.to_vec()));
    }
    if claim.at_least == 0 {
        return Ok(Forcing::Proved);
    }
    let (lo, hi) = frame.window(margin);
    let sets: Vec<PointSet> = claim.sets.iter().map(|s| s.resolve(frame)).collect();
    let in_window = |p: &Point| lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y;
    if let Some(i) = sets.iter().position(|s| !s.iter().all(in_window)) {
        return Ok(Forcing::Inconclusive {
            reason: format!("claim set {} leaves the window; enlarge the margin", i + 1),
            witness: None,
        });
    }
    let mut region = frame.cells().clone();
    for s in &sets {
        region = region.union(s);
    }
    let mut enc = Encoded::new(rp, &region);
    let chosen = enc.bits(config);
    let excluded = enc.bits(&frame.cells().difference(config));
    let k = claim.at_least - 1;
    let negations: Vec<Vec<(Bits, usize)>> = match claim.quantifier {
        Quantifier::Some => vec![sets.iter().map(|s| (enc.bits(s), k)).collect()],
        Quantifier::Every => sets.iter().map(|s| vec![(enc.bits(s), k)]).collect(),
    };
    for limits in negations {
        enc.problem.limits = limits;
        match enc.problem.solve(&chosen, &excluded, budget) {
            Outcome::Unsat => {}
            Outcome::Sat(t) => {
                return Ok(Forcing::Inconclusive {
                    reason: "a window completion violates the claim".into(),
                    witness: Some(enc.points(&t)),
                })
            }
            Outcome::Exhausted => {
                return Ok(Forcing::Inconclusive {
                    reason: format!("search budget of {budget} nodes exhausted"),
                    witness: None,
                })
            }
        }
    }
    Ok(Forcing::Proved)
}
