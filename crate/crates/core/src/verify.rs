//! Finite verification of the identifying property for periodic codes, alarm
//! decoding, randomized fault simulation and per-instance lemma checks.

use std::fmt;

use rand::RngExt;
use rand_pcg::Pcg32;
use rayon::prelude::*;
use thiserror::Error;

use crate::codes::PeriodicCode;
use crate::lattice::{ball_offsets, sq_dist, Point, PointSet, RadiusPair, SqRadius};
use crate::patterns::{
    contains_l_pattern, diagonal_pattern, exists_code, horizontal_pattern, lines_mod_check,
    max_mod, LineDirection, PatternGeometry,
};

/// Stream constant of the simulation generator; the seed picks the state.
pub const SIMULATION_STREAM: u64 = 0x5851_f42d_4c95_7f2d;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("no identifying code exists for {0}")]
    NoCode(RadiusPair),
    #[error("alarm {0} is not a code vertex")]
    AlarmNotInCode(Point),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("s = {s} exceeds diag(B_r) = {diag}")]
    ModulusExceedsBall { s: u64, diag: u64 },
    #[error("the horizontal pattern misses some diagonal line modulo {0}")]
    PremiseFails(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    Domination,
    Separation,
}

/// A vertex whose ball misses the code, or a pair whose pattern does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub u: Point,
    pub v: Option<Point>,
}

impl Failure {
    /// Recomputes the named ball or pattern from scratch and confirms it is
    /// disjoint from the code.
    pub fn recheck(&self, code: &PeriodicCode, rp: RadiusPair) -> bool {
        match (self.kind, self.v) {
            (FailureKind::Domination, None) => ball_offsets(rp.r2)
                .into_iter()
                .all(|o| !code.contains(self.u + o)),
            (FailureKind::Separation, Some(v)) if v != self.u => {
                naive_pattern(self.u, v, rp).iter().all(|p| !code.contains(*p))
            }
            _ => false,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.v) {
            (FailureKind::Domination, _) => write!(f, "domination fails: B_r{} misses the code", self.u),
            (FailureKind::Separation, Some(v)) => {
                write!(f, "separation fails: S({}, {}) misses the code", self.u, v)
            }
            (FailureKind::Separation, None) => write!(f, "separation fails at {}", self.u),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub failure: Option<Failure>,
    /// Balls and patterns examined, in scan order up to the first failure.
    pub checks: u64,
    pub cutoff_sq: i64,
}

/// Offsets d ≠ 0 with |d|² ≤ cutoff, lexicographic.
fn separation_offsets(cutoff: i64) -> Vec<Point> {
    let reach = cutoff.isqrt();
    let mut out: Vec<Point> = (-reach..=reach)
        .flat_map(|x| (-reach..=reach).map(move |y| Point::new(x, y)))
        .filter(|&d| d != Point::ORIGIN && sq_dist(d, Point::ORIGIN) <= cutoff)
        .collect();
    out.sort();
    out
}

/// Decides whether `code` is (r,Δ)-identifying.
///
/// Domination is checked on one fundamental domain. Separation is checked
/// for u in that domain and v within the cutoff: beyond it S(u,v) contains
/// all of B_r(v), so domination covers the pair. The reported failure is
/// the lexicographically least one, independent of scheduling.
pub fn verify_identifying(
    code: &PeriodicCode,
    rp: RadiusPair,
) -> Result<VerificationReport, VerifyError> {
    if !exists_code(rp) {
        return Err(VerifyError::NoCode(rp));
    }
    let cutoff_sq = rp.cutoff_sq();
    let domain = code.fundamental_domain();
    let ball = ball_offsets(rp.r2);

    let dom_fail = domain
        .par_iter()
        .position_first(|&u| ball.iter().all(|&o| !code.contains(u + o)));
    if let Some(i) = dom_fail {
        return Ok(VerificationReport {
            ok: false,
            failure: Some(Failure {
                kind: FailureKind::Domination,
                u: domain[i],
                v: None,
            }),
            checks: i as u64 + 1,
            cutoff_sq,
        });
    }

    let geom = PatternGeometry::new(rp);
    let offsets = separation_offsets(cutoff_sq);
    let sep_fail = domain.par_iter().enumerate().find_map_first(|(i, &u)| {
        offsets
            .iter()
            .position(|&d| geom.find(u, u + d, |p| code.contains(p)).is_none())
            .map(|j| (i, j))
    });
    let n = domain.len() as u64;
    Ok(match sep_fail {
        Some((i, j)) => VerificationReport {
            ok: false,
            failure: Some(Failure {
                kind: FailureKind::Separation,
                u: domain[i],
                v: Some(domain[i] + offsets[j]),
            }),
            checks: n + (i * offsets.len() + j) as u64 + 1,
            cutoff_sq,
        },
        None => VerificationReport {
            ok: true,
            failure: None,
            checks: n * (1 + offsets.len() as u64),
            cutoff_sq,
        },
    })
}

fn naive_pattern(u: Point, v: Point, rp: RadiusPair) -> Vec<Point> {
    let reach = rp.big_r2.floor_root() + 1;
    let mut out = Vec::new();
    for x in u.x.min(v.x) - reach..=u.x.max(v.x) + reach {
        for y in u.y.min(v.y) - reach..=u.y.max(v.y) + reach {
            let w = Point::new(x, y);
            let (du, dv) = (sq_dist(w, u), sq_dist(w, v));
            if (rp.r2.admits(du) && !rp.big_r2.admits(dv))
                || (rp.r2.admits(dv) && !rp.big_r2.admits(du))
            {
                out.push(w);
            }
        }
    }
    out
}

/// Vertices u consistent with the alarms: B_r(u)∩C ⊆ alarms ⊆ B_R(u)∩C.
/// Candidates are confined to the intersection of the R-balls of the alarms.
pub fn decode(
    code: &PeriodicCode,
    rp: RadiusPair,
    alarms: &PointSet,
) -> Result<PointSet, VerifyError> {
    if let Some(bad) = alarms.iter().find(|&&a| !code.contains(a)) {
        return Err(VerifyError::AlarmNotInCode(*bad));
    }
    let Some(first) = alarms.first() else {
        return Ok(PointSet::new());
    };
    let inner = ball_offsets(rp.r2);
    Ok(ball_offsets(rp.big_r2)
        .into_iter()
        .map(|o| first + o)
        .filter(|&u| alarms.iter().all(|&a| rp.big_r2.admits(sq_dist(a, u))))
        .filter(|&u| {
            inner
                .iter()
                .all(|&o| !code.contains(u + o) || alarms.contains(&(u + o)))
        })
        .collect())
}

/// Alarms raised by a fault at `u` when every sensor within distance r fires
/// and every sensor in the tolerance ring fires with probability 1/2.
pub fn sample_alarms(code: &PeriodicCode, rp: RadiusPair, u: Point, rng: &mut Pcg32) -> PointSet {
    ball_offsets(rp.big_r2)
        .into_iter()
        .map(|o| u + o)
        .filter(|&c| code.contains(c))
        .filter(|&c| rp.r2.admits(sq_dist(c, u)) || rng.random_bool(0.5))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimulationReport {
    pub trials: u64,
    pub unique_correct: u64,
    /// Several candidates remain.
    pub ambiguous: u64,
    /// A single wrong candidate, or none at all.
    pub wrong: u64,
}

/// Seeded fault-localization trials. Faults are drawn uniformly from a
/// 101×101 window around the origin; the generator is PCG32 with state
/// `seed` and stream [`SIMULATION_STREAM`].
pub fn simulate_trials(
    code: &PeriodicCode,
    rp: RadiusPair,
    trials: u64,
    seed: u64,
) -> SimulationReport {
    let mut rng = Pcg32::new(seed, SIMULATION_STREAM);
    let mut report = SimulationReport::default();
    for _ in 0..trials {
        let u = Point::new(rng.random_range(-50..=50), rng.random_range(-50..=50));
        let alarms = sample_alarms(code, rp, u, &mut rng);
        let found = decode(code, rp, &alarms).expect("sampled alarms are code vertices");
        report.trials += 1;
        if found.len() > 1 {
            report.ambiguous += 1;
        } else if found.first() == Some(u) {
            report.unique_correct += 1;
        } else {
            report.wrong += 1;
        }
    }
    report
}

/// For same-line pairs at distance 2..=min(dmax, 4·x0+1), some unit-distance
/// pattern S(u′,v′) lies inside S(u,v). Horizontal pairs suffice by symmetry.
pub fn check_lemma_dist(rp: RadiusPair, dmax: i64) -> Result<bool, VerifyError> {
    if !exists_code(rp) {
        return Err(VerifyError::NoCode(rp));
    }
    let geom = PatternGeometry::new(rp);
    let x0 = horizontal_pattern(rp)
        .iter()
        .filter(|p| p.x >= 0)
        .map(|p| p.x)
        .min()
        .expect("horizontal pattern is nonempty");
    let unit = geom.collect(Point::ORIGIN, Point::new(1, 0));
    for d in 2..=dmax.min(4 * x0 + 1) {
        let big = geom.collect(Point::ORIGIN, Point::new(d, 0));
        let found = (-1..=d).any(|j| unit.translate(Point::new(j, 0)).is_subset(&big));
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of consecutive diagonals met by B_r, by enumeration.
pub fn ball_diag(r2: SqRadius) -> u64 {
    let ball: PointSet = ball_offsets(r2).into_iter().collect();
    max_mod(&ball, LineDirection::Diagonal).expect("ball is nonempty")
}

/// For every same-line pair up to the cutoff, S(u,v) meets all diagonal lines
/// modulo s, given s ≤ diag(B_r) and the horizontal pattern meeting them.
pub fn check_lemma_line(rp: RadiusPair, s: u64) -> Result<bool, VerifyError> {
    if !exists_code(rp) {
        return Err(VerifyError::NoCode(rp));
    }
    if s == 0 {
        return Err(VerifyError::ZeroModulus);
    }
    let diag = ball_diag(rp.r2);
    if s > diag {
        return Err(VerifyError::ModulusExceedsBall { s, diag });
    }
    if !lines_mod_check(&horizontal_pattern(rp), s, LineDirection::Diagonal) {
        return Err(VerifyError::PremiseFails(s));
    }
    let geom = PatternGeometry::new(rp);
    let reach = rp.cutoff_sq().isqrt() + 1;
    Ok((1..=reach).all(|d| {
        [Point::new(d, 0), Point::new(0, d)]
            .iter()
            .all(|&v| lines_mod_check(&geom.collect(Point::ORIGIN, v), s, LineDirection::Diagonal))
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MethodConditions {
    /// Horizontal pattern meets all diagonal lines modulo s.
    pub a: bool,
    /// Diagonal pattern meets all horizontal lines modulo t.
    pub b: bool,
    /// ⌊r⌋² + 4 ≤ r² < (⌊r⌋+1)².
    pub c: bool,
    /// s ≤ diag(B_r).
    pub s_within_ball: bool,
}

impl MethodConditions {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.s_within_ball
    }
}

pub fn check_method_conditions(
    rp: RadiusPair,
    s: u64,
    t: u64,
) -> Result<MethodConditions, VerifyError> {
    if !exists_code(rp) {
        return Err(VerifyError::NoCode(rp));
    }
    if s == 0 || t == 0 {
        return Err(VerifyError::ZeroModulus);
    }
    let fr = rp.r2.floor_root() as i128;
    let r2 = rp.r2.as_ratio();
    Ok(MethodConditions {
        a: lines_mod_check(&horizontal_pattern(rp), s, LineDirection::Diagonal),
        b: lines_mod_check(&diagonal_pattern(rp), t, LineDirection::Horizontal),
        c: r2 >= (fr * fr + 4).into() && r2 < ((fr + 1) * (fr + 1)).into(),
        s_within_ball: s <= ball_diag(rp.r2),
    })
}

/// The diagonal pattern restricted to x, y ≥ 0 meets every diagonal and
/// every anti-diagonal line modulo s.
pub fn check_optimal_premise(rp: RadiusPair, s: u64) -> Result<bool, VerifyError> {
    if !exists_code(rp) {
        return Err(VerifyError::NoCode(rp));
    }
    if s == 0 {
        return Err(VerifyError::ZeroModulus);
    }
    let quadrant: PointSet = diagonal_pattern(rp)
        .into_iter()
        .filter(|p| p.x >= 0 && p.y >= 0)
        .collect();
    Ok(lines_mod_check(&quadrant, s, LineDirection::Diagonal)
        && lines_mod_check(&quadrant, s, LineDirection::Antidiagonal))
}

/// Every S(u,v) with |u−v|² > 2 up to the cutoff contains three cells of a
/// 2×2 square. Returns the first pair that does not.
pub fn l_pattern_counterexample(rp: RadiusPair) -> Result<Option<Point>, VerifyError> {
    if !exists_code(rp) {
        return Err(VerifyError::NoCode(rp));
    }
    let geom = PatternGeometry::new(rp);
    Ok(separation_offsets(rp.cutoff_sq())
        .into_iter()
        .filter(|&d| sq_dist(d, Point::ORIGIN) > 2)
        .find(|&d| !contains_l_pattern(&geom.collect(Point::ORIGIN, d))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{builtin_code, construct_diag, full_lattice, Hnf, BUILTIN_NAMES};
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    /// Checks every pair (u, v) with u in the fundamental domain and v in a
    /// window of twice the cutoff, by direct distance tests.
    fn naive_verify(code: &PeriodicCode, rp: RadiusPair) -> Option<Failure> {
        let domain = code.fundamental_domain();
        for &u in &domain {
            let dominated = (-8..=8)
                .flat_map(|x| (-8..=8).map(move |y| p(x, y)))
                .any(|o| rp.r2.admits(sq_dist(o, Point::ORIGIN)) && code.contains(u + o));
            if !dominated {
                return Some(Failure {
                    kind: FailureKind::Domination,
                    u,
                    v: None,
                });
            }
        }
        let reach = 2 * rp.cutoff_sq().isqrt() + 2;
        for &u in &domain {
            for x in -reach..=reach {
                for y in -reach..=reach {
                    let v = u + p(x, y);
                    if v != u && naive_pattern(u, v, rp).iter().all(|q| !code.contains(*q)) {
                        return Some(Failure {
                            kind: FailureKind::Separation,
                            u,
                            v: Some(v),
                        });
                    }
                }
            }
        }
        None
    }

    #[test]
    fn builtins_verify() {
        for name in BUILTIN_NAMES {
            let (rp, code) = builtin_code(name).unwrap();
            let rep = verify_identifying(&code, rp).unwrap();
            assert!(rep.ok, "{name}: {:?}", rep.failure);
        }
    }

    #[test]
    fn whole_lattice_verifies() {
        for (r2, big) in [(1, 1), (1, 2), (2, 4), (5, 8), (8, 9), (10, 12)] {
            let rp = RadiusPair::ints(r2, big);
            assert!(verify_identifying(&full_lattice(), rp).unwrap().ok);
        }
    }

    #[test]
    fn sparse_lines_fail_domination() {
        let code = PeriodicCode::new(p(100, 0), p(0, 1), [p(0, 0)]).unwrap();
        let rp = RadiusPair::ints(1, 2);
        let rep = verify_identifying(&code, rp).unwrap();
        let f = rep.failure.unwrap();
        assert_eq!(f.kind, FailureKind::Domination);
        assert_eq!(f.u, p(2, 0));
        assert!(f.recheck(&code, rp));
    }

    #[test]
    fn missing_code_is_an_error() {
        let rp = RadiusPair::ints(1, 4);
        assert_eq!(
            verify_identifying(&full_lattice(), rp),
            Err(VerifyError::NoCode(rp))
        );
    }

    #[test]
    fn broken_fig10_fails_and_rechecks() {
        let (rp, code) = builtin_code("fig10-sqrt5").unwrap();
        let broken = code.without_residue(p(2, 1)).unwrap();
        let rep = verify_identifying(&broken, rp).unwrap();
        assert!(!rep.ok);
        let f = rep.failure.unwrap();
        assert!(f.recheck(&broken, rp));
        assert_eq!(Some(f), naive_verify(&broken, rp));
    }

    #[test]
    fn method_removal_code() {
        let code = construct_diag(4, Some(6), true).unwrap();
        assert!(verify_identifying(&code, RadiusPair::ints(5, 9)).unwrap().ok);
    }

    #[test]
    fn decode_examples() {
        let (rp, code) = builtin_code("fig10-sqrt5").unwrap();
        assert!(decode(&code, rp, &PointSet::new()).unwrap().is_empty());
        let far: PointSet = [p(2, 1), p(32, 1)].into_iter().collect();
        assert!(decode(&code, rp, &far).unwrap().is_empty());
        assert_eq!(
            decode(&code, rp, &[p(1, 1)].into_iter().collect()),
            Err(VerifyError::AlarmNotInCode(p(1, 1)))
        );
        for x in -4..5 {
            for y in -4..5 {
                let u = p(x, y);
                let exact: PointSet = ball_offsets(rp.r2)
                    .into_iter()
                    .map(|o| u + o)
                    .filter(|&c| code.contains(c))
                    .collect();
                let got = decode(&code, rp, &exact).unwrap();
                assert_eq!(got.to_vec(), vec![u]);
            }
        }
    }

    /// Every alarm set between B_r(u)∩C and B_R(u)∩C decodes to {u}.
    #[test]
    fn decode_all_perturbations() {
        for name in ["fig10-sqrt5", "fig8-sqrt2", "fig3-r1"] {
            let (rp, code) = builtin_code(name).unwrap();
            for u in [p(0, 0), p(1, 2), p(-3, 1)] {
                let inner: Vec<Point> = ball_offsets(rp.r2)
                    .into_iter()
                    .map(|o| u + o)
                    .filter(|&c| code.contains(c))
                    .collect();
                let ring: Vec<Point> = ball_offsets(rp.big_r2)
                    .into_iter()
                    .map(|o| u + o)
                    .filter(|&c| code.contains(c) && !rp.r2.admits(sq_dist(c, u)))
                    .collect();
                assert!(ring.len() < 16);
                for mask in 0u32..1 << ring.len() {
                    let mut a: PointSet = inner.iter().copied().collect();
                    for (i, &c) in ring.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            a.insert(c);
                        }
                    }
                    assert_eq!(decode(&code, rp, &a).unwrap().to_vec(), vec![u], "{name}");
                }
            }
        }
    }

    #[test]
    fn simulation() {
        let (rp, code) = builtin_code("fig10-sqrt5").unwrap();
        let rep = simulate_trials(&code, rp, 300, 7);
        assert_eq!(rep.unique_correct, 300);
        assert_eq!(rep, simulate_trials(&code, rp, 300, 7));
        assert_eq!(simulate_trials(&code, rp, 0, 7), SimulationReport::default());
        let broken = code.without_residue(p(2, 1)).unwrap();
        let rep = simulate_trials(&broken, rp, 1000, 7);
        assert!(rep.ambiguous + rep.wrong > 0);
    }

    #[test]
    fn lemma_dist() {
        assert_eq!(check_lemma_dist(RadiusPair::ints(5, 9), 9), Ok(true));
        assert_eq!(check_lemma_dist(RadiusPair::ints(1, 2), 5), Ok(true));
        assert_eq!(check_lemma_dist(RadiusPair::ints(5, 9), 40), Ok(true));
    }

    #[test]
    fn lemma_line() {
        assert_eq!(check_lemma_line(RadiusPair::ints(9, 10), 6), Ok(true));
        let diag = ball_diag(SqRadius::int(9));
        assert_eq!(
            check_lemma_line(RadiusPair::ints(9, 10), diag + 1),
            Err(VerifyError::ModulusExceedsBall { s: diag + 1, diag })
        );
        // premise fails modulo 4 for (9,10)
        assert_eq!(
            check_lemma_line(RadiusPair::ints(9, 10), 4),
            Err(VerifyError::PremiseFails(4))
        );
        let r = check_lemma_line(RadiusPair::ints(5, 8), 2);
        assert!(matches!(r, Ok(true) | Err(VerifyError::PremiseFails(2))));
    }

    #[test]
    fn method_conditions() {
        let m = check_method_conditions(RadiusPair::ints(9, 10), 6, 8).unwrap();
        assert!(m.a && m.b && !m.c);
        let m = check_method_conditions(RadiusPair::ints(8, 9), 1, 1).unwrap();
        assert!(m.c);
        let m = check_method_conditions(RadiusPair::ints(5, 9), 4, 6).unwrap();
        assert!(!m.c);
    }

    #[test]
    fn optimal_premise() {
        let rp = RadiusPair::ints(5, 9);
        let quadrant: PointSet = diagonal_pattern(rp)
            .into_iter()
            .filter(|q| q.x >= 0 && q.y >= 0)
            .collect();
        let oracle = (0..4).all(|i| quadrant.iter().any(|q| (q.y - q.x).rem_euclid(4) == i))
            && (0..4).all(|i| quadrant.iter().any(|q| (q.y + q.x).rem_euclid(4) == i));
        assert_eq!(check_optimal_premise(rp, 4), Ok(oracle));
        assert_eq!(check_optimal_premise(rp, 1), Ok(!quadrant.is_empty()));
    }

    #[test]
    fn l_pattern_claim() {
        assert_eq!(l_pattern_counterexample(RadiusPair::ints(1, 2)), Ok(None));
    }

    #[test]
    fn monotone_in_big_radius() {
        let (_, code) = builtin_code("fig8-sqrt2").unwrap();
        for big in 2..=4 {
            let rp = RadiusPair::ints(2, big);
            assert!(verify_identifying(&code, rp).unwrap().ok, "R²={big}");
        }
    }

    fn random_code(a: i64, b: i64, c: i64, bits: u64) -> Option<PeriodicCode> {
        let hnf = Hnf::from_basis(p(a, 0), p(b % a, c)).ok()?;
        let cells: Vec<Point> = hnf
            .domain()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| bits >> (i % 64) & 1 == 1)
            .map(|(_, q)| q)
            .collect();
        PeriodicCode::new(p(a, 0), p(b % a, c), cells).ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_naive(a in 1i64..5, b in 0i64..5, c in 1i64..5, bits in any::<u64>(), which in 0usize..2) {
            let rp = [RadiusPair::ints(1, 2), RadiusPair::ints(2, 4)][which];
            if let Some(code) = random_code(a, b, c, bits) {
                let rep = verify_identifying(&code, rp).unwrap();
                let naive = naive_verify(&code, rp);
                prop_assert_eq!(rep.failure, naive);
                prop_assert_eq!(rep.ok, naive.is_none());
                if let Some(f) = rep.failure {
                    prop_assert!(f.recheck(&code, rp));
                }
            }
        }

        #[test]
        fn pattern_translation_equivariant(ux in -5i64..5, uy in -5i64..5, dx in -4i64..4, dy in -4i64..4, tx in -9i64..9, ty in -9i64..9) {
            let rp = RadiusPair::ints(5, 8);
            let u = p(ux, uy);
            let v = p(ux + dx, uy + dy);
            prop_assume!(u != v);
            let geom = PatternGeometry::new(rp);
            let t = p(tx, ty);
            prop_assert_eq!(geom.collect(u, v).translate(t), geom.collect(u + t, v + t));
            prop_assert_eq!(geom.collect(u, v), geom.collect(v, u));
            prop_assert_eq!(geom.collect(u, v).len() % 2, 0);
        }
    }
}
