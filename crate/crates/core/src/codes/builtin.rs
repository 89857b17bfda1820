use super::{CodeError, PeriodicCode};
use crate::lattice::{Point, RadiusPair};

pub const BUILTIN_NAMES: [&str; 5] = [
    "fig1-sqrt5",
    "fig3-r1",
    "fig8-sqrt2",
    "fig10-sqrt5",
    "fig11-sqrt8",
];

fn pts(v: &[(i64, i64)]) -> Vec<Point> {
    v.iter().map(|&(x, y)| Point::new(x, y)).collect()
}

/// Named figure codes with the radius pair they identify.
pub fn builtin_code(name: &str) -> Result<(RadiusPair, PeriodicCode), CodeError> {
    let p = Point::new;
    let (rp, b1, b2, residues) = match name {
        "fig1-sqrt5" => (
            RadiusPair::ints(5, 5),
            p(4, 0),
            p(0, 4),
            pts(&[(2, 3), (0, 1)]),
        ),
        "fig3-r1" => {
            let code = PeriodicCode::from_predicate(p(2, 0), p(0, 6), |q| {
                (q.x + (q.y + 1).div_euclid(3)).rem_euclid(2) == 0
            })?;
            return Ok((RadiusPair::ints(1, 2), code));
        }
        "fig8-sqrt2" => (
            RadiusPair::ints(2, 4),
            p(3, 3),
            p(-3, 3),
            pts(&[(-4, -5), (0, -5), (-2, -4), (-1, -4), (-3, -3), (1, -3)]),
        ),
        "fig10-sqrt5" => (
            RadiusPair::ints(5, 8),
            p(3, 0),
            p(0, 3),
            pts(&[(2, 1), (0, 2)]),
        ),
        "fig11-sqrt8" => (
            RadiusPair::ints(8, 9),
            p(14, 0),
            p(3, 3),
            pts(&[(0, 0), (1, 1), (2, 2), (7, 0), (8, 1), (9, 2), (11, 0), (12, 1)]),
        ),
        _ => return Err(CodeError::UnknownBuiltin(name.to_string())),
    };
    Ok((rp, PeriodicCode::new(b1, b2, residues)?))
}
