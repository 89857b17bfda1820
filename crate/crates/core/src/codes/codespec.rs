//! `codespec v1`: a line-oriented text format for periodic codes.
//!
//! ```text
//! codespec v1
//! # comment
//! basis 3 0 0 3
//! point 2 1
//! point 0 2
//! ```

use thiserror::Error;

use super::{CodeError, PeriodicCode};
use crate::lattice::Point;

pub const HEADER: &str = "codespec v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodespecError {
    #[error("missing \"codespec v1\" header")]
    MissingHeader,
    #[error("line {line}: malformed: {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: second basis line")]
    DuplicateBasis { line: usize },
    #[error("line {line}: point before the basis line")]
    PointBeforeBasis { line: usize },
    #[error("missing basis line")]
    MissingBasis,
    #[error("no point lines")]
    NoPoints,
    #[error("dependent basis: {0} and {1}")]
    DependentBasis(Point, Point),
    #[error("duplicate residue: {0} and {1} coincide modulo the lattice")]
    DuplicateResidue(Point, Point),
    #[error("{0}")]
    Invalid(CodeError),
}

fn ints<const N: usize>(fields: &[&str]) -> Option<[i64; N]> {
    if fields.len() != N {
        return None;
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().ok()?;
    }
    Some(out)
}

pub fn parse_codespec(text: &str) -> Result<PeriodicCode, CodespecError> {
    let mut header = false;
    let mut basis: Option<(Point, Point)> = None;
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let malformed = || CodespecError::Malformed {
            line,
            text: raw.to_string(),
        };
        if !header {
            if content.split_whitespace().collect::<Vec<_>>() == ["codespec", "v1"] {
                header = true;
                continue;
            }
            return Err(CodespecError::MissingHeader);
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields[0] {
            "basis" => {
                let [a, b, c, d] = ints::<4>(&fields[1..]).ok_or_else(malformed)?;
                if basis.is_some() {
                    return Err(CodespecError::DuplicateBasis { line });
                }
                basis = Some((Point::new(a, b), Point::new(c, d)));
            }
            "point" => {
                let [x, y] = ints::<2>(&fields[1..]).ok_or_else(malformed)?;
                if basis.is_none() {
                    return Err(CodespecError::PointBeforeBasis { line });
                }
                points.push(Point::new(x, y));
            }
            _ => return Err(malformed()),
        }
    }
    if !header {
        return Err(CodespecError::MissingHeader);
    }
    let (b1, b2) = basis.ok_or(CodespecError::MissingBasis)?;
    if points.is_empty() {
        return Err(CodespecError::NoPoints);
    }
    PeriodicCode::new(b1, b2, points).map_err(|e| match e {
        CodeError::DependentBasis(a, b) => CodespecError::DependentBasis(a, b),
        CodeError::DuplicateResidue(a, b) => CodespecError::DuplicateResidue(a, b),
        other => CodespecError::Invalid(other),
    })
}

/// Canonical text: the stored basis and the sorted canonical residues.
pub fn serialize_codespec(code: &PeriodicCode) -> String {
    let [b1, b2] = code.basis();
    let mut out = format!("{HEADER}\nbasis {} {} {} {}\n", b1.x, b1.y, b2.x, b2.y);
    for r in code.residues() {
        out.push_str(&format!("point {} {}\n", r.x, r.y));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{builtin_code, BUILTIN_NAMES};
    use proptest::prelude::*;

    #[test]
    fn parses_fig10() {
        let c = parse_codespec("codespec v1\nbasis 3 0 0 3\npoint 2 1\npoint 0 2\n").unwrap();
        assert_eq!(c, builtin_code("fig10-sqrt5").unwrap().1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a code\n\ncodespec v1\n  # period\nbasis 3 0 0 3 # trailing\n\npoint 2 1\npoint 0 2\n";
        assert!(parse_codespec(text).is_ok());
    }

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_NAMES {
            let (_, c) = builtin_code(name).unwrap();
            let text = serialize_codespec(&c);
            let back = parse_codespec(&text).unwrap();
            assert_eq!(back, c, "{name}");
            assert_eq!(serialize_codespec(&back), text, "{name}");
        }
    }

    #[test]
    fn distinct_errors() {
        assert_eq!(
            parse_codespec("codespec v1\nbasis 2 0 4 0\npoint 0 0\n"),
            Err(CodespecError::DependentBasis(Point::new(2, 0), Point::new(4, 0)))
        );
        assert_eq!(
            parse_codespec("codespec v1\nbasis 2 0 0 2\npoint 0 0\npoint 2 2\n"),
            Err(CodespecError::DuplicateResidue(Point::new(0, 0), Point::new(2, 2)))
        );
        assert_eq!(
            parse_codespec("codespec v1\nbasis 2 0 0 2\npoint 0\n"),
            Err(CodespecError::Malformed {
                line: 3,
                text: "point 0".into()
            })
        );
        assert_eq!(
            parse_codespec("basis 2 0 0 2\n"),
            Err(CodespecError::MissingHeader)
        );
        assert_eq!(parse_codespec(""), Err(CodespecError::MissingHeader));
        assert_eq!(
            parse_codespec("codespec v1\npoint 0 0\n"),
            Err(CodespecError::PointBeforeBasis { line: 2 })
        );
        assert_eq!(
            parse_codespec("codespec v1\nbasis 1 0 0 1\n"),
            Err(CodespecError::NoPoints)
        );
        assert_eq!(parse_codespec("codespec v1\n"), Err(CodespecError::MissingBasis));
        assert!(matches!(
            parse_codespec("codespec v1\nbasis 1 0 0 1\nbasis 1 0 0 1\n"),
            Err(CodespecError::DuplicateBasis { line: 3 })
        ));
        assert!(matches!(
            parse_codespec("codespec v1\nbasis 99999999999999 0 0 1\npoint 0 0\n"),
            Err(CodespecError::Invalid(_))
        ));
    }

    proptest! {
        #[test]
        fn round_trip_random(
            a in 1i64..8, b in -8i64..8, c in 1i64..8,
            raw in proptest::collection::vec((-20i64..20, -20i64..20), 1..10),
        ) {
            let b1 = Point::new(a, 0);
            let b2 = Point::new(b, c);
            let hnf = crate::codes::Hnf::from_basis(b1, b2).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            let pts: Vec<Point> = raw
                .into_iter()
                .map(|(x, y)| Point::new(x, y))
                .filter(|&p| seen.insert(hnf.reduce(p)))
                .collect();
            let code = PeriodicCode::new(b1, b2, pts).unwrap();
            let text = serialize_codespec(&code);
            prop_assert_eq!(parse_codespec(&text).unwrap(), code);
        }

        #[test]
        fn parser_never_panics(text in "\\PC{0,200}") {
            let _ = parse_codespec(&text);
        }
    }
}
