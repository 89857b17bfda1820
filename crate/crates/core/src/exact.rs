//! Exact integer square roots and sign decisions for expressions of the
//! form √a − √b − c over the rationals.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Q = Ratio<i128>;

/// ⌈√n⌉.
pub fn ceil_sqrt(n: u128) -> u128 {
    let s = n.isqrt();
    if s * s == n {
        s
    } else {
        s + 1
    }
}

/// ⌊√q⌋ for a nonnegative rational q.
pub fn floor_sqrt_ratio(q: Q) -> i128 {
    assert!(!q.is_negative(), "square root of negative rational");
    // ⌊√q⌋ = ⌊√⌊q⌋⌋ since the candidates k² are integers.
    q.floor().to_integer().isqrt()
}

/// Orders `l` against `k·√b` (b ≥ 0).
pub fn cmp_with_scaled_root(l: Q, k: Q, b: Q) -> Ordering {
    debug_assert!(!b.is_negative());
    if k.is_zero() || b.is_zero() {
        return l.cmp(&Q::zero());
    }
    let sl = sign(&l);
    let sr = sign(&k);
    if sl != sr {
        return sl.cmp(&sr);
    }
    let lhs = l * l;
    let rhs = k * k * b;
    if sr > 0 {
        lhs.cmp(&rhs)
    } else {
        rhs.cmp(&lhs)
    }
}

/// Orders √a against c + √b (a, b ≥ 0).
pub fn cmp_root_with_shifted_root(a: Q, c: Q, b: Q) -> Ordering {
    debug_assert!(!a.is_negative() && !b.is_negative());
    // sign of c + √b
    let t_sign = if !c.is_negative() {
        if c.is_zero() && b.is_zero() {
            0
        } else {
            1
        }
    } else {
        sign(&(b - c * c))
    };
    match t_sign {
        -1 => Ordering::Greater,
        0 => {
            if a.is_zero() {
                Ordering::Equal
            } else {
                Ordering::Greater
            }
        }
        _ => {
            // a vs c² + b + 2c√b
            cmp_with_scaled_root(a - c * c - b, c * Q::from_integer(2), b)
        }
    }
}

/// Orders √a − √b against c.
pub fn cmp_root_difference(a: Q, b: Q, c: Q) -> Ordering {
    cmp_root_with_shifted_root(a, c, b)
}

/// ⌈√a − √b⌉ decided exactly.
pub fn ceil_root_difference(a: Q, b: Q) -> i128 {
    // √a − √b lies in [−√b, √a]; start from the float estimate and correct.
    let approx = (ratio_to_f64(a).sqrt() - ratio_to_f64(b).sqrt()).ceil() as i128;
    let mut n = approx;
    // smallest n with √a − √b ≤ n
    while cmp_root_difference(a, b, Q::from_integer(n)) == Ordering::Greater {
        n += 1;
    }
    while cmp_root_difference(a, b, Q::from_integer(n - 1)) != Ordering::Greater {
        n -= 1;
    }
    n
}

/// ⌊(p + √q) / d⌋ for rationals p, q ≥ 0 and integer d > 0, decided exactly.
pub fn floor_shifted_root_over(p: Q, q: Q, d: i128) -> i128 {
    assert!(d > 0);
    let approx = ((ratio_to_f64(p) + ratio_to_f64(q).sqrt()) / d as f64).floor() as i128;
    // n ≤ (p + √q)/d  ⇔  d·n − p ≤ √q
    let fits = |n: i128| {
        let lhs = Q::from_integer(d * n) - p;
        cmp_with_scaled_root(lhs, Q::from_integer(1), q) != Ordering::Greater
    };
    let mut n = approx;
    while !fits(n) {
        n -= 1;
    }
    while fits(n + 1) {
        n += 1;
    }
    n
}

pub fn ratio_to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn sign(q: &Q) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
