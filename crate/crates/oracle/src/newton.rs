//! Integral closure membership for monomial ideals in two variables.
//!
//! A lattice point lies in the Newton polyhedron iff it dominates a point
//! of a segment between two generators. Each segment is tested by
//! intersecting the two linear constraints on the segment parameter, in
//! exact integer arithmetic.

/// Whether `(a, b)` lies in `conv(gens) + ℝ²_{≥0}`.
pub fn in_newton_polyhedron(gens: &[(i64, i64)], a: i64, b: i64) -> bool {
    gens.iter().any(|&g| dominates_segment(g, g, a, b))
        || gens
            .iter()
            .enumerate()
            .any(|(i, &g)| gens[i + 1..].iter().any(|&h| dominates_segment(g, h, a, b)))
}

/// Exists `t ∈ [0, 1]` with `(1-t)g + t h <= (a, b)` componentwise.
fn dominates_segment(g: (i64, i64), h: (i64, i64), a: i64, b: i64) -> bool {
    // Work with t = p/q, q = 1 scaled out: each constraint c0 + t·c1 <= 0
    // restricts t to a half-line. Keep the interval as rationals num/den.
    let mut lo = (0i64, 1i64);
    let mut hi = (1i64, 1i64);
    for (c0, c1) in [(g.0 - a, h.0 - g.0), (g.1 - b, h.1 - g.1)] {
        if c1 == 0 {
            if c0 > 0 {
                return false;
            }
        } else if c1 > 0 {
            // t <= -c0 / c1
            let bound = (-c0, c1);
            if bound.0 * hi.1 < hi.0 * bound.1 {
                hi = bound;
            }
        } else {
            // t >= -c0 / c1 = c0 / -c1
            let bound = (c0, -c1);
            if bound.0 * lo.1 > lo.0 * bound.1 {
                lo = bound;
            }
        }
    }
    lo.0 * hi.1 <= hi.0 * lo.1
}
