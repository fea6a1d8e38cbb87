//! Integral closure of monomial ideals in `k[[x, y]]` via the Newton polyhedron.
//!
//! The closure of a monomial ideal is spanned by the lattice points of
//! `conv(exponents) + ℝ²_{≥0}`. We take the lower convex hull of the staircase
//! corners and test lattice points against its edges with integer half-plane
//! inequalities, so no rational arithmetic is needed.

use super::monomial::{Monomial, Staircase};

/// Vertices of the lower-left convex hull of a two-variable staircase, sorted
/// by increasing `x` (hence decreasing `y`).
pub fn newton_vertices(stair: &Staircase) -> Vec<(i64, i64)> {
    let pts: Vec<(i64, i64)> = stair
        .gens()
        .iter()
        .map(|g| (g.exps()[0] as i64, g.exps()[1] as i64))
        .collect();
    // Monotone chain over points already sorted by x ascending, y descending.
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Keep only strict left turns when walking a -> b -> p.
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Smallest `b` with `(a, b)` in the Newton polyhedron, if any.
fn min_height(vertices: &[(i64, i64)], a: i64) -> Option<i64> {
    let (x0, _) = *vertices.first()?;
    if a < x0 {
        return None;
    }
    let mut b = vertices.last().unwrap().1;
    for w in vertices.windows(2) {
        let ((x1, y1), (x2, y2)) = (w[0], w[1]);
        // (y1 - y2)·a + (x2 - x1)·b >= (y1 - y2)·x1 + (x2 - x1)·y1
        let dy = y1 - y2;
        let dx = x2 - x1;
        let rhs = dy * x1 + dx * y1 - dy * a;
        b = b.max(div_ceil(rhs, dx));
    }
    Some(b)
}

fn div_ceil(n: i64, d: i64) -> i64 {
    debug_assert!(d > 0);
    n.div_euclid(d) + i64::from(n.rem_euclid(d) != 0)
}

/// Integral closure of a two-variable staircase.
pub fn integral_closure_2var(stair: &Staircase) -> Staircase {
    debug_assert_eq!(stair.num_vars(), 2);
    if stair.gens().is_empty() || stair.is_unit() {
        return stair.clone();
    }
    let vertices = newton_vertices(stair);
    let max_x = vertices.last().unwrap().0;
    let gens = (vertices[0].0..=max_x)
        .filter_map(|a| {
            min_height(&vertices, a).map(|b| Monomial::new(vec![a as u32, b.max(0) as u32]))
        })
        .collect();
    Staircase::new(2, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(gens: &[&[u32]]) -> Staircase {
        Staircase::new(2, gens.iter().map(|g| Monomial::new(g.to_vec())).collect())
    }

    #[test]
    fn closure_of_x2_y2() {
        assert_eq!(
            integral_closure_2var(&st(&[&[2, 0], &[0, 2]])),
            st(&[&[2, 0], &[1, 1], &[0, 2]])
        );
    }

    #[test]
    fn complete_parameter_ideal_is_closed() {
        let a = st(&[&[1, 0], &[0, 2]]);
        assert_eq!(integral_closure_2var(&a), a);
    }

    #[test]
    fn closure_of_x3_y5() {
        // Lattice points on or above the segment from (3,0) to (0,5).
        let c = integral_closure_2var(&st(&[&[3, 0], &[0, 5]]));
        assert_eq!(c, st(&[&[3, 0], &[2, 2], &[1, 4], &[0, 5]]));
    }

    #[test]
    fn hull_drops_interior_corner() {
        let v = newton_vertices(&st(&[&[4, 0], &[2, 3], &[0, 4]]));
        assert_eq!(v, vec![(0, 4), (4, 0)]);
    }
}
