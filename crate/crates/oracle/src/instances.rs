//! Random test instances.
//!
//! Ideals are returned as raw exponent or value lists so that callers build
//! them with whichever backend they test.

use rand::Rng;

use crate::newton::in_newton_polyhedron;

/// Two m-primary monomial ideals of `k[x, y]` with exponents at most `max`
/// whose Newton polygons are homothetic triangles.
///
/// Each ideal is `(x^{kp}, y^{kq})` plus random monomials inside the
/// triangle's Newton polyhedron, so `(x^{kp}, y^{kq})` reduces it and the
/// product of the pure powers reduces the product ideal. Independent random
/// ideals almost never admit a monomial complete reduction.
pub fn homothetic_pair<R: Rng>(rng: &mut R, max: u32) -> [Vec<Vec<u32>>; 2] {
    let slopes: Vec<(u32, u32)> = (1..=max)
        .flat_map(|p| (1..=max).map(move |q| (p, q)))
        .filter(|&(p, q)| gcd(p, q) == 1)
        .collect();
    let (p, q) = slopes[rng.random_range(0..slopes.len())];
    let top = max / p.max(q);
    [0, 1].map(|_| {
        let k = rng.random_range(1..=top);
        let (a, b) = (k * p, k * q);
        let mut gens = vec![vec![a, 0], vec![0, b]];
        let tri = [(a as i64, 0), (0, b as i64)];
        for _ in 0..rng.random_range(0..=3) {
            let (x, y) = (rng.random_range(0..=max), rng.random_range(0..=max));
            if in_newton_polyhedron(&tri, x as i64, y as i64) {
                gens.push(vec![x, y]);
            }
        }
        gens
    })
}

/// Two proper m-primary monomial ideals of `k[x, y]` with independent random
/// generators, exponents at most `max`.
pub fn independent_pair<R: Rng>(rng: &mut R, max: u32) -> [Vec<Vec<u32>>; 2] {
    [0, 1].map(|_| {
        let mut gens = vec![
            vec![rng.random_range(1..=max), 0],
            vec![0, rng.random_range(1..=max)],
        ];
        for _ in 0..rng.random_range(0..=3) {
            let (x, y) = (rng.random_range(0..=max), rng.random_range(0..=max));
            if x + y > 0 {
                gens.push(vec![x, y]);
            }
        }
        gens
    })
}

/// Numerical semigroup generators with gcd 1, entries in `2..=max`, or `[1]`.
pub fn semigroup<R: Rng>(rng: &mut R, max: u32) -> Vec<u32> {
    loop {
        let k = rng.random_range(1..=3);
        let mut gens: Vec<u32> = (0..k).map(|_| rng.random_range(2..=max)).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.iter().fold(0, |g, &a| gcd(g, a)) == 1 {
            return gens;
        }
        if rng.random_range(0..8) == 0 {
            return vec![1];
        }
    }
}

/// Nonempty value lists of semigroup elements below `max`, one per ideal.
pub fn semigroup_values<R: Rng>(rng: &mut R, table: &[bool], max: u32, count: usize) -> Vec<Vec<u32>> {
    let elements: Vec<u32> = (1..=max).filter(|&v| table[v as usize]).collect();
    (0..count)
        .map(|_| {
            let k = rng.random_range(1..=3);
            let mut vs: Vec<u32> = (0..k).map(|_| elements[rng.random_range(0..elements.len())]).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
