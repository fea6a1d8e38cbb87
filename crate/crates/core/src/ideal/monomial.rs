//! Exponent vectors and staircase (minimal generator) algebra.
//!
//! A [`Staircase`] is the antichain of minimal generators of a monomial ideal
//! in the ambient power-series ring. Every operation returns a canonical
//! staircase: minimal generators sorted lexicographically. All of the ideal
//! arithmetic for the polynomial backend reduces to these routines.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Exponent vector of a ring monomial.
///
/// In the numerical semigroup backend a monomial `t^v` is stored as the
/// one-entry vector `[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    /// `x_var^exp`.
    pub fn pure(num_vars: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; num_vars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|&e| e * k).collect())
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// `self | other`, i.e. `self <= other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `max(self - by, 0)`: the generator of `(self) : (by)`.
    pub fn saturating_div(&self, by: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&by.0)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        )
    }

    /// The variable index if this is a pure power `x_i^k` with `k >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut var = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if var.is_some() {
                    return None;
                }
                var = Some(i);
            }
        }
        var
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Canonical minimal generating set of a monomial ideal of `k[[x_1..x_n]]`.
///
/// An empty staircase is the zero ideal; `[0,..,0]` alone is the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Staircase {
    num_vars: usize,
    gens: Vec<Monomial>,
}

impl Staircase {
    pub fn new(num_vars: usize, gens: Vec<Monomial>) -> Self {
        Staircase {
            num_vars,
            gens: minimalize(gens),
        }
    }

    pub fn unit(num_vars: usize) -> Self {
        Staircase {
            num_vars,
            gens: vec![Monomial::one(num_vars)],
        }
    }

    pub fn zero(num_vars: usize) -> Self {
        Staircase {
            num_vars,
            gens: Vec::new(),
        }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn member(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains(&self, other: &Staircase) -> bool {
        other.gens.iter().all(|g| self.member(g))
    }

    pub fn sum(&self, other: &Staircase) -> Staircase {
        let mut all = self.gens.clone();
        all.extend(other.gens.iter().cloned());
        Staircase::new(self.num_vars, all)
    }

    pub fn product(&self, other: &Staircase) -> Staircase {
        let mut all = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                all.push(a.mul(b));
            }
        }
        Staircase::new(self.num_vars, all)
    }

    pub fn scale(&self, m: &Monomial) -> Staircase {
        Staircase {
            num_vars: self.num_vars,
            gens: self.gens.iter().map(|g| g.mul(m)).collect(),
        }
    }

    pub fn intersect(&self, other: &Staircase) -> Staircase {
        let mut all = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                all.push(a.lcm(b));
            }
        }
        Staircase::new(self.num_vars, all)
    }

    /// `(self : x^m)`.
    pub fn colon_monomial(&self, m: &Monomial) -> Staircase {
        Staircase::new(
            self.num_vars,
            self.gens.iter().map(|g| g.saturating_div(m)).collect(),
        )
    }

    /// `(self : other) = ∩_{g ∈ gens(other)} (self : g)`.
    pub fn colon(&self, other: &Staircase) -> Staircase {
        let mut acc = Staircase::unit(self.num_vars);
        for g in &other.gens {
            if self.member(g) {
                continue;
            }
            acc = acc.intersect(&self.colon_monomial(g));
            if acc.gens.is_empty() {
                break;
            }
        }
        acc
    }

    /// True iff every variable has a pure power among the generators.
    pub fn is_m_primary(&self) -> bool {
        (0..self.num_vars).all(|v| {
            self.gens
                .iter()
                .any(|g| g.is_one() || g.pure_power_var() == Some(v))
        })
    }

    /// Number of standard monomials, or `None` if infinitely many.
    pub fn colength(&self) -> Option<BigInt> {
        if !self.is_m_primary() {
            return None;
        }
        if self.is_unit() {
            return Some(BigInt::from(0));
        }
        match self.num_vars {
            1 => Some(BigInt::from(self.gens[0].exps()[0])),
            2 => {
                // gens sorted by x ascending, so y strictly descending.
                let mut total: u128 = 0;
                for w in self.gens.windows(2) {
                    let dx = (w[1].exps()[0] - w[0].exps()[0]) as u128;
                    total += dx * w[0].exps()[1] as u128;
                }
                Some(BigInt::from(total))
            }
            _ => unreachable!("staircases have one or two variables"),
        }
    }

    /// Smallest exponent `k` with `x_var^k` in the ideal.
    pub fn pure_power(&self, var: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.is_one() || g.pure_power_var() == Some(var))
            .map(|g| g.exps()[var])
            .min()
    }
}

/// Reduce a generating set to its minimal antichain, sorted lexicographically.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    if gens.is_empty() {
        return gens;
    }
    let n = gens[0].num_vars();
    gens.sort();
    gens.dedup();
    match n {
        1 => {
            gens.truncate(1);
            gens
        }
        2 => {
            // Sorted by (x, y): a generator survives iff its y beats every
            // earlier survivor.
            let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
            let mut min_y = u32::MAX;
            for g in gens {
                let y = g.exps()[1];
                if y < min_y {
                    min_y = y;
                    out.push(g);
                }
            }
            out
        }
        _ => {
            let mut by_degree = gens;
            by_degree.sort_by_key(|g| g.degree());
            let mut out: Vec<Monomial> = Vec::new();
            for g in by_degree {
                if !out.iter().any(|h| h.divides(&g)) {
                    out.push(g);
                }
            }
            out.sort();
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn st(gens: &[&[u32]]) -> Staircase {
        Staircase::new(2, gens.iter().map(|g| m(g)).collect())
    }

    #[test]
    fn minimalize_drops_multiples_and_sorts() {
        let g = minimalize(vec![m(&[2, 1]), m(&[0, 3]), m(&[1, 1]), m(&[3, 0]), m(&[1, 1])]);
        assert_eq!(g, vec![m(&[0, 3]), m(&[1, 1]), m(&[3, 0])]);
    }

    #[test]
    fn minimalize_idempotent() {
        let g = minimalize(vec![m(&[4, 0]), m(&[2, 2]), m(&[3, 1]), m(&[0, 5])]);
        assert_eq!(minimalize(g.clone()), g);
    }

    #[test]
    fn colength_of_powers_of_maximal_ideal() {
        let max = st(&[&[1, 0], &[0, 1]]);
        let mut p = Staircase::unit(2);
        for k in 0..8u32 {
            let expect = (k as u64) * (k as u64 + 1) / 2;
            assert_eq!(p.colength(), Some(BigInt::from(expect)));
            p = p.product(&max);
        }
    }

    #[test]
    fn colon_by_monomial() {
        let a = st(&[&[2, 0], &[1, 1]]);
        assert_eq!(a.colon_monomial(&m(&[1, 0])), st(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn non_primary_has_no_colength() {
        assert_eq!(st(&[&[1, 1]]).colength(), None);
        assert_eq!(Staircase::zero(2).colength(), None);
    }
}
