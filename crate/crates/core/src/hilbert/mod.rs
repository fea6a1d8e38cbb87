//! Hilbert functions, diagonal differences and Bhattacharya polynomials.
//!
//! Polynomials are stored in the signed binomial basis
//! `P(n) = Σ_{|α| <= d} (-1)^{d-|α|} e_α Π_i C(n_i + α_i - 1, α_i)`,
//! where `C(x, k)` is the generalized binomial coefficient, valid for
//! negative `x`.

mod fit;
mod identities;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::ideal::Colength;
use crate::index::MultiIndex;

pub use fit::{fit_function, fit_polynomial, solve_exact, FitOptions, FittedPoly};
pub use identities::{
    defect_table, leading_coefficient_identity, vanishing_region, verify_vanishing_theorem,
};

/// `C(x, k) = x(x-1)···(x-k+1)/k!` for any integer `x`.
pub fn binomial(x: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(x - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k as u64).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// All `α ∈ ℕ^s` with `|α| <= d`, ordered by `|α|` descending then
/// lexicographically descending.
pub fn alphas(s: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(s: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(s, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        sb.cmp(&sa).then_with(|| b.cmp(a))
    });
    out
}

/// Value of the basis function attached to `α` at `n`, including the sign.
pub fn basis_value(d: u32, alpha: &[u32], n: &[i64]) -> BigInt {
    let total: u32 = alpha.iter().sum();
    let mut v = BigInt::one();
    for (&a, &x) in alpha.iter().zip(n) {
        v *= binomial(x + a as i64 - 1, a);
    }
    if (d - total) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Multigraded Hilbert polynomial with integer coefficients `e_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPoly {
    s: usize,
    d: u32,
    coeffs: BTreeMap<Vec<u32>, BigInt>,
}

impl HilbertPoly {
    /// Missing `α` are taken to be zero.
    pub fn new(s: usize, d: u32, coeffs: BTreeMap<Vec<u32>, BigInt>) -> Result<Self> {
        for a in coeffs.keys() {
            if a.len() != s || a.iter().sum::<u32>() > d {
                return Err(Error::InvalidArgument(format!(
                    "coefficient index {a:?} out of range for s = {s}, d = {d}"
                )));
            }
        }
        Ok(HilbertPoly { s, d, coeffs })
    }

    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// `e_α`, zero when absent.
    pub fn coeff(&self, alpha: &[u32]) -> BigInt {
        self.coeffs.get(alpha).cloned().unwrap_or_default()
    }

    /// `e_0̲`.
    pub fn constant(&self) -> BigInt {
        self.coeff(&vec![0; self.s])
    }

    /// `e_{k·e_i}`.
    pub fn axis_coeff(&self, i: usize, k: u32) -> BigInt {
        let mut a = vec![0; self.s];
        a[i] = k;
        self.coeff(&a)
    }

    /// `(α, e_α)` for every `|α| <= d`, in display order.
    pub fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        alphas(self.s, self.d)
            .into_iter()
            .map(|a| {
                let c = self.coeff(&a);
                (a, c)
            })
            .collect()
    }

    pub fn eval(&self, n: &MultiIndex) -> BigInt {
        self.coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| c * basis_value(self.d, a, n.coords()))
            .sum()
    }

    /// `Σ_{|α|=d} d!·e_α / Π α_i!`.
    pub fn leading_sum(&self) -> BigRational {
        let df = factorial(self.d);
        self.coeffs
            .iter()
            .filter(|(a, _)| a.iter().sum::<u32>() == self.d)
            .map(|(a, c)| {
                let den: BigInt = a.iter().map(|&k| factorial(k)).product();
                BigRational::new(&df * c, den)
            })
            .sum()
    }

    /// `Δ^k P(n)` computed from the coefficients.
    pub fn delta(&self, k: u32, n: &MultiIndex) -> BigInt {
        delta(|m| self.eval(m), k, n)
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(a, c)| {
                let idx: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                format!("({}):{c}", idx.join(","))
            })
            .collect();
        write!(f, "e = {{{}}}", parts.join(", "))
    }
}

/// `H_F(n) = λ(R / F(n))`.
pub fn hilbert_function(f: &Filtration, n: &MultiIndex) -> Result<BigInt> {
    match f.evaluate(n)?.colength() {
        Colength::Finite(v) => Ok(v),
        Colength::Infinite => Err(Error::NotPrimary(format!("F({n}) has infinite colength"))),
    }
}

/// `Δ^k f(n) = Σ_j (-1)^{k-j} C(k, j) f(n + j·e)`.
pub fn delta<F>(f: F, k: u32, n: &MultiIndex) -> BigInt
where
    F: Fn(&MultiIndex) -> BigInt,
{
    (0..=k)
        .map(|j| {
            let term = binomial(k as i64, j) * f(&n.shift(j as i64));
            if (k - j) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// Fallible variant of [`delta`].
pub fn try_delta<F>(f: F, k: u32, n: &MultiIndex) -> Result<BigInt>
where
    F: Fn(&MultiIndex) -> Result<BigInt>,
{
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k as i64, j) * f(&n.shift(j as i64))?;
        if (k - j) % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// `Δ^k` by its defining recursion `Δ^k = Δ^{k-1} ∘ Δ^1`.
pub fn delta_recursive<F>(f: &F, k: u32, n: &MultiIndex) -> BigInt
where
    F: Fn(&MultiIndex) -> BigInt,
{
    if k == 0 {
        return f(n);
    }
    delta_recursive(f, k - 1, &n.shift(1)) - delta_recursive(f, k - 1, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }

    #[test]
    fn alpha_order() {
        assert_eq!(alphas(2, 1), vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
        assert_eq!(alphas(2, 2).len(), 6);
        assert_eq!(alphas(2, 2)[0], vec![2, 0]);
    }

    #[test]
    fn display_matches_table_format() {
        let mut c = BTreeMap::new();
        c.insert(vec![1, 0], BigInt::from(3));
        c.insert(vec![0, 1], BigInt::from(3));
        c.insert(vec![0, 0], BigInt::from(2));
        let p = HilbertPoly::new(2, 1, c).unwrap();
        assert_eq!(p.to_string(), "e = {(1,0):3, (0,1):3, (0,0):2}");
        // 3 n1 + 3 n2 - 2
        assert_eq!(p.eval(&mi(&[4, 1])), BigInt::from(13));
    }

    #[test]
    fn monomial_top_difference_is_factorial() {
        let f = |n: &MultiIndex| BigInt::from(n.0[0].pow(2) * n.0[1]);
        for p in [mi(&[0, 0]), mi(&[3, -2]), mi(&[5, 7])] {
            assert_eq!(delta(f, 3, &p), BigInt::from(6));
            assert_eq!(delta_recursive(&f, 3, &p), BigInt::from(6));
        }
    }

    #[test]
    fn constant_has_zero_difference() {
        assert_eq!(delta(|_| BigInt::from(7), 1, &mi(&[2])), BigInt::zero());
    }
}
