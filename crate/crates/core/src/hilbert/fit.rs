//! Exact interpolation of Hilbert polynomials.
//!
//! The unknown coefficients `e_α` are solved from samples on the grid
//! `b·e + [0, d]^s` by Gaussian elimination over `ℚ`. The result is accepted
//! only if it is integral and reproduces the sampled function on the larger
//! cube `[b, b + margin + d]^s`; otherwise `b` is doubled and the fit retried.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{alphas, basis_value, hilbert_function, HilbertPoly};
use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::index::{cube, MultiIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitOptions {
    pub base_offset: i64,
    pub validation_margin: i64,
    /// Number of doublings of `base_offset` allowed after the first attempt.
    pub retry_cap: u32,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            base_offset: 8,
            validation_margin: 5,
            retry_cap: 6,
        }
    }
}

/// A fitted polynomial with the offset at which it validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittedPoly {
    pub poly: HilbertPoly,
    pub base_offset: i64,
    pub validation_margin: i64,
    pub attempts: u32,
}

/// Fit the Hilbert polynomial of a filtration, assuming total degree `d`.
pub fn fit_polynomial(f: &Filtration, d: u32, opts: FitOptions) -> Result<FittedPoly> {
    fit_function(|n| hilbert_function(f, n), f.arity(), d, opts)
}

/// Fit a polynomial of total degree `<= d` in `s` variables to `func`,
/// which is assumed to agree with it at all large indices.
pub fn fit_function<F>(func: F, s: usize, d: u32, opts: FitOptions) -> Result<FittedPoly>
where
    F: Fn(&MultiIndex) -> Result<BigInt> + Sync,
{
    if !(1..=2).contains(&d) {
        return Err(Error::InvalidArgument(format!("degree {d} not in {{1, 2}}")));
    }
    if opts.base_offset < 1 {
        return Err(Error::InvalidArgument("base_offset must be >= 1".into()));
    }
    let basis = alphas(s, d);
    let mut base = opts.base_offset;
    let mut last_reason = String::new();
    for attempt in 1..=opts.retry_cap + 1 {
        match fit_at(&func, s, d, &basis, base, opts.validation_margin)? {
            Ok(poly) => {
                return Ok(FittedPoly {
                    poly,
                    base_offset: base,
                    validation_margin: opts.validation_margin,
                    attempts: attempt,
                })
            }
            Err(reason) => last_reason = reason,
        }
        if attempt <= opts.retry_cap {
            base *= 2;
        }
    }
    Err(Error::FitFailed {
        attempts: opts.retry_cap + 1,
        last_offset: base,
        reason: last_reason,
    })
}

/// One attempt. The outer `Result` carries hard errors, the inner one a
/// reason to retry.
fn fit_at<F>(
    func: &F,
    s: usize,
    d: u32,
    basis: &[Vec<u32>],
    base: i64,
    margin: i64,
) -> Result<std::result::Result<HilbertPoly, String>>
where
    F: Fn(&MultiIndex) -> Result<BigInt> + Sync,
{
    let hi = base + margin + d as i64;
    let pts = cube(s, base, hi);
    let values: Vec<Result<BigInt>> = pts.par_iter().map(func).collect();
    let mut table = BTreeMap::new();
    for (p, v) in pts.iter().zip(values) {
        table.insert(p.clone(), v?);
    }

    let sample = cube(s, base, base + d as i64);
    let rows: Vec<Vec<BigRational>> = sample
        .iter()
        .map(|p| {
            basis
                .iter()
                .map(|a| BigRational::from_integer(basis_value(d, a, p.coords())))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = sample
        .iter()
        .map(|p| BigRational::from_integer(table[p].clone()))
        .collect();
    let solution = match solve_exact(rows, rhs)? {
        Some(x) => x,
        None => return Ok(Err(format!("samples at offset {base} are not polynomial of degree {d}"))),
    };
    let mut coeffs = BTreeMap::new();
    for (a, x) in basis.iter().zip(solution) {
        if !x.is_integer() {
            return Ok(Err(format!("non-integral coefficient e_{a:?} = {x} at offset {base}")));
        }
        coeffs.insert(a.clone(), x.to_integer());
    }
    let poly = HilbertPoly::new(s, d, coeffs)?;
    for (p, v) in &table {
        if poly.eval(p) != *v {
            return Ok(Err(format!("validation failed at {p} with offset {base}")));
        }
    }
    Ok(Ok(poly))
}

/// Solve `A x = b` exactly. Returns `Ok(None)` when the system is
/// inconsistent and [`Error::SingularSystem`] when `A` has a nontrivial
/// kernel.
pub fn solve_exact(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Result<Option<Vec<BigRational>>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            return Err(Error::SingularSystem);
        };
        a.swap(pivot_row, p);
        b.swap(pivot_row, p);
        let inv = BigRational::one() / &a[pivot_row][col];
        for v in &mut a[pivot_row][col..cols] {
            *v *= &inv;
        }
        b[pivot_row] = &b[pivot_row] * &inv;
        let pivot = a[pivot_row].clone();
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for (v, pv) in a[r][col..cols].iter_mut().zip(&pivot[col..cols]) {
                    *v -= &factor * pv;
                }
                let delta = &factor * &b[pivot_row];
                b[r] -= delta;
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    // Remaining rows are all-zero on the left; they must be zero on the right.
    if b[pivot_row..].iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    debug_assert!(b.iter().all(|v| v.denom().is_positive()));
    Ok(Some(pivots.into_iter().map(|r| b[r].clone()).collect()))
}
