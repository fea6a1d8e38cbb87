//! Coefficient identities, eventual-vanishing regions and the
//! vanishing-coefficient theorems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{delta, fit_function, hilbert_function, FitOptions, HilbertPoly};
use crate::error::Result;
use crate::filtration::Filtration;
use crate::ideal::{Colength, Ideal};
use crate::index::{cube, MultiIndex};
use crate::km::h1_vanishing_on_box;
use crate::region::Region;
use crate::report::TheoremReport;

/// `(n, P(n) - H(n))` for `n ∈ [0, hi]^s`, in lexicographic order.
pub fn defect_table(f: &Filtration, p: &HilbertPoly, hi: i64) -> Result<Vec<(MultiIndex, BigInt)>> {
    cube(f.arity(), 0, hi)
        .into_par_iter()
        .map(|n| {
            let v = p.eval(&n) - hilbert_function(f, &n)?;
            Ok((n, v))
        })
        .collect()
}

/// `e_0` and `e_d` of the 1-graded filtration `k ↦ g(k)`, fitted exactly.
fn one_graded_coefficients<G>(g: G, d: u32, opts: FitOptions) -> Result<(BigInt, BigInt)>
where
    G: Fn(i64) -> Result<BigInt> + Sync,
{
    let fit = fit_function(|n| g(n.0[0]), 1, d, opts)?;
    Ok((fit.poly.coeff(&[d]), fit.poly.coeff(&[0])))
}

fn colength_of(ideal: &Ideal) -> Result<BigInt> {
    match ideal.colength() {
        Colength::Finite(v) => Ok(v),
        Colength::Infinite => Err(crate::Error::NotPrimary(ideal.to_string())),
    }
}

/// Compare the leading and constant coefficients of `P` against independent
/// 1-graded fits.
///
/// (a) `Σ_{|α|=d} d!·e_α/α!` and `Δ^d P` against `e_0` of the product ideal
/// `I_1···I_s`, fitted from `k ↦ λ(R/(I_1···I_s)^k)`.
/// (b) `e_0̲` against `e_d` of the diagonal slice `k ↦ λ(R/F(k·e))`, which is
/// the product-ideal fit when `F` is the power filtration.
pub fn leading_coefficient_identity(
    f: &Filtration,
    p: &HilbertPoly,
    opts: FitOptions,
) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("leading coefficient identities");
    let d = p.degree();
    let s = f.arity();
    let ring = f.ring();
    let mut product = ring.unit_ideal();
    for i in f.ideals() {
        product = product.product(i)?;
    }
    let (e0_prod, ed_prod) =
        one_graded_coefficients(|k| colength_of(&product.power(k.max(0) as u32)), d, opts)?;
    let (_, ed_diag) = one_graded_coefficients(
        |k| hilbert_function(f, &MultiIndex::diagonal(s, k)),
        d,
        opts,
    )?;

    let lead = p.leading_sum();
    report.check(
        "sum d! e_alpha / alpha! = e0(I1...Is)",
        lead == BigRational::from_integer(e0_prod.clone()),
        format!("{lead} vs {e0_prod}"),
    );
    let probes = [
        MultiIndex::zero(s),
        MultiIndex::diagonal(s, 3),
        MultiIndex::new((0..s as i64).map(|i| 2 * i - 1).collect()),
    ];
    let deltas: Vec<BigInt> = probes.iter().map(|n| p.delta(d, n)).collect();
    report.check(
        "Delta^d P = e0(I1...Is)",
        deltas.iter().all(|v| *v == e0_prod),
        format!(
            "Δ^{d}P at {} = {}",
            probes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", "),
            deltas.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
        ),
    );
    let constant = p.constant();
    report.check(
        "e_0 = e_d of the diagonal filtration",
        constant == ed_diag,
        format!("{constant} vs {ed_diag}"),
    );
    report.note(format!("e_d(I1...Is) from powers of the product ideal: {ed_prod}"));
    Ok(report)
}

/// Corners of `{n : Δ^j f(m) = 0 for all m ∈ [n, box + margin]^s}`.
pub fn vanishing_region<F>(f: F, s: usize, j: u32, box_size: i64, margin: i64) -> Region
where
    F: Fn(&MultiIndex) -> BigInt + Sync,
{
    Region::from_predicate(s, box_size, margin, |m| delta(&f, j, m).is_zero())
}

/// Check the vanishing-coefficient theorems for `d ∈ {1, 2}`.
///
/// Hypotheses: a Cohen-Macaulay ring, `e_{(d-1)e_i} = 0` for every `i`, and
/// for `d = 2` with `s ≠ 2`, `H¹` vanishing on the box. For `s = 2` the
/// bigraded equivalence needs no `H¹` hypothesis and adds the conclusions
/// `F(r,s) = I^r J^s`, that `I` and `J` are `d`-generated, and that
/// `e_α = 0` for `|α| <= d - 1`.
pub fn verify_vanishing_theorem(
    f: &Filtration,
    p: &HilbertPoly,
    box_size: i64,
) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("vanishing Hilbert coefficients");
    let d = p.degree();
    let s = f.arity();
    let scope = format!("box [0,{box_size}]^{s}");
    report.hypothesis("ring is Cohen-Macaulay", "computed", f.ring().is_cohen_macaulay());
    let axis: Vec<String> = (0..s)
        .map(|i| format!("e_{}={}", index_name(s, i, d - 1), p.axis_coeff(i, d - 1)))
        .collect();
    report.hypothesis(
        "e_{(d-1)e_i} = 0 for all i",
        axis.join(", "),
        (0..s).all(|i| p.axis_coeff(i, d - 1).is_zero()),
    );
    if d == 2 {
        let h1 = h1_vanishing_on_box(f, box_size)?;
        if s == 2 {
            report.note(format!("H^1 vanishes on {scope}: {}", h1.vanishes()));
        } else {
            report.hypothesis("H^1 vanishes", scope.clone(), h1.vanishes());
        }
    }
    if !report.hypotheses_hold() {
        return Ok(report);
    }

    let defects = defect_table(f, p, box_size)?;
    let bad = defects.iter().find(|(_, v)| !v.is_zero());
    report.check(
        "P = H on box",
        bad.is_none(),
        match bad {
            None => format!("{} points on {scope}", defects.len()),
            Some((n, v)) => format!("P - H = {v} at {n}"),
        },
    );
    report.check("e_0 = 0", p.constant().is_zero(), format!("e_0 = {}", p.constant()));
    if s == 2 {
        let powers = f.powers();
        let mut mismatch = None;
        for n in cube(2, 0, box_size) {
            if f.evaluate(&n)? != powers.evaluate(&n)? {
                mismatch = Some(n);
                break;
            }
        }
        report.check(
            "F(r,s) = I^r J^s on box",
            mismatch.is_none(),
            match &mismatch {
                None => scope.clone(),
                Some(n) => format!("differs at {n}"),
            },
        );
        let counts: Vec<usize> = f.ideals().iter().map(|i| i.generators().len()).collect();
        report.check(
            "I and J are generated by d elements",
            counts.iter().all(|&c| c == d as usize),
            format!("generator counts {counts:?}, d = {d}"),
        );
        let low: Vec<(Vec<u32>, BigInt)> = p
            .terms()
            .into_iter()
            .filter(|(a, _)| a.iter().sum::<u32>() < d)
            .collect();
        report.check(
            "e_alpha = 0 for |alpha| <= d-1",
            low.iter().all(|(_, c)| c.is_zero()),
            low.iter()
                .map(|(a, c)| format!("{a:?}:{c}"))
                .collect::<Vec<_>>()
                .join(", "),
        );
    }
    Ok(report)
}

fn index_name(s: usize, i: usize, k: u32) -> String {
    let v: Vec<String> = (0..s).map(|j| if j == i { k.to_string() } else { "0".into() }).collect();
    format!("({})", v.join(","))
}
