//! Homology lengths of the Kirby-Mehran complex `C.(y^[l], F(n))`, the
//! identity expressing `Δ^d(P - H)` through them, and `H¹` of the Rees
//! algebra via the Ratliff-Rush quotient.
//!
//! All lengths are colength differences `λ(A/B) = λ(R/B) - λ(R/A)` after
//! asserting `B ⊆ A`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{ratliff_rush, Filtration};
use crate::hilbert::{hilbert_function, try_delta, HilbertPoly};
use crate::ideal::{Colength, Ideal, Monomial, Ring};
use crate::index::{boxed, cube, MultiIndex};
use crate::reduction::{is_good, CompleteReduction, Window};
use crate::report::TheoremReport;

/// `λ(H_i(C.(y^[l], F(n))))` for `i = 0..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmProfile {
    pub n: MultiIndex,
    pub l: u32,
    pub k: usize,
    pub lengths: Vec<Colength>,
}

impl KmProfile {
    /// `λ(H_i)`, failing on an infinite entry.
    pub fn length(&self, i: usize) -> Result<BigInt> {
        self.lengths[i]
            .clone()
            .finite()
            .ok_or_else(|| Error::NotPrimary(format!("H_{i} at {} has infinite length", self.n)))
    }

    /// `Σ_i (-1)^i λ(H_i)`.
    pub fn euler_characteristic(&self) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for i in 0..=self.k {
            let v = self.length(i)?;
            if i % 2 == 1 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        Ok(acc)
    }
}

/// `λ(A/B)` for `B ⊆ A`.
pub fn length_quotient(a: &Ideal, b: &Ideal) -> Result<Colength> {
    if !a.contains(b)? {
        return Err(Error::Containment(format!("{} is not contained in {}", b, a)));
    }
    Ok(match (a.colength(), b.colength()) {
        (Colength::Finite(ca), Colength::Finite(cb)) => Colength::Finite(cb - ca),
        _ => Colength::Infinite,
    })
}

/// Whether `y` is a regular sequence by the syntactic monomial test: a single
/// element must be a nonzerodivisor, two elements must be monomials with
/// disjoint supports in `k[[x, y]]` without quotient.
pub fn is_monomial_regular_sequence(ring: &Ring, y: &[Monomial]) -> bool {
    match (ring, y.len()) {
        (Ring::Semigroup(_), 1) => true,
        (Ring::Poly(p), 1) => {
            // Nonzerodivisor: (0 : y) = 0, tested on the quotient generators.
            !p.has_quotient()
                || ring
                    .principal(&y[0])
                    .and_then(|py| {
                        let zero = ring.ideal(&[])?;
                        zero.colon(&py).map(|c| c == zero)
                    })
                    .unwrap_or(false)
        }
        (Ring::Poly(p), 2) => {
            !p.has_quotient()
                && y[0]
                    .support()
                    .iter()
                    .all(|v| !y[1].support().contains(v))
        }
        _ => false,
    }
}

/// Homology lengths of `C.(y^[l], F(n))` with `k = y.len()`:
/// `H_0 = R/(F(n+kle), y^[l])`, `H_k = (F(n+le) : (y^[l]))/F(n)` and, for
/// `k = 2`, `H_1 = ((y^[l]) ∩ F(n+2le)) / ((y^[l]) F(n+le))`.
pub fn km_homology(f: &Filtration, y: &[Monomial], l: u32, n: &MultiIndex) -> Result<KmProfile> {
    let k = y.len();
    if !(1..=2).contains(&k) {
        return Err(Error::Unsupported("Kirby-Mehran complexes of length other than 1 or 2"));
    }
    let ring = f.ring();
    if k == 2 && !is_monomial_regular_sequence(ring, y) {
        return Err(Error::NotRegularSequence(
            y.iter().map(|m| ring.format_monomial(m)).collect::<Vec<_>>().join(", "),
        ));
    }
    let yl: Vec<Monomial> = y.iter().map(|m| m.pow(l)).collect();
    let yl_ideal = ring.ideal(&yl)?;
    let step = |j: usize| n.shift((j as i64) * l as i64);

    let h0 = f.evaluate(&step(k))?.sum(&yl_ideal)?.colength();
    let top = f.evaluate(&step(1))?.colon(&yl_ideal)?;
    let hk = length_quotient(&top, &f.evaluate(n)?)?;
    let mut lengths = vec![h0];
    if k == 2 {
        let num = yl_ideal.intersect(&f.evaluate(&step(2))?)?;
        let den = yl_ideal.product(&f.evaluate(&step(1))?)?;
        lengths.push(length_quotient(&num, &den)?);
    }
    lengths.push(hk);
    Ok(KmProfile {
        n: n.clone(),
        l,
        k,
        lengths,
    })
}

/// Both sides of `Δ^d(P - H)(n) = λ(F(n+de)/J F(n+(d-1)e)) - Σ_{i=2}^d (-1)^i λ(H_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HunekeSides {
    pub n: MultiIndex,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl HunekeSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluate both sides of the identity at `n`. The left side uses only the
/// polynomial and colengths of `F`; the right side uses ideal arithmetic
/// with `J` and the complex.
pub fn huneke_sides(
    f: &Filtration,
    a: &CompleteReduction,
    p: &HilbertPoly,
    n: &MultiIndex,
) -> Result<HunekeSides> {
    let d = f.dimension();
    let lhs = p.delta(d, n) - try_delta(|m| hilbert_function(f, m), d, n)?;
    let top = f.evaluate(&n.shift(d as i64))?;
    let reduced = a.j().product(&f.evaluate(&n.shift(d as i64 - 1))?)?;
    let mut rhs = length_quotient(&top, &reduced)?
        .finite()
        .ok_or_else(|| Error::NotPrimary(format!("J F(n+(d-1)e) at {n}")))?;
    if d == 2 {
        let profile = km_homology(f, a.y(), 1, n)?;
        rhs -= profile.length(2)?;
    }
    Ok(HunekeSides {
        n: n.clone(),
        lhs,
        rhs,
    })
}

/// Check the identity at a single `n`.
pub fn huneke_identity_check(
    f: &Filtration,
    a: &CompleteReduction,
    p: &HilbertPoly,
    n: &MultiIndex,
) -> Result<TheoremReport> {
    huneke_identity_on(f, a, p, std::slice::from_ref(n))
}

/// Check the identity at every `n` in `points`.
pub fn huneke_identity_on(
    f: &Filtration,
    a: &CompleteReduction,
    p: &HilbertPoly,
    points: &[MultiIndex],
) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("difference identity for P - H");
    let d = f.dimension();
    report.hypothesis("ring is Cohen-Macaulay", "computed", f.ring().is_cohen_macaulay());
    report.hypothesis("d in {1, 2}", format!("d = {d}"), (1..=2).contains(&d));
    report.hypothesis(
        "A is a complete reduction",
        a.certificate().to_string(),
        !a.certificate().is_empty(),
    );
    if !report.hypotheses_hold() {
        return Ok(report);
    }
    let sides: Vec<Result<HunekeSides>> =
        points.par_iter().map(|n| huneke_sides(f, a, p, n)).collect();
    for s in sides {
        let s = s?;
        report.check(
            format!("identity at {}", s.n),
            s.holds(),
            format!("lhs = {}, rhs = {}", s.lhs, s.rhs),
        );
    }
    Ok(report)
}

/// `Δ^k H(n) = Σ_i (-1)^i λ(H_i(C.(y, F(n))))` with `l = 1`.
pub fn euler_characteristic_check(f: &Filtration, y: &[Monomial], n: &MultiIndex) -> Result<(BigInt, BigInt)> {
    let profile = km_homology(f, y, 1, n)?;
    let lhs = try_delta(|m| hilbert_function(f, m), y.len() as u32, n)?;
    Ok((lhs, profile.euler_characteristic()?))
}

/// `λ(F̆(n)/F(n))`, the degree-`n` part of `H¹` of the Rees algebra.
/// Refused outside Cohen-Macaulay rings of dimension at least two.
pub fn rees_h1(f: &Filtration, n: &MultiIndex) -> Result<BigInt> {
    if f.dimension() < 2 {
        return Err(Error::Unsupported("rees_h1 requires dimension at least 2"));
    }
    if !f.ring().is_cohen_macaulay() {
        return Err(Error::Unsupported("rees_h1 requires a Cohen-Macaulay ring"));
    }
    if !n.is_nonnegative() {
        return Err(Error::InvalidArgument(format!("rees_h1 at negative index {n}")));
    }
    let closure = ratliff_rush(f, n)?;
    length_quotient(&closure, &f.evaluate(n)?)?
        .finite()
        .ok_or_else(|| Error::NotPrimary(format!("F({n}) has infinite colength")))
}

/// `rees_h1` over `[0, box]^s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Scan {
    pub box_size: i64,
    /// Points with `rees_h1(n) ≠ 0`, in lexicographic order.
    pub nonzero: Vec<(MultiIndex, BigInt)>,
    /// Whether `rees_h1(n) = 0` implied `rees_h1(m) = 0` for all `m >= n`
    /// in the box.
    pub propagation_holds: bool,
}

impl H1Scan {
    pub fn vanishes(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Evaluate `rees_h1` at every point of the box.
///
/// Every point is evaluated. The propagation rule is verified on the
/// results rather than used to skip work, since it presumes the vanishing
/// it would be used to establish.
pub fn h1_vanishing_on_box(f: &Filtration, box_size: i64) -> Result<H1Scan> {
    let pts = cube(f.arity(), 0, box_size);
    let values: Vec<Result<BigInt>> = pts.par_iter().map(|n| rees_h1(f, n)).collect();
    let mut table = Vec::with_capacity(pts.len());
    for (n, v) in pts.into_iter().zip(values) {
        table.push((n, v?));
    }
    let zero: Vec<&MultiIndex> = table.iter().filter(|(_, v)| v.is_zero()).map(|(n, _)| n).collect();
    let propagation_holds = table
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .all(|(m, _)| !zero.iter().any(|n| m.geq(n)));
    Ok(H1Scan {
        box_size,
        nonzero: table.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        propagation_holds,
    })
}

/// `(y_1) ∩ F(n) = y_1 F(n - e)` for every `n` in `[e, box]^s`, under `H¹`
/// vanishing and goodness of `A`.
pub fn good_reduction_intersection(
    f: &Filtration,
    a: &CompleteReduction,
    window: Window,
) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("good reduction intersection");
    let s = f.arity();
    let h1 = h1_vanishing_on_box(f, window.box_size)?;
    report.hypothesis("H^1 vanishes", format!("box [0,{}]^{s}", window.box_size), h1.vanishes());
    report.hypothesis("A is good", window.describe(s), is_good(a, f, window)?);
    if !report.hypotheses_hold() {
        return Ok(report);
    }
    let y1 = &a.y()[0];
    let principal = f.ring().principal(y1)?;
    let pts = boxed(&MultiIndex::e(s), &MultiIndex::diagonal(s, window.box_size));
    let bad: Vec<MultiIndex> = pts
        .par_iter()
        .map(|n| -> Result<Option<MultiIndex>> {
            let lhs = principal.intersect(&f.evaluate(n)?)?;
            let rhs = f.evaluate(&n.shift(-1))?.scale(y1);
            Ok((lhs != rhs).then(|| n.clone()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.check(
        "(y1) ∩ F(n) = y1 F(n-e) for n >= e",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} points checked", pts.len())
        } else {
            format!("fails at {}", bad[0])
        },
    );
    Ok(report)
}

/// `λ(H_2(C.(y_1, y_2, F(n)))) = 0` on the box for `d = 2`, under `H¹`
/// vanishing and goodness of `A`.
pub fn h2_vanishing(f: &Filtration, a: &CompleteReduction, window: Window) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("H_2 vanishing");
    let s = f.arity();
    report.hypothesis("d = 2", format!("d = {}", f.dimension()), f.dimension() == 2);
    if !report.hypotheses_hold() {
        return Ok(report);
    }
    let h1 = h1_vanishing_on_box(f, window.box_size)?;
    report.hypothesis("H^1 vanishes", format!("box [0,{}]^{s}", window.box_size), h1.vanishes());
    report.hypothesis("A is good", window.describe(s), is_good(a, f, window)?);
    if !report.hypotheses_hold() {
        return Ok(report);
    }
    let pts = cube(s, 0, window.box_size);
    let lengths: Vec<(MultiIndex, BigInt)> = pts
        .par_iter()
        .map(|n| Ok((n.clone(), km_homology(f, a.y(), 1, n)?.length(2)?)))
        .collect::<Result<_>>()?;
    let bad: Vec<&(MultiIndex, BigInt)> = lengths.iter().filter(|(_, v)| !v.is_zero()).collect();
    report.check(
        "H_2 = 0 on box",
        bad.is_empty(),
        match bad.first() {
            None => format!("{} points checked", lengths.len()),
            Some((n, v)) => format!("λ(H_2) = {v} at {n}"),
        },
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::FiltrationKind;
    use crate::hilbert::{fit_polynomial, FitOptions};
    use crate::ideal::{PolyRing, SemigroupRing};

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn maximal_powers(a: u32, b: u32) -> Filtration {
        let r = Ring::Poly(PolyRing::new(2).unwrap());
        let max = r.ideal(&[m(&[1, 0]), m(&[0, 1])]).unwrap();
        Filtration::new(vec![max.power(a), max.power(b)], FiltrationKind::Powers).unwrap()
    }

    #[test]
    fn h2_at_origin_for_m2_m3() {
        let f = maximal_powers(2, 3);
        let p = km_homology(&f, &[m(&[5, 0]), m(&[0, 5])], 1, &mi(&[0, 0])).unwrap();
        assert_eq!(p.length(2).unwrap(), BigInt::from(0));
    }

    #[test]
    fn euler_characteristic_matches_second_difference() {
        let f = maximal_powers(2, 3);
        for n in cube(2, 0, 3) {
            let (lhs, rhs) = euler_characteristic_check(&f, &[m(&[5, 0]), m(&[0, 5])], &n).unwrap();
            assert_eq!(lhs, rhs, "at {n}");
        }
    }

    #[test]
    fn rejects_non_regular_pair() {
        let f = maximal_powers(2, 3);
        let err = km_homology(&f, &[m(&[5, 0]), m(&[1, 4])], 1, &mi(&[0, 0]));
        assert!(matches!(err, Err(Error::NotRegularSequence(_))));
    }

    #[test]
    fn h1_of_m2_and_x2_y2() {
        let r = Ring::Poly(PolyRing::new(2).unwrap());
        let i = r.ideal(&[m(&[1, 0]), m(&[0, 1])]).unwrap().power(2);
        let j = r.ideal(&[m(&[2, 0]), m(&[0, 2])]).unwrap();
        let f = Filtration::new(vec![i, j], FiltrationKind::Powers).unwrap();
        assert_eq!(rees_h1(&f, &mi(&[0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(rees_h1(&f, &mi(&[0, 0])).unwrap(), BigInt::from(0));
        assert!(!h1_vanishing_on_box(&f, 3).unwrap().vanishes());
    }

    #[test]
    fn rees_h1_refuses_dimension_one() {
        let r = Ring::Semigroup(SemigroupRing::new(vec![3, 4, 5]).unwrap());
        let i = r.ideal(&[m(&[3]), m(&[4])]).unwrap();
        let f = Filtration::new(vec![i.clone(), i], FiltrationKind::Powers).unwrap();
        assert!(matches!(rees_h1(&f, &mi(&[0, 0])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn huneke_identity_semigroup() {
        let r = Ring::Semigroup(SemigroupRing::new(vec![3, 4, 5]).unwrap());
        let i = r.ideal(&[m(&[3]), m(&[4])]).unwrap();
        let j = r.ideal(&[m(&[3])]).unwrap();
        let f = Filtration::new(vec![i, j], FiltrationKind::Powers).unwrap();
        let a = CompleteReduction::new(&f, vec![vec![m(&[3])], vec![m(&[3])]]).unwrap();
        let p = fit_polynomial(&f, 1, FitOptions::default()).unwrap().poly;
        let report = huneke_identity_on(&f, &a, &p, &cube(2, 0, 4)).unwrap();
        assert!(report.conclusions_hold(), "{report}");
        let at = huneke_sides(&f, &a, &p, &mi(&[1, 1])).unwrap();
        assert_eq!((at.lhs, at.rhs), (BigInt::from(1), BigInt::from(1)));
    }
}
