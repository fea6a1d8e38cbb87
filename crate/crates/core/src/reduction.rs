//! Complete reductions, reduction vectors, joint reductions and reduction
//! numbers of graded slices.
//!
//! Everything here is decided on a finite window: a statement "for all
//! `m >= n`" is checked for `m ∈ [n, box + margin]^s` and the result carries
//! that window.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::ideal::{Ideal, Monomial, Ring};
use crate::index::{cube, MultiIndex};
use crate::region::Region;
use crate::report::TheoremReport;

/// Certification window `[0, box]^s` with `margin` extra layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub box_size: i64,
    pub margin: i64,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            box_size: 6,
            margin: 3,
        }
    }
}

impl Window {
    pub fn new(box_size: i64, margin: i64) -> Self {
        Window { box_size, margin }
    }

    pub fn top(&self) -> i64 {
        self.box_size + self.margin
    }

    pub fn describe(&self, s: usize) -> String {
        format!("box [0,{}]^{s}, margin {}", self.box_size, self.margin)
    }
}

/// A `s × d` matrix of monomials `x_ij ∈ I_i` whose column products
/// `y_j = Π_i x_ij` generate `J` with `J F(n) = F(n + e)` on the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteReduction {
    ring: Ring,
    elements: Vec<Vec<Monomial>>,
    y: Vec<Monomial>,
    j: Ideal,
    certificate: Region,
}

impl CompleteReduction {
    pub fn new(f: &Filtration, elements: Vec<Vec<Monomial>>) -> Result<Self> {
        Self::with_window(f, elements, Window::default())
    }

    /// Validate membership and certify completeness on `window`.
    pub fn with_window(f: &Filtration, elements: Vec<Vec<Monomial>>, window: Window) -> Result<Self> {
        let candidate = Self::unchecked(f, elements)?;
        let certificate = reduction_region(&candidate.j, f, window)?;
        if certificate.is_empty() {
            return Err(Error::NotComplete(format!(
                "J = {} never satisfies J F(n) = F(n+e) on {}",
                candidate.j,
                window.describe(f.arity())
            )));
        }
        Ok(CompleteReduction {
            certificate,
            ..candidate
        })
    }

    /// Membership-validated matrix without a completeness certificate.
    fn unchecked(f: &Filtration, elements: Vec<Vec<Monomial>>) -> Result<Self> {
        let s = f.arity();
        let d = f.dimension() as usize;
        let ring = f.ring().clone();
        if elements.len() != s {
            return Err(Error::InvalidArgument(format!(
                "reduction matrix has {} rows, expected one per base ideal ({s})",
                elements.len()
            )));
        }
        for (i, row) in elements.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidArgument(format!(
                    "row {} has {} entries, expected d = {d}",
                    i + 1,
                    row.len()
                )));
            }
            for x in row {
                if !ring.is_valid_monomial(x) {
                    return Err(Error::InvalidElement {
                        element: ring.format_monomial(x),
                        reason: "not a nonzero monomial of the ring".into(),
                    });
                }
                if !f.ideals()[i].member(x) {
                    return Err(Error::InvalidElement {
                        element: ring.format_monomial(x),
                        reason: format!("not in base ideal {}", i + 1),
                    });
                }
            }
        }
        let y: Vec<Monomial> = (0..d)
            .map(|j| {
                elements
                    .iter()
                    .skip(1)
                    .fold(elements[0][j].clone(), |acc, row| acc.mul(&row[j]))
            })
            .collect();
        if let Some(zero) = y.iter().find(|m| !ring.is_valid_monomial(m)) {
            return Err(Error::InvalidElement {
                element: ring.format_monomial(zero),
                reason: "diagonal product vanishes in the ring".into(),
            });
        }
        let j = ring.ideal(&y)?;
        Ok(CompleteReduction {
            ring,
            elements,
            y,
            j,
            certificate: Region::from_corners(s, Vec::new(), 0, 0),
        })
    }

    /// Rows indexed by base ideal, columns by `j = 1..d`.
    pub fn elements(&self) -> &[Vec<Monomial>] {
        &self.elements
    }

    /// Column products `y_1, .., y_d`.
    pub fn y(&self) -> &[Monomial] {
        &self.y
    }

    /// `J = (y_1, .., y_d)`.
    pub fn j(&self) -> &Ideal {
        &self.j
    }

    /// Reduction-vector region found when the matrix was certified.
    pub fn certificate(&self) -> &Region {
        &self.certificate
    }

    /// `J_i = (x_{i1}, .., x_{id})`.
    pub fn row_ideal(&self, i: usize) -> Result<Ideal> {
        self.ring.ideal(&self.elements[i])
    }

    pub fn display(&self) -> String {
        let rows: Vec<String> = self
            .elements
            .iter()
            .map(|row| {
                let xs: Vec<String> = row.iter().map(|m| self.ring.format_monomial(m)).collect();
                xs.join(", ")
            })
            .collect();
        format!("({})", rows.join("; "))
    }

    /// Sum of total degrees of the entries (search order key).
    fn weight(&self) -> u64 {
        self.elements.iter().flatten().map(|m| m.degree()).sum()
    }
}

/// `J F(n) = F(n + e)`.
pub fn is_reduction_at(a: &CompleteReduction, f: &Filtration, n: &MultiIndex) -> Result<bool> {
    reduces_at(&a.j, f, n)
}

fn reduces_at(j: &Ideal, f: &Filtration, n: &MultiIndex) -> Result<bool> {
    let lhs = j.product(&f.evaluate(n)?)?;
    Ok(lhs == f.evaluate(&n.shift(1))?)
}

fn reduction_region(j: &Ideal, f: &Filtration, window: Window) -> Result<Region> {
    Region::try_from_predicate(f.arity(), window.box_size, window.margin, |n| {
        reduces_at(j, f, n)
    })
}

/// Reduction vectors `R_A(F)` certified on the window.
pub fn reduction_vectors(a: &CompleteReduction, f: &Filtration, window: Window) -> Result<Region> {
    reduction_region(&a.j, f, window)
}

/// `r_A(F)`: the least `k` with `k·e ∈ R_A(F)`, from the region corners.
pub fn complete_reduction_number(
    a: &CompleteReduction,
    f: &Filtration,
    window: Window,
) -> Result<Option<i64>> {
    Ok(reduction_vectors(a, f, window)?.diagonal_entry())
}

/// The same number found by scanning the diagonal directly.
pub fn complete_reduction_number_by_diagonal(
    a: &CompleteReduction,
    f: &Filtration,
    window: Window,
) -> Result<Option<i64>> {
    let s = f.arity();
    'k: for k in 0..=window.box_size {
        for m in crate::index::boxed(
            &MultiIndex::diagonal(s, k),
            &MultiIndex::diagonal(s, window.top()),
        ) {
            if !is_reduction_at(a, f, &m)? {
                continue 'k;
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}

/// Region of `m` past which `F(m') ∩ (y_1) = y_1 F(m' - e)` for all `m'`.
pub fn goodness_region(a: &CompleteReduction, f: &Filtration, window: Window) -> Result<Region> {
    let y1 = a.ring.principal(&a.y[0])?;
    Region::try_from_predicate(f.arity(), window.box_size, window.margin, |m| {
        let lhs = f.evaluate(m)?.intersect(&y1)?;
        let rhs = f.evaluate(&m.shift(-1))?.scale(&a.y[0]);
        Ok(lhs == rhs)
    })
}

/// Whether `A` is a good complete reduction on the window.
pub fn is_good(a: &CompleteReduction, f: &Filtration, window: Window) -> Result<bool> {
    Ok(!goodness_region(a, f, window)?.is_empty())
}

/// Monomials of `ideal` of total degree (valuation, for semigroup rings)
/// at most `bound`, nonzero in the ring, sorted by degree then
/// lexicographically.
pub fn monomials_in(ideal: &Ideal, bound: u32) -> Vec<Monomial> {
    let ring = ideal.ring();
    let mut out: Vec<Monomial> = match ring.num_vars() {
        1 => (0..=bound).map(|v| Monomial::new(vec![v])).collect(),
        _ => (0..=bound)
            .flat_map(|a| (0..=bound - a).map(move |b| Monomial::new(vec![a, b])))
            .collect(),
    };
    out.retain(|m| ring.is_valid_monomial(m) && ideal.member(m));
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

/// Candidate matrices in search order: total degree, then column
/// orientation (for `d = 2`, `y_1` a power of `x` first), then entries.
fn candidates(f: &Filtration, bound: u32) -> Vec<Vec<Vec<Monomial>>> {
    let d = f.dimension() as usize;
    let mut per_ideal_columns: Vec<Vec<Vec<Monomial>>> = Vec::new();
    let mut out: Vec<(u64, usize, Vec<Vec<Monomial>>)> = Vec::new();
    if d == 2 {
        // J must be m-primary and 2-generated by monomials, so each column is
        // made of pure powers of one variable.
        for orientation in 0..2usize {
            let (v1, v2) = (orientation, 1 - orientation);
            per_ideal_columns.clear();
            for ideal in f.ideals() {
                let mons = monomials_in(ideal, bound);
                let first: Vec<&Monomial> =
                    mons.iter().filter(|m| m.pure_power_var() == Some(v1)).collect();
                let second: Vec<&Monomial> =
                    mons.iter().filter(|m| m.pure_power_var() == Some(v2)).collect();
                let rows = first
                    .iter()
                    .flat_map(|a| second.iter().map(move |b| vec![(*a).clone(), (*b).clone()]))
                    .collect();
                per_ideal_columns.push(rows);
            }
            for matrix in cartesian(&per_ideal_columns) {
                let w = matrix.iter().flatten().map(|m| m.degree()).sum();
                out.push((w, orientation, matrix));
            }
        }
    } else {
        for ideal in f.ideals() {
            per_ideal_columns.push(monomials_in(ideal, bound).into_iter().map(|m| vec![m]).collect());
        }
        for matrix in cartesian(&per_ideal_columns) {
            let w = matrix.iter().flatten().map(|m| m.degree()).sum();
            out.push((w, 0, matrix));
        }
    }
    out.sort();
    out.into_iter().map(|(_, _, m)| m).collect()
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect()
    })
}

/// First monomial complete reduction in search order, if any.
pub fn search_monomial_reduction(
    f: &Filtration,
    degree_bound: u32,
    window: Window,
) -> Result<Option<CompleteReduction>> {
    Ok(search_all_reductions(f, degree_bound, 1, window)?.into_iter().next())
}

/// Up to `cap` monomial complete reductions, in search order.
pub fn search_all_reductions(
    f: &Filtration,
    degree_bound: u32,
    cap: usize,
    window: Window,
) -> Result<Vec<CompleteReduction>> {
    let d = f.dimension();
    if !(1..=2).contains(&d) {
        return Err(Error::Unsupported("reduction search outside dimensions 1 and 2"));
    }
    let s = f.arity();
    let top = MultiIndex::diagonal(s, window.top());
    let mut found = Vec::new();
    for matrix in candidates(f, degree_bound) {
        let Ok(candidate) = CompleteReduction::unchecked(f, matrix) else {
            continue;
        };
        // Cheap necessary condition before certifying the whole window.
        if !is_reduction_at(&candidate, f, &top)? {
            continue;
        }
        let certificate = reduction_vectors(&candidate, f, window)?;
        if certificate.is_empty() {
            continue;
        }
        found.push(CompleteReduction {
            certificate,
            ..candidate
        });
        if found.len() >= cap {
            break;
        }
    }
    debug_assert!(found.windows(2).all(|w| w[0].weight() <= w[1].weight()));
    Ok(found)
}

/// For each `i`, the least `n <= max_n` with `J_i I_i^n = I_i^{n+1}` where
/// `J_i` is generated by row `i` of the matrix.
pub fn induced_reductions_check(
    a: &CompleteReduction,
    f: &Filtration,
    max_n: u32,
) -> Result<(TheoremReport, Vec<Option<u32>>)> {
    let mut report = TheoremReport::new("induced reductions of the base ideals");
    report.hypothesis(
        "A is a complete reduction",
        a.certificate.to_string(),
        !a.certificate.is_empty(),
    );
    let mut least = Vec::new();
    for (i, ideal) in f.ideals().iter().enumerate() {
        let ji = a.row_ideal(i)?;
        let mut hit = None;
        let mut pow = a.ring.unit_ideal();
        for n in 0..=max_n {
            let next = pow.product(ideal)?;
            if ji.product(&pow)? == next {
                hit = Some(n);
                break;
            }
            pow = next;
        }
        report.check(
            format!("J_{} reduces I_{}", i + 1, i + 1),
            hit.is_some(),
            match hit {
                Some(n) => format!("J_{} I_{}^{n} = I_{}^{}", i + 1, i + 1, i + 1, n + 1),
                None => format!("no n <= {max_n} with J_{} I^n = I^(n+1)", i + 1),
            },
        );
        least.push(hit);
    }
    Ok((report, least))
}

/// `q_i` monomials from each `I_i`, `Σ q_i = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointReduction {
    ring: Ring,
    q: Vec<u32>,
    elements: Vec<Vec<Monomial>>,
}

impl JointReduction {
    pub fn new(f: &Filtration, q: Vec<u32>, elements: Vec<Vec<Monomial>>) -> Result<Self> {
        let ring = f.ring().clone();
        if q.len() != f.arity() || elements.len() != f.arity() {
            return Err(Error::InvalidArgument("joint reduction arity mismatch".into()));
        }
        if q.iter().sum::<u32>() != f.dimension() {
            return Err(Error::InvalidArgument(format!(
                "type {q:?} does not sum to d = {}",
                f.dimension()
            )));
        }
        for (i, (row, &qi)) in elements.iter().zip(&q).enumerate() {
            if row.len() != qi as usize {
                return Err(Error::InvalidArgument(format!(
                    "ideal {} contributes {} elements, type asks for {qi}",
                    i + 1,
                    row.len()
                )));
            }
            for x in row {
                if !ring.is_valid_monomial(x) || !f.ideals()[i].member(x) {
                    return Err(Error::InvalidElement {
                        element: ring.format_monomial(x),
                        reason: format!("not a nonzero monomial of base ideal {}", i + 1),
                    });
                }
            }
        }
        Ok(JointReduction { ring, q, elements })
    }

    pub fn type_vector(&self) -> &[u32] {
        &self.q
    }

    pub fn elements(&self) -> &[Vec<Monomial>] {
        &self.elements
    }

    /// `Σ_{i: q_i ≠ 0} e_i`.
    pub fn threshold(&self) -> MultiIndex {
        MultiIndex::new(self.q.iter().map(|&qi| i64::from(qi != 0)).collect())
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .elements
            .iter()
            .flatten()
            .map(|m| self.ring.format_monomial(m))
            .collect();
        format!("({})", parts.join(", "))
    }

    /// `Σ_i Σ_j x_ij F(n - e_i)`.
    pub fn combination(&self, f: &Filtration, n: &MultiIndex) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for (i, row) in self.elements.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let base = f.evaluate(&n.shift_axis(i, -1))?;
            for x in row {
                let term = base.scale(x);
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.sum(&term)?,
                });
            }
        }
        acc.ok_or_else(|| Error::InvalidArgument("empty joint reduction".into()))
    }
}

/// `Σ x_ij F(n - e_i) = F(n)` for every `n` in the box with `n >= threshold`.
pub fn joint_reduction_number_zero(jr: &JointReduction, f: &Filtration, box_size: i64) -> Result<bool> {
    let thr = jr.threshold();
    let pts: Vec<MultiIndex> = cube(f.arity(), 0, box_size)
        .into_iter()
        .filter(|n| n.geq(&thr))
        .collect();
    let results: Vec<Result<bool>> = pts
        .par_iter()
        .map(|n| Ok(jr.combination(f, n)? == f.evaluate(n)?))
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First monomial joint reduction of type `q` whose reduction number is zero
/// on the box.
pub fn search_joint_reduction(
    f: &Filtration,
    q: &[u32],
    degree_bound: u32,
    box_size: i64,
) -> Result<Option<JointReduction>> {
    let mut choices: Vec<Vec<Vec<Monomial>>> = Vec::new();
    for (ideal, &qi) in f.ideals().iter().zip(q) {
        let mons = monomials_in(ideal, degree_bound);
        let singles: Vec<Vec<Monomial>> = mons.iter().map(|m| vec![m.clone()]).collect();
        let rows = match qi {
            0 => vec![Vec::new()],
            1 => singles,
            _ => {
                let mut acc = vec![Vec::new()];
                for _ in 0..qi {
                    acc = cartesian(&[acc, singles.clone()])
                        .into_iter()
                        .map(|pair| pair.into_iter().flatten().collect::<Vec<_>>())
                        .filter(|row: &Vec<Monomial>| row.windows(2).all(|w| w[0] < w[1]))
                        .collect();
                }
                acc
            }
        };
        choices.push(rows);
    }
    let mut matrices: Vec<Vec<Vec<Monomial>>> = cartesian(&choices);
    matrices.sort_by_key(|m| m.iter().flatten().map(|x| x.degree()).sum::<u64>());
    let s = f.arity();
    for elements in matrices {
        let jr = JointReduction::new(f, q.to_vec(), elements)?;
        let probe = [jr.threshold(), MultiIndex::diagonal(s, box_size)];
        let mut quick = true;
        for n in &probe {
            if jr.combination(f, n)? != f.evaluate(n)? {
                quick = false;
                break;
            }
        }
        if quick && joint_reduction_number_zero(&jr, f, box_size)? {
            return Ok(Some(jr));
        }
    }
    Ok(None)
}

/// Result of the reduction-number search on `F^{(i)} = {F(n e_i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReduction {
    pub direction: usize,
    /// Least `r_J` over the searched reductions, if any was found.
    pub number: Option<i64>,
    pub reduction: Option<Vec<Monomial>>,
}

/// `r(F^{(i)})` minimized over monomial minimal reductions of the slice: for
/// `d = 2` pairs of pure powers in `F(e_i)`, for `d = 1` single monomials.
pub fn single_graded_reduction_number(
    f: &Filtration,
    i: usize,
    degree_bound: u32,
    window: Window,
) -> Result<SliceReduction> {
    let s = f.arity();
    let slice = |n: i64| f.evaluate(&MultiIndex::zero(s).shift_axis(i, n));
    let g1 = slice(1)?;
    let ring = f.ring().clone();
    let mons = monomials_in(&g1, degree_bound);
    let gens: Vec<Vec<Monomial>> = match f.dimension() {
        1 => mons.iter().map(|m| vec![m.clone()]).collect(),
        2 => {
            let xs: Vec<&Monomial> = mons.iter().filter(|m| m.pure_power_var() == Some(0)).collect();
            let ys: Vec<&Monomial> = mons.iter().filter(|m| m.pure_power_var() == Some(1)).collect();
            xs.iter()
                .flat_map(|a| ys.iter().map(move |b| vec![(*a).clone(), (*b).clone()]))
                .collect()
        }
        _ => return Err(Error::Unsupported("slice reduction numbers outside d in {1, 2}")),
    };
    let slices: Vec<Ideal> = (0..=window.top() + 1).map(slice).collect::<Result<_>>()?;
    let mut best: Option<(i64, Vec<Monomial>)> = None;
    for g in gens {
        let j = ring.ideal(&g)?;
        // r_J: least r with J G(n) = G(n+1) for all n in [r, top].
        let mut r = None;
        for n in (0..=window.top()).rev() {
            if j.product(&slices[n as usize])? == slices[n as usize + 1] {
                r = Some(n);
            } else {
                break;
            }
        }
        if let Some(r) = r.filter(|&r| r <= window.box_size) {
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, g));
            }
        }
    }
    Ok(SliceReduction {
        direction: i,
        number: best.as_ref().map(|(r, _)| *r),
        reduction: best.map(|(_, g)| g),
    })
}
