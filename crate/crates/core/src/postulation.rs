//! Postulation-vector regions and checks of the correspondences between
//! postulation vectors and reduction vectors in dimensions one and two.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::filtration::Filtration;
use crate::hilbert::{hilbert_function, HilbertPoly};
use crate::index::{boxed, MultiIndex};
use crate::km::h1_vanishing_on_box;
use crate::reduction::{
    complete_reduction_number, is_good, reduction_vectors, search_joint_reduction,
    single_graded_reduction_number, CompleteReduction, Window,
};
use crate::region::Region;
use crate::report::TheoremReport;

/// `P(F)`: corners of `{n : H(m) = P(m) for all m ∈ [n, box + margin]^s}`.
pub fn postulation_region(f: &Filtration, p: &HilbertPoly, window: Window) -> Result<Region> {
    Region::try_from_predicate(f.arity(), window.box_size, window.margin, |m| {
        Ok(hilbert_function(f, m)? == p.eval(m))
    })
}

/// Points `n ∈ [-depth, box]^s` with a negative coordinate such that
/// `H(m) = P(m)` for every `m ∈ [n, box + margin]^s`. Empty when the
/// postulation vectors avoid the negative orthants on this window.
pub fn negative_postulation_vectors(
    f: &Filtration,
    p: &HilbertPoly,
    depth: i64,
    window: Window,
) -> Result<Vec<MultiIndex>> {
    let s = f.arity();
    let lo = MultiIndex::diagonal(s, -depth);
    let hi = MultiIndex::diagonal(s, window.top());
    let pts = boxed(&lo, &hi);
    let agree: Vec<bool> = pts
        .par_iter()
        .map(|m| Ok(hilbert_function(f, m)? == p.eval(m)))
        .collect::<Result<_>>()?;
    let disagree: Vec<&MultiIndex> = pts
        .iter()
        .zip(&agree)
        .filter(|(_, &ok)| !ok)
        .map(|(m, _)| m)
        .collect();
    Ok(pts
        .iter()
        .filter(|n| !n.is_nonnegative() && n.coords().iter().all(|&c| c <= window.box_size))
        .filter(|n| !disagree.iter().any(|m| m.geq(n)))
        .cloned()
        .collect())
}

const NEGATIVE_DEPTH: i64 = 2;

/// Postulation vectors agree with reduction vectors for `d = 1`, and the
/// reduction vectors and complete reduction number do not depend on the
/// complete reduction.
///
/// Conclusions are evaluated even when a hypothesis fails, so a non-CM
/// report still records whether the regions differ.
pub fn verify_dim1_correspondence(
    f: &Filtration,
    a: &CompleteReduction,
    p: &HilbertPoly,
    alternatives: &[CompleteReduction],
    window: Window,
) -> Result<TheoremReport> {
    let s = f.arity();
    let mut report = TheoremReport::new("dimension one: postulation and reduction vectors");
    report.hypothesis("d = 1", format!("d = {}", f.dimension()), f.dimension() == 1);
    report.hypothesis("ring is Cohen-Macaulay", "computed", f.ring().is_cohen_macaulay());
    report.hypothesis(
        "A is a complete reduction",
        a.certificate().to_string(),
        !a.certificate().is_empty(),
    );
    let postulation = postulation_region(f, p, window)?;
    let reduction = reduction_vectors(a, f, window)?;
    let negative = negative_postulation_vectors(f, p, NEGATIVE_DEPTH, window)?;
    report.check(
        "P(F) contained in N^s",
        negative.is_empty(),
        match negative.first() {
            None => format!("no postulation vector in [-{NEGATIVE_DEPTH},{}]^{s} off N^s", window.box_size),
            Some(n) => format!("{n} is a postulation vector"),
        },
    );
    report.check(
        "P(F) = R_A(F)",
        postulation.same_corners(&reduction),
        format!("P {} vs R_A {}", postulation.corner_string(), reduction.corner_string()),
    );
    let r = complete_reduction_number(a, f, window)?;
    for b in alternatives {
        let rb = reduction_vectors(b, f, window)?;
        report.check(
            format!("R_A independent of A: {}", b.display()),
            rb.same_corners(&reduction),
            rb.corner_string(),
        );
        let nb = complete_reduction_number(b, f, window)?;
        report.check(
            format!("r_A independent of A: {}", b.display()),
            nb == r,
            format!("{nb:?} vs {r:?}"),
        );
    }
    report.note(format!("{} ({})", postulation, "postulation vectors"));
    Ok(report)
}

/// `n ↦ n + e` maps `P(F)` onto `{r ∈ R_A(F) : r >= e}` for `d = 2`,
/// `s >= 2`, a good `A` and `H¹ = 0`.
pub fn verify_dim2_bijection(
    f: &Filtration,
    a: &CompleteReduction,
    p: &HilbertPoly,
    window: Window,
) -> Result<TheoremReport> {
    let s = f.arity();
    let mut report = TheoremReport::new("dimension two: postulation vectors shifted by e");
    report.hypothesis("d = 2", format!("d = {}", f.dimension()), f.dimension() == 2);
    report.hypothesis("s >= 2", format!("s = {s}"), s >= 2);
    report.hypothesis("ring is Cohen-Macaulay", "computed", f.ring().is_cohen_macaulay());
    report.hypothesis("A is good", window.describe(s), is_good(a, f, window)?);
    let h1 = h1_vanishing_on_box(f, window.box_size)?;
    report.hypothesis("H^1 vanishes", format!("box [0,{}]^{s}", window.box_size), h1.vanishes());

    let postulation = postulation_region(f, p, window)?;
    let shifted_window = Window::new(window.box_size + 1, window.margin);
    let reduction = reduction_vectors(a, f, shifted_window)?;
    let image = postulation.translate(&MultiIndex::e(s));
    let target = reduction.restrict_geq(&MultiIndex::e(s));
    let negative = negative_postulation_vectors(f, p, NEGATIVE_DEPTH, window)?;
    report.check(
        "P(F) contained in N^s",
        negative.is_empty(),
        match negative.first() {
            None => format!("no postulation vector in [-{NEGATIVE_DEPTH},{}]^{s} off N^s", window.box_size),
            Some(n) => format!("{n} is a postulation vector"),
        },
    );
    report.check(
        "P(F) + e = {r in R_A(F) : r >= e}",
        image.same_corners(&target),
        format!("P + e {} vs R_A>=e {}", image.corner_string(), target.corner_string()),
    );
    Ok(report)
}

/// Truth values entering the dimension-two equivalences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTwoConditions {
    /// `P(F) = ℕ^s` on the box.
    pub postulation_everything: bool,
    pub h1_vanishes: bool,
    /// Displays of the good complete reductions in the quantifier scope.
    pub good_reductions: Vec<String>,
    pub good_reduction_numbers: Vec<Option<i64>>,
    /// `r_A <= 1` for every good reduction in scope; `None` when there is none.
    pub all_good_at_most_one: Option<bool>,
    pub some_good_at_most_one: Option<bool>,
    /// `r(F^{(i)})` minimized over the searched slice reductions (`s = 2`).
    pub slice_numbers: Vec<Option<i64>>,
    /// Type-`e` joint reduction with reduction number zero, if found (`s = 2`).
    pub joint_reduction: Option<String>,
    /// Condition (4): both slice numbers at most one and a joint reduction of
    /// type `e` with number zero.
    pub condition_four: Option<bool>,
}

impl DimTwoConditions {
    /// `(3)`: every good reduction has `r_A <= 1`, and `H¹ = 0`.
    pub fn condition_three(&self) -> Option<bool> {
        self.all_good_at_most_one.map(|v| v && self.h1_vanishes)
    }

    /// `(3')`: some good reduction has `r_A <= 1`, and `H¹ = 0`.
    pub fn condition_three_prime(&self) -> Option<bool> {
        self.some_good_at_most_one.map(|v| v && self.h1_vanishes)
    }
}

fn iff(report: &mut TheoremReport, name: &str, lhs: bool, rhs: Option<bool>) {
    match rhs {
        Some(r) => report.check(name, lhs == r, format!("{lhs} vs {r}")),
        None => report.note(format!("{name}: undetermined, no good complete reduction in scope")),
    }
}

/// Evaluate the conditions of the dimension-two equivalences and check them
/// against each other.
///
/// The good-reduction quantifiers range over the good members of
/// `reductions`. With `H¹ = 0`: `P(F) = ℕ^s` iff `r_A <= 1` for every good
/// `A` iff for some good `A`. For `s = 2`, with no `H¹` hypothesis,
/// conditions (2), (3), (3') and (4) are mutually equivalent and
/// Cohen-Macaulayness of the Rees algebra is reported as implied or refuted
/// by them.
pub fn verify_dim2_equivalences(
    f: &Filtration,
    p: &HilbertPoly,
    reductions: &[CompleteReduction],
    degree_bound: u32,
    window: Window,
) -> Result<(TheoremReport, DimTwoConditions)> {
    let s = f.arity();
    let mut report = TheoremReport::new("dimension two: postulation and reduction numbers");
    report.hypothesis("d = 2", format!("d = {}", f.dimension()), f.dimension() == 2);
    report.hypothesis("ring is Cohen-Macaulay", "computed", f.ring().is_cohen_macaulay());

    let postulation_everything = postulation_region(f, p, window)?.is_everything();
    let h1_vanishes = h1_vanishing_on_box(f, window.box_size)?.vanishes();
    let mut good_reductions = Vec::new();
    let mut good_reduction_numbers = Vec::new();
    for a in reductions {
        if is_good(a, f, window)? {
            good_reductions.push(a.display());
            good_reduction_numbers.push(complete_reduction_number(a, f, window)?);
        }
    }
    let at_most_one: Vec<bool> = good_reduction_numbers
        .iter()
        .map(|r| matches!(r, Some(k) if *k <= 1))
        .collect();
    let (all_good_at_most_one, some_good_at_most_one) = if at_most_one.is_empty() {
        (None, None)
    } else {
        (Some(at_most_one.iter().all(|&b| b)), Some(at_most_one.iter().any(|&b| b)))
    };
    let (slice_numbers, joint_reduction, condition_four) = if s == 2 {
        let slices: Vec<Option<i64>> = (0..2)
            .map(|i| Ok(single_graded_reduction_number(f, i, degree_bound, window)?.number))
            .collect::<Result<_>>()?;
        let jr = search_joint_reduction(f, &[1, 1], degree_bound, window.box_size)?;
        let four = slices.iter().all(|r| matches!(r, Some(k) if *k <= 1)) && jr.is_some();
        (slices, jr.map(|j| j.display()), Some(four))
    } else {
        (Vec::new(), None, None)
    };
    let conditions = DimTwoConditions {
        postulation_everything,
        h1_vanishes,
        good_reductions,
        good_reduction_numbers,
        all_good_at_most_one,
        some_good_at_most_one,
        slice_numbers,
        joint_reduction,
        condition_four,
    };

    report.note(format!(
        "good-reduction quantifiers range over {} good complete reduction(s) found or supplied",
        conditions.good_reductions.len()
    ));
    if h1_vanishes {
        iff(
            &mut report,
            "P = N^s iff r_A <= 1 for every good A",
            postulation_everything,
            conditions.all_good_at_most_one,
        );
        iff(
            &mut report,
            "P = N^s iff r_A <= 1 for some good A",
            postulation_everything,
            conditions.some_good_at_most_one,
        );
    } else {
        report.note("H^1 does not vanish on the box; the H^1 = 0 equivalences are not applicable");
    }
    if s == 2 {
        iff(&mut report, "(2) iff (3)", postulation_everything, conditions.condition_three());
        iff(&mut report, "(2) iff (3')", postulation_everything, conditions.condition_three_prime());
        iff(&mut report, "(2) iff (4)", postulation_everything, conditions.condition_four);
        let supported = postulation_everything && conditions.condition_four == Some(true);
        report.note(if supported {
            "(1) Rees algebra Cohen-Macaulay: implied by (2) and (4)"
        } else if !postulation_everything && conditions.condition_four == Some(false) {
            "(1) Rees algebra Cohen-Macaulay: refuted by (2) and (4)"
        } else {
            "(1) Rees algebra Cohen-Macaulay: (2) and (4) disagree, not decided"
        });
    }
    Ok((report, conditions))
}
