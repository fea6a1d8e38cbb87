//! Published values for five small filtrations, recomputed end to end.

mod common;

use common::*;
use mgfilt_core::filtration::Filtration;
use mgfilt_core::hilbert::{
    binomial, fit_polynomial, hilbert_function, leading_coefficient_identity,
    verify_vanishing_theorem, FitOptions, HilbertPoly,
};
use mgfilt_core::index::{cube, MultiIndex};
use mgfilt_core::km::{h1_vanishing_on_box, huneke_sides, km_homology, rees_h1};
use mgfilt_core::postulation::{
    postulation_region, verify_dim1_correspondence, verify_dim2_bijection,
    verify_dim2_equivalences,
};
use mgfilt_core::reduction::{
    complete_reduction_number, induced_reductions_check, is_good, is_reduction_at,
    joint_reduction_number_zero, reduction_vectors, search_monomial_reduction,
    single_graded_reduction_number, CompleteReduction, JointReduction, Window,
};
use mgfilt_core::report::Verdict;
use num_bigint::BigInt;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn fit(f: &Filtration) -> HilbertPoly {
    fit_polynomial(f, f.dimension(), FitOptions::default()).unwrap().poly
}

fn coeffs(p: &HilbertPoly) -> Vec<i64> {
    p.terms()
        .into_iter()
        .map(|(_, c)| i64::try_from(c).unwrap())
        .collect()
}

#[test]
fn semigroup_pair_lengths_and_polynomial() {
    let f = semigroup_pair();
    assert_eq!(hilbert_function(&f, &mi(&[1, 0])).unwrap(), big(2));
    assert_eq!(hilbert_function(&f, &mi(&[2, 0])).unwrap(), big(4));
    for n in 2..=10 {
        assert_eq!(hilbert_function(&f, &mi(&[n, 0])).unwrap(), big(3 * n - 2));
    }
    for n in 0..=10 {
        assert_eq!(hilbert_function(&f, &mi(&[0, n])).unwrap(), big(3 * n));
    }
    let p = fit(&f);
    assert_eq!(p.to_string(), "e = {(1,0):3, (0,1):3, (0,0):2}");
    assert_eq!(p.eval(&mi(&[1, 0])), big(1));
    for n in 0..=8 {
        assert_eq!(p.eval(&mi(&[1, n])), big(3 * n + 1));
        assert_eq!(hilbert_function(&f, &mi(&[1, n])).unwrap(), big(3 * n + 2));
    }
}

#[test]
fn semigroup_pair_reductions() {
    let f = semigroup_pair();
    let w = Window::default();
    let a = CompleteReduction::new(&f, vec![vec![m(&[3])], vec![m(&[3])]]).unwrap();
    assert!(!is_reduction_at(&a, &f, &mi(&[1, 1])).unwrap());
    assert!(is_reduction_at(&a, &f, &mi(&[2, 2])).unwrap());
    assert_eq!(complete_reduction_number(&a, &f, w).unwrap(), Some(2));
    assert_eq!(reduction_vectors(&a, &f, w).unwrap().corners, vec![mi(&[2, 0])]);
    let p = fit(&f);
    assert_eq!(postulation_region(&f, &p, w).unwrap().corners, vec![mi(&[2, 0])]);
    assert!(is_good(&a, &f, w).unwrap());
    let found = search_monomial_reduction(&f, 12, w).unwrap().unwrap();
    assert_eq!(found.display(), "(t^3; t^3)");
    let report = verify_dim1_correspondence(&f, &a, &p, &[found], w).unwrap();
    assert_eq!(report.verdict, Verdict::Consistent, "{report}");
}

#[test]
fn semigroup_pair_leading_identity() {
    let f = semigroup_pair();
    let p = fit(&f);
    let report = leading_coefficient_identity(&f, &p, FitOptions::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Consistent, "{report}");
    assert!(report.conclusions[0].detail.ends_with("vs 6"));
    assert_eq!(report.conclusions[2].detail, "2 vs 2");
}

#[test]
fn non_cm_pair_regions_differ() {
    let f = non_cm_pair();
    assert!(!f.ring().is_cohen_macaulay());
    assert_eq!(hilbert_function(&f, &mi(&[1, 0])).unwrap(), big(1));
    for n in 1..=8 {
        assert_eq!(hilbert_function(&f, &mi(&[0, n])).unwrap(), big(n + 1));
    }
    let p = fit(&f);
    assert_eq!(coeffs(&p), vec![1, 1, -1]);
    assert_eq!(p.eval(&mi(&[0, 0])), big(1));
    let w = Window::default();
    let a = CompleteReduction::new(&f, vec![vec![m(&[0, 1])], vec![m(&[0, 1])]]).unwrap();
    assert_eq!(complete_reduction_number(&a, &f, w).unwrap(), Some(0));
    assert!(reduction_vectors(&a, &f, w).unwrap().is_everything());
    let post = postulation_region(&f, &p, w).unwrap();
    assert!(!post.contains(&mi(&[0, 0])));
    let report = verify_dim1_correspondence(&f, &a, &p, &[], w).unwrap();
    assert_eq!(report.verdict, Verdict::NotApplicable);
    assert!(!report.conclusion("P(F) = R_A(F)").unwrap().holds);
}

#[test]
fn square_and_parameter_needs_h1() {
    let f = square_and_parameter();
    let p = fit(&f);
    assert_eq!(coeffs(&p), vec![4, 4, 4, 1, 1, 0]);
    assert_eq!(p.eval(&mi(&[0, 1])), big(3));
    assert_eq!(hilbert_function(&f, &mi(&[0, 1])).unwrap(), big(4));
    assert_eq!(rees_h1(&f, &mi(&[0, 1])).unwrap(), big(1));
    let rr = mgfilt_core::filtration::ratliff_rush(&f, &mi(&[0, 1])).unwrap();
    assert_eq!(rr, maximal(&kxy()).power(2));
    let w = Window::default();
    let a = CompleteReduction::new(
        &f,
        vec![vec![m(&[2, 0]), m(&[0, 2])], vec![m(&[2, 0]), m(&[0, 2])]],
    )
    .unwrap();
    assert!(is_reduction_at(&a, &f, &mi(&[1, 1])).unwrap());
    assert!(complete_reduction_number(&a, &f, w).unwrap().unwrap() <= 1);
    assert!(is_good(&a, &f, w).unwrap());
    let (report, cond) = verify_dim2_equivalences(&f, &p, &[a], 6, w).unwrap();
    assert_eq!(report.verdict, Verdict::Consistent, "{report}");
    assert!(!cond.h1_vanishes);
    assert!(!cond.postulation_everything);
    assert_eq!(cond.some_good_at_most_one, Some(true));
}

#[test]
fn square_and_cube_hilbert_function() {
    let f = square_and_cube();
    for n in cube(2, 0, 5) {
        let (a, b) = (n.0[0], n.0[1]);
        assert_eq!(hilbert_function(&f, &n).unwrap(), binomial(2 * a + 3 * b + 1, 2));
    }
    let p = fit(&f);
    assert_eq!(coeffs(&p), vec![4, 6, 9, 1, 3, 0]);
    assert_eq!(p.delta(2, &mi(&[0, 0])), big(25));
}

#[test]
fn square_and_cube_reductions() {
    let f = square_and_cube();
    let w = Window::default();
    let a = CompleteReduction::new(
        &f,
        vec![vec![m(&[2, 0]), m(&[0, 2])], vec![m(&[3, 0]), m(&[0, 3])]],
    )
    .unwrap();
    assert_eq!(a.y(), &[m(&[5, 0]), m(&[0, 5])]);
    assert!(is_reduction_at(&a, &f, &mi(&[1, 1])).unwrap());
    assert!(!is_reduction_at(&a, &f, &mi(&[1, 0])).unwrap());
    assert!(!is_reduction_at(&a, &f, &mi(&[0, 1])).unwrap());
    assert!(is_reduction_at(&a, &f, &mi(&[2, 0])).unwrap());
    assert!(is_reduction_at(&a, &f, &mi(&[0, 2])).unwrap());
    let rv = reduction_vectors(&a, &f, w).unwrap();
    assert_eq!(rv.corners, vec![mi(&[0, 2]), mi(&[1, 1]), mi(&[2, 0])]);
    assert_eq!(complete_reduction_number(&a, &f, w).unwrap(), Some(1));
    assert!(is_good(&a, &f, w).unwrap());
    let (induced, least) = induced_reductions_check(&a, &f, 4).unwrap();
    assert_eq!(induced.verdict, Verdict::Consistent);
    assert_eq!(least, vec![Some(1), Some(1)]);
    let jr = JointReduction::new(&f, vec![1, 1], vec![vec![m(&[2, 0])], vec![m(&[0, 3])]]).unwrap();
    assert!(joint_reduction_number_zero(&jr, &f, 6).unwrap());
    for i in 0..2 {
        let r = single_graded_reduction_number(&f, i, 6, w).unwrap();
        assert_eq!(r.number, Some(1));
    }
}

#[test]
fn square_and_cube_theorems() {
    let f = square_and_cube();
    let p = fit(&f);
    let w = Window::default();
    let h1 = h1_vanishing_on_box(&f, 6).unwrap();
    assert!(h1.vanishes() && h1.propagation_holds);
    assert!(postulation_region(&f, &p, w).unwrap().is_everything());
    let a = CompleteReduction::new(
        &f,
        vec![vec![m(&[2, 0]), m(&[0, 2])], vec![m(&[3, 0]), m(&[0, 3])]],
    )
    .unwrap();
    let bij = verify_dim2_bijection(&f, &a, &p, w).unwrap();
    assert_eq!(bij.verdict, Verdict::Consistent, "{bij}");
    let (eq, cond) = verify_dim2_equivalences(&f, &p, std::slice::from_ref(&a), 6, w).unwrap();
    assert_eq!(eq.verdict, Verdict::Consistent, "{eq}");
    assert!(cond.postulation_everything);
    assert_eq!(cond.condition_three(), Some(true));
    assert_eq!(cond.condition_four, Some(true));
    assert!(eq.notes.iter().any(|n| n.contains("implied")));
    let h2 = km_homology(&f, a.y(), 1, &MultiIndex::zero(2)).unwrap();
    assert_eq!(h2.length(2).unwrap(), big(0));
    let at0 = huneke_sides(&f, &a, &p, &MultiIndex::zero(2)).unwrap();
    assert_eq!((at0.lhs, at0.rhs), (big(0), big(0)));
}

#[test]
fn closure_pair_vanishing_theorem() {
    let f = closure_pair();
    let p = fit(&f);
    assert_eq!(p.axis_coeff(0, 1), big(0));
    assert_eq!(p.axis_coeff(1, 1), big(0));
    assert_eq!(p.constant(), big(0));
    let report = verify_vanishing_theorem(&f, &p, 6).unwrap();
    assert_eq!(report.verdict, Verdict::Consistent, "{report}");
    assert!(report.conclusion("P = H on box").unwrap().holds);
    assert!(h1_vanishing_on_box(&f, 4).unwrap().vanishes());
    // IJ = (x^3, xy, y^3) is integrally closed, so the diagonal slice is
    // the power filtration of the product ideal.
    let lead = leading_coefficient_identity(&f, &p, FitOptions::default()).unwrap();
    assert_eq!(lead.verdict, Verdict::Consistent, "{lead}");
    assert!(lead.notes[0].ends_with(": 0"));
}

#[test]
fn closure_pair_has_no_monomial_complete_reduction() {
    let f = closure_pair();
    assert!(search_monomial_reduction(&f, 8, Window::new(4, 2)).unwrap().is_none());
}
