//! Structural invariants on random and fixed instances.

mod common;

use common::*;
use mgfilt_core::filtration::{Filtration, FiltrationKind};
use mgfilt_core::hilbert::{fit_polynomial, hilbert_function, FitOptions, HilbertPoly};
use mgfilt_core::ideal::{Monomial, Ring, SemigroupRing};
use mgfilt_core::index::cube;
use mgfilt_core::km::{euler_characteristic_check, h1_vanishing_on_box, h2_vanishing, huneke_identity_on};
use mgfilt_core::reduction::{
    complete_reduction_number, complete_reduction_number_by_diagonal, is_good, is_reduction_at,
    search_all_reductions, search_monomial_reduction, Window,
};
use mgfilt_core::postulation::{postulation_region, verify_dim2_bijection};
use mgfilt_core::report::Verdict;
use mgfilt_oracle::instances::{homothetic_pair, semigroup, semigroup_values};
use mgfilt_oracle::values::semigroup_table;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly_filtration(pair: &[Vec<Vec<u32>>; 2]) -> Filtration {
    let r = kxy();
    let ideals = pair
        .iter()
        .map(|g| r.ideal(&g.iter().map(|e| Monomial::new(e.clone())).collect::<Vec<_>>()).unwrap())
        .collect();
    Filtration::new(ideals, FiltrationKind::Powers).unwrap()
}

#[test]
fn huneke_identity_random_planar_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = Window::new(5, 2);
    let mut checked = 0;
    for _ in 0..12 {
        let f = poly_filtration(&homothetic_pair(&mut rng, 4));
        let Some(a) = search_monomial_reduction(&f, 8, w).unwrap() else {
            continue;
        };
        let p = fit_polynomial(&f, 2, FitOptions::default()).unwrap().poly;
        let report = huneke_identity_on(&f, &a, &p, &cube(2, 0, 3)).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent, "{report}");
        for n in cube(2, 0, 2) {
            let (lhs, rhs) = euler_characteristic_check(&f, a.y(), &n).unwrap();
            assert_eq!(lhs, rhs, "Euler characteristic at {n}");
        }
        checked += 1;
    }
    assert!(checked >= 8, "only {checked} instances had a monomial reduction");
}

#[test]
fn huneke_identity_random_semigroups() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..12 {
        let gens = semigroup(&mut rng, 7);
        let ring = SemigroupRing::new(gens.clone()).unwrap();
        let table = semigroup_table(&gens, 40);
        let r = Ring::Semigroup(ring);
        let ideals = semigroup_values(&mut rng, &table, 12, 2)
            .into_iter()
            .map(|vs| r.ideal(&vs.into_iter().map(|v| Monomial::new(vec![v])).collect::<Vec<_>>()).unwrap())
            .collect();
        let f = Filtration::new(ideals, FiltrationKind::Powers).unwrap();
        let a = search_monomial_reduction(&f, 40, Window::default()).unwrap().expect("valuation reduction");
        let p = fit_polynomial(&f, 1, FitOptions::default()).unwrap().poly;
        let report = huneke_identity_on(&f, &a, &p, &cube(2, 0, 6)).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent, "{report}");
    }
}

#[test]
fn pointwise_reduction_is_up_closed_on_examples() {
    let w = Window::default();
    for f in [semigroup_pair(), non_cm_pair(), square_and_parameter(), square_and_cube()] {
        let Some(a) = search_monomial_reduction(&f, 8, w).unwrap() else {
            panic!("examples have monomial reductions");
        };
        let top = w.top();
        let holds: Vec<_> = cube(2, 0, top)
            .into_iter()
            .filter(|n| is_reduction_at(&a, &f, n).unwrap())
            .collect();
        for n in &holds {
            for m in cube(2, 0, top).iter().filter(|m| m.geq(n)) {
                assert!(is_reduction_at(&a, &f, m).unwrap(), "{n} holds but {m} fails");
            }
        }
        assert_eq!(
            complete_reduction_number(&a, &f, w).unwrap(),
            complete_reduction_number_by_diagonal(&a, &f, w).unwrap()
        );
    }
}

#[test]
fn leading_coefficients_are_positive_for_cm_planar_examples() {
    for f in [square_and_parameter(), square_and_cube(), closure_pair()] {
        let p = fit_polynomial(&f, 2, FitOptions::default()).unwrap().poly;
        for (a, c) in p.terms() {
            if a.iter().sum::<u32>() == 2 {
                assert!(c.is_positive(), "e_{a:?} = {c}");
            }
        }
    }
}

#[test]
fn h1_scan_propagation_on_examples() {
    for f in [square_and_cube(), closure_pair()] {
        let scan = h1_vanishing_on_box(&f, 4).unwrap();
        assert!(scan.vanishes() && scan.propagation_holds);
    }
    // H^1 vanishes at the origin but not at (0,1), so a scan that pruned
    // everything above a zero would miss this point.
    let scan = h1_vanishing_on_box(&square_and_parameter(), 4).unwrap();
    assert!(!scan.propagation_holds);
    assert!(scan.nonzero.iter().any(|(n, _)| *n == mi(&[0, 1])));
}

#[test]
fn h2_vanishes_under_h1_and_goodness() {
    let f = square_and_cube();
    let a = search_monomial_reduction(&f, 6, Window::default()).unwrap().unwrap();
    let report = h2_vanishing(&f, &a, Window::new(5, 2)).unwrap();
    assert_eq!(report.verdict, Verdict::Consistent, "{report}");
}

#[test]
fn search_negative_control() {
    // (x^2, xy, y^3) has (1,1) as a vertex of its Newton polygon, so no pair
    // of pure powers is a reduction of it.
    let r = kxy();
    let i = r.ideal(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])]).unwrap();
    let f = Filtration::new(vec![i.clone(), i], FiltrationKind::Powers).unwrap();
    assert!(search_monomial_reduction(&f, 1, Window::new(4, 2)).unwrap().is_none());
    assert!(search_monomial_reduction(&f, 8, Window::new(4, 2)).unwrap().is_none());
}

#[test]
fn dimension_one_reductions_agree() {
    let f = semigroup_pair();
    let w = Window::default();
    let all = search_all_reductions(&f, 20, 4, w).unwrap();
    assert!(!all.is_empty());
    let first = &all[0];
    for a in &all {
        assert!(a.certificate().same_corners(first.certificate()));
    }
}

#[test]
fn seeded_cache_corruption_is_detected() {
    let f = square_and_cube();
    let wrong = f.evaluate(&mi(&[2, 2])).unwrap();
    f.seed_cache(&mi(&[1, 1]), wrong);
    let axioms = f.check_axioms(3).unwrap();
    assert!(!axioms.holds());
    assert_ne!(
        hilbert_function(&f, &mi(&[1, 1])).unwrap(),
        hilbert_function(&square_and_cube(), &mi(&[1, 1])).unwrap()
    );
}

fn bijection_case(i: &[&[u32]], j: &[&[u32]], kind: FiltrationKind) -> (Filtration, HilbertPoly) {
    let r = kxy();
    let ideal = |g: &[&[u32]]| r.ideal(&g.iter().map(|e| m(e)).collect::<Vec<_>>()).unwrap();
    let f = Filtration::new(vec![ideal(i), ideal(j)], kind).unwrap();
    let p = fit_polynomial(&f, 2, FitOptions::default()).unwrap().poly;
    (f, p)
}

#[test]
fn bijection_with_nonzero_postulation_corners() {
    let w = Window::new(5, 2);
    let cases = [
        (
            bijection_case(&[&[5, 0], &[4, 1], &[0, 4]], &[&[5, 0], &[4, 1], &[0, 4]], FiltrationKind::Powers),
            vec![mi(&[0, 2]), mi(&[1, 1]), mi(&[2, 0])],
        ),
        (
            bijection_case(&[&[4, 0], &[0, 3]], &[&[4, 0], &[3, 1], &[0, 3]], FiltrationKind::RatliffRush),
            vec![mi(&[0, 1]), mi(&[1, 0])],
        ),
    ];
    for ((f, p), corners) in cases {
        assert!(h1_vanishing_on_box(&f, 4).unwrap().vanishes());
        assert_eq!(postulation_region(&f, &p, w).unwrap().corners, corners);
        let a = search_all_reductions(&f, 8, 4, w)
            .unwrap()
            .into_iter()
            .find(|a| is_good(a, &f, w).unwrap())
            .expect("a good monomial complete reduction");
        let report = verify_dim2_bijection(&f, &a, &p, w).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent, "{report}");
        let shifted: Vec<_> = corners.iter().map(|n| n.shift(1).to_string()).collect();
        assert!(report.conclusions.iter().any(|c| c.detail.contains(&shifted.join(", "))), "{report}");
    }
}
