//! Filtrations shared by the integration tests.
#![allow(dead_code)]

use mgfilt_core::filtration::{Filtration, FiltrationKind};
use mgfilt_core::ideal::{Ideal, Monomial, PolyRing, Ring, SemigroupRing};
use mgfilt_core::index::MultiIndex;

pub fn m(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

pub fn mi(v: &[i64]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

pub fn kxy() -> Ring {
    Ring::Poly(PolyRing::new(2).unwrap())
}

pub fn maximal(r: &Ring) -> Ideal {
    r.ideal(&[m(&[1, 0]), m(&[0, 1])]).unwrap()
}

/// `k[[t^3, t^4, t^5]]`, `I = (t^3, t^4)`, `J = (t^3)`.
pub fn semigroup_pair() -> Filtration {
    let r = Ring::Semigroup(SemigroupRing::new(vec![3, 4, 5]).unwrap());
    let i = r.ideal(&[m(&[3]), m(&[4])]).unwrap();
    let j = r.ideal(&[m(&[3])]).unwrap();
    Filtration::new(vec![i, j], FiltrationKind::Powers).unwrap()
}

/// `k[[X, Y]]/(X^2, XY)`, `I = (x, y)`, `J = (y)`.
pub fn non_cm_pair() -> Filtration {
    let r = Ring::Poly(PolyRing::with_quotient(2, vec![m(&[2, 0]), m(&[1, 1])]).unwrap());
    let i = maximal(&r);
    let j = r.ideal(&[m(&[0, 1])]).unwrap();
    Filtration::new(vec![i, j], FiltrationKind::Powers).unwrap()
}

/// `I = m^2`, `J = (x^2, y^2)` in `k[[x, y]]`.
pub fn square_and_parameter() -> Filtration {
    let r = kxy();
    let i = maximal(&r).power(2);
    let j = r.ideal(&[m(&[2, 0]), m(&[0, 2])]).unwrap();
    Filtration::new(vec![i, j], FiltrationKind::Powers).unwrap()
}

/// `I = m^2`, `J = m^3` in `k[[x, y]]`.
pub fn square_and_cube() -> Filtration {
    let r = kxy();
    let max = maximal(&r);
    Filtration::new(vec![max.power(2), max.power(3)], FiltrationKind::Powers).unwrap()
}

/// Integral closure filtration of `I = (x, y^2)`, `J = (x^2, y)`.
pub fn closure_pair() -> Filtration {
    let r = kxy();
    let i = r.ideal(&[m(&[1, 0]), m(&[0, 2])]).unwrap();
    let j = r.ideal(&[m(&[2, 0]), m(&[0, 1])]).unwrap();
    Filtration::new(vec![i, j], FiltrationKind::IntegralClosure).unwrap()
}
