//! Monomially generated ideals over two exact ring backends.
//!
//! [`Ring`] is either a power-series ring in one or two variables, possibly
//! modulo a monomial ideal ([`PolyRing`]), or a numerical semigroup ring
//! ([`SemigroupRing`]). [`Ideal`] wraps the matching canonical ideal
//! representation and exposes backend-independent arithmetic.

pub mod closure;
pub mod monomial;
pub mod poly;
pub mod semigroup;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use monomial::{minimalize, Monomial, Staircase};
pub use poly::{MonomialIdeal, PolyRing};
pub use semigroup::{SemigroupIdeal, SemigroupRing};

use crate::error::{Error, Result};

/// Length of a quotient `R/I`: finite, or the marker for a non-m-primary
/// ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Colength {
    Finite(BigInt),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<BigInt> {
        match self {
            Colength::Finite(v) => Some(v),
            Colength::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(v) => write!(f, "{v}"),
            Colength::Infinite => write!(f, "inf"),
        }
    }
}

/// A ring backend.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Poly(Arc<PolyRing>),
    Semigroup(Arc<SemigroupRing>),
}

impl Ring {
    /// Krull dimension (always 1 for semigroup rings).
    pub fn dimension(&self) -> u32 {
        match self {
            Ring::Poly(r) => r.dimension(),
            Ring::Semigroup(_) => 1,
        }
    }

    /// Whether the ring is Cohen-Macaulay. Semigroup rings are one-dimensional
    /// domains, so always CM.
    pub fn is_cohen_macaulay(&self) -> bool {
        match self {
            Ring::Poly(r) => r.is_cohen_macaulay(),
            Ring::Semigroup(_) => true,
        }
    }

    /// Length of exponent vectors used for monomials of this ring.
    pub fn num_vars(&self) -> usize {
        match self {
            Ring::Poly(r) => r.num_vars(),
            Ring::Semigroup(_) => 1,
        }
    }

    /// True when `m` is a nonzero monomial of the ring.
    pub fn is_valid_monomial(&self, m: &Monomial) -> bool {
        if m.num_vars() != self.num_vars() {
            return false;
        }
        match self {
            Ring::Poly(r) => !r.is_zero(m),
            Ring::Semigroup(r) => r.contains(m.exps()[0]),
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        match self {
            Ring::Poly(r) => r.format_monomial(m),
            Ring::Semigroup(_) => match m.exps()[0] {
                0 => "1".into(),
                1 => "t".into(),
                v => format!("t^{v}"),
            },
        }
    }

    pub fn unit_ideal(&self) -> Ideal {
        match self {
            Ring::Poly(r) => Ideal::Staircase(MonomialIdeal::unit(r)),
            Ring::Semigroup(r) => Ideal::Semigroup(SemigroupIdeal::unit(r)),
        }
    }

    /// The ideal generated by the given monomials.
    pub fn ideal(&self, gens: &[Monomial]) -> Result<Ideal> {
        match self {
            Ring::Poly(r) => Ok(Ideal::Staircase(MonomialIdeal::new(r, gens.to_vec())?)),
            Ring::Semigroup(r) => {
                if let Some(bad) = gens.iter().find(|g| g.num_vars() != 1) {
                    return Err(Error::InvalidElement {
                        element: bad.to_string(),
                        reason: "semigroup monomials have a single exponent".into(),
                    });
                }
                let values: Vec<u32> = gens.iter().map(|g| g.exps()[0]).collect();
                Ok(Ideal::Semigroup(SemigroupIdeal::new(r, &values)?))
            }
        }
    }

    /// The principal ideal `(m)`.
    pub fn principal(&self, m: &Monomial) -> Result<Ideal> {
        self.ideal(std::slice::from_ref(m))
    }
}

/// A monomial ideal of either backend, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ideal {
    Staircase(MonomialIdeal),
    Semigroup(SemigroupIdeal),
}

impl Ideal {
    pub fn ring(&self) -> Ring {
        match self {
            Ideal::Staircase(a) => Ring::Poly(Arc::clone(a.ring())),
            Ideal::Semigroup(a) => Ring::Semigroup(Arc::clone(a.ring())),
        }
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        let same = match (self, other) {
            (Ideal::Staircase(a), Ideal::Staircase(b)) => {
                Arc::ptr_eq(a.ring(), b.ring()) || a.ring() == b.ring()
            }
            (Ideal::Semigroup(a), Ideal::Semigroup(b)) => {
                Arc::ptr_eq(a.ring(), b.ring()) || a.ring() == b.ring()
            }
            _ => false,
        };
        if same {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Ideal::Staircase(a), Ideal::Staircase(b)) => Ideal::Staircase(a.sum(b)),
            (Ideal::Semigroup(a), Ideal::Semigroup(b)) => Ideal::Semigroup(a.sum(b)),
            _ => unreachable!(),
        })
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Ideal::Staircase(a), Ideal::Staircase(b)) => Ideal::Staircase(a.product(b)),
            (Ideal::Semigroup(a), Ideal::Semigroup(b)) => Ideal::Semigroup(a.product(b)),
            _ => unreachable!(),
        })
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Ideal::Staircase(a), Ideal::Staircase(b)) => Ideal::Staircase(a.intersect(b)),
            (Ideal::Semigroup(a), Ideal::Semigroup(b)) => Ideal::Semigroup(a.intersect(b)),
            _ => unreachable!(),
        })
    }

    /// `(self : other) = {r : r·other ⊆ self}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Ideal::Staircase(a), Ideal::Staircase(b)) => Ideal::Staircase(a.colon(b)),
            (Ideal::Semigroup(a), Ideal::Semigroup(b)) => Ideal::Semigroup(a.colon(b)),
            _ => unreachable!(),
        })
    }

    /// `self^k`; `self^0` is the unit ideal.
    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = self.ring().unit_ideal();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.product(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base).expect("same ring");
            }
        }
        acc
    }

    /// Multiply by a single monomial.
    pub fn scale(&self, m: &Monomial) -> Ideal {
        match self {
            Ideal::Staircase(a) => Ideal::Staircase(a.scale(m)),
            Ideal::Semigroup(a) => Ideal::Semigroup(a.scale(m.exps()[0])),
        }
    }

    pub fn colength(&self) -> Colength {
        match self {
            Ideal::Staircase(a) => match a.colength() {
                Some(v) => Colength::Finite(v),
                None => Colength::Infinite,
            },
            Ideal::Semigroup(a) => Colength::Finite(a.colength()),
        }
    }

    pub fn is_m_primary(&self) -> bool {
        match self {
            Ideal::Staircase(a) => a.is_m_primary(),
            Ideal::Semigroup(_) => true,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Ideal::Staircase(a) => a.staircase().is_unit(),
            Ideal::Semigroup(a) => a.is_unit(),
        }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Ideal::Staircase(a), Ideal::Staircase(b)) => a.contains(b),
            (Ideal::Semigroup(a), Ideal::Semigroup(b)) => a.contains(b),
            _ => unreachable!(),
        })
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self == other)
    }

    /// Membership of a monomial (exponent vector, or `[v]` for `t^v`).
    pub fn member(&self, m: &Monomial) -> bool {
        match self {
            Ideal::Staircase(a) => a.member(m),
            Ideal::Semigroup(a) => a.member(m.exps()[0]),
        }
    }

    /// Minimal monomial generators of the ideal (nonzero in the ring).
    pub fn generators(&self) -> Vec<Monomial> {
        match self {
            Ideal::Staircase(a) => a.generators(),
            Ideal::Semigroup(a) => a
                .generators()
                .into_iter()
                .map(|v| Monomial::new(vec![v]))
                .collect(),
        }
    }

    /// Integral closure; power-series rings without quotient only.
    pub fn integral_closure(&self) -> Result<Ideal> {
        match self {
            Ideal::Staircase(a) => {
                if a.ring().has_quotient() {
                    return Err(Error::Unsupported("integral_closure over a quotient ring"));
                }
                let stair = match a.ring().num_vars() {
                    // Every ideal of a DVR is integrally closed.
                    1 => a.staircase().clone(),
                    _ => closure::integral_closure_2var(a.staircase()),
                };
                Ok(Ideal::Staircase(MonomialIdeal::from_staircase(a.ring(), stair)))
            }
            Ideal::Semigroup(_) => Err(Error::Unsupported("integral_closure over a semigroup ring")),
        }
    }

    /// Human-readable generator list, e.g. `(x^2, x*y, y^3)`.
    pub fn display(&self) -> String {
        let ring = self.ring();
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| ring.format_monomial(g))
            .collect();
        if gens.is_empty() {
            "(0)".into()
        } else {
            format!("({})", gens.join(", "))
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}
