//! Numerical semigroup rings `k[[t^{a_1}, .., t^{a_k}]]` and their monomial
//! ideals, represented by value sets.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// The numerical semigroup generated by `generators`, with its membership
/// table up to the conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupRing {
    generators: Vec<u32>,
    /// Largest gap, `-1` when the semigroup is all of ℕ.
    frobenius: i64,
    /// `member[v]` for `0 <= v <= frobenius + 1`.
    member: Vec<bool>,
}

impl SemigroupRing {
    pub fn new(generators: Vec<u32>) -> Result<Arc<Self>> {
        if generators.is_empty() {
            return Err(Error::InvalidRing("no semigroup generators".into()));
        }
        if generators[0] == 0 {
            return Err(Error::InvalidRing("semigroup generators must be positive".into()));
        }
        if generators.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidRing(
                "semigroup generators must be strictly increasing".into(),
            ));
        }
        let g = generators.iter().fold(0u32, |acc, &a| gcd(acc, a));
        if g != 1 {
            return Err(Error::InvalidRing(format!(
                "semigroup generators have gcd {g}, expected 1"
            )));
        }
        // Grow the membership table until a run of `min generator` members.
        let a1 = generators[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        let mut v = 0usize;
        while run < a1 {
            v += 1;
            let is_member = generators
                .iter()
                .any(|&a| (a as usize) <= v && member[v - a as usize]);
            member.push(is_member);
            run = if is_member { run + 1 } else { 0 };
        }
        let frobenius = member
            .iter()
            .rposition(|&b| !b)
            .map(|p| p as i64)
            .unwrap_or(-1);
        member.truncate((frobenius + 2) as usize);
        Ok(Arc::new(SemigroupRing {
            generators,
            frobenius,
            member,
        }))
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// Conductor of the semigroup: `frobenius + 1`.
    pub fn conductor(&self) -> u32 {
        (self.frobenius + 1) as u32
    }

    pub fn contains(&self, v: u32) -> bool {
        (v as i64) > self.frobenius || self.member[v as usize]
    }

    /// Smallest positive element (the multiplicity of the ring).
    pub fn multiplicity(&self) -> u32 {
        self.generators[0]
    }

    /// Elements of the semigroup below `bound`.
    pub fn elements_below(&self, bound: u32) -> impl Iterator<Item = u32> + '_ {
        (0..bound).filter(move |&v| self.contains(v))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An ideal of a numerical semigroup ring, given by its value set
/// `V = low_values ∪ [conductor, ∞)`, with `conductor` minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupIdeal {
    ring: Arc<SemigroupRing>,
    conductor: u32,
    low_values: Vec<u32>,
}

impl SemigroupIdeal {
    /// Ideal generated by `t^{v}` for each `v` in `values`.
    pub fn new(ring: &Arc<SemigroupRing>, values: &[u32]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidElement {
                element: "()".into(),
                reason: "the zero ideal has no finite colength in a semigroup ring".into(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| !ring.contains(v)) {
            return Err(Error::InvalidElement {
                element: format!("t^{bad}"),
                reason: "valuation is a gap of the semigroup".into(),
            });
        }
        let min = *values.iter().min().unwrap();
        let bound = min + ring.conductor();
        Ok(Self::from_predicate(ring, bound, |v| {
            values.iter().any(|&g| g <= v && ring.contains(v - g))
        }))
    }

    pub fn unit(ring: &Arc<SemigroupRing>) -> Self {
        Self::from_predicate(ring, 0, |_| true)
    }

    /// Canonical ideal with `v ∈ V ⟺ pred(v)` below `bound`, everything at or
    /// above `bound` in `V`. `pred` is only consulted on semigroup elements.
    pub(crate) fn from_predicate(
        ring: &Arc<SemigroupRing>,
        bound: u32,
        pred: impl Fn(u32) -> bool,
    ) -> Self {
        let bound = bound.max(ring.conductor());
        let member: Vec<bool> = (0..bound).map(|v| ring.contains(v) && pred(v)).collect();
        let conductor = member
            .iter()
            .rposition(|&b| !b)
            .map(|p| p as u32 + 1)
            .unwrap_or(0);
        let low_values = (0..conductor).filter(|&v| member[v as usize]).collect();
        SemigroupIdeal {
            ring: Arc::clone(ring),
            conductor,
            low_values,
        }
    }

    pub fn ring(&self) -> &Arc<SemigroupRing> {
        &self.ring
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn low_values(&self) -> &[u32] {
        &self.low_values
    }

    pub fn member(&self, v: u32) -> bool {
        v >= self.conductor || self.low_values.binary_search(&v).is_ok()
    }

    /// Smallest valuation in the ideal.
    pub fn min_value(&self) -> u32 {
        self.low_values.first().copied().unwrap_or(self.conductor)
    }

    pub fn is_unit(&self) -> bool {
        self.member(0)
    }

    /// Minimal generators: elements of `V` not in `V + (S \ {0})`.
    pub fn generators(&self) -> Vec<u32> {
        let limit = self.conductor + self.ring.multiplicity();
        (0..limit)
            .filter(|&v| self.member(v))
            .filter(|&v| {
                !(1..=v).any(|s| self.ring.contains(s) && self.member(v - s))
            })
            .collect()
    }

    pub fn colength(&self) -> BigInt {
        let below = self.ring.elements_below(self.conductor).count();
        BigInt::from(below - self.low_values.len())
    }

    pub fn contains(&self, other: &Self) -> bool {
        (0..self.conductor.max(other.conductor))
            .filter(|&v| other.member(v))
            .all(|v| self.member(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let bound = self.conductor.min(other.conductor);
        Self::from_predicate(&self.ring, bound, |v| self.member(v) || other.member(v))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let bound = self.conductor.max(other.conductor);
        Self::from_predicate(&self.ring, bound, |v| self.member(v) && other.member(v))
    }

    /// Minkowski sum of value sets.
    pub fn product(&self, other: &Self) -> Self {
        let bound = (self.conductor + other.min_value()).min(other.conductor + self.min_value());
        Self::from_predicate(&self.ring, bound, |v| {
            (0..=v).any(|u| self.member(u) && other.member(v - u))
        })
    }

    /// `{v ∈ S : v + V(other) ⊆ V(self)}`.
    pub fn colon(&self, other: &Self) -> Self {
        let gens = other.generators();
        let bound = self.conductor;
        Self::from_predicate(&self.ring, bound, |v| gens.iter().all(|&g| self.member(v + g)))
    }

    /// Multiply by the monomial `t^v`.
    pub fn scale(&self, v: u32) -> Self {
        let bound = self.conductor + v;
        Self::from_predicate(&self.ring, bound, |w| w >= v && self.member(w - v))
    }
}
