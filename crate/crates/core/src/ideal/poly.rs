//! Power-series rings `k[[x]]`, `k[[x,y]]` and their monomial quotients.

use std::sync::Arc;

use num_bigint::BigInt;

use super::monomial::{Monomial, Staircase};
use crate::error::{Error, Result};

/// `k[[x_1..x_n]] / Q` with `n ∈ {1, 2}` and `Q` a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    num_vars: usize,
    var_names: Vec<String>,
    quotient: Staircase,
    dimension: u32,
    cohen_macaulay: bool,
}

impl PolyRing {
    /// The full power-series ring in `num_vars` variables.
    pub fn new(num_vars: usize) -> Result<Arc<Self>> {
        Self::with_quotient(num_vars, Vec::new())
    }

    pub fn with_quotient(num_vars: usize, quotient_gens: Vec<Monomial>) -> Result<Arc<Self>> {
        let names = match num_vars {
            1 => vec!["t".to_string()],
            2 => vec!["x".to_string(), "y".to_string()],
            n => {
                return Err(Error::InvalidRing(format!(
                    "{n} variables; only 1 or 2 are supported"
                )))
            }
        };
        Self::build(names, quotient_gens)
    }

    /// Build a ring with explicit variable names.
    pub fn build(var_names: Vec<String>, quotient_gens: Vec<Monomial>) -> Result<Arc<Self>> {
        let num_vars = var_names.len();
        if !(1..=2).contains(&num_vars) {
            return Err(Error::InvalidRing(format!(
                "{num_vars} variables; only 1 or 2 are supported"
            )));
        }
        if let Some(bad) = quotient_gens.iter().find(|g| g.num_vars() != num_vars) {
            return Err(Error::InvalidRing(format!(
                "quotient generator {bad} has wrong arity"
            )));
        }
        if quotient_gens.iter().any(|g| g.is_one()) {
            return Err(Error::InvalidRing("quotient by the unit ideal".into()));
        }
        let quotient = if quotient_gens.is_empty() {
            Staircase::zero(num_vars)
        } else {
            Staircase::new(num_vars, quotient_gens)
        };
        let dimension = krull_dimension(num_vars, &quotient);
        if dimension == 0 {
            return Err(Error::InvalidRing(
                "quotient ring has Krull dimension 0 (Artinian)".into(),
            ));
        }
        let cohen_macaulay = if quotient.gens().is_empty() {
            true
        } else {
            // dim 1: CM iff depth >= 1 iff the maximal ideal is not associated,
            // i.e. (Q : m) = Q.
            let max = Staircase::new(
                num_vars,
                (0..num_vars).map(|v| Monomial::pure(num_vars, v, 1)).collect(),
            );
            quotient.colon(&max) == quotient
        };
        Ok(Arc::new(PolyRing {
            num_vars,
            var_names,
            quotient,
            dimension,
            cohen_macaulay,
        }))
    }

    /// Build and check a user-declared Krull dimension.
    pub fn with_declared_dimension(
        var_names: Vec<String>,
        quotient_gens: Vec<Monomial>,
        declared: u32,
    ) -> Result<Arc<Self>> {
        let ring = Self::build(var_names, quotient_gens)?;
        if ring.dimension != declared {
            return Err(Error::InvalidRing(format!(
                "declared dimension {declared} but the ring has dimension {}",
                ring.dimension
            )));
        }
        Ok(ring)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn quotient(&self) -> &Staircase {
        &self.quotient
    }

    pub fn has_quotient(&self) -> bool {
        !self.quotient.gens().is_empty()
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.cohen_macaulay
    }

    /// Zero in the ring: the monomial lies in the quotient ideal.
    pub fn is_zero(&self, m: &Monomial) -> bool {
        self.quotient.member(m)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (name, &e) in self.var_names.iter().zip(m.exps()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// Largest set of variables supporting no quotient generator.
fn krull_dimension(num_vars: usize, quotient: &Staircase) -> u32 {
    let mut best = 0;
    for mask in 0u32..(1 << num_vars) {
        let free = quotient.gens().iter().all(|g| {
            g.support().iter().any(|&v| mask & (1 << v) == 0)
        });
        if free {
            best = best.max(mask.count_ones());
        }
    }
    best
}

/// Monomial ideal of a [`PolyRing`], stored by its preimage in the ambient
/// ring (quotient generators adjoined, then minimalized).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<PolyRing>,
    stair: Staircase,
}

impl MonomialIdeal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.num_vars() != ring.num_vars) {
            return Err(Error::InvalidElement {
                element: bad.to_string(),
                reason: format!("expected {} exponents", ring.num_vars),
            });
        }
        Ok(Self::from_staircase(ring, Staircase::new(ring.num_vars, gens)))
    }

    pub(crate) fn from_staircase(ring: &Arc<PolyRing>, stair: Staircase) -> Self {
        let stair = if ring.has_quotient() {
            stair.sum(&ring.quotient)
        } else {
            stair
        };
        MonomialIdeal {
            ring: Arc::clone(ring),
            stair,
        }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        MonomialIdeal {
            ring: Arc::clone(ring),
            stair: Staircase::unit(ring.num_vars),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Canonical preimage staircase (includes the quotient generators).
    pub fn staircase(&self) -> &Staircase {
        &self.stair
    }

    /// Minimal generators of the image in the quotient ring.
    pub fn generators(&self) -> Vec<Monomial> {
        self.stair
            .gens()
            .iter()
            .filter(|g| !self.ring.is_zero(g))
            .cloned()
            .collect()
    }

    pub fn is_m_primary(&self) -> bool {
        self.stair.is_m_primary()
    }

    pub fn colength(&self) -> Option<BigInt> {
        self.stair.colength()
    }

    pub fn member(&self, m: &Monomial) -> bool {
        self.stair.member(m)
    }

    fn lift(&self, stair: Staircase) -> Self {
        Self::from_staircase(&self.ring, stair)
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.lift(self.stair.sum(&other.stair))
    }

    pub fn product(&self, other: &Self) -> Self {
        self.lift(self.stair.product(&other.stair))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.lift(self.stair.intersect(&other.stair))
    }

    pub fn colon(&self, other: &Self) -> Self {
        self.lift(self.stair.colon(&other.stair))
    }

    pub fn scale(&self, m: &Monomial) -> Self {
        self.lift(self.stair.scale(m))
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.stair.contains(&other.stair)
    }
}
