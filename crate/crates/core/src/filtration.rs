//! Multigraded filtrations `n ↦ F(n)` over `ℤ^s`.
//!
//! Three kinds are supported: the power-product filtration
//! `F(n) = I_1^{n_1} ··· I_s^{n_s}`, its integral closure `n ↦ closure(I^n)`,
//! and the Ratliff-Rush filtration of the power products. Indices are always
//! normalized through `n ↦ n⁺` before evaluation, so `F(n) = F(n⁺)` holds by
//! construction.

use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Ideal, Ring};
use crate::index::{cube, MultiIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiltrationKind {
    Powers,
    IntegralClosure,
    RatliffRush,
}

impl FiltrationKind {
    pub fn name(self) -> &'static str {
        match self {
            FiltrationKind::Powers => "powers",
            FiltrationKind::IntegralClosure => "integral-closure",
            FiltrationKind::RatliffRush => "ratliff-rush",
        }
    }
}

/// Parameters of the Ratliff-Rush chain `(F(n+ke) : F(e)^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatliffRushOptions {
    /// Number of consecutive equal terms accepted as stabilization.
    pub margin: u32,
    /// Largest `k` tried before giving up.
    pub k_max: u32,
}

impl Default for RatliffRushOptions {
    fn default() -> Self {
        RatliffRushOptions {
            margin: 3,
            k_max: 32,
        }
    }
}

/// A filtration with a concurrent memo table keyed by `n⁺`.
#[derive(Debug)]
pub struct Filtration {
    ring: Ring,
    ideals: Vec<Ideal>,
    kind: FiltrationKind,
    rr: RatliffRushOptions,
    cache: RwLock<HashMap<MultiIndex, Ideal>>,
    /// Power-product filtration underlying the closure and Ratliff-Rush kinds.
    base: Option<Box<Filtration>>,
}

impl Filtration {
    pub fn new(ideals: Vec<Ideal>, kind: FiltrationKind) -> Result<Self> {
        Self::with_options(ideals, kind, RatliffRushOptions::default())
    }

    pub fn with_options(
        ideals: Vec<Ideal>,
        kind: FiltrationKind,
        rr: RatliffRushOptions,
    ) -> Result<Self> {
        let first = ideals
            .first()
            .ok_or_else(|| Error::InvalidFiltration("no base ideals".into()))?;
        let ring = first.ring();
        for (i, a) in ideals.iter().enumerate() {
            if a.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !a.is_m_primary() {
                return Err(Error::NotPrimary(format!("base ideal {} = {a}", i + 1)));
            }
            if a.is_unit() {
                return Err(Error::InvalidFiltration(format!(
                    "base ideal {} is the unit ideal",
                    i + 1
                )));
            }
        }
        if kind == FiltrationKind::IntegralClosure {
            // Surface unsupported backends at construction time.
            first.integral_closure()?;
        }
        let base = match kind {
            FiltrationKind::Powers => None,
            _ => Some(Box::new(Filtration::with_options(
                ideals.clone(),
                FiltrationKind::Powers,
                rr,
            )?)),
        };
        Ok(Filtration {
            ring,
            ideals,
            kind,
            rr,
            cache: RwLock::new(HashMap::new()),
            base,
        })
    }

    /// Number of base ideals.
    pub fn arity(&self) -> usize {
        self.ideals.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Krull dimension of the ring (`d` throughout).
    pub fn dimension(&self) -> u32 {
        self.ring.dimension()
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn ratliff_rush_options(&self) -> RatliffRushOptions {
        self.rr
    }

    /// The power-product filtration `n ↦ I^n` on the same base ideals.
    pub fn powers(&self) -> &Filtration {
        self.base.as_deref().unwrap_or(self)
    }

    /// `F(n)`; indices with negative entries are replaced by `n⁺`.
    pub fn evaluate(&self, n: &MultiIndex) -> Result<Ideal> {
        if n.arity() != self.arity() {
            return Err(Error::InvalidArgument(format!(
                "index {n} has arity {}, filtration has {}",
                n.arity(),
                self.arity()
            )));
        }
        let key = n.plus();
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let value = self.compute(&key)?;
        self.cache
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    fn compute(&self, key: &MultiIndex) -> Result<Ideal> {
        match self.kind {
            FiltrationKind::Powers => {
                match key.0.iter().position(|&c| c > 0) {
                    None => Ok(self.ring.unit_ideal()),
                    Some(i) => {
                        let prev = self.evaluate(&key.shift_axis(i, -1))?;
                        self.ideals[i].product(&prev)
                    }
                }
            }
            FiltrationKind::IntegralClosure => self.powers().evaluate(key)?.integral_closure(),
            FiltrationKind::RatliffRush => ratliff_rush(self.powers(), key),
        }
    }

    /// Evaluate the filtration without consulting or filling the memo table.
    pub fn evaluate_uncached(&self, n: &MultiIndex) -> Result<Ideal> {
        let key = n.plus();
        match self.kind {
            FiltrationKind::Powers => {
                let mut acc = self.ring.unit_ideal();
                for (a, &k) in self.ideals.iter().zip(&key.0) {
                    acc = acc.product(&a.power(k as u32))?;
                }
                Ok(acc)
            }
            FiltrationKind::IntegralClosure => {
                self.powers().evaluate_uncached(&key)?.integral_closure()
            }
            FiltrationKind::RatliffRush => ratliff_rush(self.powers(), &key),
        }
    }

    /// Overwrite a memo entry. Intended for negative controls in tests: a
    /// seeded value that disagrees with the definition must be detected by
    /// the window checks.
    pub fn seed_cache(&self, n: &MultiIndex, ideal: Ideal) {
        self.cache.write().unwrap().insert(n.plus(), ideal);
    }

    /// Number of memoized entries.
    pub fn cache_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    /// Sample the filtration axioms on `[0, box]^s`.
    pub fn check_axioms(&self, box_size: i64) -> Result<AxiomReport> {
        let s = self.arity();
        let pts = cube(s, 0, box_size);
        let powers = self.powers();
        let per_point: Vec<Result<(Vec<String>, Vec<String>)>> = pts
            .par_iter()
            .map(|n| {
                let f_n = self.evaluate(n)?;
                let mut mono = Vec::new();
                let mut pow = Vec::new();
                for i in 0..s {
                    let next = self.evaluate(&n.shift_axis(i, 1))?;
                    if !f_n.contains(&next)? {
                        mono.push(format!("F({}) not in F({n})", n.shift_axis(i, 1)));
                    }
                }
                if !f_n.contains(&powers.evaluate(n)?)? {
                    pow.push(format!("I^{n} not in F({n})"));
                }
                Ok((mono, pow))
            })
            .collect();
        let mut report = AxiomReport {
            box_size,
            monotone: Vec::new(),
            multiplicative: Vec::new(),
            contains_powers: Vec::new(),
        };
        for r in per_point {
            let (mono, pow) = r?;
            report.monotone.extend(mono);
            report.contains_powers.extend(pow);
        }
        let pairs: Vec<(MultiIndex, MultiIndex)> = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| (a.clone(), b.clone())))
            .filter(|(a, b)| a <= b)
            .collect();
        let mult: Vec<Result<Option<String>>> = pairs
            .par_iter()
            .map(|(a, b)| {
                let prod = self.evaluate(a)?.product(&self.evaluate(b)?)?;
                let target = self.evaluate(&a.add(b))?;
                Ok((!target.contains(&prod)?)
                    .then(|| format!("F({a})F({b}) not in F({})", a.add(b))))
            })
            .collect();
        for r in mult {
            if let Some(msg) = r? {
                report.multiplicative.push(msg);
            }
        }
        Ok(report)
    }

    /// For each direction `i`, the least `r_i <= box` with
    /// `F(n + e_i) = I_i F(n)` for every `n ∈ [0, box]^s` with `n_i >= r_i`.
    pub fn check_admissible_window(&self, box_size: i64) -> Result<AdmissibilityReport> {
        if box_size < 2 {
            return Err(Error::InvalidArgument("admissibility window needs box >= 2".into()));
        }
        let s = self.arity();
        let pts = cube(s, 0, box_size);
        let mut directions = Vec::with_capacity(s);
        for i in 0..s {
            let failing: Vec<Result<Option<MultiIndex>>> = pts
                .par_iter()
                .map(|n| {
                    let lhs = self.evaluate(&n.shift_axis(i, 1))?;
                    let rhs = self.ideals[i].product(&self.evaluate(n)?)?;
                    Ok((lhs != rhs).then(|| n.clone()))
                })
                .collect();
            let mut failures = Vec::new();
            for f in failing {
                if let Some(n) = f? {
                    failures.push(n);
                }
            }
            let worst = failures.iter().map(|n| n.0[i]).max();
            let r = match worst {
                None => Some(0),
                Some(w) if w < box_size => Some(w + 1),
                Some(_) => None,
            };
            let top_layer_failures = if r.is_none() {
                failures.into_iter().filter(|n| n.0[i] == box_size).collect()
            } else {
                Vec::new()
            };
            directions.push(DirectionWindow {
                direction: i,
                r,
                failures: top_layer_failures,
            });
        }
        Ok(AdmissibilityReport {
            box_size,
            directions,
        })
    }
}

/// Violations of the filtration axioms found on a sample box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub box_size: i64,
    pub monotone: Vec<String>,
    pub multiplicative: Vec<String>,
    pub contains_powers: Vec<String>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.monotone.is_empty() && self.multiplicative.is_empty() && self.contains_powers.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionWindow {
    pub direction: usize,
    /// Least observed `r_i`, or `None` if even the top layer fails.
    pub r: Option<i64>,
    /// Failing indices on the top layer when `r` is `None`.
    pub failures: Vec<MultiIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub box_size: i64,
    pub directions: Vec<DirectionWindow>,
}

impl AdmissibilityReport {
    pub fn passes(&self) -> bool {
        self.directions.iter().all(|d| d.r.is_some())
    }
}

/// Ratliff-Rush closure `F̆(n) = ∪_k (F(n+ke) : F(e)^k)` with the stopping
/// rule from the filtration's [`RatliffRushOptions`].
pub fn ratliff_rush(f: &Filtration, n: &MultiIndex) -> Result<Ideal> {
    ratliff_rush_with(f, n, f.ratliff_rush_options())
}

pub fn ratliff_rush_with(f: &Filtration, n: &MultiIndex, opts: RatliffRushOptions) -> Result<Ideal> {
    let n = n.plus();
    let s = f.arity();
    let f_e = f.evaluate(&MultiIndex::e(s))?;
    let mut f_e_pow = f.ring().unit_ideal();
    let mut prev: Option<Ideal> = None;
    let mut run = 0u32;
    for k in 1..=opts.k_max {
        f_e_pow = f_e_pow.product(&f_e)?;
        let term = f.evaluate(&n.shift(k as i64))?.colon(&f_e_pow)?;
        run = if prev.as_ref() == Some(&term) { run + 1 } else { 1 };
        if run >= opts.margin.max(1) {
            return Ok(term);
        }
        prev = Some(term);
    }
    Err(Error::RatliffRushUnstable {
        index: n.to_string(),
        k_max: opts.k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{Monomial, PolyRing, SemigroupRing};

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn kxy() -> Ring {
        Ring::Poly(PolyRing::new(2).unwrap())
    }

    fn maximal_power(r: &Ring, k: u32) -> Ideal {
        r.ideal(&[m(&[1, 0]), m(&[0, 1])]).unwrap().power(k)
    }

    #[test]
    fn negative_indices_clamp() {
        let r = kxy();
        let f = Filtration::new(
            vec![maximal_power(&r, 2), maximal_power(&r, 3)],
            FiltrationKind::Powers,
        )
        .unwrap();
        assert_eq!(f.evaluate(&mi(&[-3, 1])).unwrap(), f.evaluate(&mi(&[0, 1])).unwrap());
        assert!(f.evaluate(&mi(&[-1, -7])).unwrap().is_unit());
    }

    #[test]
    fn cached_and_uncached_agree() {
        let s = Ring::Semigroup(SemigroupRing::new(vec![3, 4, 5]).unwrap());
        let i = s.ideal(&[m(&[3]), m(&[4])]).unwrap();
        let j = s.ideal(&[m(&[3])]).unwrap();
        let f = Filtration::new(vec![i, j], FiltrationKind::Powers).unwrap();
        for n in cube(2, 0, 4) {
            assert_eq!(f.evaluate(&n).unwrap(), f.evaluate_uncached(&n).unwrap());
        }
        // F(1,2) = (t^3,t^4)(t^6)
        let expect = s.ideal(&[m(&[9]), m(&[10])]).unwrap();
        assert_eq!(f.evaluate(&mi(&[1, 2])).unwrap(), expect);
    }

    #[test]
    fn ratliff_rush_of_parameter_pair() {
        let r = kxy();
        let f = Filtration::new(
            vec![maximal_power(&r, 2), r.ideal(&[m(&[2, 0]), m(&[0, 2])]).unwrap()],
            FiltrationKind::Powers,
        )
        .unwrap();
        assert_eq!(ratliff_rush(&f, &mi(&[0, 1])).unwrap(), maximal_power(&r, 2));
        assert!(ratliff_rush(&f, &mi(&[0, 0])).unwrap().is_unit());
    }

    #[test]
    fn powers_are_admissible() {
        let r = kxy();
        let f = Filtration::new(
            vec![maximal_power(&r, 2), r.ideal(&[m(&[2, 0]), m(&[0, 2])]).unwrap()],
            FiltrationKind::Powers,
        )
        .unwrap();
        let rep = f.check_admissible_window(4).unwrap();
        assert!(rep.passes());
        assert!(rep.directions.iter().all(|d| d.r == Some(0)));
    }

    #[test]
    fn rejects_non_primary() {
        let r = kxy();
        let bad = r.ideal(&[m(&[1, 1])]).unwrap();
        assert!(matches!(
            Filtration::new(vec![bad], FiltrationKind::Powers),
            Err(Error::NotPrimary(_))
        ));
    }
}
