//! Monomial ideals of `k[x_1, .., x_n]/Q` as divisibility predicates over
//! the exponent lattice.

/// An ideal given by generators, living in a ring with monomial quotient
/// generators `quotient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIdeal {
    pub gens: Vec<Vec<u32>>,
    pub quotient: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All exponent vectors in `n` variables of total degree at most `bound`.
pub fn monomials_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for head in 0..=bound {
        for mut tail in monomials_up_to(n - 1, bound - head) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

impl LatticeIdeal {
    pub fn new(gens: Vec<Vec<u32>>, quotient: Vec<Vec<u32>>) -> Self {
        LatticeIdeal { gens, quotient }
    }

    /// `m ∈ I + Q`.
    pub fn member(&self, m: &[u32]) -> bool {
        self.gens.iter().chain(&self.quotient).any(|g| divides(g, m))
    }

    /// `m` is zero in the ring.
    pub fn is_zero_in_ring(&self, m: &[u32]) -> bool {
        self.quotient.iter().any(|g| divides(g, m))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        LatticeIdeal::new(gens, self.quotient.clone())
    }

    pub fn product(&self, other: &Self) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| add(a, b)))
            .collect();
        LatticeIdeal::new(gens, self.quotient.clone())
    }

    pub fn power(&self, k: u32) -> Self {
        let n = self.gens.first().map(Vec::len).unwrap_or(0);
        (0..k).fold(LatticeIdeal::new(vec![vec![0; n]], self.quotient.clone()), |acc, _| {
            acc.product(self)
        })
    }

    /// Membership in `I ∩ J`.
    pub fn intersect_member(&self, other: &Self, m: &[u32]) -> bool {
        self.member(m) && other.member(m)
    }

    /// Membership in `I : J`: `m·g ∈ I + Q` for every generator `g` of `J`.
    pub fn colon_member(&self, other: &Self, m: &[u32]) -> bool {
        other.gens.iter().all(|g| self.member(&add(m, g)))
    }

    /// Number of monomials of degree at most `bound` outside `I + Q`.
    pub fn standard_count(&self, n: usize, bound: u32) -> u64 {
        monomials_up_to(n, bound)
            .iter()
            .filter(|m| !self.member(m))
            .count() as u64
    }
}
