//! Multi-indices `n ∈ ℤ^s` with the componentwise order and the `n⁺` map.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A point of `ℤ^s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn new(coords: Vec<i64>) -> Self {
        MultiIndex(coords)
    }

    pub fn zero(s: usize) -> Self {
        MultiIndex(vec![0; s])
    }

    /// `e = (1, .., 1)`.
    pub fn e(s: usize) -> Self {
        MultiIndex(vec![1; s])
    }

    /// The `i`-th unit vector.
    pub fn unit(s: usize, i: usize) -> Self {
        let mut v = vec![0; s];
        v[i] = 1;
        MultiIndex(v)
    }

    /// `k·e`.
    pub fn diagonal(s: usize, k: i64) -> Self {
        MultiIndex(vec![k; s])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `n⁺`: negative coordinates replaced by zero.
    pub fn plus(&self) -> Self {
        MultiIndex(self.0.iter().map(|&c| c.max(0)).collect())
    }

    /// Componentwise `self >= other`.
    pub fn geq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `self + k·e`.
    pub fn shift(&self, k: i64) -> Self {
        MultiIndex(self.0.iter().map(|a| a + k).collect())
    }

    /// `self + k·e_i`.
    pub fn shift_axis(&self, i: usize, k: i64) -> Self {
        let mut v = self.0.clone();
        v[i] += k;
        MultiIndex(v)
    }

    /// `|n| = n_1 + .. + n_s`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn max_coord(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// All points of the cube `[lo, hi]^s`, in lexicographic order.
pub fn cube(s: usize, lo: i64, hi: i64) -> Vec<MultiIndex> {
    boxed(&MultiIndex::diagonal(s, lo), &MultiIndex::diagonal(s, hi))
}

/// All points `p` with `lo <= p <= hi`, in lexicographic order.
pub fn boxed(lo: &MultiIndex, hi: &MultiIndex) -> Vec<MultiIndex> {
    let s = lo.arity();
    if lo.0.iter().zip(&hi.0).any(|(a, b)| a > b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        out.push(cur.clone());
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur.0[i] < hi.0[i] {
                cur.0[i] += 1;
                break;
            }
            cur.0[i] = lo.0[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_clamps_negatives() {
        assert_eq!(MultiIndex::new(vec![-3, 1]).plus(), MultiIndex::new(vec![0, 1]));
    }

    #[test]
    fn cube_enumerates_all_points() {
        let pts = cube(2, 0, 2);
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], MultiIndex::new(vec![0, 0]));
        assert_eq!(pts[1], MultiIndex::new(vec![0, 1]));
        assert_eq!(pts[8], MultiIndex::new(vec![2, 2]));
        assert_eq!(cube(0, 0, 3), vec![MultiIndex::new(vec![])]);
    }

    #[test]
    fn order_is_componentwise() {
        let a = MultiIndex::new(vec![2, 0]);
        let b = MultiIndex::new(vec![1, 1]);
        assert!(!a.geq(&b) && !b.geq(&a));
        assert!(a.join(&b).geq(&a));
    }
}
