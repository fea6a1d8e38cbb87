//! Numerical semigroups and their ideals as explicit value sets.

/// Membership table of the semigroup generated by `gens`, for `0..=bound`.
pub fn semigroup_table(gens: &[u32], bound: u32) -> Vec<bool> {
    let mut table = vec![false; bound as usize + 1];
    table[0] = true;
    for v in 1..=bound as usize {
        table[v] = gens.iter().any(|&g| g as usize <= v && table[v - g as usize]);
    }
    table
}

/// An ideal of a numerical semigroup ring as a value set up to `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueIdeal {
    pub bound: u32,
    pub member: Vec<bool>,
}

impl ValueIdeal {
    /// Ideal generated by `t^g` for `g` in `gens`.
    pub fn generated(semigroup: &[bool], gens: &[u32]) -> Self {
        let bound = semigroup.len() as u32 - 1;
        let member = (0..=bound)
            .map(|v| gens.iter().any(|&g| g <= v && semigroup[(v - g) as usize]))
            .collect();
        ValueIdeal { bound, member }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.member[v as usize]
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a && b)
    }

    fn zip(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        ValueIdeal {
            bound: self.bound,
            member: self.member.iter().zip(&other.member).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    /// Minkowski sum, exact for values `<= bound`.
    pub fn product(&self, other: &Self) -> Self {
        let member = (0..=self.bound)
            .map(|v| (0..=v).any(|u| self.contains(u) && other.contains(v - u)))
            .collect();
        ValueIdeal { bound: self.bound, member }
    }

    /// `{v ∈ S : v + w ∈ self for all w ∈ other}`, exact for `v` with
    /// `v + max_checked <= bound`, where every `w <= max_checked` is tested.
    pub fn colon(&self, other: &Self, semigroup: &[bool], max_checked: u32) -> Self {
        let member = (0..=self.bound)
            .map(|v| {
                semigroup[v as usize]
                    && (0..=max_checked)
                        .filter(|&w| other.contains(w))
                        .all(|w| v + w > self.bound || self.contains(v + w))
            })
            .collect();
        ValueIdeal { bound: self.bound, member }
    }

    /// Semigroup elements below `bound` missing from the ideal.
    pub fn colength(&self, semigroup: &[bool]) -> u64 {
        (0..=self.bound as usize)
            .filter(|&v| semigroup[v] && !self.member[v])
            .count() as u64
    }
}
