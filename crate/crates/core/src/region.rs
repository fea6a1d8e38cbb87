//! Up-closed subsets of `ℕ^s` represented by minimal corners and certified on
//! a finite window.
//!
//! A point `n` of the box `[0, box]^s` belongs to a region when a pointwise
//! predicate holds at every `m` in `[n, box + margin]^s`. The extra `margin`
//! makes points near the top of the box face more than a single layer of
//! evidence. Regions are never claimed beyond this window.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::index::{cube, MultiIndex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub s: usize,
    /// Minimal elements, sorted lexicographically.
    pub corners: Vec<MultiIndex>,
    /// Side of the box `[0, box]^s` the corners were extracted from.
    pub box_size: i64,
    /// Extra layers beyond the box over which the predicate was checked.
    pub margin: i64,
}

impl Region {
    /// Certify `{n ∈ [0,box]^s : pred(m) for all m ∈ [n, box+margin]^s}`.
    pub fn from_predicate<P>(s: usize, box_size: i64, margin: i64, pred: P) -> Region
    where
        P: Fn(&MultiIndex) -> bool + Sync,
    {
        let ok: Result<Region, std::convert::Infallible> =
            Region::try_from_predicate(s, box_size, margin, |n| Ok(pred(n)));
        match ok {
            Ok(r) => r,
            Err(never) => match never {},
        }
    }

    /// Fallible variant of [`Region::from_predicate`]; the predicate is
    /// evaluated at every point of `[0, box+margin]^s` in parallel and the
    /// first error (in lexicographic order) is returned.
    pub fn try_from_predicate<P, E>(
        s: usize,
        box_size: i64,
        margin: i64,
        pred: P,
    ) -> Result<Region, E>
    where
        P: Fn(&MultiIndex) -> Result<bool, E> + Sync,
        E: Send,
    {
        let top = box_size + margin;
        let side = (top + 1) as usize;
        let pts = cube(s, 0, top);
        let vals: Vec<bool> = pts
            .par_iter()
            .map(&pred)
            .collect::<Vec<Result<bool, E>>>()
            .into_iter()
            .collect::<Result<_, E>>()?;
        let stride: Vec<usize> = (0..s).map(|i| side.pow((s - 1 - i) as u32)).collect();

        // Reverse lexicographic order visits n + e_i before n.
        let mut good = vec![false; pts.len()];
        for idx in (0..pts.len()).rev() {
            let p = &pts[idx];
            good[idx] = vals[idx]
                && (0..s).all(|i| p.0[i] == top || good[idx + stride[i]]);
        }
        let corners = pts
            .iter()
            .enumerate()
            .filter(|(idx, p)| {
                good[*idx]
                    && p.0.iter().all(|&c| c <= box_size)
                    && (0..s).all(|i| p.0[i] == 0 || !good[idx - stride[i]])
            })
            .map(|(_, p)| p.clone())
            .collect();
        Ok(Region {
            s,
            corners,
            box_size,
            margin,
        })
    }

    /// Region generated by explicit corners (minimalized).
    pub fn from_corners(s: usize, corners: Vec<MultiIndex>, box_size: i64, margin: i64) -> Region {
        Region {
            s,
            corners: minimal_elements(corners),
            box_size,
            margin,
        }
    }

    pub fn contains(&self, n: &MultiIndex) -> bool {
        self.corners.iter().any(|c| n.geq(c))
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// True when the region is all of the box, i.e. has the single corner `0̲`.
    pub fn is_everything(&self) -> bool {
        self.corners.len() == 1 && self.corners[0].0.iter().all(|&c| c == 0)
    }

    /// Corners of `{r ∈ self : r >= floor}`.
    pub fn restrict_geq(&self, floor: &MultiIndex) -> Region {
        Region::from_corners(
            self.s,
            self.corners.iter().map(|c| c.join(floor)).collect(),
            self.box_size,
            self.margin,
        )
    }

    /// Translate every corner by `v`.
    pub fn translate(&self, v: &MultiIndex) -> Region {
        Region::from_corners(
            self.s,
            self.corners.iter().map(|c| c.add(v)).collect(),
            self.box_size,
            self.margin,
        )
    }

    /// Least `k` with `k·e` in the region: the minimum over corners of the
    /// largest coordinate.
    pub fn diagonal_entry(&self) -> Option<i64> {
        self.corners.iter().map(|c| c.max_coord().max(0)).min()
    }

    /// Membership for every point of `[0, box]^s`, in lexicographic order.
    pub fn membership(&self) -> Vec<(MultiIndex, bool)> {
        cube(self.s, 0, self.box_size)
            .into_iter()
            .map(|p| {
                let inside = self.contains(&p);
                (p, inside)
            })
            .collect()
    }

    pub fn same_corners(&self, other: &Region) -> bool {
        self.corners == other.corners
    }

    pub fn corner_string(&self) -> String {
        let parts: Vec<String> = self.corners.iter().map(|c| c.to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (verified on box [0,{}]^{} with margin {})",
            self.corner_string(),
            self.box_size,
            self.s,
            self.margin
        )
    }
}

/// Minimal elements of a set of points under the componentwise order, sorted
/// lexicographically.
pub fn minimal_elements(mut pts: Vec<MultiIndex>) -> Vec<MultiIndex> {
    pts.sort();
    pts.dedup();
    let mut out: Vec<MultiIndex> = Vec::new();
    for p in &pts {
        if !pts.iter().any(|q| q != p && p.geq(q)) {
            out.push(p.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn everything_region() {
        let r = Region::from_predicate(2, 4, 2, |_| true);
        assert!(r.is_everything());
        assert_eq!(r.diagonal_entry(), Some(0));
    }

    #[test]
    fn empty_region() {
        let r = Region::from_predicate(2, 4, 2, |_| false);
        assert!(r.is_empty());
        assert_eq!(r.diagonal_entry(), None);
    }

    #[test]
    fn union_of_orthants() {
        let target = [mi(&[1, 1]), mi(&[2, 0]), mi(&[0, 2])];
        let r = Region::from_predicate(2, 6, 3, |n| target.iter().any(|c| n.geq(c)));
        assert_eq!(r.corners, vec![mi(&[0, 2]), mi(&[1, 1]), mi(&[2, 0])]);
        assert_eq!(r.diagonal_entry(), Some(1));
    }

    #[test]
    fn isolated_failures_cut_the_region() {
        // Predicate fails only at (3,0); everything at or below it in the
        // order loses membership, everything else keeps it.
        let r = Region::from_predicate(2, 4, 1, |n| *n != mi(&[3, 0]));
        assert_eq!(r.corners, vec![mi(&[0, 1]), mi(&[4, 0])]);
    }

    #[test]
    fn restrict_and_translate() {
        let r = Region::from_corners(2, vec![mi(&[0, 0])], 6, 3);
        assert_eq!(r.restrict_geq(&mi(&[1, 1])).corners, vec![mi(&[1, 1])]);
        assert_eq!(r.translate(&mi(&[1, 1])).corners, vec![mi(&[1, 1])]);
    }
}
