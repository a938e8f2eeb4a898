//! Finite graded posets given by a cover relation.
//!
//! Elements are `0..len()`. Each cover `(child, parent)` must raise the rank
//! by exactly one. The order relation is the reflexive-transitive closure of
//! the covers and is precomputed as bitsets.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover ({child}, {parent}) refers to an element outside 0..{len}")]
    UnknownElement { child: usize, parent: usize, len: usize },
    #[error("cover ({child}, {parent}) does not raise the rank by one")]
    RankMismatch { child: usize, parent: usize },
    #[error("elements {0} and {1} have no common lower bound")]
    NoCommonLowerBound(usize, usize),
    #[error("elements {a} and {b} have several maximal common lower bounds {candidates:?}")]
    NoUniqueMeet { a: usize, b: usize, candidates: Vec<usize> },
    #[error("component does not have a unique bottom element")]
    NoUniqueBottom,
}

#[derive(Clone, Debug)]
pub struct Poset {
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// `below[x]` = all `y <= x`
    below: Vec<FixedBitSet>,
    /// `above[x]` = all `y >= x`
    above: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ranks == other.ranks && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl Poset {
    pub fn new(ranks: Vec<usize>, covers: Vec<(usize, usize)>) -> Result<Self, PosetError> {
        let len = ranks.len();
        let mut up = vec![Vec::new(); len];
        let mut down = vec![Vec::new(); len];
        for &(child, parent) in &covers {
            if child >= len || parent >= len {
                return Err(PosetError::UnknownElement { child, parent, len });
            }
            if ranks[parent] != ranks[child] + 1 {
                return Err(PosetError::RankMismatch { child, parent });
            }
            up[child].push(parent);
            down[parent].push(child);
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let mut covers = covers;
        covers.sort_unstable();
        covers.dedup();

        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&x| (ranks[x], x));
        let mut below: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(len); len];
        for &x in &order {
            let mut set = FixedBitSet::with_capacity(len);
            set.insert(x);
            for &c in &down[x] {
                set.union_with(&below[c]);
            }
            below[x] = set;
        }
        let mut above: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(len); len];
        for &x in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(len);
            set.insert(x);
            for &p in &up[x] {
                set.union_with(&above[p]);
            }
            above[x] = set;
        }
        Ok(Poset { ranks, covers, up, down, below, above })
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Sorted `(child, parent)` pairs.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn down_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[x].ones()
    }

    pub fn up_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.above[x].ones()
    }

    /// Elements with no lower cover.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.down[x].is_empty()).collect()
    }

    /// Greatest lower bound of `a` and `b`.
    pub fn meet(&self, a: usize, b: usize) -> Result<usize, PosetError> {
        let mut common = self.below[a].clone();
        common.intersect_with(&self.below[b]);
        let maximal: Vec<usize> = common
            .ones()
            .filter(|&x| self.above[x].intersection(&common).count() == 1)
            .collect();
        match maximal.as_slice() {
            [] => Err(PosetError::NoCommonLowerBound(a, b)),
            [m] => Ok(*m),
            _ => Err(PosetError::NoUniqueMeet { a, b, candidates: maximal }),
        }
    }

    /// Minimal common upper bounds of `a` and `b` (possibly empty).
    pub fn join(&self, a: usize, b: usize) -> Vec<usize> {
        let mut common = self.above[a].clone();
        common.intersect_with(&self.above[b]);
        common
            .ones()
            .filter(|&x| self.below[x].intersection(&common).count() == 1)
            .collect()
    }

    /// Connected components of the Hasse diagram, each sorted, ordered by
    /// smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in self.up[x].iter().chain(&self.down[x]) {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced sub-poset on `elements` (given in the order that defines the
    /// new indices). Ranks are shifted so the minimum rank becomes zero.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let mut index = vec![usize::MAX; self.len()];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = i;
        }
        let base = elements.iter().map(|&x| self.ranks[x]).min().unwrap_or(0);
        let ranks = elements.iter().map(|&x| self.ranks[x] - base).collect();
        let covers = self
            .covers
            .iter()
            .filter(|&&(c, p)| index[c] != usize::MAX && index[p] != usize::MAX)
            .map(|&(c, p)| (index[c], index[p]))
            .collect();
        Poset::new(ranks, covers).expect("induced covers keep rank steps")
    }

    /// `link(x) = { y : x <= y }` as an induced sub-poset, with the mapping
    /// from new to old indices.
    pub fn link(&self, x: usize) -> (Poset, Vec<usize>) {
        let elements: Vec<usize> = self.above[x].ones().collect();
        (self.induced(&elements), elements)
    }

    /// The unique minimal element of `component`.
    pub fn bottom_of(&self, component: &[usize]) -> Result<usize, PosetError> {
        let mins: Vec<usize> = component.iter().copied().filter(|&x| self.down[x].is_empty()).collect();
        match mins.as_slice() {
            [b] => Ok(*b),
            _ => Err(PosetError::NoUniqueBottom),
        }
    }

    /// Checks that every lower interval `[bottom, x]` of `component` is a
    /// boolean lattice of rank `rank(x) - rank(bottom)`.
    pub fn check_simplicial(&self, component: &[usize]) -> Result<SimplicialCheck, PosetError> {
        let bottom = self.bottom_of(component)?;
        for &x in component {
            if !self.lower_interval_is_boolean(bottom, x) {
                return Ok(SimplicialCheck::NotSimplicial { bottom, top: x });
            }
        }
        Ok(SimplicialCheck::Simplicial)
    }

    /// Is `[bottom, top]` isomorphic to the lattice of subsets of its atoms?
    pub fn lower_interval_is_boolean(&self, bottom: usize, top: usize) -> bool {
        if !self.leq(bottom, top) {
            return false;
        }
        let mut interval = self.below[top].clone();
        interval.intersect_with(&self.above[bottom]);
        let base = self.ranks[bottom];
        let k = self.ranks[top] - base;
        let atoms: Vec<usize> = interval.ones().filter(|&y| self.ranks[y] == base + 1).collect();
        if atoms.len() != k || k >= 64 || interval.count_ones(..) != 1usize << k {
            return false;
        }
        let members: Vec<usize> = interval.ones().collect();
        let masks: Vec<u64> = members
            .iter()
            .map(|&y| {
                atoms
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| self.leq(a, y))
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let distinct: BTreeSet<u64> = masks.iter().copied().collect();
        if distinct.len() != members.len() {
            return false;
        }
        for (i, &y) in members.iter().enumerate() {
            if masks[i].count_ones() as usize != self.ranks[y] - base {
                return false;
            }
            for (j, &z) in members.iter().enumerate() {
                let subset = masks[i] & !masks[j] == 0;
                if subset != self.leq(y, z) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of elements of each rank in `component`, indexed from the
    /// component's minimum rank.
    pub fn rank_counts(&self, component: &[usize]) -> Vec<u64> {
        let base = component.iter().map(|&x| self.ranks[x]).min().unwrap_or(0);
        let top = component.iter().map(|&x| self.ranks[x]).max().unwrap_or(0);
        let mut counts = vec![0u64; if component.is_empty() { 0 } else { top - base + 1 }];
        for &x in component {
            counts[self.ranks[x] - base] += 1;
        }
        counts
    }

    /// An isomorphism `self -> other` (as a map of indices), if one exists.
    ///
    /// Backtracking over elements in rank order; an element may only map to
    /// a candidate whose lower covers are exactly the images of its own.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.covers.len() != other.covers.len() {
            return None;
        }
        let sig = |p: &Poset, x: usize| (p.ranks[x], p.down[x].len(), p.up[x].len());
        let mut mine: Vec<_> = (0..self.len()).map(|x| sig(self, x)).collect();
        let mut theirs: Vec<_> = (0..other.len()).map(|x| sig(other, x)).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return None;
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.ranks[x], x));
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        if self.extend_isomorphism(other, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn extend_isomorphism(
        &self,
        other: &Poset,
        order: &[usize],
        pos: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(pos) else { return true };
        let images: Vec<usize> = {
            let mut v: Vec<usize> = self.down[x].iter().map(|&c| map[c]).collect();
            v.sort_unstable();
            v
        };
        let candidates: Vec<usize> = match images.first() {
            Some(&c) => other.up[c].clone(),
            None => (0..other.len()).filter(|&y| other.down[y].is_empty()).collect(),
        };
        for y in candidates {
            if used[y]
                || other.ranks[y] != self.ranks[x]
                || other.up[y].len() != self.up[x].len()
                || other.down[y] != images
            {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend_isomorphism(other, order, pos + 1, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicialCheck {
    Simplicial,
    /// The interval `[bottom, top]` is not boolean.
    NotSimplicial { bottom: usize, top: usize },
}

impl SimplicialCheck {
    pub fn is_simplicial(&self) -> bool {
        matches!(self, SimplicialCheck::Simplicial)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// `0̂ < a, b < 1, 2` (the face poset of a digon).
    pub(crate) fn digon() -> Poset {
        // 0: bottom, 1: a, 2: b, 3: "1", 4: "2"
        Poset::new(vec![0, 1, 1, 2, 2], vec![(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)]).unwrap()
    }

    /// `0̂ < a, b, c < 1`, not simplicial.
    pub(crate) fn three_atoms_one_top() -> Poset {
        Poset::new(vec![0, 1, 1, 1, 2], vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn meets_and_joins_in_digon() {
        let p = digon();
        assert_eq!(p.meet(3, 1), Ok(1));
        assert_eq!(p.meet(1, 2), Ok(0));
        assert_eq!(p.join(1, 2), vec![3, 4]);
        assert!(p.join(3, 4).is_empty());
        assert_eq!(p.meet(2, 2), Ok(2));
        assert_eq!(p.meet(4, 0), Ok(0));
        assert!(matches!(p.meet(3, 4), Err(PosetError::NoUniqueMeet { .. })));
    }

    #[test]
    fn meet_across_components_fails() {
        let p = Poset::new(vec![0, 0], vec![]).unwrap();
        assert_eq!(p.meet(0, 1), Err(PosetError::NoCommonLowerBound(0, 1)));
        assert_eq!(p.components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn simplicial_checks() {
        let p = digon();
        assert!(p.check_simplicial(&[0, 1, 2, 3, 4]).unwrap().is_simplicial());
        let q = three_atoms_one_top();
        assert_eq!(
            q.check_simplicial(&[0, 1, 2, 3, 4]).unwrap(),
            SimplicialCheck::NotSimplicial { bottom: 0, top: 4 }
        );
        let point = Poset::new(vec![0], vec![]).unwrap();
        assert!(point.check_simplicial(&[0]).unwrap().is_simplicial());
    }

    #[test]
    fn rejects_bad_covers() {
        assert_eq!(
            Poset::new(vec![0, 2], vec![(0, 1)]),
            Err(PosetError::RankMismatch { child: 0, parent: 1 })
        );
        assert!(matches!(Poset::new(vec![0], vec![(0, 3)]), Err(PosetError::UnknownElement { .. })));
    }

    #[test]
    fn isomorphism_search() {
        let p = digon();
        // same digon with relabelled elements
        let q = Poset::new(vec![2, 1, 0, 2, 1], vec![(2, 1), (2, 4), (1, 0), (4, 0), (1, 3), (4, 3)]).unwrap();
        let map = p.isomorphism(&q).unwrap();
        for &(c, par) in p.covers() {
            assert!(q.covers().contains(&(map[c], map[par])));
        }
        assert!(p.isomorphism(&three_atoms_one_top()).is_none());
    }

    #[test]
    fn link_and_rank_counts() {
        let p = digon();
        let (l, ids) = p.link(1);
        assert_eq!(ids, vec![1, 3, 4]);
        assert_eq!(l.ranks(), &[0, 1, 1]);
        assert_eq!(p.rank_counts(&[0, 1, 2, 3, 4]), vec![1, 2, 2]);
        let (top, ids) = p.link(4);
        assert_eq!((top.len(), ids), (1, vec![4]));
    }
}
