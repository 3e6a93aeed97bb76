//! Certified "x before y in every median" facts, stored as a bit matrix.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::profile::CandidateId;

const WORD: usize = 64;

/// A set of ordered pairs `(x, y)` meaning `x` precedes `y` in every median.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolvedRelation {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl SolvedRelation {
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(WORD).max(1);
        SolvedRelation { n, stride, bits: vec![0; n * stride] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (CandidateId, CandidateId)>) -> Self {
        let mut r = Self::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn row(&self, x: CandidateId) -> &[u64] {
        &self.bits[x * self.stride..(x + 1) * self.stride]
    }

    /// Returns `true` if the pair was not present before.
    pub fn insert(&mut self, x: CandidateId, y: CandidateId) -> bool {
        let w = &mut self.bits[x * self.stride + y / WORD];
        let mask = 1u64 << (y % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn contains(&self, x: CandidateId, y: CandidateId) -> bool {
        self.bits[x * self.stride + y / WORD] >> (y % WORD) & 1 == 1
    }

    /// Whether the order of `x` and `y` is known in either direction.
    #[inline]
    pub fn decides(&self, x: CandidateId, y: CandidateId) -> bool {
        self.contains(x, y) || self.contains(y, x)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(CandidateId, CandidateId)> {
        (0..self.n)
            .flat_map(|x| self.successors(x).into_iter().map(move |y| (x, y)))
            .collect()
    }

    /// `{y : (x, y) in self}`; on a closed relation this is `R_x`.
    pub fn successors(&self, x: CandidateId) -> Vec<CandidateId> {
        let row = self.row(x);
        (0..self.n).filter(|&y| row[y / WORD] >> (y % WORD) & 1 == 1).collect()
    }

    /// `{z : (z, x) in self}`; on a closed relation this is `L_x`.
    pub fn predecessors(&self, x: CandidateId) -> Vec<CandidateId> {
        (0..self.n).filter(|&z| self.contains(z, x)).collect()
    }

    pub fn out_degree(&self, x: CandidateId) -> usize {
        self.row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, x: CandidateId) -> usize {
        (0..self.n).filter(|&z| self.contains(z, x)).count()
    }

    pub fn union_with(&mut self, other: &SolvedRelation) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &SolvedRelation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Smallest transitive superset. Fails if the relation has a cycle,
    /// which certified input never does.
    pub fn transitive_closure(&self) -> Result<SolvedRelation> {
        let mut c = self.clone();
        let s = self.stride;
        for k in 0..self.n {
            let row_k: Vec<u64> = c.row(k).to_vec();
            for i in 0..self.n {
                if c.contains(i, k) {
                    for (w, rk) in c.bits[i * s..(i + 1) * s].iter_mut().zip(&row_k) {
                        *w |= rk;
                    }
                }
            }
        }
        if let Some(x) = (0..self.n).find(|&x| c.contains(x, x)) {
            return Err(Error::Inconsistency(format!(
                "solved relation contains a cycle through candidate {x}"
            )));
        }
        Ok(c)
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive_closure().is_ok_and(|c| c == *self)
    }

    /// Renames candidate `c` to `perm[c]`.
    pub fn relabeled(&self, perm: &[CandidateId]) -> Self {
        Self::from_pairs(self.n, self.pairs().into_iter().map(|(x, y)| (perm[x], perm[y])))
    }
}

impl Serialize for SolvedRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closure_examples() {
        let e = SolvedRelation::empty(4);
        assert_eq!(e.transitive_closure().unwrap(), e);

        let r = SolvedRelation::from_pairs(3, [(0, 1), (1, 2)]);
        assert_eq!(r.transitive_closure().unwrap().pairs(), vec![(0, 1), (0, 2), (1, 2)]);

        let r = SolvedRelation::from_pairs(4, [(0, 1), (1, 2), (2, 3)]);
        let c = r.transitive_closure().unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.contains(0, 2) && c.contains(1, 3) && c.contains(0, 3));
    }

    #[test]
    fn cycle_is_an_inconsistency() {
        let r = SolvedRelation::from_pairs(3, [(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(r.transitive_closure(), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn neighbourhoods() {
        let c = SolvedRelation::from_pairs(3, [(0, 1), (1, 2)]).transitive_closure().unwrap();
        assert_eq!(c.predecessors(2), vec![0, 1]);
        assert_eq!(c.successors(0), vec![1, 2]);
        assert_eq!(SolvedRelation::empty(3).predecessors(1), Vec::<usize>::new());
    }

    #[test]
    fn wide_relations_cross_word_boundaries() {
        let n = 130;
        let r = SolvedRelation::from_pairs(n, (0..n - 1).map(|i| (i, i + 1)));
        let c = r.transitive_closure().unwrap();
        assert_eq!(c.len(), n * (n - 1) / 2);
        assert_eq!(c.out_degree(0), n - 1);
        assert_eq!(c.in_degree(n - 1), n - 1);
    }

    // Random DAG edges: only pairs (i, j) with rank[i] < rank[j].
    fn dag_edges() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<(usize, usize)>)> {
        (2usize..12).prop_flat_map(|n| {
            let edge = (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b).prop_map(|(a, b)| (a.min(b), a.max(b)));
            (Just(n), prop::collection::vec(edge.clone(), 0..20), prop::collection::vec(edge, 0..20))
        })
    }

    proptest! {
        #[test]
        fn closure_idempotent_and_monotone((n, a, b) in dag_edges()) {
            let r = SolvedRelation::from_pairs(n, a.iter().copied());
            let mut s = r.clone();
            s.union_with(&SolvedRelation::from_pairs(n, b.iter().copied()));
            let cr = r.transitive_closure().unwrap();
            prop_assert_eq!(cr.transitive_closure().unwrap(), cr.clone());
            prop_assert!(r.is_subset(&cr));
            prop_assert!(cr.is_subset(&s.transitive_closure().unwrap()));
            prop_assert!(cr.is_transitive());
        }
    }
}
