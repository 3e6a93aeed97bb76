//! The `T1 z1 T2 z2 ... zl T(l+1)` shape produced by recursive candidate splitting.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::profile::CandidateId;
use crate::relation::SolvedRelation;
use crate::tally::MajorityGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockStatus {
    /// At or below the threshold; handed to an external exact solver and
    /// counted as solved.
    Threshold,
    /// Above the threshold with no certifiable candidate.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub members: Vec<CandidateId>,
    pub status: BlockStatus,
}

/// Blocks interleaved with fixed candidates; `blocks.len() == fixed.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PartialResult {
    pub blocks: Vec<Block>,
    pub fixed: Vec<CandidateId>,
}

impl PartialResult {
    pub fn block(mut members: Vec<CandidateId>, status: BlockStatus) -> Self {
        members.sort_unstable();
        PartialResult { blocks: vec![Block { members, status }], fixed: Vec::new() }
    }

    /// `left`, then `pivot`, then `right`.
    pub fn join(mut left: PartialResult, pivot: CandidateId, right: PartialResult) -> Self {
        left.fixed.push(pivot);
        left.fixed.extend(right.fixed);
        left.blocks.extend(right.blocks);
        left
    }

    /// `self` followed by `next`. The two blocks meeting at the seam are
    /// merged; the result is unresolved if either part was.
    pub fn concat(mut self, mut next: PartialResult) -> Self {
        let last = self.blocks.pop().expect("at least one block");
        let first = next.blocks.remove(0);
        let status = if last.status == BlockStatus::Unresolved || first.status == BlockStatus::Unresolved {
            BlockStatus::Unresolved
        } else {
            BlockStatus::Threshold
        };
        let mut members = last.members;
        members.extend(first.members);
        members.sort_unstable();
        self.blocks.push(Block { members, status });
        self.blocks.extend(next.blocks);
        self.fixed.extend(next.fixed);
        self
    }

    pub fn n(&self) -> usize {
        self.fixed.len() + self.blocks.iter().map(|b| b.members.len()).sum::<usize>()
    }

    /// Absolute position of every fixed candidate.
    pub fn fixed_positions(&self) -> Vec<(CandidateId, usize)> {
        let mut pos = 0;
        let mut out = Vec::with_capacity(self.fixed.len());
        for (b, &z) in self.blocks.iter().zip(&self.fixed) {
            pos += b.members.len();
            out.push((z, pos));
            pos += 1;
        }
        out
    }

    /// Start offset of each block.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut pos = 0;
        self.blocks
            .iter()
            .map(|b| {
                let start = pos;
                pos += b.members.len() + 1;
                start
            })
            .collect()
    }

    /// Fixed candidates plus threshold-block members: the solved count of
    /// the recursive splitting procedure.
    pub fn positioned(&self) -> BTreeSet<CandidateId> {
        self.fixed
            .iter()
            .copied()
            .chain(
                self.blocks
                    .iter()
                    .filter(|b| b.status == BlockStatus::Threshold)
                    .flat_map(|b| b.members.iter().copied()),
            )
            .collect()
    }

    pub fn unresolved_blocks(&self) -> BTreeSet<Vec<CandidateId>> {
        self.blocks
            .iter()
            .filter(|b| b.status == BlockStatus::Unresolved)
            .map(|b| b.members.clone())
            .collect()
    }

    /// Candidates whose absolute position is the same in every median:
    /// fixed candidates, singleton blocks, and two-element blocks with a
    /// strict majority (adjacent candidates of a median follow the majority).
    pub fn certified_positions(&self, g: &MajorityGraph) -> Vec<(CandidateId, usize)> {
        let mut out = self.fixed_positions();
        for (b, start) in self.blocks.iter().zip(self.block_offsets()) {
            match b.members[..] {
                [c] => out.push((c, start)),
                [u, w] if g.margin(u, w) != 0 => {
                    let (first, second) = if g.margin(u, w) > 0 { (u, w) } else { (w, u) };
                    out.push((first, start));
                    out.push((second, start + 1));
                }
                _ => {}
            }
        }
        out.sort_unstable();
        out
    }

    /// Pairs implied by the layout: every fixed candidate against everyone,
    /// and majority order inside strict two-element blocks. Closed.
    pub fn to_relation(&self, g: &MajorityGraph) -> SolvedRelation {
        self.relation_within(self.n(), g)
    }

    /// [`Self::to_relation`] for a layout of a subset of `0..n`.
    pub fn relation_within(&self, n: usize, g: &MajorityGraph) -> SolvedRelation {
        let mut r = SolvedRelation::empty(n);
        let mut earlier: Vec<CandidateId> = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if let [u, w] = b.members[..] {
                match g.margin(u, w).signum() {
                    1 => {
                        r.insert(u, w);
                    }
                    -1 => {
                        r.insert(w, u);
                    }
                    _ => {}
                }
            }
            earlier.extend(&b.members);
            if let Some(&z) = self.fixed.get(i) {
                for &e in &earlier {
                    r.insert(e, z);
                }
                earlier.push(z);
            }
        }
        let mut later: Vec<CandidateId> = Vec::new();
        for (i, b) in self.blocks.iter().enumerate().rev() {
            later.extend(&b.members);
            if i > 0 {
                let z = self.fixed[i - 1];
                for &l in &later {
                    r.insert(z, l);
                }
                later.push(z);
            }
        }
        r.transitive_closure().expect("a block layout is acyclic")
    }

    pub fn relabeled(&self, perm: &[CandidateId]) -> Self {
        PartialResult {
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    let mut members: Vec<_> = b.members.iter().map(|&c| perm[c]).collect();
                    members.sort_unstable();
                    Block { members, status: b.status }
                })
                .collect(),
            fixed: self.fixed.iter().map(|&c| perm[c]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout() -> PartialResult {
        // {1,4} 0 {} 3 {2}
        let l = PartialResult::block(vec![4, 1], BlockStatus::Threshold);
        let r = PartialResult::join(
            PartialResult::block(vec![], BlockStatus::Threshold),
            3,
            PartialResult::block(vec![2], BlockStatus::Threshold),
        );
        PartialResult::join(l, 0, r)
    }

    #[test]
    fn positions_follow_block_sizes() {
        let p = layout();
        assert_eq!(p.n(), 5);
        assert_eq!(p.fixed_positions(), vec![(0, 2), (3, 3)]);
        assert_eq!(p.block_offsets(), vec![0, 3, 4]);
        assert_eq!(p.positioned().len(), 5);
    }

    #[test]
    fn relation_orders_across_pivots() {
        let g = MajorityGraph::from_margins(
            1,
            vec![
                vec![0, -1, 1, 1, -1],
                vec![1, 0, 1, 1, 1],
                vec![-1, -1, 0, -1, -1],
                vec![-1, -1, 1, 0, -1],
                vec![1, -1, 1, 1, 0],
            ],
        )
        .unwrap();
        let p = layout();
        let r = p.to_relation(&g);
        // full order 1 4 0 3 2
        assert_eq!(r.len(), 10);
        assert!(r.contains(1, 4) && r.contains(4, 0) && r.contains(3, 2) && r.contains(1, 2));
        assert_eq!(p.certified_positions(&g), vec![(0, 2), (1, 0), (2, 4), (3, 3), (4, 1)]);
    }

    #[test]
    fn concat_merges_the_seam() {
        let a = PartialResult::join(
            PartialResult::block(vec![], BlockStatus::Threshold),
            4,
            PartialResult::block(vec![1, 0], BlockStatus::Threshold),
        );
        let b = PartialResult::block(vec![2, 3, 5], BlockStatus::Unresolved);
        let c = a.concat(b);
        assert_eq!(c.fixed, vec![4]);
        assert_eq!(c.blocks[1], Block { members: vec![0, 1, 2, 3, 5], status: BlockStatus::Unresolved });
        assert_eq!(c.n(), 6);
    }
}
