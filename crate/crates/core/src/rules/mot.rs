//! Major order theorem: `x` precedes `y` in every median when
//! `D_xy > 0` and `D_xy > |E_yx \ E_xy|`, where `E_uv` is the multiset of
//! candidates sitting strictly between `u` and `v` in votes ranking `u` first.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::profile::{CandidateId, VoteProfile};
use crate::relation::SolvedRelation;
use crate::tally::MajorityGraph;

/// Inference-set multiplicities for every ordered pair, `n^3` counters.
#[derive(Debug, Clone)]
pub struct InferenceTable {
    n: usize,
    counts: Vec<u64>,
}

impl InferenceTable {
    pub fn build(v: &VoteProfile) -> Self {
        let n = v.n();
        let mut counts = vec![0u64; n * n * n];
        for (vote, k) in v.votes() {
            let o = vote.as_slice();
            for i in 0..n {
                for j in i + 2..n {
                    let base = (o[i] * n + o[j]) * n;
                    for &z in &o[i + 1..j] {
                        counts[base + z] += k;
                    }
                }
            }
        }
        InferenceTable { n, counts }
    }

    #[inline]
    pub fn multiplicity(&self, u: CandidateId, v: CandidateId, z: CandidateId) -> u64 {
        self.counts[(u * self.n + v) * self.n + z]
    }

    /// `E_uv` with candidates excluded by `closed` removed: `z` can sit
    /// between `u` and `v` only if neither `(z, u)` nor `(v, z)` is certified.
    pub fn filtered(&self, closed: &SolvedRelation, u: CandidateId, v: CandidateId) -> BTreeMap<CandidateId, u64> {
        (0..self.n)
            .filter(|&z| !excluded(closed, u, v, z))
            .filter_map(|z| {
                let k = self.multiplicity(u, v, z);
                (k > 0).then_some((z, k))
            })
            .collect()
    }

    /// `|E_yx \ E_xy|` after exclusion by `closed`.
    fn difference(&self, closed: &SolvedRelation, x: CandidateId, y: CandidateId) -> u64 {
        (0..self.n)
            .map(|z| {
                let against = if excluded(closed, y, x, z) { 0 } else { self.multiplicity(y, x, z) };
                let support = if excluded(closed, x, y, z) { 0 } else { self.multiplicity(x, y, z) };
                against.saturating_sub(support)
            })
            .sum()
    }
}

#[inline]
fn excluded(closed: &SolvedRelation, u: CandidateId, v: CandidateId, z: CandidateId) -> bool {
    closed.contains(z, u) || closed.contains(v, z)
}

/// `E_uw` for a single ordered pair.
pub fn inference_sets(v: &VoteProfile, u: CandidateId, w: CandidateId) -> BTreeMap<CandidateId, u64> {
    let mut out = BTreeMap::new();
    for (vote, k) in v.votes() {
        let pos = vote.positions();
        let (pu, pw) = (pos[u], pos[w]);
        if pu < pw {
            for &z in &vote.as_slice()[pu + 1..pw] {
                *out.entry(z).or_insert(0) += k;
            }
        }
    }
    out
}

fn mot_pass(g: &MajorityGraph, table: &InferenceTable, closed: &SolvedRelation) -> Vec<(CandidateId, CandidateId)> {
    let n = g.n();
    let mut added = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let d = g.margin(x, y);
            if d <= 0 || closed.decides(x, y) {
                continue;
            }
            if d as u64 > table.difference(closed, x, y) {
                added.push((x, y));
            }
        }
    }
    added
}

/// One pass from scratch, closed.
pub fn mot(v: &VoteProfile) -> Result<SolvedRelation> {
    let g = MajorityGraph::from_profile(v);
    let table = InferenceTable::build(v);
    let empty = SolvedRelation::empty(v.n());
    SolvedRelation::from_pairs(v.n(), mot_pass(&g, &table, &empty)).transitive_closure()
}

/// Closed relation after each pass, ending with the first pass that adds nothing.
pub fn iterated_mot_trace(v: &VoteProfile) -> Result<Vec<SolvedRelation>> {
    let g = MajorityGraph::from_profile(v);
    let table = InferenceTable::build(v);
    let mut closed = SolvedRelation::empty(v.n());
    let mut trace = Vec::new();
    loop {
        let added = mot_pass(&g, &table, &closed);
        let done = added.is_empty();
        let mut next = closed.clone();
        for (x, y) in added {
            next.insert(x, y);
        }
        closed = next.transitive_closure()?;
        trace.push(closed.clone());
        if done {
            return Ok(trace);
        }
    }
}

pub fn iterated_mot(v: &VoteProfile) -> Result<SolvedRelation> {
    Ok(iterated_mot_trace(v)?.pop().expect("trace has at least one pass"))
}
