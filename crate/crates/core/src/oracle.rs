//! Exhaustive Kemeny medians for small elections, and certification of rule
//! output against them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial::PartialResult;
use crate::profile::{CandidateId, Ranking, VoteProfile};
use crate::relation::SolvedRelation;
use crate::rules::ReductionReport;
use crate::tally::{MajorityGraph, PairTally};

/// Largest `n` the oracle will enumerate.
pub const ORACLE_LIMIT: usize = 10;

/// Optimal score and every ranking attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianSet {
    pub optimal_score: u64,
    pub medians: Vec<Ranking>,
}

/// All Kemeny medians of `v` with their Kendall-tau score.
pub fn enumerate_medians(v: &VoteProfile) -> Result<MedianSet> {
    let n = v.n();
    guard(n)?;
    let t = PairTally::from_profile(v);
    // cost of placing `a` before `b`: votes ranking b first
    let cost = |a: CandidateId, b: CandidateId| t.before(b, a) as i64;
    let (score, medians) = enumerate(n, cost);
    Ok(MedianSet { optimal_score: score as u64, medians })
}

/// Medians of a weighted tournament. The score is in half-vote units,
/// `sum over x before y of (m - D_xy)`.
pub fn enumerate_graph_medians(g: &MajorityGraph) -> Result<MedianSet> {
    let n = g.n();
    guard(n)?;
    let (score, medians) = enumerate(n, |a, b| g.disagreement(a, b));
    Ok(MedianSet { optimal_score: score as u64, medians })
}

fn guard(n: usize) -> Result<()> {
    if n > ORACLE_LIMIT {
        return Err(Error::OracleRefused { n, limit: ORACLE_LIMIT });
    }
    Ok(())
}

/// Depth-first enumeration of all `n!` orders in lexicographic order,
/// scoring prefixes incrementally.
fn enumerate(n: usize, cost: impl Fn(CandidateId, CandidateId) -> i64) -> (i64, Vec<Ranking>) {
    let mut matrix = vec![0i64; n * n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                matrix[a * n + b] = cost(a, b);
            }
        }
    }
    let mut state = Search {
        n,
        cost: matrix,
        prefix: Vec::with_capacity(n),
        used: vec![false; n],
        best: i64::MAX,
        medians: Vec::new(),
    };
    state.descend(0);
    let medians = state.medians.into_iter().map(|o| Ranking::new(o).expect("permutation")).collect();
    (state.best, medians)
}

struct Search {
    n: usize,
    cost: Vec<i64>,
    prefix: Vec<CandidateId>,
    used: Vec<bool>,
    best: i64,
    medians: Vec<Vec<CandidateId>>,
}

impl Search {
    fn descend(&mut self, score: i64) {
        if self.prefix.len() == self.n {
            if score < self.best {
                self.best = score;
                self.medians.clear();
            }
            if score == self.best {
                self.medians.push(self.prefix.clone());
            }
            return;
        }
        for c in 0..self.n {
            if self.used[c] {
                continue;
            }
            // c goes after every candidate already placed
            let added: i64 = self.prefix.iter().map(|&p| self.cost[p * self.n + c]).sum();
            self.used[c] = true;
            self.prefix.push(c);
            self.descend(score + added);
            self.prefix.pop();
            self.used[c] = false;
        }
    }
}

/// A claim contradicted by some median.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `(before, after)` was certified but `median` ranks `after` first.
    Pair { before: CandidateId, after: CandidateId, median: Vec<CandidateId> },
    /// `candidate` was placed at `claimed` but sits at `actual` in `median`.
    Position { candidate: CandidateId, claimed: usize, actual: usize, median: Vec<CandidateId> },
    /// A block of the partial result does not occupy its slot in `median`.
    Block { members: Vec<CandidateId>, offset: usize, median: Vec<CandidateId> },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every pair of `r` against every median.
pub fn certify_relation(r: &SolvedRelation, ms: &MedianSet) -> Verdict {
    let mut violations = Vec::new();
    for median in &ms.medians {
        let pos = median.positions();
        for (x, y) in r.pairs() {
            if pos[y] < pos[x] {
                violations.push(Violation::Pair { before: x, after: y, median: median.as_slice().to_vec() });
            }
        }
    }
    Verdict { violations }
}

fn certify_positions(positions: &[(CandidateId, usize)], ms: &MedianSet, out: &mut Vec<Violation>) {
    for median in &ms.medians {
        let pos = median.positions();
        for &(c, claimed) in positions {
            if pos[c] != claimed {
                out.push(Violation::Position {
                    candidate: c,
                    claimed,
                    actual: pos[c],
                    median: median.as_slice().to_vec(),
                });
            }
        }
    }
}

fn certify_layout(p: &PartialResult, ms: &MedianSet, out: &mut Vec<Violation>) {
    certify_positions(&p.fixed_positions(), ms, out);
    for median in &ms.medians {
        let pos = median.positions();
        for (b, offset) in p.blocks.iter().zip(p.block_offsets()) {
            let end = offset + b.members.len();
            if b.members.iter().any(|&c| pos[c] < offset || pos[c] >= end) {
                out.push(Violation::Block {
                    members: b.members.clone(),
                    offset,
                    median: median.as_slice().to_vec(),
                });
            }
        }
    }
}

/// Checks pairs, certified positions and, when present, the block layout.
pub fn certify(report: &ReductionReport, ms: &MedianSet) -> Verdict {
    let mut verdict = certify_relation(&report.solved_pairs, ms);
    certify_positions(&report.solved_positions, ms, &mut verdict.violations);
    if let Some(p) = &report.partial {
        certify_layout(p, ms, &mut verdict.violations);
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::kendall_tau_profile;
    use itertools::Itertools;

    fn e1() -> VoteProfile {
        VoteProfile::from_orders(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]).unwrap()
    }

    fn brute(v: &VoteProfile) -> (u64, Vec<Ranking>) {
        let scored: Vec<(u64, Ranking)> = (0..v.n())
            .permutations(v.n())
            .map(|p| {
                let r = Ranking::new(p).unwrap();
                (kendall_tau_profile(&r, v).unwrap(), r)
            })
            .collect();
        let best = scored.iter().map(|(s, _)| *s).min().unwrap();
        let mut meds: Vec<Ranking> = scored.into_iter().filter(|(s, _)| *s == best).map(|(_, r)| r).collect();
        meds.sort();
        (best, meds)
    }

    #[test]
    fn e1_has_unique_median() {
        let ms = enumerate_medians(&e1()).unwrap();
        assert_eq!(ms.optimal_score, 2);
        assert_eq!(ms.medians, vec![Ranking::new(vec![0, 1, 2]).unwrap()]);
    }

    #[test]
    fn unanimous_and_reversed() {
        let u = VoteProfile::from_orders(4, &[(&[3, 1, 0, 2], 7)]).unwrap();
        let ms = enumerate_medians(&u).unwrap();
        assert_eq!((ms.optimal_score, ms.medians.len()), (0, 1));
        assert_eq!(ms.medians[0].as_slice(), &[3, 1, 0, 2]);

        let rev = VoteProfile::from_orders(3, &[(&[0, 1, 2], 1), (&[2, 1, 0], 1)]).unwrap();
        let ms = enumerate_medians(&rev).unwrap();
        assert_eq!((ms.optimal_score, ms.medians.len()), (3, 6));
    }

    #[test]
    fn guard_refuses_large_elections() {
        let big = VoteProfile::from_orders(11, &[(&(0..11).collect::<Vec<_>>(), 1)]).unwrap();
        assert_eq!(enumerate_medians(&big), Err(Error::OracleRefused { n: 11, limit: 10 }));
    }

    #[test]
    fn matches_independent_permutation_stream() {
        let v = VoteProfile::from_orders(
            5,
            &[(&[0, 1, 2, 3, 4], 2), (&[4, 3, 0, 1, 2], 1), (&[1, 0, 4, 2, 3], 2), (&[2, 4, 1, 3, 0], 1)],
        )
        .unwrap();
        let ms = enumerate_medians(&v).unwrap();
        let (score, meds) = brute(&v);
        assert_eq!(ms.optimal_score, score);
        assert_eq!(ms.medians, meds);
        let gm = enumerate_graph_medians(&MajorityGraph::from_profile(&v)).unwrap();
        assert_eq!(gm.medians, meds);
        assert_eq!(gm.optimal_score, 2 * score);
    }

    #[test]
    fn certify_examples() {
        let ms = enumerate_medians(&e1()).unwrap();
        assert!(certify_relation(&SolvedRelation::empty(3), &ms).is_certified());
        assert!(certify_relation(&SolvedRelation::from_pairs(3, [(0, 1)]), &ms).is_certified());
        let v = certify_relation(&SolvedRelation::from_pairs(3, [(1, 0)]), &ms);
        assert_eq!(v.violations.len(), 1);
        assert!(matches!(v.violations[0], Violation::Pair { before: 1, after: 0, .. }));
    }
}
