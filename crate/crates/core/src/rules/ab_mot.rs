//! Iterated (alpha, beta)-MOT.
//!
//! `(x, y)` is certified when `D_xy` strictly exceeds the minimum over
//! `t in [0, 1]` of `sum_{z in Z} max(0, t * D_yz + (1 - t) * D_zx)`, where
//! `Z` drops `x`, `y`, the certified predecessors of `y` and the certified
//! successors of `x`. Each pass evaluates every open pair against the same
//! snapshot of the closed relation, so pair scans run in parallel and the
//! result does not depend on scan order.

use rayon::prelude::*;

use crate::error::Result;
use crate::profile::CandidateId;
use crate::relation::SolvedRelation;
use crate::tally::MajorityGraph;

use super::penalty::PenaltyFunction;

/// The pair condition against a closed relation.
pub fn ab_mot_condition(g: &MajorityGraph, closed: &SolvedRelation, x: CandidateId, y: CandidateId) -> bool {
    let d = g.margin(x, y);
    if d <= 0 {
        return false;
    }
    let zs: Vec<CandidateId> = (0..g.n())
        .filter(|&z| z != x && z != y && !closed.contains(z, y) && !closed.contains(x, z))
        .collect();
    PenaltyFunction::for_pair(g, x, y, &zs).exceeded_by(d)
}

/// Open pairs satisfying the condition against `closed`.
pub fn ab_mot_pass(g: &MajorityGraph, closed: &SolvedRelation) -> Vec<(CandidateId, CandidateId)> {
    let n = g.n();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            (0..n)
                .filter(move |&y| g.margin(x, y) > 0 && !closed.decides(x, y))
                .filter(move |&y| ab_mot_condition(g, closed, x, y))
                .map(move |y| (x, y))
        })
        .collect()
}

/// Closed relation after each pass, starting from `start` and ending with the
/// first pass that adds nothing.
pub fn ab_mot_trace(g: &MajorityGraph, start: SolvedRelation) -> Result<Vec<SolvedRelation>> {
    let mut closed = start.transitive_closure()?;
    let mut trace = Vec::new();
    loop {
        let added = ab_mot_pass(g, &closed);
        let done = added.is_empty();
        for (x, y) in added {
            closed.insert(x, y);
        }
        closed = closed.transitive_closure()?;
        trace.push(closed.clone());
        if done {
            return Ok(trace);
        }
    }
}

/// Fixpoint of the pass, continuing from an already certified relation.
pub fn ab_mot_from(g: &MajorityGraph, start: SolvedRelation) -> Result<SolvedRelation> {
    Ok(ab_mot_trace(g, start)?.pop().expect("trace has at least one pass"))
}

pub fn ab_mot(g: &MajorityGraph) -> Result<SolvedRelation> {
    ab_mot_from(g, SolvedRelation::empty(g.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::VoteProfile;

    fn e1() -> MajorityGraph {
        MajorityGraph::from_profile(&VoteProfile::from_orders(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]).unwrap())
    }

    #[test]
    fn first_pass_on_e1_solves_all_pairs() {
        let g = e1();
        let empty = SolvedRelation::empty(3);
        let mut added = ab_mot_pass(&g, &empty);
        added.sort();
        assert_eq!(added, vec![(0, 1), (0, 2), (1, 2)]);
        let trace = ab_mot_trace(&g, empty).unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].len(), 3);
    }

    #[test]
    fn zero_margins_solve_nothing() {
        let g = MajorityGraph::from_profile(&VoteProfile::from_orders(3, &[(&[0, 1, 2], 1), (&[2, 1, 0], 1)]).unwrap());
        assert!(ab_mot(&g).unwrap().is_empty());
    }

    #[test]
    fn losing_pairs_never_qualify() {
        let g = e1();
        assert!(!ab_mot_condition(&g, &SolvedRelation::empty(3), 1, 0));
    }
}
