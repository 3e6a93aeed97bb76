//! Majority refinement for candidates whose rank is already bounded.
//!
//! If `x` is among the first `p + 1` candidates of every median, an
//! (alpha, beta)-non-dirty `x` precedes every candidate it beats as soon as
//! `alpha + (p+1)/p * beta > 3/2 + 1/(2p)`. The mirrored statement for the
//! last `p + 1` positions swaps the roles of alpha and beta.

use crate::error::Result;
use crate::relation::SolvedRelation;
use crate::tally::MajorityGraph;

use super::majority::scaled_alpha_beta;

/// `alpha + (p+1)/p * beta > 3/2 + 1/(2p)` scaled by `2mp`.
fn bounded_condition(a: i128, b: i128, m: i128, p: i128) -> bool {
    p >= 1 && p * a + (p + 1) * b > 3 * m * p + m
}

/// Adds majority arcs of every candidate whose rank bound allows it, and
/// returns the closure.
pub fn positional_refine(g: &MajorityGraph, solved: &SolvedRelation) -> Result<SolvedRelation> {
    let n = g.n();
    let m = g.m() as i128;
    let everyone: Vec<usize> = (0..n).collect();
    let mut out = solved.clone();
    for x in 0..n {
        let (a, b) = scaled_alpha_beta(g, x, &everyone);
        let p_first = (n - 1 - solved.out_degree(x)) as i128;
        let p_last = (n - 1 - solved.in_degree(x)) as i128;
        if bounded_condition(a, b, m, p_first) {
            for y in 0..n {
                if g.margin(x, y) > 0 {
                    out.insert(x, y);
                }
            }
        }
        if bounded_condition(b, a, m, p_last) {
            for y in 0..n {
                if g.margin(y, x) > 0 {
                    out.insert(y, x);
                }
            }
        }
    }
    out.transitive_closure()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::VoteProfile;

    fn e1() -> MajorityGraph {
        MajorityGraph::from_profile(&VoteProfile::from_orders(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]).unwrap())
    }

    #[test]
    fn complete_relation_is_a_fixpoint() {
        let g = e1();
        let full = SolvedRelation::from_pairs(3, [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(positional_refine(&g, &full).unwrap(), full);
    }

    #[test]
    fn unanimous_profile_solves_everything_from_scratch() {
        let g = MajorityGraph::from_profile(&VoteProfile::from_orders(4, &[(&[2, 0, 3, 1], 3)]).unwrap());
        let r = positional_refine(&g, &SolvedRelation::empty(4)).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.contains(2, 0) && r.contains(3, 1));
    }

    #[test]
    fn e1_first_candidate_after_one_mot_pass() {
        let g = e1();
        // a = 0 has one known successor, so p_first = 1
        let solved = SolvedRelation::from_pairs(3, [(1, 2), (0, 2)]);
        let r = positional_refine(&g, &solved).unwrap();
        assert!(r.contains(0, 1));
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn bound_rejects_p_zero() {
        assert!(!bounded_condition(2, 2, 1, 0));
        assert!(bounded_condition(2, 2, 1, 1));
    }
}
