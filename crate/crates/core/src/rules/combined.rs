//! Alternating (alpha, beta)-MOT and (alpha, beta)-majority splitting.
//!
//! MOT runs on the updated graph, where certified arcs carry full weight
//! `m`; the median set does not change under this update. The majority
//! tests do not survive it: an updated graph need not come from any
//! profile, and their certificates can then be wrong. So splitting always
//! reads the original margins, and the solved relation enters only by
//! cutting the candidates into segments that every median orders in
//! sequence. Each segment is a sub-election of its own.

use std::collections::BTreeSet;
use std::time::Duration;

use crate::error::Result;
use crate::partial::{BlockStatus, PartialResult};
use crate::profile::CandidateId;
use crate::relation::SolvedRelation;
use crate::tally::MajorityGraph;

use super::ab_mot::ab_mot_from;
use super::majority::ab_majority_block;
use super::positional::positional_refine;
use super::{fully_positioned, ReductionReport, RoundStats};

/// Copy of `g` with every pair of `solved` raised to weight `m`.
pub fn update_graph(g: &MajorityGraph, solved: &SolvedRelation) -> MajorityGraph {
    let mut out = g.clone();
    for (x, y) in solved.pairs() {
        out.fix_arc(x, y);
    }
    out
}

/// Maximal runs `S1, S2, ...` such that `closed` orders all of `Si` before
/// all of `Sj` for `i < j`. Members are sorted.
pub fn segments(closed: &SolvedRelation) -> Vec<Vec<CandidateId>> {
    let n = closed.n();
    let mut order: Vec<CandidateId> = (0..n).collect();
    order.sort_by_key(|&c| (closed.in_degree(c), c));
    let mut out = Vec::new();
    let mut start = 0;
    for cut in 1..=n {
        let complete = cut == n
            || order[start..cut].iter().all(|&x| order[cut..].iter().all(|&y| closed.contains(x, y)));
        if complete {
            let mut seg = order[start..cut].to_vec();
            seg.sort_unstable();
            out.push(seg);
            start = cut;
        }
    }
    out
}

/// Splits every segment on the original margins and lays them out in order.
fn segmented_layout(g: &MajorityGraph, segs: &[Vec<CandidateId>], threshold: usize) -> Result<(PartialResult, BTreeSet<CandidateId>)> {
    let mut layout: Option<PartialResult> = None;
    let mut positioned = BTreeSet::new();
    for seg in segs {
        let part = if let [c] = seg[..] {
            let empty = || PartialResult::block(Vec::new(), BlockStatus::Threshold);
            PartialResult::join(empty(), c, empty())
        } else if seg.len() <= threshold {
            PartialResult::block(seg.clone(), BlockStatus::Threshold)
        } else {
            ab_majority_block(g, seg.clone(), threshold)?
        };
        positioned.extend(part.positioned());
        layout = Some(match layout {
            None => part,
            Some(l) => l.concat(part),
        });
    }
    Ok((layout.unwrap_or_else(|| PartialResult::block(Vec::new(), BlockStatus::Threshold)), positioned))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinedOptions {
    pub threshold: usize,
    pub refine: bool,
}

impl Default for CombinedOptions {
    fn default() -> Self {
        CombinedOptions { threshold: 2, refine: true }
    }
}

/// Runs rounds until neither a pair nor a position is gained.
///
/// Pairs are harvested from splits at threshold 2, the finest layout
/// available; the reported layout and position count use `opts.threshold`.
pub fn combined_reduce(g: &MajorityGraph, opts: &CombinedOptions) -> Result<ReductionReport> {
    let n = g.n();
    let max_rounds = n * n.saturating_sub(1) / 2 + 1;

    let mut solved = SolvedRelation::empty(n);
    let mut positioned: BTreeSet<usize> = BTreeSet::new();
    let mut rounds = Vec::new();
    let mut layout = ab_majority_block(g, (0..n).collect(), opts.threshold)?;

    while rounds.len() < max_rounds {
        let pairs_before = solved.len();
        let positions_before = positioned.len();

        solved = ab_mot_from(&update_graph(g, &solved), solved)?;

        let whole = ab_majority_block(g, (0..n).collect(), 2)?;
        solved.union_with(&whole.relation_within(n, g));
        let (fine, _) = segmented_layout(g, &segments(&solved.transitive_closure()?), 2)?;
        solved.union_with(&fine.relation_within(n, g));
        solved = solved.transitive_closure()?;

        if opts.refine {
            solved = positional_refine(g, &solved)?;
        }

        let (seg_layout, seg_positioned) = segmented_layout(g, &segments(&solved), opts.threshold)?;
        layout = seg_layout;
        positioned.extend(seg_positioned);
        positioned.extend(ab_majority_block(g, (0..n).collect(), opts.threshold)?.positioned());
        positioned.extend(fully_positioned(&solved).into_iter().map(|(c, _)| c));

        let stats = RoundStats {
            pairs_added: solved.len() - pairs_before,
            positions_added: positioned.len() - positions_before,
        };
        rounds.push(stats);
        if stats == RoundStats::default() {
            break;
        }
    }

    let solved_positions = fully_positioned(&solved);
    Ok(ReductionReport {
        rule: "combined".to_string(),
        n,
        m: g.m(),
        threshold: Some(opts.threshold),
        solved_pairs: solved,
        solved_positions,
        positioned,
        partial: Some(layout),
        rounds,
        elapsed: Duration::ZERO,
    })
}
