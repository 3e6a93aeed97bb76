//! Non-dirty candidate rules and recursive block splitting.
//!
//! A candidate `x` of a block `A` splits the block when its relation to every
//! other member follows the strict majority in all medians. The block is then
//! replaced by `before(x) . x . after(x)` and both sides are split again,
//! until blocks are no larger than the threshold or no candidate qualifies.
//!
//! All tests run in count scale: with `D = m * delta`, the normalized
//! quantity `a_zx = (1 + delta_zx) / 2` becomes `(m + D_zx) / (2m)`.

use num_rational::Ratio;

use crate::error::{input, Result};
use crate::partial::{BlockStatus, PartialResult};
use crate::profile::CandidateId;
use crate::tally::MajorityGraph;

/// Evidence that `candidate` is a good (alpha, beta)-non-dirty candidate of a block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDirtyCert {
    pub candidate: CandidateId,
    pub alpha: Ratio<i128>,
    pub beta: Ratio<i128>,
    /// Block members ranked before the candidate.
    pub left: Vec<CandidateId>,
    /// Block members ranked after the candidate.
    pub right: Vec<CandidateId>,
}

/// Order in which block members are tried as split candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanOrder {
    #[default]
    Ascending,
    Descending,
}

/// `2m * alpha` and `2m * beta` for `x` within `block`: `m` plus the smallest
/// non-negative margin against `x` (resp. of `x`), or `2m` when there is none.
pub(crate) fn scaled_alpha_beta(g: &MajorityGraph, x: CandidateId, block: &[CandidateId]) -> (i128, i128) {
    let m = g.m();
    let mut min_in: Option<i64> = None;
    let mut min_out: Option<i64> = None;
    for &z in block {
        if z == x {
            continue;
        }
        let d = g.margin(z, x);
        if d >= 0 {
            min_in = Some(min_in.map_or(d, |v| v.min(d)));
        }
        if d <= 0 {
            min_out = Some(min_out.map_or(-d, |v| v.min(-d)));
        }
    }
    let scaled = |v: Option<i64>| (m + v.unwrap_or(m)) as i128;
    (scaled(min_in), scaled(min_out))
}

/// `alpha + (k-1)/(k-2) * beta > 3/2 + 1/(2(k-2))` with `a = 2m*alpha`,
/// `b = 2m*beta`, multiplied through by `2m(k-2)`.
fn optimized_condition(a: i128, b: i128, m: i128, k: i128) -> bool {
    a * (k - 2) + b * (k - 1) > 3 * m * (k - 2) + m
}

/// Both orientations of the optimized condition. The inequality is not
/// symmetric in (alpha, beta); reversing every vote swaps the two, and each
/// orientation guards one direction of the majority relations of `x`.
pub(crate) fn ab_certifies(a: i128, b: i128, m: i128, k: i128) -> bool {
    optimized_condition(a, b, m, k) && optimized_condition(b, a, m, k)
}

fn split_sides(g: &MajorityGraph, x: CandidateId, block: &[CandidateId]) -> (Vec<CandidateId>, Vec<CandidateId>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &z in block {
        if z == x {
            continue;
        }
        if g.margin(z, x) > 0 {
            left.push(z);
        } else {
            right.push(z);
        }
    }
    (left, right)
}

/// Tests whether `x` is a good (alpha, beta)-non-dirty candidate of `block`.
pub fn good_ab_candidate(x: CandidateId, block: &[CandidateId], g: &MajorityGraph) -> Result<Option<NonDirtyCert>> {
    let k = block.len();
    if k < 3 {
        return input(format!("block of size {k} is below 3; use the threshold base case"));
    }
    if !block.contains(&x) {
        return input(format!("candidate {x} is not in the block"));
    }
    let (a, b) = scaled_alpha_beta(g, x, block);
    let m = g.m() as i128;
    if !ab_certifies(a, b, m, k as i128) {
        return Ok(None);
    }
    let (left, right) = split_sides(g, x, block);
    Ok(Some(NonDirtyCert {
        candidate: x,
        alpha: Ratio::new(a, 2 * m),
        beta: Ratio::new(b, 2 * m),
        left,
        right,
    }))
}

/// Candidate test used by the recursive splitter.
trait SplitTest {
    fn certifies(&self, g: &MajorityGraph, x: CandidateId, block: &[CandidateId]) -> bool;
}

/// `a_xz >= 3/4` or `a_zx >= 3/4` for every other member `z`, i.e. `2|D_xz| >= m`.
struct ThreeQuarter;

impl SplitTest for ThreeQuarter {
    fn certifies(&self, g: &MajorityGraph, x: CandidateId, block: &[CandidateId]) -> bool {
        block.iter().all(|&z| z == x || 2 * g.margin(x, z).abs() >= g.m())
    }
}

struct OptimizedAlphaBeta;

impl SplitTest for OptimizedAlphaBeta {
    fn certifies(&self, g: &MajorityGraph, x: CandidateId, block: &[CandidateId]) -> bool {
        let (a, b) = scaled_alpha_beta(g, x, block);
        ab_certifies(a, b, g.m() as i128, block.len() as i128)
    }
}

fn split(
    g: &MajorityGraph,
    block: Vec<CandidateId>,
    threshold: usize,
    test: &dyn SplitTest,
    order: ScanOrder,
) -> PartialResult {
    if block.len() <= threshold {
        return PartialResult::block(block, BlockStatus::Threshold);
    }
    let pivot = match order {
        ScanOrder::Ascending => block.iter().copied().find(|&x| test.certifies(g, x, &block)),
        ScanOrder::Descending => block.iter().rev().copied().find(|&x| test.certifies(g, x, &block)),
    };
    match pivot {
        Some(x) => {
            let (left, right) = split_sides(g, x, &block);
            PartialResult::join(
                split(g, left, threshold, test, order),
                x,
                split(g, right, threshold, test, order),
            )
        }
        None => PartialResult::block(block, BlockStatus::Unresolved),
    }
}

fn check_threshold(threshold: usize) -> Result<()> {
    if threshold < 2 {
        return input(format!("threshold must be at least 2, got {threshold}"));
    }
    Ok(())
}

/// Recursive 3/4-majority rule.
pub fn betzler34(g: &MajorityGraph, threshold: usize) -> Result<PartialResult> {
    check_threshold(threshold)?;
    Ok(split(g, (0..g.n()).collect(), threshold, &ThreeQuarter, ScanOrder::Ascending))
}

/// Recursive optimized (alpha, beta)-majority rule.
pub fn ab_majority(g: &MajorityGraph, threshold: usize) -> Result<PartialResult> {
    ab_majority_with_order(g, threshold, ScanOrder::Ascending)
}

/// (alpha, beta)-majority splitting of one block of candidates.
pub fn ab_majority_block(g: &MajorityGraph, block: Vec<CandidateId>, threshold: usize) -> Result<PartialResult> {
    check_threshold(threshold)?;
    Ok(split(g, block, threshold, &OptimizedAlphaBeta, ScanOrder::Ascending))
}

pub fn ab_majority_with_order(g: &MajorityGraph, threshold: usize, order: ScanOrder) -> Result<PartialResult> {
    check_threshold(threshold)?;
    Ok(split(g, (0..g.n()).collect(), threshold, &OptimizedAlphaBeta, order))
}
