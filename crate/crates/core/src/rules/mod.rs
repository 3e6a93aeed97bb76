//! Reduction rules and the registry that selects them by name.
//!
//! Every rule consumes an [`Instance`] and produces a [`ReductionReport`]
//! whose pairs and positions hold in every Kemeny median of the instance.
//! The rules themselves are plain functions in the submodules; the
//! [`ReductionRule`] implementations here adapt them to a common interface
//! so the CLI and the test suites can pick them at runtime.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::error::{input, Result};
use crate::partial::PartialResult;
use crate::profile::{CandidateId, VoteProfile};
use crate::relation::SolvedRelation;
use crate::tally::MajorityGraph;

pub mod ab_mot;
pub mod combined;
pub mod majority;
pub mod mot;
pub mod penalty;
pub mod positional;

pub use ab_mot::{ab_mot, ab_mot_condition, ab_mot_from, ab_mot_pass, ab_mot_trace};
pub use combined::{combined_reduce, update_graph, CombinedOptions};
pub use majority::{ab_majority, ab_majority_block, ab_majority_with_order, betzler34, good_ab_candidate, NonDirtyCert, ScanOrder};
pub use mot::{inference_sets, iterated_mot, iterated_mot_trace, mot, InferenceTable};
pub use penalty::{minimize_pairwise_penalty, PenaltyFunction, PenaltyMinimum};
pub use positional::positional_refine;

/// A profile together with its majority graph.
#[derive(Debug, Clone)]
pub struct Instance {
    pub profile: VoteProfile,
    pub graph: MajorityGraph,
}

impl Instance {
    pub fn new(profile: VoteProfile) -> Self {
        let graph = MajorityGraph::from_profile(&profile);
        Instance { profile, graph }
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleParams {
    /// Block size at or below which recursive splitting stops. At least 2.
    pub threshold: usize,
    /// Run the positional refinement inside the combined loop.
    pub refine: bool,
}

impl Default for RuleParams {
    fn default() -> Self {
        RuleParams { threshold: 2, refine: true }
    }
}

impl RuleParams {
    pub fn with_threshold(threshold: usize) -> Result<Self> {
        if threshold < 2 {
            return input(format!("threshold must be at least 2, got {threshold}"));
        }
        Ok(RuleParams { threshold, ..Self::default() })
    }
}

/// What a single round or pass of a rule added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct RoundStats {
    pub pairs_added: usize,
    pub positions_added: usize,
}

#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub rule: String,
    pub n: usize,
    pub m: i64,
    pub threshold: Option<usize>,
    /// Closed relation of certified pairs.
    pub solved_pairs: SolvedRelation,
    /// Candidates with the same absolute position in every median.
    pub solved_positions: Vec<(CandidateId, usize)>,
    /// Candidates counted as positioned. For splitting rules this includes
    /// members of threshold blocks.
    pub positioned: BTreeSet<CandidateId>,
    pub partial: Option<PartialResult>,
    pub rounds: Vec<RoundStats>,
    pub elapsed: Duration,
}

impl ReductionReport {
    pub fn pairs_total(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn pairs_solved(&self) -> usize {
        self.solved_pairs.len()
    }

    pub fn positions_solved(&self) -> usize {
        self.positioned.len()
    }

    pub fn iterations(&self) -> usize {
        self.rounds.len()
    }

    /// Builds a report for a rule that only emits pairs.
    pub(crate) fn from_relation(rule: &str, g: &MajorityGraph, solved: SolvedRelation, rounds: Vec<RoundStats>) -> Self {
        let solved_positions = fully_positioned(&solved);
        ReductionReport {
            rule: rule.to_string(),
            n: g.n(),
            m: g.m(),
            threshold: None,
            positioned: solved_positions.iter().map(|&(c, _)| c).collect(),
            solved_positions,
            solved_pairs: solved,
            partial: None,
            rounds,
            elapsed: Duration::ZERO,
        }
    }

    /// Builds a report for a recursive splitting rule.
    pub(crate) fn from_partial(rule: &str, g: &MajorityGraph, threshold: usize, partial: PartialResult) -> Self {
        let solved_pairs = partial.to_relation(g);
        let solved_positions = partial.certified_positions(g);
        let positioned = partial.positioned();
        ReductionReport {
            rule: rule.to_string(),
            n: g.n(),
            m: g.m(),
            threshold: Some(threshold),
            rounds: vec![RoundStats { pairs_added: solved_pairs.len(), positions_added: positioned.len() }],
            solved_pairs,
            solved_positions,
            positioned,
            partial: Some(partial),
            elapsed: Duration::ZERO,
        }
    }
}

/// Candidates related to every other candidate, with their position.
pub fn fully_positioned(closed: &SolvedRelation) -> Vec<(CandidateId, usize)> {
    let n = closed.n();
    (0..n)
        .filter_map(|x| {
            let before = closed.in_degree(x);
            (before + closed.out_degree(x) + 1 == n).then_some((x, before))
        })
        .collect()
}

/// A named reduction strategy.
pub trait ReductionRule: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn reduce(&self, instance: &Instance, params: &RuleParams) -> Result<ReductionReport>;

    /// `reduce` with wall-clock timing filled in.
    fn run(&self, instance: &Instance, params: &RuleParams) -> Result<ReductionReport> {
        let start = Instant::now();
        let mut report = self.reduce(instance, params)?;
        report.elapsed = start.elapsed();
        Ok(report)
    }
}

struct Betzler34;
struct AbMajority;
struct PositionalRefine;
struct Mot;
struct IteratedMot;
struct AbMot;
struct Combined;

impl ReductionRule for Betzler34 {
    fn name(&self) -> &'static str {
        "betzler34"
    }
    fn description(&self) -> &'static str {
        "3/4-majority rule with recursive splitting"
    }
    fn reduce(&self, inst: &Instance, params: &RuleParams) -> Result<ReductionReport> {
        let partial = betzler34(&inst.graph, params.threshold)?;
        Ok(ReductionReport::from_partial(self.name(), &inst.graph, params.threshold, partial))
    }
}

impl ReductionRule for AbMajority {
    fn name(&self) -> &'static str {
        "ab-majority"
    }
    fn description(&self) -> &'static str {
        "optimized (alpha, beta)-majority rule with recursive splitting"
    }
    fn reduce(&self, inst: &Instance, params: &RuleParams) -> Result<ReductionReport> {
        let partial = ab_majority(&inst.graph, params.threshold)?;
        Ok(ReductionReport::from_partial(self.name(), &inst.graph, params.threshold, partial))
    }
}

impl ReductionRule for PositionalRefine {
    fn name(&self) -> &'static str {
        "positional-refine"
    }
    fn description(&self) -> &'static str {
        "iterated (alpha, beta)-MOT followed by the position-bounded majority refinement"
    }
    fn reduce(&self, inst: &Instance, _: &RuleParams) -> Result<ReductionReport> {
        let base = ab_mot(&inst.graph)?;
        let refined = positional_refine(&inst.graph, &base)?;
        let rounds = vec![
            RoundStats { pairs_added: base.len(), positions_added: fully_positioned(&base).len() },
            RoundStats {
                pairs_added: refined.len() - base.len(),
                positions_added: fully_positioned(&refined).len() - fully_positioned(&base).len(),
            },
        ];
        Ok(ReductionReport::from_relation(self.name(), &inst.graph, refined, rounds))
    }
}

impl ReductionRule for Mot {
    fn name(&self) -> &'static str {
        "mot"
    }
    fn description(&self) -> &'static str {
        "single pass of the major order theorem"
    }
    fn reduce(&self, inst: &Instance, _: &RuleParams) -> Result<ReductionReport> {
        let solved = mot(&inst.profile)?;
        let rounds = vec![RoundStats { pairs_added: solved.len(), positions_added: fully_positioned(&solved).len() }];
        Ok(ReductionReport::from_relation(self.name(), &inst.graph, solved, rounds))
    }
}

impl ReductionRule for IteratedMot {
    fn name(&self) -> &'static str {
        "iterated-mot"
    }
    fn description(&self) -> &'static str {
        "major order theorem iterated with shrinking inference sets"
    }
    fn reduce(&self, inst: &Instance, _: &RuleParams) -> Result<ReductionReport> {
        let trace = iterated_mot_trace(&inst.profile)?;
        Ok(report_from_trace(self.name(), &inst.graph, trace))
    }
}

impl ReductionRule for AbMot {
    fn name(&self) -> &'static str {
        "ab-mot"
    }
    fn description(&self) -> &'static str {
        "iterated (alpha, beta)-MOT"
    }
    fn reduce(&self, inst: &Instance, _: &RuleParams) -> Result<ReductionReport> {
        let trace = ab_mot_trace(&inst.graph, SolvedRelation::empty(inst.n()))?;
        Ok(report_from_trace(self.name(), &inst.graph, trace))
    }
}

impl ReductionRule for Combined {
    fn name(&self) -> &'static str {
        "combined"
    }
    fn description(&self) -> &'static str {
        "fixpoint of (alpha, beta)-MOT, graph update and (alpha, beta)-majority"
    }
    fn reduce(&self, inst: &Instance, params: &RuleParams) -> Result<ReductionReport> {
        let opts = CombinedOptions { threshold: params.threshold, refine: params.refine };
        combined_reduce(&inst.graph, &opts)
    }
}

fn report_from_trace(rule: &str, g: &MajorityGraph, trace: Vec<SolvedRelation>) -> ReductionReport {
    let mut rounds = Vec::with_capacity(trace.len());
    let (mut pairs, mut positions) = (0, 0);
    for r in &trace {
        let p = fully_positioned(r).len();
        rounds.push(RoundStats { pairs_added: r.len() - pairs, positions_added: p - positions });
        pairs = r.len();
        positions = p;
    }
    let last = trace.into_iter().last().unwrap_or_else(|| SolvedRelation::empty(g.n()));
    ReductionReport::from_relation(rule, g, last, rounds)
}

/// Rules selectable by name.
pub struct RuleRegistry {
    rules: Vec<Box<dyn ReductionRule>>,
}

impl RuleRegistry {
    pub fn empty() -> Self {
        RuleRegistry { rules: Vec::new() }
    }

    /// All rules shipped with the crate, in canonical order.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Betzler34));
        r.register(Box::new(AbMajority));
        r.register(Box::new(PositionalRefine));
        r.register(Box::new(Mot));
        r.register(Box::new(IteratedMot));
        r.register(Box::new(AbMot));
        r.register(Box::new(Combined));
        r
    }

    /// Adds a rule, replacing any rule with the same name.
    pub fn register(&mut self, rule: Box<dyn ReductionRule>) {
        self.rules.retain(|r| r.name() != rule.name());
        self.rules.push(rule);
    }

    pub fn get(&self, name: &str) -> Option<&dyn ReductionRule> {
        self.rules.iter().find(|r| r.name() == name).map(|r| r.as_ref())
    }

    pub fn resolve(&self, name: &str) -> Result<&dyn ReductionRule> {
        match self.get(name) {
            Some(r) => Ok(r),
            None => input(format!("unknown rule '{name}'; available: {}", self.names().join(", "))),
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.rules.iter().map(|r| r.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ReductionRule> {
        self.rules.iter().map(|r| r.as_ref())
    }
}

impl Default for RuleRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
