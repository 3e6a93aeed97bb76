use std::collections::BTreeSet;

use kemeny_core::rules::{
    ab_majority, ab_majority_with_order, ab_mot, ab_mot_condition, ab_mot_trace, betzler34, combined_reduce,
    iterated_mot_trace, CombinedOptions, InferenceTable, ScanOrder,
};
use kemeny_core::{Instance, MajorityGraph, ReductionReport, RuleParams, RuleRegistry, SolvedRelation, VoteProfile};
use proptest::prelude::*;

fn arb_profile(max_n: usize) -> impl Strategy<Value = VoteProfile> {
    (3usize..=max_n).prop_flat_map(|n| {
        let vote = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(n), prop::collection::vec((vote, 1u64..=3), 1..=9))
    })
    .prop_map(|(n, votes)| {
        let refs: Vec<(&[usize], u64)> = votes.iter().map(|(o, w)| (o.as_slice(), *w)).collect();
        VoteProfile::from_orders(n, &refs).unwrap()
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// Order-independent content of a report, in candidate space relabeled by `perm`.
#[derive(Debug, PartialEq)]
struct Canonical {
    pairs: Vec<(usize, usize)>,
    positions: Vec<(usize, usize)>,
    positioned: BTreeSet<usize>,
    unresolved: BTreeSet<Vec<usize>>,
    rounds: usize,
}

fn canonical(r: &ReductionReport, perm: &[usize]) -> Canonical {
    let mut positions: Vec<_> = r.solved_positions.iter().map(|&(c, p)| (perm[c], p)).collect();
    positions.sort_unstable();
    Canonical {
        pairs: r.solved_pairs.relabeled(perm).pairs(),
        positions,
        positioned: r.positioned.iter().map(|&c| perm[c]).collect(),
        unresolved: r
            .partial
            .as_ref()
            .map(|p| p.relabeled(perm).unresolved_blocks())
            .unwrap_or_default(),
        rounds: r.iterations(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ab_majority_dominates_three_quarter_rule(v in arb_profile(9), t in 2usize..=4) {
        let g = MajorityGraph::from_profile(&v);
        let weak = betzler34(&g, t).unwrap().positioned();
        let strong = ab_majority(&g, t).unwrap().positioned();
        prop_assert!(weak.is_subset(&strong), "{weak:?} vs {strong:?}");
    }

    #[test]
    fn scan_order_does_not_change_certified_content(v in arb_profile(9), t in 2usize..=4) {
        let g = MajorityGraph::from_profile(&v);
        let asc = ab_majority_with_order(&g, t, ScanOrder::Ascending).unwrap();
        let desc = ab_majority_with_order(&g, t, ScanOrder::Descending).unwrap();
        prop_assert_eq!(asc.positioned(), desc.positioned());
        prop_assert_eq!(asc.unresolved_blocks(), desc.unresolved_blocks());
        if t == 2 {
            prop_assert_eq!(asc.to_relation(&g), desc.to_relation(&g));
            prop_assert_eq!(asc.certified_positions(&g), desc.certified_positions(&g));
        }
    }

    #[test]
    fn ab_mot_passes_only_grow(v in arb_profile(9)) {
        let g = MajorityGraph::from_profile(&v);
        let trace = ab_mot_trace(&g, SolvedRelation::empty(v.n())).unwrap();
        for w in trace.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
            // a pair certified against W_k stays certified against W_(k+1)
            for x in 0..v.n() {
                for y in 0..v.n() {
                    if x != y && ab_mot_condition(&g, &w[0], x, y) {
                        prop_assert!(ab_mot_condition(&g, &w[1], x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn inference_sets_shrink(v in arb_profile(8)) {
        let table = InferenceTable::build(&v);
        let trace = iterated_mot_trace(&v).unwrap();
        let mut prev = SolvedRelation::empty(v.n());
        for next in &trace {
            prop_assert!(prev.is_subset(next));
            for u in 0..v.n() {
                for w in 0..v.n() {
                    if u == w {
                        continue;
                    }
                    let before = table.filtered(&prev, u, w);
                    for (z, k) in table.filtered(next, u, w) {
                        prop_assert!(before.get(&z).is_some_and(|&b| b >= k));
                    }
                }
            }
            prev = next.clone();
        }
    }

    #[test]
    fn duplication_and_relabeling_are_invisible(
        (v, perm) in arb_profile(8).prop_flat_map(|v| { let n = v.n(); (Just(v), arb_perm(n)) }),
        k in 2u64..=3,
    ) {
        let registry = RuleRegistry::builtin();
        let params = RuleParams::default();
        let id: Vec<usize> = (0..v.n()).collect();
        let variants = [
            (Instance::new(v.scaled(k)), id.clone()),
            (Instance::new(v.relabeled(&perm)), id.clone()),
            (Instance::new(v.scaled(k).relabeled(&perm)), id.clone()),
        ];
        for rule in registry.iter() {
            let base = rule.run(&Instance::new(v.clone()), &params).unwrap();
            prop_assert_eq!(canonical(&base, &id), canonical(&rule.run(&variants[0].0, &params).unwrap(), &variants[0].1));
            let moved = canonical(&base, &perm);
            prop_assert_eq!(&moved, &canonical(&rule.run(&variants[1].0, &params).unwrap(), &variants[1].1), "{}", rule.name());
            prop_assert_eq!(&moved, &canonical(&rule.run(&variants[2].0, &params).unwrap(), &variants[2].1), "{}", rule.name());
        }
    }

    #[test]
    fn combined_contains_its_parts(v in arb_profile(9), t in 2usize..=3) {
        let g = MajorityGraph::from_profile(&v);
        let rep = combined_reduce(&g, &CombinedOptions { threshold: t, refine: true }).unwrap();
        prop_assert!(ab_mot(&g).unwrap().is_subset(&rep.solved_pairs));
        let split = ab_majority(&g, t).unwrap();
        let fixed: Vec<(usize, usize)> = split.fixed_positions();
        for (c, _) in fixed {
            for z in 0..v.n() {
                prop_assert!(z == c || rep.solved_pairs.decides(c, z));
            }
        }
        prop_assert!(split.positioned().is_subset(&rep.positioned));
    }
}
