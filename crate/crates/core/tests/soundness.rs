//! Every rule against exhaustive median enumeration.

use kemeny_core::data::{mallows_instance, MallowsParams};
use kemeny_core::oracle::{certify, enumerate_medians};
use kemeny_core::{Instance, RuleParams, RuleRegistry, VoteProfile};
use proptest::prelude::*;

fn check_all(v: VoteProfile, threshold: usize) -> Result<(), String> {
    let ms = enumerate_medians(&v).map_err(|e| e.to_string())?;
    let inst = Instance::new(v.clone());
    let params = RuleParams::with_threshold(threshold).unwrap();
    for rule in RuleRegistry::builtin().iter() {
        let rep = rule.run(&inst, &params).map_err(|e| e.to_string())?;
        let verdict = certify(&rep, &ms);
        if !verdict.is_certified() {
            return Err(format!("{} t={} on {:?}: {:?}", rule.name(), threshold, v.votes(), verdict.violations));
        }
    }
    Ok(())
}

#[test]
fn mallows_sweep() {
    let mut checked = 0;
    for n in 3..=7 {
        for m in [2u64, 3, 4, 5, 6, 7] {
            for theta in [0.2, 0.5, 0.8, 1.0] {
                let p = MallowsParams::new(n, m, theta, 0x5eed + n as u64).unwrap();
                for k in 0..6 {
                    let v = mallows_instance(&p, k).unwrap();
                    for t in [2, 3] {
                        check_all(v.clone(), t).unwrap();
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

fn arb_profile() -> impl Strategy<Value = VoteProfile> {
    (3usize..=7).prop_flat_map(|n| {
        let vote = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(n), prop::collection::vec((vote, 1u64..=5), 1..=6))
    })
    .prop_map(|(n, votes)| {
        let refs: Vec<(&[usize], u64)> = votes.iter().map(|(o, w)| (o.as_slice(), *w)).collect();
        VoteProfile::from_orders(n, &refs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn arbitrary_profiles_are_certified(v in arb_profile(), t in 2usize..=4) {
        check_all(v, t).map_err(TestCaseError::fail)?;
    }
}
