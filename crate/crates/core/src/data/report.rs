//! JSON reports and CSV summary rows.

use serde::{Serialize, Serializer};

use crate::partial::BlockStatus;
use crate::rules::{ReductionReport, RoundStats};

#[derive(Debug, Clone, Serialize)]
pub struct PositionJson {
    pub candidate: String,
    pub position: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockJson {
    pub members: Vec<String>,
    pub status: BlockStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartialJson {
    pub blocks: Vec<BlockJson>,
    pub fixed: Vec<String>,
}

/// Serializable view of a [`ReductionReport`] with candidates named by label.
/// Field order is the JSON key order.
#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub rule: String,
    pub n: usize,
    pub m: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<usize>,
    pub pairs_total: usize,
    pub pairs_solved: usize,
    pub positions_solved: usize,
    pub iterations: usize,
    pub rounds: Vec<RoundStats>,
    pub solved_pairs: Vec<[String; 2]>,
    pub solved_positions: Vec<PositionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial: Option<PartialJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl ReportJson {
    pub fn new(report: &ReductionReport, labels: &[String], timing: bool) -> Self {
        let name = |c: usize| labels[c].clone();
        let mut solved_positions: Vec<PositionJson> = report
            .solved_positions
            .iter()
            .map(|&(c, p)| PositionJson { candidate: name(c), position: p })
            .collect();
        solved_positions.sort_by_key(|p| p.position);
        ReportJson {
            rule: report.rule.clone(),
            n: report.n,
            m: report.m,
            threshold: report.threshold,
            pairs_total: report.pairs_total(),
            pairs_solved: report.pairs_solved(),
            positions_solved: report.positions_solved(),
            iterations: report.iterations(),
            rounds: report.rounds.clone(),
            solved_pairs: report.solved_pairs.pairs().into_iter().map(|(x, y)| [name(x), name(y)]).collect(),
            solved_positions,
            partial: report.partial.as_ref().map(|p| PartialJson {
                blocks: p
                    .blocks
                    .iter()
                    .map(|b| BlockJson { members: b.members.iter().map(|&c| name(c)).collect(), status: b.status })
                    .collect(),
                fixed: p.fixed.iter().map(|&c| name(c)).collect(),
            }),
            elapsed_ms: timing.then_some(report.elapsed.as_secs_f64() * 1e3),
        }
    }
}

/// Pretty-printed JSON for one report.
pub fn serialize_report(report: &ReductionReport, labels: &[String], timing: bool) -> String {
    serde_json::to_string_pretty(&ReportJson::new(report, labels, timing)).expect("report serializes")
}

/// Whole numbers as integers, so data rows read `6` rather than `6.0`.
fn compact<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        s.serialize_i64(*x as i64)
    } else {
        s.serialize_f64(*x)
    }
}

/// One CSV row per (instance, rule); aggregate rows use `instance = "mean"`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub instance: String,
    #[serde(serialize_with = "compact")]
    pub n: f64,
    #[serde(serialize_with = "compact")]
    pub m: f64,
    pub theta: Option<f64>,
    pub rule: String,
    #[serde(serialize_with = "compact")]
    pub pairs_total: f64,
    #[serde(serialize_with = "compact")]
    pub pairs_solved: f64,
    #[serde(serialize_with = "compact")]
    pub positions_solved: f64,
    #[serde(serialize_with = "compact")]
    pub rounds: f64,
    pub millis: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
}

impl SummaryRow {
    pub fn from_report(instance: &str, theta: Option<f64>, report: &ReductionReport, timing: bool) -> Self {
        SummaryRow {
            instance: instance.to_string(),
            n: report.n as f64,
            m: report.m as f64,
            theta,
            rule: report.rule.clone(),
            pairs_total: report.pairs_total() as f64,
            pairs_solved: report.pairs_solved() as f64,
            positions_solved: report.positions_solved() as f64,
            rounds: report.iterations() as f64,
            millis: timing.then_some(report.elapsed.as_secs_f64() * 1e3),
            certified: None,
        }
    }

    /// Column-wise mean of `rows`, all assumed to share `rule`.
    pub fn mean(rule: &str, rows: &[&SummaryRow]) -> Self {
        let k = rows.len().max(1) as f64;
        let avg = |f: &dyn Fn(&SummaryRow) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / k;
        let opt_avg = |f: &dyn Fn(&SummaryRow) -> Option<f64>| {
            let vals: Option<Vec<f64>> = rows.iter().map(|r| f(r)).collect();
            vals.map(|v| v.iter().sum::<f64>() / k)
        };
        SummaryRow {
            instance: "mean".to_string(),
            n: avg(&|r| r.n),
            m: avg(&|r| r.m),
            theta: opt_avg(&|r| r.theta),
            rule: rule.to_string(),
            pairs_total: avg(&|r| r.pairs_total),
            pairs_solved: avg(&|r| r.pairs_solved),
            positions_solved: avg(&|r| r.positions_solved),
            rounds: avg(&|r| r.rounds),
            millis: opt_avg(&|r| r.millis),
            certified: rows.iter().map(|r| r.certified).collect::<Option<Vec<bool>>>().map(|v| v.iter().all(|&c| c)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::SolvedRelation;
    use crate::rules::{Instance, RuleParams, RuleRegistry};
    use crate::VoteProfile;

    #[test]
    fn empty_relation_is_an_empty_array() {
        let s = serde_json::to_string(&SolvedRelation::empty(4)).unwrap();
        assert_eq!(s, "[]");
    }

    #[test]
    fn e1_combined_report() {
        let v = VoteProfile::from_orders(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]).unwrap();
        let inst = Instance::new(v.clone());
        let rep = RuleRegistry::builtin().resolve("combined").unwrap().run(&inst, &RuleParams::default()).unwrap();
        let text = serialize_report(&rep, v.labels(), false);
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["solved_pairs"].as_array().unwrap().len(), 3);
        assert_eq!(json["positions_solved"], 3);
        assert!(json.get("elapsed_ms").is_none());
        assert!(text.starts_with("{\n  \"rule\""));
    }

    #[test]
    fn mean_row() {
        let a = SummaryRow {
            instance: "a".into(),
            n: 4.0,
            m: 3.0,
            theta: Some(0.5),
            rule: "mot".into(),
            pairs_total: 6.0,
            pairs_solved: 2.0,
            positions_solved: 1.0,
            rounds: 1.0,
            millis: None,
            certified: Some(true),
        };
        let b = SummaryRow { pairs_solved: 4.0, ..a.clone() };
        let mean = SummaryRow::mean("mot", &[&a, &b]);
        assert_eq!(mean.pairs_solved, 3.0);
        assert_eq!(mean.millis, None);
        assert_eq!(mean.certified, Some(true));
        let json = serde_json::to_string(&mean).unwrap();
        assert!(json.contains(r#""pairs_solved":3,"#), "{json}");
    }
}
