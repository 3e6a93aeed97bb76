use std::fs;

use kemeny_core::data::{mallows_instance, serialize_instance, ReportJson, SummaryRow};
use kemeny_core::oracle::{certify, enumerate_medians, Violation};
use kemeny_core::{Instance, ReductionReport, RuleParams, RuleRegistry};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Format, ReduceArgs, SampleArgs, StatsArgs, VerifyArgs};
use crate::error::CliError;
use crate::input::{
    load_file, load_sources, mallows_params, rule_params, selected_rules, write_output, LoadedInstance,
};

#[derive(Serialize)]
struct InstanceJson<'a> {
    name: &'a str,
    n: usize,
    m: u64,
    labels: &'a [String],
    /// Pairs whose order was filled in by completing incomplete votes.
    completed_pairs: Vec<[&'a str; 2]>,
}

impl<'a> InstanceJson<'a> {
    fn new(inst: &'a LoadedInstance) -> Self {
        let v = &inst.profile;
        InstanceJson {
            name: &inst.name,
            n: v.n(),
            m: v.m(),
            labels: v.labels(),
            completed_pairs: inst.completed_pairs.iter().map(|&(x, y)| [v.label(x), v.label(y)]).collect(),
        }
    }
}

#[derive(Serialize)]
struct ReduceOutput<'a> {
    instance: InstanceJson<'a>,
    reports: Vec<ReportJson>,
}

fn run_rules(
    registry: &RuleRegistry,
    names: &[&str],
    instance: &Instance,
    params: &RuleParams,
) -> Result<Vec<ReductionReport>, CliError> {
    names.iter().map(|&name| Ok(registry.resolve(name)?.run(instance, params)?)).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

pub fn reduce(args: &ReduceArgs) -> Result<(), CliError> {
    let registry = RuleRegistry::builtin();
    let names = selected_rules(&registry, &args.rules)?;
    let params = rule_params(&args.rules)?;
    let loaded = load_file(&args.file)?;
    let instance = Instance::new(loaded.profile.clone());
    let reports = run_rules(&registry, &names, &instance, &params).map_err(|e| match e {
        CliError::Core { source, path: None } => CliError::at(&args.file)(source),
        other => other,
    })?;
    let labels = loaded.profile.labels();
    let out = ReduceOutput {
        instance: InstanceJson::new(&loaded),
        reports: reports.iter().map(|r| ReportJson::new(r, labels, !args.no_timing)).collect(),
    };
    write_output(args.out.as_ref(), &to_json(&out))
}

pub fn stats(args: &StatsArgs) -> Result<(), CliError> {
    let registry = RuleRegistry::builtin();
    let names = selected_rules(&registry, &args.rules)?;
    let params = rule_params(&args.rules)?;
    let instances = load_sources(&args.source)?;
    let timing = !args.no_timing;

    let per_instance: Vec<Vec<SummaryRow>> = instances
        .par_iter()
        .map(|inst| {
            let instance = Instance::new(inst.profile.clone());
            let medians = if args.certify { Some(enumerate_medians(&inst.profile)?) } else { None };
            let reports = run_rules(&registry, &names, &instance, &params)?;
            Ok(reports
                .iter()
                .map(|r| {
                    let mut row = SummaryRow::from_report(&inst.name, inst.theta, r, timing);
                    row.certified = medians.as_ref().map(|ms| certify(r, ms).is_certified());
                    row
                })
                .collect())
        })
        .collect::<Result<_, CliError>>()?;

    let mut rows: Vec<SummaryRow> = per_instance.into_iter().flatten().collect();
    let means: Vec<SummaryRow> = names
        .iter()
        .map(|&name| {
            let of_rule: Vec<&SummaryRow> = rows.iter().filter(|r| r.rule == name).collect();
            SummaryRow::mean(name, &of_rule)
        })
        .collect();
    rows.extend(means);

    let text = match args.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row).map_err(|e| CliError::Usage(format!("csv: {e}")))?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
    };
    write_output(args.out.as_ref(), &text)
}

pub fn sample(args: &SampleArgs) -> Result<(), CliError> {
    let params = mallows_params(&args.mallows)?;
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io { source, path: args.out.clone() })?;
    let width = args.mallows.count.saturating_sub(1).to_string().len().max(3);
    let files: Vec<(std::path::PathBuf, String)> = (0..args.mallows.count)
        .into_par_iter()
        .map(|k| {
            let v = mallows_instance(&params, k)?;
            let path = args.out.join(format!("mallows-{k:0width$}.soc"));
            Ok((path, serialize_instance(&v)))
        })
        .collect::<Result<_, CliError>>()?;
    for (path, text) in &files {
        fs::write(path, text).map_err(|source| CliError::Io { source, path: path.clone() })?;
        println!("{}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct RuleVerdict {
    rule: &'static str,
    certified: bool,
    violations: Vec<Violation>,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    instance: InstanceJson<'a>,
    optimal_score: u64,
    medians: usize,
    results: Vec<RuleVerdict>,
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let registry = RuleRegistry::builtin();
    let names = selected_rules(&registry, &args.rules)?;
    let params = rule_params(&args.rules)?;
    let instances = load_sources(&args.source)?;

    let outputs: Vec<VerifyOutput> = instances
        .par_iter()
        .map(|inst| {
            let ms = enumerate_medians(&inst.profile)?;
            let instance = Instance::new(inst.profile.clone());
            let reports = run_rules(&registry, &names, &instance, &params)?;
            let results = names
                .iter()
                .zip(&reports)
                .map(|(&rule, r)| {
                    let verdict = certify(r, &ms);
                    RuleVerdict { rule, certified: verdict.is_certified(), violations: verdict.violations }
                })
                .collect();
            Ok(VerifyOutput {
                instance: InstanceJson::new(inst),
                optimal_score: ms.optimal_score,
                medians: ms.medians.len(),
                results,
            })
        })
        .collect::<Result<_, CliError>>()?;

    write_output(args.out.as_ref(), &to_json(&outputs))?;
    let violations: usize = outputs.iter().flat_map(|o| &o.results).map(|r| r.violations.len()).sum();
    if violations > 0 {
        return Err(CliError::Violations(violations));
    }
    Ok(())
}
