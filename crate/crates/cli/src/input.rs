use std::fs;
use std::path::{Path, PathBuf};

use kemeny_core::data::{load_preflib, mallows_instance, MallowsParams, PreflibKind};
use kemeny_core::{CandidateId, RuleParams, RuleRegistry, VoteProfile};
use rayon::prelude::*;

use crate::args::{MallowsArgs, RuleArgs, SourceArgs};
use crate::error::CliError;

pub struct LoadedInstance {
    pub name: String,
    pub theta: Option<f64>,
    pub profile: VoteProfile,
    pub completed_pairs: Vec<(CandidateId, CandidateId)>,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { source, path: path.to_path_buf() })
}

pub fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { source, path: path.clone() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Unknown extensions are read as `.soc`.
pub fn load_file(path: &Path) -> Result<LoadedInstance, CliError> {
    let text = read_text(path)?;
    let kind = PreflibKind::from_path(path).unwrap_or(PreflibKind::Soc);
    let parsed = load_preflib(&text, kind).map_err(CliError::at(path))?;
    let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    Ok(LoadedInstance { name, theta: None, profile: parsed.profile, completed_pairs: parsed.completed_pairs })
}

pub fn mallows_params(args: &MallowsArgs) -> Result<MallowsParams, CliError> {
    let (Some(n), Some(m)) = (args.n, args.m) else {
        return Err(CliError::Usage("a Mallows batch needs both --n and --m".into()));
    };
    Ok(MallowsParams::new(n, m, args.theta, args.seed)?)
}

/// Files in the given order, or `count` Mallows instances in index order.
pub fn load_sources(src: &SourceArgs) -> Result<Vec<LoadedInstance>, CliError> {
    if !src.files.is_empty() {
        if src.mallows.n.is_some() || src.mallows.m.is_some() {
            return Err(CliError::Usage("give input files or --n/--m, not both".into()));
        }
        return src.files.par_iter().map(|p| load_file(p)).collect();
    }
    let params = mallows_params(&src.mallows)?;
    if src.mallows.count == 0 {
        return Err(CliError::Usage("empty batch: --count must be positive".into()));
    }
    (0..src.mallows.count)
        .into_par_iter()
        .map(|k| {
            Ok(LoadedInstance {
                name: format!("mallows-{k}"),
                theta: Some(params.theta),
                profile: mallows_instance(&params, k)?,
                completed_pairs: Vec::new(),
            })
        })
        .collect()
}

pub fn rule_params(args: &RuleArgs) -> Result<RuleParams, CliError> {
    let mut params = RuleParams::with_threshold(args.threshold)?;
    params.refine = !args.no_refine;
    Ok(params)
}

/// Selected rule names in the order given, or every built-in rule.
pub fn selected_rules(registry: &RuleRegistry, args: &RuleArgs) -> Result<Vec<&'static str>, CliError> {
    if args.rules.is_empty() {
        return Ok(registry.names());
    }
    args.rules.iter().map(|r| Ok(registry.resolve(r)?.name())).collect()
}
