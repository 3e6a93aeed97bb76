//! PrefLib strict-order files (`.soc` complete, `.soi` incomplete).
//!
//! Two header styles are accepted:
//!
//! ```text
//! # DATA TYPE: soc                 3
//! # NUMBER ALTERNATIVES: 3         1,a
//! # ALTERNATIVE NAME 1: a          2,b
//! ...                              3,c
//! 2: 1,2,3                         3,3,2
//! 1: 2,3,1                         2,1,2,3
//!                                  1,2,3,1
//! ```
//!
//! Alternatives are numbered from 1 in files and from 0 in memory.
//! Incomplete votes are completed by appending the missing alternatives in
//! ascending id order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::profile::{CandidateId, Ranking, VoteProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreflibKind {
    Soc,
    Soi,
}

impl FromStr for PreflibKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "soc" => Ok(PreflibKind::Soc),
            "soi" => Ok(PreflibKind::Soi),
            other => Err(Error::Input(format!("unsupported PrefLib kind '{other}' (expected soc or soi)"))),
        }
    }
}

impl PreflibKind {
    /// Kind from a file name's extension.
    pub fn from_path(path: &std::path::Path) -> Option<Self> {
        path.extension()?.to_str()?.parse().ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderLine {
    pub line: usize,
    pub multiplicity: u64,
    /// 1-based alternative ids as written.
    pub alternatives: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreflibDocument {
    pub kind: PreflibKind,
    /// `# KEY: value` headers in file order, including unknown keys.
    pub metadata: Vec<(String, String)>,
    pub names: BTreeMap<usize, String>,
    pub orders: Vec<OrderLine>,
}

/// A profile plus what the completion convention had to decide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedProfile {
    pub profile: VoteProfile,
    pub document: PreflibDocument,
    /// Pairs `(x, y)`, `x < y`, that were both missing from at least one
    /// vote, so their tally depends on the completion order.
    pub completed_pairs: Vec<(CandidateId, CandidateId)>,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn parse_num<T: FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.trim().parse().or_else(|_| err(line, format!("invalid {what} '{}'", s.trim())))
}

fn parse_ids(list: &str, line: usize) -> Result<Vec<usize>> {
    list.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(s, line, "alternative id"))
        .collect()
}

pub fn parse_document(text: &str, kind: PreflibKind) -> Result<PreflibDocument> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(&(_, first)) = lines.first() else {
        return err(1, "empty document");
    };
    let doc = if first.starts_with('#') { parse_modern(&lines, kind)? } else { parse_legacy(&lines, kind)? };
    validate(&doc)?;
    Ok(doc)
}

fn parse_modern(lines: &[(usize, &str)], kind: PreflibKind) -> Result<PreflibDocument> {
    let mut metadata = Vec::new();
    let mut names = BTreeMap::new();
    let mut declared_n: Option<usize> = None;
    let mut orders = Vec::new();
    for &(no, l) in lines {
        if let Some(h) = l.strip_prefix('#') {
            let Some((key, value)) = h.split_once(':') else {
                metadata.push((h.trim().to_string(), String::new()));
                continue;
            };
            let (key, value) = (key.trim(), value.trim());
            if let Some(id) = key.strip_prefix("ALTERNATIVE NAME") {
                names.insert(parse_num(id, no, "alternative id")?, value.to_string());
            } else if key == "NUMBER ALTERNATIVES" {
                declared_n = Some(parse_num(value, no, "alternative count")?);
            }
            metadata.push((key.to_string(), value.to_string()));
            continue;
        }
        let Some((count, list)) = l.split_once(':') else {
            return err(no, "expected '<multiplicity>: <ids>'");
        };
        orders.push(OrderLine { line: no, multiplicity: parse_num(count, no, "multiplicity")?, alternatives: parse_ids(list, no)? });
    }
    if names.is_empty() {
        let Some(n) = declared_n else {
            return err(1, "no ALTERNATIVE NAME or NUMBER ALTERNATIVES header");
        };
        names = (1..=n).map(|i| (i, i.to_string())).collect();
    } else if let Some(n) = declared_n {
        if n != names.len() {
            return err(1, format!("NUMBER ALTERNATIVES is {n} but {} names are listed", names.len()));
        }
    }
    Ok(PreflibDocument { kind, metadata, names, orders })
}

fn parse_legacy(lines: &[(usize, &str)], kind: PreflibKind) -> Result<PreflibDocument> {
    let mut it = lines.iter().copied();
    let (no, first) = it.next().expect("non-empty");
    let n: usize = parse_num(first, no, "alternative count")?;
    let mut names = BTreeMap::new();
    for _ in 0..n {
        let Some((no, l)) = it.next() else {
            return err(no, "document ends inside the alternative list");
        };
        let Some((id, name)) = l.split_once(',') else {
            return err(no, "expected '<id>,<name>'");
        };
        names.insert(parse_num(id, no, "alternative id")?, name.trim().to_string());
    }
    let Some((no, counts)) = it.next() else {
        return err(no, "missing voter count line");
    };
    let counts: Vec<&str> = counts.split(',').collect();
    if counts.len() != 3 {
        return err(no, "expected '<voters>,<vote count>,<unique orders>'");
    }
    let metadata = vec![
        ("NUMBER ALTERNATIVES".to_string(), n.to_string()),
        ("NUMBER VOTERS".to_string(), counts[0].trim().to_string()),
        ("NUMBER UNIQUE ORDERS".to_string(), counts[2].trim().to_string()),
    ];
    let mut orders = Vec::new();
    for (no, l) in it {
        let Some((count, list)) = l.split_once(',') else {
            return err(no, "expected '<multiplicity>,<ids>'");
        };
        orders.push(OrderLine { line: no, multiplicity: parse_num(count, no, "multiplicity")?, alternatives: parse_ids(list, no)? });
    }
    Ok(PreflibDocument { kind, metadata, names, orders })
}

fn validate(doc: &PreflibDocument) -> Result<()> {
    let n = doc.names.len();
    if doc.names.keys().copied().ne(1..=n) {
        return err(1, "alternative ids must be 1..n");
    }
    if doc.orders.is_empty() {
        return err(1, "document contains no orders");
    }
    for o in &doc.orders {
        if o.multiplicity == 0 {
            return err(o.line, "zero multiplicity");
        }
        let mut seen = BTreeSet::new();
        for &a in &o.alternatives {
            if !doc.names.contains_key(&a) {
                return err(o.line, format!("unknown alternative {a}"));
            }
            if !seen.insert(a) {
                return err(o.line, format!("alternative {a} repeated"));
            }
        }
        match doc.kind {
            PreflibKind::Soc if o.alternatives.len() != n => {
                return err(o.line, format!("complete order lists {} of {n} alternatives", o.alternatives.len()));
            }
            PreflibKind::Soi if o.alternatives.is_empty() => return err(o.line, "empty order"),
            _ => {}
        }
    }
    Ok(())
}

/// Parses and completes a document.
pub fn load_preflib(text: &str, kind: PreflibKind) -> Result<ParsedProfile> {
    let document = parse_document(text, kind)?;
    let n = document.names.len();
    let labels: Vec<String> = document.names.values().cloned().collect();
    let mut ambiguous = BTreeSet::new();
    let mut votes = Vec::with_capacity(document.orders.len());
    for o in &document.orders {
        let mut order: Vec<CandidateId> = o.alternatives.iter().map(|a| a - 1).collect();
        let mut listed = vec![false; n];
        order.iter().for_each(|&c| listed[c] = true);
        let missing: Vec<CandidateId> = (0..n).filter(|&c| !listed[c]).collect();
        for (i, &x) in missing.iter().enumerate() {
            for &y in &missing[i + 1..] {
                ambiguous.insert((x, y));
            }
        }
        order.extend(missing);
        let ranking = Ranking::new(order).map_err(|e| Error::Parse { line: o.line, message: e.to_string() })?;
        votes.push((ranking, o.multiplicity));
    }
    let profile = VoteProfile::with_labels(labels, votes)?;
    Ok(ParsedProfile { profile, document, completed_pairs: ambiguous.into_iter().collect() })
}

pub fn parse_preflib(text: &str, kind: PreflibKind) -> Result<VoteProfile> {
    Ok(load_preflib(text, kind)?.profile)
}

/// Canonical `.soc` text: modern headers, one line per stored vote.
pub fn serialize_instance(v: &VoteProfile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# DATA TYPE: soc");
    let _ = writeln!(s, "# NUMBER ALTERNATIVES: {}", v.n());
    let _ = writeln!(s, "# NUMBER VOTERS: {}", v.m());
    let _ = writeln!(s, "# NUMBER UNIQUE ORDERS: {}", v.votes().len());
    for (i, l) in v.labels().iter().enumerate() {
        let _ = writeln!(s, "# ALTERNATIVE NAME {}: {l}", i + 1);
    }
    for (r, k) in v.votes() {
        let ids: Vec<String> = r.as_slice().iter().map(|c| (c + 1).to_string()).collect();
        let _ = writeln!(s, "{k}: {}", ids.join(","));
    }
    s
}
