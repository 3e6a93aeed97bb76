//! Rankings and multiplicity-encoded voting profiles.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Dense candidate index in `0..n`.
pub type CandidateId = usize;

/// A strict total order over `0..n`, best candidate first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ranking(Vec<CandidateId>);

impl Ranking {
    pub fn new(order: Vec<CandidateId>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n {
                return input(format!("candidate {c} out of range for a ranking of length {n}"));
            }
            if std::mem::replace(&mut seen[c], true) {
                return input(format!("candidate {c} appears twice in ranking"));
            }
        }
        Ok(Ranking(order))
    }

    pub fn identity(n: usize) -> Self {
        Ranking((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<CandidateId> {
        self.0
    }

    /// `positions()[c]` is the 0-based rank of candidate `c`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            pos[c] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        Ranking(self.0.iter().rev().copied().collect())
    }

    /// Renames every candidate `c` to `perm[c]`.
    pub fn relabeled(&self, perm: &[CandidateId]) -> Self {
        Ranking(self.0.iter().map(|&c| perm[c]).collect())
    }
}

/// A multiset of rankings over a common candidate set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteProfile {
    n: usize,
    labels: Vec<String>,
    votes: Vec<(Ranking, u64)>,
}

impl VoteProfile {
    /// Builds a profile with labels `"1".."n"`.
    pub fn new(n: usize, votes: Vec<(Ranking, u64)>) -> Result<Self> {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, votes)
    }

    pub fn with_labels(labels: Vec<String>, votes: Vec<(Ranking, u64)>) -> Result<Self> {
        let n = labels.len();
        if votes.is_empty() {
            return input("profile has no votes");
        }
        for (i, (r, mult)) in votes.iter().enumerate() {
            if r.len() != n {
                return input(format!("vote {i} ranks {} candidates, expected {n}", r.len()));
            }
            if *mult == 0 {
                return input(format!("vote {i} has zero multiplicity"));
            }
        }
        Ok(VoteProfile { n, labels, votes })
    }

    /// Convenience constructor from raw orders, used heavily in tests.
    pub fn from_orders(n: usize, votes: &[(&[CandidateId], u64)]) -> Result<Self> {
        let votes = votes
            .iter()
            .map(|(o, k)| Ok((Ranking::new(o.to_vec())?, *k)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, votes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of votes, counted with multiplicity.
    pub fn m(&self) -> u64 {
        self.votes.iter().map(|(_, k)| k).sum()
    }

    pub fn votes(&self) -> &[(Ranking, u64)] {
        &self.votes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, c: CandidateId) -> &str {
        &self.labels[c]
    }

    /// Every vote instance, multiplicities expanded.
    pub fn expanded(&self) -> impl Iterator<Item = &Ranking> {
        self.votes
            .iter()
            .flat_map(|(r, k)| std::iter::repeat_n(r, *k as usize))
    }

    /// Multiplies every multiplicity by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        VoteProfile {
            n: self.n,
            labels: self.labels.clone(),
            votes: self.votes.iter().map(|(r, m)| (r.clone(), m * k)).collect(),
        }
    }

    /// Renames candidate `c` to `perm[c]` in every vote and in the label table.
    pub fn relabeled(&self, perm: &[CandidateId]) -> Self {
        let mut labels = vec![String::new(); self.n];
        for (c, l) in self.labels.iter().enumerate() {
            labels[perm[c]] = l.clone();
        }
        VoteProfile {
            n: self.n,
            labels,
            votes: self.votes.iter().map(|(r, k)| (r.relabeled(perm), *k)).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        VoteProfile {
            n: self.n,
            labels: self.labels.clone(),
            votes: self.votes.iter().map(|(r, k)| (r.reversed(), *k)).collect(),
        }
    }
}
