//! Pairwise before-counts and the weighted majority graph in count scale.

use crate::error::{input, Result};
use crate::profile::{CandidateId, VoteProfile};

/// `before(x, y)` is the number of votes, with multiplicity, ranking `x` ahead of `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTally {
    n: usize,
    m: u64,
    before: Vec<u64>,
}

impl PairTally {
    pub fn from_profile(v: &VoteProfile) -> Self {
        let n = v.n();
        let mut before = vec![0u64; n * n];
        for (vote, k) in v.votes() {
            let order = vote.as_slice();
            for (i, &x) in order.iter().enumerate() {
                for &y in &order[i + 1..] {
                    before[x * n + y] += k;
                }
            }
        }
        PairTally { n, m: v.m(), before }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn before(&self, x: CandidateId, y: CandidateId) -> u64 {
        self.before[x * self.n + y]
    }
}

/// Antisymmetric integer margins `D[x][y] = before[x][y] - before[y][x]`.
///
/// The normalized margin is `D / m`. After solved arcs are fixed to `±m`
/// the matrix is a general weighted tournament and need not come from any
/// profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityGraph {
    n: usize,
    m: i64,
    margin: Vec<i64>,
}

impl MajorityGraph {
    pub fn from_tally(t: &PairTally) -> Self {
        let n = t.n();
        let mut margin = vec![0i64; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    margin[x * n + y] = t.before(x, y) as i64 - t.before(y, x) as i64;
                }
            }
        }
        MajorityGraph { n, m: t.m() as i64, margin }
    }

    pub fn from_profile(v: &VoteProfile) -> Self {
        Self::from_tally(&PairTally::from_profile(v))
    }

    /// Builds a weighted tournament directly from a margin matrix.
    pub fn from_margins(m: i64, rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if m < 1 {
            return input("scale m must be positive");
        }
        let mut margin = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return input("margin matrix must be square");
            }
            margin.extend_from_slice(row);
        }
        for x in 0..n {
            if margin[x * n + x] != 0 {
                return input(format!("diagonal entry {x} is non-zero"));
            }
            for y in 0..n {
                let d = margin[x * n + y];
                if d != -margin[y * n + x] {
                    return input(format!("margins ({x},{y}) are not antisymmetric"));
                }
                if d.abs() > m {
                    return input(format!("margin ({x},{y}) = {d} exceeds m = {m}"));
                }
            }
        }
        Ok(MajorityGraph { n, m, margin })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    #[inline]
    pub fn margin(&self, x: CandidateId, y: CandidateId) -> i64 {
        self.margin[x * self.n + y]
    }

    /// Sets `D[x][y] = m` and `D[y][x] = -m`.
    pub fn fix_arc(&mut self, x: CandidateId, y: CandidateId) {
        let n = self.n;
        self.margin[x * n + y] = self.m;
        self.margin[y * n + x] = -self.m;
    }

    /// Weight of placing `x` before `y` in a ranking, in half-vote units:
    /// `m - D[x][y]`, i.e. twice the number of votes disagreeing.
    #[inline]
    pub fn disagreement(&self, x: CandidateId, y: CandidateId) -> i64 {
        self.m - self.margin(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> VoteProfile {
        VoteProfile::from_orders(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]).unwrap()
    }

    #[test]
    fn tally_counts_e1() {
        let t = PairTally::from_profile(&e1());
        assert_eq!((t.before(0, 1), t.before(1, 0)), (2, 1));
        assert_eq!((t.before(1, 2), t.before(2, 1)), (3, 0));
        for x in 0..3 {
            assert_eq!(t.before(x, x), 0);
            for y in 0..3 {
                if x != y {
                    assert_eq!(t.before(x, y) + t.before(y, x), 3);
                }
            }
        }
    }

    #[test]
    fn unanimous_tally_is_zero_or_m() {
        let v = VoteProfile::from_orders(4, &[(&[2, 0, 3, 1], 5)]).unwrap();
        let t = PairTally::from_profile(&v);
        let pos = v.votes()[0].0.positions();
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    let expect = if pos[x] < pos[y] { 5 } else { 0 };
                    assert_eq!(t.before(x, y), expect);
                }
            }
        }
    }

    #[test]
    fn margins_e1() {
        let g = MajorityGraph::from_profile(&e1());
        assert_eq!(g.margin(0, 1), 1);
        assert_eq!(g.margin(0, 2), 1);
        assert_eq!(g.margin(1, 2), 3);
        assert!((0..3).all(|x| g.margin(x, x) == 0));
        let r = MajorityGraph::from_profile(&e1().reversed());
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(r.margin(x, y), -g.margin(x, y));
                if x != y {
                    assert_eq!(g.margin(x, y).rem_euclid(2), g.m() % 2);
                }
            }
        }
    }

    #[test]
    fn from_margins_validates() {
        assert!(MajorityGraph::from_margins(3, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(MajorityGraph::from_margins(3, vec![vec![0, 5], vec![-5, 0]]).is_err());
        assert!(MajorityGraph::from_margins(3, vec![vec![1, 0], vec![0, 0]]).is_err());
        let g = MajorityGraph::from_margins(3, vec![vec![0, 3], vec![-3, 0]]).unwrap();
        assert_eq!(g.disagreement(0, 1), 0);
        assert_eq!(g.disagreement(1, 0), 6);
    }
}
