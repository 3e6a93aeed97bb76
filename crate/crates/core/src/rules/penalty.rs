//! Exact minimization of the pairwise penalty
//! `F(t) = sum_z max(0, t * D_yz + (1 - t) * D_zx)` over `t in [0, 1]`.
//!
//! `F` is convex and piecewise linear, so its minimum is attained at `0`, `1`
//! or a kink `D_zx / (D_zx - D_yz)` of one of its terms. Every candidate
//! point is a rational `p / q` and `q * F(p / q)` is an integer, which keeps
//! the whole computation exact.

use num_rational::Ratio;

use crate::profile::CandidateId;
use crate::tally::MajorityGraph;

/// The affine pieces `(D_yz, D_zx)` of the penalty for one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenaltyFunction {
    terms: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PenaltyMinimum {
    pub value: Ratio<i128>,
    pub argmin: Ratio<i128>,
}

impl PenaltyFunction {
    pub fn new(terms: Vec<(i64, i64)>) -> Self {
        PenaltyFunction { terms }
    }

    pub fn for_pair(g: &MajorityGraph, x: CandidateId, y: CandidateId, zs: &[CandidateId]) -> Self {
        Self::new(zs.iter().map(|&z| (g.margin(y, z), g.margin(z, x))).collect())
    }

    pub fn terms(&self) -> &[(i64, i64)] {
        &self.terms
    }

    /// `q * F(p / q)` for `q > 0`.
    fn scaled_eval(&self, p: i128, q: i128) -> i128 {
        self.terms
            .iter()
            .map(|&(a, b)| (p * a as i128 + (q - p) * b as i128).max(0))
            .sum()
    }

    pub fn eval(&self, t: Ratio<i128>) -> Ratio<i128> {
        let (p, q) = (*t.numer(), *t.denom());
        Ratio::new(self.scaled_eval(p, q), q)
    }

    /// `{0, 1}` plus every interior kink, as unreduced `(p, q)` with `q > 0`.
    fn candidate_points(&self) -> Vec<(i128, i128)> {
        let mut pts = vec![(0, 1), (1, 1)];
        for &(a, b) in &self.terms {
            if (a < 0 && b > 0) || (a > 0 && b < 0) {
                let (p, q) = (b as i128, (b - a) as i128);
                pts.push(if q < 0 { (-p, -q) } else { (p, q) });
            }
        }
        pts
    }

    pub fn breakpoints(&self) -> Vec<Ratio<i128>> {
        let mut v: Vec<_> = self.candidate_points().into_iter().map(|(p, q)| Ratio::new(p, q)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Minimum value and the smallest minimizer.
    pub fn minimize(&self) -> PenaltyMinimum {
        let (value, argmin) = self.minimize_raw();
        PenaltyMinimum {
            value: Ratio::new(value.0, value.1),
            argmin: Ratio::new(argmin.0, argmin.1),
        }
    }

    /// Whether `threshold > min F`, without building reduced fractions.
    pub fn exceeded_by(&self, threshold: i64) -> bool {
        let ((num, den), _) = self.minimize_raw();
        threshold as i128 * den > num
    }

    fn minimize_raw(&self) -> ((i128, i128), (i128, i128)) {
        let mut best: Option<((i128, i128), (i128, i128))> = None;
        for (p, q) in self.candidate_points() {
            let v = self.scaled_eval(p, q);
            let better = match best {
                None => true,
                Some(((bv, bq), (bp, bpq))) => {
                    let lhs = v * bq;
                    let rhs = bv * q;
                    lhs < rhs || (lhs == rhs && p * bpq < bp * q)
                }
            };
            if better {
                best = Some(((v, q), (p, q)));
            }
        }
        best.expect("candidate set always contains 0 and 1")
    }
}

/// Minimum of the penalty for the ordered pair `(x, y)` over the filtered set `zs`.
pub fn minimize_pairwise_penalty(
    x: CandidateId,
    y: CandidateId,
    zs: &[CandidateId],
    g: &MajorityGraph,
) -> PenaltyMinimum {
    debug_assert!(!zs.contains(&x) && !zs.contains(&y));
    PenaltyFunction::for_pair(g, x, y, zs).minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::VoteProfile;

    fn r(p: i128, q: i128) -> Ratio<i128> {
        Ratio::new(p, q)
    }

    #[test]
    fn empty_set_is_zero_at_zero() {
        let f = PenaltyFunction::new(vec![]);
        assert_eq!(f.minimize(), PenaltyMinimum { value: r(0, 1), argmin: r(0, 1) });
    }

    #[test]
    fn single_kink() {
        // max(0, t - (1 - t)) = max(0, 2t - 1)
        let f = PenaltyFunction::new(vec![(1, -1)]);
        assert_eq!(f.breakpoints(), vec![r(0, 1), r(1, 2), r(1, 1)]);
        assert_eq!(f.eval(r(1, 1)), r(1, 1));
        assert_eq!(f.minimize(), PenaltyMinimum { value: r(0, 1), argmin: r(0, 1) });
    }

    #[test]
    fn e1_pair_ab() {
        let g = MajorityGraph::from_profile(&VoteProfile::from_orders(3, &[(&[0, 1, 2], 2), (&[1, 2, 0], 1)]).unwrap());
        let f = PenaltyFunction::for_pair(&g, 0, 1, &[2]);
        assert_eq!(f.terms(), &[(3, -1)]);
        assert_eq!(f.breakpoints(), vec![r(0, 1), r(1, 4), r(1, 1)]);
        let min = minimize_pairwise_penalty(0, 1, &[2], &g);
        assert_eq!(min, PenaltyMinimum { value: r(0, 1), argmin: r(0, 1) });
        // grid cross-check
        let grid_min = (0..=10_000).map(|i| f.eval(r(i, 10_000))).min().unwrap();
        assert_eq!(grid_min, min.value);
    }

    #[test]
    fn interior_minimum() {
        // max(0, -3t + 2(1-t)) + max(0, 4t - 3(1-t)): zero on [3/7, 2/5]? no: first is zero for t >= 2/5,
        // second zero for t <= 3/7, so F = 0 on [2/5, 3/7].
        let f = PenaltyFunction::new(vec![(-3, 2), (4, -3)]);
        let min = f.minimize();
        assert_eq!(min.value, r(0, 1));
        assert_eq!(min.argmin, r(2, 5));
        // strictly positive everywhere
        let f = PenaltyFunction::new(vec![(-1, 3), (5, -1), (2, 2)]);
        let min = f.minimize();
        let grid_min = (0..=1000).map(|i| f.eval(r(i, 1000))).min().unwrap();
        assert!(min.value <= grid_min);
        assert!(f.exceeded_by(3) == (Ratio::from_integer(3) > min.value));
    }
}
