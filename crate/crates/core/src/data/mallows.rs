//! Mallows profiles via repeated insertion.
//!
//! The `i`-th candidate of the center (1-based) is inserted at position
//! `j in 1..=i` of the partial ranking with probability
//! `theta^(i-j) / (1 + theta + ... + theta^(i-1))`, which yields
//! `P(pi) = theta^d(pi, center) / Z`.
//!
//! Randomness comes from ChaCha8 keyed by `seed` (expanded with
//! `rand_core`'s `seed_from_u64`), with the instance index as the ChaCha
//! stream id, so batch instance `k` is reproducible on its own. Uniform
//! variates are `rand`'s 53-bit `f64` in `[0, 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::profile::{Ranking, VoteProfile};

#[derive(Debug, Clone, PartialEq)]
pub struct MallowsParams {
    pub n: usize,
    pub m: u64,
    pub theta: f64,
    pub center: Ranking,
    pub seed: u64,
}

impl MallowsParams {
    /// Parameters centered on the identity ranking.
    pub fn new(n: usize, m: u64, theta: f64, seed: u64) -> Result<Self> {
        let p = MallowsParams { n, m, theta, center: Ranking::identity(n), seed };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return input(format!("theta must lie in (0, 1], got {}", self.theta));
        }
        if self.n == 0 || self.m == 0 {
            return input("n and m must be positive");
        }
        if self.center.len() != self.n {
            return input("center ranking length differs from n");
        }
        Ok(())
    }

    /// Probability of choosing the better candidate of a pair, `1 / (1 + theta)`.
    pub fn agreement_probability(&self) -> f64 {
        1.0 / (1.0 + self.theta)
    }
}

/// Repeated-insertion sampler with precomputed insertion weights.
pub struct MallowsSampler {
    center: Vec<usize>,
    /// `powers[k] = theta^k`, built by repeated multiplication.
    powers: Vec<f64>,
    /// `totals[i] = powers[0] + ... + powers[i]`.
    totals: Vec<f64>,
}

impl MallowsSampler {
    pub fn new(params: &MallowsParams) -> Result<Self> {
        params.validate()?;
        let mut powers = Vec::with_capacity(params.n);
        let mut totals = Vec::with_capacity(params.n);
        let (mut p, mut t) = (1.0f64, 0.0f64);
        for _ in 0..params.n {
            powers.push(p);
            t += p;
            totals.push(t);
            p *= params.theta;
        }
        Ok(MallowsSampler { center: params.center.as_slice().to_vec(), powers, totals })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Ranking {
        let n = self.center.len();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        for (idx, &c) in self.center.iter().enumerate() {
            // idx = i - 1; inserting at 0-based slot s costs i - 1 - s inversions
            let mut u = rng.random::<f64>() * self.totals[idx];
            let mut slot = idx;
            for s in (0..=idx).rev() {
                let w = self.powers[idx - s];
                if u < w || s == 0 {
                    slot = s;
                    break;
                }
                u -= w;
            }
            order.insert(slot, c);
        }
        Ranking::new(order).expect("insertion produces a permutation")
    }
}

pub fn rng_for(seed: u64, instance: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance);
    rng
}

/// `m` independent draws as a profile of unit-multiplicity votes.
pub fn mallows_sample(params: &MallowsParams) -> Result<VoteProfile> {
    mallows_instance(params, 0)
}

/// Instance `index` of a batch sharing `params.seed`.
pub fn mallows_instance(params: &MallowsParams, index: u64) -> Result<VoteProfile> {
    let sampler = MallowsSampler::new(params)?;
    let mut rng = rng_for(params.seed, index);
    let votes = (0..params.m).map(|_| (sampler.sample(&mut rng), 1)).collect();
    VoteProfile::new(params.n, votes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_theta() {
        for theta in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(MallowsParams::new(4, 3, theta, 1).is_err());
        }
        assert!(MallowsParams::new(4, 3, 1.0, 1).is_ok());
        assert!((MallowsParams::new(4, 3, 0.5, 1).unwrap().agreement_probability() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed_and_index() {
        let p = MallowsParams::new(6, 5, 0.5, 42).unwrap();
        assert_eq!(mallows_instance(&p, 3).unwrap(), mallows_instance(&p, 3).unwrap());
        assert_ne!(mallows_instance(&p, 3).unwrap(), mallows_instance(&p, 4).unwrap());
    }

    #[test]
    fn tiny_theta_concentrates_on_center() {
        let p = MallowsParams { center: Ranking::new(vec![2, 0, 3, 1]).unwrap(), ..MallowsParams::new(4, 50, 1e-9, 7).unwrap() };
        let v = mallows_sample(&p).unwrap();
        assert!(v.votes().iter().all(|(r, _)| *r == p.center));
    }
}
