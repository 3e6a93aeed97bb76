//! Kendall-tau distance between rankings and against profiles.

use num_rational::Ratio;

use crate::error::{input, Result};
use crate::profile::{Ranking, VoteProfile};
use crate::tally::PairTally;

/// Number of candidate pairs ordered oppositely in `a` and `b`.
///
/// Runs in `O(n log n)`: `b` is rewritten in `a`'s coordinates and the
/// inversions of the resulting sequence are counted by merge sort.
pub fn kendall_tau(a: &Ranking, b: &Ranking) -> Result<u64> {
    if a.len() != b.len() {
        return input(format!("rankings have lengths {} and {}", a.len(), b.len()));
    }
    let pos_a = a.positions();
    let mut seq: Vec<usize> = b.as_slice().iter().map(|&c| pos_a[c]).collect();
    let mut buf = vec![0; seq.len()];
    Ok(count_inversions(&mut seq, &mut buf))
}

fn count_inversions(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (lo, hi) = seq.split_at_mut(mid);
        let (blo, bhi) = buf.split_at_mut(mid);
        count_inversions(lo, blo) + count_inversions(hi, bhi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Multiplicity-weighted sum of distances from `r` to every vote.
pub fn kendall_tau_profile(r: &Ranking, v: &VoteProfile) -> Result<u64> {
    if r.len() != v.n() {
        return input(format!("ranking has length {}, profile has n = {}", r.len(), v.n()));
    }
    v.votes()
        .iter()
        .try_fold(0u64, |acc, (vote, k)| Ok(acc + k * kendall_tau(r, vote)?))
}

/// Mean distance over all unordered pairs of vote instances.
///
/// Uses the tally identity `d_a = 2/(m(m-1)) * sum_{x<y} before[x][y]*before[y][x]`:
/// a pair of votes disagrees on `{x,y}` exactly when one is among the
/// `before[x][y]` votes and the other among the `before[y][x]` votes.
pub fn avg_distance(v: &VoteProfile) -> Result<Ratio<i128>> {
    let m = v.m() as i128;
    if m < 2 {
        return input("average distance needs at least two votes");
    }
    let t = PairTally::from_profile(v);
    let mut disagreements: i128 = 0;
    for x in 0..v.n() {
        for y in x + 1..v.n() {
            disagreements += t.before(x, y) as i128 * t.before(y, x) as i128;
        }
    }
    Ok(Ratio::new(2 * disagreements, m * (m - 1)))
}
