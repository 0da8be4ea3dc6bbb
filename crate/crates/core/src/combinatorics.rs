//! Exact integer combinatorics: binomial coefficients, colexicographic
//! ranking and unranking of k-subsets, k-subset enumeration, and the
//! profile-maximizer scan.
//!
//! Everything here is exact 64-bit arithmetic with mandatory overflow
//! detection. The practical parameter ceiling is `t <= 30`: every binomial
//! on at most 30 elements fits a `u64` (`C(30,15) = 155117520`), and far
//! larger arguments are accepted as long as the results stay in range.

use crate::error::{Error, Result};
use crate::subset::IndexSubset;

/// `C(n, k)` as an exact integer; `0` when `k > n`.
///
/// Overflow of the 64-bit range is reported as [`Error::Overflow`], never
/// wrapped.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    // Each intermediate value equals C(n-k+i, i), which is at most the final
    // result, so checking the running value against u64::MAX suffices.
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::overflow(format!("C({n},{k}) exceeds 64 bits")));
        }
    }
    Ok(acc as u64)
}

/// Rank of a k-subset among all k-subsets of its ground set, in
/// colexicographic order.
///
/// For sorted elements `s_0 < s_1 < .. < s_{k-1}` the rank is
/// `sum_i C(s_i, i+1)`; it does not depend on the ground-set size, which is
/// why colex is the canonical subset-to-index bijection here.
pub fn rank_colex(s: &IndexSubset) -> Result<u64> {
    let mut rank: u64 = 0;
    for (i, e) in s.iter().enumerate() {
        let term = binomial(e as u64, i as u64 + 1)?;
        rank = rank
            .checked_add(term)
            .ok_or_else(|| Error::overflow(format!("colex rank of {s}")))?;
    }
    Ok(rank)
}

/// Inverse of [`rank_colex`]: the k-subset of `{0..t-1}` with the given
/// colexicographic rank.
pub fn unrank_colex(rank: u64, k: usize, t: usize) -> Result<IndexSubset> {
    let total = binomial(t as u64, k as u64)?;
    if rank >= total {
        return Err(Error::domain(format!(
            "rank {rank} out of range for C({t},{k}) = {total}"
        )));
    }
    let mut s = IndexSubset::empty(t);
    let mut rem = rank;
    let mut bound = t as u64;
    for i in (1..=k as u64).rev() {
        // Largest c with C(c, i) <= rem.
        let mut c = i - 1;
        let mut best = 0; // C(i-1, i) = 0
        let mut next = c + 1;
        while next < bound {
            let v = binomial(next, i)?;
            if v > rem {
                break;
            }
            c = next;
            best = v;
            next += 1;
        }
        rem -= best;
        bound = c;
        s.insert(c as usize)?;
    }
    Ok(s)
}

/// Iterator over all k-subsets of `{0..t-1}` in colexicographic order.
///
/// The iteration index equals [`rank_colex`] of the yielded subset.
pub struct SubsetIter {
    t: usize,
    current: Option<Vec<usize>>,
}

impl SubsetIter {
    pub fn new(t: usize, k: usize) -> Self {
        let current = if k <= t { Some((0..k).collect()) } else { None };
        SubsetIter { t, current }
    }
}

impl Iterator for SubsetIter {
    type Item = IndexSubset;

    fn next(&mut self) -> Option<IndexSubset> {
        let cur = self.current.as_mut()?;
        let out = IndexSubset::from_elements(self.t, cur.iter().copied())
            .expect("iterator state stays within the ground set");
        // Colex successor: bump the first element not followed by its
        // immediate successor, reset the prefix to 0..i-1.
        let k = cur.len();
        let mut advanced = false;
        for i in 0..k {
            let next_val = cur[i] + 1;
            let limit = if i + 1 < k { cur[i + 1] } else { self.t };
            if next_val < limit {
                cur[i] = next_val;
                for (j, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

/// All k-subsets of `{0..t-1}` in colexicographic order.
pub fn k_subsets(t: usize, k: usize) -> SubsetIter {
    SubsetIter::new(t, k)
}

/// All `x` in `[r, t-w]` attaining the maximum of `C(x,r) * C(t-x,w)`,
/// in ascending order. Never empty for valid parameters.
pub fn profile_maximizers(t: usize, r: usize, w: usize) -> Result<Vec<usize>> {
    if r < 1 || w < 1 {
        return Err(Error::domain(format!("r = {r} and w = {w} must be >= 1")));
    }
    if t < r + w {
        return Err(Error::domain(format!("t = {t} must be at least r + w = {}", r + w)));
    }
    let mut best: u128 = 0;
    let mut arg = Vec::new();
    for x in r..=t - w {
        let left = binomial(x as u64, r as u64)?;
        let right = binomial((t - x) as u64, w as u64)?;
        let product = left as u128 * right as u128;
        match product.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = product;
                arg.clear();
                arg.push(x);
            }
            std::cmp::Ordering::Equal => arg.push(x),
            std::cmp::Ordering::Less => {}
        }
    }
    Ok(arg)
}
