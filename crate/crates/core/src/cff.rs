//! Cover-free family instances, the optimal construction, and exhaustive
//! verification.
//!
//! An `(r,w;d)`-cover-free family over `n` points with `t` blocks requires,
//! for every pair of disjoint index sets `L` (size `r`) and `M` (size `w`),
//! that the intersection of the `L`-blocks keeps at least `d` points outside
//! the union of the `M`-blocks. [`verify_cff`] checks that residual for every
//! admissible pair; [`construct_optimal_cff`] builds the family on
//! `C(t, t')` points whose residuals are all exactly `d`.

use crate::combinatorics::{binomial, k_subsets, profile_maximizers, rank_colex};
use crate::error::{Error, Result};
use crate::subset::IndexSubset;

/// A labeled block system: `t` blocks, each a set of points in `{0..n-1}`.
///
/// Block order is significant and blocks may repeat as sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CffInstance {
    n: usize,
    blocks: Vec<IndexSubset>,
}

impl CffInstance {
    pub fn new(n: usize, blocks: Vec<IndexSubset>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::domain("an instance needs at least one block"));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.universe() != n {
                return Err(Error::domain(format!(
                    "block {i} lives on {} points, expected {n}",
                    b.universe()
                )));
            }
        }
        Ok(CffInstance { n, blocks })
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn t(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &IndexSubset {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[IndexSubset] {
        &self.blocks
    }

    /// The signature of a point: which blocks contain it, as a subset of
    /// `{0..t-1}`.
    pub fn point_signature(&self, point: usize) -> IndexSubset {
        let mut s = IndexSubset::empty(self.t());
        for (i, b) in self.blocks.iter().enumerate() {
            if b.contains(point) {
                s.insert(i).expect("block index is within 0..t");
            }
        }
        s
    }

    /// A copy with one point deleted from the ground set (later points are
    /// renumbered down by one).
    pub fn remove_point(&self, point: usize) -> Result<Self> {
        if point >= self.n {
            return Err(Error::domain(format!(
                "point {point} outside ground set of size {}",
                self.n
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                IndexSubset::from_elements(
                    self.n - 1,
                    b.iter()
                        .filter(|&p| p != point)
                        .map(|p| if p > point { p - 1 } else { p }),
                )
                .expect("shifted points stay in range")
            })
            .collect();
        CffInstance::new(self.n - 1, blocks)
    }
}

/// Parameters the optimal construction is instantiated with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremParams {
    pub r: usize,
    pub w: usize,
    pub t: usize,
    /// The chosen maximizer of `C(x,r) * C(t-x,w)` over `x in [r, t-w]`.
    pub t_prime: usize,
    /// `C(t - r - w, t_prime - r)`; the residual every admissible pair attains.
    pub d: u64,
    /// `C(t, t_prime)`; the optimal point count.
    pub t_double_prime: u64,
}

/// Derives the construction parameters for `(r, w, t)`.
///
/// `t_prime_choice` must be one of the profile maximizers; by default the
/// smallest maximizer is used. Ties are real: each maximizer yields a
/// distinct valid `(d, n)` pair.
pub fn theorem_params(
    r: usize,
    w: usize,
    t: usize,
    t_prime_choice: Option<usize>,
) -> Result<TheoremParams> {
    let maximizers = profile_maximizers(t, r, w)?;
    let t_prime = match t_prime_choice {
        Some(x) => {
            if !maximizers.contains(&x) {
                return Err(Error::domain(format!(
                    "t' = {x} is not a profile maximizer for (t={t}, r={r}, w={w}); valid: {maximizers:?}"
                )));
            }
            x
        }
        None => maximizers[0],
    };
    let d = binomial((t - r - w) as u64, (t_prime - r) as u64)?;
    let t_double_prime = binomial(t as u64, t_prime as u64)?;
    Ok(TheoremParams {
        r,
        w,
        t,
        t_prime,
        d,
        t_double_prime,
    })
}

/// Verification mode: residuals at least `d`, or exactly `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    AtLeast,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// First violating pair in the canonical colex-major scan order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub left: IndexSubset,
    pub right: IndexSubset,
    /// The offending residual (for cover verification: the coverage count).
    pub residual: u64,
}

/// Outcome of an exhaustive scan; shared by [`verify_cff`] and
/// [`crate::biclique::verify_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub min_residual: u64,
    pub max_residual: u64,
    pub witness: Option<Witness>,
    pub pairs_checked: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn check_rwd(t: usize, r: usize, w: usize, d: u64) -> Result<()> {
    if r < 1 || w < 1 {
        return Err(Error::domain(format!("r = {r} and w = {w} must be >= 1")));
    }
    if d < 1 {
        return Err(Error::domain("d must be >= 1"));
    }
    if r + w > t {
        return Err(Error::domain(format!(
            "r + w = {} exceeds the block count t = {t}",
            r + w
        )));
    }
    Ok(())
}

/// `|(intersection of the L-blocks) \ (union of the M-blocks)|`.
///
/// `left` and `right` are disjoint, nonempty sets of block indices.
pub fn residual(f: &CffInstance, left: &IndexSubset, right: &IndexSubset) -> Result<u64> {
    let t = f.t();
    if left.universe() != t || right.universe() != t {
        return Err(Error::domain(format!(
            "index sets must live on the block indices 0..{t}"
        )));
    }
    if left.is_empty() || right.is_empty() {
        return Err(Error::domain("L and M must be nonempty"));
    }
    if !left.is_disjoint(right) {
        return Err(Error::domain("L and M must be disjoint"));
    }
    let mut li = left.iter();
    let first = li.next().expect("L is nonempty");
    let mut acc = f.block(first).clone();
    for l in li {
        acc.intersect_with(f.block(l));
    }
    for m in right.iter() {
        acc.difference_with(f.block(m));
    }
    Ok(acc.len() as u64)
}

/// Exhaustively checks the cover-free property: every disjoint pair
/// (`|L| = r`, `|M| = w`) must have residual `>= d` ([`VerifyMode::AtLeast`])
/// or `== d` ([`VerifyMode::Exact`]).
///
/// The scan order is canonical: `L` ranges over r-subsets of the block
/// indices in colex order, and for each `L`, `M` ranges over w-subsets of
/// the complement in colex order. The witness is the first violation in that
/// order; min/max residuals cover the whole scan.
pub fn verify_cff(
    f: &CffInstance,
    r: usize,
    w: usize,
    d: u64,
    mode: VerifyMode,
) -> Result<VerificationReport> {
    let t = f.t();
    check_rwd(t, r, w, d)?;

    let mut min_residual = u64::MAX;
    let mut max_residual = 0u64;
    let mut witness: Option<Witness> = None;
    let mut pairs: u64 = 0;

    let violates = |res: u64| match mode {
        VerifyMode::AtLeast => res < d,
        VerifyMode::Exact => res != d,
    };

    for left in k_subsets(t, r) {
        // Hoist the r-fold intersection; it is shared by every companion M.
        let mut li = left.iter();
        let first = li.next().expect("r >= 1");
        let mut inter = f.block(first).clone();
        for l in li {
            inter.intersect_with(f.block(l));
        }

        let rest: Vec<usize> = left.complement().elements();
        for local in k_subsets(rest.len(), w) {
            let mut diff = inter.clone();
            let mut right = IndexSubset::empty(t);
            for e in local.iter() {
                let m = rest[e];
                right.insert(m).expect("complement index is within 0..t");
                diff.difference_with(f.block(m));
            }
            let res = diff.len() as u64;
            pairs += 1;
            min_residual = min_residual.min(res);
            max_residual = max_residual.max(res);
            if witness.is_none() && violates(res) {
                witness = Some(Witness {
                    left: left.clone(),
                    right,
                    residual: res,
                });
            }
        }
    }

    Ok(VerificationReport {
        verdict: if witness.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        min_residual,
        max_residual,
        witness,
        pairs_checked: pairs,
    })
}

/// Builds the optimal `(r,w;d)`-family on `n = C(t, t')` points.
///
/// Every point corresponds to one `t'`-subset `A` of the block indices
/// (point index = colex rank of `A`), and block `i` holds exactly the points
/// whose subset contains `i`. The result verifies exactly at the derived
/// `d = C(t-r-w, t'-r)`.
pub fn construct_optimal_cff(
    r: usize,
    w: usize,
    t: usize,
    t_prime_choice: Option<usize>,
) -> Result<(CffInstance, TheoremParams)> {
    let params = theorem_params(r, w, t, t_prime_choice)?;
    let n = usize::try_from(params.t_double_prime)
        .map_err(|_| Error::overflow(format!("point count C({t},{})", params.t_prime)))?;

    let mut blocks = vec![IndexSubset::empty(n); t];
    for (point, subset) in k_subsets(t, params.t_prime).enumerate() {
        debug_assert_eq!(rank_colex(&subset).unwrap(), point as u64);
        for i in subset.iter() {
            blocks[i].insert(point).expect("colex rank is below C(t,t')");
        }
    }
    let instance = CffInstance::new(n, blocks)?;
    Ok((instance, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn inst(n: usize, blocks: &[&[usize]]) -> CffInstance {
        let blocks = blocks
            .iter()
            .map(|b| IndexSubset::from_elements(n, b.iter().copied()).unwrap())
            .collect();
        CffInstance::new(n, blocks).unwrap()
    }

    fn idx(t: usize, elems: &[usize]) -> IndexSubset {
        IndexSubset::from_elements(t, elems.iter().copied()).unwrap()
    }

    /// Test-only oracle for the residual, on plain BTreeSets.
    fn residual_oracle(f: &CffInstance, left: &[usize], right: &[usize]) -> usize {
        let set = |i: usize| f.block(i).elements().into_iter().collect::<BTreeSet<_>>();
        let mut acc = set(left[0]);
        for &l in &left[1..] {
            acc = acc.intersection(&set(l)).copied().collect();
        }
        for &m in right {
            acc = acc.difference(&set(m)).copied().collect();
        }
        acc.len()
    }

    #[test]
    fn residual_examples() {
        let f = inst(3, &[&[0], &[1], &[2]]);
        assert_eq!(residual(&f, &idx(3, &[0]), &idx(3, &[1, 2])).unwrap(), 1);

        let f = inst(2, &[&[0, 1], &[0, 1]]);
        assert_eq!(residual(&f, &idx(2, &[0]), &idx(2, &[1])).unwrap(), 0);

        // Rejections.
        let f = inst(3, &[&[0], &[1], &[2]]);
        assert!(residual(&f, &idx(3, &[0]), &idx(3, &[0, 1])).is_err());
        assert!(residual(&f, &idx(3, &[]), &idx(3, &[1])).is_err());
        assert!(residual(&f, &idx(4, &[0]), &idx(4, &[1])).is_err());
    }

    #[test]
    fn residual_matches_set_oracle_on_construction() {
        let (f, p) = construct_optimal_cff(2, 1, 5, Some(4)).unwrap();
        for left in k_subsets(f.t(), 2) {
            for m in 0..f.t() {
                if left.contains(m) {
                    continue;
                }
                let right = idx(f.t(), &[m]);
                let got = residual(&f, &left, &right).unwrap();
                let want = residual_oracle(&f, &left.elements(), &[m]) as u64;
                assert_eq!(got, want);
                assert_eq!(got, p.d);
            }
        }
    }

    #[test]
    fn verify_singletons_pass() {
        let f = inst(3, &[&[0], &[1], &[2]]);
        let report = verify_cff(&f, 1, 2, 1, VerifyMode::AtLeast).unwrap();
        assert!(report.passed());
        assert_eq!(report.min_residual, 1);
        assert_eq!(report.pairs_checked, 3);
    }

    #[test]
    fn verify_duplicate_blocks_fail_with_witness() {
        let f = inst(2, &[&[0, 1], &[0, 1]]);
        let report = verify_cff(&f, 1, 1, 1, VerifyMode::AtLeast).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let witness = report.witness.unwrap();
        assert_eq!(witness.left.elements(), vec![0]);
        assert_eq!(witness.right.elements(), vec![1]);
        assert_eq!(witness.residual, 0);
        assert_eq!(report.pairs_checked, 2);
    }

    #[test]
    fn verify_rejects_bad_parameters() {
        let f = inst(3, &[&[0], &[1], &[2]]);
        assert!(verify_cff(&f, 2, 2, 1, VerifyMode::AtLeast).is_err());
        assert!(verify_cff(&f, 1, 1, 0, VerifyMode::AtLeast).is_err());
        assert!(verify_cff(&f, 0, 1, 1, VerifyMode::AtLeast).is_err());
    }

    #[test]
    fn theorem_params_examples() {
        let p = theorem_params(1, 1, 4, None).unwrap();
        assert_eq!((p.t_prime, p.d, p.t_double_prime), (2, 2, 6));

        let p = theorem_params(2, 1, 5, Some(3)).unwrap();
        assert_eq!((p.d, p.t_double_prime), (2, 10));

        // t = r + w: the scan interval is the single point x = r.
        for r in 1..=3 {
            for w in 1..=3 {
                let p = theorem_params(r, w, r + w, None).unwrap();
                assert_eq!(p.t_prime, r);
                assert_eq!(p.d, 1);
                assert_eq!(
                    p.t_double_prime,
                    binomial((r + w) as u64, r as u64).unwrap()
                );
            }
        }

        assert!(theorem_params(2, 1, 5, Some(2)).is_err());
    }

    #[test]
    fn construct_1_1_4() {
        let (f, p) = construct_optimal_cff(1, 1, 4, None).unwrap();
        assert_eq!(f.n(), 6);
        assert_eq!(f.t(), 4);
        assert_eq!(p.d, 2);
        for b in f.blocks() {
            assert_eq!(b.len(), 3); // C(3,1)
        }
        let report = verify_cff(&f, 1, 1, 2, VerifyMode::Exact).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn construct_2_1_5_tprime_4() {
        let (f, p) = construct_optimal_cff(2, 1, 5, Some(4)).unwrap();
        assert_eq!(f.n(), 5);
        assert_eq!(p.d, 1);
        for b in f.blocks() {
            assert_eq!(b.len(), 4); // C(4,3)
        }
        let report = verify_cff(&f, 2, 1, 1, VerifyMode::Exact).unwrap();
        assert!(report.passed());
        assert_eq!(report.pairs_checked, 30);
    }

    #[test]
    fn construct_1_2_3_gives_singletons() {
        let (f, p) = construct_optimal_cff(1, 2, 3, None).unwrap();
        assert_eq!(p.t_prime, 1);
        assert_eq!(p.d, 1);
        assert_eq!(f.n(), 3);
        for (i, b) in f.blocks().iter().enumerate() {
            assert_eq!(b.elements(), vec![i]);
        }
    }

    #[test]
    fn construct_counts_and_point_degrees() {
        for t in 2..=8usize {
            for r in 1..=2 {
                for w in 1..=2 {
                    if r + w > t {
                        continue;
                    }
                    let (f, p) = construct_optimal_cff(r, w, t, None).unwrap();
                    assert_eq!(f.n() as u64, p.t_double_prime);
                    let block_size =
                        binomial((t - 1) as u64, (p.t_prime - 1) as u64).unwrap() as usize;
                    for b in f.blocks() {
                        assert_eq!(b.len(), block_size);
                    }
                    for point in 0..f.n() {
                        assert_eq!(f.point_signature(point).len(), p.t_prime);
                    }
                }
            }
        }
    }

    #[test]
    fn removing_any_point_breaks_exactness() {
        let (f, p) = construct_optimal_cff(1, 1, 4, None).unwrap();
        for point in 0..f.n() {
            let damaged = f.remove_point(point).unwrap();
            let report = verify_cff(&damaged, 1, 1, p.d, VerifyMode::Exact).unwrap();
            assert_eq!(report.verdict, Verdict::Fail);
            assert_eq!(report.min_residual, p.d - 1);
        }
    }
}
