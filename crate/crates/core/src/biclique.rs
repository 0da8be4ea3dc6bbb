//! The bi-intersection graph, d-biclique cover certificates, the
//! equivalence with cover-free families, and the counting lower bound.
//!
//! The bi-intersection graph on `t` elements is bipartite: one side holds
//! all r-subsets of `{0..t-1}`, the other all w-subsets, and an edge joins a
//! pair exactly when the subsets are disjoint. The graph is never
//! materialized — its edges stream from the definition and all of its
//! counting quantities are closed-form in `(t, r, w)`.
//!
//! A biclique is represented solely by its generator `A`: the maximal
//! biclique whose sides are the r-subsets of `A` and the w-subsets of the
//! complement of `A`. Any biclique of the graph extends to this form without
//! losing coverage, so certificates lose no generality.

use crate::cff::{CffInstance, Verdict, VerificationReport, VerifyMode, Witness};
use crate::combinatorics::{binomial, k_subsets};
use crate::error::{Error, Result};
use crate::subset::IndexSubset;

/// A multiset of biclique generators claimed to cover every edge `d` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliqueCoverCert {
    t: usize,
    r: usize,
    w: usize,
    d: u64,
    generators: Vec<IndexSubset>,
    rejected_points: usize,
}

impl BicliqueCoverCert {
    /// Validates parameter sanity and the generator size bounds
    /// `r <= |A| <= t - w` (outside those bounds one side of the biclique is
    /// empty).
    pub fn new(
        t: usize,
        r: usize,
        w: usize,
        d: u64,
        generators: Vec<IndexSubset>,
    ) -> Result<Self> {
        if r < 1 || w < 1 || d < 1 {
            return Err(Error::domain("r, w, d must all be >= 1"));
        }
        if r + w > t {
            return Err(Error::domain(format!(
                "r + w = {} exceeds t = {t}",
                r + w
            )));
        }
        for (j, a) in generators.iter().enumerate() {
            if a.universe() != t {
                return Err(Error::domain(format!(
                    "generator {j} lives on {} indices, expected {t}",
                    a.universe()
                )));
            }
            if a.len() < r || a.len() > t - w {
                return Err(Error::domain(format!(
                    "generator {j} has {} elements, outside [{r}, {}]",
                    a.len(),
                    t - w
                )));
            }
        }
        Ok(BicliqueCoverCert {
            t,
            r,
            w,
            d,
            generators,
            rejected_points: 0,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn w(&self) -> usize {
        self.w
    }
    pub fn d(&self) -> u64 {
        self.d
    }
    pub fn generators(&self) -> &[IndexSubset] {
        &self.generators
    }
    pub fn len(&self) -> usize {
        self.generators.len()
    }
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Points dropped by [`cover_from_cff`] because their signature could not
    /// generate a biclique. Zero for certificates built any other way.
    pub fn rejected_points(&self) -> usize {
        self.rejected_points
    }

    pub(crate) fn with_rejected(mut self, rejected: usize) -> Self {
        self.rejected_points = rejected;
        self
    }
}

/// Closed-form counting data of the bi-intersection graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub t: usize,
    pub r: usize,
    pub w: usize,
    /// `C(t,r) * C(t-r,w)`.
    pub edge_count: u64,
    /// Maximum edge count over bicliques: `max_x C(x,r) * C(t-x,w)`.
    pub max_biclique_edges: u64,
}

impl GraphStats {
    /// `ceil(d * edge_count / max_biclique_edges)` — no cover with fewer
    /// generators can supply the total demand.
    pub fn cover_lower_bound(&self, d: u64) -> Result<u64> {
        if d < 1 {
            return Err(Error::domain("d must be >= 1"));
        }
        let demand = d as u128 * self.edge_count as u128;
        let bound = demand.div_ceil(self.max_biclique_edges as u128);
        u64::try_from(bound)
            .map_err(|_| Error::overflow(format!("cover lower bound for d = {d}")))
    }
}

fn check_trw(t: usize, r: usize, w: usize) -> Result<()> {
    if r < 1 || w < 1 {
        return Err(Error::domain(format!("r = {r} and w = {w} must be >= 1")));
    }
    if r + w > t {
        return Err(Error::domain(format!(
            "t = {t} must be at least r + w = {}",
            r + w
        )));
    }
    Ok(())
}

/// Streams every edge of the bi-intersection graph exactly once, in the
/// canonical colex-major order: `L` over r-subsets in colex order, and for
/// each `L`, `M` over w-subsets of its complement in colex order.
pub fn enumerate_edges(t: usize, r: usize, w: usize) -> Result<EdgeIter> {
    check_trw(t, r, w)?;
    Ok(EdgeIter::new(t, r, w))
}

pub struct EdgeIter {
    t: usize,
    w: usize,
    outer: crate::combinatorics::SubsetIter,
    current: Option<(IndexSubset, Vec<usize>, crate::combinatorics::SubsetIter)>,
}

impl EdgeIter {
    fn new(t: usize, r: usize, w: usize) -> Self {
        EdgeIter {
            t,
            w,
            outer: k_subsets(t, r),
            current: None,
        }
    }
}

impl Iterator for EdgeIter {
    type Item = (IndexSubset, IndexSubset);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.current.is_none() {
                let left = self.outer.next()?;
                let rest = left.complement().elements();
                let inner = k_subsets(rest.len(), self.w);
                self.current = Some((left, rest, inner));
            }
            let (left, rest, inner) = self.current.as_mut().expect("just filled");
            match inner.next() {
                Some(local) => {
                    let right = IndexSubset::from_elements(
                        self.t,
                        local.iter().map(|e| rest[e]),
                    )
                    .expect("complement indices are within 0..t");
                    return Some((left.clone(), right));
                }
                None => self.current = None,
            }
        }
    }
}

/// Edge count and maximum biclique size, by full scan of the generator sizes.
pub fn graph_stats(t: usize, r: usize, w: usize) -> Result<GraphStats> {
    check_trw(t, r, w)?;
    let edges_l = binomial(t as u64, r as u64)?;
    let edges_m = binomial((t - r) as u64, w as u64)?;
    let edge_count = edges_l
        .checked_mul(edges_m)
        .ok_or_else(|| Error::overflow(format!("edge count of ({t},{r},{w})")))?;

    let mut max_biclique_edges = 0u64;
    for x in r..=t - w {
        let a = binomial(x as u64, r as u64)?;
        let b = binomial((t - x) as u64, w as u64)?;
        let size = a
            .checked_mul(b)
            .ok_or_else(|| Error::overflow(format!("biclique size at |A| = {x}")))?;
        max_biclique_edges = max_biclique_edges.max(size);
    }
    Ok(GraphStats {
        t,
        r,
        w,
        edge_count,
        max_biclique_edges,
    })
}

/// The counting lower bound `ceil(d * |E| / B)` on the size of any d-cover.
pub fn counting_lower_bound(t: usize, r: usize, w: usize, d: u64) -> Result<u64> {
    graph_stats(t, r, w)?.cover_lower_bound(d)
}

/// Checks whether every edge is covered at least (`AtLeast`) or exactly
/// (`Exact`) `d` times by the certificate's generators; generator `A` covers
/// edge `(L, M)` when `L` is inside `A` and `M` avoids `A`.
///
/// Same canonical scan order and report shape as [`crate::cff::verify_cff`];
/// the report's residual fields hold coverage counts.
pub fn verify_cover(cert: &BicliqueCoverCert, mode: VerifyMode) -> Result<VerificationReport> {
    // Re-validate sizes so certificates assembled by hand still get the
    // domain-error contract.
    for (j, a) in cert.generators.iter().enumerate() {
        if a.universe() != cert.t || a.len() < cert.r || a.len() > cert.t - cert.w {
            return Err(Error::domain(format!("generator {j} is malformed")));
        }
    }

    let d = cert.d;
    let violates = |count: u64| match mode {
        VerifyMode::AtLeast => count < d,
        VerifyMode::Exact => count != d,
    };

    let mut min_cover = u64::MAX;
    let mut max_cover = 0u64;
    let mut witness: Option<Witness> = None;
    let mut pairs = 0u64;

    for (left, right) in enumerate_edges(cert.t, cert.r, cert.w)? {
        let count = cert
            .generators
            .iter()
            .filter(|a| left.is_subset_of(a) && right.is_disjoint(a))
            .count() as u64;
        pairs += 1;
        min_cover = min_cover.min(count);
        max_cover = max_cover.max(count);
        if witness.is_none() && violates(count) {
            witness = Some(Witness {
                left,
                right,
                residual: count,
            });
        }
    }

    Ok(VerificationReport {
        verdict: if witness.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        min_residual: min_cover,
        max_residual: max_cover,
        witness,
        pairs_checked: pairs,
    })
}

/// The point-to-biclique direction of the equivalence: each point `x` of the
/// instance becomes the generator `S_x = { i : x in B_i }`.
///
/// Points whose signature falls outside the size bounds `[r, t-w]` cannot
/// generate a biclique; they are dropped and counted in
/// [`BicliqueCoverCert::rejected_points`] rather than reported as errors.
pub fn cover_from_cff(
    f: &CffInstance,
    r: usize,
    w: usize,
    d: u64,
) -> Result<BicliqueCoverCert> {
    let t = f.t();
    let mut generators = Vec::with_capacity(f.n());
    let mut rejected = 0usize;
    for point in 0..f.n() {
        let sig = f.point_signature(point);
        if sig.len() < r || sig.len() > t.saturating_sub(w) {
            rejected += 1;
        } else {
            generators.push(sig);
        }
    }
    Ok(BicliqueCoverCert::new(t, r, w, d, generators)?.with_rejected(rejected))
}

/// The biclique-to-point direction: one point per generator, where point `j`
/// lies in block `i` exactly when `i` is in `A_j`.
pub fn cff_from_cover(cert: &BicliqueCoverCert) -> CffInstance {
    let t = cert.t();
    let n = cert.len();
    let mut blocks = vec![IndexSubset::empty(n); t];
    for (j, a) in cert.generators().iter().enumerate() {
        for i in a.iter() {
            blocks[i].insert(j).expect("generator index is within 0..n");
        }
    }
    CffInstance::new(n, blocks).expect("t >= 1 is guaranteed by the certificate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cff::{construct_optimal_cff, residual, verify_cff};

    fn idx(t: usize, elems: &[usize]) -> IndexSubset {
        IndexSubset::from_elements(t, elems.iter().copied()).unwrap()
    }

    #[test]
    fn edge_enumeration_examples() {
        let edges: Vec<_> = enumerate_edges(2, 1, 1)
            .unwrap()
            .map(|(l, m)| (l.elements(), m.elements()))
            .collect();
        assert_eq!(edges, vec![(vec![0], vec![1]), (vec![1], vec![0])]);

        assert_eq!(enumerate_edges(4, 1, 1).unwrap().count(), 12);
        assert_eq!(enumerate_edges(5, 2, 1).unwrap().count(), 30);
        assert!(enumerate_edges(2, 2, 1).is_err());
    }

    #[test]
    fn edges_are_disjoint_and_unique() {
        use std::collections::HashSet;
        for (t, r, w) in [(5, 2, 2), (6, 1, 3), (7, 2, 1)] {
            let mut seen = HashSet::new();
            let mut count = 0u64;
            for (l, m) in enumerate_edges(t, r, w).unwrap() {
                assert!(l.is_disjoint(&m));
                assert_eq!(l.len(), r);
                assert_eq!(m.len(), w);
                assert!(seen.insert((l.elements(), m.elements())));
                count += 1;
            }
            assert_eq!(count, graph_stats(t, r, w).unwrap().edge_count);
        }
    }

    #[test]
    fn graph_stats_examples() {
        let s = graph_stats(4, 1, 1).unwrap();
        assert_eq!((s.edge_count, s.max_biclique_edges), (12, 4));

        let s = graph_stats(7, 1, 1).unwrap();
        assert_eq!((s.edge_count, s.max_biclique_edges), (42, 12));

        for r in 1..=3usize {
            for w in 1..=3usize {
                let s = graph_stats(r + w, r, w).unwrap();
                assert_eq!(
                    s.edge_count,
                    binomial((r + w) as u64, r as u64).unwrap()
                );
                assert_eq!(s.max_biclique_edges, 1);
            }
        }
    }

    #[test]
    fn counting_lower_bound_examples() {
        assert_eq!(counting_lower_bound(4, 1, 1, 2).unwrap(), 6);
        assert_eq!(counting_lower_bound(7, 1, 1, 2).unwrap(), 7);
        assert_eq!(counting_lower_bound(2, 1, 1, 1).unwrap(), 2);
    }

    #[test]
    fn lower_bound_is_exact_on_construction_parameters() {
        // The displayed ratio divides evenly and equals C(t, t').
        for t in 2..=20usize {
            for r in 1..=4 {
                for w in 1..=4 {
                    if r + w > t {
                        continue;
                    }
                    for tp in crate::combinatorics::profile_maximizers(t, r, w).unwrap() {
                        let d = binomial((t - r - w) as u64, (tp - r) as u64).unwrap();
                        let stats = graph_stats(t, r, w).unwrap();
                        let demand = d as u128 * stats.edge_count as u128;
                        assert_eq!(demand % stats.max_biclique_edges as u128, 0);
                        assert_eq!(
                            counting_lower_bound(t, r, w, d).unwrap(),
                            binomial(t as u64, tp as u64).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn verify_cover_construction_generators() {
        // All 2-subsets of [4] cover every (1,1)-edge exactly twice.
        let gens: Vec<_> = k_subsets(4, 2).collect();
        let cert = BicliqueCoverCert::new(4, 1, 1, 2, gens).unwrap();
        let report = verify_cover(&cert, VerifyMode::Exact).unwrap();
        assert!(report.passed());
        assert_eq!(report.pairs_checked, 12);
    }

    #[test]
    fn verify_cover_unique_generator_per_edge() {
        // Generators = all 4-subsets of [5]: the unique cover of (L, M) is
        // the complement of M.
        let gens: Vec<_> = k_subsets(5, 4).collect();
        let cert = BicliqueCoverCert::new(5, 2, 1, 1, gens).unwrap();
        let report = verify_cover(&cert, VerifyMode::Exact).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn verify_cover_missing_edge_witness() {
        let cert = BicliqueCoverCert::new(2, 1, 1, 1, vec![idx(2, &[0])]).unwrap();
        let report = verify_cover(&cert, VerifyMode::AtLeast).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let w = report.witness.unwrap();
        assert_eq!(w.left.elements(), vec![1]);
        assert_eq!(w.right.elements(), vec![0]);
        assert_eq!(w.residual, 0);
    }

    #[test]
    fn cert_rejects_bad_generator_sizes() {
        assert!(BicliqueCoverCert::new(4, 2, 1, 1, vec![idx(4, &[0])]).is_err());
        assert!(BicliqueCoverCert::new(4, 1, 1, 1, vec![idx(4, &[0, 1, 2, 3])]).is_err());
        assert!(BicliqueCoverCert::new(4, 1, 1, 0, vec![]).is_err());
    }

    #[test]
    fn cover_from_cff_on_construction() {
        let (f, p) = construct_optimal_cff(1, 1, 4, None).unwrap();
        let cert = cover_from_cff(&f, 1, 1, p.d).unwrap();
        assert_eq!(cert.len(), 6);
        assert_eq!(cert.rejected_points(), 0);
        // Point signatures are exactly the 2-subsets they were built from.
        let mut gens: Vec<_> = cert.generators().to_vec();
        gens.sort();
        let expected: Vec<_> = k_subsets(4, 2).collect();
        assert_eq!(gens, expected);
        assert!(verify_cover(&cert, VerifyMode::Exact).unwrap().passed());
    }

    #[test]
    fn cover_from_cff_rejects_isolated_point() {
        // Point 2 lies in no block: with r = 1 its empty signature spans no
        // r-subset, so it is dropped.
        let blocks = vec![idx(3, &[0]), idx(3, &[1])];
        let f = CffInstance::new(3, blocks).unwrap();
        let cert = cover_from_cff(&f, 1, 1, 1).unwrap();
        assert_eq!(cert.rejected_points(), 1);
        assert_eq!(cert.len(), 2);
    }

    #[test]
    fn cover_from_cff_singletons() {
        let blocks = vec![idx(3, &[0]), idx(3, &[1]), idx(3, &[2])];
        let f = CffInstance::new(3, blocks).unwrap();
        let cert = cover_from_cff(&f, 1, 1, 1).unwrap();
        let gens: Vec<_> = cert.generators().iter().map(|g| g.elements()).collect();
        assert_eq!(gens, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cff_from_cover_recovers_construction() {
        let gens: Vec<_> = k_subsets(4, 2).collect();
        let cert = BicliqueCoverCert::new(4, 1, 1, 2, gens).unwrap();
        let f = cff_from_cover(&cert);
        let (reference, _) = construct_optimal_cff(1, 1, 4, None).unwrap();
        // Point order follows colex rank in both, so this is equality on the
        // nose, not just up to relabeling.
        assert_eq!(f, reference);
    }

    #[test]
    fn cff_from_cover_single_generator() {
        let cert = BicliqueCoverCert::new(2, 1, 1, 1, vec![idx(2, &[0, 1])]);
        // |A| = 2 > t - w = 1: not a legal generator.
        assert!(cert.is_err());

        let cert = BicliqueCoverCert::new(3, 1, 1, 1, vec![idx(3, &[0, 1])]).unwrap();
        let f = cff_from_cover(&cert);
        assert_eq!(f.n(), 1);
        assert!(f.block(0).contains(0));
        assert!(f.block(1).contains(0));
        assert!(!f.block(2).contains(0));
    }

    #[test]
    fn round_trip_preserves_signatures() {
        let (f, p) = construct_optimal_cff(2, 1, 5, Some(3)).unwrap();
        let cert = cover_from_cff(&f, 2, 1, p.d).unwrap();
        let back = cff_from_cover(&cert);
        let mut original: Vec<_> = (0..f.n()).map(|x| f.point_signature(x).elements()).collect();
        let mut recovered: Vec<_> =
            (0..back.n()).map(|x| back.point_signature(x).elements()).collect();
        original.sort();
        recovered.sort();
        assert_eq!(original, recovered);
    }

    #[test]
    fn coverage_count_equals_residual_after_unfolding() {
        let gens: Vec<_> = k_subsets(5, 3).collect();
        let cert = BicliqueCoverCert::new(5, 2, 1, 1, gens).unwrap();
        let f = cff_from_cover(&cert);
        for (l, m) in enumerate_edges(5, 2, 1).unwrap() {
            let count = cert
                .generators()
                .iter()
                .filter(|a| l.is_subset_of(a) && m.is_disjoint(a))
                .count() as u64;
            assert_eq!(count, residual(&f, &l, &m).unwrap());
        }
    }

    #[test]
    fn verdicts_agree_through_the_equivalence() {
        let (f, p) = construct_optimal_cff(1, 1, 4, None).unwrap();
        for mode in [VerifyMode::AtLeast, VerifyMode::Exact] {
            let direct = verify_cff(&f, 1, 1, p.d, mode).unwrap();
            let cert = cover_from_cff(&f, 1, 1, p.d).unwrap();
            assert_eq!(cert.rejected_points(), 0);
            let via_cover = verify_cover(&cert, mode).unwrap();
            assert_eq!(direct.verdict, via_cover.verdict);
        }
    }
}
