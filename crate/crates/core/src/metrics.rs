//! Ranking vectors and the comparison metrics between two networks:
//! dispersion σ, fidelity F, and the top-window similarities S_O and S_N.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Float methods under no_std; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

pub const DEFAULT_WINDOW: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("vector lengths differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cannot normalise a zero vector")]
    ZeroVector,
    #[error("window {window} outside 1..={n}")]
    InvalidWindow { window: usize, n: usize },
}

/// Nodes ordered by decreasing score modulus, ties broken by ascending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingVector {
    order: Vec<u32>,
    rank: Vec<u32>,
}

impl RankingVector {
    /// Ranks by `|v_i|`; NaN is treated as the smallest value.
    pub fn from_scores(v: &[f64]) -> Self {
        let keys: Vec<f64> = v.iter().map(|x| x.abs()).collect();
        Self::from_keys(&keys)
    }

    pub fn from_complex(v: &[Complex64]) -> Self {
        let keys: Vec<f64> = v.iter().map(|c| c.norm()).collect();
        Self::from_keys(&keys)
    }

    fn from_keys(keys: &[f64]) -> Self {
        let mut order: Vec<u32> = (0..keys.len() as u32).collect();
        order.sort_by(|&a, &b| {
            let (ka, kb) = (keys[a as usize], keys[b as usize]);
            let ka = if ka.is_nan() { f64::NEG_INFINITY } else { ka };
            let kb = if kb.is_nan() { f64::NEG_INFINITY } else { kb };
            kb.total_cmp(&ka).then(a.cmp(&b))
        });
        Self::from_order(order)
    }

    /// From an explicit order `a`, where `a[k]` is the node at rank `k`.
    ///
    /// # Panics
    /// If `order` is not a permutation of `0..order.len()`.
    pub fn from_order(order: Vec<u32>) -> Self {
        let n = order.len();
        let mut rank = vec![u32::MAX; n];
        for (k, &node) in order.iter().enumerate() {
            assert!((node as usize) < n && rank[node as usize] == u32::MAX, "not a permutation");
            rank[node as usize] = k as u32;
        }
        Self { order, rank }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Node at 0-based rank `k`.
    pub fn node_at(&self, k: usize) -> u32 {
        self.order[k]
    }

    /// 0-based rank of `node`.
    pub fn rank_of(&self, node: u32) -> u32 {
        self.rank[node as usize]
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn top(&self, window: usize) -> &[u32] {
        &self.order[..window.min(self.order.len())]
    }
}

fn check_dims(a: &RankingVector, b: &RankingVector) -> Result<usize, MetricsError> {
    if a.len() != b.len() {
        return Err(MetricsError::DimensionMismatch(a.len(), b.len()));
    }
    Ok(a.len())
}

fn check_window(window: usize, n: usize) -> Result<(), MetricsError> {
    if window == 0 || window > n {
        return Err(MetricsError::InvalidWindow { window, n });
    }
    Ok(())
}

/// Default truncation for σ: half the nodes, rounded down.
pub fn default_half(n: usize) -> usize {
    n / 2
}

/// RMS rank gap over the top `half` nodes of the reference `a`:
/// `sqrt(Σ_{k ≤ half} (k - R_B(a_k))² / half)`.
pub fn dispersion(a: &RankingVector, b: &RankingVector, half: usize) -> Result<f64, MetricsError> {
    let n = check_dims(a, b)?;
    check_window(half, n)?;
    let sum: f64 = (0..half)
        .map(|k| {
            let gap = k as f64 - b.rank_of(a.node_at(k)) as f64;
            gap * gap
        })
        .sum();
    Ok((sum / half as f64).sqrt())
}

/// `max(σ(a, b), σ(b, a))`.
pub fn symmetric_dispersion(a: &RankingVector, b: &RankingVector, half: usize) -> Result<f64, MetricsError> {
    Ok(dispersion(a, b, half)?.max(dispersion(b, a, half)?))
}

/// `|⟨φ, ψ⟩|` after normalising both vectors to unit 2-norm.
pub fn fidelity(phi: &[Complex64], psi: &[Complex64]) -> Result<f64, MetricsError> {
    if phi.len() != psi.len() {
        return Err(MetricsError::DimensionMismatch(phi.len(), psi.len()));
    }
    let norm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let (np, ns) = (norm(phi), norm(psi));
    if np == 0.0 || ns == 0.0 || !np.is_finite() || !ns.is_finite() {
        return Err(MetricsError::ZeroVector);
    }
    let dot: Complex64 = phi.iter().zip(psi).map(|(p, s)| p.conj() * s).sum();
    Ok((dot.norm() / (np * ns)).min(1.0))
}

/// Real-vector convenience wrapper around [`fidelity`].
pub fn fidelity_real(phi: &[f64], psi: &[f64]) -> Result<f64, MetricsError> {
    let lift = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
    fidelity(&lift(phi), &lift(psi))
}

/// Fraction of the first `window` ranks holding the same node in both.
pub fn ordered_similarity(a: &RankingVector, b: &RankingVector, window: usize) -> Result<f64, MetricsError> {
    let n = check_dims(a, b)?;
    check_window(window, n)?;
    let hits = a.top(window).iter().zip(b.top(window)).filter(|(x, y)| x == y).count();
    Ok(hits as f64 / window as f64)
}

/// Fraction of `a`'s top `window` nodes that are also in `b`'s top `window`.
pub fn nonordered_similarity(a: &RankingVector, b: &RankingVector, window: usize) -> Result<f64, MetricsError> {
    let n = check_dims(a, b)?;
    check_window(window, n)?;
    let hits = a
        .top(window)
        .iter()
        .filter(|&&node| (b.rank_of(node) as usize) < window)
        .count();
    Ok(hits as f64 / window as f64)
}

/// `(R_A(n), R_B(n))` pairs, 1-based, for the top `half` nodes of `a`.
pub fn correlation_pairs(a: &RankingVector, b: &RankingVector, half: usize) -> Result<Vec<(u32, u32, u32)>, MetricsError> {
    let n = check_dims(a, b)?;
    check_window(half, n)?;
    Ok((0..half)
        .map(|k| {
            let node = a.node_at(k);
            (node, k as u32 + 1, b.rank_of(node) + 1)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// Symmetrised dispersion.
    pub sigma: f64,
    pub fidelity: f64,
    pub s_ordered: f64,
    pub s_nonordered: f64,
}

/// Compares two PageRank-like real vectors with every metric.
pub fn compare(p: &[f64], q: &[f64], half: usize, window: usize) -> Result<ComparisonReport, MetricsError> {
    let a = RankingVector::from_scores(p);
    let b = RankingVector::from_scores(q);
    Ok(ComparisonReport {
        sigma: symmetric_dispersion(&a, &b, half)?,
        fidelity: fidelity_real(p, q)?,
        s_ordered: ordered_similarity(&a, &b, window)?,
        s_nonordered: nonordered_similarity(&a, &b, window)?,
    })
}

/// Same as [`compare`] for complex eigenvectors.
pub fn compare_complex(
    phi: &[Complex64],
    psi: &[Complex64],
    half: usize,
    window: usize,
) -> Result<ComparisonReport, MetricsError> {
    let a = RankingVector::from_complex(phi);
    let b = RankingVector::from_complex(psi);
    Ok(ComparisonReport {
        sigma: symmetric_dispersion(&a, &b, half)?,
        fidelity: fidelity(phi, psi)?,
        s_ordered: ordered_similarity(&a, &b, window)?,
        s_nonordered: nonordered_similarity(&a, &b, window)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn random_perm(n: usize, rng: &mut SplitMix64) -> RankingVector {
        let mut v: Vec<u32> = (0..n as u32).collect();
        rng.shuffle(&mut v);
        RankingVector::from_order(v)
    }

    fn relabel(v: &[f64], perm: &[u32]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[perm[i] as usize] = x;
        }
        out
    }

    #[test]
    fn ranking_examples() {
        assert_eq!(RankingVector::from_scores(&[0.1, 0.7, 0.2]).order(), &[1, 2, 0]);
        let c = [
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, -0.5),
            Complex64::new(0.4, 0.0),
        ];
        assert_eq!(RankingVector::from_complex(&c).order(), &[0, 1, 2]);
        assert_eq!(RankingVector::from_scores(&[0.25; 4]).order(), &[0, 1, 2, 3]);
        let r = RankingVector::from_scores(&[0.1, 0.7, 0.2]);
        assert_eq!((r.rank_of(0), r.rank_of(1), r.rank_of(2)), (2, 0, 1));
    }

    #[test]
    #[should_panic(expected = "not a permutation")]
    fn from_order_rejects_duplicates() {
        RankingVector::from_order(vec![0, 0, 1]);
    }

    #[test]
    fn dispersion_examples() {
        let n = 1107;
        let id = RankingVector::from_order((0..n as u32).collect());
        assert_eq!(dispersion(&id, &id, 553).unwrap(), 0.0);
        let mut swapped: Vec<u32> = (0..n as u32).collect();
        swapped.swap(0, 1);
        let sw = RankingVector::from_order(swapped);
        let s = dispersion(&id, &sw, 553).unwrap();
        assert!((s - (2.0f64 / 553.0).sqrt()).abs() < 1e-15);
        assert!((s - 0.0601).abs() < 1e-4);
        let short = RankingVector::from_order(vec![0, 1]);
        assert_eq!(dispersion(&id, &short, 1), Err(MetricsError::DimensionMismatch(1107, 2)));
        assert!(dispersion(&id, &id, 0).is_err());
    }

    #[test]
    fn dispersion_is_asymmetric_in_general() {
        // a ranks 0,1,2,3; b moves node 3 to the top.
        let a = RankingVector::from_order(vec![0, 1, 2, 3]);
        let b = RankingVector::from_order(vec![3, 0, 1, 2]);
        let ab = dispersion(&a, &b, 2).unwrap();
        let ba = dispersion(&b, &a, 2).unwrap();
        assert!((ab - 1.0).abs() < 1e-15);
        assert!((ba - (9.0f64 / 2.0 + 1.0 / 2.0).sqrt()).abs() < 1e-15);
        assert_eq!(symmetric_dispersion(&a, &b, 2).unwrap(), ba);
    }

    #[test]
    fn random_baseline_matches_analytic_mean() {
        // For a uniform random b, R_B(a_k) is uniform on 0..n independently
        // of k, so E[(k - R)^2] = (n^2 - 1)/12 + (k - (n-1)/2)^2.
        let (n, half) = (1107usize, 553usize);
        let centre = (n as f64 - 1.0) / 2.0;
        let msq: f64 = (0..half)
            .map(|k| (n * n - 1) as f64 / 12.0 + (k as f64 - centre).powi(2))
            .sum::<f64>()
            / half as f64;
        let analytic = msq.sqrt();
        assert!((analytic - 451.7).abs() < 0.5, "{analytic}");
        let mut rng = SplitMix64::new(2024);
        let trials = 1000;
        let mean: f64 = (0..trials)
            .map(|_| {
                let a = random_perm(n, &mut rng);
                let b = random_perm(n, &mut rng);
                dispersion(&a, &b, half).unwrap()
            })
            .sum::<f64>()
            / trials as f64;
        // E[sqrt(X)] sits just under sqrt(E[X]).
        assert!((mean - analytic).abs() < 3.0, "{mean} vs {analytic}");
        assert!((440.0..=460.0).contains(&mean));
    }

    #[test]
    fn fidelity_examples() {
        let phi: Vec<Complex64> = [0.3, -0.2, 0.9, 0.1]
            .iter()
            .zip([0.1, 0.4, 0.0, -0.3])
            .map(|(&r, i)| Complex64::new(r, i))
            .collect();
        assert!((fidelity(&phi, &phi).unwrap() - 1.0).abs() < 1e-15);
        let phase = Complex64::from_polar(1.0, 1.234);
        let rotated: Vec<Complex64> = phi.iter().map(|c| c * phase * 3.0).collect();
        assert!((fidelity(&phi, &rotated).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(fidelity_real(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert_eq!(fidelity_real(&[0.0, 0.0], &[0.0, 1.0]), Err(MetricsError::ZeroVector));
        assert!(fidelity_real(&[1.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn similarity_examples() {
        let n = 100u32;
        let id = RankingVector::from_order((0..n).collect());
        assert_eq!(ordered_similarity(&id, &id, 30).unwrap(), 1.0);
        assert_eq!(nonordered_similarity(&id, &id, 30).unwrap(), 1.0);

        let mut shifted: Vec<u32> = (0..n).collect();
        shifted[..30].rotate_left(1);
        let sh = RankingVector::from_order(shifted);
        assert_eq!(ordered_similarity(&id, &sh, 30).unwrap(), 0.0);
        assert_eq!(nonordered_similarity(&id, &sh, 30).unwrap(), 1.0);

        let mut reversed: Vec<u32> = (0..n).collect();
        reversed.reverse();
        let rev = RankingVector::from_order(reversed);
        assert_eq!(nonordered_similarity(&id, &rev, 30).unwrap(), 0.0);

        // keep 0..15 in place, swap 15..30 out for 30..45
        let mut half: Vec<u32> = (0..n).collect();
        for k in 15..30 {
            half.swap(k, k + 15);
        }
        let hv = RankingVector::from_order(half);
        assert_eq!(ordered_similarity(&id, &hv, 30).unwrap(), 0.5);
        assert_eq!(nonordered_similarity(&id, &hv, 30).unwrap(), 0.5);
        assert!(ordered_similarity(&id, &hv, 101).is_err());
    }

    #[test]
    fn correlation_pairs_are_one_based() {
        let a = RankingVector::from_order(vec![2, 0, 1]);
        let b = RankingVector::from_order(vec![0, 1, 2]);
        assert_eq!(correlation_pairs(&a, &b, 2).unwrap(), vec![(2, 1, 3), (0, 2, 1)]);
    }

    fn distinct_scores(n: usize) -> impl Strategy<Value = Vec<f64>> {
        // Distinct values so the tie-break rule plays no part.
        Just((0..n).map(|i| (i + 1) as f64).collect::<Vec<f64>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn metric_laws(seed in any::<u64>(), n in 30usize..200) {
            let mut rng = SplitMix64::new(seed);
            let a = random_perm(n, &mut rng);
            let b = random_perm(n, &mut rng);
            let so = ordered_similarity(&a, &b, 30).unwrap();
            let sn = nonordered_similarity(&a, &b, 30).unwrap();
            prop_assert!(so <= sn);
            prop_assert!((0.0..=1.0).contains(&so) && (0.0..=1.0).contains(&sn));
            prop_assert_eq!(sn, nonordered_similarity(&b, &a, 30).unwrap());
            prop_assert_eq!(so, ordered_similarity(&b, &a, 30).unwrap());
            prop_assert_eq!(dispersion(&a, &a, n / 2).unwrap(), 0.0);
            prop_assert!(dispersion(&a, &b, n / 2).unwrap() >= 0.0);
        }

        #[test]
        fn fidelity_is_symmetric_and_bounded(
            p in prop::collection::vec(-1.0f64..1.0, 40),
            q in prop::collection::vec(-1.0f64..1.0, 40),
        ) {
            prop_assume!(p.iter().any(|&x| x != 0.0) && q.iter().any(|&x| x != 0.0));
            let f = fidelity_real(&p, &q).unwrap();
            prop_assert!((0.0..=1.0).contains(&f));
            prop_assert_eq!(f, fidelity_real(&q, &p).unwrap());
        }

        #[test]
        fn relabeling_invariance(
            p in distinct_scores(80),
            q in distinct_scores(80),
            seed in any::<u64>(),
        ) {
            let mut perm: Vec<u32> = (0..80).collect();
            SplitMix64::new(seed).shuffle(&mut perm);
            let before = compare(&p, &q, 40, 30).unwrap();
            let after = compare(&relabel(&p, &perm), &relabel(&q, &perm), 40, 30).unwrap();
            prop_assert_eq!(before.sigma, after.sigma);
            prop_assert_eq!(before.s_ordered, after.s_ordered);
            prop_assert_eq!(before.s_nonordered, after.s_nonordered);
            prop_assert!((before.fidelity - after.fidelity).abs() < 1e-12);
        }
    }
}
