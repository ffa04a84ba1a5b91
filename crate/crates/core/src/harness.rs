//! Same-player / different-player discrimination from network metrics.
//!
//! Games are reduced once to their link lists; a subsample network is then
//! just the sum of its games' links. Every draw is generated up front from
//! the scheme's seed, so evaluating instances in any order (or in parallel)
//! gives the same report.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

// Float methods under no_std; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::metrics::{self, ComparisonReport, MetricsError};
use crate::network::{game_links, LinkRule, PatternNetwork};
use crate::pattern::{CanonicalPatternId, PatternCatalog};
use crate::rng::SplitMix64;
use crate::sgf::GameRecord;
use crate::spectral::{GoogleMatrix, SpectralError};

pub type GameLinks = Vec<(CanonicalPatternId, CanonicalPatternId)>;

/// Separation guard against zero spreads.
const EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("need {needed} games but the corpus '{label}' has {available}")]
    InsufficientGames {
        label: String,
        needed: usize,
        available: usize,
    },
    #[error("group size must be positive")]
    EmptyGroup,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// A game database reduced to per-game link lists.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkedCorpus {
    pub label: String,
    pub rule: LinkRule,
    pub games: Vec<GameLinks>,
}

impl LinkedCorpus {
    pub fn from_games(label: impl Into<String>, games: &[GameRecord], catalog: &PatternCatalog, rule: LinkRule) -> Self {
        Self {
            label: label.into(),
            rule,
            games: games.iter().map(|g| game_links(g, catalog, &rule)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.games.len()
    }

    pub fn is_empty(&self) -> bool {
        self.games.is_empty()
    }

    pub fn network(&self, indices: &[usize]) -> PatternNetwork {
        let mut net = PatternNetwork::new(self.rule);
        for &i in indices {
            net.add_game(&self.games[i]);
        }
        net
    }

    pub fn full_network(&self) -> PatternNetwork {
        let all: Vec<usize> = (0..self.len()).collect();
        self.network(&all)
    }

    /// Every game not listed in `indices` (which must be sorted).
    pub fn complement(&self, indices: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|i| indices.binary_search(i).is_err()).collect()
    }

    /// First `at` games and the rest, as two corpora.
    pub fn split_at(&self, at: usize) -> (Self, Self) {
        let at = at.min(self.len());
        let part = |suffix: &str, games: &[GameLinks]| Self {
            label: alloc::format!("{}{}", self.label, suffix),
            rule: self.rule,
            games: games.to_vec(),
        };
        (part("/1", &self.games[..at]), part("/2", &self.games[at..]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawMode {
    /// Fresh draw without replacement for every instance.
    Redraw,
    /// One shuffle, then consecutive disjoint groups.
    DisjointSplit,
}

impl fmt::Display for DrawMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DrawMode::Redraw => "redraw",
            DrawMode::DisjointSplit => "disjoint-split",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsampleScheme {
    pub group_size: usize,
    pub n_instances: usize,
    pub seed: u64,
    pub mode: DrawMode,
}

impl SubsampleScheme {
    pub fn new(group_size: usize, n_instances: usize, seed: u64) -> Self {
        Self {
            group_size,
            n_instances,
            seed,
            mode: DrawMode::Redraw,
        }
    }

    pub fn with_mode(mut self, mode: DrawMode) -> Self {
        self.mode = mode;
        self
    }

    /// Sorted game indices for every instance, drawn from `n_games` games.
    /// `stream` separates the draws made for different corpora.
    pub fn draws(&self, label: &str, n_games: usize, stream: u64) -> Result<Vec<Vec<usize>>, HarnessError> {
        if self.group_size == 0 {
            return Err(HarnessError::EmptyGroup);
        }
        let needed = match self.mode {
            DrawMode::Redraw => self.group_size,
            DrawMode::DisjointSplit => self.group_size * self.n_instances,
        };
        if needed > n_games || (self.n_instances > 0 && n_games == 0) {
            return Err(HarnessError::InsufficientGames {
                label: label.into(),
                needed,
                available: n_games,
            });
        }
        let mut rng = SplitMix64::new(self.seed ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED03));
        let mut out = Vec::with_capacity(self.n_instances);
        match self.mode {
            DrawMode::Redraw => {
                for _ in 0..self.n_instances {
                    let mut d = rng.sample_indices(n_games, self.group_size);
                    d.sort_unstable();
                    out.push(d);
                }
            }
            DrawMode::DisjointSplit => {
                let mut all: Vec<usize> = (0..n_games).collect();
                rng.shuffle(&mut all);
                for chunk in all.chunks_exact(self.group_size).take(self.n_instances) {
                    let mut d = chunk.to_vec();
                    d.sort_unstable();
                    out.push(d);
                }
            }
        }
        Ok(out)
    }
}

/// Metric settings shared by every comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricParams {
    pub alpha: f64,
    pub half: usize,
    pub window: usize,
}

impl Default for MetricParams {
    fn default() -> Self {
        Self {
            alpha: crate::spectral::DEFAULT_ALPHA,
            half: crate::pattern::N_CLASSES / 2,
            window: metrics::DEFAULT_WINDOW,
        }
    }
}

/// PageRank of a network under `params.alpha`.
pub fn network_pagerank(net: &PatternNetwork, params: &MetricParams) -> Result<Vec<f64>, HarnessError> {
    let g = GoogleMatrix::from_network(net, params.alpha)?;
    Ok(crate::spectral::pagerank(&g)?.p)
}

/// PageRank metrics between two networks.
pub fn compare_networks(
    reference: &PatternNetwork,
    sample: &PatternNetwork,
    params: &MetricParams,
) -> Result<ComparisonReport, HarnessError> {
    let p = network_pagerank(reference, params)?;
    let q = network_pagerank(sample, params)?;
    Ok(metrics::compare(&p, &q, params.half, params.window)?)
}

fn mean_sd(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Mean and sample standard deviation of F, S_N and σ over instances.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorPoint {
    pub label: (String, String),
    pub f_mean: f64,
    pub f_sd: f64,
    pub sn_mean: f64,
    pub sn_sd: f64,
    pub sigma_mean: f64,
    pub sigma_sd: f64,
    /// Per-instance reports the statistics were taken over.
    pub instances: Vec<ComparisonReport>,
}

impl IndicatorPoint {
    pub fn from_reports(label: (String, String), instances: Vec<ComparisonReport>) -> Self {
        let (f_mean, f_sd) = mean_sd(instances.iter().map(|r| r.fidelity));
        let (sn_mean, sn_sd) = mean_sd(instances.iter().map(|r| r.s_nonordered));
        let (sigma_mean, sigma_sd) = mean_sd(instances.iter().map(|r| r.sigma));
        Self {
            label,
            f_mean,
            f_sd,
            sn_mean,
            sn_sd,
            sigma_mean,
            sigma_sd,
            instances,
        }
    }
}

/// The full `reference` network against `group_size`-game subsamples of
/// `sample`, one comparison per drawn instance.
pub fn indicator_point(
    reference: &LinkedCorpus,
    sample: &LinkedCorpus,
    scheme: &SubsampleScheme,
    params: &MetricParams,
) -> Result<IndicatorPoint, HarnessError> {
    if reference.is_empty() {
        return Err(HarnessError::InsufficientGames {
            label: reference.label.clone(),
            needed: 1,
            available: 0,
        });
    }
    let draws = scheme.draws(&sample.label, sample.len(), 1)?;
    let p = network_pagerank(&reference.full_network(), params)?;
    let reports = draws
        .iter()
        .map(|d| {
            let q = network_pagerank(&sample.network(d), params)?;
            Ok(metrics::compare(&p, &q, params.half, params.window)?)
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(IndicatorPoint::from_reports(
        (reference.label.clone(), sample.label.clone()),
        reports,
    ))
}

/// Points for (A, A-subsamples), (A, B-subsamples) and (B, B-subsamples).
/// Empty when the scheme asks for no instances.
pub fn indicator_points(
    a: &LinkedCorpus,
    b: &LinkedCorpus,
    scheme: &SubsampleScheme,
    params: &MetricParams,
) -> Result<Vec<IndicatorPoint>, HarnessError> {
    if scheme.n_instances == 0 {
        return Ok(Vec::new());
    }
    Ok(vec![
        indicator_point(a, a, scheme, params)?,
        indicator_point(a, b, scheme, params)?,
        indicator_point(b, b, scheme, params)?,
    ])
}

/// Draws for one held-out comparison: `held_out` is removed from A to form
/// the reference and compared against it, as is `other` from B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeldOutDraw {
    pub held_out: Vec<usize>,
    pub other: Vec<usize>,
}

/// Draw plan for [`turing_test`]. Requires `2 · group_size ≤ |A|` so the
/// reference is never smaller than the samples compared to it.
pub fn held_out_plan(
    a: &LinkedCorpus,
    b: &LinkedCorpus,
    scheme: &SubsampleScheme,
) -> Result<Vec<HeldOutDraw>, HarnessError> {
    if 2 * scheme.group_size > a.len() {
        return Err(HarnessError::InsufficientGames {
            label: a.label.clone(),
            needed: 2 * scheme.group_size,
            available: a.len(),
        });
    }
    let held = scheme.draws(&a.label, a.len(), 1)?;
    let other = scheme.draws(&b.label, b.len(), 2)?;
    Ok(held
        .into_iter()
        .zip(other)
        .map(|(held_out, other)| HeldOutDraw { held_out, other })
        .collect())
}

/// One instance of the held-out protocol: (within, between) reports.
pub fn evaluate_held_out(
    a: &LinkedCorpus,
    b: &LinkedCorpus,
    draw: &HeldOutDraw,
    params: &MetricParams,
) -> Result<(ComparisonReport, ComparisonReport), HarnessError> {
    let reference = network_pagerank(&a.network(&a.complement(&draw.held_out)), params)?;
    let within = network_pagerank(&a.network(&draw.held_out), params)?;
    let between = network_pagerank(&b.network(&draw.other), params)?;
    Ok((
        metrics::compare(&reference, &within, params.half, params.window)?,
        metrics::compare(&reference, &between, params.half, params.window)?,
    ))
}

/// Which metric a separation belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    pub fidelity: f64,
    pub s_nonordered: f64,
    pub sigma: f64,
}

impl Separation {
    pub fn values(&self) -> [f64; 3] {
        [self.fidelity, self.s_nonordered, self.sigma]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    SameSource,
    DifferentSource,
    Inconclusive,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::SameSource => "same-source",
            Decision::DifferentSource => "different-source",
            Decision::Inconclusive => "inconclusive",
        })
    }
}

/// Thresholds of the voting rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictRule {
    /// A metric votes "different" above this separation.
    pub k: f64,
    /// Every metric must stay below this for "same".
    pub same_below: f64,
    /// Votes needed for "different".
    pub votes: usize,
}

impl Default for VerdictRule {
    fn default() -> Self {
        Self {
            k: 2.0,
            same_below: 1.0,
            votes: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuringVerdict {
    pub decision: Decision,
    pub separation: Separation,
    pub within: IndicatorPoint,
    pub between: IndicatorPoint,
    pub rule: VerdictRule,
}

fn separation(within: f64, between: f64, sd_w: f64, sd_b: f64) -> f64 {
    (between - within).abs() / (sd_b + sd_w + EPSILON)
}

/// Effect size per metric, then the voting rule: "different" when enough
/// metrics exceed `k`, "same" when all stay below `same_below`.
pub fn verdict_with(within: &IndicatorPoint, between: &IndicatorPoint, rule: VerdictRule) -> TuringVerdict {
    let sep = Separation {
        fidelity: separation(within.f_mean, between.f_mean, within.f_sd, between.f_sd),
        s_nonordered: separation(within.sn_mean, between.sn_mean, within.sn_sd, between.sn_sd),
        sigma: separation(within.sigma_mean, between.sigma_mean, within.sigma_sd, between.sigma_sd),
    };
    let values = sep.values();
    let decision = if values.iter().filter(|&&s| s > rule.k).count() >= rule.votes {
        Decision::DifferentSource
    } else if values.iter().all(|&s| s < rule.same_below) {
        Decision::SameSource
    } else {
        Decision::Inconclusive
    };
    TuringVerdict {
        decision,
        separation: sep,
        within: within.clone(),
        between: between.clone(),
        rule,
    }
}

pub fn verdict(within: &IndicatorPoint, between: &IndicatorPoint, k: f64) -> TuringVerdict {
    verdict_with(within, between, VerdictRule { k, ..VerdictRule::default() })
}

/// Held-out discrimination between corpora `a` and `b`.
///
/// Each instance removes a group from A; the rest of A is the reference.
/// The removed group gives the within-source comparison and an equally
/// sized group of B the between-source one, so neither sample overlaps the
/// reference.
pub fn turing_test(
    a: &LinkedCorpus,
    b: &LinkedCorpus,
    scheme: &SubsampleScheme,
    params: &MetricParams,
    rule: VerdictRule,
) -> Result<TuringVerdict, HarnessError> {
    let plan = held_out_plan(a, b, scheme)?;
    let results = plan
        .iter()
        .map(|d| evaluate_held_out(a, b, d, params))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate_held_out(a, b, results, rule))
}

/// Builds the verdict from per-instance (within, between) reports.
pub fn aggregate_held_out(
    a: &LinkedCorpus,
    b: &LinkedCorpus,
    results: Vec<(ComparisonReport, ComparisonReport)>,
    rule: VerdictRule,
) -> TuringVerdict {
    let (within, between): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let within = IndicatorPoint::from_reports((a.label.clone(), a.label.clone()), within);
    let between = IndicatorPoint::from_reports((a.label.clone(), b.label.clone()), between);
    verdict_with(&within, &between, rule)
}

/// Mean and spread of one metric at one eigenvector rank.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileStat {
    pub mean: f64,
    pub sd: f64,
}

/// F, S_O and S_N between same-rank eigenvectors, for ranks 1..=k.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorProfile {
    pub label: (String, String),
    pub fidelity: Vec<ProfileStat>,
    pub s_ordered: Vec<ProfileStat>,
    pub s_nonordered: Vec<ProfileStat>,
    pub instances: usize,
}

/// Top-`k` eigenvectors of a network's Google matrix.
pub fn leading_eigenvectors(
    net: &PatternNetwork,
    alpha: f64,
    k: usize,
) -> Result<Vec<Vec<num_complex::Complex64>>, HarnessError> {
    let g = GoogleMatrix::from_network(net, alpha)?;
    let spectrum = g.full_spectrum(k)?;
    Ok(spectrum.eigenpairs.into_iter().map(|p| p.vector).collect())
}

/// Per-rank metrics for one pair of networks.
pub fn eigenvector_comparison(
    left: &[Vec<num_complex::Complex64>],
    right: &[Vec<num_complex::Complex64>],
    params: &MetricParams,
) -> Result<Vec<ComparisonReport>, HarnessError> {
    left.iter()
        .zip(right)
        .map(|(l, r)| Ok(metrics::compare_complex(l, r, params.half, params.window)?))
        .collect()
}

/// Draws one group from each corpus per instance and compares their leading
/// eigenvectors rank by rank.
pub fn eigenvector_profile(
    a: &LinkedCorpus,
    b: &LinkedCorpus,
    scheme: &SubsampleScheme,
    params: &MetricParams,
    k: usize,
) -> Result<EigenvectorProfile, HarnessError> {
    let da = scheme.draws(&a.label, a.len(), 1)?;
    let db = scheme.draws(&b.label, b.len(), 2)?;
    let per_instance = da
        .iter()
        .zip(&db)
        .map(|(x, y)| {
            let l = leading_eigenvectors(&a.network(x), params.alpha, k)?;
            let r = leading_eigenvectors(&b.network(y), params.alpha, k)?;
            eigenvector_comparison(&l, &r, params)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate_profile((a.label.clone(), b.label.clone()), &per_instance, k))
}

pub fn aggregate_profile(label: (String, String), per_instance: &[Vec<ComparisonReport>], k: usize) -> EigenvectorProfile {
    let stat = |rank: usize, f: fn(&ComparisonReport) -> f64| {
        let (mean, sd) = mean_sd(per_instance.iter().filter_map(move |r| r.get(rank)).map(f));
        ProfileStat { mean, sd }
    };
    EigenvectorProfile {
        label,
        fidelity: (0..k).map(|r| stat(r, |c| c.fidelity)).collect(),
        s_ordered: (0..k).map(|r| stat(r, |c| c.s_ordered)).collect(),
        s_nonordered: (0..k).map(|r| stat(r, |c| c.s_nonordered)).collect(),
        instances: per_instance.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::playout::{generate_games, PlayoutPolicy, PolicyKind};
    use alloc::string::ToString;
    use std::sync::OnceLock;

    fn catalog() -> &'static PatternCatalog {
        static C: OnceLock<PatternCatalog> = OnceLock::new();
        C.get_or_init(PatternCatalog::new)
    }

    fn corpus(kind: PolicyKind, seed: u64, n: usize) -> LinkedCorpus {
        let mut policy = PlayoutPolicy::new(kind, seed);
        policy.max_moves = 120;
        let games = generate_games(&policy, n);
        LinkedCorpus::from_games(kind.to_string(), &games, catalog(), LinkRule::default())
    }

    fn point(f: (f64, f64), sn: (f64, f64), sigma: (f64, f64)) -> IndicatorPoint {
        IndicatorPoint {
            label: ("a".into(), "b".into()),
            f_mean: f.0,
            f_sd: f.1,
            sn_mean: sn.0,
            sn_sd: sn.1,
            sigma_mean: sigma.0,
            sigma_sd: sigma.1,
            instances: Vec::new(),
        }
    }

    #[test]
    fn verdict_examples() {
        let w = point((0.99, 0.01), (0.8, 0.05), (43.7, 5.0));
        assert_eq!(verdict(&w, &w, 2.0).decision, Decision::SameSource);
        let b = point((0.80, 0.02), (0.5, 0.05), (192.6, 5.0));
        assert_eq!(verdict(&w, &b, 2.0).decision, Decision::DifferentSource);
        // separations 2.5, 1.5, 1.5
        let w1 = point((0.0, 1.0), (0.0, 1.0), (0.0, 1.0));
        let b1 = point((5.0, 1.0), (3.0, 1.0), (3.0, 1.0));
        let v = verdict(&w1, &b1, 2.0);
        assert!((v.separation.fidelity - 2.5).abs() < 1e-9);
        assert_eq!(v.decision, Decision::Inconclusive);
    }

    #[test]
    fn raising_k_never_creates_a_difference() {
        let w = point((0.9, 0.05), (0.7, 0.1), (60.0, 8.0));
        let b = point((0.8, 0.05), (0.5, 0.1), (90.0, 8.0));
        let mut prev = verdict(&w, &b, 0.5).decision;
        for k in [1.0, 1.5, 2.0, 3.0, 10.0] {
            let d = verdict(&w, &b, k).decision;
            if prev != Decision::DifferentSource {
                assert_ne!(d, Decision::DifferentSource);
            }
            prev = d;
        }
    }

    #[test]
    fn draws_are_seeded_and_valid() {
        let s = SubsampleScheme::new(10, 5, 7);
        let d1 = s.draws("x", 40, 1).unwrap();
        assert_eq!(d1, s.draws("x", 40, 1).unwrap());
        assert_ne!(d1, s.draws("x", 40, 2).unwrap());
        for d in &d1 {
            assert_eq!(d.len(), 10);
            assert!(d.windows(2).all(|w| w[0] < w[1]));
            assert!(d.iter().all(|&i| i < 40));
        }
        let split = s.with_mode(DrawMode::DisjointSplit).draws("x", 50, 1).unwrap();
        let mut all: Vec<usize> = split.concat();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 50);
        assert!(matches!(
            s.with_mode(DrawMode::DisjointSplit).draws("x", 49, 1),
            Err(HarnessError::InsufficientGames { needed: 50, .. })
        ));
        assert!(matches!(s.draws("x", 9, 1), Err(HarnessError::InsufficientGames { .. })));
        assert_eq!(SubsampleScheme::new(0, 1, 0).draws("x", 9, 1), Err(HarnessError::EmptyGroup));
    }

    #[test]
    fn self_comparison_is_perfect() {
        let a = corpus(PolicyKind::UniformRandom, 1, 12);
        let scheme = SubsampleScheme::new(12, 1, 3);
        let p = indicator_point(&a, &a, &scheme, &MetricParams::default()).unwrap();
        assert_eq!(p.f_mean, 1.0);
        assert_eq!(p.sn_mean, 1.0);
        assert_eq!(p.sigma_mean, 0.0);
        assert_eq!(p.f_sd, 0.0);
        let none = SubsampleScheme::new(12, 0, 3);
        assert!(indicator_points(&a, &a, &none, &MetricParams::default()).unwrap().is_empty());
    }

    #[test]
    fn indicator_points_cover_three_pairs() {
        let a = corpus(PolicyKind::UniformRandom, 1, 16);
        let b = corpus(PolicyKind::GreedyCapture, 1, 16);
        let pts = indicator_points(&a, &b, &SubsampleScheme::new(8, 3, 1), &MetricParams::default()).unwrap();
        let labels: Vec<_> = pts.iter().map(|p| (p.label.0.as_str(), p.label.1.as_str())).collect();
        assert_eq!(
            labels,
            [
                ("uniform-random", "uniform-random"),
                ("uniform-random", "greedy-capture"),
                ("greedy-capture", "greedy-capture")
            ]
        );
        for p in &pts {
            assert!(p.f_sd >= 0.0 && p.sn_sd >= 0.0 && p.sigma_sd >= 0.0);
            assert_eq!(p.instances.len(), 3);
        }
    }

    #[test]
    fn held_out_needs_twice_the_group() {
        let a = corpus(PolicyKind::UniformRandom, 1, 10);
        let err = held_out_plan(&a, &a, &SubsampleScheme::new(6, 1, 0)).unwrap_err();
        assert!(matches!(err, HarnessError::InsufficientGames { needed: 12, available: 10, .. }));
    }

    #[test]
    fn turing_test_is_deterministic() {
        let a = corpus(PolicyKind::UniformRandom, 5, 20);
        let b = corpus(PolicyKind::GreedyCapture, 5, 20);
        let scheme = SubsampleScheme::new(6, 3, 11);
        let params = MetricParams::default();
        let v1 = turing_test(&a, &b, &scheme, &params, VerdictRule::default()).unwrap();
        let v2 = turing_test(&a, &b, &scheme, &params, VerdictRule::default()).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(v1.within.instances.len(), 3);
    }

    #[test]
    fn profile_self_comparison() {
        let a = corpus(PolicyKind::UniformRandom, 2, 6);
        let scheme = SubsampleScheme::new(6, 1, 0);
        let params = MetricParams {
            alpha: 1.0,
            ..MetricParams::default()
        };
        let prof = eigenvector_profile(&a, &a, &scheme, &params, 1).unwrap();
        assert_eq!(prof.fidelity.len(), 1);
        assert!((prof.fidelity[0].mean - 1.0).abs() < 1e-12);
        assert_eq!(prof.s_ordered[0].mean, 1.0);
    }

    #[test]
    fn split_and_complement() {
        let a = corpus(PolicyKind::UniformRandom, 3, 5);
        let (x, y) = a.split_at(2);
        assert_eq!((x.len(), y.len()), (2, 3));
        assert_eq!(x.label, "uniform-random/1");
        assert_eq!(a.complement(&[1, 3]), vec![0, 2, 4]);
        let mut merged = x.full_network();
        merged.merge(&y.full_network()).unwrap();
        assert_eq!(merged, a.full_network());
    }
}
