//! Weighted directed network of pattern classes.
//!
//! Within one game, a move stays *open* until a later move lands within the
//! strategic distance of it; that later move closes it and the pair adds one
//! occurrence to the link `pattern(open) → pattern(later)`. A single move may
//! close several open moves at once. Nothing links across games.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

// Float methods under no_std; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::board::{replay_with, Coord};
use crate::pattern::{CanonicalPatternId, PatternCatalog, N_CLASSES};
use crate::sgf::GameRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DistanceMetric {
    #[default]
    Euclidean,
    Chebyshev,
}

impl fmt::Display for DistanceMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceMetric::Euclidean => "euclidean",
            DistanceMetric::Chebyshev => "chebyshev",
        })
    }
}

/// When a later move counts as a local follow-up of an earlier one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRule {
    pub strategic_distance: f64,
    pub metric: DistanceMetric,
    /// `distance < d_s` when set, `distance <= d_s` otherwise.
    pub strict: bool,
}

impl Default for LinkRule {
    fn default() -> Self {
        Self {
            strategic_distance: 4.0,
            metric: DistanceMetric::Euclidean,
            strict: true,
        }
    }
}

impl LinkRule {
    pub fn distance(&self, a: Coord, b: Coord) -> f64 {
        let dx = (a.x as f64 - b.x as f64).abs();
        let dy = (a.y as f64 - b.y as f64).abs();
        match self.metric {
            DistanceMetric::Euclidean => (dx * dx + dy * dy).sqrt(),
            DistanceMetric::Chebyshev => dx.max(dy),
        }
    }

    pub fn within(&self, a: Coord, b: Coord) -> bool {
        let d = self.distance(a, b);
        if self.strict {
            d < self.strategic_distance
        } else {
            d <= self.strategic_distance
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("network has no links")]
    EmptyNetwork,
    #[error("networks were built with different link rules")]
    RuleMismatch,
    #[error("node id {0} out of range")]
    NodeOutOfRange(u16),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternNetwork {
    weights: BTreeMap<(u16, u16), u64>,
    k_tot: u64,
    games_used: u64,
    rule: LinkRule,
}

impl PatternNetwork {
    pub fn new(rule: LinkRule) -> Self {
        Self {
            weights: BTreeMap::new(),
            k_tot: 0,
            games_used: 0,
            rule,
        }
    }

    pub fn n_nodes(&self) -> usize {
        N_CLASSES
    }

    pub fn k_tot(&self) -> u64 {
        self.k_tot
    }

    pub fn games_used(&self) -> u64 {
        self.games_used
    }

    pub fn rule(&self) -> &LinkRule {
        &self.rule
    }

    pub fn weight(&self, from: CanonicalPatternId, to: CanonicalPatternId) -> u64 {
        self.weights.get(&(from.0, to.0)).copied().unwrap_or(0)
    }

    /// Links in `(from, to)` order with their occurrence counts.
    pub fn links(&self) -> impl Iterator<Item = (CanonicalPatternId, CanonicalPatternId, u64)> + '_ {
        self.weights
            .iter()
            .map(|(&(f, t), &w)| (CanonicalPatternId(f), CanonicalPatternId(t), w))
    }

    pub fn distinct_links(&self) -> usize {
        self.weights.len()
    }

    pub fn add_link(&mut self, from: CanonicalPatternId, to: CanonicalPatternId, count: u64) {
        debug_assert!(from.index() < N_CLASSES && to.index() < N_CLASSES);
        if count == 0 {
            return;
        }
        *self.weights.entry((from.0, to.0)).or_insert(0) += count;
        self.k_tot += count;
    }

    /// Rebuilds a network from stored links, e.g. when reading an edge list.
    pub fn from_links<I>(rule: LinkRule, games_used: u64, links: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = (u16, u16, u64)>,
    {
        let mut net = Self::new(rule);
        net.games_used = games_used;
        for (f, t, w) in links {
            for id in [f, t] {
                if id as usize >= N_CLASSES {
                    return Err(NetworkError::NodeOutOfRange(id));
                }
            }
            net.add_link(CanonicalPatternId(f), CanonicalPatternId(t), w);
        }
        Ok(net)
    }

    /// Adds a game's links (see [`game_links`]).
    pub fn add_game(&mut self, links: &[(CanonicalPatternId, CanonicalPatternId)]) {
        for &(f, t) in links {
            self.add_link(f, t, 1);
        }
        self.games_used += 1;
    }

    /// Entrywise sum of weights, link totals and game counts.
    pub fn merge(&mut self, other: &PatternNetwork) -> Result<(), NetworkError> {
        if self.rule != other.rule {
            return Err(NetworkError::RuleMismatch);
        }
        for (&key, &w) in &other.weights {
            *self.weights.entry(key).or_insert(0) += w;
        }
        self.k_tot += other.k_tot;
        self.games_used += other.games_used;
        Ok(())
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        let mut k = vec![0u64; N_CLASSES];
        for (&(f, _), &w) in &self.weights {
            k[f as usize] += w;
        }
        k
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        let mut k = vec![0u64; N_CLASSES];
        for (&(_, t), &w) in &self.weights {
            k[t as usize] += w;
        }
        k
    }
}

/// Merges a list of networks built with the same rule.
pub fn merge(nets: &[PatternNetwork]) -> Result<PatternNetwork, NetworkError> {
    let Some(first) = nets.first() else {
        return Ok(PatternNetwork::new(LinkRule::default()));
    };
    let mut out = PatternNetwork::new(first.rule);
    for n in nets {
        out.merge(n)?;
    }
    Ok(out)
}

/// Links produced by one game, in the order they are closed.
pub fn game_links(
    game: &GameRecord,
    catalog: &PatternCatalog,
    rule: &LinkRule,
) -> Vec<(CanonicalPatternId, CanonicalPatternId)> {
    let mut open: Vec<(Coord, CanonicalPatternId)> = Vec::new();
    let mut links = Vec::new();
    replay_with(game, |event| {
        let id = catalog
            .classify(&event.board_before, event.position, event.color)
            .expect("replayed positions are empty and on the board");
        open.retain(|&(p, from)| {
            if rule.within(p, event.position) {
                links.push((from, id));
                false
            } else {
                true
            }
        });
        open.push((event.position, id));
    });
    links
}

pub fn build_network(
    games: &[GameRecord],
    catalog: &PatternCatalog,
    rule: &LinkRule,
) -> PatternNetwork {
    let mut net = PatternNetwork::new(*rule);
    for game in games {
        net.add_game(&game_links(game, catalog, rule));
    }
    net
}

/// One point of an integrated degree curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub k: u64,
    /// `k / k_tot`
    pub k_star: f64,
    /// Fraction of nodes ranked at or above this node by degree.
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    pub k_in: Vec<u64>,
    pub k_out: Vec<u64>,
    pub k_tot: u64,
    pub in_curve: Vec<CurvePoint>,
    pub out_curve: Vec<CurvePoint>,
}

/// Nodes with at least one link, sorted by degree; the node ranked `r` (1 =
/// largest degree) gets ordinate `r / N`. The largest-degree node therefore
/// sits at `1/N` and the smallest nonzero degree at `1 - N0/N`.
fn integrated_curve(degrees: &[u64], k_tot: u64) -> Vec<CurvePoint> {
    let n = degrees.len() as f64;
    let mut linked: Vec<(u64, usize)> = degrees
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| (k, i))
        .collect();
    linked.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut curve: Vec<CurvePoint> = linked
        .iter()
        .enumerate()
        .map(|(rank, &(k, _))| CurvePoint {
            k,
            k_star: k as f64 / k_tot as f64,
            p: (rank + 1) as f64 / n,
        })
        .collect();
    curve.reverse();
    curve
}

pub fn degree_distribution(net: &PatternNetwork) -> Result<DegreeDistribution, NetworkError> {
    if net.k_tot == 0 {
        return Err(NetworkError::EmptyNetwork);
    }
    let k_in = net.in_degrees();
    let k_out = net.out_degrees();
    Ok(DegreeDistribution {
        in_curve: integrated_curve(&k_in, net.k_tot),
        out_curve: integrated_curve(&k_out, net.k_tot),
        k_in,
        k_out,
        k_tot: net.k_tot,
    })
}

/// Exponent `γ` of `P(K*) ~ K*^-γ`, by least squares on log-log coordinates.
///
/// Only points whose `log K*` lies inside the central `1 - 2·trim` fraction
/// of the observed log range are used. `None` with fewer than 3 such points.
pub fn power_law_exponent(curve: &[CurvePoint], trim: f64) -> Option<f64> {
    let logs: Vec<(f64, f64)> = curve.iter().map(|c| (c.k_star.ln(), c.p.ln())).collect();
    let lo = logs.iter().map(|l| l.0).fold(f64::INFINITY, f64::min);
    let hi = logs.iter().map(|l| l.0).fold(f64::NEG_INFINITY, f64::max);
    let (a, b) = (lo + trim * (hi - lo), hi - trim * (hi - lo));
    let pts: Vec<(f64, f64)> = logs.into_iter().filter(|&(x, _)| x >= a && x <= b).collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(-sxy / sxx)
}
