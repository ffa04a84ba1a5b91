//! JSON report of a discrimination run.

use gonet_core::harness::{IndicatorPoint, MetricParams, SubsampleScheme, TuringVerdict};
use gonet_core::metrics::ComparisonReport;
use gonet_core::LinkRule;
use serde::Serialize;

/// Printed into every report next to the decision.
pub const RULE_NOTE: &str = "The decision rule is an explicit stand-in: per metric, \
separation = |mean_between - mean_within| / (sd_between + sd_within + 1e-12); \
different-source when at least `votes` separations exceed k, same-source when all \
are below `same_below`, inconclusive otherwise.";

#[derive(Debug, Serialize)]
pub struct SchemeJson {
    pub group_size: usize,
    pub n_instances: usize,
    pub seed: u64,
    pub mode: String,
}

impl From<&SubsampleScheme> for SchemeJson {
    fn from(s: &SubsampleScheme) -> Self {
        Self {
            group_size: s.group_size,
            n_instances: s.n_instances,
            seed: s.seed,
            mode: s.mode.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsJson {
    pub alpha: f64,
    pub half: usize,
    pub window: usize,
    pub d_s: f64,
    pub metric: String,
    pub strict: bool,
}

impl ParamsJson {
    pub fn new(params: &MetricParams, rule: &LinkRule) -> Self {
        Self {
            alpha: params.alpha,
            half: params.half,
            window: params.window,
            d_s: rule.strategic_distance,
            metric: rule.metric.to_string(),
            strict: rule.strict,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CorpusJson {
    pub label: String,
    pub source: String,
    pub games: usize,
}

#[derive(Debug, Serialize)]
pub struct InstanceJson {
    pub sigma: f64,
    pub fidelity: f64,
    pub s_ordered: f64,
    pub s_nonordered: f64,
}

impl From<&ComparisonReport> for InstanceJson {
    fn from(r: &ComparisonReport) -> Self {
        Self {
            sigma: r.sigma,
            fidelity: r.fidelity,
            s_ordered: r.s_ordered,
            s_nonordered: r.s_nonordered,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PointJson {
    pub reference: String,
    pub sample: String,
    pub f_mean: f64,
    pub f_sd: f64,
    pub sn_mean: f64,
    pub sn_sd: f64,
    pub sigma_mean: f64,
    pub sigma_sd: f64,
    pub instances: Vec<InstanceJson>,
}

impl From<&IndicatorPoint> for PointJson {
    fn from(p: &IndicatorPoint) -> Self {
        Self {
            reference: p.label.0.clone(),
            sample: p.label.1.clone(),
            f_mean: p.f_mean,
            f_sd: p.f_sd,
            sn_mean: p.sn_mean,
            sn_sd: p.sn_sd,
            sigma_mean: p.sigma_mean,
            sigma_sd: p.sigma_sd,
            instances: p.instances.iter().map(InstanceJson::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub decision: String,
    pub k: f64,
    pub same_below: f64,
    pub votes: usize,
    pub separation_fidelity: f64,
    pub separation_s_nonordered: f64,
    pub separation_sigma: f64,
    pub rule_note: &'static str,
}

impl From<&TuringVerdict> for VerdictJson {
    fn from(v: &TuringVerdict) -> Self {
        Self {
            decision: v.decision.to_string(),
            k: v.rule.k,
            same_below: v.rule.same_below,
            votes: v.rule.votes,
            separation_fidelity: v.separation.fidelity,
            separation_s_nonordered: v.separation.s_nonordered,
            separation_sigma: v.separation.sigma,
            rule_note: RULE_NOTE,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TuringReport {
    pub scheme: SchemeJson,
    pub params: ParamsJson,
    pub corpus_a: CorpusJson,
    pub corpus_b: CorpusJson,
    /// Held-out comparisons used for the verdict.
    pub within: PointJson,
    pub between: PointJson,
    pub verdict: VerdictJson,
    /// Full-reference points (reference network built from every game).
    pub indicator_points: Vec<PointJson>,
}
