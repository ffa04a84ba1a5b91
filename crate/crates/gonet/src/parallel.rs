//! Thread-parallel drivers. Work is split into contiguous chunks and the
//! results are recombined in chunk order, so output never depends on the
//! thread count.

use std::num::NonZeroUsize;
use std::thread;

use gonet_core::harness::{
    aggregate_held_out, aggregate_profile, eigenvector_comparison, evaluate_held_out, held_out_plan,
    leading_eigenvectors, EigenvectorProfile, HarnessError, LinkedCorpus, MetricParams, TuringVerdict,
    VerdictRule,
};
use gonet_core::network::{build_network, NetworkError};
use gonet_core::{GameRecord, LinkRule, PatternCatalog, PatternNetwork, SubsampleScheme};

pub fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Applies `f` to every item on up to `threads` threads, keeping order.
pub fn map_ordered<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

/// Builds one network per chunk of games and merges them in order.
pub fn build_network_parallel(
    games: &[GameRecord],
    catalog: &PatternCatalog,
    rule: &LinkRule,
    threads: usize,
) -> Result<PatternNetwork, NetworkError> {
    let threads = threads.clamp(1, games.len().max(1));
    let chunk = games.len().div_ceil(threads).max(1);
    let chunks: Vec<&[GameRecord]> = games.chunks(chunk).collect();
    let parts = map_ordered(&chunks, threads, |c| build_network(c, catalog, rule));
    let mut net = PatternNetwork::new(*rule);
    for part in &parts {
        net.merge(part)?;
    }
    Ok(net)
}

/// Per-game link lists computed in parallel.
pub fn link_corpus(
    label: &str,
    games: &[GameRecord],
    catalog: &PatternCatalog,
    rule: LinkRule,
    threads: usize,
) -> LinkedCorpus {
    LinkedCorpus {
        label: label.to_owned(),
        rule,
        games: map_ordered(games, threads, |g| gonet_core::network::game_links(g, catalog, &rule)),
    }
}

/// [`gonet_core::harness::turing_test`] with instances spread over threads.
pub fn turing_test(
    a: &LinkedCorpus,
    b: &LinkedCorpus,
    scheme: &SubsampleScheme,
    params: &MetricParams,
    rule: VerdictRule,
    threads: usize,
) -> Result<TuringVerdict, HarnessError> {
    let plan = held_out_plan(a, b, scheme)?;
    let results = map_ordered(&plan, threads, |d| evaluate_held_out(a, b, d, params))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate_held_out(a, b, results, rule))
}

/// [`gonet_core::harness::eigenvector_profile`] with instances spread over
/// threads.
pub fn eigenvector_profile(
    a: &LinkedCorpus,
    b: &LinkedCorpus,
    scheme: &SubsampleScheme,
    params: &MetricParams,
    k: usize,
    threads: usize,
) -> Result<EigenvectorProfile, HarnessError> {
    let da = scheme.draws(&a.label, a.len(), 1)?;
    let db = scheme.draws(&b.label, b.len(), 2)?;
    let pairs: Vec<_> = da.into_iter().zip(db).collect();
    let per_instance = map_ordered(&pairs, threads, |(x, y)| {
        let l = leading_eigenvectors(&a.network(x), params.alpha, k)?;
        let r = leading_eigenvectors(&b.network(y), params.alpha, k)?;
        eigenvector_comparison(&l, &r, params)
    })
    .into_iter()
    .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(aggregate_profile((a.label.clone(), b.label.clone()), &per_instance, k))
}
