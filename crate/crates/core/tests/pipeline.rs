//! SGF text through to network metrics, using only the public API.

use gonet_core::harness::{turing_test, Decision, LinkedCorpus, MetricParams, VerdictRule};
use gonet_core::metrics::{compare, RankingVector};
use gonet_core::network::{build_network, degree_distribution, game_links, merge};
use gonet_core::playout::generate_games;
use gonet_core::sgf::{parse_games, to_sgf};
use gonet_core::spectral::{lambda_c, pagerank, GoogleMatrix};
use gonet_core::{CanonicalPatternId, LinkRule, PatternCatalog, PlayoutPolicy, PolicyKind, SubsampleScheme};

const TWO_GAMES: &str = "
(;FF[4]GM[1]SZ[19]GN[first];B[dd];W[ff])
(;FF[4]GM[1]SZ[19]GN[second]
 ;B[dd];W[kk]
 ;B[ee]
 (;W[aa])(;W[ss]))
";

#[test]
fn hand_traced_two_game_network() {
    let games = parse_games(TWO_GAMES).unwrap();
    assert_eq!(games.len(), 2);
    assert_eq!(games[1].source_id, "second");
    // main variation only: W[aa] is kept, W[ss] dropped
    assert_eq!(games[1].moves.len(), 4);

    let catalog = PatternCatalog::new();
    let rule = LinkRule::default();
    let empty = CanonicalPatternId(0);
    let one_own_diagonal = CanonicalPatternId(1);
    // (3,3) -> (5,5) is sqrt(8) away: one link between two empty patterns.
    assert_eq!(game_links(&games[0], &catalog, &rule), vec![(empty, empty)]);
    // (4,4) closes (3,3) and sees it as an own diagonal stone; (10,10) and
    // (0,0) stay open.
    assert_eq!(
        game_links(&games[1], &catalog, &rule),
        vec![(empty, one_own_diagonal)]
    );

    let net = build_network(&games, &catalog, &rule);
    assert_eq!(net.k_tot(), 2);
    assert_eq!(net.games_used(), 2);
    let dist = degree_distribution(&net).unwrap();
    assert_eq!(dist.k_out[0], 2);
    assert_eq!((dist.k_in[0], dist.k_in[1]), (1, 1));
}

#[test]
fn sgf_round_trip_preserves_networks() {
    let mut policy = PlayoutPolicy::new(PolicyKind::GreedyCapture, 77);
    policy.max_moves = 150;
    let games = generate_games(&policy, 12);
    let text: String = games.iter().map(to_sgf).collect();
    let parsed = parse_games(&text).unwrap();
    assert_eq!(parsed, games);
    let catalog = PatternCatalog::new();
    let rule = LinkRule::default();
    assert_eq!(build_network(&parsed, &catalog, &rule), build_network(&games, &catalog, &rule));
}

#[test]
fn chunked_build_and_merge_agree() {
    let catalog = PatternCatalog::new();
    let rule = LinkRule::default();
    let games = generate_games(&PlayoutPolicy::new(PolicyKind::UniformRandom, 5), 30);
    let whole = build_network(&games, &catalog, &rule);
    let parts: Vec<_> = games.chunks(7).map(|c| build_network(c, &catalog, &rule)).collect();
    assert_eq!(merge(&parts).unwrap(), whole);
    let mut reversed = parts.clone();
    reversed.reverse();
    assert_eq!(merge(&reversed).unwrap(), whole);
}

#[test]
fn network_pagerank_and_spectrum() {
    let catalog = PatternCatalog::new();
    let games = generate_games(&PlayoutPolicy::new(PolicyKind::UniformRandom, 9), 60);
    let net = build_network(&games, &catalog, &LinkRule::default());

    let pr = pagerank(&GoogleMatrix::from_network(&net, 0.85).unwrap()).unwrap();
    assert!(pr.residual < 1e-10);
    assert!((pr.p.iter().sum::<f64>() - 1.0).abs() < 1e-12);

    let g1 = GoogleMatrix::from_network(&net, 1.0).unwrap();
    let spectrum = g1.full_spectrum(3).unwrap();
    assert_eq!(spectrum.eigenvalues.len(), 1107);
    assert!((spectrum.eigenvalues[0] - 1.0).norm() < 1e-8);
    assert!(spectrum.eigenvalues.iter().all(|l| l.norm() <= 1.0 + 1e-8));
    for pair in &spectrum.eigenpairs {
        assert!(pair.residual < 1e-8);
    }
    let mut prev = 0.0;
    for x in [50.0, 60.0, 70.0, 80.0, 90.0] {
        let r = lambda_c(&spectrum.eigenvalues, x, true).unwrap();
        assert!(r >= prev && r <= 1.0 + 1e-8);
        prev = r;
    }

    // The leading eigenvector at alpha = 1 is that network's PageRank.
    let p1 = pagerank(&g1).unwrap().p;
    let v: Vec<f64> = spectrum.eigenpairs[0].vector.iter().map(|c| c.re).collect();
    let report = compare(&p1, &v, 553, 30).unwrap();
    assert!((report.fidelity - 1.0).abs() < 1e-9);
    assert_eq!(
        RankingVector::from_scores(&p1).top(30),
        RankingVector::from_scores(&v).top(30)
    );
}

#[test]
fn small_corpora_discriminate_policies() {
    let catalog = PatternCatalog::new();
    let rule = LinkRule::default();
    let corpus = |kind: PolicyKind, seed: u64| {
        LinkedCorpus::from_games(
            kind.to_string(),
            &generate_games(&PlayoutPolicy::new(kind, seed), 300),
            &catalog,
            rule,
        )
    };
    let a = corpus(PolicyKind::UniformRandom, 1);
    let b = corpus(PolicyKind::GreedyCapture, 50_000);
    let scheme = SubsampleScheme::new(100, 8, 4);
    let v = turing_test(&a, &b, &scheme, &MetricParams::default(), VerdictRule::default()).unwrap();
    assert_eq!(v.decision, Decision::DifferentSource, "{:?}", v.separation);
    assert!(v.within.sigma_mean < v.between.sigma_mean);
}
