use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gonet::formats;
use gonet::io::{load_database, write_games, Database};
use gonet::parallel::{self, default_threads};
use gonet::render;
use gonet::report::{CorpusJson, ParamsJson, PointJson, SchemeJson, TuringReport, VerdictJson};
use gonet::{Error, Result};
use gonet_core::harness::{indicator_points, DrawMode, LinkedCorpus, MetricParams, VerdictRule};
use gonet_core::metrics::{self, RankingVector};
use gonet_core::network::{degree_distribution, power_law_exponent};
use gonet_core::playout::generate_games;
use gonet_core::spectral::{lambda_c, pagerank, GoogleMatrix};
use gonet_core::{DistanceMetric, LinkRule, PatternCatalog, PlayoutPolicy, PolicyKind, SubsampleScheme, N_CLASSES};

#[derive(Parser, Debug)]
#[command(name = "gonet", version, about = "Pattern networks of go games and their Google matrix")]
struct Cli {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the 3x3 pattern classes and write catalog.csv.
    Catalog {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Build the pattern network of an SGF database.
    Build {
        /// SGF file or directory searched recursively for *.sgf.
        db: PathBuf,
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// PageRank, spectrum, lambda_c table and top patterns of a network.
    Analyze {
        /// Edge list written by `build`.
        network: PathBuf,
        /// Damping factor for PageRank.
        #[arg(long, default_value_t = 0.85)]
        alpha: f64,
        /// Damping factor for the spectrum and eigenvectors.
        #[arg(long, default_value_t = 1.0)]
        spectrum_alpha: f64,
        /// Leading eigenvectors to export.
        #[arg(long, default_value_t = 7)]
        eigenvectors: usize,
        /// Patterns to render from the top of the PageRank.
        #[arg(long, default_value_t = 20)]
        top: usize,
        /// Leave the eigenvalue closest to 1 out of lambda_c.
        #[arg(long)]
        exclude_unit: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compare the PageRank rankings of two networks.
    Compare {
        reference: PathBuf,
        other: PathBuf,
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Decide whether two databases come from the same kind of player.
    Turing {
        db_a: PathBuf,
        /// Second database; omit (or repeat the first) for a split-halves self-test.
        db_b: Option<PathBuf>,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        metric: MetricArgs,
        #[command(flatten)]
        link: LinkArgs,
        /// Separation above which a metric votes "different".
        #[arg(long, default_value_t = 2.0)]
        k: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Fidelity and similarities of the leading eigenvectors, rank by rank.
    Profile {
        db_a: PathBuf,
        /// Second database; omit (or repeat the first) to compare halves of the first.
        db_b: Option<PathBuf>,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 7)]
        eigenvectors: usize,
        #[arg(long, default_value_t = 553)]
        half: usize,
        #[arg(long, default_value_t = 30)]
        window: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Write a seeded synthetic database, one SGF file per game.
    Generate {
        #[arg(long, value_enum)]
        policy: PolicyArg,
        #[arg(long)]
        games: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 250)]
        max_moves: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct LinkArgs {
    /// Strategic distance.
    #[arg(long, default_value_t = 4.0)]
    ds: f64,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    metric: MetricArg,
    /// Link at distance exactly d_s too.
    #[arg(long)]
    inclusive: bool,
}

#[derive(Args, Debug)]
struct MetricArgs {
    #[arg(long, default_value_t = 0.85)]
    alpha: f64,
    /// Top ranks of the reference used by sigma.
    #[arg(long, default_value_t = 553)]
    half: usize,
    /// Top ranks compared by S_O and S_N.
    #[arg(long, default_value_t = 30)]
    window: usize,
}

#[derive(Args, Debug)]
struct SchemeArgs {
    /// Games per subsample.
    #[arg(long)]
    group_size: usize,
    #[arg(long, default_value_t = 10)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Redraw)]
    mode: ModeArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MetricArg {
    Euclidean,
    Chebyshev,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Redraw,
    DisjointSplit,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PolicyArg {
    UniformRandom,
    GreedyCapture,
}

impl LinkArgs {
    fn rule(&self) -> Result<LinkRule> {
        if !(self.ds > 0.0 && self.ds.is_finite()) {
            return Err(Error::Validation(format!("--ds must be positive, got {}", self.ds)));
        }
        Ok(LinkRule {
            strategic_distance: self.ds,
            metric: match self.metric {
                MetricArg::Euclidean => DistanceMetric::Euclidean,
                MetricArg::Chebyshev => DistanceMetric::Chebyshev,
            },
            strict: !self.inclusive,
        })
    }
}

fn check_alpha(alpha: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(alpha)
    } else {
        Err(Error::Validation(format!("alpha must lie in [0, 1], got {alpha}")))
    }
}

fn check_window(name: &str, value: usize) -> Result<usize> {
    if (1..=N_CLASSES).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Validation(format!("--{name} must lie in 1..={N_CLASSES}, got {value}")))
    }
}

impl MetricArgs {
    fn params(&self) -> Result<MetricParams> {
        Ok(MetricParams {
            alpha: check_alpha(self.alpha)?,
            half: check_window("half", self.half)?,
            window: check_window("window", self.window)?,
        })
    }
}

impl SchemeArgs {
    fn scheme(&self) -> SubsampleScheme {
        SubsampleScheme::new(self.group_size, self.instances, self.seed).with_mode(match self.mode {
            ModeArg::Redraw => DrawMode::Redraw,
            ModeArg::DisjointSplit => DrawMode::DisjointSplit,
        })
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn load_nonempty(path: &Path) -> Result<Database> {
    let db = load_database(path)?;
    if db.games.is_empty() {
        return Err(Error::Validation(format!("{}: no usable games", path.display())));
    }
    if !db.rejected.is_empty() {
        eprintln!("{}: skipped {} unreadable games", path.display(), db.rejected.len());
    }
    Ok(db)
}

fn corpus_label(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn same_path(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

/// Link corpora for A and B. Without a distinct B, A is split in two halves.
fn corpora(
    db_a: &Path,
    db_b: Option<&Path>,
    catalog: &PatternCatalog,
    rule: LinkRule,
    threads: usize,
) -> Result<(LinkedCorpus, LinkedCorpus)> {
    let a = load_nonempty(db_a)?;
    let label_a = corpus_label(db_a);
    match db_b {
        Some(b_path) if !same_path(db_a, b_path) => {
            let b = load_nonempty(b_path)?;
            let mut label_b = corpus_label(b_path);
            if label_b == label_a {
                label_b.push_str("'");
            }
            Ok((
                parallel::link_corpus(&label_a, &a.games, catalog, rule, threads),
                parallel::link_corpus(&label_b, &b.games, catalog, rule, threads),
            ))
        }
        _ => {
            eprintln!("single database: comparing its first half with its second half");
            let whole = parallel::link_corpus(&label_a, &a.games, catalog, rule, threads);
            Ok(whole.split_at(whole.len() / 2))
        }
    }
}

fn cmd_catalog(out: &Path) -> Result<()> {
    let start = Instant::now();
    let catalog = PatternCatalog::new();
    ensure_dir(out)?;
    let path = out.join("catalog.csv");
    formats::write_catalog(&path, &catalog)?;
    let (interior, edge, corner) = catalog.geometry_counts();
    println!(
        "{} classes ({interior} interior, {edge} edge, {corner} corner) in {:.3}s",
        catalog.len(),
        start.elapsed().as_secs_f64()
    );
    println!("wrote {}", path.display());
    if catalog.len() != N_CLASSES {
        return Err(Error::Validation(format!(
            "catalog has {} classes, expected {N_CLASSES}",
            catalog.len()
        )));
    }
    Ok(())
}

fn cmd_build(db: &Path, link: &LinkArgs, out: &Path, threads: usize) -> Result<()> {
    let rule = link.rule()?;
    let database = load_nonempty(db)?;
    let catalog = PatternCatalog::new();
    let start = Instant::now();
    let net = parallel::build_network_parallel(&database.games, &catalog, &rule, threads)?;
    log::info!("built network in {:.2}s", start.elapsed().as_secs_f64());
    let dist = degree_distribution(&net)?;
    ensure_dir(out)?;
    formats::write_network(&out.join("network.tsv"), &net)?;
    formats::write_degrees(&out.join("degrees.csv"), &dist)?;
    formats::write_degree_curves(&out.join("degree_curve.csv"), &dist)?;

    println!("games: {} ({} rejected)", net.games_used(), database.rejected.len());
    println!("rule: d_s = {}, {}, {}", rule.strategic_distance, rule.metric, if rule.strict { "strict" } else { "inclusive" });
    println!("k_tot: {}", net.k_tot());
    println!("distinct links: {}", net.distinct_links());
    for (name, curve) in [("in", &dist.in_curve), ("out", &dist.out_curve)] {
        match power_law_exponent(curve, 0.1) {
            Some(g) => println!("gamma_{name}: {g:.3}"),
            None => println!("gamma_{name}: n/a"),
        }
    }
    println!("wrote network.tsv, degrees.csv, degree_curve.csv to {}", out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    network: &Path,
    alpha: f64,
    spectrum_alpha: f64,
    n_vectors: usize,
    top: usize,
    exclude_unit: bool,
    out: &Path,
) -> Result<()> {
    let net = formats::read_network(network)?;
    let catalog = PatternCatalog::new();
    ensure_dir(out)?;

    let g = GoogleMatrix::from_network(&net, check_alpha(alpha)?)?;
    let pr = pagerank(&g)?;
    formats::write_pagerank(&out.join("pagerank.csv"), &pr.p)?;
    println!(
        "PageRank (alpha = {alpha}): {} iterations, residual {:.2e}",
        pr.iterations, pr.residual
    );

    let start = Instant::now();
    let spectral_g = GoogleMatrix::from_network(&net, check_alpha(spectrum_alpha)?)?;
    let spectrum = spectral_g.full_spectrum(n_vectors.min(N_CLASSES))?;
    log::info!("spectrum in {:.2}s", start.elapsed().as_secs_f64());
    formats::write_spectrum(&out.join("spectrum.csv"), &spectrum)?;
    formats::write_eigenvectors(&out.join("eigenvectors.csv"), &spectrum)?;
    let table = [50.0, 60.0, 70.0, 80.0, 90.0]
        .iter()
        .map(|&x| Ok((x, lambda_c(&spectrum.eigenvalues, x, !exclude_unit)?)))
        .collect::<Result<Vec<_>>>()?;
    formats::write_lambda_c(&out.join("lambda_c.csv"), &table)?;
    println!("spectrum (alpha = {spectrum_alpha}): {} eigenvalues", spectrum.eigenvalues.len());
    for pair in &spectrum.eigenpairs {
        println!("  lambda = {:+.6} {:+.6}i  |lambda| = {:.6}", pair.value.re, pair.value.im, pair.value.norm());
    }
    for (x, r) in &table {
        println!("lambda_c({x}) = {r:.6}");
    }

    let ids = formats::top_nodes(&pr.p, top.min(N_CLASSES));
    let text = render::ascii_table(&catalog, &ids, 10);
    formats::write_text(&out.join("top_patterns.txt"), &text)?;
    formats::write_text(&out.join("top_patterns.svg"), &render::svg_table(&catalog, &ids, 10))?;
    println!("top {} patterns by PageRank (X = player to move, O = opponent, # = off board):", ids.len());
    print!("{text}");
    println!("wrote pagerank.csv, spectrum.csv, eigenvectors.csv, lambda_c.csv, top_patterns.{{txt,svg}} to {}", out.display());
    Ok(())
}

fn cmd_compare(reference: &Path, other: &Path, metric: &MetricArgs, out: &Path) -> Result<()> {
    let params = metric.params()?;
    let a = formats::read_network(reference)?;
    let b = formats::read_network(other)?;
    let p = pagerank(&GoogleMatrix::from_network(&a, params.alpha)?)?.p;
    let q = pagerank(&GoogleMatrix::from_network(&b, params.alpha)?)?.p;
    let report = metrics::compare(&p, &q, params.half, params.window)?;
    let (ra, rb) = (RankingVector::from_scores(&p), RankingVector::from_scores(&q));
    let sigma_ab = metrics::dispersion(&ra, &rb, params.half)?;
    let pairs = metrics::correlation_pairs(&ra, &rb, params.half)?;
    ensure_dir(out)?;
    formats::write_correlation(&out.join("correlation.csv"), &pairs)?;
    println!("sigma(reference, other) = {sigma_ab:.3}");
    println!("sigma (symmetrised)     = {:.3}", report.sigma);
    println!("F                       = {:.6}", report.fidelity);
    println!("S_O                     = {:.3}", report.s_ordered);
    println!("S_N                     = {:.3}", report.s_nonordered);
    println!("wrote correlation.csv to {}", out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_turing(
    db_a: &Path,
    db_b: Option<&Path>,
    scheme: &SchemeArgs,
    metric: &MetricArgs,
    link: &LinkArgs,
    k: f64,
    out: &Path,
    threads: usize,
) -> Result<()> {
    let rule = link.rule()?;
    let params = metric.params()?;
    let scheme = scheme.scheme();
    let catalog = PatternCatalog::new();
    let (a, b) = corpora(db_a, db_b, &catalog, rule, threads)?;
    let verdict_rule = VerdictRule { k, ..VerdictRule::default() };
    let verdict = parallel::turing_test(&a, &b, &scheme, &params, verdict_rule, threads)?;
    let points = indicator_points(&a, &b, &scheme, &params)?;

    let source = |p: Option<&Path>| p.unwrap_or(db_a).display().to_string();
    let report = TuringReport {
        scheme: SchemeJson::from(&scheme),
        params: ParamsJson::new(&params, &rule),
        corpus_a: CorpusJson {
            label: a.label.clone(),
            source: source(Some(db_a)),
            games: a.len(),
        },
        corpus_b: CorpusJson {
            label: b.label.clone(),
            source: source(db_b),
            games: b.len(),
        },
        within: PointJson::from(&verdict.within),
        between: PointJson::from(&verdict.between),
        verdict: VerdictJson::from(&verdict),
        indicator_points: points.iter().map(PointJson::from).collect(),
    };
    ensure_dir(out)?;
    let json = serde_json::to_string_pretty(&report)?;
    formats::write_text(&out.join("report.json"), &(json + "\n"))?;
    let mut scatter: Vec<(&str, &_)> = vec![("held-out", &verdict.within), ("held-out", &verdict.between)];
    scatter.extend(points.iter().map(|p| ("full-reference", p)));
    formats::write_scatter(&out.join("scatter.csv"), &scatter)?;

    for (name, p) in [("within", &verdict.within), ("between", &verdict.between)] {
        println!(
            "{name:<8} {} vs {}: F {:.4} +- {:.4}, S_N {:.3} +- {:.3}, sigma {:.1} +- {:.1}",
            p.label.0, p.label.1, p.f_mean, p.f_sd, p.sn_mean, p.sn_sd, p.sigma_mean, p.sigma_sd
        );
    }
    let s = verdict.separation;
    println!(
        "separation: F {:.2}, S_N {:.2}, sigma {:.2} (k = {k})",
        s.fidelity, s.s_nonordered, s.sigma
    );
    println!("decision: {}", verdict.decision);
    println!("wrote report.json, scatter.csv to {}", out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_profile(
    db_a: &Path,
    db_b: Option<&Path>,
    scheme: &SchemeArgs,
    link: &LinkArgs,
    alpha: f64,
    n_vectors: usize,
    half: usize,
    window: usize,
    out: &Path,
    threads: usize,
) -> Result<()> {
    let rule = link.rule()?;
    let params = MetricParams {
        alpha: check_alpha(alpha)?,
        half: check_window("half", half)?,
        window: check_window("window", window)?,
    };
    let catalog = PatternCatalog::new();
    let (a, b) = corpora(db_a, db_b, &catalog, rule, threads)?;
    let profile = parallel::eigenvector_profile(&a, &b, &scheme.scheme(), &params, n_vectors, threads)?;
    ensure_dir(out)?;
    formats::write_profile(&out.join("profile.csv"), &profile)?;
    println!("{} vs {} over {} instances", profile.label.0, profile.label.1, profile.instances);
    println!("rank  F                S_O            S_N");
    for r in 0..profile.fidelity.len() {
        let (f, so, sn) = (profile.fidelity[r], profile.s_ordered[r], profile.s_nonordered[r]);
        println!(
            "{:<5} {:.4} +- {:.4}  {:.3} +- {:.3}  {:.3} +- {:.3}",
            r + 1,
            f.mean,
            f.sd,
            so.mean,
            so.sd,
            sn.mean,
            sn.sd
        );
    }
    println!("wrote profile.csv to {}", out.display());
    Ok(())
}

fn cmd_generate(policy: PolicyArg, n: usize, seed: u64, max_moves: usize, out: &Path) -> Result<()> {
    let kind = match policy {
        PolicyArg::UniformRandom => PolicyKind::UniformRandom,
        PolicyArg::GreedyCapture => PolicyKind::GreedyCapture,
    };
    let mut policy = PlayoutPolicy::new(kind, seed);
    policy.max_moves = max_moves;
    let games = generate_games(&policy, n);
    write_games(out, &games)?;
    println!("wrote {n} {kind} games (seeds {seed}..{}) to {}", seed + n as u64, out.display());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let threads = cli.threads.unwrap_or_else(default_threads).max(1);
    match cli.command {
        Command::Catalog { out } => cmd_catalog(&out),
        Command::Build { db, link, out } => cmd_build(&db, &link, &out, threads),
        Command::Analyze {
            network,
            alpha,
            spectrum_alpha,
            eigenvectors,
            top,
            exclude_unit,
            out,
        } => cmd_analyze(&network, alpha, spectrum_alpha, eigenvectors, top, exclude_unit, &out),
        Command::Compare {
            reference,
            other,
            metric,
            out,
        } => cmd_compare(&reference, &other, &metric, &out),
        Command::Turing {
            db_a,
            db_b,
            scheme,
            metric,
            link,
            k,
            out,
        } => cmd_turing(&db_a, db_b.as_deref(), &scheme, &metric, &link, k, &out, threads),
        Command::Profile {
            db_a,
            db_b,
            scheme,
            link,
            alpha,
            eigenvectors,
            half,
            window,
            out,
        } => cmd_profile(
            &db_a,
            db_b.as_deref(),
            &scheme,
            &link,
            alpha,
            eigenvectors,
            half,
            window,
            &out,
            threads,
        ),
        Command::Generate {
            policy,
            games,
            seed,
            max_moves,
            out,
        } => cmd_generate(policy, games, seed, max_moves, &out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
