//! Plain-text outputs: CSV tables, the TSV edge list and its reader.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use gonet_core::harness::{EigenvectorProfile, IndicatorPoint};
use gonet_core::network::{DegreeDistribution, DistanceMetric};
use gonet_core::spectral::Spectrum;
use gonet_core::{CanonicalPatternId, LinkRule, PatternCatalog, PatternNetwork, RankingVector};
use serde::Serialize;

use crate::{Error, Result};

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes serialisable rows with a header taken from the field names.
fn write_rows<R: Serialize>(path: &Path, rows: impl IntoIterator<Item = R>) -> Result<()> {
    let wrap = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv_writer(path)?;
    for row in rows {
        w.serialize(row).map_err(wrap)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Pattern code as 8 base-4 digits, first neighbour first.
pub fn encoding_digits(code: u16) -> String {
    (0..8).rev().map(|i| char::from(b'0' + ((code >> (2 * i)) & 3) as u8)).collect()
}

#[derive(Serialize)]
struct CatalogRow {
    id: u16,
    encoding: String,
    geometry: String,
    orbit_size: u32,
}

pub fn write_catalog(path: &Path, catalog: &PatternCatalog) -> Result<()> {
    write_rows(
        path,
        catalog.ids().map(|id| CatalogRow {
            id: id.0,
            encoding: encoding_digits(catalog.representative(id).encode()),
            geometry: catalog.geometry(id).to_string(),
            orbit_size: catalog.orbit_size(id),
        }),
    )
}

/// TSV edge list preceded by a `# key=value` metadata line.
pub fn write_network(path: &Path, net: &PatternNetwork) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let rule = net.rule();
    let result = (|| -> std::io::Result<()> {
        writeln!(
            w,
            "# n_nodes={}\tk_tot={}\tgames_used={}\td_s={}\tmetric={}\tstrict={}",
            net.n_nodes(),
            net.k_tot(),
            net.games_used(),
            rule.strategic_distance,
            rule.metric,
            rule.strict
        )?;
        writeln!(w, "from_id\tto_id\tcount")?;
        for (from, to, count) in net.links() {
            writeln!(w, "{}\t{}\t{count}", from.0, to.0)?;
        }
        w.flush()
    })();
    result.map_err(|e| Error::io(path, e))
}

/// Reads a file produced by [`write_network`], checking the node count and
/// that the weights add up to the recorded `k_tot`.
pub fn read_network(path: &Path) -> Result<PatternNetwork> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = BufReader::new(file);
    let bad = |line: usize, reason: String| Error::Format {
        path: path.to_path_buf(),
        line,
        reason,
    };

    let mut meta = String::new();
    reader.read_line(&mut meta).map_err(|e| Error::io(path, e))?;
    let meta = meta
        .trim_end()
        .strip_prefix("# ")
        .ok_or_else(|| bad(1, "missing '# key=value' metadata line".into()))?;
    let mut n_nodes = None;
    let mut k_tot = None;
    let mut games_used = None;
    let mut rule = LinkRule::default();
    for field in meta.split('\t') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(1, format!("metadata field {field:?} is not key=value")))?;
        let num = |v: &str| v.parse::<u64>().map_err(|_| bad(1, format!("{key}: bad number {v:?}")));
        match key {
            "n_nodes" => n_nodes = Some(num(value)?),
            "k_tot" => k_tot = Some(num(value)?),
            "games_used" => games_used = Some(num(value)?),
            "d_s" => {
                rule.strategic_distance = value
                    .parse()
                    .map_err(|_| bad(1, format!("d_s: bad number {value:?}")))?
            }
            "metric" => {
                rule.metric = match value {
                    "euclidean" => DistanceMetric::Euclidean,
                    "chebyshev" => DistanceMetric::Chebyshev,
                    _ => return Err(bad(1, format!("unknown metric {value:?}"))),
                }
            }
            "strict" => {
                rule.strict = value
                    .parse()
                    .map_err(|_| bad(1, format!("strict: expected true/false, got {value:?}")))?
            }
            _ => log::warn!("{}: ignoring metadata key {key:?}", path.display()),
        }
    }
    let (Some(n_nodes), Some(k_tot)) = (n_nodes, k_tot) else {
        return Err(bad(1, "metadata needs n_nodes and k_tot".into()));
    };
    if n_nodes as usize != gonet_core::N_CLASSES {
        return Err(bad(1, format!("n_nodes is {n_nodes}, expected {}", gonet_core::N_CLASSES)));
    }

    let mut rows = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .from_reader(reader);
    let mut links = Vec::new();
    for (i, record) in rows.deserialize::<(u16, u16, u64)>().enumerate() {
        // metadata and column header come first
        let line = i + 3;
        let (from, to, count) = record.map_err(|e| bad(line, e.to_string()))?;
        links.push((from, to, count));
    }
    let net = PatternNetwork::from_links(rule, games_used.unwrap_or(0), links)?;
    if net.k_tot() != k_tot {
        return Err(Error::Validation(format!(
            "{}: weights sum to {} but k_tot is {k_tot}",
            path.display(),
            net.k_tot()
        )));
    }
    Ok(net)
}

#[derive(Serialize)]
struct DegreeRow {
    id: usize,
    k_in: u64,
    k_out: u64,
}

pub fn write_degrees(path: &Path, dist: &DegreeDistribution) -> Result<()> {
    write_rows(
        path,
        dist.k_in
            .iter()
            .zip(&dist.k_out)
            .enumerate()
            .map(|(id, (&k_in, &k_out))| DegreeRow { id, k_in, k_out }),
    )
}

#[derive(Serialize)]
struct CurveRow {
    direction: &'static str,
    k: u64,
    k_star: f64,
    p: f64,
}

/// Both integrated curves, ingoing then outgoing, each by increasing `K*`.
pub fn write_degree_curves(path: &Path, dist: &DegreeDistribution) -> Result<()> {
    let mut all = Vec::new();
    for (direction, curve) in [("in", &dist.in_curve), ("out", &dist.out_curve)] {
        all.extend(curve.iter().map(|c| CurveRow {
            direction,
            k: c.k,
            k_star: c.k_star,
            p: c.p,
        }));
    }
    write_rows(path, all)
}

#[derive(Serialize)]
struct PageRankRow {
    rank: usize,
    node_id: u32,
    p: f64,
}

/// PageRank ordered by rank (1 = largest entry).
pub fn write_pagerank(path: &Path, p: &[f64]) -> Result<()> {
    let ranking = RankingVector::from_scores(p);
    write_rows(
        path,
        ranking.order().iter().enumerate().map(|(k, &node)| PageRankRow {
            rank: k + 1,
            node_id: node,
            p: p[node as usize],
        }),
    )
}

#[derive(Serialize)]
struct SpectrumRow {
    re: f64,
    im: f64,
}

pub fn write_spectrum(path: &Path, spectrum: &Spectrum) -> Result<()> {
    write_rows(
        path,
        spectrum.eigenvalues.iter().map(|c| SpectrumRow { re: c.re, im: c.im }),
    )
}

#[derive(Serialize)]
struct EigenvectorRow {
    eigen_rank: usize,
    lambda_re: f64,
    lambda_im: f64,
    node_id: usize,
    re: f64,
    im: f64,
    modulus: f64,
}

/// One block of `N` rows per computed eigenvector, in eigenvalue order.
pub fn write_eigenvectors(path: &Path, spectrum: &Spectrum) -> Result<()> {
    let rows = spectrum.eigenpairs.iter().enumerate().flat_map(|(r, pair)| {
        pair.vector.iter().enumerate().map(move |(node_id, v)| EigenvectorRow {
            eigen_rank: r + 1,
            lambda_re: pair.value.re,
            lambda_im: pair.value.im,
            node_id,
            re: v.re,
            im: v.im,
            modulus: v.norm(),
        })
    });
    write_rows(path, rows)
}

#[derive(Serialize)]
struct LambdaCRow {
    x: f64,
    lambda_c: f64,
}

pub fn write_lambda_c(path: &Path, table: &[(f64, f64)]) -> Result<()> {
    write_rows(path, table.iter().map(|&(x, lambda_c)| LambdaCRow { x, lambda_c }))
}

#[derive(Serialize)]
struct CorrelationRow {
    node_id: u32,
    rank_a: u32,
    rank_b: u32,
}

/// `(R_A(n), R_B(n))` for the reference's top nodes, ranks 1-based.
pub fn write_correlation(path: &Path, pairs: &[(u32, u32, u32)]) -> Result<()> {
    write_rows(
        path,
        pairs.iter().map(|&(node_id, rank_a, rank_b)| CorrelationRow {
            node_id,
            rank_a,
            rank_b,
        }),
    )
}

#[derive(Serialize)]
struct ScatterRow<'a> {
    protocol: &'a str,
    reference: &'a str,
    sample: &'a str,
    instances: usize,
    f_mean: f64,
    f_sd: f64,
    sn_mean: f64,
    sn_sd: f64,
    sigma_mean: f64,
    sigma_sd: f64,
}

/// Indicator points with error bars, tagged by the protocol that made them.
pub fn write_scatter(path: &Path, points: &[(&str, &IndicatorPoint)]) -> Result<()> {
    write_rows(
        path,
        points.iter().map(|(protocol, p)| ScatterRow {
            protocol,
            reference: &p.label.0,
            sample: &p.label.1,
            instances: p.instances.len(),
            f_mean: p.f_mean,
            f_sd: p.f_sd,
            sn_mean: p.sn_mean,
            sn_sd: p.sn_sd,
            sigma_mean: p.sigma_mean,
            sigma_sd: p.sigma_sd,
        }),
    )
}

#[derive(Serialize)]
struct ProfileRow {
    eigen_rank: usize,
    f_mean: f64,
    f_sd: f64,
    so_mean: f64,
    so_sd: f64,
    sn_mean: f64,
    sn_sd: f64,
}

pub fn write_profile(path: &Path, profile: &EigenvectorProfile) -> Result<()> {
    write_rows(
        path,
        (0..profile.fidelity.len()).map(|r| ProfileRow {
            eigen_rank: r + 1,
            f_mean: profile.fidelity[r].mean,
            f_sd: profile.fidelity[r].sd,
            so_mean: profile.s_ordered[r].mean,
            so_sd: profile.s_ordered[r].sd,
            sn_mean: profile.s_nonordered[r].mean,
            sn_sd: profile.s_nonordered[r].sd,
        }),
    )
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Node ids of the top `n` entries of a score vector.
pub fn top_nodes(p: &[f64], n: usize) -> Vec<CanonicalPatternId> {
    RankingVector::from_scores(p)
        .top(n)
        .iter()
        .map(|&id| CanonicalPatternId(id as u16))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gonet_core::network::degree_distribution;

    fn toy_network() -> PatternNetwork {
        PatternNetwork::from_links(LinkRule::default(), 2, [(3, 7, 2), (7, 3, 1), (1106, 0, 5)]).unwrap()
    }

    #[test]
    fn encoding_digits_are_base_four() {
        assert_eq!(encoding_digits(0), "00000000");
        assert_eq!(encoding_digits(1), "00000001");
        assert_eq!(encoding_digits(0xFFFF), "33333333");
        assert_eq!(encoding_digits(0b10_00_00_00_00_00_00_01), "20000001");
    }

    #[test]
    fn network_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("net.tsv");
        let mut net = toy_network();
        write_network(&path, &net).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "# n_nodes=1107\tk_tot=8\tgames_used=2\td_s=4\tmetric=euclidean\tstrict=true\n\
             from_id\tto_id\tcount\n3\t7\t2\n7\t3\t1\n1106\t0\t5\n"
        );
        assert_eq!(read_network(&path).unwrap(), net);

        let rule = LinkRule {
            strategic_distance: 3.5,
            metric: DistanceMetric::Chebyshev,
            strict: false,
        };
        net = PatternNetwork::from_links(rule, 9, [(0, 0, 1)]).unwrap();
        write_network(&path, &net).unwrap();
        assert_eq!(read_network(&path).unwrap(), net);
    }

    #[test]
    fn network_reader_rejects_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("net.tsv");
        let header = "# n_nodes=1107\tk_tot=3\tgames_used=1\td_s=4\tmetric=euclidean\tstrict=true\nfrom_id\tto_id\tcount\n";
        for (body, code) in [
            (format!("{header}1\t2\t2\n"), 2),
            (format!("{header}1\t2000\t3\n"), 2),
            (format!("{header}1\tx\t3\n"), 1),
            ("from_id\tto_id\tcount\n".to_string(), 1),
            ("# n_nodes=9\tk_tot=0\n".to_string(), 1),
        ] {
            fs::write(&path, body).unwrap();
            assert_eq!(read_network(&path).unwrap_err().exit_code(), code);
        }
    }

    #[test]
    fn tables_have_expected_shape() {
        let dir = tempfile::tempdir().unwrap();
        let net = toy_network();
        let dist = degree_distribution(&net).unwrap();
        let deg = dir.path().join("deg.csv");
        write_degrees(&deg, &dist).unwrap();
        let text = fs::read_to_string(&deg).unwrap();
        assert_eq!(text.lines().count(), 1108);
        assert_eq!(text.lines().nth(4).unwrap(), "3,1,2");
        let curve = dir.path().join("curve.csv");
        write_degree_curves(&curve, &dist).unwrap();
        let text = fs::read_to_string(&curve).unwrap();
        assert_eq!(text.lines().next().unwrap(), "direction,k,k_star,p");
        assert_eq!(text.lines().count(), 1 + 3 + 3);

        let pr = dir.path().join("pr.csv");
        write_pagerank(&pr, &[0.2, 0.5, 0.3]).unwrap();
        assert_eq!(fs::read_to_string(&pr).unwrap(), "rank,node_id,p\n1,1,0.5\n2,2,0.3\n3,0,0.2\n");
    }
}
