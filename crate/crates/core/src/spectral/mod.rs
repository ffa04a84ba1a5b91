//! Google matrix of a pattern network: PageRank, full spectrum, `λ_c(x)`.
//!
//! `G = α S + (1 - α)/N` where column `j` of `S` holds node `j`'s outgoing
//! link weights normalised to 1, and a node without outgoing links gets the
//! uniform column `1/N`. `G` is column-stochastic.

pub mod eigen;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
// Float methods under no_std; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

use crate::network::PatternNetwork;
use eigen::{DenseMatrix, EigenError};

pub const DEFAULT_ALPHA: f64 = 0.85;
pub const SPECTRUM_ALPHA: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("damping factor {0} outside [0, 1]")]
    InvalidAlpha(f64),
    #[error("power iteration did not converge in {0} iterations")]
    NoConvergence(usize),
    #[error("eigensolver failure: {0}")]
    EigensolverFailure(#[from] EigenError),
    #[error("percentage {0} outside (0, 100]")]
    InvalidPercentage(f64),
}

/// Column-stochastic matrix in compressed sparse column form.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    col_ptr: Vec<usize>,
    rows: Vec<u32>,
    values: Vec<f64>,
    dangling: Vec<bool>,
}

impl StochasticMatrix {
    /// From weighted links `(from, to, weight)` on `n` nodes. Column `from`
    /// receives `weight / K_out(from)` in row `to`.
    pub fn from_links<I>(n: usize, links: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut cols: Vec<Vec<(u32, u64)>> = vec![Vec::new(); n];
        for (from, to, w) in links {
            assert!(from < n && to < n, "link {from}->{to} outside {n} nodes");
            if w > 0 {
                cols[from].push((to as u32, w));
            }
        }
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut rows = Vec::new();
        let mut values = Vec::new();
        let mut dangling = Vec::with_capacity(n);
        col_ptr.push(0);
        for mut col in cols {
            col.sort_unstable_by_key(|e| e.0);
            // merge duplicate targets
            col.dedup_by(|b, a| {
                if a.0 == b.0 {
                    a.1 += b.1;
                    true
                } else {
                    false
                }
            });
            let k_out: u64 = col.iter().map(|e| e.1).sum();
            dangling.push(k_out == 0);
            for (r, w) in col {
                rows.push(r);
                values.push(w as f64 / k_out as f64);
            }
            col_ptr.push(rows.len());
        }
        Self {
            n,
            col_ptr,
            rows,
            values,
            dangling,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_dangling(&self, j: usize) -> bool {
        self.dangling[j]
    }

    /// Entry `(i, j)` with dangling columns already uniform.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.dangling[j] {
            return 1.0 / self.n as f64;
        }
        let range = self.col_ptr[j]..self.col_ptr[j + 1];
        match self.rows[range.clone()].binary_search(&(i as u32)) {
            Ok(k) => self.values[range.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| {
                if self.dangling[j] {
                    self.n as f64 * (1.0 / self.n as f64)
                } else {
                    self.values[self.col_ptr[j]..self.col_ptr[j + 1]].iter().sum()
                }
            })
            .collect()
    }
}

/// Builds `S` from a pattern network (one node per pattern class).
pub fn stochastic_matrix(net: &PatternNetwork) -> StochasticMatrix {
    StochasticMatrix::from_links(
        net.n_nodes(),
        net.links().map(|(f, t, w)| (f.index(), t.index(), w)),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoogleMatrix {
    s: StochasticMatrix,
    alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankVector {
    pub p: Vec<f64>,
    /// `‖Gp - p‖₁` of the returned vector.
    pub residual: f64,
    pub iterations: usize,
}

/// One eigenvalue with its right eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: Complex64,
    /// Unit 2-norm; largest-modulus component real positive.
    pub vector: Vec<Complex64>,
    /// `‖Gv - λv‖₂`
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// All eigenvalues ordered by `(|λ| desc, Re λ desc, Im λ desc)`.
    pub eigenvalues: Vec<Complex64>,
    /// Leading eigenpairs in the same order.
    pub eigenpairs: Vec<EigenPair>,
}

/// Moduli are compared on a grid of this spacing, so that `1` and `-1`
/// computed with rounding noise still tie and fall back to the real part.
const MODULUS_GRID: f64 = 1e-10;

/// Ordering of eigenvalues: larger modulus first, then larger real part,
/// then larger imaginary part.
pub fn eigen_order(a: &Complex64, b: &Complex64) -> Ordering {
    let key = |c: &Complex64| (c.norm() / MODULUS_GRID).round();
    key(b)
        .total_cmp(&key(a))
        .then(b.re.total_cmp(&a.re))
        .then(b.im.total_cmp(&a.im))
}

impl GoogleMatrix {
    pub fn new(s: StochasticMatrix, alpha: f64) -> Result<Self, SpectralError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(SpectralError::InvalidAlpha(alpha));
        }
        Ok(Self { s, alpha })
    }

    pub fn from_network(net: &PatternNetwork, alpha: f64) -> Result<Self, SpectralError> {
        Self::new(stochastic_matrix(net), alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.s.n
    }

    pub fn stochastic(&self) -> &StochasticMatrix {
        &self.s
    }

    /// `out = G x`, using only the sparse part of `S`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        let n = self.s.n;
        let mut dangling_mass = 0.0;
        let mut total = 0.0;
        for o in out.iter_mut() {
            *o = 0.0;
        }
        for j in 0..n {
            let xj = x[j];
            total += xj;
            if self.s.dangling[j] {
                dangling_mass += xj;
                continue;
            }
            for k in self.s.col_ptr[j]..self.s.col_ptr[j + 1] {
                out[self.s.rows[k] as usize] += self.alpha * self.s.values[k] * xj;
            }
        }
        let shift = (self.alpha * dangling_mass + (1.0 - self.alpha) * total) / n as f64;
        for o in out.iter_mut() {
            *o += shift;
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.s.n;
        let teleport = (1.0 - self.alpha) / n as f64;
        let uniform = 1.0 / n as f64;
        let mut m = DenseMatrix::zeros(n);
        for j in 0..n {
            if self.s.dangling[j] {
                for i in 0..n {
                    m[(i, j)] = uniform;
                }
                continue;
            }
            for i in 0..n {
                m[(i, j)] = teleport;
            }
            for k in self.s.col_ptr[j]..self.s.col_ptr[j + 1] {
                m[(self.s.rows[k] as usize, j)] += self.alpha * self.s.values[k];
            }
        }
        m
    }

    /// Power iteration from the uniform vector until successive iterates
    /// differ by less than `tol` in 1-norm.
    pub fn pagerank(&self, tol: f64, max_iter: usize) -> Result<PageRankVector, SpectralError> {
        let n = self.s.n;
        let mut p = vec![1.0 / n as f64; n];
        let mut next = vec![0.0; n];
        let mut iterations = 0;
        loop {
            if iterations >= max_iter {
                return Err(SpectralError::NoConvergence(max_iter));
            }
            self.apply(&p, &mut next);
            iterations += 1;
            let diff: f64 = p.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
            core::mem::swap(&mut p, &mut next);
            if diff < tol {
                break;
            }
        }
        let sum: f64 = p.iter().sum();
        for x in &mut p {
            *x /= sum;
        }
        self.apply(&p, &mut next);
        let residual = p.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        Ok(PageRankVector {
            p,
            residual,
            iterations,
        })
    }

    /// Every eigenvalue of the dense matrix, with right eigenvectors for the
    /// `n_vectors` leading ones.
    pub fn full_spectrum(&self, n_vectors: usize) -> Result<Spectrum, SpectralError> {
        let dense = self.to_dense();
        let decomposition = eigen::eigen_decomposition(&dense, |ev| {
            let mut order: Vec<usize> = (0..ev.len()).collect();
            order.sort_by(|&a, &b| eigen_order(&ev[a], &ev[b]));
            order.truncate(n_vectors);
            order
        })?;
        let mut eigenvalues = decomposition.eigenvalues.clone();
        eigenvalues.sort_by(eigen_order);
        let mut picked: Vec<Complex64> = decomposition.eigenvalues.clone();
        picked.sort_by(eigen_order);
        picked.truncate(n_vectors);
        let eigenpairs = picked
            .into_iter()
            .zip(decomposition.vectors)
            .map(|(value, vector)| {
                let gv = dense.mul_complex(&vector);
                let residual = gv
                    .iter()
                    .zip(&vector)
                    .map(|(a, b)| (a - value * b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                EigenPair {
                    value,
                    vector,
                    residual,
                }
            })
            .collect();
        Ok(Spectrum {
            eigenvalues,
            eigenpairs,
        })
    }
}

/// Power iteration with `tol = 1e-12` and at most 10000 iterations.
pub fn pagerank(g: &GoogleMatrix) -> Result<PageRankVector, SpectralError> {
    g.pagerank(1e-12, 10_000)
}

pub fn full_spectrum(g: &GoogleMatrix, n_vectors: usize) -> Result<Spectrum, SpectralError> {
    g.full_spectrum(n_vectors)
}

impl Spectrum {
    pub fn moduli(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|c| c.norm()).collect()
    }
}

/// Radius of the smallest origin-centred disk holding `x` percent of the
/// eigenvalues: the `⌈x N / 100⌉`-th smallest modulus.
///
/// With `include_unit` unset, the eigenvalue closest to 1 is left out and
/// the percentage applies to the remaining `N - 1`.
pub fn lambda_c(eigenvalues: &[Complex64], x: f64, include_unit: bool) -> Result<f64, SpectralError> {
    if !(x > 0.0 && x <= 100.0) {
        return Err(SpectralError::InvalidPercentage(x));
    }
    let mut values: Vec<Complex64> = eigenvalues.to_vec();
    if !include_unit {
        if let Some(pos) = values
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - 1.0).norm().total_cmp(&(b.1 - 1.0).norm()))
            .map(|(i, _)| i)
        {
            values.remove(pos);
        }
    }
    let mut moduli: Vec<f64> = values.iter().map(|c| c.norm()).collect();
    if moduli.is_empty() {
        return Ok(0.0);
    }
    moduli.sort_by(f64::total_cmp);
    let n = moduli.len();
    // Guard against x·N/100 landing a hair above an integer.
    let k = ((x * n as f64 / 100.0) - 1e-9).ceil().max(1.0) as usize;
    Ok(moduli[k.min(n) - 1])
}
