//! Dense nonsymmetric eigenvalue problem.
//!
//! Balancing by powers of two, Householder reduction to upper Hessenberg
//! form, then the Francis double-shift QR iteration (after EISPACK `hqr`)
//! for all eigenvalues. Eigenvectors are only needed for a handful of
//! eigenvalues, so they come from inverse iteration on the Hessenberg
//! matrix, mapped back through the reflectors and the balancing scale.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Float methods under no_std; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;
use thiserror::Error;

use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EigenError {
    #[error("QR iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("matrix has non-finite entries")]
    NonFinite,
}

/// Square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// `A x` for a complex vector.
    pub fn mul_complex(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Complex64::zero(), |acc, (&a, &v)| acc + v * a)
            })
            .collect()
    }
}

impl core::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Scales rows and columns by powers of two so that each off-diagonal row
/// and column norm pair is comparable. Returns `d` with `B = D⁻¹ A D`.
pub fn balance(a: &mut DenseMatrix) -> Vec<f64> {
    const RADIX: f64 = 2.0;
    let n = a.n;
    let mut scale = vec![1.0; n];
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c >= g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                scale[i] *= f;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            return scale;
        }
    }
}

/// Householder reflector `I - beta v vᵀ` acting on rows/columns `start..n`.
#[derive(Debug, Clone)]
pub struct Reflector {
    start: usize,
    beta: f64,
    v: Vec<f64>,
}

impl Reflector {
    fn apply(&self, x: &mut [f64]) {
        let tail = &mut x[self.start..];
        let s: f64 = self.v.iter().zip(tail.iter()).map(|(a, b)| a * b).sum();
        let s = s * self.beta;
        for (t, &v) in tail.iter_mut().zip(&self.v) {
            *t -= s * v;
        }
    }
}

/// Reduces `a` in place to upper Hessenberg form `H = Qᵀ A Q`; returns the
/// reflectors whose product (in order) is `Q`.
pub fn hessenberg(a: &mut DenseMatrix) -> Vec<Reflector> {
    let n = a.n;
    let mut reflectors = Vec::new();
    let mut w = vec![0.0; n];
    for m in 1..n.saturating_sub(1) {
        let col = m - 1;
        let scale: f64 = (m..n).map(|i| a[(i, col)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut v: Vec<f64> = (m..n).map(|i| a[(i, col)] / scale).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            continue;
        }
        let beta = 2.0 / vtv;

        // Left: rows m..n, columns col..n.
        for x in w[col..].iter_mut() {
            *x = 0.0;
        }
        for (k, &vk) in v.iter().enumerate() {
            let row = &a.data[(m + k) * n..(m + k + 1) * n];
            for j in col..n {
                w[j] += vk * row[j];
            }
        }
        for (k, &vk) in v.iter().enumerate() {
            let f = beta * vk;
            let row = &mut a.data[(m + k) * n..(m + k + 1) * n];
            for j in col..n {
                row[j] -= f * w[j];
            }
        }
        // Right: all rows, columns m..n.
        for i in 0..n {
            let row = &mut a.data[i * n + m..(i + 1) * n];
            let s: f64 = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            let f = beta * s;
            for (x, &y) in row.iter_mut().zip(&v) {
                *x -= f * y;
            }
        }
        a[(m, col)] = alpha * scale;
        for i in m + 1..n {
            a[(i, col)] = 0.0;
        }
        reflectors.push(Reflector { start: m, beta, v });
    }
    reflectors
}

/// Eigenvalues of an upper Hessenberg matrix; `h` is destroyed.
pub fn hqr(h: &mut DenseMatrix) -> Result<Vec<Complex64>, EigenError> {
    let nn = h.n;
    let mut wr = vec![0.0; nn];
    let mut wi = vec![0.0; nn];
    if nn == 0 {
        return Ok(Vec::new());
    }
    let eps = f64::EPSILON;
    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[(i, j)].abs();
        }
    }
    if !norm.is_finite() {
        return Err(EigenError::NonFinite);
    }
    let max_sweeps = 30 * nn.max(10);
    let mut sweeps = 0;

    let mut n = nn as isize - 1;
    let mut iter = 0;
    let mut exshift = 0.0;
    let at = |i: isize, j: isize| (i as usize, j as usize);
    while n >= 0 {
        // Small subdiagonal element.
        let mut l = n;
        while l > 0 {
            let mut s = h[at(l - 1, l - 1)].abs() + h[at(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            // Relative test first; the absolute one keeps clusters of
            // (near-)zero eigenvalues from stalling the iteration.
            let sub = h[at(l, l - 1)].abs();
            if sub <= eps * s || sub <= eps * norm {
                break;
            }
            l -= 1;
        }

        if l == n {
            wr[n as usize] = h[at(n, n)] + exshift;
            wi[n as usize] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            let w = h[at(n, n - 1)] * h[at(n - 1, n)];
            let p = (h[at(n - 1, n - 1)] - h[at(n, n)]) / 2.0;
            let q = p * p + w;
            let mut z = q.abs().sqrt();
            let x = h[at(n, n)] + exshift;
            let (a, b) = ((n - 1) as usize, n as usize);
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                wr[a] = x + z;
                wr[b] = if z != 0.0 { x - w / z } else { x + z };
                wi[a] = 0.0;
                wi[b] = 0.0;
            } else {
                wr[a] = x + p;
                wr[b] = x + p;
                wi[a] = z;
                wi[b] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            sweeps += 1;
            if sweeps > max_sweeps {
                return Err(EigenError::NoConvergence(sweeps));
            }
            let mut x = h[at(n, n)];
            let mut y = h[at(n - 1, n - 1)];
            let mut w = h[at(n, n - 1)] * h[at(n - 1, n)];

            // Exceptional shifts.
            if iter == 10 {
                exshift += x;
                for i in 0..=n {
                    h[at(i, i)] -= x;
                }
                let s = h[at(n, n - 1)].abs() + h[at(n - 1, n - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                let mut s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in 0..=n {
                        h[at(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }
            iter += 1;

            // Two consecutive small subdiagonal elements.
            let mut m = n - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = h[at(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h[at(m + 1, m)] + h[at(m, m + 1)];
                q = h[at(m + 1, m + 1)] - z - rr - ss;
                r = h[at(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                if s != 0.0 {
                    p /= s;
                    q /= s;
                    r /= s;
                }
                if m == l {
                    break;
                }
                let lhs = h[at(m, m - 1)].abs() * (q.abs() + r.abs());
                let rhs = eps
                    * (p.abs() * (h[at(m - 1, m - 1)].abs() + z.abs() + h[at(m + 1, m + 1)].abs()));
                if lhs < rhs {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=n {
                h[at(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[at(i, i - 3)] = 0.0;
                }
            }

            // Double QR step on rows l..=n, columns m..=n.
            for k in m..n {
                let notlast = k != n - 1;
                let mut xk = 0.0;
                if k != m {
                    p = h[at(k, k - 1)];
                    q = h[at(k + 1, k - 1)];
                    r = if notlast { h[at(k + 2, k - 1)] } else { 0.0 };
                    xk = p.abs() + q.abs() + r.abs();
                    if xk == 0.0 {
                        continue;
                    }
                    p /= xk;
                    q /= xk;
                    r /= xk;
                }
                let mut s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s == 0.0 {
                    continue;
                }
                if k != m {
                    h[at(k, k - 1)] = -s * xk;
                } else if l != m {
                    h[at(k, k - 1)] = -h[at(k, k - 1)];
                }
                p += s;
                let xr = p / s;
                let yr = q / s;
                let zr = r / s;
                q /= p;
                r /= p;

                let nu = nn;
                let (k0, k1, k2) = (k as usize, (k + 1) as usize, (k + 2) as usize);
                for j in k0..=n as usize {
                    let mut pp = h.data[k0 * nu + j] + q * h.data[k1 * nu + j];
                    if notlast {
                        pp += r * h.data[k2 * nu + j];
                        h.data[k2 * nu + j] -= pp * zr;
                    }
                    h.data[k0 * nu + j] -= pp * xr;
                    h.data[k1 * nu + j] -= pp * yr;
                }
                let last = n.min(k + 3) as usize;
                for i in l as usize..=last {
                    let row = i * nu;
                    let mut pp = xr * h.data[row + k0] + yr * h.data[row + k1];
                    if notlast {
                        pp += zr * h.data[row + k2];
                        h.data[row + k2] -= pp * r;
                    }
                    h.data[row + k0] -= pp;
                    h.data[row + k1] -= pp * q;
                }
            }
        }
    }
    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}

/// Solves `(H - mu I) y = b` in place for upper Hessenberg `H`, with
/// row interchanges between neighbours only. Tiny pivots are replaced by
/// `floor` so that `mu` may be an exact eigenvalue.
fn hessenberg_solve(h: &DenseMatrix, mu: Complex64, b: &mut [Complex64], floor: f64) {
    let n = h.n;
    if n == 0 {
        return;
    }
    let entry = |i: usize, j: usize| {
        let v = Complex64::new(h[(i, j)], 0.0);
        if i == j {
            v - mu
        } else {
            v
        }
    };
    // rows[k] holds row k of the triangular factor over columns k..n.
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut pivot: Vec<Complex64> = (0..n).map(|j| entry(0, j)).collect();
    for k in 0..n {
        if k + 1 < n {
            let mut next: Vec<Complex64> = (k..n).map(|j| entry(k + 1, j)).collect();
            if next[0].norm() > pivot[0].norm() {
                core::mem::swap(&mut pivot, &mut next);
                b.swap(k, k + 1);
            }
            if pivot[0].norm() < floor {
                pivot[0] = Complex64::new(floor, 0.0);
            }
            let f = next[0] / pivot[0];
            for j in 1..next.len() {
                let p = pivot[j];
                next[j] -= f * p;
            }
            let bk = b[k];
            b[k + 1] -= f * bk;
            next.remove(0);
            rows.push(core::mem::replace(&mut pivot, next));
        } else {
            if pivot[0].norm() < floor {
                pivot[0] = Complex64::new(floor, 0.0);
            }
            rows.push(core::mem::take(&mut pivot));
        }
    }
    for k in (0..n).rev() {
        let row = &rows[k];
        let mut acc = b[k];
        for (off, &c) in row.iter().enumerate().skip(1) {
            acc -= c * b[k + off];
        }
        b[k] = acc / row[0];
    }
}

fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvector of Hessenberg `h` for the (computed) eigenvalue `lambda`.
pub fn inverse_iteration(h: &DenseMatrix, lambda: Complex64, seed: u64) -> Vec<Complex64> {
    let n = h.n;
    let hnorm = (0..n)
        .map(|i| (i.saturating_sub(1)..n).map(|j| h[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let floor = f64::EPSILON * hnorm;
    let mut rng = SplitMix64::new(seed);
    let mut y: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(0.5 + rng.next_f64(), 0.0))
        .collect();
    for _ in 0..4 {
        hessenberg_solve(h, lambda, &mut y, floor);
        let nrm = norm2(&y);
        if !(nrm.is_finite() && nrm > 0.0) {
            break;
        }
        for c in &mut y {
            *c /= nrm;
        }
        // Residual ‖(H - λ)y‖ on the Hessenberg form.
        let mut res = 0.0;
        for i in 0..n {
            let mut acc = -lambda * y[i];
            for j in i.saturating_sub(1)..n {
                acc += y[j] * h[(i, j)];
            }
            res += acc.norm_sqr();
        }
        if res.sqrt() <= 1e3 * f64::EPSILON * hnorm {
            break;
        }
    }
    y
}

/// Result of [`eigen_decomposition`].
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// All eigenvalues, unordered.
    pub eigenvalues: Vec<Complex64>,
    /// Requested eigenvectors (unit 2-norm), in the order requested.
    pub vectors: Vec<Vec<Complex64>>,
}

/// All eigenvalues of `a`, and right eigenvectors for the eigenvalues picked
/// by `select` (indices into the returned eigenvalue list).
pub fn eigen_decomposition<F>(a: &DenseMatrix, select: F) -> Result<Decomposition, EigenError>
where
    F: FnOnce(&[Complex64]) -> Vec<usize>,
{
    if a.data.iter().any(|x| !x.is_finite()) {
        return Err(EigenError::NonFinite);
    }
    let mut h = a.clone();
    let scale = balance(&mut h);
    let reflectors = hessenberg(&mut h);
    let hess = h.clone();
    let eigenvalues = hqr(&mut h)?;
    let picked = select(&eigenvalues);
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(picked.len());
    for (rank, &idx) in picked.iter().enumerate() {
        let lambda = eigenvalues[idx];
        // Conjugate pairs share conjugate eigenvectors.
        let twin = picked[..rank]
            .iter()
            .position(|&j| eigenvalues[j] == lambda.conj() && lambda.im != 0.0);
        if let Some(t) = twin {
            let v = vectors[t].iter().map(|c| c.conj()).collect();
            vectors.push(v);
            continue;
        }
        let y = inverse_iteration(&hess, lambda, 0x5EED ^ idx as u64);
        let mut re: Vec<f64> = y.iter().map(|c| c.re).collect();
        let mut im: Vec<f64> = y.iter().map(|c| c.im).collect();
        for r in reflectors.iter().rev() {
            r.apply(&mut re);
            r.apply(&mut im);
        }
        let mut x: Vec<Complex64> = re
            .into_iter()
            .zip(im)
            .zip(&scale)
            .map(|((re, im), &d)| Complex64::new(re * d, im * d))
            .collect();
        normalize_phase(&mut x);
        vectors.push(x);
    }
    Ok(Decomposition {
        eigenvalues,
        vectors,
    })
}

/// Unit 2-norm, largest-modulus component (first on ties) real positive.
pub fn normalize_phase(x: &mut [Complex64]) {
    let nrm = norm2(x);
    if nrm == 0.0 {
        return;
    }
    let mut best = 0;
    let mut best_mod = -1.0;
    for (i, c) in x.iter().enumerate() {
        let m = c.norm();
        if m > best_mod {
            best_mod = m;
            best = i;
        }
    }
    let phase = x[best] / best_mod;
    let rot = phase.conj() / nrm;
    for c in x.iter_mut() {
        *c *= rot;
    }
    x[best] = Complex64::new(x[best].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn random_matrix(n: usize, seed: u64) -> DenseMatrix {
        let mut rng = SplitMix64::new(seed);
        DenseMatrix::from_rows(n, (0..n * n).map(|_| rng.next_f64() - 0.5).collect())
    }

    fn residual(a: &DenseMatrix, lambda: Complex64, v: &[Complex64]) -> f64 {
        let av = a.mul_complex(v);
        let r: Vec<Complex64> = av.iter().zip(v).map(|(x, y)| x - lambda * y).collect();
        norm2(&r) / norm2(v)
    }

    #[test]
    fn triangular_eigenvalues_are_the_diagonal() {
        let mut a = DenseMatrix::zeros(4);
        for i in 0..4 {
            for j in i..4 {
                a[(i, j)] = (i + 2 * j) as f64 + 1.0;
            }
        }
        let d = eigen_decomposition(&a, |_| Vec::new()).unwrap();
        let got: Vec<f64> = sorted(d.eigenvalues).iter().map(|c| c.re).collect();
        let want = [1.0, 4.0, 7.0, 10.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?}");
        }
    }

    #[test]
    fn rotation_has_conjugate_pair() {
        let a = DenseMatrix::from_rows(2, alloc::vec![0.0, -1.0, 1.0, 0.0]);
        let d = eigen_decomposition(&a, |ev| (0..ev.len()).collect()).unwrap();
        let ev = sorted(d.eigenvalues.clone());
        assert!((ev[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        for (i, v) in d.vectors.iter().enumerate() {
            assert!(residual(&a, d.eigenvalues[i], v) < 1e-12);
        }
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let a = DenseMatrix::from_rows(3, alloc::vec![6.0, -11.0, 6.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let d = eigen_decomposition(&a, |_| Vec::new()).unwrap();
        let ev = sorted(d.eigenvalues);
        for (e, w) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((e.re - w).abs() < 1e-10 && e.im.abs() < 1e-10);
        }
    }

    #[test]
    fn random_matrices_trace_and_residuals() {
        for seed in 0..5 {
            let n = 40 + 7 * seed as usize;
            let a = random_matrix(n, seed);
            let d = eigen_decomposition(&a, |ev| (0..ev.len()).collect()).unwrap();
            let trace: f64 = (0..n).map(|i| a[(i, i)]).sum();
            let sum: Complex64 = d.eigenvalues.iter().sum();
            assert!((sum.re - trace).abs() < 1e-9 && sum.im.abs() < 1e-9);
            for (lambda, v) in d.eigenvalues.iter().zip(&d.vectors) {
                assert!(residual(&a, *lambda, v) < 1e-9, "seed {seed}");
                assert!((norm2(v) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn badly_scaled_matrix_is_balanced() {
        let mut a = random_matrix(12, 9);
        for i in 0..12 {
            let f = 2f64.powi(i as i32 * 3 - 18);
            for j in 0..12 {
                a[(i, j)] *= f;
                a[(j, i)] /= f;
            }
        }
        let d = eigen_decomposition(&a, |ev| (0..ev.len()).collect()).unwrap();
        for (lambda, v) in d.eigenvalues.iter().zip(&d.vectors) {
            assert!(residual(&a, *lambda, v) < 1e-8 * (1.0 + lambda.norm()));
        }
    }

    #[test]
    fn hessenberg_preserves_similarity() {
        let a = random_matrix(15, 4);
        let mut h = a.clone();
        let refl = hessenberg(&mut h);
        for i in 2..15 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], 0.0);
            }
        }
        // Q H Qᵀ e_j == A e_j column by column.
        for j in 0..15 {
            // (Q H Qᵀ) e_j = Q H (Qᵀ e_j)
            let mut e = alloc::vec![0.0; 15];
            e[j] = 1.0;
            for r in refl.iter() {
                r.apply(&mut e);
            }
            let mut he: Vec<f64> = (0..15).map(|i| (0..15).map(|k| h[(i, k)] * e[k]).sum()).collect();
            for r in refl.iter().rev() {
                r.apply(&mut he);
            }
            for i in 0..15 {
                assert!((he[i] - a[(i, j)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_and_identity() {
        let d = eigen_decomposition(&DenseMatrix::zeros(5), |ev| alloc::vec![0; ev.len().min(1)]).unwrap();
        assert!(d.eigenvalues.iter().all(|c| c.norm() == 0.0));
        let d = eigen_decomposition(&DenseMatrix::identity(6), |_| alloc::vec![2]).unwrap();
        assert!(d.eigenvalues.iter().all(|c| *c == Complex64::new(1.0, 0.0)));
        assert!((norm2(&d.vectors[0]) - 1.0).abs() < 1e-12);
    }
}
