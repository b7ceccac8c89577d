//! Adjacency eigenvalues for regular graphs and the two spectral checks used
//! by the certificates: the expander mixing inequality and the simplified
//! Alon-Boppana floor.
//!
//! Small graphs go through a dense Householder + implicit-QL solver; larger
//! ones through Lanczos with full reorthogonalisation on the operator with
//! the all-ones eigenvector deflated analytically (λ1 = d exactly for a
//! regular graph, so deflation costs nothing in accuracy).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{e_between, Graph, VertexSet};
use crate::scalar::Real;

/// Dense solver cutoff; beyond this the iterative path is used.
pub const DENSE_LIMIT: usize = 4096;

const LANCZOS_MAX_STEPS: usize = 600;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("graph is not regular (degrees range from {0} to {1})")]
    NotRegular(usize, usize),
    #[error("need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("iterative eigensolver did not converge: residual {achieved} > tolerance {tolerance}")]
    NoConvergence { achieved: f64, tolerance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Iterative,
}

/// λ statistics of a d-regular graph: `lambda = max(λ2, -λn)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectralReport<F = f64> {
    pub n: usize,
    pub d: usize,
    pub lambda2: F,
    pub lambda_min: F,
    pub lambda: F,
    pub method: Method,
    pub residual: F,
}

/// Second-largest and smallest adjacency eigenvalues of a regular graph.
pub fn compute_lambda<F: Real>(g: &Graph) -> Result<SpectralReport<F>, SpectralError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(SpectralError::TooSmall(n));
    }
    if !g.is_regular() {
        return Err(SpectralError::NotRegular(g.min_degree(), g.max_degree()));
    }
    let d = g.min_degree();
    let (lambda2, lambda_min, method, residual) = if n <= DENSE_LIMIT {
        let eigs = dense_spectrum::<F>(g);
        // eigs ascending; λ1 = d sits at the end.
        let lambda2 = eigs[n - 2];
        let lambda_min = eigs[0];
        let residual = F::epsilon() * F::from_count(n) * F::from_count(d.max(1));
        (lambda2, lambda_min, Method::Dense, residual)
    } else {
        let tolerance = F::from_f64(1e-8).unwrap() * F::from_count(d.max(1));
        let (l2, lmin, res) = lanczos_extremes::<F>(g, tolerance)?;
        (l2, lmin, Method::Iterative, res)
    };
    let lambda = if lambda2 > -lambda_min {
        lambda2
    } else {
        -lambda_min
    };
    Ok(SpectralReport {
        n,
        d,
        lambda2,
        lambda_min,
        lambda,
        method,
        residual,
    })
}

/// Expander mixing inequality for a d-regular graph:
/// returns (|e(A,B) − |A||B|d/n|, λ√(|A||B|), pass).
pub fn mixing_check<F: Real>(
    g: &Graph,
    lambda: F,
    a: &VertexSet,
    b: &VertexSet,
) -> (F, F, bool) {
    let n = F::from_count(g.vertex_count());
    let d = F::from_count(g.max_degree());
    let e = F::from_count(e_between(g, a, b));
    let ab = F::from_count(a.len()) * F::from_count(b.len());
    let lhs = (e - ab * d / n).abs();
    let rhs = lambda * ab.sqrt();
    let tol = F::from_f64(1e-9).unwrap() * rhs.max(F::one());
    (lhs, rhs, lhs <= rhs + tol)
}

/// Simplified Alon-Boppana floor: λ² ≥ d(n−d)/(n−1), up to tolerance.
pub fn alon_boppana_check<F: Real>(n: usize, d: usize, lambda: F) -> bool {
    assert!(d < n, "need d < n");
    let nf = F::from_count(n);
    let df = F::from_count(d);
    let bound = df * (nf - df) / (nf - F::one());
    let tol = F::from_f64(1e-9).unwrap() * bound.max(F::one());
    lambda * lambda >= bound - tol
}

// ---------------------------------------------------------------------------
// Dense path: Householder tridiagonalisation + implicit-shift QL.
// ---------------------------------------------------------------------------

/// All adjacency eigenvalues, ascending.
pub fn dense_spectrum<F: Real>(g: &Graph) -> Vec<F> {
    let n = g.vertex_count();
    let mut a = vec![F::zero(); n * n];
    for u in 0..n as u32 {
        for &v in g.neighbors(u) {
            a[u as usize * n + v as usize] = F::one();
        }
    }
    let (mut d, mut e) = householder_tridiag(&mut a, n);
    ql_implicit(&mut d, &mut e, None);
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    d
}

/// Reduces a symmetric matrix (row-major, destroyed) to tridiagonal form.
/// Returns (diagonal, subdiagonal with e[0] unused).
fn householder_tridiag<F: Real>(a: &mut [F], n: usize) -> (Vec<F>, Vec<F>) {
    let mut d = vec![F::zero(); n];
    let mut e = vec![F::zero(); n];
    for i in (1..n).rev() {
        let l = i;
        let mut h = F::zero();
        if l > 1 {
            let mut scale = F::zero();
            for k in 0..l {
                scale += a[i * n + k].abs();
            }
            if scale == F::zero() {
                e[i] = a[i * n + l - 1];
            } else {
                for k in 0..l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let mut f = a[i * n + l - 1];
                let g = if f >= F::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l - 1] = f - g;
                f = F::zero();
                for j in 0..l {
                    let mut g = F::zero();
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..l {
                    let f = a[i * n + j];
                    e[j] -= hh * f;
                    let g = e[j];
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l - 1];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    (d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. `d` holds the
/// diagonal, `e` the subdiagonal (e[0] unused on input). When `z` is given
/// (row-major k×k, initialised to identity), eigenvectors accumulate in its
/// columns.
fn ql_implicit<F: Real>(d: &mut [F], e: &mut [F], mut z: Option<&mut [F]>) {
    let n = d.len();
    if n == 0 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = F::zero();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= F::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 50, "QL iteration failed to converge");
            let mut g = (d[l + 1] - d[l]) / (F::from_f64(2.0).unwrap() * e[l]);
            let mut r = g.hypot(F::one());
            let sign_r = if g >= F::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let (mut s, mut c) = (F::one(), F::one());
            let mut p = F::zero();
            let mut broke_early = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == F::zero() {
                    d[i + 1] -= p;
                    e[m] = F::zero();
                    broke_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + F::from_f64(2.0).unwrap() * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(zm) = z.as_deref_mut() {
                    for k in 0..n {
                        f = zm[k * n + i + 1];
                        zm[k * n + i + 1] = s * zm[k * n + i] + c * f;
                        zm[k * n + i] = c * zm[k * n + i] - s * f;
                    }
                }
            }
            if broke_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = F::zero();
        }
    }
}

// ---------------------------------------------------------------------------
// Iterative path: Lanczos on the ones-deflated adjacency operator.
// ---------------------------------------------------------------------------

/// Applies the adjacency operator and projects out the all-ones component.
fn apply_deflated<F: Real>(g: &Graph, x: &[F], out: &mut [F]) {
    let n = g.vertex_count();
    for (v, o) in out.iter_mut().enumerate().take(n) {
        let mut acc = F::zero();
        for &w in g.neighbors(v as u32) {
            acc += x[w as usize];
        }
        *o = acc;
    }
    let mean = out.iter().copied().sum::<F>() / F::from_count(n);
    for o in out.iter_mut() {
        *o -= mean;
    }
}

fn norm<F: Real>(x: &[F]) -> F {
    x.iter().map(|&v| v * v).sum::<F>().sqrt()
}

fn dot<F: Real>(x: &[F], y: &[F]) -> F {
    x.iter().zip(y).map(|(&a, &b)| a * b).sum()
}

/// Extreme eigenvalues of the adjacency operator restricted to the
/// complement of the all-ones vector: (λ2, λn, residual).
fn lanczos_extremes<F: Real>(g: &Graph, tolerance: F) -> Result<(F, F, F), SpectralError> {
    use rand::{Rng, SeedableRng};
    let n = g.vertex_count();
    let max_steps = LANCZOS_MAX_STEPS.min(n - 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1a2c205);

    let mut basis: Vec<Vec<F>> = Vec::new();
    let mut alpha: Vec<F> = Vec::new();
    let mut beta: Vec<F> = Vec::new();

    let mut v: Vec<F> = (0..n)
        .map(|_| F::from_f64(rng.gen_range(-1.0..1.0)).unwrap())
        .collect();
    let mean = v.iter().copied().sum::<F>() / F::from_count(n);
    for x in v.iter_mut() {
        *x -= mean;
    }
    let nv = norm(&v);
    for x in v.iter_mut() {
        *x /= nv;
    }

    let mut w = vec![F::zero(); n];
    let mut best: Option<(F, F, F)> = None;
    for step in 0..max_steps {
        apply_deflated(g, &v, &mut w);
        let a = dot(&w, &v);
        alpha.push(a);
        for (wi, &vi) in w.iter_mut().zip(&v) {
            *wi -= a * vi;
        }
        if let Some(b) = beta.last().copied() {
            let prev = &basis[basis.len() - 1];
            for (wi, &pi) in w.iter_mut().zip(prev) {
                *wi -= b * pi;
            }
        }
        basis.push(v.clone());
        // Full reorthogonalisation.
        for q in &basis {
            let c = dot(&w, q);
            for (wi, &qi) in w.iter_mut().zip(q) {
                *wi -= c * qi;
            }
        }
        let b = norm(&w);
        // Check convergence every few steps once the basis is warm.
        if step >= 8 && step % 4 == 0 {
            let k = alpha.len();
            let mut dvec = alpha.clone();
            let mut evec = vec![F::zero(); k];
            evec[1..k].copy_from_slice(&beta[..k - 1]);
            let mut z = vec![F::zero(); k * k];
            for i in 0..k {
                z[i * k + i] = F::one();
            }
            ql_implicit(&mut dvec, &mut evec, Some(&mut z));
            let mut idx: Vec<usize> = (0..k).collect();
            idx.sort_by(|&i, &j| dvec[i].partial_cmp(&dvec[j]).unwrap());
            let (lo, hi) = (idx[0], idx[k - 1]);
            // Ritz residual estimate: |β_k * s_k| for each extreme pair.
            let res_hi = (b * z[(k - 1) * k + hi]).abs();
            let res_lo = (b * z[(k - 1) * k + lo]).abs();
            let res = res_hi.max(res_lo);
            best = Some((dvec[hi], dvec[lo], res));
            if res <= tolerance {
                return Ok((dvec[hi], dvec[lo], res));
            }
        }
        if b <= F::epsilon() * F::from_count(n) {
            // Invariant subspace exhausted: Ritz values are exact.
            let k = alpha.len();
            let mut dvec = alpha.clone();
            let mut evec = vec![F::zero(); k];
            evec[1..k].copy_from_slice(&beta[..k - 1]);
            ql_implicit(&mut dvec, &mut evec, None);
            dvec.sort_by(|x, y| x.partial_cmp(y).unwrap());
            return Ok((dvec[k - 1], dvec[0], b));
        }
        beta.push(b);
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = *wi / b;
        }
    }
    match best {
        Some((hi, lo, res)) if res <= tolerance => Ok((hi, lo, res)),
        Some((_, _, res)) => Err(SpectralError::NoConvergence {
            achieved: res.to_f64().unwrap_or(f64::NAN),
            tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
        }),
        None => Err(SpectralError::NoConvergence {
            achieved: f64::NAN,
            tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
        }),
    }
}
