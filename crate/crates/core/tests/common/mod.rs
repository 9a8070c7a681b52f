//! Reference implementations used as oracles. They go through nalgebra and
//! straightforward textbook loops, never through the crate's QR or
//! recovery code.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use spgomp::linalg::DenseMatrix;

pub fn to_na(a: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_column_slice(a.rows(), a.cols(), a.as_col_major())
}

pub fn columns(a: &DenseMatrix, ids: &[usize]) -> DMatrix<f64> {
    let m = a.rows();
    let mut out = DMatrix::zeros(m, ids.len());
    for (c, &j) in ids.iter().enumerate() {
        for i in 0..m {
            out[(i, c)] = a.get(i, j);
        }
    }
    out
}

/// Solves `(A'A) x = A'y` with an LU factorization of the Gram matrix.
pub fn normal_equations(a: &DMatrix<f64>, y: &[f64]) -> Vec<f64> {
    let g = a.transpose() * a;
    let rhs = a.transpose() * DVector::from_column_slice(y);
    g.lu().solve(&rhs).expect("Gram matrix is nonsingular").iter().copied().collect()
}

/// Minimum-norm least squares via SVD.
pub fn lstsq(a: &DMatrix<f64>, y: &[f64]) -> Vec<f64> {
    let svd = a.clone().svd(true, true);
    svd.solve(&DVector::from_column_slice(y), 1e-12)
        .expect("svd solve")
        .iter()
        .copied()
        .collect()
}

/// Textbook modified Gram-Schmidt on a full column block, returning
/// `(Q, R)` with positive diagonal.
pub fn mgs_from_scratch(a: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let p = a.ncols();
    let mut q = a.clone();
    let mut r = DMatrix::zeros(p, p);
    for j in 0..p {
        let mut v = q.column(j).clone_owned();
        for i in 0..j {
            let rij = q.column(i).dot(&v);
            r[(i, j)] = rij;
            v -= q.column(i) * rij;
        }
        let nrm = v.norm();
        r[(j, j)] = nrm;
        q.set_column(j, &(v / nrm));
    }
    (q, r)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn top_abs(values: &[f64], skip: &[usize], count: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).filter(|i| !skip.contains(i)).collect();
    idx.sort_by(|&a, &b| {
        values[b]
            .abs()
            .partial_cmp(&values[a].abs())
            .unwrap()
            .then(a.cmp(&b))
    });
    idx.truncate(count);
    idx
}

fn residual_of(phi: &DMatrix<f64>, ids: &[usize], coef: &[f64], y: &[f64]) -> Vec<f64> {
    let mut r = y.to_vec();
    for (&j, &c) in ids.iter().zip(coef) {
        for (i, ri) in r.iter_mut().enumerate() {
            *ri -= phi[(i, j)] * c;
        }
    }
    r
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// OMP with a full least-squares re-solve (SVD) every iteration.
/// Returns the full-length estimate.
pub fn naive_omp(phi: &DenseMatrix, y: &[f64], k: usize, rel_eps: f64) -> Vec<f64> {
    let a = to_na(phi);
    let n = phi.cols();
    let eps = rel_eps * norm(y);
    let mut support: Vec<usize> = Vec::new();
    let mut coef: Vec<f64> = Vec::new();
    let mut r = y.to_vec();
    while norm(&r) > eps && support.len() < k.min(phi.rows()) {
        let corr: Vec<f64> = (0..n)
            .map(|j| (0..phi.rows()).map(|i| a[(i, j)] * r[i]).sum())
            .collect();
        support.push(top_abs(&corr, &support, 1)[0]);
        coef = lstsq(&columns(phi, &support), y);
        r = residual_of(&a, &support, &coef, y);
    }
    let mut x = vec![0.0; n];
    for (&j, &c) in support.iter().zip(&coef) {
        x[j] = c;
    }
    x
}

/// CoSaMP straight from its published loop: proxy, 2K identification,
/// merge, least squares, prune to K, residual; halts on small or
/// non-decreasing residual.
pub fn naive_cosamp(phi: &DenseMatrix, y: &[f64], k: usize, max_iters: usize, rel_eps: f64) -> Vec<f64> {
    let a = to_na(phi);
    let n = phi.cols();
    let eps = rel_eps * norm(y);
    let mut est = vec![0.0; n];
    let mut r = y.to_vec();
    for _ in 0..max_iters {
        if norm(&r) <= eps {
            break;
        }
        let proxy: Vec<f64> = (0..n)
            .map(|j| (0..phi.rows()).map(|i| a[(i, j)] * r[i]).sum())
            .collect();
        let mut merged = top_abs(&proxy, &[], 2 * k);
        for (j, &v) in est.iter().enumerate() {
            if v != 0.0 && !merged.contains(&j) {
                merged.push(j);
            }
        }
        let b = lstsq(&columns(phi, &merged), y);
        let mut full = vec![0.0; n];
        for (&j, &c) in merged.iter().zip(&b) {
            full[j] = c;
        }
        let keep = top_abs(&full, &[], k);
        let mut next = vec![0.0; n];
        for &j in &keep {
            next[j] = full[j];
        }
        let kept_coef: Vec<f64> = keep.iter().map(|&j| next[j]).collect();
        let r_next = residual_of(&a, &keep, &kept_coef, y);
        if norm(&r_next) >= norm(&r) {
            break;
        }
        est = next;
        r = r_next;
    }
    est
}

pub fn rel_err(est: &[f64], truth: &[f64]) -> f64 {
    let diff: Vec<f64> = est.iter().zip(truth).map(|(a, b)| a - b).collect();
    norm(&diff) / norm(truth)
}
