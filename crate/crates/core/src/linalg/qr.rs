//! Incrementally grown QR factorization of a column subset.
//!
//! `Phi_L = Q R` where `L` is the ordered list of admitted column ids. New
//! columns are orthogonalized against the existing `Q` by modified
//! Gram-Schmidt; nothing already computed is touched, so the leading block of
//! the factorization is recycled verbatim from one iteration to the next.

use crate::{Error, Result};

use super::matrix::DenseMatrix;
use super::vector::{axpy, dot, norm2, DenseVector};

/// A new column whose orthogonal remainder has norm below this value is
/// treated as linearly dependent.
pub const RANK_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct QrState {
    m: usize,
    /// Orthonormal columns, column-major `m x p`.
    q: Vec<f64>,
    /// Upper triangle packed by columns: column `j` holds `R[0..=j, j]`.
    r: Vec<f64>,
    col_ids: Vec<usize>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    j * (j + 1) / 2 + i
}

impl QrState {
    /// Factorization of the empty column set in `R^m`.
    pub fn empty(m: usize) -> Self {
        Self {
            m,
            q: Vec::new(),
            r: Vec::new(),
            col_ids: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    /// Number of admitted columns `p`.
    pub fn len(&self) -> usize {
        self.col_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.col_ids.is_empty()
    }

    pub fn col_ids(&self) -> &[usize] {
        &self.col_ids
    }

    pub fn q_col(&self, j: usize) -> &[f64] {
        &self.q[j * self.m..(j + 1) * self.m]
    }

    /// `R[i, j]`, zero below the diagonal.
    pub fn r_entry(&self, i: usize, j: usize) -> f64 {
        if i > j {
            0.0
        } else {
            self.r[packed(i, j)]
        }
    }

    pub fn q_matrix(&self) -> Option<DenseMatrix> {
        DenseMatrix::from_col_major(self.m, self.len(), self.q.clone()).ok()
    }

    pub fn r_matrix(&self) -> Option<DenseMatrix> {
        let p = self.len();
        let data = (0..p)
            .flat_map(|j| (0..p).map(move |i| (i, j)))
            .map(|(i, j)| self.r_entry(i, j))
            .collect();
        DenseMatrix::from_col_major(p, p, data).ok()
    }

    /// Returns the factorization extended by `new_ids`, leaving `self` intact.
    pub fn append_columns(&self, source: &DenseMatrix, new_ids: &[usize]) -> Result<QrState> {
        let mut next = self.clone();
        for &id in new_ids {
            next.push_column(source, id)?;
        }
        Ok(next)
    }

    /// Appends one column in place. On error `self` is unchanged.
    pub(crate) fn push_column(&mut self, source: &DenseMatrix, id: usize) -> Result<()> {
        if source.rows() != self.m {
            return Err(Error::dims(format!(
                "source has {} rows, factorization has {}",
                source.rows(),
                self.m
            )));
        }
        if id >= source.cols() {
            return Err(Error::dims(format!(
                "column {id} out of range for {} columns",
                source.cols()
            )));
        }
        if self.col_ids.contains(&id) {
            return Err(Error::invalid(format!("column {id} already admitted")));
        }
        let p = self.len();
        if p + 1 > self.m {
            return Err(Error::RankDeficient {
                column: id,
                remainder: 0.0,
            });
        }

        let mut v = source.col(id).to_vec();
        let mut rcol = Vec::with_capacity(p + 1);
        for i in 0..p {
            let qi = &self.q[i * self.m..(i + 1) * self.m];
            let rij = dot(qi, &v);
            axpy(-rij, qi, &mut v);
            rcol.push(rij);
        }
        let rjj = norm2(&v);
        if rjj.is_nan() || rjj < RANK_TOLERANCE {
            return Err(Error::RankDeficient {
                column: id,
                remainder: rjj,
            });
        }
        for x in &mut v {
            *x /= rjj;
        }
        rcol.push(rjj);

        self.q.extend_from_slice(&v);
        self.r.extend_from_slice(&rcol);
        self.col_ids.push(id);
        Ok(())
    }

    /// Least-squares coefficients over the admitted columns, in admission
    /// order: `Q' y` followed by back-substitution on `R`.
    pub fn solve(&self, y: &[f64]) -> Result<DenseVector> {
        if y.len() != self.m {
            return Err(Error::dims(format!(
                "measurement has length {}, expected {}",
                y.len(),
                self.m
            )));
        }
        let p = self.len();
        let mut x: Vec<f64> = (0..p).map(|j| dot(self.q_col(j), y)).collect();
        for j in (0..p).rev() {
            x[j] /= self.r[packed(j, j)];
            let xj = x[j];
            for (i, xi) in x[..j].iter_mut().enumerate() {
                *xi -= self.r[packed(i, j)] * xj;
            }
        }
        Ok(DenseVector::from_vec_unchecked(x))
    }
}

/// Extends `state` with the columns `new_ids` of `source`.
///
/// The returned state shares its leading `p` columns of `Q` and leading
/// `p x p` block of `R` bit-for-bit with `state`.
pub fn qr_append_columns(
    state: &QrState,
    source: &DenseMatrix,
    new_ids: &[usize],
) -> Result<QrState> {
    state.append_columns(source, new_ids)
}

pub fn ls_solve(state: &QrState, y: &[f64]) -> Result<DenseVector> {
    if state.is_empty() {
        return Err(Error::invalid("least squares over an empty column set"));
    }
    state.solve(y)
}

/// `y - Phi_L coeffs` over the admitted columns of `source`.
pub fn residual(
    source: &DenseMatrix,
    state: &QrState,
    coeffs: &[f64],
    y: &[f64],
) -> Result<DenseVector> {
    if coeffs.len() != state.len() {
        return Err(Error::dims(format!(
            "{} coefficients for {} admitted columns",
            coeffs.len(),
            state.len()
        )));
    }
    if y.len() != source.rows() {
        return Err(Error::dims(format!(
            "measurement has length {}, expected {}",
            y.len(),
            source.rows()
        )));
    }
    let mut r = y.to_vec();
    for (&id, &c) in state.col_ids().iter().zip(coeffs) {
        axpy(-c, source.col(id), &mut r);
    }
    Ok(DenseVector::from_vec_unchecked(r))
}
