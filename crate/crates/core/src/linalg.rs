//! Small dense linear algebra for the solver: row-major matrices, an
//! orthonormal row-space basis by modified Gram-Schmidt, and LU solves.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `selfᵀ · y`.
    pub fn tmul_vec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, yi) in y.iter().enumerate() {
            axpy(*yi, self.row(i), &mut out);
        }
        out
    }

    /// Scales column `j` by `s[j]`.
    pub fn scale_columns(&self, s: &[f64]) -> Matrix {
        assert_eq!(s.len(), self.cols);
        let mut m = self.clone();
        for i in 0..m.rows {
            for (v, sj) in m.row_mut(i).iter_mut().zip(s) {
                *v *= sj;
            }
        }
        m
    }

    /// Orthonormal basis (as rows) of the row space. Rows whose residual
    /// norm falls below `rel_tol` times their original norm are dropped.
    pub fn row_space_basis(&self, rel_tol: f64) -> Matrix {
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for i in 0..self.rows {
            let mut v = self.row(i).to_vec();
            let n0 = norm(&v);
            if n0 == 0.0 {
                continue;
            }
            // two passes of MGS keep the basis orthogonal to working precision
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(q, &v);
                    axpy(-c, q, &mut v);
                }
            }
            let n = norm(&v);
            if n > rel_tol * n0 {
                v.iter_mut().for_each(|x| *x /= n);
                basis.push(v);
            }
        }
        if basis.is_empty() {
            return Matrix::zeros(0, self.cols);
        }
        Matrix::from_rows(&basis)
    }

    /// Removes from `x` its component in the span of the (orthonormal) rows.
    pub fn project_out_rows(&self, x: &mut [f64]) {
        for i in 0..self.rows {
            let c = dot(self.row(i), x);
            axpy(-c, self.row(i), x);
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    math::sqrt(dot(a, a))
}

/// `y += a * x`.
pub fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Solves the square system `m · x = b` by LU with partial pivoting.
/// Returns `None` when a pivot is below `1e-14` times the largest entry.
pub fn solve(m: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = m.rows;
    assert_eq!(m.cols, n);
    assert_eq!(b.len(), n);
    let mut a = m.clone();
    let mut x = b.to_vec();
    let scale = a.data.iter().fold(0.0f64, |acc, v| acc.max(math::abs(*v))).max(f64::MIN_POSITIVE);
    for k in 0..n {
        let (p, pv) = (k..n)
            .map(|i| (i, math::abs(a.get(i, k))))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pv <= 1e-14 * scale {
            return None;
        }
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            x.swap(k, p);
        }
        let piv = a.get(k, k);
        for i in k + 1..n {
            let f = a.get(i, k) / piv;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                let v = a.get(k, j);
                a.add_to(i, j, -f * v);
            }
            x[i] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in k + 1..n {
            s -= a.get(k, j) * x[j];
        }
        x[k] = s / a.get(k, k);
    }
    Some(x)
}

/// Least-squares solution of `m · x ≈ b` through the normal equations.
/// Intended for full-column-rank, well-conditioned systems.
pub fn least_squares(m: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = m.cols;
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = (0..m.rows).map(|r| m.get(r, i) * m.get(r, j)).sum();
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    solve(&g, &m.tmul_vec(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_solves_small_system() {
        let m = Matrix::from_rows(&[vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]]);
        let x = solve(&m, &[5.0, 3.0, 6.0]).unwrap();
        let back = m.mul_vec(&x);
        for (u, v) in back.iter().zip([5.0, 3.0, 6.0]) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_system_is_rejected() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(solve(&m, &[1.0, 2.0]).is_none());
    }

    #[test]
    fn row_basis_drops_dependent_rows() {
        let m = Matrix::from_rows(&[vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0], vec![0.0, 1.0, 1.0]]);
        let q = m.row_space_basis(1e-10);
        assert_eq!(q.rows(), 2);
        for i in 0..2 {
            for j in 0..2 {
                let d = dot(q.row(i), q.row(j));
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-12);
            }
        }
        let mut x = vec![1.0, 0.0, 0.0];
        q.project_out_rows(&mut x);
        // remaining component is orthogonal to every original row
        for i in 0..3 {
            assert!(dot(m.row(i), &x).abs() < 1e-12);
        }
    }
}
