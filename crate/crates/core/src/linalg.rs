//! Dense symmetric matrix storage and the few vector kernels the crate needs.

use crate::scalar::Scalar;

/// Dense `n × n` matrix in row-major order that is symmetric by construction
/// whenever it is built through [`SymMatrix::from_upper`] or
/// [`SymMatrix::set_sym`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    /// Builds a matrix by evaluating `f(i, j)` for `i < j` and mirroring; the
    /// diagonal is taken from `diag(i)`.
    pub fn from_upper(n: usize, mut diag: impl FnMut(usize) -> T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = diag(i);
            for j in (i + 1)..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    /// Wraps row-major data without checking symmetry.
    pub fn from_row_major_unchecked(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n, "row-major buffer has wrong length");
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    /// Largest `|a_ij − a_ji|`.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = (self.get(i, j) - self.get(j, i)).abs();
                if d > worst || d.is_nan() {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n);
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    /// Copy with the diagonal set to zero.
    pub fn zero_diagonal(mut self) -> Self {
        for i in 0..self.n {
            self.data[i * self.n + i] = T::zero();
        }
        self
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> SymMatrix<U> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    // Four accumulators keep the loop vectorizable without changing results
    // between runs.
    let mut acc = [T::zero(); 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let k = 4 * c;
        acc[0] += a[k] * b[k];
        acc[1] += a[k + 1] * b[k + 1];
        acc[2] += a[k + 2] * b[k + 2];
        acc[3] += a[k + 3] * b[k + 3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for k in (4 * chunks)..a.len() {
        s += a[k] * b[k];
    }
    s
}

pub fn norm2<T: Scalar>(x: &[T]) -> T {
    dot(x, x).sqrt()
}

pub fn norm_inf<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |m, &v| m.max(v.abs()))
}

/// `y += alpha * x`.
#[inline]
pub fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Solves the 2 × 2 system `[[m00, m01], [m10, m11]] x = r` by Cramer's rule.
/// Returns `None` when the determinant vanishes relative to the entries.
pub fn solve2<T: Scalar>(m: [[T; 2]; 2], r: [T; 2]) -> Option<[T; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = (m[0][0].abs() + m[0][1].abs()) * (m[1][0].abs() + m[1][1].abs());
    if det == T::zero() || det.abs() <= T::epsilon() * scale {
        return None;
    }
    Some([
        (r[0] * m[1][1] - m[0][1] * r[1]) / det,
        (m[0][0] * r[1] - m[1][0] * r[0]) / det,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_upper_is_exactly_symmetric() {
        let m = SymMatrix::<f64>::from_upper(5, |_| 0.0, |i, j| (i * 7 + j) as f64 * 0.1);
        assert_eq!(m.asymmetry(), 0.0);
        assert_eq!(m.get(1, 3), m.get(3, 1));
    }

    #[test]
    fn matvec_and_dot() {
        let m = SymMatrix::<f64>::from_upper(3, |i| i as f64, |_, _| 1.0);
        assert_eq!(m.matvec(&[1.0, 1.0, 1.0]), vec![2.0, 3.0, 4.0]);
        assert_eq!(dot(&[1.0, 2.0, 3.0, 4.0, 5.0], &[1.0; 5]), 15.0);
    }

    #[test]
    fn solve2_handles_singular() {
        assert!(solve2([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0]).is_none());
        let x = solve2::<f64>([[2.0, 1.0], [1.0, 3.0]], [3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
    }
}
