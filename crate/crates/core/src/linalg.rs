//! Dense exact Gaussian elimination over a [`Scalar`] field.
//!
//! Matrices are plain `Vec<Vec<T>>` in row-major order. Pivots are chosen as
//! the first nonzero entry, which is the right choice for an exact field.

use crate::Scalar;

/// Reduced row echelon form with the zero rows dropped.
///
/// Returns the nonzero rows and the pivot column of each.
pub fn rref<T: Scalar>(mut rows: Vec<Vec<T>>, ncols: usize) -> (Vec<Vec<T>>, Vec<usize>) {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..ncols {
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        let inv = T::one() / rows[lead][col].clone();
        for x in rows[lead].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == lead || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    (rows, pivots)
}

pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Basis of the right kernel `{ v : rows * v = 0 }`, one vector per free column.
pub fn kernel<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (reduced, pivots) = rref(rows.to_vec(), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant by Gaussian elimination.
pub fn determinant<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return T::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / pivot.clone();
            let (top, bottom) = a.split_at_mut(r);
            for (x, v) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = x.clone() - factor.clone() * v.clone();
            }
        }
    }
    det
}

/// Inverse of a square matrix, or `None` when it is singular.
pub fn inverse<T: Scalar>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = m.len();
    let augmented: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec<T: Scalar>(m: &[Vec<T>], v: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
