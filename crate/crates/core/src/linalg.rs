//! Gaussian elimination over a [`FiniteField`].
//!
//! Matrices are row-major `Vec<Vec<E>>`. Pivots are chosen left to right,
//! first nonzero row wins, so every result (reduced form, kernel basis) is
//! deterministic.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FiniteField;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    pub rows: Matrix<E>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut free = Vec::new();
        let mut pi = 0;
        for c in 0..self.ncols {
            if pi < self.pivots.len() && self.pivots[pi] == c {
                pi += 1;
            } else {
                free.push(c);
            }
        }
        free
    }
}

fn check_shape<E>(rows: &[Vec<E>], ncols: usize) -> Result<()> {
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::RaggedInput);
    }
    Ok(())
}

/// Width of a non-empty matrix, checking all rows agree.
pub fn width<E>(rows: &[Vec<E>]) -> Result<usize> {
    let n = rows.first().map_or(0, |r| r.len());
    check_shape(rows, n)?;
    Ok(n)
}

pub fn echelon<F: FiniteField>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Result<Echelon<F::Elem>> {
    check_shape(rows, ncols)?;
    let mut m: Matrix<F::Elem> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(&m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = field.neg(&row[c]);
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = field.mul_add(&factor, y, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Ok(Echelon { rows: m, pivots, ncols })
}

pub fn rank<F: FiniteField>(field: &F, rows: &[Vec<F::Elem>]) -> Result<usize> {
    let n = width(rows)?;
    Ok(echelon(field, rows, n)?.rank())
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns. One vector per
/// free column (ascending), with that coordinate `1` and the other free
/// coordinates `0`.
pub fn kernel<F: FiniteField>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Result<Matrix<F::Elem>> {
    let e = echelon(field, rows, ncols)?;
    Ok(kernel_from_echelon(field, &e))
}

pub fn kernel_from_echelon<F: FiniteField>(field: &F, e: &Echelon<F::Elem>) -> Matrix<F::Elem> {
    e.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![field.zero(); e.ncols];
            v[f] = field.one();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                v[pc] = field.neg(&row[f]);
            }
            v
        })
        .collect()
}

pub fn transpose<E: Clone>(rows: &[Vec<E>], ncols: usize) -> Matrix<E> {
    (0..ncols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Basis of `{y : yᵀ A = 0}`.
pub fn left_kernel<F: FiniteField>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Result<Matrix<F::Elem>> {
    check_shape(rows, ncols)?;
    let t = transpose(rows, ncols);
    kernel(field, &t, rows.len())
}

/// Determinant by elimination without row normalization.
pub fn determinant<F: FiniteField>(field: &F, rows: &[Vec<F::Elem>]) -> Result<F::Elem> {
    let n = rows.len();
    check_shape(rows, n)?;
    let mut m: Matrix<F::Elem> = rows.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
            return Ok(field.zero());
        };
        if pr != c {
            m.swap(pr, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[c][c]);
        let inv = field.inv(&m[c][c]).expect("pivot is nonzero");
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = field.neg(&field.mul(&row[c], &inv));
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = field.mul_add(&factor, y, x);
            }
        }
    }
    Ok(det)
}

/// `A x`.
pub fn mul_vec<F: FiniteField>(field: &F, rows: &[Vec<F::Elem>], x: &[F::Elem]) -> Vec<F::Elem> {
    rows.iter()
        .map(|r| r.iter().zip(x).fold(field.zero(), |acc, (a, b)| field.mul_add(a, b, &acc)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::FieldTower;
    use crate::SmallField;

    fn f3() -> SmallField {
        SmallField::from_tower(&FieldTower::prime(3).unwrap(), 0).unwrap()
    }

    #[test]
    fn identity_and_duplicate_rows() {
        let f = f3();
        let id: Matrix<u32> = (0..4).map(|i| (0..4).map(|j| (i == j) as u32).collect()).collect();
        assert_eq!(rank(&f, &id).unwrap(), 4);
        let mut dup = id.clone();
        dup.push(id[2].clone());
        assert_eq!(rank(&f, &dup).unwrap(), 4);
        assert_eq!(determinant(&f, &id).unwrap(), 1);
    }

    #[test]
    fn ragged_rows_rejected() {
        let f = f3();
        assert_eq!(rank(&f, &[vec![1, 2], vec![1]]), Err(Error::RaggedInput));
    }

    #[test]
    fn kernel_vectors_are_solutions() {
        let f = f3();
        let a = vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1]];
        let k = kernel(&f, &a, 4).unwrap();
        assert_eq!(k.len(), 4 - rank(&f, &a).unwrap());
        for v in &k {
            assert!(mul_vec(&f, &a, v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn swap_changes_determinant_sign() {
        let f = f3();
        let a = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant(&f, &a).unwrap(), 2);
    }
}
