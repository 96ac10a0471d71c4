//! Exact dense linear algebra over big rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::group::GroupTable;

pub type Matrix = Vec<Vec<BigRational>>;

/// `(x_{a+b})` for the given values of `x_g`.
pub fn group_matrix(table: &GroupTable, values: &[BigRational]) -> Matrix {
    let n = table.order();
    (0..n)
        .map(|a| (0..n).map(|b| values[table.add(a, b)].clone()).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant. The 0x0 determinant is 1.
pub fn determinant(m: &Matrix) -> BigRational {
    let mut a = m.clone();
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigRational::one();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Determinant of the principal submatrix left after deleting `removed`.
pub fn principal_minor(m: &Matrix, removed: &[usize]) -> BigRational {
    let keep: Vec<usize> = (0..m.len()).filter(|i| !removed.contains(i)).collect();
    let sub: Matrix = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| m[i][j].clone()).collect())
        .collect();
    determinant(&sub)
}

/// Solves `a x = b` by fraction-free forward elimination on the augmented
/// matrix and rational back substitution. `None` if `a` is singular.
pub fn solve(a: &Matrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut prev = BigRational::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !aug[i][k].is_zero())?;
        aug.swap(p, k);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&aug[i][j] * &aug[k][k] - &aug[i][k] * &aug[k][j]) / &prev;
                aug[i][j] = v;
            }
            aug[i][k] = BigRational::zero();
        }
        prev = aug[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = aug[i][n].clone();
        for j in i + 1..n {
            acc -= &aug[i][j] * &x[j];
        }
        x[i] = acc / &aug[i][i];
    }
    Some(x)
}

/// Gauss-Jordan inverse. `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        inv.swap(p, k);
        let pivot = a[k][k].clone();
        for j in 0..n {
            a[k][j] /= &pivot;
            inv[k][j] /= &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
                let t = &f * &inv[k][j];
                inv[i][j] -= t;
            }
        }
    }
    Some(inv)
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn from_integers(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect()
}
