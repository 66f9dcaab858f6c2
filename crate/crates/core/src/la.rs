//! Small exact linear algebra over Q(q,t): Gaussian elimination with
//! fraction-field pivots, used for basis transitions, eigenspaces, Gram
//! inversion and determinants. Matrices are row-major `Vec<Vec<QtScalar>>`.

use crate::error::{Error, Result};
use crate::qt::IntPoly2;
use crate::qt::QtScalar;

/// Inverse of a square matrix; errors if singular.
pub(crate) fn invert(mat: Vec<Vec<QtScalar>>) -> Result<Vec<Vec<QtScalar>>> {
    let n = mat.len();
    let mut a = mat;
    let mut inv: Vec<Vec<QtScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { QtScalar::one() } else { QtScalar::zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let mut piv = None;
        for i in c..n {
            if !a[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let p = piv.ok_or(Error::SizeMismatch("singular matrix".into()))?;
        a.swap(c, p);
        inv.swap(c, p);
        let s = a[c][c].inv()?;
        for j in 0..n {
            a[c][j] = &a[c][j] * &s;
            inv[c][j] = &inv[c][j] * &s;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let s1 = &f * &a[c][j];
                    a[i][j] = &a[i][j] - &s1;
                    let s2 = &f * &inv[c][j];
                    inv[i][j] = &inv[i][j] - &s2;
                }
            }
        }
    }
    Ok(inv)
}

/// Determinant by fraction-free Bareiss elimination: denominators are
/// cleared row by row, every intermediate entry is a polynomial minor, and
/// the only divisions are exact (by the previous pivot).
pub(crate) fn determinant(mat: Vec<Vec<QtScalar>>) -> QtScalar {
    let n = mat.len();
    if n == 0 {
        return QtScalar::one();
    }
    let mut cleared: Vec<Vec<IntPoly2>> = Vec::with_capacity(n);
    let mut row_factor = IntPoly2::one();
    for row in &mat {
        let mut mult = IntPoly2::one();
        for entry in row {
            mult = mult.mul(entry.denominator());
        }
        let scaled = row
            .iter()
            .map(|entry| {
                entry
                    .numerator()
                    .mul(&mult.div_exact(entry.denominator()).expect("denominator divides"))
            })
            .collect();
        cleared.push(scaled);
        row_factor = row_factor.mul(&mult);
    }
    let mut sign = 1i64;
    let mut prev = IntPoly2::one();
    let mut a = cleared;
    for k in 0..n.saturating_sub(1) {
        let piv = (k..n).find(|&i| !a[i][k].is_zero());
        let Some(p) = piv else { return QtScalar::zero() };
        if p != k {
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = IntPoly2::zero();
        }
        prev = a[k][k].clone();
    }
    let det_poly = a[n - 1][n - 1].mul_bigint(&num_bigint::BigInt::from(sign));
    QtScalar::from_poly(det_poly)
        .div(&QtScalar::from_poly(row_factor))
        .expect("row factors are nonzero")
}
