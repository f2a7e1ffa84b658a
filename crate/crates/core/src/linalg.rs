//! Exact dense linear algebra over the rationals.
//!
//! Rows are first scaled to integers, then reduced with Bareiss's
//! fraction-free elimination so intermediate values stay bounded by minors of
//! the input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let scale = common_denominator(row);
            row.iter()
                .map(|x| x.numer() * (&scale / x.denom()))
                .collect()
        })
        .collect()
}

/// Leading principal minors of a square matrix, up to positive row scalings.
///
/// Elimination runs without pivoting and stops at the first zero pivot, so the
/// result has fewer than `order` entries exactly when some leading minor
/// vanishes. Signs are exact: each returned value has the sign of the true
/// minor.
pub fn leading_minor_signs(matrix: &[Vec<Rational>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut a = integer_rows(matrix);
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            break;
        }
        minors.push(pivot.clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    minors
}

/// True iff every leading principal minor is strictly positive.
pub fn is_positive_definite(matrix: &[Vec<Rational>]) -> bool {
    let minors = leading_minor_signs(matrix);
    minors.len() == matrix.len() && minors.iter().all(|m| m.is_positive())
}

/// Exact determinant.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    if n == 0 {
        return Rational::one();
    }
    let scale: BigInt = matrix.iter().map(common_denominator).product();
    let mut a = integer_rows(matrix);
    let mut prev = BigInt::from(1);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = if negate { -prev } else { prev };
    Rational::from_bigints(det, scale).expect("positive scale")
}

/// Solves `matrix · x = rhs` exactly.
///
/// Fraction-free forward elimination with partial pivoting on the first
/// nonzero entry, then rational back substitution.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "rhs length mismatch");
    let augmented: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter()
                .cloned()
                .chain(std::iter::once(b.clone()))
                .collect()
        })
        .collect();
    let mut a = integer_rows(&augmented);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !a[i][k].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(p, k);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = Rational::from(a[k][n].clone());
        for j in k + 1..n {
            acc -= &(Rational::from(a[k][j].clone()) * &x[j]);
        }
        x[k] = acc / Rational::from(a[k][k].clone());
    }
    Ok(x)
}
