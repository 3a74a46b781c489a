//! Fraction-free (Bareiss) elimination over exact rationals.
//!
//! Each row is first cleared of denominators, so the elimination itself runs
//! on integers and every intermediate division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Rational;

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

/// Forward Bareiss pass on an integer matrix with `cols >= rows`.
/// Returns the row-echelon matrix, or `None` when a pivot column is empty.
fn bareiss(mut a: Vec<Vec<BigInt>>, rows: usize) -> Option<Vec<Vec<BigInt>>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    for k in 0..rows {
        let pivot = (k..rows).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        for i in k + 1..rows {
            if a[i][k].is_zero() {
                // row i is untouched except for the common rescaling
                for j in k + 1..cols {
                    if !a[i][j].is_zero() {
                        a[i][j] = &a[i][j] * &a[k][k] / &prev;
                    }
                }
                continue;
            }
            for j in k + 1..cols {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(a)
}

/// Solves `m x = rhs` exactly; `None` if `m` is singular.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    assert_eq!(rhs.len(), n);
    if n == 0 {
        return Some(Vec::new());
    }
    let aug: Vec<Vec<BigInt>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            integer_row(&r)
        })
        .collect();
    let a = bareiss(aug, n)?;
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            if !a[i][j].is_zero() && !x[j].is_zero() {
                acc -= &x[j] * Rational::from_integer(a[i][j].clone());
            }
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    Some(x)
}

pub fn is_nonsingular(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    if n == 0 {
        return true;
    }
    bareiss(m.iter().map(|r| integer_row(r)).collect(), n).is_some()
}
