//! Fraction-free (Bareiss) elimination over `Z` and `Z[t]`.
//!
//! Both routines keep every intermediate entry equal to a minor of the input,
//! so each division by the previous pivot is exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Rank of an integer matrix given as rows.
pub fn integer_rank(matrix: &[Vec<BigInt>]) -> usize {
    integer_echelon(matrix).rank
}

/// Rank, pivot rows and pivot columns of an integer matrix.
pub fn integer_echelon(matrix: &[Vec<BigInt>]) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..rows).collect();
    let mut pivot_cols = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        order.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    Echelon {
        rank: r,
        pivot_rows: order[..r].to_vec(),
        pivot_cols,
    }
}

/// Result of eliminating a polynomial matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    /// Original indices of the rows used as pivots, in pivot order.
    pub pivot_rows: Vec<usize>,
    /// Indices of the pivot columns, increasing.
    pub pivot_cols: Vec<usize>,
}

/// Rank and a nonsingular `rank × rank` submatrix of a matrix over `Z[t]`.
/// Among candidate pivots the one with fewest terms is taken.
pub fn poly_echelon(matrix: &[Vec<MultiPoly>]) -> Echelon {
    let mut a: Vec<Vec<MultiPoly>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..rows).collect();
    let nvars = a
        .iter()
        .flatten()
        .next()
        .map_or(0, MultiPoly::nvars);
    let mut prev = MultiPoly::one(nvars);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].num_terms())
        else {
            continue;
        };
        a.swap(r, p);
        order.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = v
                    .exact_div(&prev)
                    .expect("same number of variables")
                    .expect("Bareiss division is exact");
            }
            a[i][c] = MultiPoly::zero(nvars);
        }
        prev = a[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    Echelon {
        rank: r,
        pivot_rows: order[..r].to_vec(),
        pivot_cols,
    }
}

/// Determinant of a square polynomial matrix.
pub fn poly_det(matrix: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let size = matrix.len();
    if size == 0 {
        return MultiPoly::one(nvars);
    }
    let mut a = matrix.to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..size {
        let Some(p) = (k..size).find(|&i| !a[i][k].is_zero()) else {
            return MultiPoly::zero(nvars);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v
                    .exact_div(&prev)
                    .expect("same number of variables")
                    .expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// For an `(m-1) × m` matrix `A`, the vector `b_i = (-1)^{i+1} det(A_i)`
/// (1-indexed), where `A_i` drops column `i`. It satisfies `A b = 0`.
pub fn signed_minor_kernel(a: &[Vec<MultiPoly>], nvars: usize) -> Result<Vec<MultiPoly>> {
    let rows = a.len();
    let cols = a.first().map_or(rows + 1, Vec::len);
    if cols != rows + 1 || a.iter().any(|r| r.len() != cols) {
        return Err(Error::BadShape { rows, cols });
    }
    let b: Vec<MultiPoly> = (0..cols)
        .map(|i| {
            let minor: Vec<Vec<MultiPoly>> = a
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = poly_det(&minor, nvars);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    if b.iter().all(MultiPoly::is_zero) {
        return Err(Error::AllMinorsZero);
    }
    Ok(b)
}

/// `A b`, one polynomial per row.
pub fn mat_vec(a: &[Vec<MultiPoly>], b: &[MultiPoly], nvars: usize) -> Vec<MultiPoly> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(b)
                .fold(MultiPoly::zero(nvars), |acc, (x, y)| &acc + &(x * y))
        })
        .collect()
}
