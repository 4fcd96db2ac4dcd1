//! Exact integer and rational linear algebra on small matrices.
//!
//! Everything here works on dense `Vec`-of-rows matrices at the sizes that
//! occur in GIT data (rank K <= 4, N <= 10 or so): column-style Hermite
//! normal form for lattice-generation tests, rational Gaussian elimination
//! for determinants and inverses.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Hermite normal form (column operations) of an integer matrix, in place.
///
/// Returns the transformed matrix; the column span over `Z` is unchanged.
/// Entries are `BigInt` to keep intermediate growth exact.
pub fn hermite_normal_form(mat: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut m: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();

    let mut pivot_col = 0usize;
    for row in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // Clear the row to the right of pivot_col by gcd column operations.
        loop {
            let mut nonzero = None;
            for c in (pivot_col + 1)..cols {
                if !m[row][c].is_zero() {
                    nonzero = Some(c);
                    break;
                }
            }
            let Some(c) = nonzero else { break };
            if m[row][pivot_col].is_zero() {
                for r in 0..rows {
                    m[r].swap(pivot_col, c);
                }
                continue;
            }
            let a = m[row][pivot_col].clone();
            let b = m[row][c].clone();
            let g = a.extended_gcd(&b);
            // g.gcd = g.x*a + g.y*b; build the unimodular 2x2 column mix.
            let (x, y) = (g.x, g.y);
            let (au, bu) = (&a / &g.gcd, &b / &g.gcd);
            for r in 0..rows {
                let p = m[r][pivot_col].clone();
                let q = m[r][c].clone();
                m[r][pivot_col] = &x * &p + &y * &q;
                m[r][c] = -&bu * &p + &au * &q;
            }
        }
        if !m[row][pivot_col].is_zero() {
            if m[row][pivot_col].is_negative() {
                for r in 0..rows {
                    m[r][pivot_col] = -m[r][pivot_col].clone();
                }
            }
            pivot_col += 1;
        }
    }
    m
}

/// True if the columns of `mat` generate the full lattice `Z^rows`.
///
/// Runs a column HNF and checks that every row has a pivot and the product
/// of pivots is 1 (sublattice index 1).
pub fn columns_generate_lattice(mat: &[Vec<i64>]) -> bool {
    lattice_index(mat).map(|ix| ix.is_one()).unwrap_or(false)
}

/// Index of the sublattice spanned by the columns inside `Z^rows`,
/// or `None` if the columns do not have full rank.
pub fn lattice_index(mat: &[Vec<i64>]) -> Option<BigInt> {
    let rows = mat.len();
    let h = hermite_normal_form(mat);
    let mut index = BigInt::one();
    let mut col = 0usize;
    for row in 0..rows {
        if col >= h[0].len() || h[row][col].is_zero() {
            return None;
        }
        index *= &h[row][col];
        col += 1;
    }
    Some(index)
}

/// Determinant of a square rational matrix by fraction-free-ish elimination.
pub fn det(mat: &[Vec<Q>]) -> Q {
    let n = mat.len();
    let mut m: Vec<Vec<Q>> = mat.to_vec();
    let mut sign = Q::one();
    let mut acc = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            sign = -sign;
        }
        let pivot = m[col][col].clone();
        acc *= &pivot;
        for r in (col + 1)..n {
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let s = &m[col][c] * &f;
                m[r][c] = &m[r][c] - &s;
            }
        }
    }
    sign * acc
}

/// Inverse of a square rational matrix. Errors on a singular matrix.
pub fn invert(mat: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = mat.len();
    let mut m: Vec<Vec<Q>> = mat.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Err(Error::internal("singular matrix in invert".to_string()));
        };
        m.swap(p, col);
        inv.swap(p, col);
        let pivot = m[col][col].clone();
        for c in 0..n {
            m[col][c] = &m[col][c] / &pivot;
            inv[col][c] = &inv[col][c] / &pivot;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let s = &m[col][c] * &f;
                    m[r][c] = &m[r][c] - &s;
                    let s = &inv[col][c] * &f;
                    inv[r][c] = &inv[r][c] - &s;
                }
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_from;

    #[test]
    fn hnf_detects_full_lattice() {
        // Columns (1,0),(0,1),(−1,−1): generate Z^2.
        let m = vec![vec![1, 0, -1], vec![0, 1, -1]];
        assert!(columns_generate_lattice(&m));
        // Columns (2): index-2 sublattice of Z.
        let m = vec![vec![2, 2]];
        assert_eq!(lattice_index(&m), Some(BigInt::from(2)));
        assert!(!columns_generate_lattice(&m));
        // Rank-deficient.
        let m = vec![vec![1, 1], vec![0, 0]];
        assert_eq!(lattice_index(&m), None);
    }

    #[test]
    fn det_and_invert_agree() {
        let m = vec![
            vec![q_from(0), q_from(1)],
            vec![q_from(-1), q_from(1)],
        ];
        assert_eq!(det(&m), q_from(1));
        let inv = invert(&m).unwrap();
        // m * inv = id
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Q::zero();
                for k in 0..2 {
                    s += &m[i][k] * &inv[k][j];
                }
                assert_eq!(s, if i == j { Q::one() } else { Q::zero() });
            }
        }
    }
}
