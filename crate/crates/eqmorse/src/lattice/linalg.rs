//! Dense exact linear algebra over the rationals, sized for rank <= 4.

use super::{Int, LatticeVector, Rat};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};

pub type RationalVector = Vec<Rat>;
pub type RationalMatrix = Vec<Vec<Rat>>;

fn check_square(a: &RationalMatrix) -> Result<usize> {
    let n = a.len();
    for row in a {
        if row.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: row.len(),
            });
        }
    }
    Ok(n)
}

/// Solves `A x = b` exactly by G elimination. Returns `None` when `A` is
/// singular; the caller decides whether that means "inconsistent" or
/// "degenerate input".
pub fn rational_solve(a: &RationalMatrix, b: &RationalVector) -> Result<Option<RationalVector>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: b.len(),
        });
    }
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else {
            return Ok(None);
        };
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for entry in m[col].iter_mut() {
            *entry /= p.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Ok(Some(m.into_iter().map(|row| row[row.len() - 1].clone()).collect()))
}

/// Exact determinant of a square integer matrix (cofactor expansion on the
/// first column; fine at rank <= 4).
pub fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    if n == 2 {
        return &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    }
    let mut acc = Int::zero();
    for r in 0..n {
        if m[r][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Int>> = (0..n)
            .filter(|&i| i != r)
            .map(|i| m[i][1..].to_vec())
            .collect();
        let term = &m[r][0] * det(&minor);
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Exact inverse of a matrix with `|det| = 1`. Unimodularity is the smooth
/// cone condition, so a failure is reported as [`Error::NotUnimodular`].
pub fn unimodular_inverse(m: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: row.len(),
            });
        }
    }
    let d = det(m);
    if !d.abs().is_one() {
        return Err(Error::NotUnimodular { det: d.to_string() });
    }
    let rat: RationalMatrix = m
        .iter()
        .map(|row| row.iter().map(|e| Rat::from_integer(e.clone())).collect())
        .collect();
    let mut inv = vec![vec![Int::zero(); n]; n];
    for col in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[col] = Rat::one();
        let sol = rational_solve(&rat, &e)?.expect("unimodular matrix is invertible");
        for (r, val) in sol.into_iter().enumerate() {
            debug_assert!(val.is_integer());
            inv[r][col] = val.to_integer();
        }
    }
    Ok(inv)
}

/// Rows of the inverse transpose: `dual_basis(M)[i]` pairs to `delta_ij`
/// with the rows of `M`.
pub fn dual_basis(m: &[Vec<Int>]) -> Result<Vec<LatticeVector>> {
    let n = m.len();
    let inv = unimodular_inverse(m)?;
    Ok((0..n)
        .map(|i| LatticeVector((0..n).map(|j| inv[j][i].clone()).collect()))
        .collect())
}

pub fn int_matrix(rows: &[&LatticeVector]) -> Vec<Vec<Int>> {
    rows.iter().map(|r| r.0.clone()).collect()
}
