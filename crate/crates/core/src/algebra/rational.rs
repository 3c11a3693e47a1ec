//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Signature (`#positive - #negative`) of a rational symmetric matrix, computed by exact
/// congruence diagonalization.
pub fn signature_of_symmetric(m: &[Vec<BigRational>]) -> Result<i64> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSymmetric);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i][j] != m[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut sig = 0i64;
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            // Look for a nonzero diagonal entry further down.
            if let Some(p) = (k + 1..n).find(|&p| !a[p][p].is_zero()) {
                swap_sym(&mut a, k, p);
            } else if let Some(p) = (k + 1..n).find(|&p| !a[k][p].is_zero()) {
                // a[k][k] = a[p][p] = 0 and a[k][p] != 0: replace e_k by e_k + e_p,
                // whose diagonal entry becomes 2 a[k][p].
                add_sym(&mut a, k, p);
            } else {
                // Row k is identically zero: a null direction.
                k += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            sig += 1;
        } else {
            sig -= 1;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        // The column below the pivot is now zero; mirror it in the row.
        for j in (k + 1)..n {
            a[k][j] = BigRational::zero();
        }
        for i in (k + 1)..n {
            a[i][k] = BigRational::zero();
        }
        k += 1;
    }
    Ok(sig)
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Congruence by the elementary matrix sending `e_i` to `e_i + e_j`.
fn add_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[i][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][i] += v;
    }
}

pub fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|v| BigRational::from_integer(v.clone())).collect())
        .collect()
}

/// Basis of `{x : A x = 0}` for an integer matrix given by rows, returned as integer vectors.
pub fn integer_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let (ech, pivots) = integer_echelon(rows.to_vec(), cols, true);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        // Pivot row r reads d_r x_{p_r} + sum_free a_{r,f} x_f = 0 (reduced form).
        let mut denom = BigInt::one();
        for (r, &p) in pivots.iter().enumerate() {
            if !ech[r][f].is_zero() {
                denom = denom.lcm(&ech[r][p]);
            }
        }
        let mut v = vec![BigInt::zero(); cols];
        v[f] = denom.clone();
        for (r, &p) in pivots.iter().enumerate() {
            if !ech[r][f].is_zero() {
                v[p] = -(&ech[r][f] * &denom) / &ech[r][p];
            }
        }
        basis.push(v);
    }
    basis
}

/// Integer row echelon form with content-reduced rows. When `reduced` is set, every pivot
/// column is cleared above its pivot as well. Returns the nonzero rows and pivot columns.
pub fn integer_echelon(
    mut rows: Vec<Vec<BigInt>>,
    cols: usize,
    reduced: bool,
) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].magnitude().clone())
        else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c].is_negative() {
            for v in rows[r].iter_mut() {
                *v = -&*v;
            }
        }
        let targets: Vec<usize> = if reduced {
            (0..rows.len()).filter(|&i| i != r).collect()
        } else {
            ((r + 1)..rows.len()).collect()
        };
        for i in targets {
            if rows[i][c].is_zero() {
                continue;
            }
            let g = rows[r][c].gcd(&rows[i][c]);
            let fi = &rows[r][c] / &g;
            let fr = &rows[i][c] / &g;
            let (pivot_row, row) = if i < r {
                let (lo, hi) = rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (v, pv) in row.iter_mut().zip(pivot_row.iter()) {
                *v = &fi * &*v - &fr * pv;
            }
            reduce_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// One rational solution of `A x = b` (free variables set to zero), or `None` when the
/// system is inconsistent. The solution is returned as integer numerators over a common
/// positive denominator.
pub fn solve_particular(
    a: &[Vec<BigInt>],
    b: &[BigInt],
    cols: usize,
) -> Option<(Vec<BigInt>, BigInt)> {
    let augmented: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (ech, pivots) = integer_echelon(augmented, cols + 1, true);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut denom = BigInt::one();
    for (r, &p) in pivots.iter().enumerate() {
        if !ech[r][cols].is_zero() {
            denom = denom.lcm(&ech[r][p]);
        }
    }
    let mut x = vec![BigInt::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        if !ech[r][cols].is_zero() {
            x[p] = &ech[r][cols] * &denom / &ech[r][p];
        }
    }
    Some((x, denom))
}
