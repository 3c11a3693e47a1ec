//! Meyer's signature cocycle on the integral symplectic group.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::algebra::matrix::j_times;
use crate::algebra::rational::{integer_kernel, solve_particular, to_rational};
use crate::algebra::{signature_of_symmetric, IntMatrix};
use crate::error::{Error, Result};
use crate::factorization::PositiveFactorization;

/// Local correction per separating vanishing cycle, pinned by the two-separating-cycle
/// genus-2 fixture against the hyperelliptic formula.
pub const SEPARATING_CORRECTION: i64 = -1;

/// Prefix products are materialized this many at a time before their terms are evaluated
/// in parallel.
const CHUNK: usize = 512;

fn check_pair(a: &IntMatrix, b: &IntMatrix) -> Result<()> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    if !a.is_symplectic() || !b.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    Ok(())
}

/// `tau(A, B)`: the signature of `<(x1,y1),(x2,y2)> = (x1 + y1)^T J (I - B) y2`,
/// symmetrized, on `V = {(x, y) : (A^{-1} - I) x + (B - I) y = 0}`.
pub fn meyer_cocycle(a: &IntMatrix, b: &IntMatrix) -> Result<i64> {
    check_pair(a, b)?;
    let n = a.rows();
    let ainv_i = a.symplectic_inverse().sub_identity();
    let b_i = b.sub_identity();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = ainv_i.row(i).to_vec();
            r.extend_from_slice(b_i.row(i));
            r
        })
        .collect();
    let basis = integer_kernel(&rows, 2 * n);
    if basis.is_empty() {
        return Ok(0);
    }
    let i_minus_b = IntMatrix::from_fn(n, n, |i, j| -b_i.get(i, j));
    // For each basis vector: s = x + y and w = J (I - B) y, so the form is s1 . w2.
    let parts: Vec<(Vec<BigInt>, Vec<BigInt>)> = basis
        .iter()
        .map(|v| {
            let (x, y) = v.split_at(n);
            let s: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            let t = i_minus_b.mul_vec(y);
            let w = j_times(&t);
            (s, w)
        })
        .collect();
    let k = parts.len();
    let dot = |u: &[BigInt], v: &[BigInt]| -> BigInt { u.iter().zip(v).map(|(p, q)| p * q).sum() };
    let mut gram = vec![vec![BigInt::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = dot(&parts[i].0, &parts[j].1) + dot(&parts[j].0, &parts[i].1);
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    signature_of_symmetric(&to_rational(&gram))
}

/// `tau(A, T_c^{±1})` in closed form: with `N = A^{-1} - I`, the term vanishes unless
/// `N u = c` is solvable, and is then `sign(<u, c> ∓ 1)`.
pub fn meyer_cocycle_transvection(a: &IntMatrix, c: &[BigInt], inverse: bool) -> Result<i64> {
    if c.len() != a.rows() {
        return Err(Error::Dimension {
            expected: a.rows(),
            found: c.len(),
        });
    }
    if c.iter().all(Zero::is_zero) {
        return Ok(0);
    }
    let n = a.symplectic_inverse().sub_identity();
    Ok(transvection_term(&n, c, inverse))
}

fn transvection_term(n: &IntMatrix, c: &[BigInt], inverse: bool) -> i64 {
    let Some((u, d)) = solve_particular(&n.to_rows(), c, n.cols()) else {
        return 0;
    };
    // <u, c> with u = num / d; compare <num, c> against ±d.
    let jc = j_times(c);
    let pairing: BigInt = u.iter().zip(&jc).map(|(p, q)| p * q).sum();
    let diff = if inverse { pairing + &d } else { pairing - &d };
    if diff.is_positive() {
        1
    } else if diff.is_negative() {
        -1
    } else {
        0
    }
}

/// The terms `tau(M_1 ... M_{i-1}, M_i)`, one per twist, computed with the closed form.
pub fn meyer_terms(f: &PositiveFactorization) -> Vec<i64> {
    let twists = f.twists();
    let mut out = Vec::with_capacity(twists.len());
    let mut prefix = IntMatrix::identity(f.surface().rank());
    for chunk in twists.chunks(CHUNK) {
        let mut inverses = Vec::with_capacity(chunk.len());
        for c in chunk {
            inverses.push(prefix.symplectic_inverse().sub_identity());
            prefix.right_mul_transvection(c.class().coords(), false);
        }
        let terms: Vec<i64> = inverses
            .par_iter()
            .zip(chunk.par_iter())
            .map(|(n, c)| {
                if c.is_separating() {
                    0
                } else {
                    transvection_term(n, c.class().coords(), false)
                }
            })
            .collect();
        out.extend(terms);
    }
    out
}

/// Signature of the total space: `sum_i tau(M_1 ... M_{i-1}, M_i)` plus the separating
/// correction.
pub fn signature(f: &PositiveFactorization) -> Result<i64> {
    if f.is_empty() {
        return Ok(0);
    }
    if !f.is_closed() {
        return Err(Error::RequiresClosed);
    }
    let tau: i64 = meyer_terms(f).iter().sum();
    let separating: usize = f.separating_counts().values().sum();
    Ok(tau + SEPARATING_CORRECTION * separating as i64)
}
