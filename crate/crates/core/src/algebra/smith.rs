//! Smith normal form over the integers, lattice spanning tests and integral solutions of
//! linear systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k)
            .map(|i| self.diagonal.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry in the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.magnitude() < d.get(bi, bj).magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in (t + 1)..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                add_row(&mut d, &mut u, i, t, &-q);
                if !d.get(i, t).is_zero() {
                    swap_rows(&mut d, &mut u, t, i);
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in (t + 1)..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                add_col(&mut d, &mut v, j, t, &-q);
                if !d.get(t, j).is_zero() {
                    swap_cols(&mut d, &mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: the pivot must divide every remaining entry.
            let mut offender = None;
            'search: for i in (t + 1)..m {
                for j in (t + 1)..n {
                    if !d.get(i, j).is_multiple_of(d.get(t, t)) {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => add_row(&mut d, &mut u, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            let neg = -BigInt::one();
            scale_row(&mut d, &mut u, t, &neg);
        }
        t += 1;
    }
    SmithForm {
        diagonal: d,
        left: u,
        right: v,
    }
}

fn swap_rows(d: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..d.cols() {
        let (x, y) = (d.get(i, c).clone(), d.get(j, c).clone());
        d.set(i, c, y);
        d.set(j, c, x);
    }
    for c in 0..u.cols() {
        let (x, y) = (u.get(i, c).clone(), u.get(j, c).clone());
        u.set(i, c, y);
        u.set(j, c, x);
    }
}

fn swap_cols(d: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..d.rows() {
        let (x, y) = (d.get(r, i).clone(), d.get(r, j).clone());
        d.set(r, i, y);
        d.set(r, j, x);
    }
    for r in 0..v.rows() {
        let (x, y) = (v.get(r, i).clone(), v.get(r, j).clone());
        v.set(r, i, y);
        v.set(r, j, x);
    }
}

/// row_i += k * row_j
fn add_row(d: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, k: &BigInt) {
    for c in 0..d.cols() {
        let x = d.get(j, c) * k;
        *d.get_mut(i, c) += x;
    }
    for c in 0..u.cols() {
        let x = u.get(j, c) * k;
        *u.get_mut(i, c) += x;
    }
}

/// col_i += k * col_j
fn add_col(d: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize, k: &BigInt) {
    for r in 0..d.rows() {
        let x = d.get(r, j) * k;
        *d.get_mut(r, i) += x;
    }
    for r in 0..v.rows() {
        let x = v.get(r, j) * k;
        *v.get_mut(r, i) += x;
    }
}

fn scale_row(d: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: &BigInt) {
    for c in 0..d.cols() {
        let x = d.get(i, c) * k;
        d.set(i, c, x);
    }
    for c in 0..u.cols() {
        let x = u.get(i, c) * k;
        u.set(i, c, x);
    }
}

/// Hermite-style basis of the lattice spanned by `vectors` (all of length `dim`), built
/// incrementally so that long generator lists stay cheap.
pub fn lattice_basis(vectors: impl IntoIterator<Item = Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    // basis[c] holds the row whose leading column is c, if any.
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; dim];
    for mut v in vectors {
        debug_assert_eq!(v.len(), dim);
        for c in 0..dim {
            if v[c].is_zero() {
                continue;
            }
            match basis[c].take() {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    basis[c] = Some(v);
                    break;
                }
                Some(mut b) => {
                    // Euclid on the leading entries of b and v.
                    let e = b[c].extended_gcd(&v[c]);
                    let (bc, vc) = (b[c].clone(), v[c].clone());
                    let new_b: Vec<BigInt> =
                        b.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let fb = &vc / &e.gcd;
                    let fv = &bc / &e.gcd;
                    let new_v: Vec<BigInt> =
                        b.iter().zip(&v).map(|(x, y)| &fv * y - &fb * x).collect();
                    b = new_b;
                    if b[c].is_negative() {
                        b.iter_mut().for_each(|x| *x = -&*x);
                    }
                    basis[c] = Some(b);
                    v = new_v;
                    debug_assert!(v[c].is_zero());
                }
            }
        }
    }
    basis.into_iter().flatten().collect()
}

/// Result of testing whether a set of vectors spans `Z^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl SpanReport {
    pub fn spans_full(&self, dim: usize) -> bool {
        self.rank == dim && self.invariant_factors.iter().all(One::is_one)
    }

    /// Index of the spanned sublattice when it has full rank.
    pub fn index(&self, dim: usize) -> Option<BigInt> {
        (self.rank == dim).then(|| self.invariant_factors.iter().product())
    }
}

pub fn span_report(vectors: impl IntoIterator<Item = Vec<BigInt>>, dim: usize) -> SpanReport {
    let basis = lattice_basis(vectors, dim);
    if basis.is_empty() {
        return SpanReport {
            rank: 0,
            invariant_factors: Vec::new(),
        };
    }
    let rows: Vec<Vec<BigInt>> = basis;
    let m = IntMatrix::from_fn(rows.len(), dim, |i, j| rows[i][j].clone());
    let snf = smith_normal_form(&m);
    let factors = snf.invariant_factors();
    SpanReport {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

/// An integral solution of `A x = b`, if one exists.
pub fn solve_integral(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let ub = snf.left.mul_vec(b);
    let k = a.rows().min(a.cols());
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        let di = if i < k { snf.diagonal.get(i, i).clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
            continue;
        }
        if !ubi.is_multiple_of(&di) {
            return None;
        }
        y[i] = ubi / &di;
    }
    Some(snf.right.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_form_of_small_matrix() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), v(&[2, 6, 12]));
        assert_eq!(snf.left.mul(&a).mul(&snf.right), snf.diagonal);
    }

    #[test]
    fn spanning_detection() {
        let full = span_report(vec![v(&[1, 0]), v(&[3, 1])], 2);
        assert!(full.spans_full(2));
        let index2 = span_report(vec![v(&[2, 0]), v(&[0, 1]), v(&[4, 3])], 2);
        assert_eq!(index2.rank, 2);
        assert!(!index2.spans_full(2));
        assert_eq!(index2.index(2), Some(BigInt::from(2)));
        let deficient = span_report(vec![v(&[1, 1, 0]), v(&[2, 2, 0])], 3);
        assert_eq!(deficient.rank, 1);
        assert_eq!(span_report(Vec::<Vec<BigInt>>::new(), 2).rank, 0);
    }

    #[test]
    fn integral_solutions() {
        let a = IntMatrix::from_rows(&[vec![2, 3], vec![4, 5]]);
        let x = solve_integral(&a, &v(&[1, 1])).unwrap();
        assert_eq!(a.mul_vec(&x), v(&[1, 1]));
        let b = IntMatrix::from_rows(&[vec![2, 4]]);
        assert!(solve_integral(&b, &v(&[1])).is_none());
        assert!(solve_integral(&b, &v(&[6])).is_some());
    }
}
