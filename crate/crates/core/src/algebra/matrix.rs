use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense row-major matrix over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Build from rows of machine integers. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Gram matrix of the standard symplectic pairing in genus `g`.
    pub fn symplectic_form(genus: usize) -> Self {
        let n = 2 * genus;
        let mut j = Self::zeros(n, n);
        for i in 0..genus {
            j.set(2 * i, 2 * i + 1, BigInt::one());
            j.set(2 * i + 1, 2 * i, -BigInt::one());
        }
        j
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Panics if the inner dimensions disagree.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn sub_identity(&self) -> IntMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            *m.get_mut(i, i) -= 1;
        }
        m
    }

    /// `M^T J M == J`.
    pub fn is_symplectic(&self) -> bool {
        if !self.is_square() || self.rows % 2 != 0 {
            return false;
        }
        let j = IntMatrix::symplectic_form(self.rows / 2);
        self.transpose().mul(&j).mul(self) == j
    }

    /// Inverse of a symplectic matrix, `-J M^T J`. The caller guarantees symplecticity.
    pub fn symplectic_inverse(&self) -> IntMatrix {
        let n = self.rows;
        // -J M^T J is a signed permutation of the transpose:
        // entry (i, j) is sign(i) sign(j) M[p(j)][p(i)] with p swapping a_k and b_k.
        let partner = |i: usize| i ^ 1;
        let sign = |i: usize| if i % 2 == 0 { 1i32 } else { -1 };
        IntMatrix::from_fn(n, n, |i, j| {
            let v = self.get(partner(j), partner(i)).clone();
            if sign(i) * sign(j) == 1 {
                v
            } else {
                -v
            }
        })
    }

    /// Replace `self` by `self * T_c^{±1}` where `T_c = I + c (Jc)^T`.
    pub(crate) fn right_mul_transvection(&mut self, c: &[BigInt], inverse: bool) {
        let w = j_times(c);
        for i in 0..self.rows {
            let pc: BigInt = self
                .row(i)
                .iter()
                .zip(c)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum();
            if pc.is_zero() {
                continue;
            }
            let pc = if inverse { -pc } else { pc };
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() {
                    *self.get_mut(i, j) += &pc * wj;
                }
            }
        }
    }

    /// Replace `self` by `T_c^{±1} * self`.
    pub(crate) fn left_mul_transvection(&mut self, c: &[BigInt], inverse: bool) {
        let w = j_times(c);
        for j in 0..self.cols {
            let wp: BigInt = (0..self.rows)
                .filter(|&k| !w[k].is_zero())
                .map(|k| &w[k] * self.get(k, j))
                .sum();
            if wp.is_zero() {
                continue;
            }
            let wp = if inverse { -wp } else { wp };
            for (i, ci) in c.iter().enumerate() {
                if !ci.is_zero() {
                    *self.get_mut(i, j) += &wp * ci;
                }
            }
        }
    }
}

/// `J c` for the block-diagonal form, so that `<x, c> = x . (J c)`.
pub(crate) fn j_times(c: &[BigInt]) -> Vec<BigInt> {
    let mut w = Vec::with_capacity(c.len());
    for i in (0..c.len()).step_by(2) {
        w.push(c[i + 1].clone());
        w.push(-&c[i]);
    }
    w
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_inverse_matches_product() {
        let m = IntMatrix::from_rows(&[
            vec![1, 1, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 2, 1],
            vec![0, 0, 1, 1],
        ]);
        assert!(m.is_symplectic());
        assert!(m.mul(&m.symplectic_inverse()).is_identity());
        assert!(m.symplectic_inverse().mul(&m).is_identity());
    }

    #[test]
    fn transvection_updates_agree_with_full_products() {
        let c: Vec<BigInt> = [1, -1, 2, 0].iter().map(|&v| BigInt::from(v)).collect();
        let w = j_times(&c);
        let t = IntMatrix::from_fn(4, 4, |i, j| {
            let d = if i == j { BigInt::one() } else { BigInt::zero() };
            d + &c[i] * &w[j]
        });
        let p = IntMatrix::from_rows(&[
            vec![2, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 3],
            vec![0, 0, 0, 1],
        ]);
        let mut r = p.clone();
        r.right_mul_transvection(&c, false);
        assert_eq!(r, p.mul(&t));
        let mut l = p.clone();
        l.left_mul_transvection(&c, false);
        assert_eq!(l, t.mul(&p));
        l.left_mul_transvection(&c, true);
        assert_eq!(l, p);
    }
}
