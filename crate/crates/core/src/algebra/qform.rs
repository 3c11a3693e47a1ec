use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::lattice::{HomologyClass, Surface};

/// A quadratic refinement of the mod-2 intersection pairing (a spin structure on the
/// surface), stored by its values on the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticForm {
    values: Vec<bool>,
}

impl QuadraticForm {
    pub fn new(values: Vec<bool>) -> Result<Self> {
        if values.is_empty() || values.len() % 2 != 0 {
            return Err(Error::Dimension {
                expected: values.len() + values.len() % 2,
                found: values.len(),
            });
        }
        Ok(QuadraticForm { values })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        Self::new(bits.iter().map(|&b| b % 2 == 1).collect())
    }

    pub fn zero(surface: Surface) -> Self {
        QuadraticForm {
            values: vec![false; surface.rank()],
        }
    }

    /// The form taking value 1 on every standard basis curve.
    pub fn ones(surface: Surface) -> Self {
        QuadraticForm {
            values: vec![true; surface.rank()],
        }
    }

    pub fn basis_values(&self) -> &[bool] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn genus(&self) -> usize {
        self.values.len() / 2
    }

    /// `q(x)` for an integral class (reduced mod 2 first).
    pub fn eval(&self, x: &HomologyClass) -> Result<bool> {
        if x.rank() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                found: x.rank(),
            });
        }
        Ok(self.eval_bits(&x.mod2()))
    }

    /// `q(x) = sum x_k q(e_k) + sum_{k<l} x_k x_l <e_k, e_l>` over F2. Only the pairs
    /// `(a_i, b_i)` pair nontrivially.
    pub fn eval_bits(&self, x: &[bool]) -> bool {
        debug_assert_eq!(x.len(), self.values.len());
        let mut acc = false;
        for (k, (&xk, &qk)) in x.iter().zip(&self.values).enumerate() {
            acc ^= xk & qk;
            if k % 2 == 0 {
                acc ^= xk & x[k + 1];
            }
        }
        acc
    }

    /// `sum_i q(a_i) q(b_i)` mod 2.
    pub fn arf(&self) -> bool {
        self.values
            .chunks(2)
            .fold(false, |acc, pair| acc ^ (pair[0] & pair[1]))
    }

    /// `q o T_c^{-1}` (which equals `q o T_c`): the pushforward of `q` under a twist along
    /// a curve of class `c`. Basis values change by `<e_k, c> (q(c) + 1)`.
    pub(crate) fn twisted(&self, c: &[bool]) -> QuadraticForm {
        if self.eval_bits(c) {
            return self.clone();
        }
        let mut values = self.values.clone();
        for i in (0..values.len()).step_by(2) {
            // <a_i, c> = c_{b_i}, <b_i, c> = -c_{a_i}
            values[i] ^= c[i + 1];
            values[i + 1] ^= c[i];
        }
        QuadraticForm { values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> Surface {
        Surface::new(n).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let s = g(2);
        let q = QuadraticForm::zero(s);
        assert!(q.eval(&(&s.a(1) + &s.b(1))).unwrap());
        assert!(!q.eval(&s.zero()).unwrap());
        assert!(!q.eval(&(&s.a(1) + &s.a(2))).unwrap());
        let q1 = QuadraticForm::ones(s);
        assert!(!q1.eval(&s.zero()).unwrap());
    }

    #[test]
    fn arf_examples() {
        assert!(!QuadraticForm::zero(g(2)).arf());
        assert!(QuadraticForm::from_bits(&[1, 1, 0, 0]).unwrap().arf());
        assert!(!QuadraticForm::from_bits(&[1, 0, 0, 0]).unwrap().arf());
    }

    #[test]
    fn dimension_checks() {
        assert!(QuadraticForm::new(vec![true]).is_err());
        let q = QuadraticForm::zero(g(1));
        assert!(q.eval(&g(2).a(1)).is_err());
    }

    #[test]
    fn twisting_by_a1_flips_b1_when_q_a1_vanishes() {
        let s = g(1);
        let q = QuadraticForm::zero(s);
        let q2 = q.twisted(&s.a(1).mod2());
        assert!(q2.eval(&s.b(1)).unwrap());
        assert!(!q2.eval(&s.a(1)).unwrap());
    }
}
