use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::matrix::IntMatrix;

/// A closed oriented surface of genus `g >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Surface {
    genus: usize,
}

impl Surface {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        Ok(Surface { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of `H_1`, i.e. `2g`.
    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn zero(&self) -> HomologyClass {
        HomologyClass::zero(self.rank())
    }

    /// The class `a_i`, 1-based.
    pub fn a(&self, i: usize) -> HomologyClass {
        assert!(i >= 1 && i <= self.genus, "a{i} does not exist in genus {}", self.genus);
        HomologyClass::basis(self.rank(), 2 * (i - 1))
    }

    /// The class `b_i`, 1-based.
    pub fn b(&self, i: usize) -> HomologyClass {
        assert!(i >= 1 && i <= self.genus, "b{i} does not exist in genus {}", self.genus);
        HomologyClass::basis(self.rank(), 2 * (i - 1) + 1)
    }

    /// The standard basis in order `a1, b1, ..., ag, bg`.
    pub fn standard_basis(&self) -> Vec<HomologyClass> {
        (0..self.rank())
            .map(|k| HomologyClass::basis(self.rank(), k))
            .collect()
    }

    /// Gram matrix `J` of the intersection pairing.
    pub fn symplectic_form(&self) -> IntMatrix {
        IntMatrix::symplectic_form(self.genus)
    }

    pub(crate) fn check(&self, x: &HomologyClass) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                found: x.rank(),
            });
        }
        Ok(())
    }
}

impl TryFrom<usize> for Surface {
    type Error = Error;
    fn try_from(genus: usize) -> Result<Self> {
        Surface::new(genus)
    }
}

impl From<Surface> for usize {
    fn from(s: Surface) -> usize {
        s.genus
    }
}

/// Name of the `k`-th standard basis vector (0-based): `a1`, `b1`, `a2`, ...
pub fn standard_label(k: usize) -> String {
    if k % 2 == 0 {
        format!("a{}", k / 2 + 1)
    } else {
        format!("b{}", k / 2 + 1)
    }
}

/// An integral homology class, given by its coordinates in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyClass {
    coords: Vec<BigInt>,
}

impl HomologyClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        HomologyClass { coords }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        HomologyClass {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        HomologyClass {
            coords: vec![BigInt::zero(); rank],
        }
    }

    pub fn basis(rank: usize, k: usize) -> Self {
        let mut x = Self::zero(rank);
        x.coords[k] = BigInt::one();
        x
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates (zero for the zero class).
    pub fn content(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The class divided by its content, or `None` for the zero class.
    pub fn primitive_part(&self) -> Option<HomologyClass> {
        let content = self.content();
        if content.is_zero() {
            return None;
        }
        Some(HomologyClass {
            coords: self.coords.iter().map(|c| c / &content).collect(),
        })
    }

    /// `+x` or `-x`, whichever has a positive first nonzero coordinate.
    pub fn sign_normalized(&self) -> HomologyClass {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(first) if first.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn is_sign_normalized(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .map_or(true, |c| c.is_positive())
    }

    /// `Some(k)` when the class is `±e_k` for a standard basis vector `e_k`.
    pub fn standard_index(&self) -> Option<usize> {
        let mut found = None;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || c.abs() != BigInt::one() {
                return None;
            }
            found = Some(k);
        }
        found
    }

    /// Reduction mod 2.
    pub fn mod2(&self) -> Vec<bool> {
        self.coords.iter().map(|c| c.is_odd()).collect()
    }

    pub fn scaled(&self, k: &BigInt) -> HomologyClass {
        HomologyClass {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// `self + k * other`.
    pub fn add_multiple(&self, k: &BigInt, other: &HomologyClass) -> HomologyClass {
        debug_assert_eq!(self.rank(), other.rank());
        HomologyClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x + k * y)
                .collect(),
        }
    }

    /// Largest absolute coordinate.
    pub fn height(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl std::ops::Neg for &HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        HomologyClass {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Add for &HomologyClass {
    type Output = HomologyClass;
    fn add(self, other: &HomologyClass) -> HomologyClass {
        self.add_multiple(&BigInt::one(), other)
    }
}

impl std::ops::Sub for &HomologyClass {
    type Output = HomologyClass;
    fn sub(self, other: &HomologyClass) -> HomologyClass {
        self.add_multiple(&-BigInt::one(), other)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// The intersection pairing `x^T J y`.
pub fn intersection(x: &HomologyClass, y: &HomologyClass) -> Result<BigInt> {
    if x.rank() != y.rank() {
        return Err(Error::Dimension {
            expected: x.rank(),
            found: y.rank(),
        });
    }
    if x.rank() % 2 != 0 {
        return Err(Error::Dimension {
            expected: x.rank() + 1,
            found: x.rank(),
        });
    }
    Ok(pairing(x.coords(), y.coords()))
}

/// Unchecked pairing on raw coordinate slices of equal even length.
pub(crate) fn pairing(x: &[BigInt], y: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for i in (0..x.len()).step_by(2) {
        acc += &x[i] * &y[i + 1];
        acc -= &x[i + 1] * &y[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: usize) -> Surface {
        Surface::new(g).unwrap()
    }

    #[test]
    fn defining_pairings() {
        let g2 = s(2);
        assert_eq!(intersection(&g2.a(1), &g2.b(1)).unwrap(), BigInt::from(1));
        assert_eq!(intersection(&g2.b(1), &g2.a(1)).unwrap(), BigInt::from(-1));
        assert_eq!(intersection(&g2.a(1), &g2.a(2)).unwrap(), BigInt::zero());
        let x = &g2.a(1) + &g2.a(2);
        assert_eq!(intersection(&x, &g2.b(2)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn rank_mismatch_is_a_dimension_error() {
        let err = intersection(&s(1).a(1), &s(2).a(1)).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn genus_zero_rejected() {
        assert_eq!(Surface::new(0), Err(Error::InvalidGenus(0)));
    }

    #[test]
    fn sign_normalization() {
        let x = HomologyClass::from_i64s(&[0, -2, 3, 1]);
        let n = x.sign_normalized();
        assert_eq!(n, HomologyClass::from_i64s(&[0, 2, -3, -1]));
        assert_eq!(n.sign_normalized(), n);
        assert!(n.is_sign_normalized());
    }

    #[test]
    fn standard_index_detection() {
        assert_eq!(HomologyClass::from_i64s(&[0, 0, -1, 0]).standard_index(), Some(2));
        assert_eq!(HomologyClass::from_i64s(&[0, 1, 1, 0]).standard_index(), None);
        assert_eq!(HomologyClass::from_i64s(&[0, 2, 0, 0]).standard_index(), None);
        assert_eq!(standard_label(2), "a2");
        assert_eq!(standard_label(5), "b3");
    }

    #[test]
    fn content_and_primitivity() {
        assert!(HomologyClass::from_i64s(&[2, 3]).is_primitive());
        assert!(!HomologyClass::from_i64s(&[2, 4]).is_primitive());
        assert_eq!(
            HomologyClass::from_i64s(&[-2, 4]).primitive_part().unwrap(),
            HomologyClass::from_i64s(&[-1, 2])
        );
        assert!(HomologyClass::zero(4).primitive_part().is_none());
    }
}
