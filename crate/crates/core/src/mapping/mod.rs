//! Mapping classes as signed Dehn-twist words with a cached symplectic action.
//!
//! Composition is function composition: the word `w_1 w_2 ... w_m` acts by applying `w_m`
//! first, and its matrix is `M(w_1) M(w_2) ... M(w_m)`.

mod factor;
mod parse;
mod transport;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{derive_label, Curve, HomologyClass, IntMatrix, QuadraticForm, Surface};
use crate::error::{Error, Result};

pub use factor::transvection_factorization;
pub use transport::{curve_transport, spin_transport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One letter of a twist word: `t_c` or `t_c^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Twist {
    pub curve: Curve,
    pub sign: Sign,
}

impl Twist {
    pub fn positive(curve: Curve) -> Twist {
        Twist { curve, sign: Sign::Positive }
    }

    pub fn negative(curve: Curve) -> Twist {
        Twist { curve, sign: Sign::Negative }
    }

    pub fn inverse(&self) -> Twist {
        Twist {
            curve: self.curve.clone(),
            sign: self.sign.flip(),
        }
    }

    fn is_inverse_of(&self, other: &Twist) -> bool {
        self.sign != other.sign
            && self.curve.class() == other.curve.class()
            && self.curve.sep_genus() == other.curve.sep_genus()
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = match (self.curve.label(), self.curve.is_separating()) {
            (Some(l), _) if parse::is_standard_name(l) => l.to_string(),
            (_, true) => format!("sep{}", self.curve.sep_genus().unwrap_or(0)),
            _ => self.curve.class().to_string(),
        };
        match self.sign {
            Sign::Positive => write!(f, "t({inner})"),
            Sign::Negative => write!(f, "~t({inner})"),
        }
    }
}

/// A mapping class represented by a signed twist word, together with its action on
/// homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingClass {
    surface: Surface,
    word: Vec<Twist>,
    matrix: IntMatrix,
}

impl MappingClass {
    pub fn identity(surface: Surface) -> MappingClass {
        MappingClass {
            surface,
            word: Vec::new(),
            matrix: IntMatrix::identity(surface.rank()),
        }
    }

    pub fn from_word(surface: Surface, word: Vec<Twist>) -> Result<MappingClass> {
        let mut matrix = IntMatrix::identity(surface.rank());
        for t in &word {
            if t.curve.genus() != surface.genus() {
                return Err(Error::GenusMismatch {
                    left: surface.genus(),
                    right: t.curve.genus(),
                });
            }
            matrix.right_mul_transvection(t.curve.class().coords(), t.sign == Sign::Negative);
        }
        Ok(MappingClass { surface, word, matrix })
    }

    pub fn twist(curve: Curve) -> MappingClass {
        let surface = Surface::new(curve.genus()).expect("curves live on genus >= 1");
        MappingClass::from_word(surface, vec![Twist::positive(curve)]).expect("genus matches")
    }

    pub fn inverse_twist(curve: Curve) -> MappingClass {
        MappingClass::twist(curve).inverse()
    }

    /// Parse the twist-word syntax, e.g. `t(a9)*t(b9)`, `~t([0,1,-1,0])`, `id`.
    pub fn parse(surface: Surface, expr: &str) -> Result<MappingClass> {
        let word = parse::parse_word(surface, expr)?;
        MappingClass::from_word(surface, word)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn word(&self) -> &[Twist] {
        &self.word
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// True when the word cancels to nothing after free reduction.
    pub fn is_trivial_word(&self) -> bool {
        let mut stack: Vec<&Twist> = Vec::new();
        for t in &self.word {
            match stack.last() {
                Some(top) if top.is_inverse_of(t) => {
                    stack.pop();
                }
                _ => stack.push(t),
            }
        }
        stack.is_empty()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MappingClass) -> Result<MappingClass> {
        self.check_surface(other.surface)?;
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Ok(MappingClass {
            surface: self.surface,
            word,
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn inverse(&self) -> MappingClass {
        MappingClass {
            surface: self.surface,
            word: self.word.iter().rev().map(Twist::inverse).collect(),
            matrix: self.matrix.symplectic_inverse(),
        }
    }

    pub fn act_on_class(&self, x: &HomologyClass) -> Result<HomologyClass> {
        self.surface.check(x)?;
        Ok(HomologyClass::new(self.matrix.mul_vec(x.coords())))
    }

    /// Image curve. Standard images receive their standard label, everything else a
    /// derived `f(...)` label; the dual flag is cleared.
    pub fn act_on_curve(&self, c: &Curve) -> Result<Curve> {
        if c.genus() != self.surface.genus() {
            return Err(Error::GenusMismatch {
                left: self.surface.genus(),
                right: c.genus(),
            });
        }
        if self.word.is_empty() {
            return Ok(c.clone());
        }
        let image = self.act_on_class(c.class())?;
        let label = derive_label("f", &c.display_name());
        Ok(Curve::image(image, c.sep_genus(), Some(label)))
    }

    /// Pushforward `q o f^{-1}`, applied twist by twist (rightmost first).
    pub fn act_on_qform(&self, q: &QuadraticForm) -> Result<QuadraticForm> {
        if q.rank() != self.surface.rank() {
            return Err(Error::GenusMismatch {
                left: self.surface.genus(),
                right: q.genus(),
            });
        }
        let mut out = q.clone();
        for t in self.word.iter().rev() {
            out = out.twisted(&t.curve.class().mod2());
        }
        Ok(out)
    }

    pub fn preserves_qform(&self, q: &QuadraticForm) -> bool {
        self.act_on_qform(q).map_or(false, |p| &p == q)
    }

    fn check_surface(&self, other: Surface) -> Result<()> {
        if self.surface != other {
            return Err(Error::GenusMismatch {
                left: self.surface.genus(),
                right: other.genus(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "id");
        }
        for (k, t) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::intersection;

    fn g(n: usize) -> Surface {
        Surface::new(n).unwrap()
    }

    #[test]
    fn compose_examples() {
        let s = g(1);
        let id = MappingClass::identity(s);
        assert!(id.compose(&id).unwrap().matrix().is_identity());
        let a = MappingClass::twist(Curve::standard_a(s, 1));
        let prod = a.compose(&a.inverse()).unwrap();
        assert!(prod.matrix().is_identity());
        assert_eq!(prod.len(), 2);
        assert!(prod.is_trivial_word());
        assert_eq!(a.compose(&id).unwrap(), a);
    }

    #[test]
    fn genus_mismatch_is_reported() {
        let a = MappingClass::identity(g(1));
        let b = MappingClass::identity(g(2));
        assert!(matches!(a.compose(&b), Err(Error::GenusMismatch { .. })));
        assert!(a.act_on_curve(&Curve::standard_a(g(2), 1)).is_err());
    }

    #[test]
    fn twist_pair_carries_a_to_b() {
        // t(a1)*t(b1) applies t(b1) first: a1 -> a1 + b1 -> b1.
        let s = g(1);
        let f = MappingClass::parse(s, "t(a1)*t(b1)").unwrap();
        let image = f.act_on_curve(&Curve::standard_a(s, 1)).unwrap();
        assert_eq!(image.class(), &s.b(1));
        assert_eq!(image.label(), Some("b1"));
        let reversed = MappingClass::parse(s, "t(b1)*t(a1)").unwrap();
        let other = reversed.act_on_curve(&Curve::standard_a(s, 1)).unwrap();
        assert_eq!(other.class(), &(&s.a(1) + &s.b(1)));
        assert_eq!(other.label(), Some("f(a1)"));
    }

    #[test]
    fn separating_curves_stay_separating() {
        let s = g(2);
        let f = MappingClass::parse(s, "t(a1)*~t(b2)*t([1,1,0,1])").unwrap();
        let c = Curve::separating(s, 1).unwrap();
        let image = f.act_on_curve(&c).unwrap();
        assert_eq!(image.sep_genus(), Some(1));
        assert!(image.class().is_zero());
    }

    #[test]
    fn qform_action_examples() {
        let s = g(1);
        let q = QuadraticForm::zero(s);
        let id = MappingClass::identity(s);
        assert_eq!(id.act_on_qform(&q).unwrap(), q);
        assert!(id.preserves_qform(&q));

        let ta = MappingClass::twist(Curve::standard_a(s, 1));
        let moved = ta.act_on_qform(&q).unwrap();
        assert!(moved.eval(&s.b(1)).unwrap());
        assert!(!ta.preserves_qform(&q));

        let q1 = QuadraticForm::from_bits(&[1, 0]).unwrap();
        assert!(ta.preserves_qform(&q1));
    }

    #[test]
    fn qform_action_matches_inverse_matrix() {
        let s = g(2);
        let f = MappingClass::parse(s, "t(a1)*t([1,1,0,1])*~t(b2)*t([0,1,1,0])").unwrap();
        let q = QuadraticForm::from_bits(&[0, 1, 1, 0]).unwrap();
        let pushed = f.act_on_qform(&q).unwrap();
        let inv = f.matrix().symplectic_inverse();
        for bits in 0..16u32 {
            let x = HomologyClass::from_i64s(
                &(0..4).map(|k| ((bits >> k) & 1) as i64).collect::<Vec<_>>(),
            );
            let pre = HomologyClass::new(inv.mul_vec(x.coords()));
            assert_eq!(pushed.eval(&x).unwrap(), q.eval(&pre).unwrap());
        }
        assert_eq!(pushed.arf(), q.arf());
    }

    #[test]
    fn inverse_and_display() {
        let s = g(2);
        let f = MappingClass::parse(s, "t(a1)*~t([0,1,-1,0])").unwrap();
        assert_eq!(f.to_string(), "t(a1)*~t([0,1,-1,0])");
        assert!(f.compose(&f.inverse()).unwrap().matrix().is_identity());
        assert!(f.matrix().is_symplectic());
        let x = s.b(1);
        let y = f.act_on_class(&x).unwrap();
        assert_eq!(
            intersection(&y, &f.act_on_class(&s.a(1)).unwrap()).unwrap(),
            intersection(&x, &s.a(1)).unwrap()
        );
    }
}
