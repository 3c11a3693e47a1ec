use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

use super::lattice::{pairing, standard_label, HomologyClass, Surface};
use super::matrix::{j_times, IntMatrix};

/// Labels deeper than this many nested rewrites are replaced by a digest.
const MAX_LABEL_DEPTH: usize = 4;
const MAX_LABEL_LEN: usize = 64;

/// An unoriented simple closed curve, modelled by its homology class.
///
/// Non-separating curves carry a primitive, sign-normalized class. Separating curves have
/// class zero and record the genus `h` of the smaller side.
///
/// Equality and hashing ignore the move history kept for undoing Hurwitz moves.
#[derive(Clone, Debug)]
pub struct Curve {
    class: HomologyClass,
    sep_genus: Option<usize>,
    label: Option<String>,
    dual: bool,
    undo: Option<Box<Undo>>,
}

/// How a curve arose from `prev`: by the twist along a curve of class `by`, or its inverse.
#[derive(Clone, Debug)]
struct Undo {
    prev: Curve,
    by: HomologyClass,
    inverse: bool,
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.class == other.class
            && self.sep_genus == other.sep_genus
            && self.label == other.label
            && self.dual == other.dual
    }
}

impl Eq for Curve {}

impl std::hash::Hash for Curve {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.class.hash(state);
        self.sep_genus.hash(state);
        self.label.hash(state);
        self.dual.hash(state);
    }
}

impl Curve {
    /// A non-separating curve with the given class; the class is sign-normalized.
    pub fn nonseparating(class: HomologyClass) -> Result<Curve> {
        if class.rank() == 0 || class.rank() % 2 != 0 {
            return Err(Error::InvalidCurve(format!(
                "class {class} has odd or zero rank"
            )));
        }
        if !class.is_primitive() {
            return Err(Error::InvalidCurve(format!(
                "non-separating curve needs a primitive class, got {class}"
            )));
        }
        Ok(Curve {
            class: class.sign_normalized(),
            sep_genus: None,
            label: None,
            dual: false,
            undo: None,
        })
    }

    /// A separating curve cutting off a genus-`h` subsurface (`1 <= h <= g/2`).
    pub fn separating(surface: Surface, h: usize) -> Result<Curve> {
        if h == 0 || h > surface.genus() / 2 {
            return Err(Error::InvalidCurve(format!(
                "separating genus {h} outside 1..={} for genus {}",
                surface.genus() / 2,
                surface.genus()
            )));
        }
        Ok(Curve {
            class: surface.zero(),
            sep_genus: Some(h),
            label: None,
            dual: false,
            undo: None,
        })
    }

    /// Rebuild a curve from stored parts, enforcing every invariant.
    pub fn from_parts(
        class: HomologyClass,
        sep_genus: Option<usize>,
        label: Option<String>,
        dual: bool,
    ) -> Result<Curve> {
        let curve = match sep_genus {
            None => Curve::nonseparating(class.clone())?,
            Some(h) => {
                if !class.is_zero() {
                    return Err(Error::InvalidCurve(format!(
                        "separating curve must have zero class, got {class}"
                    )));
                }
                let surface = Surface::new(class.rank() / 2)?;
                Curve::separating(surface, h)?
            }
        };
        if curve.class != class {
            return Err(Error::InvalidCurve(format!(
                "class {class} is not sign-normalized"
            )));
        }
        Ok(curve.with_label(label).with_dual(dual))
    }

    /// The standard curve `a_i` (1-based), labelled `a{i}`.
    pub fn standard_a(surface: Surface, i: usize) -> Curve {
        Curve::standard(surface, 2 * (i - 1))
    }

    /// The standard curve `b_i` (1-based), labelled `b{i}`.
    pub fn standard_b(surface: Surface, i: usize) -> Curve {
        Curve::standard(surface, 2 * (i - 1) + 1)
    }

    /// The `k`-th standard basis curve (0-based in the order `a1, b1, a2, ...`).
    pub fn standard(surface: Surface, k: usize) -> Curve {
        Curve {
            class: HomologyClass::basis(surface.rank(), k),
            sep_genus: None,
            label: Some(standard_label(k)),
            dual: false,
            undo: None,
        }
    }

    /// Curve carrying an image class: standard classes get their standard label, anything
    /// else gets `derived`. The dual flag is always cleared.
    pub(crate) fn image(
        class: HomologyClass,
        sep_genus: Option<usize>,
        derived: Option<String>,
    ) -> Curve {
        let class = class.sign_normalized();
        let label = match (sep_genus, class.standard_index()) {
            (None, Some(k)) => Some(standard_label(k)),
            _ => derived,
        };
        Curve {
            class,
            sep_genus,
            label,
            dual: false,
            undo: None,
        }
    }

    /// The image of `self` under `t_by` (or its inverse when `inverse`), with class `class`.
    /// Applying the inverse twist right after gives back the original curve, flags included.
    pub(crate) fn moved_by(self, class: HomologyClass, by: &HomologyClass, inverse: bool) -> Curve {
        if let Some(u) = &self.undo {
            if u.inverse != inverse && &u.by == by && u.prev.class == class.sign_normalized() {
                return u.prev.clone();
            }
        }
        if class.sign_normalized() == self.class {
            return self;
        }
        let label = derive_label("h", &self.display_name());
        let mut out = Curve::image(class, self.sep_genus, Some(label));
        out.undo = Some(Box::new(Undo {
            prev: self,
            by: by.sign_normalized(),
            inverse,
        }));
        out
    }

    pub fn with_label(mut self, label: Option<String>) -> Curve {
        self.label = label;
        self
    }

    pub fn labelled(self, label: impl Into<String>) -> Curve {
        self.with_label(Some(label.into()))
    }

    pub fn with_dual(mut self, dual: bool) -> Curve {
        self.dual = dual;
        self
    }

    pub fn class(&self) -> &HomologyClass {
        &self.class
    }

    pub fn sep_genus(&self) -> Option<usize> {
        self.sep_genus
    }

    pub fn is_separating(&self) -> bool {
        self.sep_genus.is_some()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn genus(&self) -> usize {
        self.class.rank() / 2
    }

    /// Label if present, otherwise the coordinate vector.
    pub fn display_name(&self) -> String {
        match (&self.label, self.sep_genus) {
            (Some(l), _) => l.clone(),
            (None, Some(h)) => format!("sep{h}"),
            (None, None) => self.class.to_string(),
        }
    }

    /// Homology action of the positive Dehn twist: `x + <x, c> c`.
    pub fn transvection_apply(&self, x: &HomologyClass) -> Result<HomologyClass> {
        self.twist_apply(x, false)
    }

    /// Homology action of the inverse twist: `x - <x, c> c`.
    pub fn inverse_transvection_apply(&self, x: &HomologyClass) -> Result<HomologyClass> {
        self.twist_apply(x, true)
    }

    fn twist_apply(&self, x: &HomologyClass, inverse: bool) -> Result<HomologyClass> {
        if x.rank() != self.class.rank() {
            return Err(Error::Dimension {
                expected: self.class.rank(),
                found: x.rank(),
            });
        }
        let k = pairing(x.coords(), self.class.coords());
        if k.is_zero() {
            return Ok(x.clone());
        }
        let k = if inverse { -k } else { k };
        Ok(x.add_multiple(&k, &self.class))
    }

    /// Matrix of the homology action, `I + c (J c)^T`.
    pub fn transvection_matrix(&self) -> IntMatrix {
        let c = self.class.coords();
        let w = j_times(c);
        let n = c.len();
        IntMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { BigInt::one() } else { BigInt::zero() };
            d + &c[i] * &w[j]
        })
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_name())
    }
}

/// `op(inner)`, falling back to a short digest once the nesting or length grows too large.
pub fn derive_label(op: &str, inner: &str) -> String {
    let candidate = format!("{op}({inner})");
    let depth = candidate.chars().filter(|&c| c == '(').count();
    if depth <= MAX_LABEL_DEPTH && candidate.len() <= MAX_LABEL_LEN {
        return candidate;
    }
    let digest = Sha256::digest(candidate.as_bytes());
    let hex: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
    format!("{op}(#{hex})")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> Surface {
        Surface::new(n).unwrap()
    }

    #[test]
    fn twist_examples() {
        let s = g(1);
        let a = Curve::standard_a(s, 1);
        let b = Curve::standard_b(s, 1);
        assert_eq!(b.transvection_apply(&s.a(1)).unwrap(), &s.a(1) + &s.b(1));
        assert_eq!(a.transvection_apply(&s.b(1)).unwrap(), &s.b(1) - &s.a(1));
        let c = Curve::nonseparating(HomologyClass::from_i64s(&[2, 3])).unwrap();
        assert_eq!(c.transvection_apply(c.class()).unwrap(), *c.class());
    }

    #[test]
    fn matrix_examples() {
        let s = g(1);
        let m = Curve::standard_a(s, 1).transvection_matrix();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, -1], vec![0, 1]]));

        let sep = Curve::separating(g(2), 1).unwrap();
        assert!(sep.transvection_matrix().is_identity());
        let x = HomologyClass::from_i64s(&[3, -1, 4, 1]);
        assert_eq!(sep.transvection_apply(&x).unwrap(), x);
    }

    #[test]
    fn a1_plus_b2_transvection_is_symplectic() {
        let c = Curve::nonseparating(HomologyClass::from_i64s(&[1, 0, 0, 1])).unwrap();
        let m = c.transvection_matrix();
        let j = IntMatrix::symplectic_form(2);
        assert_eq!(m.transpose().mul(&j).mul(&m), j);
    }

    #[test]
    fn invariant_checks() {
        assert!(Curve::nonseparating(HomologyClass::from_i64s(&[2, 0])).is_err());
        assert!(Curve::nonseparating(HomologyClass::zero(2)).is_err());
        assert!(Curve::separating(g(1), 1).is_err());
        assert!(Curve::separating(g(5), 3).is_err());
        assert!(Curve::separating(g(5), 2).is_ok());
        let bad = Curve::from_parts(HomologyClass::from_i64s(&[1, 0, 0, 0]), Some(1), None, false);
        assert!(bad.is_err());
        let unnormalized = Curve::from_parts(HomologyClass::from_i64s(&[-1, 0]), None, None, false);
        assert!(unnormalized.is_err());
    }

    #[test]
    fn negated_class_gives_same_curve() {
        let x = HomologyClass::from_i64s(&[0, -1, 2, 1]);
        let c = Curve::nonseparating(x.clone()).unwrap();
        let d = Curve::nonseparating(-&x).unwrap();
        assert_eq!(c, d);
        assert_eq!(c.transvection_matrix(), d.transvection_matrix());
    }

    #[test]
    fn labels_are_bounded() {
        let mut label = "c1".to_string();
        for _ in 0..10 {
            label = derive_label("h", &label);
        }
        assert!(label.len() <= MAX_LABEL_LEN);
        assert!(label.starts_with("h(") && label.contains('#'));
        assert_eq!(derive_label("f", "a1"), "f(a1)");
    }
}
