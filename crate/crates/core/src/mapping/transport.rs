//! Mapping classes that carry one non-separating curve onto another.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::matrix::j_times;
use crate::algebra::smith::solve_integral;
use crate::algebra::{intersection, Curve, HomologyClass, IntMatrix, QuadraticForm, Surface};
use crate::error::{Error, Result};

use super::factor::Reducer;
use super::{MappingClass, Twist};

fn check_pair(c: &Curve, d: &Curve) -> Result<Surface> {
    if c.is_separating() || d.is_separating() {
        return Err(Error::Unsupported(
            "curve transport needs non-separating curves".into(),
        ));
    }
    if c.genus() != d.genus() {
        return Err(Error::GenusMismatch {
            left: c.genus(),
            right: d.genus(),
        });
    }
    for x in [c, d] {
        if !x.class().is_primitive() {
            return Err(Error::InvalidCurve(format!("{} is not primitive", x.class())));
        }
    }
    Surface::new(c.genus())
}

fn unit_pairing(x: &HomologyClass, y: &HomologyClass) -> bool {
    intersection(x, y).map_or(false, |k| k.abs().is_one())
}

fn plain(surface: Surface, class: HomologyClass) -> Curve {
    match class.standard_index() {
        Some(k) => Curve::standard(surface, k),
        None => Curve::nonseparating(class).expect("primitive by construction"),
    }
}

/// `t_x t_y`, which sends `x` to `±y` when `|<x, y>| = 1`.
fn hop(surface: Surface, x: &Curve, y: &Curve) -> Vec<Twist> {
    let strip = |c: &Curve| plain(surface, c.class().clone());
    vec![Twist::positive(strip(x)), Twist::positive(strip(y))]
}

fn candidates(surface: Surface) -> Vec<HomologyClass> {
    let g = surface.genus();
    let mut out = Vec::new();
    for k in 1..=g {
        out.push(surface.a(k));
        out.push(surface.b(k));
        out.push(&surface.a(k) + &surface.b(k));
    }
    for j in 1..=g {
        for k in j + 1..=g {
            out.push(&surface.b(j) + &surface.b(k));
        }
    }
    out
}

/// Integer solutions `x` of `<c, x> = s1`, `<d, x> = s2` over the four sign choices.
fn solved_auxiliaries(c: &HomologyClass, d: &HomologyClass) -> Vec<HomologyClass> {
    let row = |v: &HomologyClass| j_times(v.coords()).into_iter().map(|x| -x).collect::<Vec<_>>();
    let a = IntMatrix::from_fn(2, c.rank(), |i, j| {
        if i == 0 {
            row(c)[j].clone()
        } else {
            row(d)[j].clone()
        }
    });
    let mut out = Vec::new();
    for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        if let Some(x) = solve_integral(&a, &[BigInt::from(s1), BigInt::from(s2)]) {
            out.push(HomologyClass::new(x));
        }
    }
    out
}

/// General route: reduce both classes to `a1` and compose.
fn via_reduction(surface: Surface, c: &Curve, d: &Curve) -> Result<MappingClass> {
    let mut rc = Reducer::new(surface, vec![c.class().coords().to_vec()]);
    rc.reduce_to_a(0, 0)?;
    let mut rd = Reducer::new(surface, vec![d.class().coords().to_vec()]);
    rd.reduce_to_a(0, 0)?;
    let mut word = rd.inverse_word();
    word.extend(rc.forward_word());
    MappingClass::from_word(surface, word)
}

fn verified(f: MappingClass, c: &Curve, d: &Curve) -> Result<MappingClass> {
    let image = f.act_on_class(c.class())?;
    if image.sign_normalized() != d.class().sign_normalized() {
        return Err(Error::Inconsistent(format!(
            "transport of {} landed on {image}, expected ±{}",
            c.class(),
            d.class()
        )));
    }
    Ok(f)
}

/// A mapping class `f` with `f(c) = ±d` homologically.
///
/// Equal classes give the identity, `|<c, d>| = 1` gives the two-twist word `t_c t_d`, and
/// otherwise the word `t_e t_d t_c t_e` through an auxiliary class `e` with
/// `|<c, e>| = |<e, d>| = 1`. Such an `e` is taken from a fixed candidate list or solved
/// for with Smith normal form. It need not exist (e.g. `c = a1`, `d = 2a1 + 5b2`); in that
/// case both classes are reduced to `a1` by elementary words and the reductions composed.
pub fn curve_transport(c: &Curve, d: &Curve) -> Result<MappingClass> {
    let surface = check_pair(c, d)?;
    if c.class().sign_normalized() == d.class().sign_normalized() {
        return Ok(MappingClass::identity(surface));
    }
    if unit_pairing(c.class(), d.class()) {
        let f = MappingClass::from_word(surface, hop(surface, c, d))?;
        return verified(f, c, d);
    }
    let found = candidates(surface)
        .into_iter()
        .find(|e| unit_pairing(c.class(), e) && unit_pairing(e, d.class()))
        .or_else(|| solved_auxiliaries(c.class(), d.class()).into_iter().next());
    let f = match found {
        Some(e) => {
            let e = plain(surface, e.sign_normalized());
            let mut word = hop(surface, &e, d);
            word.extend(hop(surface, c, &e));
            MappingClass::from_word(surface, word)?
        }
        None => via_reduction(surface, c, d)?,
    };
    verified(f, c, d)
}

/// Like [`curve_transport`], but every twist in the word is along a curve with `q = 1`, so
/// the result preserves `q`. Only direct and single-auxiliary routes are searched; when
/// none exists the call fails with a precondition error.
pub fn spin_transport(c: &Curve, d: &Curve, q: &QuadraticForm) -> Result<MappingClass> {
    let surface = check_pair(c, d)?;
    if q.rank() != surface.rank() {
        return Err(Error::Dimension {
            expected: surface.rank(),
            found: q.rank(),
        });
    }
    if c.class().sign_normalized() == d.class().sign_normalized() {
        return Ok(MappingClass::identity(surface));
    }
    let qc = q.eval(c.class())?;
    let qd = q.eval(d.class())?;
    if !qc || !qd {
        return Err(Error::Precondition(format!(
            "spin-preserving transport needs q = 1 on both ends (q({}) = {}, q({}) = {})",
            c.display_name(),
            u8::from(qc),
            d.display_name(),
            u8::from(qd)
        )));
    }
    if unit_pairing(c.class(), d.class()) {
        let f = MappingClass::from_word(surface, hop(surface, c, d))?;
        return verified(f, c, d);
    }
    let good = |e: &HomologyClass| {
        !e.is_zero()
            && e.is_primitive()
            && unit_pairing(c.class(), e)
            && unit_pairing(e, d.class())
            && q.eval(e).unwrap_or(false)
    };
    let mut pool = candidates(surface);
    for e in solved_auxiliaries(c.class(), d.class()) {
        for k in surface.standard_basis() {
            // Shift by lattice vectors orthogonal to both ends to reach q(e) = 1.
            let ck = intersection(c.class(), &k)?;
            let dk = intersection(d.class(), &k)?;
            if ck.is_zero() && dk.is_zero() {
                pool.push(&e + &k);
            }
        }
        pool.push(e);
    }
    let e = pool.into_iter().find(good).ok_or_else(|| {
        Error::Precondition(format!(
            "no spin-preserving auxiliary curve found between {} and {}",
            c.display_name(),
            d.display_name()
        ))
    })?;
    let e = plain(surface, e.sign_normalized());
    let mut word = hop(surface, &e, d);
    word.extend(hop(surface, c, &e));
    verified(MappingClass::from_word(surface, word)?, c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: usize) -> Surface {
        Surface::new(g).unwrap()
    }

    #[test]
    fn identity_when_equal() {
        let a = Curve::standard_a(s(2), 1);
        assert!(curve_transport(&a, &a).unwrap().is_empty());
    }

    #[test]
    fn two_twists_for_dual_pair() {
        let sf = s(1);
        let f = curve_transport(&Curve::standard_a(sf, 1), &Curve::standard_b(sf, 1)).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.act_on_class(&sf.a(1)).unwrap().sign_normalized(), sf.b(1));
    }

    #[test]
    fn four_twists_through_auxiliary() {
        let sf = s(2);
        let f = curve_transport(&Curve::standard_a(sf, 1), &Curve::standard_a(sf, 2)).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.word()[0].curve.class(), &(&sf.b(1) + &sf.b(2)));
        assert_eq!(f.act_on_class(&sf.a(1)).unwrap().sign_normalized(), sf.a(2));
    }

    #[test]
    fn no_auxiliary_falls_back() {
        let sf = s(2);
        let c = Curve::standard_a(sf, 1);
        let d = Curve::nonseparating(HomologyClass::from_i64s(&[2, 0, 0, 5])).unwrap();
        assert!(solved_auxiliaries(c.class(), d.class()).is_empty());
        let f = curve_transport(&c, &d).unwrap();
        assert_eq!(f.act_on_class(c.class()).unwrap().sign_normalized(), *d.class());
    }

    #[test]
    fn separating_rejected() {
        let sf = s(2);
        let sep = Curve::separating(sf, 1).unwrap();
        assert!(matches!(
            curve_transport(&sep, &Curve::standard_a(sf, 1)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn spin_transport_preserves_form() {
        let sf = s(2);
        let q = QuadraticForm::from_bits(&[1, 1, 1, 0]).unwrap();
        let f = spin_transport(&Curve::standard_a(sf, 1), &Curve::standard_a(sf, 2), &q).unwrap();
        assert!(f.preserves_qform(&q));
        assert_eq!(f.act_on_class(&sf.a(1)).unwrap().sign_normalized(), sf.a(2));
        // Every single-auxiliary route has q(e) = 0 for the all-ones form.
        let ones = QuadraticForm::ones(sf);
        assert!(spin_transport(&Curve::standard_a(sf, 1), &Curve::standard_a(sf, 2), &ones).is_err());
        let q0 = QuadraticForm::zero(sf);
        assert!(spin_transport(&Curve::standard_a(sf, 1), &Curve::standard_b(sf, 1), &q0).is_err());
    }
}
