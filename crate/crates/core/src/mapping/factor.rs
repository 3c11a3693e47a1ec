//! Writing symplectic integer matrices as twist words.
//!
//! The reduction left-multiplies by a small set of elementary twist words until the matrix
//! becomes the identity, then reads the word back in inverse. Each elementary word acts on
//! coordinates as follows (pairs are 0-based here):
//!
//! Before that, a greedy pass peels off twists along curves with coefficients in
//! `{-1, 0, 1}` as long as one of them shrinks the matrix. Random short products are
//! usually undone entirely by the greedy pass, which keeps words short.
//!
//! | op          | word                                  | effect                          |
//! |-------------|---------------------------------------|---------------------------------|
//! | `P(i)`      | `t(a_i)`                              | `x_ai -= x_bi`                  |
//! | `Q(i)`      | `t(b_i)`                              | `x_bi += x_ai`                  |
//! | `R(i, j)`   | `t(a_i + b_j) ~t(a_i) ~t(b_j)`        | `x_ai += x_aj`, `x_bj -= x_bi`  |
//! | `U(t, i)`   | `t(a_t + a_i) ~t(a_t) ~t(a_i)`        | `x_at -= x_bi`, `x_ai -= x_bt`  |
//! | `Flip(i)`   | `(t(a_i) t(b_i) t(a_i))^2`            | negates pair `i`                |

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{Curve, HomologyClass, IntMatrix, Surface};
use crate::error::{Error, Result};

use super::{MappingClass, Twist};

/// Words longer than this are refused rather than materialized.
const MAX_WORD_LEN: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    P(usize),
    Q(usize),
    R(usize, usize),
    U(usize, usize),
    Flip(usize),
}

/// Row-operation state: a set of columns plus the log of elementary ops applied so far.
pub(crate) struct Reducer {
    surface: Surface,
    cols: Vec<Vec<BigInt>>,
    log: Vec<(Op, BigInt)>,
    letters: u64,
}

impl Reducer {
    pub(crate) fn new(surface: Surface, cols: Vec<Vec<BigInt>>) -> Reducer {
        Reducer {
            surface,
            cols,
            log: Vec::new(),
            letters: 0,
        }
    }

    fn apply(&mut self, op: Op, k: BigInt) -> Result<()> {
        if k.is_zero() {
            return Ok(());
        }
        let per = match op {
            Op::P(_) | Op::Q(_) => 1,
            Op::R(..) | Op::U(..) => 3,
            Op::Flip(_) => 6,
        };
        let n = k.abs().to_u64().unwrap_or(u64::MAX);
        self.letters = self.letters.saturating_add(n.saturating_mul(per));
        if self.letters > MAX_WORD_LEN {
            return Err(Error::Unsupported(format!(
                "twist word would exceed {MAX_WORD_LEN} letters"
            )));
        }
        for x in &mut self.cols {
            match op {
                Op::P(i) => {
                    let d = &k * &x[2 * i + 1];
                    x[2 * i] -= d;
                }
                Op::Q(i) => {
                    let d = &k * &x[2 * i];
                    x[2 * i + 1] += d;
                }
                Op::R(i, j) => {
                    let da = &k * &x[2 * j];
                    let db = &k * &x[2 * i + 1];
                    x[2 * i] += da;
                    x[2 * j + 1] -= db;
                }
                Op::U(t, i) => {
                    let dt = &k * &x[2 * i + 1];
                    let di = &k * &x[2 * t + 1];
                    x[2 * t] -= dt;
                    x[2 * i] -= di;
                }
                Op::Flip(i) => {
                    if k.is_odd() {
                        x[2 * i] = -&x[2 * i];
                        x[2 * i + 1] = -&x[2 * i + 1];
                    }
                }
            }
        }
        self.log.push((op, k));
        Ok(())
    }

    fn at(&self, col: usize, k: usize) -> &BigInt {
        &self.cols[col][k]
    }

    /// Bring column `col` to `e_{a_t}` using only ops on pairs `>= t`.
    pub(crate) fn reduce_to_a(&mut self, col: usize, t: usize) -> Result<()> {
        let g = self.surface.genus();
        for i in t..g {
            loop {
                let a = self.at(col, 2 * i).clone();
                let b = self.at(col, 2 * i + 1).clone();
                if b.is_zero() {
                    break;
                }
                if a.is_zero() {
                    self.apply(Op::P(i), -BigInt::one())?;
                } else if a.abs() <= b.abs() {
                    self.apply(Op::Q(i), -nearest(&b, &a))?;
                } else {
                    self.apply(Op::P(i), nearest(&a, &b))?;
                }
            }
        }
        for i in t + 1..g {
            loop {
                let at = self.at(col, 2 * t).clone();
                let ai = self.at(col, 2 * i).clone();
                if ai.is_zero() {
                    break;
                }
                if at.is_zero() {
                    self.apply(Op::R(t, i), BigInt::one())?;
                } else if at.abs() <= ai.abs() {
                    self.apply(Op::R(i, t), -nearest(&ai, &at))?;
                } else {
                    self.apply(Op::R(t, i), -nearest(&at, &ai))?;
                }
            }
        }
        let lead = self.at(col, 2 * t).clone();
        if lead == -BigInt::one() {
            self.apply(Op::Flip(t), BigInt::one())?;
        } else if !lead.is_one() {
            return Err(Error::NotSymplectic);
        }
        Ok(())
    }

    /// Bring column `col` to `e_{b_t}`, assuming `e_{a_t}` is already in place, with ops
    /// fixing `e_{a_t}`.
    fn reduce_to_b(&mut self, col: usize, t: usize) -> Result<()> {
        let g = self.surface.genus();
        if !self.at(col, 2 * t + 1).is_one() {
            return Err(Error::NotSymplectic);
        }
        for i in t + 1..g {
            let k = self.at(col, 2 * i + 1).clone();
            self.apply(Op::R(t, i), k)?;
            let k = self.at(col, 2 * i).clone();
            self.apply(Op::U(t, i), k)?;
        }
        let k = self.at(col, 2 * t).clone();
        self.apply(Op::P(t), k)?;
        Ok(())
    }

    /// `op_1^{-1} ... op_r^{-1}` as a word: the inverse of everything applied.
    pub(crate) fn inverse_word(&self) -> Vec<Twist> {
        let mut out = Vec::new();
        for (op, k) in &self.log {
            push_power(&mut out, self.surface, *op, &-k);
        }
        out
    }

    /// `op_r ... op_1` as a word: everything applied, in application order.
    pub(crate) fn forward_word(&self) -> Vec<Twist> {
        let mut out = Vec::new();
        for (op, k) in self.log.iter().rev() {
            push_power(&mut out, self.surface, *op, k);
        }
        out
    }
}

/// `a / b` rounded to the nearest integer.
fn nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (&r * BigInt::from(2)).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Largest genus for which the greedy pass scans all `{-1, 0, 1}` curves.
const GREEDY_MAX_GENUS: usize = 5;

fn small_curves(surface: Surface) -> Vec<Curve> {
    let n = surface.rank();
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut v = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            v.push((c % 3) as i64 - 1);
            c /= 3;
        }
        let class = HomologyClass::from_i64s(&v);
        if class.is_zero() || !class.is_sign_normalized() {
            continue;
        }
        out.push(match class.standard_index() {
            Some(k) => Curve::standard(surface, k),
            None => Curve::nonseparating(class).expect("0/1 vectors are primitive"),
        });
    }
    out
}

fn size(m: &IntMatrix) -> BigInt {
    let mut total = BigInt::zero();
    for i in 0..m.rows() {
        for x in m.row(i) {
            total += x.abs();
        }
    }
    total
}

/// Greedily left-multiply by small twists while that shrinks `m`. Returns the peeled
/// letters `l_1, l_2, ...` with `m = l_1 l_2 ... rest`.
fn greedy_peel(surface: Surface, m: &mut IntMatrix) -> Vec<Twist> {
    let mut peeled = Vec::new();
    if surface.genus() > GREEDY_MAX_GENUS {
        return peeled;
    }
    let curves = small_curves(surface);
    let mut current = size(m);
    while !m.is_identity() {
        let mut best: Option<(BigInt, usize, bool)> = None;
        for (idx, c) in curves.iter().enumerate() {
            for inverse in [false, true] {
                let mut trial = m.clone();
                trial.left_mul_transvection(c.class().coords(), inverse);
                let sz = size(&trial);
                if best.as_ref().map_or(true, |(b, _, _)| &sz < b) {
                    best = Some((sz, idx, inverse));
                }
            }
        }
        match best {
            Some((sz, idx, inverse)) if sz < current => {
                let c = &curves[idx];
                m.left_mul_transvection(c.class().coords(), inverse);
                // m_old = T^{-s} m_new, so the peeled letter carries the opposite sign.
                peeled.push(if inverse {
                    Twist::positive(c.clone())
                } else {
                    Twist::negative(c.clone())
                });
                current = sz;
            }
            _ => break,
        }
    }
    peeled
}

fn curve_of(surface: Surface, coords: &[(usize, i64)]) -> Curve {
    let mut v = vec![0i64; surface.rank()];
    for &(k, c) in coords {
        v[k] += c;
    }
    let class = HomologyClass::from_i64s(&v);
    match class.standard_index() {
        Some(k) => Curve::standard(surface, k),
        None => Curve::nonseparating(class).expect("elementary classes are primitive"),
    }
}

fn op_word(surface: Surface, op: Op) -> Vec<Twist> {
    let a = |i: usize| curve_of(surface, &[(2 * i, 1)]);
    let b = |i: usize| curve_of(surface, &[(2 * i + 1, 1)]);
    match op {
        Op::P(i) => vec![Twist::positive(a(i))],
        Op::Q(i) => vec![Twist::positive(b(i))],
        Op::R(i, j) => vec![
            Twist::positive(curve_of(surface, &[(2 * i, 1), (2 * j + 1, 1)])),
            Twist::negative(a(i)),
            Twist::negative(b(j)),
        ],
        Op::U(t, i) => vec![
            Twist::positive(curve_of(surface, &[(2 * t, 1), (2 * i, 1)])),
            Twist::negative(a(t)),
            Twist::negative(a(i)),
        ],
        Op::Flip(i) => [a(i), b(i), a(i), a(i), b(i), a(i)]
            .into_iter()
            .map(Twist::positive)
            .collect(),
    }
}

fn push_power(out: &mut Vec<Twist>, surface: Surface, op: Op, k: &BigInt) {
    let word = op_word(surface, op);
    let unit: Vec<Twist> = if k.is_negative() {
        word.iter().rev().map(Twist::inverse).collect()
    } else {
        word
    };
    let n = k.abs().to_u64().expect("bounded by MAX_WORD_LEN");
    for _ in 0..n {
        out.extend(unit.iter().cloned());
    }
}

/// A twist word whose symplectic matrix equals `m`.
///
/// The identity gives the empty word and a single (inverse) transvection gives one letter;
/// anything else goes through the elementary reduction. The result is always re-checked.
pub fn transvection_factorization(m: &IntMatrix) -> Result<MappingClass> {
    if !m.is_square() || m.rows() == 0 || m.rows() % 2 != 0 || !m.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let surface = Surface::new(m.rows() / 2)?;
    if m.is_identity() {
        return Ok(MappingClass::identity(surface));
    }
    if let Some(single) = single_transvection(surface, m) {
        return Ok(single);
    }
    let mut rest = m.clone();
    let mut word = greedy_peel(surface, &mut rest);
    let cols: Vec<Vec<BigInt>> = (0..rest.cols()).map(|j| rest.column(j)).collect();
    let mut red = Reducer::new(surface, cols);
    for t in 0..surface.genus() {
        red.reduce_to_a(2 * t, t)?;
        red.reduce_to_b(2 * t + 1, t)?;
    }
    word.extend(red.inverse_word());
    let f = MappingClass::from_word(surface, word)?;
    if f.matrix() != m {
        return Err(Error::Inconsistent(
            "transvection factorization did not reproduce the input".into(),
        ));
    }
    Ok(f)
}

fn single_transvection(surface: Surface, m: &IntMatrix) -> Option<MappingClass> {
    let n = m.sub_identity();
    let column = (0..n.cols())
        .map(|j| n.column(j))
        .find(|c| c.iter().any(|x| !x.is_zero()))?;
    let class = HomologyClass::new(column).primitive_part()?;
    let curve = match class.standard_index() {
        Some(k) => Curve::standard(surface, k),
        None => Curve::nonseparating(class).ok()?,
    };
    let t = MappingClass::twist(curve);
    if t.matrix() == m {
        return Some(t);
    }
    let inv = t.inverse();
    (inv.matrix() == m).then_some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_single_twist() {
        let s = Surface::new(2).unwrap();
        assert!(transvection_factorization(&IntMatrix::identity(4)).unwrap().is_empty());
        let c = Curve::nonseparating(HomologyClass::from_i64s(&[1, 0, 1, 2])).unwrap();
        let f = transvection_factorization(&c.transvection_matrix()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.word()[0].curve.class(), c.class());
        let g = transvection_factorization(MappingClass::twist(c).inverse().matrix()).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.surface(), s);
    }

    #[test]
    fn rejects_non_symplectic() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(transvection_factorization(&m), Err(Error::NotSymplectic));
    }

    #[test]
    fn minus_identity() {
        let m = IntMatrix::from_fn(6, 6, |i, j| if i == j { -BigInt::one() } else { BigInt::zero() });
        let f = transvection_factorization(&m).unwrap();
        assert_eq!(f.matrix(), &m);
    }

    #[test]
    fn random_products_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let g = rng.gen_range(1..=4);
            let s = Surface::new(g).unwrap();
            let mut word = Vec::new();
            for _ in 0..rng.gen_range(0..=20) {
                let v: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-1..=1)).collect();
                let class = HomologyClass::from_i64s(&v);
                if let Some(p) = class.primitive_part() {
                    let c = Curve::nonseparating(p).unwrap();
                    word.push(if rng.gen() { Twist::positive(c) } else { Twist::negative(c) });
                }
            }
            let m = MappingClass::from_word(s, word).unwrap();
            let f = transvection_factorization(m.matrix()).unwrap();
            assert_eq!(f.matrix(), m.matrix());
        }
    }

    #[test]
    fn elementary_reduction_without_greedy() {
        let s = Surface::new(3).unwrap();
        let m = MappingClass::parse(s, "t([1,2,0,1,3,1])*~t([2,1,1,0,1,1])*t(b2)*t([0,1,1,-3,0,2])")
            .unwrap();
        let cols = (0..6).map(|j| m.matrix().column(j)).collect();
        let mut red = Reducer::new(s, cols);
        for t in 0..3 {
            red.reduce_to_a(2 * t, t).unwrap();
            red.reduce_to_b(2 * t + 1, t).unwrap();
        }
        let f = MappingClass::from_word(s, red.inverse_word()).unwrap();
        assert_eq!(f.matrix(), m.matrix());
    }
}
