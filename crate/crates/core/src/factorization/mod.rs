//! Positive Dehn-twist factorizations and the operations of the calculus: Hurwitz moves,
//! global conjugation, (twisted) fiber sums, validation and the JSON file format.

mod io;
pub mod provenance;
mod schedule;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Curve, IntMatrix, QuadraticForm, Surface};
use crate::error::{Error, Result};
use crate::mapping::MappingClass;

pub use provenance::Provenance;
pub use schedule::{Direction, Move, Schedule, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Over the sphere: the product must be trivial.
    Closed,
    /// Over the disk: any product.
    Relative,
}

/// An ordered list of positive Dehn twists `t_{c_1} ... t_{c_n}`.
///
/// The product matrix is `M(c_1) M(c_2) ... M(c_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveFactorization {
    surface: Surface,
    twists: Vec<Curve>,
    boundary: Boundary,
    spin: Option<QuadraticForm>,
    provenance: Vec<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub genus: usize,
    pub twist_count: usize,
    pub boundary: Boundary,
    pub product_is_identity: bool,
    pub has_nonseparating: bool,
    /// Carried from provenance; homology cannot check it.
    pub relatively_minimal_asserted: bool,
    pub spin_declaration_ok: Option<bool>,
    pub failures: Vec<String>,
}

impl PositiveFactorization {
    /// A factorization with no provenance. Closed input must multiply to the identity.
    pub fn new(surface: Surface, twists: Vec<Curve>, boundary: Boundary) -> Result<Self> {
        for c in &twists {
            check_genus(surface, c.genus())?;
        }
        let f = PositiveFactorization {
            surface,
            twists,
            boundary,
            spin: None,
            provenance: Vec::new(),
        };
        if boundary == Boundary::Closed && !f.product_matrix().is_identity() {
            return Err(Error::RelationCheckFailed(
                "product of the twist matrices is not the identity".into(),
            ));
        }
        Ok(f)
    }

    /// Attach (or clear) a spin declaration; every twist curve must have `q = 1`.
    pub fn with_spin(mut self, spin: Option<QuadraticForm>) -> Result<Self> {
        if let Some(q) = &spin {
            if q.rank() != self.surface.rank() {
                return Err(Error::InvalidSpin(format!(
                    "form has rank {}, surface has rank {}",
                    q.rank(),
                    self.surface.rank()
                )));
            }
            if let Some((k, c)) = self
                .twists
                .iter()
                .enumerate()
                .find(|(_, c)| !q.eval(c.class()).unwrap_or(false))
            {
                return Err(Error::InvalidSpin(format!(
                    "twist {} ({}) has q = 0",
                    k + 1,
                    c.display_name()
                )));
            }
        }
        self.spin = spin;
        Ok(self)
    }

    pub fn with_provenance(mut self, provenance: Vec<Provenance>) -> Self {
        self.provenance = provenance;
        self
    }

    pub(crate) fn push_provenance(&mut self, p: Provenance) {
        self.provenance.push(p);
    }

    pub(crate) fn set_twists(&mut self, twists: Vec<Curve>) {
        self.twists = twists;
    }

    pub(crate) fn set_spin_unchecked(&mut self, spin: Option<QuadraticForm>) {
        self.spin = spin;
    }

    /// Apply a schedule without recording it in the provenance.
    pub(crate) fn apply_schedule_quiet(&self, schedule: &Schedule) -> Result<Self> {
        let mut out = self.clone();
        Self::run_schedule(&mut out.twists, schedule)?;
        Ok(out)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn genus(&self) -> usize {
        self.surface.genus()
    }

    pub fn twists(&self) -> &[Curve] {
        &self.twists
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == Boundary::Closed
    }

    pub fn spin(&self) -> Option<&QuadraticForm> {
        self.spin.as_ref()
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn product_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::identity(self.surface.rank());
        for c in &self.twists {
            m.right_mul_transvection(c.class().coords(), false);
        }
        m
    }

    /// Counts of separating twists by the genus of their smaller side.
    pub fn separating_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for h in self.twists.iter().filter_map(Curve::sep_genus) {
            *out.entry(h).or_insert(0) += 1;
        }
        out
    }

    pub fn nonseparating_count(&self) -> usize {
        self.twists.iter().filter(|c| !c.is_separating()).count()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        for (k, c) in self.twists.iter().enumerate() {
            if c.genus() != self.genus() {
                failures.push(format!("twist {}: genus {} curve", k + 1, c.genus()));
                continue;
            }
            let rebuilt = Curve::from_parts(
                c.class().clone(),
                c.sep_genus(),
                c.label().map(str::to_string),
                c.is_dual(),
            );
            if let Err(e) = rebuilt {
                failures.push(format!("twist {}: {e}", k + 1));
            }
        }
        let product_is_identity = self.product_matrix().is_identity();
        if self.is_closed() && !product_is_identity {
            failures.push("relation check failed: product matrix is not the identity".into());
        }
        let has_nonseparating = self.twists.iter().any(|c| !c.is_separating());
        if self.is_closed() && !self.is_empty() && !has_nonseparating {
            failures.push("no non-separating vanishing cycle".into());
        }
        let spin_declaration_ok = self.spin.as_ref().map(|q| {
            let bad: Vec<usize> = self
                .twists
                .iter()
                .enumerate()
                .filter(|(_, c)| !q.eval(c.class()).unwrap_or(false))
                .map(|(k, _)| k + 1)
                .collect();
            if !bad.is_empty() {
                failures.push(format!("spin declaration has q = 0 on twists {bad:?}"));
            }
            bad.is_empty()
        });
        ValidationReport {
            valid: failures.is_empty(),
            genus: self.genus(),
            twist_count: self.len(),
            boundary: self.boundary,
            product_is_identity,
            has_nonseparating,
            relatively_minimal_asserted: provenance::relatively_minimal(&self.provenance),
            spin_declaration_ok,
            failures,
        }
    }

    fn move_in_place(twists: &mut [Curve], m: Move) -> Result<()> {
        let n = twists.len();
        if m.index == 0 || m.index >= n {
            return Err(Error::IndexOutOfRange {
                index: m.index,
                len: n,
            });
        }
        let (i, j) = (m.index - 1, m.index);
        let (c, d) = (twists[i].clone(), twists[j].clone());
        match m.direction {
            Direction::Right => {
                let moved = d.inverse_transvection_apply(c.class())?;
                twists[j] = c.moved_by(moved, d.class(), true);
                twists[i] = d;
            }
            Direction::Left => {
                let moved = c.transvection_apply(d.class())?;
                twists[i] = d.moved_by(moved, c.class(), false);
                twists[j] = c;
            }
        }
        Ok(())
    }

    fn run_schedule(twists: &mut [Curve], schedule: &Schedule) -> Result<()> {
        let n = twists.len();
        for (k, step) in schedule.steps().iter().enumerate() {
            let wrap = |e: Error| Error::ScheduleStep {
                step: k + 1,
                source: Box::new(e),
            };
            match step {
                Step::Move(m) => Self::move_in_place(twists, *m).map_err(wrap)?,
                Step::Cyclic => {
                    if n < 2 {
                        continue;
                    }
                    let first = twists[0].clone();
                    for i in 1..n {
                        Self::move_in_place(twists, Move::right(i)).map_err(wrap)?;
                    }
                    let last = &twists[n - 1];
                    if last.class() == first.class() && last.sep_genus() == first.sep_genus() {
                        twists[n - 1] = first;
                    }
                }
            }
        }
        Ok(())
    }

    fn record_hurwitz(&mut self, schedule: &Schedule) {
        if schedule.is_empty() {
            return;
        }
        let text = schedule.to_string();
        if let Some(Provenance::Hurwitz { schedule: prev }) = self.provenance.last_mut() {
            prev.push(',');
            prev.push_str(&text);
        } else {
            self.provenance.push(Provenance::Hurwitz { schedule: text });
        }
    }

    /// One elementary move at the 1-based pair `(i, i + 1)`.
    pub fn hurwitz_move(&self, i: usize, direction: Direction) -> Result<Self> {
        let mut out = self.clone();
        let m = Move {
            index: i,
            direction,
        };
        Self::move_in_place(&mut out.twists, m)?;
        out.record_hurwitz(&Schedule::from_moves([m]));
        Ok(out)
    }

    /// Apply a schedule step by step; a failing step is reported by its 1-based number.
    pub fn apply_schedule(&self, schedule: &Schedule) -> Result<Self> {
        let mut out = self.clone();
        Self::run_schedule(&mut out.twists, schedule)?;
        out.record_hurwitz(schedule);
        Ok(out)
    }

    /// Move the first factor to the end (the schedule `C`).
    pub fn rotate(&self) -> Result<Self> {
        if !self.is_closed() {
            return Err(Error::RequiresClosed);
        }
        self.apply_schedule(&Schedule::new(vec![Step::Cyclic]))
    }

    /// `P^phi`: every curve replaced by its image. Dual flags survive, since a
    /// diffeomorphism carries a geometrically dual family to another one.
    pub fn conjugate(&self, phi: &MappingClass) -> Result<Self> {
        check_genus(self.surface, phi.surface().genus())?;
        if phi.is_trivial_word() {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        out.twists = self
            .twists
            .iter()
            .map(|c| Ok(phi.act_on_curve(c)?.with_dual(c.is_dual())))
            .collect::<Result<_>>()?;
        out.spin = self.spin.as_ref().map(|q| phi.act_on_qform(q)).transpose()?;
        out.provenance.push(Provenance::Conjugate {
            phi: phi.to_string(),
        });
        Ok(out)
    }

    fn check_summable(&self, other: &Self) -> Result<()> {
        check_genus(self.surface, other.genus())?;
        if !self.is_closed() || !other.is_closed() {
            return Err(Error::RequiresClosed);
        }
        Ok(())
    }

    /// Concatenation. The spin declaration survives when both sides declare the same form.
    pub fn fiber_sum(&self, other: &Self) -> Result<Self> {
        self.check_summable(other)?;
        let spin = match (&self.spin, &other.spin) {
            (Some(p), Some(q)) if p == q => Some(p.clone()),
            _ => None,
        };
        let mut twists = self.twists.clone();
        twists.extend(other.twists.iter().cloned());
        Ok(PositiveFactorization {
            surface: self.surface,
            twists,
            boundary: Boundary::Closed,
            provenance: vec![Provenance::FiberSum {
                left: self.provenance.clone(),
                right: other.provenance.clone(),
                left_len: self.len(),
                right_len: other.len(),
                spin_kept: spin.is_some(),
            }],
            spin,
        })
    }

    /// `fiber_sum(self, other^phi)`. The declaration survives when both sides declare the
    /// same form and `phi` preserves it.
    pub fn twisted_fiber_sum(&self, other: &Self, phi: &MappingClass) -> Result<Self> {
        self.check_summable(other)?;
        check_genus(self.surface, phi.surface().genus())?;
        let conj = other.conjugate(phi)?;
        let preserves = self.spin.as_ref().map(|q| phi.preserves_qform(q));
        let spin = match (&self.spin, &other.spin) {
            (Some(p), Some(q)) if p == q && preserves == Some(true) => Some(p.clone()),
            _ => None,
        };
        let mut twists = self.twists.clone();
        twists.extend(conj.twists.iter().cloned());
        Ok(PositiveFactorization {
            surface: self.surface,
            twists,
            boundary: Boundary::Closed,
            provenance: vec![Provenance::TwistedFiberSum {
                left: self.provenance.clone(),
                right: other.provenance.clone(),
                left_len: self.len(),
                right_len: other.len(),
                phi: phi.to_string(),
                phi_trivial: phi.is_trivial_word(),
                phi_preserves_spin: preserves,
                spin_kept: spin.is_some(),
            }],
            spin,
        })
    }
}

fn check_genus(surface: Surface, genus: usize) -> Result<()> {
    if surface.genus() != genus {
        return Err(Error::GenusMismatch {
            left: surface.genus(),
            right: genus,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HomologyClass;

    fn g1_pairs() -> PositiveFactorization {
        let s = Surface::new(1).unwrap();
        let mut twists = Vec::new();
        for _ in 0..6 {
            twists.push(Curve::standard_a(s, 1));
            twists.push(Curve::standard_b(s, 1));
        }
        PositiveFactorization::new(s, twists, Boundary::Closed).unwrap()
    }

    #[test]
    fn closed_examples() {
        let f = g1_pairs();
        assert!(f.validate().valid);
        let s = f.surface();
        assert!(matches!(
            PositiveFactorization::new(s, vec![Curve::standard_a(s, 1)], Boundary::Closed),
            Err(Error::RelationCheckFailed(_))
        ));
        let empty = PositiveFactorization::new(s, vec![], Boundary::Relative).unwrap();
        assert!(empty.validate().valid);
    }

    #[test]
    fn right_move_example() {
        let f = g1_pairs();
        let g = f.hurwitz_move(1, Direction::Right).unwrap();
        assert_eq!(g.twists()[0].class(), &HomologyClass::from_i64s(&[0, 1]));
        assert_eq!(g.twists()[1].class(), &HomologyClass::from_i64s(&[1, -1]));
        assert_eq!(g.product_matrix(), f.product_matrix());
        let back = g.hurwitz_move(1, Direction::Left).unwrap();
        assert_eq!(back.twists(), f.twists());
        assert!(f.hurwitz_move(12, Direction::Right).is_err());
        assert!(f.hurwitz_move(0, Direction::Right).is_err());
    }

    #[test]
    fn schedule_errors_name_the_step() {
        let f = g1_pairs();
        let err = f.apply_schedule(&Schedule::parse("R1,R40").unwrap()).unwrap_err();
        assert!(matches!(err, Error::ScheduleStep { step: 2, .. }));
    }

    #[test]
    fn rotation_is_exact_on_closed_input() {
        let f = g1_pairs();
        let r = f.rotate().unwrap();
        let mut expect = f.twists()[1..].to_vec();
        expect.push(f.twists()[0].clone());
        assert_eq!(r.twists(), &expect[..]);
        assert!(r.validate().valid);
    }

    #[test]
    fn sums_and_conjugation() {
        let f = g1_pairs();
        let sum = f.fiber_sum(&f).unwrap();
        assert_eq!(sum.len(), 24);
        assert!(sum.is_closed());
        let phi = MappingClass::parse(f.surface(), "t(a1)*t(b1)").unwrap();
        let c = f.conjugate(&phi).unwrap();
        assert_eq!(c.twists()[0].class(), &HomologyClass::from_i64s(&[0, 1]));
        assert!(c.validate().valid);
        let back = c.conjugate(&phi.inverse()).unwrap();
        let classes = |x: &PositiveFactorization| {
            x.twists().iter().map(|c| c.class().clone()).collect::<Vec<_>>()
        };
        assert_eq!(classes(&back), classes(&f));
        let tw = f.twisted_fiber_sum(&f, &phi).unwrap();
        assert_eq!(tw.len(), 24);
        assert!(tw.validate().valid);
        let rel = PositiveFactorization::new(f.surface(), vec![], Boundary::Relative).unwrap();
        assert_eq!(f.fiber_sum(&rel), Err(Error::RequiresClosed));
    }

    #[test]
    fn spin_declarations() {
        let f = g1_pairs();
        let s = f.surface();
        let ones = QuadraticForm::ones(s);
        let fs = f.clone().with_spin(Some(ones.clone())).unwrap();
        assert!(f.clone().with_spin(Some(QuadraticForm::zero(s))).is_err());
        assert_eq!(fs.fiber_sum(&fs).unwrap().spin(), Some(&ones));
        assert_eq!(fs.fiber_sum(&f).unwrap().spin(), None);
        let ta = MappingClass::parse(s, "t(a1)").unwrap();
        assert!(fs.twisted_fiber_sum(&fs, &ta).unwrap().spin().is_some());
        let moved = fs.apply_schedule(&Schedule::parse("R1,R2,L5").unwrap()).unwrap();
        assert_eq!(moved.validate().spin_declaration_ok, Some(true));
    }
}
