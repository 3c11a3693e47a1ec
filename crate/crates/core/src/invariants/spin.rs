//! Fiberwise spin structures and the three-valued spin verdict.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::QuadraticForm;
use crate::error::{Error, Result};
use crate::factorization::provenance::{spin_trace, SpinTrace};
use crate::factorization::PositiveFactorization;

pub const REASON_NO_SPIN_STRUCTURE: &str = "no fiberwise spin structure";
pub const REASON_ROKHLIN: &str = "Rokhlin";
pub const REASON_CERTIFIED: &str = "compositional spin certificate";

/// Solutions `q` of `q(c) = 1` for every vanishing cycle `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpinFeasibility {
    Feasible {
        particular: QuadraticForm,
        /// Basis of the homogeneous solutions, as basis-value bit vectors.
        kernel: Vec<Vec<bool>>,
    },
    Infeasible,
}

impl SpinFeasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SpinFeasibility::Feasible { .. })
    }

    /// Dimension of the affine solution space over F2.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            SpinFeasibility::Feasible { kernel, .. } => Some(kernel.len()),
            SpinFeasibility::Infeasible => None,
        }
    }

    pub fn unique(&self) -> Option<&QuadraticForm> {
        match self {
            SpinFeasibility::Feasible { particular, kernel } if kernel.is_empty() => {
                Some(particular)
            }
            _ => None,
        }
    }
}

/// Solve the F2 system `sum_k v_k q(e_k) = 1 + sum_i v_{a_i} v_{b_i}` over the twist
/// classes `v`.
pub fn spin_feasibility(f: &PositiveFactorization) -> SpinFeasibility {
    let n = f.surface().rank();
    let mut seen = HashSet::new();
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for c in f.twists() {
        let v = c.class().mod2();
        if !seen.insert(v.clone()) {
            continue;
        }
        let kappa = (0..n / 2).filter(|&i| v[2 * i] && v[2 * i + 1]).count() % 2 == 1;
        let mut row = v;
        row.push(!kappa);
        rows.push(row);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n]) {
        return SpinFeasibility::Infeasible;
    }
    let mut particular = vec![false; n];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = rows[i][n];
    }
    let mut kernel = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![false; n];
        v[free] = true;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = rows[i][free];
        }
        kernel.push(v);
    }
    SpinFeasibility::Feasible {
        particular: QuadraticForm::new(particular).expect("rank is even and positive"),
        kernel,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Spin,
    NotSpin,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Spin => "Spin",
            Verdict::NotSpin => "NotSpin",
            Verdict::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinReport {
    pub verdict: Verdict,
    /// Each reason starts with a stable code such as `Rokhlin`.
    pub reasons: Vec<String>,
}

impl SpinReport {
    pub fn has_reason(&self, code: &str) -> bool {
        self.reasons.iter().any(|r| r.starts_with(code))
    }
}

/// Spin verdict given the signature. Homology alone never yields `Spin`: that needs the
/// compositional certificate carried by the provenance, plus Rokhlin's divisibility.
pub fn spin_verdict_with(f: &PositiveFactorization, sigma: i64) -> Result<SpinReport> {
    if !f.is_closed() {
        return Err(Error::RequiresClosed);
    }
    let mut reasons = Vec::new();
    if !spin_feasibility(f).is_feasible() {
        reasons.push(format!(
            "{REASON_NO_SPIN_STRUCTURE}: no quadratic form has q = 1 on every vanishing cycle"
        ));
    }
    if sigma % 16 != 0 {
        reasons.push(format!(
            "{REASON_ROKHLIN}: signature {sigma} is not divisible by 16"
        ));
    }
    if !reasons.is_empty() {
        return Ok(SpinReport {
            verdict: Verdict::NotSpin,
            reasons,
        });
    }
    let trace = spin_trace(f.provenance());
    match (f.spin(), trace) {
        (Some(_), SpinTrace::Certified) => Ok(SpinReport {
            verdict: Verdict::Spin,
            reasons: vec![format!(
                "{REASON_CERTIFIED}: spin seeds glued with matching declarations"
            )],
        }),
        (None, SpinTrace::Certified) => Ok(SpinReport {
            verdict: Verdict::Inconclusive,
            reasons: vec!["no spin declaration on the factorization".into()],
        }),
        (_, SpinTrace::Broken(why)) => Ok(SpinReport {
            verdict: Verdict::Inconclusive,
            reasons: vec![format!("fiberwise spin structure exists but {why}")],
        }),
    }
}

pub fn spin_verdict(f: &PositiveFactorization) -> Result<SpinReport> {
    let sigma = super::signature(f)?;
    spin_verdict_with(f, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Curve, Surface};
    use crate::factorization::Boundary;

    #[test]
    fn feasibility_examples() {
        let s = Surface::new(1).unwrap();
        let f = PositiveFactorization::new(
            s,
            vec![Curve::standard_a(s, 1), Curve::standard_b(s, 1)],
            Boundary::Relative,
        )
        .unwrap();
        let sol = spin_feasibility(&f);
        assert_eq!(sol.unique(), Some(&QuadraticForm::ones(s)));

        let s2 = Surface::new(2).unwrap();
        let a12 = Curve::nonseparating(&s2.a(1) + &s2.a(2)).unwrap();
        let toy = PositiveFactorization::new(
            s2,
            vec![Curve::standard_a(s2, 1), Curve::standard_a(s2, 2), a12],
            Boundary::Relative,
        )
        .unwrap();
        assert_eq!(spin_feasibility(&toy), SpinFeasibility::Infeasible);

        let sep = PositiveFactorization::new(
            s2,
            vec![Curve::separating(s2, 1).unwrap()],
            Boundary::Relative,
        )
        .unwrap();
        assert!(!spin_feasibility(&sep).is_feasible());

        let empty = PositiveFactorization::new(s2, vec![], Boundary::Relative).unwrap();
        assert_eq!(spin_feasibility(&empty).dimension(), Some(4));
    }
}
