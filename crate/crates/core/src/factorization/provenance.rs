use serde::{Deserialize, Serialize};

/// One construction step. A factorization carries the list of steps that produced it; the
/// first entry is its origin and later entries are transformations that keep the total
/// space (Hurwitz moves, global conjugation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Provenance {
    Seed {
        name: String,
        /// Asserted, never computed: no vanishing cycle bounds a disk.
        relatively_minimal: bool,
        /// The total space is asserted spin, with the declared form on the fiber.
        spin_declared: bool,
    },
    Loaded {
        source: String,
    },
    FiberSum {
        left: Vec<Provenance>,
        right: Vec<Provenance>,
        left_len: usize,
        right_len: usize,
        spin_kept: bool,
    },
    TwistedFiberSum {
        left: Vec<Provenance>,
        right: Vec<Provenance>,
        left_len: usize,
        right_len: usize,
        phi: String,
        phi_trivial: bool,
        phi_preserves_spin: Option<bool>,
        spin_kept: bool,
    },
    ConjugateStack {
        seed: Vec<Provenance>,
        seed_len: usize,
        copies: usize,
        distinguished_cycle: usize,
        conjugators: Vec<String>,
        spin_kept: bool,
    },
    Conjugate {
        phi: String,
    },
    Hurwitz {
        schedule: String,
    },
    Normalize {
        schedule: String,
        prefix_len: usize,
    },
}

impl Provenance {
    pub fn seed(name: impl Into<String>, relatively_minimal: bool, spin_declared: bool) -> Self {
        Provenance::Seed {
            name: name.into(),
            relatively_minimal,
            spin_declared,
        }
    }

    fn is_origin(&self) -> bool {
        matches!(
            self,
            Provenance::Seed { .. }
                | Provenance::Loaded { .. }
                | Provenance::FiberSum { .. }
                | Provenance::TwistedFiberSum { .. }
                | Provenance::ConjugateStack { .. }
        )
    }
}

/// The record that produced the current total space: the last origin-type entry.
pub fn origin(history: &[Provenance]) -> Option<&Provenance> {
    history.iter().rev().find(|p| p.is_origin())
}

/// Whether every building block is asserted relatively minimal. Fiber sums of relatively
/// minimal fibrations are relatively minimal.
pub fn relatively_minimal(history: &[Provenance]) -> bool {
    match origin(history) {
        Some(Provenance::Seed {
            relatively_minimal, ..
        }) => *relatively_minimal,
        Some(Provenance::FiberSum { left, right, .. })
        | Some(Provenance::TwistedFiberSum { left, right, .. }) => {
            relatively_minimal(left) && relatively_minimal(right)
        }
        Some(Provenance::ConjugateStack { seed, .. }) => relatively_minimal(seed),
        _ => false,
    }
}

/// Outcome of the compositional spin bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpinTrace {
    /// Every block was declared spin and every gluing matched the declarations.
    Certified,
    /// A block without a spin assertion, or a gluing that dropped the declaration.
    Broken(String),
}

pub fn spin_trace(history: &[Provenance]) -> SpinTrace {
    use SpinTrace::*;
    match origin(history) {
        None => Broken("no construction history".into()),
        Some(Provenance::Seed {
            name, spin_declared, ..
        }) => {
            if *spin_declared {
                Certified
            } else {
                Broken(format!("seed {name} is not declared spin"))
            }
        }
        Some(Provenance::Loaded { source }) => Broken(format!("{source} carries no spin assertion")),
        Some(Provenance::FiberSum {
            left,
            right,
            spin_kept,
            ..
        }) => {
            if !spin_kept {
                return Broken("fiber sum of unmatched spin declarations".into());
            }
            match (spin_trace(left), spin_trace(right)) {
                (Certified, Certified) => Certified,
                (Broken(r), _) | (_, Broken(r)) => Broken(r),
            }
        }
        Some(Provenance::TwistedFiberSum {
            left,
            right,
            spin_kept,
            phi_trivial,
            phi,
            ..
        }) => {
            if !spin_kept {
                return Broken(format!("twisted gluing by {phi} dropped the spin declaration"));
            }
            if !phi_trivial {
                // A q-preserving gluing map still need not extend the spin structure over
                // the glued manifold, so the certificate stops here.
                return Broken(format!("twisted gluing by {phi} is not certified spin"));
            }
            match (spin_trace(left), spin_trace(right)) {
                (Certified, Certified) => Certified,
                (Broken(r), _) | (_, Broken(r)) => Broken(r),
            }
        }
        Some(Provenance::ConjugateStack { seed, spin_kept, .. }) => {
            if !spin_kept {
                return Broken("conjugate stack with conjugators that move the spin form".into());
            }
            spin_trace(seed)
        }
        Some(_) => unreachable!("origin() returns origin records only"),
    }
}

/// Number of non-empty summands in the outermost sum, with their minimality.
pub fn summands(history: &[Provenance]) -> Option<(usize, bool)> {
    match origin(history)? {
        Provenance::FiberSum {
            left,
            right,
            left_len,
            right_len,
            ..
        }
        | Provenance::TwistedFiberSum {
            left,
            right,
            left_len,
            right_len,
            ..
        } => {
            let parts = usize::from(*left_len > 0) + usize::from(*right_len > 0);
            Some((parts, relatively_minimal(left) && relatively_minimal(right)))
        }
        Provenance::ConjugateStack {
            seed,
            seed_len,
            copies,
            ..
        } => {
            let parts = if *seed_len > 0 { *copies } else { 0 };
            Some((parts, relatively_minimal(seed)))
        }
        _ => None,
    }
}

/// Split point `left_len` of the outermost two-part sum, if any.
pub fn sum_split(history: &[Provenance]) -> Option<usize> {
    match origin(history)? {
        Provenance::FiberSum { left_len, .. } | Provenance::TwistedFiberSum { left_len, .. } => {
            Some(*left_len)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_tags() {
        let p = Provenance::seed("g1", true, false);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"seed","name":"g1","relatively_minimal":true,"spin_declared":false}"#
        );
        let back: Provenance = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Provenance>(r#"{"kind":"seed","name":"x"}"#).is_err());
    }

    #[test]
    fn spin_trace_rules() {
        let yes = vec![Provenance::seed("y", true, true)];
        let no = vec![Provenance::seed("n", true, false)];
        let sum = |l: &Vec<Provenance>, r: &Vec<Provenance>, kept| {
            vec![Provenance::FiberSum {
                left: l.clone(),
                right: r.clone(),
                left_len: 3,
                right_len: 3,
                spin_kept: kept,
            }]
        };
        assert_eq!(spin_trace(&sum(&yes, &yes, true)), SpinTrace::Certified);
        assert!(matches!(spin_trace(&sum(&yes, &no, false)), SpinTrace::Broken(_)));
        assert!(matches!(spin_trace(&sum(&yes, &yes, false)), SpinTrace::Broken(_)));
        let mut h = sum(&yes, &yes, true);
        h.push(Provenance::Hurwitz {
            schedule: "R1".into(),
        });
        assert_eq!(spin_trace(&h), SpinTrace::Certified);
        assert_eq!(summands(&h), Some((2, true)));
    }
}
