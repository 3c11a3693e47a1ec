//! The conjugate-stack recipe: stack conjugates of a seed, normalize to a dual prefix, then
//! double (or interleave) the result.

use crate::algebra::{Curve, HomologyClass};
use crate::error::{Error, Result};
use crate::factorization::{Move, PositiveFactorization, Provenance, Schedule};
use crate::mapping::{curve_transport, spin_transport, MappingClass};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TransportPolicy {
    /// Any conjugator carrying the distinguished cycle to the target.
    #[default]
    Default,
    /// Conjugators must preserve the seed's declared spin form.
    SpinPreserving,
}

#[derive(Clone, Debug)]
pub struct RecipeConfig {
    pub seed: PositiveFactorization,
    /// 0-based index of a non-separating twist in the seed.
    pub distinguished_cycle: usize,
    pub policy: TransportPolicy,
    /// Use only the first `copies` targets of `a_1, b_1, ..., a_g, b_g`.
    pub copies: Option<usize>,
    /// Explicit conjugators; overrides the transport search.
    pub conjugators: Option<Vec<MappingClass>>,
}

impl RecipeConfig {
    pub fn new(seed: PositiveFactorization, distinguished_cycle: usize) -> Self {
        RecipeConfig {
            seed,
            distinguished_cycle,
            policy: TransportPolicy::Default,
            copies: None,
            conjugators: None,
        }
    }

    pub fn policy(mut self, policy: TransportPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn copies(mut self, copies: usize) -> Self {
        self.copies = Some(copies);
        self
    }

    pub fn conjugators(mut self, conjugators: Vec<MappingClass>) -> Self {
        self.conjugators = Some(conjugators);
        self
    }
}

fn conjugators(config: &RecipeConfig) -> Result<Vec<MappingClass>> {
    let seed = &config.seed;
    if let Some(list) = &config.conjugators {
        for phi in list {
            if phi.surface() != seed.surface() {
                return Err(Error::GenusMismatch {
                    left: seed.genus(),
                    right: phi.surface().genus(),
                });
            }
        }
        return Ok(list.clone());
    }
    let c1 = seed.twists().get(config.distinguished_cycle).ok_or(Error::IndexOutOfRange {
        index: config.distinguished_cycle,
        len: seed.len(),
    })?;
    if c1.is_separating() {
        return Err(Error::Precondition(format!(
            "distinguished cycle {} is separating",
            config.distinguished_cycle
        )));
    }
    let rank = seed.surface().rank();
    let copies = config.copies.unwrap_or(rank);
    if copies == 0 || copies > rank {
        return Err(Error::Precondition(format!("copies must be in 1..={rank}, got {copies}")));
    }
    (0..copies)
        .map(|k| {
            let target = Curve::standard(seed.surface(), k);
            match config.policy {
                TransportPolicy::Default => curve_transport(c1, &target),
                TransportPolicy::SpinPreserving => {
                    let q = seed.spin().ok_or_else(|| {
                        Error::Precondition("spin-preserving transport needs a declared spin form".into())
                    })?;
                    spin_transport(c1, &target, q)
                }
            }
        })
        .collect()
}

/// `P^{phi_1} P^{psi_1} ... P^{phi_g} P^{psi_g}` with `phi_i(c_1) = a_i`, `psi_i(c_1) = b_i`.
pub fn build_conjugate_stack(config: &RecipeConfig) -> Result<PositiveFactorization> {
    let seed = &config.seed;
    if !seed.is_closed() {
        return Err(Error::RequiresClosed);
    }
    let phis = conjugators(config)?;
    let spin = seed
        .spin()
        .filter(|q| phis.iter().all(|phi| phi.preserves_qform(q)))
        .cloned();
    let mut twists = Vec::with_capacity(seed.len() * phis.len());
    for phi in &phis {
        for c in seed.twists() {
            twists.push(phi.act_on_curve(c)?);
        }
    }
    let mut out = PositiveFactorization::new(seed.surface(), twists, seed.boundary())?.with_provenance(vec![
        Provenance::ConjugateStack {
            seed: seed.provenance().to_vec(),
            seed_len: seed.len(),
            copies: phis.len(),
            distinguished_cycle: config.distinguished_cycle,
            conjugators: phis.iter().map(|p| p.to_string()).collect(),
            spin_kept: spin.is_some(),
        },
    ]);
    out.set_spin_unchecked(spin);
    Ok(out)
}

/// Hurwitz-move the factorization so that it starts with `t_{a_1} t_{b_1} ... t_{a_g} t_{b_g}`.
///
/// For each basis class in turn, the leftmost later twist with that class is pulled forward
/// with `R` moves; the prefix is then relabelled and flagged dual. Returns the schedule used,
/// so that [`replay_normalization`] reproduces the output.
pub fn normalize_to_dual_prefix(f: &PositiveFactorization) -> Result<(PositiveFactorization, Schedule)> {
    let rank = f.surface().rank();
    let mut cur = f.clone();
    let mut schedule = Schedule::default();
    for t in 0..rank {
        let target = HomologyClass::basis(rank, t);
        let p = (t..cur.len())
            .find(|&p| {
                let c = &cur.twists()[p];
                !c.is_separating() && c.class().sign_normalized() == target
            })
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "no twist with class {} at or after position {}",
                    Curve::standard(f.surface(), t).display_name(),
                    t + 1
                ))
            })?;
        let moves = Schedule::from_moves((t + 1..=p).rev().map(Move::right));
        cur = cur.apply_schedule_quiet(&moves)?;
        schedule.extend(&moves);
    }
    let mut out = mark_dual_prefix(&cur);
    out.push_provenance(Provenance::Normalize {
        schedule: schedule.to_string(),
        prefix_len: rank,
    });
    Ok((out, schedule))
}

/// Replay a normalization schedule on its input, then flag the prefix.
pub fn replay_normalization(f: &PositiveFactorization, schedule: &Schedule) -> Result<PositiveFactorization> {
    let mut out = mark_dual_prefix(&f.apply_schedule_quiet(schedule)?);
    out.push_provenance(Provenance::Normalize {
        schedule: schedule.to_string(),
        prefix_len: f.surface().rank(),
    });
    Ok(out)
}

fn mark_dual_prefix(f: &PositiveFactorization) -> PositiveFactorization {
    let mut twists = f.twists().to_vec();
    for (k, c) in twists.iter_mut().take(f.surface().rank()).enumerate() {
        *c = Curve::standard(f.surface(), k).with_dual(true);
    }
    let mut out = f.clone();
    out.set_twists(twists);
    out
}

fn normalized(y: &PositiveFactorization) -> Result<PositiveFactorization> {
    if !y.is_closed() {
        return Err(Error::RequiresClosed);
    }
    Ok(normalize_to_dual_prefix(y)?.0)
}

/// `Z = Y Y` after normalizing `Y`.
pub fn build_z(y: &PositiveFactorization) -> Result<PositiveFactorization> {
    let y = normalized(y)?;
    y.fiber_sum(&y)
}

/// `Z' = Y X' Y`: the second copy of the dual prefix is Hurwitz-moved past `X'`. With
/// `require_spin`, all three declarations must match.
pub fn build_z_prime(
    y: &PositiveFactorization,
    x_prime: &PositiveFactorization,
    require_spin: bool,
) -> Result<PositiveFactorization> {
    let y = normalized(y)?;
    if require_spin {
        match (y.spin(), x_prime.spin()) {
            (Some(p), Some(q)) if p == q => {}
            _ => {
                return Err(Error::Precondition(
                    "spin declarations of Y and X' do not match".into(),
                ))
            }
        }
    }
    y.fiber_sum(x_prime)?.fiber_sum(&y)
}

/// `Y Y^phi` after normalizing `Y`.
pub fn build_twisted_z(y: &PositiveFactorization, phi: &MappingClass) -> Result<PositiveFactorization> {
    let y = normalized(y)?;
    y.twisted_fiber_sum(&y, phi)
}

/// Append `k` more normalized copies of `Y` to `Z`.
pub fn grow(z: &PositiveFactorization, y: &PositiveFactorization, k: usize) -> Result<PositiveFactorization> {
    let y = normalized(y)?;
    let mut out = z.clone();
    for _ in 0..k {
        out = out.fiber_sum(&y)?;
    }
    Ok(out)
}
