//! Invariants of the total space of a closed factorization: Euler characteristic,
//! signature (Meyer cocycle, with the hyperelliptic formula as a cross-check), spin type,
//! homeomorphism type and certificates.

pub mod certificates;
mod classify;
mod meyer;
mod report;
pub mod spin;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factorization::PositiveFactorization;

pub use certificates::{
    irreducibility_provenance, perfect_morse_certificate, simply_connected_certificate,
    Certificate, CertificateKind, Outcome,
};
pub use classify::{homeomorphism_type, HomeoType};
pub use meyer::{
    meyer_cocycle, meyer_cocycle_transvection, meyer_terms, signature, SEPARATING_CORRECTION,
};
pub use report::{InvariantReport, ReportOptions};
pub use spin::{spin_feasibility, spin_verdict, SpinFeasibility, SpinReport, Verdict};

/// `e = 4 - 4g + n` for a closed factorization with `n` twists.
pub fn euler_characteristic(f: &PositiveFactorization) -> Result<i64> {
    if !f.is_closed() {
        return Err(Error::RequiresClosed);
    }
    Ok(euler_from_counts(f.genus(), f.len()))
}

pub fn euler_from_counts(genus: usize, twists: usize) -> i64 {
    4 - 4 * genus as i64 + twists as i64
}

/// Endo's formula for hyperelliptic fibrations:
/// `-(g+1)/(2g+1) n0 + sum_h (4h(g-h)/(2g+1) - 1) n_h`.
pub fn endo_signature(genus: usize, n0: usize, separating: &BTreeMap<usize, usize>) -> Result<i64> {
    if genus == 0 {
        return Err(Error::InvalidGenus(0));
    }
    let g = genus as i64;
    let d = 2 * g + 1;
    let mut num = -(g + 1) * n0 as i64;
    for (&h, &count) in separating {
        let h = h as i64;
        if h == 0 || h > g / 2 {
            return Err(Error::InvalidCurve(format!(
                "separating genus {h} outside 1..={}",
                g / 2
            )));
        }
        num += (4 * h * (g - h) - d) * count as i64;
    }
    if num % d != 0 {
        return Err(Error::NonIntegral(format!("{num}/{d}")));
    }
    Ok(num / d)
}

/// [`endo_signature`] on the counts of a factorization.
pub fn endo_signature_of(f: &PositiveFactorization) -> Result<i64> {
    endo_signature(f.genus(), f.nonseparating_count(), &f.separating_counts())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endo_examples() {
        let none = BTreeMap::new();
        assert_eq!(endo_signature(2, 30, &none).unwrap(), -18);
        assert_eq!(endo_signature(2, 40, &none).unwrap(), -24);
        assert_eq!(endo_signature(2, 6, &BTreeMap::from([(1, 2)])).unwrap(), -4);
        assert_eq!(endo_signature(1, 12, &none).unwrap(), -8);
        assert!(matches!(endo_signature(2, 1, &none), Err(Error::NonIntegral(_))));
    }
}
