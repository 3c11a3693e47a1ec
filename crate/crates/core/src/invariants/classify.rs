use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

use super::spin::Verdict;

/// A homeomorphism type of a closed simply connected 4-manifold, by its intersection form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomeoType {
    pub family: String,
    pub params: BTreeMap<String, i64>,
}

pub const FAMILY_S2XS2: &str = "connected_sum_S2xS2";
pub const FAMILY_CP2_PAIRS: &str = "connected_sum_CP2_CP2bar";
pub const FAMILY_ODD: &str = "connected_sum_CP2_and_CP2bar";
pub const FAMILY_EVEN: &str = "even_E8_H";

impl HomeoType {
    fn new(family: &str, params: &[(&str, i64)]) -> HomeoType {
        HomeoType {
            family: family.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }
}

impl fmt::Display for HomeoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |k: &str| self.params.get(k).copied().unwrap_or(0);
        match self.family.as_str() {
            FAMILY_S2XS2 => write!(f, "#_{}(S2xS2)", p("m")),
            FAMILY_CP2_PAIRS => write!(f, "#_{}(CP2#-CP2)", p("n")),
            FAMILY_ODD => write!(f, "#_{} CP2 #_{} -CP2", p("b_plus"), p("b_minus")),
            _ => write!(f, "{}E8 + {}H", p("e8"), p("h")),
        }
    }
}

/// Freedman-type descriptor from `(e, sigma)` and the spin verdict. Returns `None` without
/// the simply-connected certificate, with an inconclusive verdict, or when an even form
/// fails the divisibility checks.
pub fn homeomorphism_type(
    e: i64,
    sigma: i64,
    verdict: Verdict,
    sc_present: bool,
) -> Result<Option<HomeoType>> {
    if !sc_present || verdict == Verdict::Inconclusive {
        return Ok(None);
    }
    let b2 = e - 2;
    if b2 < 0 || (b2 + sigma) % 2 != 0 || b2 < sigma.abs() {
        return Err(Error::Inconsistent(format!(
            "e = {e} and sigma = {sigma} give no non-negative integral b+ and b-"
        )));
    }
    let b_plus = (b2 + sigma) / 2;
    let b_minus = (b2 - sigma) / 2;
    Ok(match (verdict, sigma) {
        (Verdict::Spin, 0) => Some(HomeoType::new(FAMILY_S2XS2, &[("m", b2 / 2)])),
        (Verdict::NotSpin, 0) => Some(HomeoType::new(FAMILY_CP2_PAIRS, &[("n", b2 / 2)])),
        (Verdict::NotSpin, _) => Some(HomeoType::new(
            FAMILY_ODD,
            &[("b_plus", b_plus), ("b_minus", b_minus)],
        )),
        (Verdict::Spin, _) if sigma % 16 == 0 => Some(HomeoType::new(
            FAMILY_EVEN,
            &[("e8", sigma / 8), ("h", b_plus.min(b_minus))],
        )),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        let t = homeomorphism_type(544, 0, Verdict::Spin, true).unwrap().unwrap();
        assert_eq!(t.to_string(), "#_271(S2xS2)");
        let t = homeomorphism_type(544, 0, Verdict::NotSpin, true).unwrap().unwrap();
        assert_eq!(t.to_string(), "#_271(CP2#-CP2)");
        let t = homeomorphism_type(12, -8, Verdict::NotSpin, true).unwrap().unwrap();
        assert_eq!((t.param("b_plus"), t.param("b_minus")), (Some(1), Some(9)));
        let k3 = homeomorphism_type(24, -16, Verdict::Spin, true).unwrap().unwrap();
        assert_eq!(k3.to_string(), "-2E8 + 3H");
        assert_eq!(homeomorphism_type(12, -8, Verdict::Spin, true).unwrap(), None);
        assert_eq!(homeomorphism_type(12, -8, Verdict::NotSpin, false).unwrap(), None);
        assert!(homeomorphism_type(12, -7, Verdict::NotSpin, true).is_err());
        assert!(homeomorphism_type(1, 0, Verdict::NotSpin, true).is_err());
    }
}
