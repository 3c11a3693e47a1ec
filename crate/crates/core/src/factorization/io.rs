//! JSON file format.
//!
//! ```json
//! {
//!   "genus": 1,
//!   "boundary": "closed",
//!   "twists": [{"coords": [1, 0], "sep_genus": null, "label": "a1", "dual": true}, ...],
//!   "spin": {"q_basis": [1, 1]},
//!   "provenance": [{"kind": "seed", ...}]
//! }
//! ```
//!
//! Coordinates are arbitrary-precision integers. `dual` may be omitted (false), as may
//! `spin` (null) and `provenance` (empty). Unknown fields are rejected.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{Curve, HomologyClass, QuadraticForm, Surface};
use crate::error::{Error, Result};

use super::{Boundary, PositiveFactorization, Provenance, ValidationReport};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    genus: usize,
    boundary: Boundary,
    twists: Vec<TwistRepr>,
    #[serde(default)]
    spin: Option<SpinRepr>,
    #[serde(default)]
    provenance: Vec<Provenance>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistRepr {
    coords: Vec<serde_json::Number>,
    #[serde(default)]
    sep_genus: Option<usize>,
    #[serde(default)]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    dual: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpinRepr {
    q_basis: Vec<u8>,
}

impl PositiveFactorization {
    pub fn to_json(&self) -> String {
        let repr = FileRepr {
            genus: self.genus(),
            boundary: self.boundary,
            twists: self
                .twists
                .iter()
                .map(|c| TwistRepr {
                    coords: c
                        .class()
                        .coords()
                        .iter()
                        .map(|x| {
                            serde_json::Number::from_str(&x.to_string())
                                .expect("integers are valid JSON numbers")
                        })
                        .collect(),
                    sep_genus: c.sep_genus(),
                    label: c.label().map(str::to_string),
                    dual: c.is_dual(),
                })
                .collect(),
            spin: self.spin.as_ref().map(|q| SpinRepr {
                q_basis: q.basis_values().iter().map(|&b| u8::from(b)).collect(),
            }),
            provenance: self.provenance.clone(),
        };
        let mut text = serde_json::to_string_pretty(&repr).expect("plain data serializes");
        text.push('\n');
        text
    }

    /// Parse and check a factorization file. Shape errors carry the offending path and
    /// position; a closed file whose product is not the identity fails the relation check.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw = Self::parse_unchecked(text)?;
        Ok(PositiveFactorization::new(raw.surface, raw.twists, raw.boundary)?
            .with_spin(raw.spin)?
            .with_provenance(raw.provenance))
    }

    /// Parse a file for validation only: shape errors fail, while relation and spin problems
    /// are left for [`PositiveFactorization::validate`] to report.
    pub fn validate_json(text: &str) -> Result<ValidationReport> {
        Ok(Self::parse_unchecked(text)?.validate())
    }

    fn parse_unchecked(text: &str) -> Result<Self> {
        let mut de = serde_json::Deserializer::from_str(text);
        let repr: FileRepr = serde_path_to_error::deserialize(&mut de)
            .map_err(|e| Error::schema(e.path().to_string(), e.inner().to_string()))?;
        de.end().map_err(|e| Error::schema(".", e.to_string()))?;

        let surface =
            Surface::new(repr.genus).map_err(|e| Error::schema("genus", e.to_string()))?;
        let mut twists = Vec::with_capacity(repr.twists.len());
        for (k, t) in repr.twists.into_iter().enumerate() {
            let path = format!("twists[{k}]");
            if t.coords.len() != surface.rank() {
                return Err(Error::schema(
                    format!("{path}.coords"),
                    format!("expected {} entries, found {}", surface.rank(), t.coords.len()),
                ));
            }
            let coords = t
                .coords
                .iter()
                .enumerate()
                .map(|(j, n)| {
                    BigInt::from_str(&n.to_string()).map_err(|_| {
                        Error::schema(format!("{path}.coords[{j}]"), format!("{n} is not an integer"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let curve = Curve::from_parts(HomologyClass::new(coords), t.sep_genus, t.label, t.dual)
                .map_err(|e| Error::schema(path, e.to_string()))?;
            twists.push(curve);
        }
        let spin = match repr.spin {
            None => None,
            Some(s) => {
                if s.q_basis.iter().any(|&b| b > 1) {
                    return Err(Error::schema("spin.q_basis", "entries must be 0 or 1"));
                }
                if s.q_basis.len() != surface.rank() {
                    return Err(Error::schema(
                        "spin.q_basis",
                        format!("expected {} entries, found {}", surface.rank(), s.q_basis.len()),
                    ));
                }
                Some(QuadraticForm::from_bits(&s.q_basis)?)
            }
        };
        Ok(PositiveFactorization {
            surface,
            twists,
            boundary: repr.boundary,
            spin,
            provenance: repr.provenance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = Surface::new(1).unwrap();
        let mut twists = Vec::new();
        for _ in 0..6 {
            twists.push(Curve::standard_a(s, 1).with_dual(true));
            twists.push(Curve::standard_b(s, 1).with_dual(true));
        }
        let f = PositiveFactorization::new(s, twists, Boundary::Closed)
            .unwrap()
            .with_spin(Some(QuadraticForm::ones(s)))
            .unwrap()
            .with_provenance(vec![Provenance::seed("pairs", true, true)]);
        let text = f.to_json();
        assert_eq!(PositiveFactorization::from_json(&text).unwrap(), f);
    }

    #[test]
    fn rejections() {
        let bad_relation = r#"{"genus":1,"boundary":"closed","twists":[{"coords":[1,0]}]}"#;
        let err = PositiveFactorization::from_json(bad_relation).unwrap_err();
        assert!(err.to_string().contains("relation check failed"));

        let sep_nonzero =
            r#"{"genus":2,"boundary":"relative","twists":[{"coords":[1,0,0,0],"sep_genus":1}]}"#;
        assert!(matches!(
            PositiveFactorization::from_json(sep_nonzero),
            Err(Error::Schema { .. })
        ));

        let unknown = r#"{"genus":1,"boundary":"relative","twists":[],"extra":1}"#;
        assert!(matches!(
            PositiveFactorization::from_json(unknown),
            Err(Error::Schema { .. })
        ));

        let fractional = r#"{"genus":1,"boundary":"relative","twists":[{"coords":[1.5,0]}]}"#;
        match PositiveFactorization::from_json(fractional) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "twists[0].coords[0]"),
            other => panic!("unexpected {other:?}"),
        }

        let big = r#"{"genus":1,"boundary":"relative","twists":[{"coords":[123456789012345678901234567890,1]}]}"#;
        let f = PositiveFactorization::from_json(big).unwrap();
        assert_eq!(
            f.twists()[0].class().coords()[0].to_string(),
            "123456789012345678901234567890"
        );
    }
}
