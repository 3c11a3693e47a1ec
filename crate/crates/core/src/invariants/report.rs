use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::PositiveFactorization;

use super::certificates::{
    irreducibility_provenance, perfect_morse_certificate, simply_connected_certificate,
    Certificate, Outcome,
};
use super::classify::{homeomorphism_type, HomeoType};
use super::spin::{spin_feasibility, spin_verdict_with, SpinReport};
use super::{euler_characteristic, signature};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Include certificate payloads.
    pub certify: bool,
}

/// Everything computed for a closed factorization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub e: i64,
    pub sigma: i64,
    pub b_plus: Option<i64>,
    pub b_minus: Option<i64>,
    pub spin: SpinReport,
    pub arf: Option<u8>,
    pub homeo_type: Option<HomeoType>,
    pub certificates: Vec<Certificate>,
    #[serde(skip)]
    pub absent: Vec<String>,
}

impl InvariantReport {
    pub fn compute(f: &PositiveFactorization, options: ReportOptions) -> Result<Self> {
        let e = euler_characteristic(f)?;
        let sigma = signature(f)?;
        let spin = spin_verdict_with(f, sigma)?;
        let arf = f
            .spin()
            .cloned()
            .or_else(|| spin_feasibility(f).unique().cloned())
            .map(|q| u8::from(q.arf()));

        let mut issued = Vec::new();
        let mut absent = Vec::new();
        let mut note = |o: Outcome| match o {
            Outcome::Issued(c) => issued.push(c),
            Outcome::Absent { kind, reason } => absent.push(format!("{kind:?}: {reason}")),
        };
        let sc = simply_connected_certificate(f)?;
        let sc_present = sc.is_issued();
        note(sc);
        if sc_present {
            note(perfect_morse_certificate(f)?);
        }
        note(irreducibility_provenance(f)?);

        let (b_plus, b_minus) = if sc_present {
            let b2 = e - 2;
            if (b2 + sigma) % 2 != 0 || b2 < sigma.abs() {
                return Err(Error::Inconsistent(format!("e = {e}, sigma = {sigma}")));
            }
            (Some((b2 + sigma) / 2), Some((b2 - sigma) / 2))
        } else {
            (None, None)
        };
        let homeo_type = homeomorphism_type(e, sigma, spin.verdict, sc_present)?;
        Ok(InvariantReport {
            e,
            sigma,
            b_plus,
            b_minus,
            spin,
            arf,
            homeo_type,
            certificates: if options.certify { issued } else { Vec::new() },
            absent,
        })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |x: Option<i64>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        let _ = writeln!(out, "euler characteristic  {}", self.e);
        let _ = writeln!(out, "signature             {}", self.sigma);
        let _ = writeln!(out, "b+ / b-               {} / {}", opt(self.b_plus), opt(self.b_minus));
        let _ = writeln!(out, "spin                  {}", self.spin.verdict);
        for r in &self.spin.reasons {
            let _ = writeln!(out, "  - {r}");
        }
        let _ = writeln!(
            out,
            "arf                   {}",
            self.arf.map_or_else(|| "-".to_string(), |a| a.to_string())
        );
        let _ = writeln!(
            out,
            "homeomorphism type    {}",
            self.homeo_type
                .as_ref()
                .map_or_else(|| "-".to_string(), |h| h.to_string())
        );
        for c in &self.certificates {
            let _ = writeln!(out, "certificate {:?}", c.kind);
            let _ = writeln!(out, "  evidence: {}", c.evidence);
            for cite in &c.citations {
                let _ = writeln!(out, "  cites: {cite}");
            }
            for n in &c.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        for a in &self.absent {
            let _ = writeln!(out, "absent {a}");
        }
        out
    }
}
