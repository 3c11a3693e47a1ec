//! Named factorizations with fully specified homology classes.

use std::path::Path;

use crate::algebra::{Curve, HomologyClass, QuadraticForm, Surface};
use crate::error::{Error, Result};
use crate::factorization::{Boundary, PositiveFactorization, Provenance};
use crate::mapping::MappingClass;

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: &[&str] = &[
    "g1-chain",
    "g1-chain3",
    "g2-chain5",
    "g2-chain4",
    "g2-matsumoto",
    "g3-chain7",
    "g1-k3",
];

fn curve(surface: Surface, coords: &[i64], label: &str) -> Curve {
    let class = HomologyClass::from_i64s(coords);
    match class.standard_index() {
        Some(k) => Curve::standard(surface, k).with_dual(true),
        None => Curve::nonseparating(class)
            .expect("fixture classes are primitive")
            .labelled(label),
    }
}

fn repeat(block: &[Curve], times: usize) -> Vec<Curve> {
    let mut out = Vec::with_capacity(block.len() * times);
    for _ in 0..times {
        out.extend(block.iter().cloned());
    }
    out
}

fn seed(
    name: &str,
    surface: Surface,
    twists: Vec<Curve>,
    spin: Option<QuadraticForm>,
) -> Result<PositiveFactorization> {
    let declared = spin.is_some();
    Ok(PositiveFactorization::new(surface, twists, Boundary::Closed)?
        .with_spin(spin)?
        .with_provenance(vec![Provenance::seed(name, true, declared)]))
}

/// Chain curves `c_1, ..., c_k` on genus `g`: `c_1 = a_1`, `c_{2i} = b_i`,
/// `c_{2i+1} = a_i + a_{i+1}`, and `c_{2g+1} = a_g` for the odd chain.
pub fn chain_curves(surface: Surface, length: usize) -> Result<Vec<Curve>> {
    let g = surface.genus();
    if length == 0 || length > 2 * g + 1 {
        return Err(Error::Precondition(format!(
            "chain length {length} outside 1..={} for genus {g}",
            2 * g + 1
        )));
    }
    let n = surface.rank();
    let mut out = Vec::with_capacity(length);
    for k in 1..=length {
        let mut v = vec![0i64; n];
        if k == 1 {
            v[0] = 1;
        } else if k % 2 == 0 {
            v[k - 1] = 1;
        } else {
            let i = (k - 1) / 2;
            v[2 * (i - 1)] = 1;
            if i < g {
                v[2 * i] = 1;
            }
        }
        out.push(curve(surface, &v, &format!("c{k}")));
    }
    Ok(out)
}

/// The chain relation on genus `g`: `(t_1 ... t_{2g+1})^{2g+2}` (odd) or
/// `(t_1 ... t_{2g})^{4g+2}` (even).
pub fn chain_relation(genus: usize, odd: bool) -> Result<PositiveFactorization> {
    let surface = Surface::new(genus)?;
    let (len, power) = if odd {
        (2 * genus + 1, 2 * genus + 2)
    } else {
        (2 * genus, 4 * genus + 2)
    };
    let name = format!("g{genus}-chain{len}");
    seed(&name, surface, repeat(&chain_curves(surface, len)?, power), None)
}

pub fn fixture(name: &str) -> Result<PositiveFactorization> {
    let name = name.strip_prefix("fixture:").unwrap_or(name);
    match name {
        "g1-chain" => {
            let s = Surface::new(1)?;
            let block = [Curve::standard_a(s, 1), Curve::standard_b(s, 1)].map(|c| c.with_dual(true));
            seed(name, s, repeat(&block, 6), None)
        }
        "g1-chain3" => {
            let s = Surface::new(1)?;
            let block = [Curve::standard_a(s, 1), Curve::standard_b(s, 1), Curve::standard_a(s, 1)]
                .map(|c| c.with_dual(true));
            seed(name, s, repeat(&block, 4), None)
        }
        "g2-chain5" => relabel(chain_relation(2, true)?, name),
        "g2-chain4" => relabel(chain_relation(2, false)?, name),
        "g3-chain7" => relabel(chain_relation(3, true)?, name),
        "g2-matsumoto" => {
            let s = Surface::new(2)?;
            let block = vec![
                curve(s, &[0, 1, 0, 1], "B0"),
                curve(s, &[1, 0, 1, 0], "B1"),
                curve(s, &[1, 1, 1, 1], "B2"),
                Curve::separating(s, 1)?.labelled("C"),
            ];
            seed(name, s, repeat(&block, 2), None)
        }
        "g1-k3" => {
            let s = Surface::new(1)?;
            let block = [Curve::standard_a(s, 1), Curve::standard_b(s, 1)].map(|c| c.with_dual(true));
            seed(name, s, repeat(&block, 12), Some(QuadraticForm::ones(s)))
        }
        other => {
            if let Some(rest) = other.strip_prefix('g') {
                if let Some((g, len)) = rest.split_once("-chain") {
                    if let (Ok(g), Ok(len)) = (g.parse::<usize>(), len.parse::<usize>()) {
                        if g >= 1 && (len == 2 * g || len == 2 * g + 1) {
                            return chain_relation(g, len % 2 == 1);
                        }
                    }
                }
            }
            Err(Error::Precondition(format!(
                "unknown fixture `{other}` (known: {}, or gN-chainK with K = 2N or 2N+1)",
                FIXTURE_NAMES.join(", ")
            )))
        }
    }
}

fn relabel(f: PositiveFactorization, name: &str) -> Result<PositiveFactorization> {
    let spin = f.spin().is_some();
    Ok(f.with_provenance(vec![Provenance::seed(name, true, spin)]))
}

/// `t(a_i) * t(b_i)`, which sends `a_i` to `b_i` (rightmost twist first).
pub fn swap_map(surface: Surface, i: usize) -> Result<MappingClass> {
    if i == 0 || i > surface.genus() {
        return Err(Error::Precondition(format!("no handle {i} on genus {}", surface.genus())));
    }
    MappingClass::parse(surface, &format!("t(a{i})*t(b{i})"))
}

/// Every named fixture, in [`FIXTURE_NAMES`] order.
pub fn fixtures() -> Vec<(&'static str, PositiveFactorization)> {
    FIXTURE_NAMES
        .iter()
        .map(|&n| (n, fixture(n).expect("built-in fixtures are valid")))
        .collect()
}

/// Load an external seed file. Files without provenance are marked as loaded from their
/// path, so they carry no minimality or spin assertion.
pub fn load_seed(path: &Path) -> Result<PositiveFactorization> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let f = PositiveFactorization::from_json(&text)?;
    if f.provenance().is_empty() {
        let source = path.display().to_string();
        return Ok(f.with_provenance(vec![Provenance::Loaded { source }]));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::intersection;

    #[test]
    fn all_fixtures_validate() {
        for (name, f) in fixtures() {
            assert!(f.validate().valid, "{name}: {:?}", f.validate().failures);
        }
    }

    #[test]
    fn swap_sends_a_to_b() {
        let s = Surface::new(9).unwrap();
        let phi = swap_map(s, 9).unwrap();
        let image = phi.act_on_curve(&Curve::standard_a(s, 9)).unwrap();
        assert_eq!(image, Curve::standard_b(s, 9));
        let literal = MappingClass::parse(s, "t(b9)*t(a9)").unwrap();
        assert_ne!(literal.act_on_class(&s.a(9)).unwrap(), s.b(9));
    }

    #[test]
    fn chain_pairings() {
        let s = Surface::new(2).unwrap();
        let c = chain_curves(s, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let p = intersection(c[i].class(), c[j].class()).unwrap();
                let expect = if i.abs_diff(j) == 1 { 1 } else { 0 };
                assert_eq!(p.magnitude().clone(), num_bigint::BigUint::from(expect as u32));
            }
        }
        let f = fixture("fixture:g2-chain5").unwrap();
        assert_eq!(f.len(), 30);
        assert_eq!(fixture("g2-chain4").unwrap().len(), 40);
        assert_eq!(fixture("g3-chain7").unwrap().len(), 56);
        assert_eq!(fixture("g4-chain9").unwrap().len(), 90);
        assert!(fixture("g4-chain3").is_err());
        assert!(fixture("nope").is_err());
    }
}
