//! Seeds and the recipes that combine them.

mod fixtures;
mod recipe;

pub use fixtures::{chain_curves, chain_relation, fixture, fixtures, load_seed, swap_map, FIXTURE_NAMES};
pub use recipe::{
    build_conjugate_stack, build_twisted_z, build_z, build_z_prime, grow, normalize_to_dual_prefix,
    replay_normalization, RecipeConfig, TransportPolicy,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{endo_signature_of, euler_characteristic, signature};

    #[test]
    fn fixture_signatures_match_endo() {
        let expect = [
            ("g1-chain", -8, 12),
            ("g1-chain3", -8, 12),
            ("g2-chain5", -18, 26),
            ("g2-chain4", -24, 36),
            ("g2-matsumoto", -4, 4),
            ("g3-chain7", -32, 48),
            ("g1-k3", -16, 24),
        ];
        for (name, sigma, e) in expect {
            let f = fixture(name).unwrap();
            assert_eq!(signature(&f).unwrap(), sigma, "{name}");
            assert_eq!(endo_signature_of(&f).unwrap(), sigma, "{name}");
            assert_eq!(euler_characteristic(&f).unwrap(), e, "{name}");
        }
    }

    #[test]
    fn normalization_replays() {
        let seed = fixture("g2-chain5").unwrap();
        let y = build_conjugate_stack(&RecipeConfig::new(seed, 0)).unwrap();
        assert_eq!(y.len(), 120);
        let (n, s) = normalize_to_dual_prefix(&y).unwrap();
        assert_eq!(replay_normalization(&y, &s).unwrap(), n);
        for (k, c) in n.twists().iter().take(4).enumerate() {
            assert!(c.is_dual());
            assert_eq!(c.class().standard_index(), Some(k));
        }
        assert_eq!(n.product_matrix(), y.product_matrix());
        let (again, s2) = normalize_to_dual_prefix(&n).unwrap();
        assert!(s2.is_empty());
        assert_eq!(again.twists(), n.twists());
    }

    #[test]
    fn z_doubles() {
        let seed = fixture("g2-chain5").unwrap();
        let y = build_conjugate_stack(&RecipeConfig::new(seed, 0)).unwrap();
        let z = build_z(&y).unwrap();
        assert_eq!(signature(&z).unwrap(), 2 * signature(&y).unwrap());
        assert_eq!(euler_characteristic(&z).unwrap(), 2 * euler_characteristic(&y).unwrap() + 4);
        let g = grow(&z, &y, 1).unwrap();
        assert_eq!(g.len(), 3 * y.len());
    }

    #[test]
    fn spin_matched_stack() {
        let seed = fixture("g1-k3").unwrap();
        let cfg = RecipeConfig::new(seed, 0).policy(TransportPolicy::SpinPreserving);
        let y = build_conjugate_stack(&cfg).unwrap();
        assert!(y.spin().is_some());
        let z = build_z(&y).unwrap();
        assert!(z.spin().is_some());
        assert_eq!(signature(&z).unwrap(), -64);
    }
}
