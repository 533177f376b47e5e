mod common;

use proptest::prelude::*;
use truthkit::cls::{fiber_morphisms, is_separated, power_classification, state_map, Infomorphism, TypeMap};
use truthkit::gen;
use truthkit::Limits;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn power_classification_is_terminal_for_states(seed in any::<u64>(), n in 1usize..=3) {
        let l = Limits::default();
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let p = power_classification(&y, &l).unwrap();
        prop_assert!(is_separated(&p));
        prop_assert_eq!(p.len(), 1 << n);
        let m = gen::classification(&mut r, &y, 4);
        let tau = state_map(&m, &p).unwrap();
        prop_assert_eq!(fiber_morphisms(&p, &m, &l).unwrap(), vec![tau]);
    }

    #[test]
    fn identity_infomorphisms_compose(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let m = gen::classification(&mut r, &y, 4);
        let id = Infomorphism::new(m.clone(), m.clone(), TypeMap::identity(&y), (0..m.len()).collect()).unwrap();
        let twice = id.then(&id).unwrap();
        prop_assert_eq!(twice.instance_map(), id.instance_map());
    }

    #[test]
    fn separation_matches_oracle(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let m = gen::classification(&mut r, &y, 5);
        let states: Vec<_> = common::cls(&m).states.into_values().collect();
        let distinct: std::collections::BTreeSet<_> = states.iter().cloned().collect();
        prop_assert_eq!(is_separated(&m), distinct.len() == states.len());
    }
}
