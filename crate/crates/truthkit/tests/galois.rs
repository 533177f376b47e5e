mod common;

use proptest::prelude::*;
use truthkit::cls::fiber_morphisms;
use truthkit::gen;
use truthkit::theory::{closure_enumerate, entails, same_closure, theory_geq, Sequent};
use truthkit::truth::{extent, extent_morphisms, intent, intent_enumerate, model_initial_morphism, satisfies};
use truthkit::Limits;

fn pair(seed: u64, n: usize) -> (truthkit::cls::Classification, truthkit::theory::Theory) {
    let mut r = gen::rng(seed);
    let y = gen::type_set(n, "");
    (gen::classification(&mut r, &y, 4), gen::theory(&mut r, &y, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn satisfaction_is_initiality(seed in any::<u64>(), n in 1usize..=3) {
        let l = Limits::default();
        let (m, t) = pair(seed, n);
        let sat = satisfies(&m, &t).unwrap();
        prop_assert_eq!(sat, common::satisfies(&common::cls(&m), &common::theory(&t)));
        prop_assert_eq!(sat, theory_geq(&t, &intent(&m, &l).unwrap(), &l).unwrap());
        let from_extent = extent_morphisms(&t, &m, &l).unwrap();
        prop_assert_eq!(sat, from_extent.len() == 1);
        match model_initial_morphism(&t, &m, &l) {
            Ok(w) => prop_assert_eq!(&w.morphism, &from_extent[0]),
            Err(e) => { prop_assert!(!sat); prop_assert_eq!(e.kind(), "NotAModel"); }
        }
    }

    #[test]
    fn intent_matches_oracle(seed in any::<u64>(), n in 1usize..=3) {
        let l = Limits::default();
        let (m, _) = pair(seed, n);
        let naive = common::intent(&common::cls(&m));
        let full = common::theory(&intent_enumerate(&m, &l).unwrap());
        prop_assert_eq!(full.sequents.iter().cloned().collect::<std::collections::BTreeSet<_>>(), naive.clone());
        // the compact form has the same closure
        prop_assert_eq!(common::closure(&common::theory(&intent(&m, &l).unwrap())), naive);
    }

    #[test]
    fn closure_matches_oracle(seed in any::<u64>(), n in 1usize..=3) {
        let l = Limits::default();
        let (_, t) = pair(seed, n);
        let mine = common::theory(&closure_enumerate(&t, &l).unwrap());
        prop_assert_eq!(mine.sequents.into_iter().collect::<std::collections::BTreeSet<_>>(), common::closure(&common::theory(&t)));
    }

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>(), n in 1usize..=3) {
        let l = Limits::default();
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let t = gen::theory(&mut r, &y, 3);
        let c = closure_enumerate(&t, &l).unwrap();
        for q in t.sequents() {
            prop_assert!(c.contains(q));
        }
        prop_assert_eq!(closure_enumerate(&c, &l).unwrap(), c.clone());
        // a larger generator set has a larger closure
        let mut more: Vec<Sequent> = t.sequents().iter().copied().collect();
        more.push(gen::sequent(&mut r, &y));
        let bigger = truthkit::theory::Theory::new(y.clone(), more).unwrap();
        let cb = closure_enumerate(&bigger, &l).unwrap();
        prop_assert!(c.sequents().is_subset(cb.sequents()));
        // closure is intent of extent
        prop_assert_eq!(intent_enumerate(&extent(&t, &l).unwrap(), &l).unwrap(), c);
    }

    #[test]
    fn order_matches_oracle(seed in any::<u64>(), n in 1usize..=3) {
        let l = Limits::default();
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let (t1, t2) = (gen::theory(&mut r, &y, 2), gen::theory(&mut r, &y, 2));
        let naive = common::geq(&common::theory(&t1), &common::theory(&t2));
        prop_assert_eq!(theory_geq(&t1, &t2, &l).unwrap(), naive);
        let both = theory_geq(&t1, &t2, &l).unwrap() && theory_geq(&t2, &t1, &l).unwrap();
        prop_assert_eq!(same_closure(&t1, &t2, &l).unwrap(), both);
        let q = gen::sequent(&mut r, &y);
        let nq = common::theory(&truthkit::theory::Theory::new(y.clone(), [q]).unwrap()).sequents[0].clone();
        prop_assert_eq!(entails(&t1, &q, &l).unwrap(), common::closure(&common::theory(&t1)).contains(&nq));
    }

    #[test]
    fn extent_is_the_model_set(seed in any::<u64>(), n in 1usize..=3) {
        let l = Limits::default();
        let (_, t) = pair(seed, n);
        let e = common::cls(&extent(&t, &l).unwrap());
        let mine: std::collections::BTreeSet<_> = e.states.values().cloned().collect();
        let naive: std::collections::BTreeSet<_> = common::models(&common::theory(&t)).into_iter().collect();
        prop_assert_eq!(mine, naive);
        prop_assert!(truthkit::cls::is_separated(&extent(&t, &l).unwrap()));
    }

    #[test]
    fn fiber_morphism_count_matches_oracle(seed in any::<u64>(), n in 1usize..=2) {
        let l = Limits::default();
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let (a, b) = (gen::classification(&mut r, &y, 4), gen::classification(&mut r, &y, 3));
        let all = fiber_morphisms(&a, &b, &l).unwrap();
        prop_assert_eq!(all.len(), common::fiber_map_count(&common::cls(&a), &common::cls(&b)));
        for f in &all {
            prop_assert!(f.is_valid(&a, &b));
        }
    }
}
