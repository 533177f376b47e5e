mod common;

use proptest::prelude::*;
use truthkit::cls::{fiber_morphisms, Classification, FiberMorphism, TypeSet};
use truthkit::gen;
use truthkit::truth::{extent, nat_logic, satisfies, sum_normal_instances, theory_logic, Logic};
use truthkit::Limits;

/// Every classification over `y` with instances `c0..c{n-1}`, `n <= max`.
fn all_classifications(y: &TypeSet, max: usize) -> Vec<Classification> {
    let states = 1u64 << y.len();
    let mut out = Vec::new();
    for n in 0..=max {
        for code in 0..states.pow(n as u32) {
            let rows: Vec<(String, u64)> = (0..n).map(|j| (format!("c{j}"), (code / states.pow(j as u32)) % states)).collect();
            out.push(Classification::from_states(y.clone(), rows).unwrap());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sum_is_the_fiber_coproduct(seed in any::<u64>(), n in 1usize..=2) {
        let l = Limits::default();
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let m = gen::classification(&mut r, &y, 3);
        let t = gen::theory(&mut r, &y, 2);
        let s = sum_normal_instances(&Logic::new(m.clone(), t.clone()).unwrap());
        prop_assert!(satisfies(&s, &t).unwrap());
        let naive = common::cls(&m);
        let nt = common::theory(&t);
        let kept: Vec<&String> = naive.states.iter().filter(|(_, st)| nt.sequents.iter().all(|q| common::holds(st, q))).map(|(x, _)| x).collect();
        prop_assert_eq!(s.instances().iter().collect::<Vec<_>>(), kept);
        let e = extent(&t, &l).unwrap();
        let incl = FiberMorphism::from_indices(s.instances().iter().map(|x| m.index_of(x).unwrap()).collect());
        let tau = FiberMorphism::from_indices(s.states().iter().map(|&st| e.index_of(&y.subset_id(st)).unwrap()).collect());
        for c in all_classifications(&y, 2) {
            let hs = fiber_morphisms(&s, &c, &l).unwrap();
            for gm in fiber_morphisms(&m, &c, &l).unwrap() {
                for ge in fiber_morphisms(&e, &c, &l).unwrap() {
                    let n = hs.iter().filter(|h| incl.then(h) == gm && tau.then(h) == ge).count();
                    prop_assert_eq!(n, 1);
                }
            }
        }
    }

    #[test]
    fn sum_identities(seed in any::<u64>(), n in 1usize..=3) {
        let l = Limits::default();
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let m = gen::classification(&mut r, &y, 4);
        let t = gen::theory(&mut r, &y, 3);
        prop_assert_eq!(sum_normal_instances(nat_logic(&m, &l).unwrap().logic()), m);
        let th = theory_logic(&t, &l).unwrap();
        prop_assert_eq!(sum_normal_instances(&th), extent(&t, &l).unwrap());
    }
}
