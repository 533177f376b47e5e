use proptest::prelude::*;
use rand::Rng;
use truthkit::cls::Classification;
use truthkit::fol::{
    classify_tuple, dataset_to_structure, frames_to_structure, structure_to_dataset, validate_structure, FolStructure, Frame,
};
use truthkit::gen;

fn random_frames(seed: u64) -> Vec<Frame> {
    let mut r = gen::rng(seed);
    let roles = ["agent", "patient", "object", "instrument", "recipient"];
    let fillers = ["Adam", "Eve", "flowers", "email", "Sam"];
    let names = ["send", "give", "tell"];
    (0..r.gen_range(0..5))
        .map(|i| {
            let rs = gen::sample(&mut r, roles, 0.6);
            let pairs: Vec<(&str, &str)> = rs.iter().map(|&x| (x, *gen::pick(&mut r, &fillers).unwrap())).collect();
            Frame::new(Some(format!("f{i}")), *gen::pick(&mut r, &names).unwrap(), pairs).unwrap()
        })
        .collect()
}

/// `a` with one incidence of its relation classification removed.
fn drop_incidence(a: &FolStructure, k: usize) -> Option<FolStructure> {
    let inc = a.relation().incidence();
    if inc.is_empty() {
        return None;
    }
    let gone = &inc[k % inc.len()];
    let kept: Vec<(String, String)> = inc.iter().filter(|p| *p != gone).cloned().collect();
    let rel = Classification::new(a.relation().types().clone(), a.relation().instances().iter().cloned(), kept).unwrap();
    Some(
        FolStructure::new(
            a.variables().iter().cloned(),
            a.entity().clone(),
            rel,
            a.reference().clone(),
            a.tuples().clone(),
            a.signatures().clone(),
        )
        .unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dataset_round_trip_is_identity(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let a = gen::unified_structure(&mut r, 3, 4);
        prop_assert!(validate_structure(&a).is_empty());
        let f = structure_to_dataset(&a).unwrap();
        prop_assert_eq!(&dataset_to_structure(&f).unwrap(), &a);
        // rows and records survive as plain data
        for (table, rows) in f.rows() {
            for row in rows {
                prop_assert!(a.relation().holds(row, table));
                for (x, v) in &a.tuples()[row] {
                    prop_assert_eq!(f.apply(x, row), Some(v.as_str()));
                }
            }
        }
    }

    #[test]
    fn frames_always_validate(seed in any::<u64>()) {
        let a = frames_to_structure(&random_frames(seed), "Entity").unwrap();
        prop_assert!(validate_structure(&a).is_empty());
    }

    #[test]
    fn removing_incidences_never_adds_violations(seed in any::<u64>(), k in 0usize..16) {
        let mut r = gen::rng(seed);
        let a = gen::unified_structure(&mut r, 3, 4);
        // break some records so that there is something to lose
        let mut tuples = a.tuples().clone();
        if let Some((_, rec)) = tuples.iter_mut().next() {
            rec.clear();
        }
        let Ok(b) = FolStructure::new(a.variables().iter().cloned(), a.entity().clone(), a.relation().clone(), a.reference().clone(), tuples, a.signatures().clone()) else {
            return Ok(());
        };
        if let Some(c) = drop_incidence(&b, k) {
            let before = validate_structure(&b);
            for v in validate_structure(&c) {
                prop_assert!(before.contains(&v));
            }
        }
    }

    #[test]
    fn asserted_and_valid_implies_classified(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let a = gen::unified_structure(&mut r, 3, 4);
        if validate_structure(&a).is_empty() {
            for (t, rho) in a.relation().incidence() {
                prop_assert!(classify_tuple(&a, &t, &rho).unwrap());
            }
        }
    }
}

#[test]
fn send_frame_fixture() {
    let send = Frame::new(None, "send", [("agent", "Adam"), ("patient", "Eve"), ("object", "flowers"), ("instrument", "email")]).unwrap();
    let a = frames_to_structure(&[send], "Entity").unwrap();
    assert!(validate_structure(&a).is_empty());
    assert_eq!(a.signatures()["send"].len(), 4);
    assert!(a.signatures()["send"].values().all(|t| t == "Entity"));
    assert_eq!(a.tuples()["send"]["agent"], "Adam");
}

#[test]
fn frames_with_one_name_share_a_variable_set() {
    let a = Frame::new(Some("a".into()), "tell", [("agent", "Adam"), ("recipient", "Eve")]).unwrap();
    let b = Frame::new(Some("b".into()), "tell", [("agent", "Eve"), ("recipient", "Sam"), ("object", "email")]).unwrap();
    let s = frames_to_structure(&[a, b], "Entity").unwrap();
    let arity: Vec<&String> = s.signatures()["tell"].keys().collect();
    assert_eq!(arity, ["agent", "recipient"]);
    assert_eq!(s.variables().len(), 3);
    assert_eq!(s.tuples().len(), 2);
}
