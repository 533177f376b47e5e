use proptest::prelude::*;
use truthkit::gen;
use truthkit::io::{
    parse, ClassificationJson, DatasetJson, DiagramJson, GraphMorphismJson, LogicJson, StructureJson, TheoryJson, TypeMapJson,
};
use truthkit::truth::Logic;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cls_values_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = gen::rng(seed);
        let y = gen::type_set(n, "");
        let m = gen::classification(&mut r, &y, 4);
        let t = gen::theory(&mut r, &y, 3);
        let f = gen::type_map(&mut r, &y, &gen::type_set(2, "b"));
        let text = serde_json::to_string(&ClassificationJson::from_domain(&m)).unwrap();
        prop_assert_eq!(parse::<ClassificationJson>(&text).unwrap().to_domain().unwrap(), m.clone());
        let text = serde_json::to_string(&TheoryJson::from_domain(&t)).unwrap();
        prop_assert_eq!(parse::<TheoryJson>(&text).unwrap().to_domain().unwrap(), t.clone());
        let text = serde_json::to_string(&TypeMapJson::from_domain(&f)).unwrap();
        prop_assert_eq!(parse::<TypeMapJson>(&text).unwrap().to_domain().unwrap(), f);
        let l = Logic::new(m, t).unwrap();
        let text = serde_json::to_string(&LogicJson::from_domain(&l)).unwrap();
        prop_assert_eq!(parse::<LogicJson>(&text).unwrap().to_domain().unwrap(), l);
    }

    #[test]
    fn dgm_values_round_trip(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let g = gen::graph(&mut r, 4, 5, "n");
        let d = gen::diagram(&mut r, &g, 2);
        let text = serde_json::to_string(&DiagramJson::from_domain(&d)).unwrap();
        prop_assert_eq!(parse::<DiagramJson>(&text).unwrap().to_domain().unwrap(), d);
        let h = gen::graph_morphism(&mut r, &g, 3, 3);
        let text = serde_json::to_string(&GraphMorphismJson::from_domain(&h)).unwrap();
        prop_assert_eq!(parse::<GraphMorphismJson>(&text).unwrap().to_domain().unwrap(), h);
    }

    #[test]
    fn fol_values_round_trip(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let a = gen::unified_structure(&mut r, 3, 4);
        let text = serde_json::to_string(&StructureJson::from_domain(&a)).unwrap();
        prop_assert_eq!(parse::<StructureJson>(&text).unwrap().to_domain().unwrap(), a.clone());
        let f = truthkit::fol::structure_to_dataset(&a).unwrap();
        let text = serde_json::to_string(&DatasetJson::from_domain(&f)).unwrap();
        prop_assert_eq!(parse::<DatasetJson>(&text).unwrap().to_domain().unwrap(), f);
    }
}
