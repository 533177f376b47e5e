use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cls::{
    fiber_morphisms, inverse_image_classification, is_separated, power_classification, state_map,
    Classification, FiberMorphism, Mask, TypeMap, TypeSet,
};
use crate::error::{Error, Result};
use crate::gen;
use crate::limits::Limits;
use crate::theory::{bottom_theory, dir_flow, inv_flow, inv_flow_generators, same_closure, theory_geq, Theory};
use crate::truth::{
    extent, intent, join_logic, model_initial_morphism, nat_logic, satisfaction_invariance, satisfies,
    sum_normal_instances, theory_logic, Logic,
};

use super::bundle::{Bundle, Chain, LEVELS};
use super::{compose, project, GrothMorphism, GrothObject, Projection};

/// Every law id, sorted.
pub const LAW_IDS: [&str; 21] = [
    "0-lax",
    "adj-dir-inv",
    "adj-lambda",
    "adj-pi",
    "adj-rho-join",
    "adj-sum-nat",
    "ext-lax",
    "ext-lax-paste",
    "fact-model-initial",
    "int-naturality",
    "kappa-unit",
    "log-cat",
    "mod-iso-snd",
    "omega-counit",
    "pr-functor",
    "snd-full-sub",
    "spec-cat",
    "struc-cat",
    "sum-coproduct",
    "th-sum-ext",
    "truth-invariance",
];

/// Law ids accepted by [`verify_adjunction`].
pub const ADJUNCTION_IDS: [&str; 8] = [
    "adj-dir-inv",
    "adj-lambda",
    "adj-pi",
    "adj-rho-join",
    "adj-sum-nat",
    "kappa-unit",
    "omega-counit",
    "th-sum-ext",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub instance: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_types: usize,
    /// Random bundles per law, on top of the fixed fixture bundle.
    pub bundles: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 7, max_types: 3, bundles: 40 }
    }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn run(law: &str, b: &Bundle, limits: &Limits) -> Check {
    match law {
        "spec-cat" => category_laws(&lift(b.spec_chain(limits))?, limits),
        "struc-cat" => category_laws(&lift(b.struc_chain(limits))?, limits),
        "log-cat" => category_laws(&lift(b.log_chain(limits))?, limits),
        "snd-full-sub" => snd_full_sub(b, limits),
        "pr-functor" => pr_functor(b, limits),
        "int-naturality" => int_naturality(b, limits),
        "ext-lax" => ext_lax(b, limits),
        "ext-lax-paste" => ext_lax_paste(b, limits),
        "0-lax" => zero_lax(b, limits),
        "kappa-unit" => kappa_unit(b, limits),
        "omega-counit" => omega_counit(b, limits),
        "adj-pi" => adj_pi(b, limits),
        "adj-lambda" => adj_lambda(b, limits),
        "adj-rho-join" => adj_rho_join(b, limits),
        "adj-sum-nat" => adj_sum_nat(b, limits),
        "adj-dir-inv" => adj_dir_inv(b, limits),
        "truth-invariance" => truth_invariance(b),
        "fact-model-initial" => fact_model_initial(b, limits),
        "sum-coproduct" => sum_coproduct(b, limits),
        "th-sum-ext" => th_sum_ext(b, limits),
        "mod-iso-snd" => mod_iso_snd(b, limits),
        _ => unreachable!("law ids are checked by the caller"),
    }
}

fn report(law: &str, instance: String, outcome: Check, bundle: &Bundle) -> LawReport {
    match outcome {
        Ok(()) => LawReport { law: law.to_string(), instance, passed: true, counterexample: None },
        Err(message) => LawReport {
            law: law.to_string(),
            instance,
            passed: false,
            counterexample: Some(json!({ "message": message, "bundle": bundle.to_json() })),
        },
    }
}

/// Checks one law on one bundle.
pub fn check_law(law_id: &str, bundle: &Bundle, limits: &Limits) -> Result<LawReport> {
    if !LAW_IDS.contains(&law_id) {
        return Err(Error::UnknownLaw(law_id.to_string()));
    }
    Ok(report(law_id, bundle.label.clone(), run(law_id, bundle, limits), bundle))
}

/// Checks the unit, counit and mediator conditions of one adjunction on one bundle.
pub fn verify_adjunction(adj_id: &str, bundle: &Bundle, limits: &Limits) -> Result<LawReport> {
    if !ADJUNCTION_IDS.contains(&adj_id) {
        return Err(Error::UnknownAdjunction(adj_id.to_string()));
    }
    check_law(adj_id, bundle, limits)
}

/// Runs one law (or `all`) over the fixture bundle and `config.bundles`
/// seeded random bundles. One report per law, sorted by law id.
pub fn run_suite(suite: &str, config: &SuiteConfig, limits: &Limits) -> Result<Vec<LawReport>> {
    let laws: Vec<&str> = if suite == "all" {
        LAW_IDS.to_vec()
    } else if LAW_IDS.contains(&suite) {
        vec![suite]
    } else {
        return Err(Error::UnknownLaw(suite.to_string()));
    };
    let mut r = gen::rng(config.seed);
    let mut bundles = vec![Bundle::fixture()];
    for k in 0..config.bundles {
        bundles.push(Bundle::random(&mut r, config.max_types, format!("seed {} bundle {k}", config.seed)));
    }
    let instance = format!(
        "{} bundles (fixture + {} random), seed {}, max types {}",
        bundles.len(),
        config.bundles,
        config.seed,
        config.max_types
    );
    Ok(laws
        .into_iter()
        .map(|law| {
            let failure = bundles.iter().find_map(|b| run(law, b, limits).err().map(|m| (m, b)));
            match failure {
                None => report(law, instance.clone(), Ok(()), &bundles[0]),
                Some((m, b)) => report(law, format!("{instance}; failed on {}", b.label), Err(m), b),
            }
        })
        .collect())
}

fn category_laws(c: &Chain, limits: &Limits) -> Check {
    let [a, b, d] = [&c.morphisms[0], &c.morphisms[1], &c.morphisms[2]];
    let ab = lift(compose(a, b, limits))?;
    let bd = lift(compose(b, d, limits))?;
    let left = lift(compose(&ab, d, limits))?;
    let right = lift(compose(a, &bd, limits))?;
    ensure(left == right, || "composition is not associative".into())?;
    for (i, m) in c.morphisms.iter().enumerate() {
        let id_s = GrothMorphism::identity(m.source());
        let id_t = GrothMorphism::identity(m.target());
        ensure(lift(compose(&id_s, m, limits))? == *m, || format!("left identity fails on morphism {i}"))?;
        ensure(lift(compose(m, &id_t, limits))? == *m, || format!("right identity fails on morphism {i}"))?;
    }
    Ok(())
}

fn pulled_logic(sigma: &TypeMap, l: &Logic, limits: &Limits) -> Result<Logic> {
    Logic::new(inverse_image_classification(sigma, l.structure())?, inv_flow_generators(sigma, l.theory(), limits)?)
}

fn logic_of(o: &GrothObject) -> Logic {
    Logic::new(o.structure().expect("logic object").clone(), o.theory().expect("logic object").clone()).expect("same types")
}

fn snd_full_sub(b: &Bundle, limits: &Limits) -> Check {
    let c = lift(b.snd_chain(limits))?;
    category_laws(&c, limits)?;
    for (i, m) in c.morphisms.iter().enumerate() {
        let pulled = lift(pulled_logic(m.sigma(), &logic_of(m.target()), limits))?;
        ensure(pulled.is_sound(), || format!("reindexing sound level {} along sigma_{i} is not sound", i + 1))?;
    }
    // a Log composite of Snd morphisms is again a Snd morphism
    let log_of = |m: &GrothMorphism| {
        GrothMorphism::new(
            GrothObject::log(logic_of(m.source())),
            GrothObject::log(logic_of(m.target())),
            m.sigma().clone(),
            m.fiber().cloned(),
            limits,
        )
    };
    let composite = lift(compose(&lift(log_of(&c.morphisms[0]))?, &lift(log_of(&c.morphisms[1]))?, limits))?;
    let as_snd = GrothMorphism::new(
        lift(GrothObject::snd(logic_of(composite.source())))?,
        lift(GrothObject::snd(logic_of(composite.target())))?,
        composite.sigma().clone(),
        composite.fiber().cloned(),
        limits,
    );
    ensure(as_snd.is_ok(), || "Log composite of sound morphisms is not a Snd morphism".into())
}

fn pr_functor(b: &Bundle, limits: &Limits) -> Check {
    for c in [lift(b.log_chain(limits))?, lift(b.snd_chain(limits))?] {
        let (a, d) = (&c.morphisms[0], &c.morphisms[1]);
        let ad = lift(compose(a, d, limits))?;
        for which in [Projection::Pr, Projection::Pr0, Projection::Pr1] {
            let whole = lift(project(&ad, which))?;
            let parts = lift(compose(&lift(project(a, which))?, &lift(project(d, which))?, limits))?;
            ensure(whole == parts, || format!("{which:?} does not preserve composition"))?;
            let id = GrothMorphism::identity(a.source());
            let pid = lift(project(&id, which))?;
            ensure(pid == GrothMorphism::identity(pid.source()), || format!("{which:?} does not preserve identities"))?;
        }
        let via0 = lift(project(&lift(project(a, Projection::Pr0))?, Projection::Pr))?;
        let via1 = lift(project(&lift(project(a, Projection::Pr1))?, Projection::Pr))?;
        let direct = lift(project(a, Projection::Pr))?;
        ensure(via0 == direct && via1 == direct, || "pr0 and pr1 do not commute with pr".into())?;
    }
    let langs = lift(b.lang_chain(limits))?;
    let spec = lift(b.spec_chain(limits))?;
    let struc = lift(b.struc_chain(limits))?;
    for i in 0..LEVELS - 1 {
        ensure(lift(project(&spec.morphisms[i], Projection::Pr))? == langs.morphisms[i], || "pr on Spec".into())?;
        ensure(lift(project(&struc.morphisms[i], Projection::Pr))? == langs.morphisms[i], || "pr on Struc".into())?;
    }
    Ok(())
}

fn int_naturality(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS - 1 {
        let sigma = &b.maps[i];
        let m2 = &b.structures[i + 1];
        let left = lift(intent(&lift(inverse_image_classification(sigma, m2))?, limits))?;
        let right = lift(inv_flow(sigma, &lift(intent(m2, limits))?, limits))?;
        ensure(lift(same_closure(&left, &right, limits))?, || format!("intent is not natural along sigma_{i}"))?;
    }
    // the intent lift sends structure morphisms to specification morphisms, functorially
    let c = lift(b.struc_chain(limits))?;
    let spec_of = |m: &GrothMorphism| -> Result<GrothMorphism> {
        GrothMorphism::new(
            GrothObject::spec(intent(m.source().structure().expect("struc"), limits)?),
            GrothObject::spec(intent(m.target().structure().expect("struc"), limits)?),
            m.sigma().clone(),
            None,
            limits,
        )
    };
    let lifted = c.morphisms.iter().map(spec_of).collect::<Result<Vec<_>>>().map_err(|e| format!("intent lift: {e}"))?;
    let whole = lift(spec_of(&lift(compose(&c.morphisms[0], &c.morphisms[1], limits))?))?;
    ensure(lift(compose(&lifted[0], &lifted[1], limits))? == whole, || "intent lift does not preserve composition".into())
}

/// The laxification `ext(inv(sigma)(T2)) -> sigma^*(ext T2)`: `S2 |-> sigma^-1(S2)`.
fn laxifier(sigma: &TypeMap, t2: &Theory, limits: &Limits) -> Result<(Classification, Classification, FiberMorphism)> {
    let domain = extent(&inv_flow_generators(sigma, t2, limits)?, limits)?;
    let codomain = inverse_image_classification(sigma, &extent(t2, limits)?)?;
    let map = codomain
        .states()
        .iter()
        .map(|&s| domain.index_of(&sigma.source().subset_id(s)).ok_or_else(|| Error::UnknownInstance(sigma.source().subset_id(s))))
        .collect::<Result<Vec<_>>>()?;
    Ok((domain, codomain, FiberMorphism::from_indices(map)))
}

fn ext_lax(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS - 1 {
        let (dom, cod, f) = lift(laxifier(&b.maps[i], &b.theories[i + 1], limits))?;
        ensure(f.is_valid(&dom, &cod), || format!("laxification along sigma_{i} is not a fiber morphism"))?;
        let all = lift(fiber_morphisms(&dom, &cod, limits))?;
        ensure(all == vec![f], || format!("laxification along sigma_{i} is not the unique fiber morphism"))?;
    }
    // the extent lift: Spec morphisms to Struc morphisms, functorially
    let c = lift(b.spec_chain(limits))?;
    let struc_of = |m: &GrothMorphism| -> Result<GrothMorphism> {
        let t1 = m.source().theory().expect("spec");
        let t2 = m.target().theory().expect("spec");
        let (e1, e2) = (extent(t1, limits)?, extent(t2, limits)?);
        let sigma = m.sigma();
        let map = e2
            .states()
            .iter()
            .map(|&s| e1.index_of(&sigma.source().subset_id(sigma.preimage(s))).ok_or_else(|| Error::IllFormedMorphism("extent lift".into())))
            .collect::<Result<Vec<_>>>()?;
        GrothMorphism::new(GrothObject::struc(e1), GrothObject::struc(e2), sigma.clone(), Some(FiberMorphism::from_indices(map)), limits)
    };
    let lifted = c.morphisms.iter().map(struc_of).collect::<Result<Vec<_>>>().map_err(|e| format!("extent lift: {e}"))?;
    let whole = lift(struc_of(&lift(compose(&c.morphisms[0], &c.morphisms[1], limits))?))?;
    ensure(lift(compose(&lifted[0], &lifted[1], limits))? == whole, || "extent lift does not preserve composition".into())
}

fn ext_lax_paste(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS - 2 {
        let (s0, s1) = (&b.maps[i], &b.maps[i + 1]);
        let t = &b.theories[i + 2];
        let s01 = lift(s0.then(s1))?;
        let (dom, cod, whole) = lift(laxifier(&s01, t, limits))?;
        let mid_theory = lift(inv_flow_generators(s1, t, limits))?;
        let (dom0, mid0, first) = lift(laxifier(s0, &mid_theory, limits))?;
        let (_, _, second) = lift(laxifier(s1, t, limits))?;
        ensure(dom == dom0, || "pasted laxifications start at different extents".into())?;
        let cod_iter = lift(inverse_image_classification(s0, &lift(inverse_image_classification(s1, &lift(extent(t, limits))?))?))?;
        ensure(cod == cod_iter, || "reindexing along a composite differs from iterated reindexing".into())?;
        let pasted = first.then(&second);
        ensure(pasted == whole, || format!("laxifications along sigma_{i};sigma_{} do not paste", i + 1))?;
        ensure(first.is_valid(&dom0, &mid0), || "first laxification is invalid".into())?;
    }
    Ok(())
}

/// `0_sigma : power(Y1) -> sigma^*(power(Y2))`, `S2 |-> sigma^-1(S2)`.
fn initial_lax(sigma: &TypeMap, limits: &Limits) -> Result<(Classification, Classification, FiberMorphism)> {
    let p1 = power_classification(sigma.source(), limits)?;
    let cod = inverse_image_classification(sigma, &power_classification(sigma.target(), limits)?)?;
    let map = cod.states().iter().map(|&s| p1.index_of(&sigma.source().subset_id(s)).expect("all subsets")).collect();
    Ok((p1, cod, FiberMorphism::from_indices(map)))
}

fn zero_lax(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS - 1 {
        let (p1, cod, f) = lift(initial_lax(&b.maps[i], limits))?;
        ensure(lift(fiber_morphisms(&p1, &cod, limits))? == vec![f], || format!("0_sigma_{i} is not the unique morphism"))?;
    }
    for i in 0..LEVELS - 2 {
        let s01 = lift(b.maps[i].then(&b.maps[i + 1]))?;
        let (_, _, whole) = lift(initial_lax(&s01, limits))?;
        let (_, _, first) = lift(initial_lax(&b.maps[i], limits))?;
        let (_, _, second) = lift(initial_lax(&b.maps[i + 1], limits))?;
        ensure(first.then(&second) == whole, || format!("initial laxifications along sigma_{i};sigma_{} do not paste", i + 1))?;
    }
    Ok(())
}

fn kappa_unit(b: &Bundle, limits: &Limits) -> Check {
    for (i, t) in b.theories.iter().enumerate() {
        let bot = bottom_theory(t.types());
        ensure(lift(theory_geq(&bot, t, limits))?, || format!("bottom is not >= theory {i}"))?;
        let unit = GrothMorphism::new(GrothObject::spec(bot), GrothObject::spec(t.clone()), TypeMap::identity(t.types()), None, limits);
        ensure(unit.is_ok(), || format!("identity (Y, bottom) -> (Y, T_{i}) is not a Spec morphism"))?;
        let m = &b.structures[i];
        let bl = Logic::new(m.clone(), bottom_theory(m.types())).expect("same types");
        ensure(bl.is_sound(), || "the bottom logic is not sound".into())?;
    }
    for (i, sigma) in b.maps.iter().enumerate() {
        let lifted = GrothMorphism::new(
            GrothObject::spec(bottom_theory(sigma.source())),
            GrothObject::spec(bottom_theory(sigma.target())),
            sigma.clone(),
            None,
            limits,
        );
        ensure(lifted.is_ok(), || format!("bottom lift of sigma_{i} is not a Spec morphism"))?;
    }
    Ok(())
}

fn omega_counit(b: &Bundle, limits: &Limits) -> Check {
    for (i, m) in b.structures.iter().enumerate() {
        let p = lift(power_classification(m.types(), limits))?;
        let tau = lift(state_map(m, &p))?;
        ensure(lift(fiber_morphisms(&p, m, limits))? == vec![tau], || format!("tau is not the unique morphism power -> M_{i}"))?;
    }
    for i in 0..LEVELS - 1 {
        let sigma = &b.maps[i];
        let m2 = &b.structures[i + 1];
        let pulled = lift(inverse_image_classification(sigma, m2))?;
        let (p1, _, zero) = lift(initial_lax(sigma, limits))?;
        let p2 = lift(power_classification(sigma.target(), limits))?;
        let via = zero.then(&lift(state_map(m2, &p2))?);
        ensure(lift(fiber_morphisms(&p1, &pulled, limits))? == vec![via], || {
            format!("the morphism power(Y{i}) -> sigma^*(M) is not unique or does not factor through 0_sigma")
        })?;
    }
    Ok(())
}

fn identity_fiber(o: &GrothObject) -> Option<FiberMorphism> {
    o.structure().map(FiberMorphism::identity)
}

fn adj_pi(b: &Bundle, limits: &Limits) -> Check {
    let limits = *limits;
    let eta = |l: &Logic| -> Result<GrothMorphism> {
        let src = GrothObject::log(l.clone());
        let tgt = GrothObject::log(nat_logic(l.structure(), &limits)?.into_logic());
        GrothMorphism::new(src.clone(), tgt, TypeMap::identity(l.types()), identity_fiber(&src), &limits)
    };
    for i in 0..LEVELS {
        let l = b.logic(i);
        ensure(eta(&l).is_ok() == l.is_sound(), || format!("unit at raw logic {i} is valid iff sound fails"))?;
    }
    let c = lift(b.snd_chain(&limits))?;
    for (i, m) in c.morphisms.iter().enumerate() {
        let l1 = logic_of(m.source());
        let m2 = m.target().structure().expect("snd");
        // (sigma, f) : L1 -> nat(M2) is a Snd morphism
        let into_nat = GrothMorphism::new(
            m.source().clone(),
            lift(GrothObject::snd(lift(nat_logic(m2, &limits))?.into_logic()))?,
            m.sigma().clone(),
            m.fiber().cloned(),
            &limits,
        )
        .map_err(|e| format!("morphism {i} into the natural logic: {e}"))?;
        let eta1 = lift(eta(&l1))?;
        let pulled = lift(inverse_image_classification(m.sigma(), m2))?;
        // the unit's fiber part is the identity, so eta;nat(h) has fiber h and both the
        // validity and the factoring condition split per instance of sigma^*(M2)
        let f = m.fiber().expect("snd");
        let mut mediators = 1usize;
        for (j, &st) in pulled.states().iter().enumerate() {
            let fits = (0..l1.structure().len())
                .filter(|&x| l1.structure().state(x) == st && eta1.fiber().expect("log").indices()[x] == f.indices()[j])
                .count();
            mediators = mediators.saturating_mul(fits);
        }
        let nat_f = GrothMorphism::new(
            eta1.target().clone(),
            GrothObject::log(logic_of(into_nat.target())),
            m.sigma().clone(),
            Some(f.clone()),
            &limits,
        )
        .map_err(|e| format!("nat of morphism {i}: {e}"))?;
        ensure(lift(compose(&eta1, &nat_f, &limits))?.fiber() == Some(f), || format!("morphism {i}: eta;nat(f) != f"))?;
        ensure(mediators == 1, || format!("morphism {i}: {mediators} mediators through the unit, expected 1"))?;
    }
    // the natural logic lift preserves morphisms and composition
    let s = lift(b.struc_chain(&limits))?;
    let nat_of = |m: &GrothMorphism| -> Result<GrothMorphism> {
        GrothMorphism::new(
            GrothObject::log(nat_logic(m.source().structure().expect("struc"), &limits)?.into_logic()),
            GrothObject::log(nat_logic(m.target().structure().expect("struc"), &limits)?.into_logic()),
            m.sigma().clone(),
            m.fiber().cloned(),
            &limits,
        )
    };
    let lifted = s.morphisms.iter().map(nat_of).collect::<Result<Vec<_>>>().map_err(|e| format!("nat lift: {e}"))?;
    let whole = lift(nat_of(&lift(compose(&s.morphisms[0], &s.morphisms[1], &limits))?))?;
    ensure(lift(compose(&lifted[0], &lifted[1], &limits))? == whole, || "nat lift does not preserve composition".into())
}

fn adj_lambda(b: &Bundle, limits: &Limits) -> Check {
    let c = lift(b.snd_chain(limits))?;
    for (i, m) in c.morphisms.iter().enumerate() {
        let l2 = logic_of(m.target());
        let t1 = m.source().theory().expect("snd");
        // counit (1, tau) : th(T2) -> L2
        let th2 = lift(theory_logic(l2.theory(), limits))?;
        let p = lift(extent(l2.theory(), limits))?;
        let tau_into_ext = FiberMorphism::from_indices(
            l2.structure()
                .states()
                .iter()
                .map(|&s| p.index_of(&l2.types().subset_id(s)).expect("sound states lie in the extent"))
                .collect(),
        );
        let counit = GrothMorphism::new(
            lift(GrothObject::snd(th2.clone()))?,
            m.target().clone(),
            TypeMap::identity(l2.types()),
            Some(tau_into_ext),
            limits,
        )
        .map_err(|e| format!("counit at level {}: {e}", i + 1))?;
        // the mediator th(T1) -> L2 over sigma is unique and is th(sigma) ; counit
        let ext1 = lift(extent(t1, limits))?;
        let pulled = lift(inverse_image_classification(m.sigma(), l2.structure()))?;
        let mediators = lift(fiber_morphisms(&ext1, &pulled, limits))?;
        ensure(mediators.len() == 1, || format!("level {i}: {} mediators th(T1) -> L2, expected 1", mediators.len()))?;
        let th1 = lift(GrothObject::snd(lift(theory_logic(t1, limits))?))?;
        let lift_map = ext_lift(m.sigma(), &ext1, &th2.structure().clone())?;
        let th_sigma = GrothMorphism::new(th1, lift(GrothObject::snd(th2))?, m.sigma().clone(), Some(lift_map), limits)
            .map_err(|e| format!("th of sigma_{i}: {e}"))?;
        let through = lift(compose(&th_sigma, &counit, limits))?;
        ensure(through.fiber() == Some(&mediators[0]), || format!("level {i}: th(sigma);counit is not the mediator"))?;
    }
    Ok(())
}

fn ext_lift(sigma: &TypeMap, e1: &Classification, e2: &Classification) -> std::result::Result<FiberMorphism, String> {
    e2.states()
        .iter()
        .map(|&s| e1.index_of(&sigma.source().subset_id(sigma.preimage(s))).ok_or_else(|| "extent lift leaves the extent".to_string()))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(FiberMorphism::from_indices)
}

fn adj_rho_join(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS {
        let l = b.logic(i);
        let j = lift(join_logic(&l, limits))?.into_logic();
        let counit = GrothMorphism::new(
            GrothObject::log(j.clone()),
            GrothObject::log(l.clone()),
            TypeMap::identity(l.types()),
            Some(FiberMorphism::identity(l.structure())),
            limits,
        );
        ensure(counit.is_ok(), || format!("counit (M, int M v T) -> (M, T) at level {i} is not a Log morphism"))?;
        let same = lift(same_closure(j.theory(), l.theory(), limits))?;
        ensure(same == l.is_sound(), || format!("level {i}: join equals T iff sound fails"))?;
    }
    let c = lift(b.log_chain(limits))?;
    let join_obj = |o: &GrothObject| -> Result<Logic> { Ok(join_logic(&logic_of(o), limits)?.into_logic()) };
    for (i, m) in c.morphisms.iter().enumerate() {
        // a Log morphism from a sound logic into L2 factors through res(L2) = join(L2)
        let j1 = lift(join_obj(m.source()))?;
        let eps1 = lift(GrothMorphism::new(
            GrothObject::log(j1.clone()),
            m.source().clone(),
            TypeMap::identity(j1.types()),
            Some(FiberMorphism::identity(j1.structure())),
            limits,
        ))?;
        let g = lift(compose(&eps1, m, limits))?;
        let j2 = lift(join_obj(m.target()))?;
        let factor = GrothMorphism::new(
            lift(GrothObject::snd(j1.clone()))?,
            lift(GrothObject::snd(j2.clone()))?,
            g.sigma().clone(),
            g.fiber().cloned(),
            limits,
        )
        .map_err(|e| format!("morphism {i} does not factor through the join logic: {e}"))?;
        ensure(factor.fiber() == g.fiber() && factor.sigma() == g.sigma(), || "factor differs from the morphism".into())?;
        // the join lift preserves morphisms
        let lifted = GrothMorphism::new(
            GrothObject::log(j1),
            GrothObject::log(j2),
            m.sigma().clone(),
            m.fiber().cloned(),
            limits,
        );
        ensure(lifted.is_ok(), || format!("join lift of morphism {i} is not a Log morphism"))?;
    }
    Ok(())
}

fn inclusion(m: &Classification, sub: &Classification) -> FiberMorphism {
    FiberMorphism::from_indices(sub.instances().iter().map(|x| m.index_of(x).expect("sub-classification")).collect())
}

fn adj_sum_nat(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS {
        let l = b.logic(i);
        let m = l.structure();
        let s = sum_normal_instances(&l);
        ensure(lift(satisfies(&s, l.theory()))?, || format!("sum at level {i} does not satisfy the theory"))?;
        let eta = GrothMorphism::new(
            GrothObject::log(l.clone()),
            GrothObject::log(lift(nat_logic(&s, limits))?.into_logic()),
            TypeMap::identity(l.types()),
            Some(inclusion(m, &s)),
            limits,
        )
        .map_err(|e| format!("unit at level {i}: {e}"))?;
        let incl = eta.fiber().expect("log").clone();
        // competitors: models of T reached from M in the fiber
        let mut rows: Vec<(String, Mask)> = s.instances().iter().cloned().zip(s.states().iter().copied()).collect();
        if let Some(first) = rows.first().cloned() {
            rows.push((format!("{}'", first.0), first.1));
        }
        let doubled = lift(Classification::from_states(l.types().clone(), rows.clone()))?;
        let dropped = lift(Classification::from_states(l.types().clone(), rows.into_iter().skip(1)))?;
        for target in [s.clone(), doubled, dropped] {
            for g in lift(fiber_morphisms(m, &target, limits))? {
                let mediators = lift(fiber_morphisms(&s, &target, limits))?.into_iter().filter(|h| incl.then(h) == g).count();
                ensure(mediators == 1, || format!("level {i}: {mediators} mediators through the sum, expected 1"))?;
            }
        }
        ensure(sum_normal_instances(lift(nat_logic(m, limits))?.logic()) == *m, || format!("sum(nat(M_{i})) != M_{i}"))?;
    }
    // sum is laxly natural: sum(log(sigma)(L2)) -> sigma^*(sum L2) is the inclusion
    for i in 0..LEVELS - 1 {
        let sigma = &b.maps[i];
        let l2 = b.logic(i + 1);
        let left = sum_normal_instances(&lift(pulled_logic(sigma, &l2, limits))?);
        let right = lift(inverse_image_classification(sigma, &sum_normal_instances(&l2)))?;
        ensure(inclusion(&left, &right).is_valid(&left, &right), || format!("sum laxifier along sigma_{i} is invalid"))?;
    }
    Ok(())
}

fn adj_dir_inv(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS - 1 {
        let sigma = &b.maps[i];
        let t1 = &b.theories[i];
        // the bundle's own pair, and the unit pair where both sides must hold
        let image = lift(dir_flow(sigma, t1))?;
        for t2 in [&b.theories[i + 1], &image] {
            let left = lift(theory_geq(&lift(dir_flow(sigma, t1))?, t2, limits))?;
            let right = lift(theory_geq(t1, &lift(inv_flow(sigma, t2, limits))?, limits))?;
            ensure(left == right, || format!("dir -| inv fails along sigma_{i}: {left} vs {right}"))?;
        }
    }
    Ok(())
}

fn truth_invariance(b: &Bundle) -> Check {
    for i in 0..LEVELS - 1 {
        let (a, c) = lift(satisfaction_invariance(&b.maps[i], &b.structures[i + 1], &b.theories[i]))?;
        ensure(a == c, || format!("satisfaction is not invariant along sigma_{i}: {a} vs {c}"))?;
    }
    Ok(())
}

fn fact_model_initial(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS {
        for m in [&b.structures[i], &sum_normal_instances(&b.logic(i))] {
            let t = &b.theories[i];
            let sat = lift(satisfies(m, t))?;
            let geq = lift(theory_geq(t, &lift(intent(m, limits))?, limits))?;
            let ms = lift(fiber_morphisms(&lift(extent(t, limits))?, m, limits))?;
            ensure(sat == geq && sat == (ms.len() == 1), || {
                format!("level {i}: satisfies={sat}, geq={geq}, morphisms from extent={}", ms.len())
            })?;
            if sat {
                let w = lift(model_initial_morphism(t, m, limits))?;
                ensure(w.morphism == ms[0], || "witness differs from the unique morphism".into())?;
            }
        }
    }
    Ok(())
}

/// Every classification over `y` with at most `max` instances `c0, c1, ...`.
fn small_classifications(y: &TypeSet, max: usize) -> Vec<Classification> {
    let states = 1u64 << y.len();
    let mut out = Vec::new();
    for n in 0..=max {
        let total = states.pow(n as u32);
        for code in 0..total {
            let mut k = code;
            let rows = (0..n).map(|j| {
                let s = k % states;
                k /= states;
                (format!("c{j}"), s)
            });
            out.push(Classification::from_states(y.clone(), rows.collect::<Vec<_>>()).expect("distinct ids"));
        }
    }
    out
}

fn sum_coproduct(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS {
        let l = b.logic(i);
        let (m, t) = (l.structure(), l.theory());
        let s = sum_normal_instances(&l);
        let e = lift(extent(t, limits))?;
        let incl = inclusion(m, &s);
        let tau = FiberMorphism::from_indices(
            s.states().iter().map(|&st| e.index_of(&t.types().subset_id(st)).expect("normal states lie in the extent")).collect(),
        );
        ensure(incl.is_valid(m, &s) && tau.is_valid(&e, &s), || "coproduct injections are invalid".into())?;
        let max = if t.types().len() <= 2 { 2 } else { 1 };
        for c in small_classifications(t.types(), max) {
            let from_m = lift(fiber_morphisms(m, &c, limits))?;
            let from_e = lift(fiber_morphisms(&e, &c, limits))?;
            if from_m.is_empty() || from_e.is_empty() {
                continue;
            }
            let hs = lift(fiber_morphisms(&s, &c, limits))?;
            for gm in &from_m {
                for ge in &from_e {
                    let n = hs.iter().filter(|h| incl.then(h) == *gm && tau.then(h) == *ge).count();
                    ensure(n == 1, || format!("level {i}: competing opspan has {n} mediators, expected 1"))?;
                }
            }
        }
    }
    Ok(())
}

fn th_sum_ext(b: &Bundle, limits: &Limits) -> Check {
    for (i, t) in b.theories.iter().enumerate() {
        let th = lift(theory_logic(t, limits))?;
        ensure(sum_normal_instances(&th) == *th.structure(), || format!("sum(ext T_{i}, T_{i}) != ext T_{i}"))?;
        ensure(is_separated(th.structure()), || format!("ext T_{i} is not separated"))?;
    }
    Ok(())
}

fn is_model(t: &Theory, m: &Classification, limits: &Limits) -> bool {
    model_initial_morphism(t, m, limits).is_ok()
}

fn mod_iso_snd(b: &Bundle, limits: &Limits) -> Check {
    for i in 0..LEVELS {
        let l = b.logic(i);
        let as_mod = is_model(l.theory(), l.structure(), limits);
        ensure(as_mod == GrothObject::snd(l.clone()).is_ok(), || format!("level {i}: Mod and Snd disagree on the object"))?;
    }
    for c in [lift(b.log_chain(limits))?, lift(b.snd_chain(limits))?] {
        for (i, m) in c.morphisms.iter().enumerate() {
            let (l1, l2) = (logic_of(m.source()), logic_of(m.target()));
            let as_mod = is_model(l1.theory(), l1.structure(), limits)
                && is_model(l2.theory(), l2.structure(), limits)
                && lift(theory_geq(l1.theory(), &lift(inv_flow(m.sigma(), l2.theory(), limits))?, limits))?
                && m.fiber().expect("log").is_valid(l1.structure(), &lift(inverse_image_classification(m.sigma(), l2.structure()))?);
            let as_snd = match (GrothObject::snd(l1), GrothObject::snd(l2)) {
                (Ok(a), Ok(d)) => GrothMorphism::new(a, d, m.sigma().clone(), m.fiber().cloned(), limits).is_ok(),
                _ => false,
            };
            ensure(as_mod == as_snd, || format!("morphism {i}: Mod says {as_mod}, Snd says {as_snd}"))?;
        }
    }
    Ok(())
}
