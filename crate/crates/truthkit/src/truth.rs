//! Intent, extent, satisfaction, logics and their lifts over classifications.

use std::collections::BTreeSet;

use crate::cls::{
    fiber_morphisms, inverse_image_classification, subset_classification, Classification, FiberMorphism, Mask, TypeMap,
    TypeSet,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::theory::{all_sequents, dir_flow, inv_flow_generators, theory_geq, Sequent, Theory};

/// A triple `(Y, M, T)` with `M` and `T` over the same type set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Logic {
    structure: Classification,
    theory: Theory,
}

impl Logic {
    pub fn new(structure: Classification, theory: Theory) -> Result<Self> {
        if structure.types() != theory.types() {
            return Err(Error::TagMismatch {
                expected: "classification and theory over one type set".into(),
                found: "different type sets".into(),
            });
        }
        Ok(Logic { structure, theory })
    }

    pub fn types(&self) -> &TypeSet {
        self.structure.types()
    }

    pub fn structure(&self) -> &Classification {
        &self.structure
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn is_sound(&self) -> bool {
        holds_everywhere(&self.structure, &self.theory)
    }
}

/// A logic whose structure satisfies its theory.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SoundLogic(Logic);

impl SoundLogic {
    pub fn new(logic: Logic) -> Result<Self> {
        if !logic.is_sound() {
            return Err(Error::NotAModel);
        }
        Ok(SoundLogic(logic))
    }

    pub fn logic(&self) -> &Logic {
        &self.0
    }

    pub fn into_logic(self) -> Logic {
        self.0
    }
}

/// `(sigma, f) : L1 -> L2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicMorphism {
    pub sigma: TypeMap,
    pub fiber: FiberMorphism,
}

/// The unique fiber morphism `extent(T) -> M` of a model `M` of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelWitness {
    pub extent: Classification,
    pub morphism: FiberMorphism,
}

impl ModelWitness {
    /// Instance of `M` to the subset instance it is sent to.
    pub fn named(&self, m: &Classification) -> std::collections::BTreeMap<String, String> {
        self.morphism.to_named(&self.extent, m)
    }
}

fn holds_everywhere(m: &Classification, t: &Theory) -> bool {
    m.states().iter().all(|&s| t.admits(s))
}

/// The theory of `M`, as generators whose closure is exactly `int(M)`.
pub fn intent(m: &Classification, limits: &Limits) -> Result<Theory> {
    let states = m.distinct_states();
    Theory::from_extent(m.types(), |s| states.contains(&s), limits)
}

/// `q ∈ int(M)`: every state description satisfies `q`.
pub fn intent_contains(m: &Classification, q: &Sequent) -> bool {
    m.states().iter().all(|&s| q.holds_in(s))
}

/// Every sequent of `int(M)`.
pub fn intent_enumerate(m: &Classification, limits: &Limits) -> Result<Theory> {
    let qs: Vec<Sequent> = all_sequents(m.types(), limits)?.filter(|q| intent_contains(m, q)).collect();
    Theory::new(m.types().clone(), qs)
}

/// The classification of satisfying subsets.
pub fn extent(t: &Theory, limits: &Limits) -> Result<Classification> {
    Ok(subset_classification(t.types(), t.extent_masks(limits)?))
}

/// Every state description satisfies every generator.
pub fn satisfies(m: &Classification, t: &Theory) -> Result<bool> {
    Logic::new(m.clone(), t.clone()).map(|l| l.is_sound())
}

/// The normal instances `X^|-`.
pub fn sum_normal_instances(l: &Logic) -> Classification {
    l.structure.restrict(|s| l.theory.admits(s))
}

pub fn nat_logic(m: &Classification, limits: &Limits) -> Result<SoundLogic> {
    SoundLogic::new(Logic::new(m.clone(), intent(m, limits)?)?)
}

/// `(ext T, T)`.
pub fn theory_logic(t: &Theory, limits: &Limits) -> Result<Logic> {
    Logic::new(extent(t, limits)?, t.clone())
}

/// `(M, int(M) ∨ T)`, with `∨` the least upper bound in the `>=` order:
/// its extent is `states(M) ∪ ext(T)`.
pub fn join_logic(l: &Logic, limits: &Limits) -> Result<SoundLogic> {
    let states = l.structure.distinct_states();
    let t = &l.theory;
    let theory = Theory::from_extent(l.types(), |s| states.contains(&s) || t.admits(s), limits)?;
    SoundLogic::new(Logic::new(l.structure.clone(), theory)?)
}

/// Sends each instance of `M` to its state description in `extent(T)`.
pub fn model_initial_morphism(t: &Theory, m: &Classification, limits: &Limits) -> Result<ModelWitness> {
    if !satisfies(m, t)? {
        return Err(Error::NotAModel);
    }
    let ext = extent(t, limits)?;
    let map = m
        .states()
        .iter()
        .map(|&s| ext.index_of(&t.types().subset_id(s)).expect("model states lie in the extent"))
        .collect();
    Ok(ModelWitness { extent: ext, morphism: FiberMorphism::from_indices(map) })
}

/// `f` is a fiber morphism `L1.M -> sigma^*(L2.M)` and `T1 >= inv(sigma)(T2)`.
pub fn check_logic_morphism(sigma: &TypeMap, f: &FiberMorphism, l1: &Logic, l2: &Logic, limits: &Limits) -> Result<bool> {
    if sigma.source() != l1.types() || sigma.target() != l2.types() {
        return Ok(false);
    }
    let pulled = inverse_image_classification(sigma, &l2.structure)?;
    if !f.is_valid(&l1.structure, &pulled) {
        return Ok(false);
    }
    theory_geq(&l1.theory, &inv_flow_generators(sigma, &l2.theory, limits)?, limits)
}

/// `(sigma^*(M2) |= T1, M2 |= sigma(T1))`; the two always agree.
pub fn satisfaction_invariance(sigma: &TypeMap, m2: &Classification, t1: &Theory) -> Result<(bool, bool)> {
    let left = satisfies(&inverse_image_classification(sigma, m2)?, t1)?;
    let right = satisfies(m2, &dir_flow(sigma, t1)?)?;
    Ok((left, right))
}

/// Distinct state descriptions of `M`, the instances of `extent(intent(M))`.
pub fn state_family(m: &Classification) -> BTreeSet<Mask> {
    m.distinct_states()
}

/// Every fiber morphism `extent(T) -> M`.
pub fn extent_morphisms(t: &Theory, m: &Classification, limits: &Limits) -> Result<Vec<FiberMorphism>> {
    fiber_morphisms(&extent(t, limits)?, m, limits)
}
