//! Naive set-based semantics, independent of the bitmask implementation.
//! Values cross over only through their JSON forms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use truthkit::cls::{Classification, TypeMap};
use truthkit::io::{ClassificationJson, TheoryJson, TypeMapJson};
use truthkit::theory::Theory;

pub type Set = BTreeSet<String>;
pub type Seq = (Set, Set);

pub fn subsets(types: &[String]) -> Vec<Set> {
    let mut out = vec![Set::new()];
    for t in types {
        let more: Vec<Set> = out
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.insert(t.clone());
                s
            })
            .collect();
        out.extend(more);
    }
    out
}

pub fn holds(state: &Set, (lhs, rhs): &Seq) -> bool {
    !lhs.is_subset(state) || !state.is_disjoint(rhs)
}

pub struct NaiveTheory {
    pub types: Vec<String>,
    pub sequents: Vec<Seq>,
}

pub fn theory(t: &Theory) -> NaiveTheory {
    let j = TheoryJson::from_domain(t);
    NaiveTheory {
        types: j.types,
        sequents: j.sequents.into_iter().map(|q| (q.lhs.into_iter().collect(), q.rhs.into_iter().collect())).collect(),
    }
}

pub struct NaiveCls {
    pub types: Vec<String>,
    pub states: BTreeMap<String, Set>,
}

pub fn cls(m: &Classification) -> NaiveCls {
    let j = ClassificationJson::from_domain(m);
    let mut states: BTreeMap<String, Set> = j.instances.iter().map(|x| (x.clone(), Set::new())).collect();
    for (x, y) in j.incidence {
        states.get_mut(&x).unwrap().insert(y);
    }
    NaiveCls { types: j.types, states }
}

pub fn map(f: &TypeMap) -> BTreeMap<String, String> {
    TypeMapJson::from_domain(f).map
}

pub fn image(f: &BTreeMap<String, String>, s: &Set) -> Set {
    s.iter().map(|x| f[x].clone()).collect()
}

pub fn models(t: &NaiveTheory) -> Vec<Set> {
    subsets(&t.types).into_iter().filter(|s| t.sequents.iter().all(|q| holds(s, q))).collect()
}

pub fn all_sequents(types: &[String]) -> Vec<Seq> {
    let ss = subsets(types);
    ss.iter().flat_map(|a| ss.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

pub fn closure(t: &NaiveTheory) -> BTreeSet<Seq> {
    let ms = models(t);
    all_sequents(&t.types).into_iter().filter(|q| ms.iter().all(|s| holds(s, q))).collect()
}

pub fn intent(m: &NaiveCls) -> BTreeSet<Seq> {
    all_sequents(&m.types).into_iter().filter(|q| m.states.values().all(|s| holds(s, q))).collect()
}

pub fn satisfies(m: &NaiveCls, t: &NaiveTheory) -> bool {
    m.states.values().all(|s| t.sequents.iter().all(|q| holds(s, q)))
}

/// `T1 >= T2` iff `T1• ⊆ T2•`.
pub fn geq(t1: &NaiveTheory, t2: &NaiveTheory) -> bool {
    closure(t1).is_subset(&closure(t2))
}

pub fn dir(f: &BTreeMap<String, String>, target: &[String], t: &NaiveTheory) -> NaiveTheory {
    NaiveTheory { types: target.to_vec(), sequents: t.sequents.iter().map(|(a, b)| (image(f, a), image(f, b))).collect() }
}

/// Every sequent over the source whose image is entailed by `t2`.
pub fn inv(f: &BTreeMap<String, String>, source: &[String], t2: &NaiveTheory) -> NaiveTheory {
    let c = closure(t2);
    let sequents = all_sequents(source).into_iter().filter(|(a, b)| c.contains(&(image(f, a), image(f, b)))).collect();
    NaiveTheory { types: source.to_vec(), sequents }
}

/// `x |= y` in the pullback iff `x |= f(y)`.
pub fn pullback(f: &BTreeMap<String, String>, source: &[String], m2: &NaiveCls) -> NaiveCls {
    let states = m2
        .states
        .iter()
        .map(|(x, s)| (x.clone(), source.iter().filter(|y| s.contains(&f[*y])).cloned().collect()))
        .collect();
    NaiveCls { types: source.to_vec(), states }
}

/// Number of instance maps `M' -> M` (each instance of `M'` to one of `M`) preserving states.
pub fn fiber_map_count(m: &NaiveCls, m2: &NaiveCls) -> usize {
    m2.states.values().map(|s| m.states.values().filter(|t| *t == s).count()).product()
}

/// The classification of models of `t`, as state sets.
pub fn extent_states(t: &NaiveTheory) -> NaiveCls {
    let states = models(t).into_iter().enumerate().map(|(i, s)| (format!("{i}"), s)).collect();
    NaiveCls { types: t.types.clone(), states }
}
