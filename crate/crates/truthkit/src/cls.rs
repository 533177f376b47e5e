//! Finite classifications, type maps, infomorphisms and fiber morphisms.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A subset of a [`TypeSet`], bit `i` standing for the `i`-th id in sorted order.
pub type Mask = u64;

/// Largest type set representable with [`Mask`].
pub const MAX_TYPES: usize = 64;

/// A finite, duplicate-free set of type identifiers, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeSet {
    ids: Vec<String>,
}

impl TypeSet {
    pub fn new<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(w[0].clone()));
        }
        if ids.len() > MAX_TYPES {
            return Err(Error::cap("types in a type set", ids.len() as u128, MAX_TYPES as u128));
        }
        Ok(TypeSet { ids })
    }

    pub fn empty() -> Self {
        TypeSet::default()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|s| s.as_str().cmp(id)).ok()
    }

    pub fn full_mask(&self) -> Mask {
        if self.ids.len() == MAX_TYPES {
            Mask::MAX
        } else {
            (1 << self.ids.len()) - 1
        }
    }

    pub fn contains_mask(&self, m: Mask) -> bool {
        m & !self.full_mask() == 0
    }

    pub fn mask_of<I, S>(&self, ids: I) -> Result<Mask>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut m = 0;
        for id in ids {
            let id = id.as_ref();
            let i = self
                .index_of(id)
                .ok_or_else(|| Error::DanglingReference(format!("type {id:?} is not declared")))?;
            m |= 1 << i;
        }
        Ok(m)
    }

    pub fn ids_of(&self, m: Mask) -> Vec<&str> {
        (0..self.len()).filter(|i| m >> i & 1 == 1).map(|i| self.id(i)).collect()
    }

    /// Canonical instance id of a subset: `{p,q}`, `{}` for the empty set.
    pub fn subset_id(&self, m: Mask) -> String {
        format!("{{{}}}", self.ids_of(m).join(","))
    }

    /// All subsets, as masks in increasing numeric order.
    pub fn subsets(&self, limits: &Limits) -> Result<std::ops::Range<u64>> {
        limits.check_subsets(self.len())?;
        Ok(0..(1u64 << self.len()))
    }
}

fn sorted_unique(ids: Vec<String>, what: &str) -> Result<Vec<String>> {
    let mut ids = ids;
    ids.sort();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateId(format!("{what} {:?}", w[0])));
    }
    Ok(ids)
}

/// A finite classification `<X, Y, |=>`, stored as one state description per instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Classification {
    types: TypeSet,
    instances: Vec<String>,
    states: Vec<Mask>,
}

impl Classification {
    pub fn new<I, S, J, A, B>(types: TypeSet, instances: I, incidence: J) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        J: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let instances = sorted_unique(instances.into_iter().map(Into::into).collect(), "instance")?;
        let mut states = vec![0; instances.len()];
        let mut seen = BTreeSet::new();
        for (x, y) in incidence {
            let (x, y) = (x.as_ref(), y.as_ref());
            let i = instances
                .binary_search_by(|s| s.as_str().cmp(x))
                .map_err(|_| Error::DanglingReference(format!("incidence names undeclared instance {x:?}")))?;
            let t = types
                .index_of(y)
                .ok_or_else(|| Error::DanglingReference(format!("incidence names undeclared type {y:?}")))?;
            if !seen.insert((i, t)) {
                return Err(Error::DuplicateId(format!("incidence pair ({x:?}, {y:?})")));
            }
            states[i] |= 1 << t;
        }
        Ok(Classification { types, instances, states })
    }

    /// Builds a classification directly from state descriptions.
    pub fn from_states<I, S>(types: TypeSet, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Mask)>,
        S: Into<String>,
    {
        let mut rows: Vec<(String, Mask)> = rows.into_iter().map(|(x, m)| (x.into(), m)).collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateId(format!("instance {:?}", w[0].0)));
        }
        if let Some((x, _)) = rows.iter().find(|(_, m)| !types.contains_mask(*m)) {
            return Err(Error::DanglingReference(format!("state of {x:?} names undeclared types")));
        }
        let (instances, states) = rows.into_iter().unzip();
        Ok(Classification { types, instances, states })
    }

    pub fn empty(types: TypeSet) -> Self {
        Classification { types, instances: Vec::new(), states: Vec::new() }
    }

    pub fn types(&self) -> &TypeSet {
        &self.types
    }

    pub fn instances(&self) -> &[String] {
        &self.instances
    }

    pub fn states(&self) -> &[Mask] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn index_of(&self, x: &str) -> Option<usize> {
        self.instances.binary_search_by(|s| s.as_str().cmp(x)).ok()
    }

    pub fn state(&self, i: usize) -> Mask {
        self.states[i]
    }

    pub fn state_mask(&self, x: &str) -> Result<Mask> {
        self.index_of(x)
            .map(|i| self.states[i])
            .ok_or_else(|| Error::UnknownInstance(x.to_string()))
    }

    pub fn holds(&self, x: &str, y: &str) -> bool {
        match (self.index_of(x), self.types.index_of(y)) {
            (Some(i), Some(t)) => self.states[i] >> t & 1 == 1,
            _ => false,
        }
    }

    /// Incidence pairs in (instance, type) order.
    pub fn incidence(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (x, &m) in self.instances.iter().zip(&self.states) {
            for y in self.types.ids_of(m) {
                out.push((x.clone(), y.to_string()));
            }
        }
        out
    }

    pub fn distinct_states(&self) -> BTreeSet<Mask> {
        self.states.iter().copied().collect()
    }

    /// Sub-classification on the instances whose state passes `keep`.
    pub fn restrict(&self, keep: impl Fn(Mask) -> bool) -> Classification {
        let (instances, states) = self
            .instances
            .iter()
            .zip(&self.states)
            .filter(|(_, &m)| keep(m))
            .map(|(x, &m)| (x.clone(), m))
            .unzip();
        Classification { types: self.types.clone(), instances, states }
    }
}

pub fn make_classification<I, S, J, A, B>(types: TypeSet, instances: I, incidence: J) -> Result<Classification>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
    J: IntoIterator<Item = (A, B)>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    Classification::new(types, instances, incidence)
}

/// `tau(x) = { y | x |= y }`, as sorted type ids.
pub fn state_description(m: &Classification, x: &str) -> Result<Vec<String>> {
    let s = m.state_mask(x)?;
    Ok(m.types.ids_of(s).into_iter().map(String::from).collect())
}

/// The classification of all subsets of `y`, each classified by its members.
pub fn power_classification(y: &TypeSet, limits: &Limits) -> Result<Classification> {
    let subsets = y.subsets(limits)?;
    Classification::from_states(y.clone(), subsets.map(|s| (y.subset_id(s), s)))
}

/// Classification over a subset family: instance `S` is classified by the members of `S`.
pub fn subset_classification(y: &TypeSet, subsets: impl IntoIterator<Item = Mask>) -> Classification {
    let set: BTreeSet<Mask> = subsets.into_iter().collect();
    Classification::from_states(y.clone(), set.into_iter().map(|s| (y.subset_id(s), s)))
        .expect("subset ids are distinct")
}

pub fn is_separated(m: &Classification) -> bool {
    m.distinct_states().len() == m.len()
}

/// A total function between type sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeMap {
    source: TypeSet,
    target: TypeSet,
    image: Vec<usize>,
}

impl TypeMap {
    pub fn new<I, A, B>(source: TypeSet, target: TypeSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut image = vec![None; source.len()];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = source
                .index_of(a)
                .ok_or_else(|| Error::DanglingReference(format!("type map source {a:?} is not declared")))?;
            let j = target
                .index_of(b)
                .ok_or_else(|| Error::DanglingReference(format!("type map target {b:?} is not declared")))?;
            if image[i].replace(j).is_some() {
                return Err(Error::DuplicateId(format!("type map entry for {a:?}")));
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, j)| j.ok_or_else(|| Error::DanglingReference(format!("type map is undefined on {:?}", source.id(i)))))
            .collect::<Result<_>>()?;
        Ok(TypeMap { source, target, image })
    }

    pub fn from_indices(source: TypeSet, target: TypeSet, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.len() || image.iter().any(|&j| j >= target.len()) {
            return Err(Error::DanglingReference("type map index out of range".into()));
        }
        Ok(TypeMap { source, target, image })
    }

    pub fn identity(y: &TypeSet) -> Self {
        TypeMap { source: y.clone(), target: y.clone(), image: (0..y.len()).collect() }
    }

    pub fn source(&self) -> &TypeSet {
        &self.source
    }

    pub fn target(&self) -> &TypeSet {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, id: &str) -> Option<&str> {
        self.source.index_of(id).map(|i| self.target.id(self.image[i]))
    }

    pub fn pairs(&self) -> Vec<(&str, &str)> {
        self.image.iter().enumerate().map(|(i, &j)| (self.source.id(i), self.target.id(j))).collect()
    }

    /// Elementwise image `f[S]`.
    pub fn image_of(&self, m: Mask) -> Mask {
        let mut out = 0;
        for (i, &j) in self.image.iter().enumerate() {
            if m >> i & 1 == 1 {
                out |= 1 << j;
            }
        }
        out
    }

    /// Preimage `f^-1(S)`.
    pub fn preimage(&self, m: Mask) -> Mask {
        let mut out = 0;
        for (i, &j) in self.image.iter().enumerate() {
            if m >> j & 1 == 1 {
                out |= 1 << i;
            }
        }
        out
    }

    /// `self` then `next`.
    pub fn then(&self, next: &TypeMap) -> Result<TypeMap> {
        if self.target != next.source {
            return Err(Error::NonComposable("type map target differs from next source".into()));
        }
        Ok(TypeMap {
            source: self.source.clone(),
            target: next.target.clone(),
            image: self.image.iter().map(|&j| next.image[j]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.image.iter().collect::<BTreeSet<_>>().len() == self.image.len()
    }
}

/// Reindexes `m2` along `f`: same instances, `x |= y1` iff `x |= f(y1)`.
pub fn inverse_image_classification(f: &TypeMap, m2: &Classification) -> Result<Classification> {
    if f.target() != m2.types() {
        return Err(Error::DanglingReference("type map target is not the classification's type set".into()));
    }
    Ok(Classification {
        types: f.source().clone(),
        instances: m2.instances.clone(),
        states: m2.states.iter().map(|&s| f.preimage(s)).collect(),
    })
}

/// An instance map `X' -> X` for a fiber morphism `M -> M'` over one type set.
/// `map[i']` is the index in `M` of the image of the `i'`-th instance of `M'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberMorphism {
    map: Vec<usize>,
}

impl FiberMorphism {
    pub fn from_indices(map: Vec<usize>) -> Self {
        FiberMorphism { map }
    }

    /// Builds from named pairs `x' -> x` and validates against both ends.
    pub fn from_named<I, A, B>(m: &Classification, m2: &Classification, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut map = vec![None; m2.len()];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i2 = m2.index_of(a).ok_or_else(|| Error::UnknownInstance(a.to_string()))?;
            let i = m.index_of(b).ok_or_else(|| Error::UnknownInstance(b.to_string()))?;
            if map[i2].replace(i).is_some() {
                return Err(Error::DuplicateId(format!("instance map entry for {a:?}")));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::IllFormedMorphism(format!("instance map undefined on {:?}", m2.instances[i]))))
            .collect::<Result<Vec<_>>>()?;
        let f = FiberMorphism { map };
        if !f.is_valid(m, m2) {
            return Err(Error::IllFormedMorphism("instance map does not preserve state descriptions".into()));
        }
        Ok(f)
    }

    pub fn identity(m: &Classification) -> Self {
        FiberMorphism { map: (0..m.len()).collect() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.map
    }

    /// `tau(map(x')) = tau'(x')` for all `x'`.
    pub fn is_valid(&self, m: &Classification, m2: &Classification) -> bool {
        m.types == m2.types
            && self.map.len() == m2.len()
            && self.map.iter().zip(&m2.states).all(|(&i, &s)| i < m.len() && m.states[i] == s)
    }

    /// `self: M -> M'` then `next: M' -> M''`; instance maps compose the other way.
    pub fn then(&self, next: &FiberMorphism) -> FiberMorphism {
        FiberMorphism { map: next.map.iter().map(|&j| self.map[j]).collect() }
    }

    pub fn to_named(&self, m: &Classification, m2: &Classification) -> BTreeMap<String, String> {
        self.map
            .iter()
            .enumerate()
            .map(|(i2, &i)| (m2.instances[i2].clone(), m.instances[i].clone()))
            .collect()
    }
}

/// All fiber morphisms `M -> M'`, in lexicographic order of instance maps.
pub fn fiber_morphisms(m: &Classification, m2: &Classification, limits: &Limits) -> Result<Vec<FiberMorphism>> {
    if m.types != m2.types {
        return Err(Error::TagMismatch { expected: "classifications over one type set".into(), found: "different type sets".into() });
    }
    let mut by_state: BTreeMap<Mask, Vec<usize>> = BTreeMap::new();
    for (i, &s) in m.states.iter().enumerate() {
        by_state.entry(s).or_default().push(i);
    }
    let mut choices: Vec<&[usize]> = Vec::with_capacity(m2.len());
    let mut space: u128 = 1;
    for s in &m2.states {
        let c = by_state.get(s).map(|v| v.as_slice()).unwrap_or(&[]);
        if c.is_empty() {
            return Ok(Vec::new());
        }
        space = space.saturating_mul(c.len() as u128);
        if space > limits.morphism_search {
            return Err(Error::cap("instance maps to search", space, limits.morphism_search));
        }
        choices.push(c);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        out.push(FiberMorphism { map: pick.iter().zip(&choices).map(|(&k, c)| c[k]).collect() });
        let mut k = choices.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// True when at most one fiber morphism runs `M -> M'`.
pub fn parallel_morphisms_coincide(m: &Classification, m2: &Classification, limits: &Limits) -> Result<bool> {
    Ok(fiber_morphisms(m, m2, limits)?.len() <= 1)
}

/// The state-description map of `a`, as a fiber morphism `power(Y) -> a`.
pub fn state_map(a: &Classification, power: &Classification) -> Result<FiberMorphism> {
    let map = a
        .states
        .iter()
        .map(|&s| power.index_of(&a.types.subset_id(s)).ok_or_else(|| Error::UnknownInstance(a.types.subset_id(s))))
        .collect::<Result<Vec<_>>>()?;
    let f = FiberMorphism { map };
    if !f.is_valid(power, a) {
        return Err(Error::IllFormedMorphism("target is not a subset classification over the same types".into()));
    }
    Ok(f)
}

/// An infomorphism `source <=> target`: types forward, instances backward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infomorphism {
    source: Classification,
    target: Classification,
    type_map: TypeMap,
    instance_map: Vec<usize>,
}

impl Infomorphism {
    pub fn new(source: Classification, target: Classification, type_map: TypeMap, instance_map: Vec<usize>) -> Result<Self> {
        if type_map.source() != source.types() || type_map.target() != target.types() {
            return Err(Error::IllFormedMorphism("type map does not run between the classifications' type sets".into()));
        }
        if instance_map.len() != target.len() || instance_map.iter().any(|&i| i >= source.len()) {
            return Err(Error::IllFormedMorphism("instance map is not total on the target's instances".into()));
        }
        for (x2, &x1) in instance_map.iter().enumerate() {
            if source.states[x1] != type_map.preimage(target.states[x2]) {
                return Err(Error::IllFormedMorphism(format!(
                    "fundamental condition fails at instance {:?}",
                    target.instances[x2]
                )));
            }
        }
        Ok(Infomorphism { source, target, type_map, instance_map })
    }

    pub fn source(&self) -> &Classification {
        &self.source
    }

    pub fn target(&self) -> &Classification {
        &self.target
    }

    pub fn type_map(&self) -> &TypeMap {
        &self.type_map
    }

    pub fn instance_map(&self) -> &[usize] {
        &self.instance_map
    }

    pub fn then(&self, next: &Infomorphism) -> Result<Infomorphism> {
        if self.target != next.source {
            return Err(Error::NonComposable("infomorphism target differs from next source".into()));
        }
        let type_map = self.type_map.then(&next.type_map)?;
        let instance_map = next.instance_map.iter().map(|&j| self.instance_map[j]).collect();
        Infomorphism::new(self.source.clone(), next.target.clone(), type_map, instance_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ys(ids: &[&str]) -> TypeSet {
        TypeSet::new(ids.iter().copied()).unwrap()
    }

    fn m0() -> Classification {
        Classification::new(ys(&["p", "q"]), ["1", "2", "3"], [("1", "p"), ("2", "p"), ("2", "q"), ("3", "q")]).unwrap()
    }

    #[test]
    fn constructor_echoes_input() {
        let m = m0();
        assert_eq!(m.instances(), ["1", "2", "3"]);
        assert_eq!(m.incidence().len(), 4);
        assert!(m.holds("2", "q"));
        assert!(!m.holds("1", "q"));
    }

    #[test]
    fn empty_classification() {
        let m = Classification::new(TypeSet::empty(), Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap();
        assert!(m.is_empty());
        assert!(m.types().is_empty());
    }

    #[test]
    fn dangling_and_duplicates() {
        let e = Classification::new(ys(&["p"]), ["1"], [("1", "z")]).unwrap_err();
        assert_eq!(e.kind(), "DanglingReference");
        let e = Classification::new(ys(&["p"]), ["1", "1"], Vec::<(&str, &str)>::new()).unwrap_err();
        assert_eq!(e.kind(), "DuplicateId");
        let e = Classification::new(ys(&["p"]), ["1"], [("1", "p"), ("1", "p")]).unwrap_err();
        assert_eq!(e.kind(), "DuplicateId");
        assert_eq!(TypeSet::new(["p", "p"]).unwrap_err().kind(), "DuplicateId");
    }

    #[test]
    fn state_descriptions() {
        assert_eq!(state_description(&m0(), "2").unwrap(), ["p", "q"]);
        assert_eq!(state_description(&m0(), "1").unwrap(), ["p"]);
        let empty = Classification::empty(ys(&["p"]));
        assert_eq!(state_description(&empty, "x").unwrap_err().kind(), "UnknownInstance");
    }

    #[test]
    fn power_classification_basics() {
        let p = power_classification(&ys(&["p", "q"]), &Limits::default()).unwrap();
        assert_eq!(p.instances(), ["{p,q}", "{p}", "{q}", "{}"]);
        assert!(p.holds("{p,q}", "p") && p.holds("{p,q}", "q"));
        let p0 = power_classification(&TypeSet::empty(), &Limits::default()).unwrap();
        assert_eq!(p0.instances(), ["{}"]);
        assert!(p0.incidence().is_empty());
        let big = TypeSet::new((0..13).map(|i| format!("t{i}"))).unwrap();
        assert_eq!(power_classification(&big, &Limits::default()).unwrap_err().kind(), "SizeCapExceeded");
    }

    #[test]
    fn inverse_image_along_constant_map() {
        let f = TypeMap::new(ys(&["p", "q"]), ys(&["r"]), [("p", "r"), ("q", "r")]).unwrap();
        let n = Classification::new(ys(&["r"]), ["a"], [("a", "r")]).unwrap();
        let pulled = inverse_image_classification(&f, &n).unwrap();
        assert!(pulled.holds("a", "p") && pulled.holds("a", "q"));
        let n_off = Classification::new(ys(&["r"]), ["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(inverse_image_classification(&f, &n_off).unwrap().incidence().is_empty());
        let id = TypeMap::identity(m0().types());
        assert_eq!(inverse_image_classification(&id, &m0()).unwrap(), m0());
    }

    #[test]
    fn separation() {
        assert!(is_separated(&m0()));
        let dup = Classification::new(ys(&["p"]), ["1", "2"], [("1", "p"), ("2", "p")]).unwrap();
        assert!(!is_separated(&dup));
        assert!(is_separated(&power_classification(&ys(&["p", "q"]), &Limits::default()).unwrap()));
    }

    #[test]
    fn fiber_morphism_enumeration() {
        let l = Limits::default();
        let all = fiber_morphisms(&m0(), &m0(), &l).unwrap();
        assert_eq!(all, vec![FiberMorphism::identity(&m0())]);
        let one_p = Classification::new(ys(&["p", "q"]), ["a"], [("a", "p")]).unwrap();
        let fs = fiber_morphisms(&m0(), &one_p, &l).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].to_named(&m0(), &one_p)["a"], "1");
        let one_empty = Classification::new(ys(&["p", "q"]), ["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(fiber_morphisms(&m0(), &one_empty, &l).unwrap().is_empty());
    }

    #[test]
    fn morphism_search_cap() {
        let y = ys(&["p"]);
        let three = Classification::from_states(y.clone(), (0..3).map(|i| (format!("x{i}"), 0))).unwrap();
        assert_eq!(fiber_morphisms(&three, &three, &Limits::default()).unwrap().len(), 27);
        let tight = Limits { morphism_search: 26, ..Limits::default() };
        assert_eq!(fiber_morphisms(&three, &three, &tight).unwrap_err().kind(), "SizeCapExceeded");
        let ten = Classification::from_states(y, (0..10).map(|i| (format!("x{i}"), 0))).unwrap();
        assert!(fiber_morphisms(&ten, &ten, &Limits::default()).is_err());
    }

    #[test]
    fn state_map_into_power() {
        let l = Limits::default();
        let p = power_classification(m0().types(), &l).unwrap();
        let tau = state_map(&m0(), &p).unwrap();
        assert_eq!(fiber_morphisms(&p, &m0(), &l).unwrap(), vec![tau]);
    }

    #[test]
    fn infomorphism_fundamental_condition() {
        let f = TypeMap::new(ys(&["p", "q"]), ys(&["r"]), [("p", "r"), ("q", "r")]).unwrap();
        let n = Classification::new(ys(&["r"]), ["a"], [("a", "r")]).unwrap();
        assert!(Infomorphism::new(m0(), n.clone(), f.clone(), vec![1]).is_ok());
        assert_eq!(Infomorphism::new(m0(), n, f, vec![0]).unwrap_err().kind(), "IllFormedMorphism");
    }
}
