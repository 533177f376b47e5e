use rand::Rng;
use serde_json::{json, Value};

use crate::cls::{inverse_image_classification, Classification, FiberMorphism, TypeMap, TypeSet};
use crate::error::Result;
use crate::gen;
use crate::io::{to_value, ClassificationJson, TheoryJson, TypeMapJson};
use crate::limits::Limits;
use crate::theory::{inv_flow_generators, ClosureOracle, Sequent, Theory};
use crate::truth::{sum_normal_instances, Logic};

use super::{GrothMorphism, GrothObject};

/// Raw material for one law check: four languages `Y0 -> Y1 -> Y2 -> Y3`
/// with one classification and one theory over each. Nothing is assumed
/// about how the pieces relate; valid objects and morphisms are derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub label: String,
    pub types: Vec<TypeSet>,
    pub maps: Vec<TypeMap>,
    pub structures: Vec<Classification>,
    pub theories: Vec<Theory>,
}

/// Objects `o0 -> o1 -> o2 -> o3` with `morphisms[i] : objects[i] -> objects[i + 1]`.
#[derive(Debug, Clone)]
pub struct Chain {
    pub objects: Vec<GrothObject>,
    pub morphisms: Vec<GrothMorphism>,
}

pub const LEVELS: usize = 4;

impl Bundle {
    pub fn random(r: &mut impl Rng, max_types: usize, label: impl Into<String>) -> Bundle {
        let max_types = max_types.max(1);
        let prefixes = ["", "b", "c", "d"];
        let types: Vec<TypeSet> =
            prefixes.iter().map(|p| gen::type_set(r.gen_range(1..=max_types), p)).collect();
        let maps = (0..LEVELS - 1).map(|i| gen::type_map(r, &types[i], &types[i + 1])).collect();
        let structures = types.iter().map(|y| gen::classification(r, y, 3)).collect();
        let theories = types.iter().map(|y| gen::theory(r, y, 3)).collect();
        Bundle { label: label.into(), types, maps, structures, theories }
    }

    /// The running example: `M0` and `p |- q` over `{p, q}`, pushed to `{r}`.
    pub fn fixture() -> Bundle {
        let pq = TypeSet::new(["p", "q"]).unwrap();
        let r = TypeSet::new(["r"]).unwrap();
        let m0 = Classification::new(pq.clone(), ["1", "2", "3"], [("1", "p"), ("2", "p"), ("2", "q"), ("3", "q")]).unwrap();
        let n = Classification::new(r.clone(), ["a", "b"], [("a", "r")]).unwrap();
        let constant = TypeMap::new(pq.clone(), r.clone(), [("p", "r"), ("q", "r")]).unwrap();
        Bundle {
            label: "fixture".into(),
            types: vec![pq.clone(), pq.clone(), r.clone(), r.clone()],
            maps: vec![TypeMap::identity(&pq), constant, TypeMap::identity(&r)],
            structures: vec![m0.clone(), m0, n.clone(), n],
            theories: vec![
                Theory::named::<&str, _>(pq.clone(), &[(&[], &["p", "q"])]).unwrap(),
                Theory::named(pq, &[(&["p"], &["q"])]).unwrap(),
                Theory::named::<&str, _>(r.clone(), &[(&[], &["r"])]).unwrap(),
                Theory::new(r, []).unwrap(),
            ],
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "maps": self.maps.iter().map(|f| to_value(&TypeMapJson::from_domain(f))).collect::<Vec<_>>(),
            "classifications": self.structures.iter().map(|m| to_value(&ClassificationJson::from_domain(m))).collect::<Vec<_>>(),
            "theories": self.theories.iter().map(|t| to_value(&TheoryJson::from_domain(t))).collect::<Vec<_>>(),
        })
    }

    /// Theories `s0 .. s3` with `s_i >= inv(sigma_i)(s_{i+1})`, starting from `top` at level 3.
    fn theory_chain(&self, top: Theory, limits: &Limits) -> Result<Vec<Theory>> {
        let mut out = vec![top];
        for i in (0..LEVELS - 1).rev() {
            let next = out.last().expect("non-empty");
            let oracle = ClosureOracle::new(next, limits)?;
            let sigma = &self.maps[i];
            let mut keep: Vec<Sequent> = self.theories[i]
                .sequents()
                .iter()
                .filter(|q| oracle.entails(&Sequent::new(sigma.image_of(q.lhs), sigma.image_of(q.rhs))))
                .copied()
                .collect();
            keep.extend(inv_flow_generators(sigma, next, limits)?.sequents().iter().step_by(2).copied());
            out.push(Theory::new(self.types[i].clone(), keep)?);
        }
        out.reverse();
        Ok(out)
    }

    /// Classifications `c0 .. c3` with `c_i = sigma_i^*(c_{i+1}) + extra_i`, and the embeddings.
    fn structure_chain(&self, extra: impl Fn(usize) -> Classification) -> Result<(Vec<Classification>, Vec<FiberMorphism>)> {
        let mut cs = vec![extra(LEVELS - 1)];
        let mut fs = Vec::new();
        for i in (0..LEVELS - 1).rev() {
            let next = cs.last().expect("non-empty");
            let pulled = inverse_image_classification(&self.maps[i], next)?;
            let own = extra(i);
            let rows = pulled
                .instances()
                .iter()
                .zip(pulled.states())
                .map(|(x, &s)| (format!("a.{x}"), s))
                .chain(own.instances().iter().zip(own.states()).map(|(x, &s)| (format!("b.{x}"), s)));
            let c = Classification::from_states(self.types[i].clone(), rows)?;
            let f = FiberMorphism::from_named(&c, &pulled, pulled.instances().iter().map(|x| (x.clone(), format!("a.{x}"))))?;
            cs.push(c);
            fs.push(f);
        }
        cs.reverse();
        fs.reverse();
        Ok((cs, fs))
    }

    fn chain(objects: Vec<GrothObject>, maps: &[TypeMap], fibers: Option<Vec<FiberMorphism>>, limits: &Limits) -> Result<Chain> {
        let mut morphisms = Vec::new();
        for i in 0..LEVELS - 1 {
            let f = fibers.as_ref().map(|fs| fs[i].clone());
            morphisms.push(GrothMorphism::new(objects[i].clone(), objects[i + 1].clone(), maps[i].clone(), f, limits)?);
        }
        Ok(Chain { objects, morphisms })
    }

    pub fn lang_chain(&self, limits: &Limits) -> Result<Chain> {
        let objects = self.types.iter().cloned().map(GrothObject::lang).collect();
        Bundle::chain(objects, &self.maps, None, limits)
    }

    pub fn spec_chain(&self, limits: &Limits) -> Result<Chain> {
        let ts = self.theory_chain(self.theories[LEVELS - 1].clone(), limits)?;
        Bundle::chain(ts.into_iter().map(GrothObject::spec).collect(), &self.maps, None, limits)
    }

    pub fn struc_chain(&self, limits: &Limits) -> Result<Chain> {
        let (cs, fs) = self.structure_chain(|i| self.structures[i].clone())?;
        Bundle::chain(cs.into_iter().map(GrothObject::struc).collect(), &self.maps, Some(fs), limits)
    }

    pub fn log_chain(&self, limits: &Limits) -> Result<Chain> {
        let ts = self.theory_chain(self.theories[LEVELS - 1].clone(), limits)?;
        let (cs, fs) = self.structure_chain(|i| self.structures[i].clone())?;
        let objects = cs
            .into_iter()
            .zip(ts)
            .map(|(c, t)| Logic::new(c, t).map(GrothObject::log))
            .collect::<Result<Vec<_>>>()?;
        Bundle::chain(objects, &self.maps, Some(fs), limits)
    }

    /// Like [`Bundle::log_chain`], with every theory trimmed so each level is sound.
    pub fn snd_chain(&self, limits: &Limits) -> Result<Chain> {
        let top_m = &self.structures[LEVELS - 1];
        let top = Theory::new(
            self.types[LEVELS - 1].clone(),
            self.theories[LEVELS - 1].sequents().iter().filter(|q| top_m.states().iter().all(|&s| q.holds_in(s))).copied(),
        )?;
        let ts = self.theory_chain(top, limits)?;
        let normal = |i: usize| sum_normal_instances(&Logic::new(self.structures[i].clone(), ts[i].clone()).expect("same types"));
        let (cs, fs) = self.structure_chain(normal)?;
        let objects = cs
            .into_iter()
            .zip(ts.iter().cloned())
            .map(|(c, t)| GrothObject::snd(Logic::new(c, t)?))
            .collect::<Result<Vec<_>>>()?;
        Bundle::chain(objects, &self.maps, Some(fs), limits)
    }

    /// The raw logic at level `i`; not necessarily sound.
    pub fn logic(&self, i: usize) -> Logic {
        Logic::new(self.structures[i].clone(), self.theories[i].clone()).expect("bundle levels share types")
    }
}
