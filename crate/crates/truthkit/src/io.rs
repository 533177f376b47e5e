//! JSON forms of every domain value, with validating conversions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::cls::{Classification, FiberMorphism, TypeMap, TypeSet};
use crate::dgm::{Diagram, Equation, FiniteCategory, Graph, GraphMorphism, Path};
use crate::error::{Error, Result};
use crate::fol::{DatasetFunctor, DatasetState, FolStructure, Frame};
use crate::theory::{Sequent, Theory};
use crate::truth::Logic;

/// Parses JSON text. Malformed JSON is a `ParseError`; well-formed JSON of
/// the wrong shape is a `ValidationError`. Both carry line and column.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let at = format!("line {} column {}", e.line(), e.column());
        match e.classify() {
            serde_json::error::Category::Data => Error::ValidationError { path: at, message: e.to_string() },
            _ => Error::ParseError(format!("{at}: {e}")),
        }
    })
}

fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::ValidationError { path: inner, message } => Error::ValidationError { path: format!("{path}.{inner}"), message },
        other => Error::ValidationError { path: path.to_string(), message: other.to_string() },
    })
}

fn type_set(path: &str, ids: &[String]) -> Result<TypeSet> {
    at(path, TypeSet::new(ids.iter().cloned()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationJson {
    pub types: Vec<String>,
    pub instances: Vec<String>,
    pub incidence: Vec<(String, String)>,
}

impl ClassificationJson {
    pub fn from_domain(m: &Classification) -> Self {
        ClassificationJson {
            types: m.types().ids().to_vec(),
            instances: m.instances().to_vec(),
            incidence: m.incidence(),
        }
    }

    pub fn to_domain(&self) -> Result<Classification> {
        let types = type_set("types", &self.types)?;
        at("incidence", Classification::new(types, self.instances.iter().cloned(), self.incidence.iter().cloned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequentJson {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryJson {
    pub types: Vec<String>,
    pub sequents: Vec<SequentJson>,
}

impl TheoryJson {
    pub fn from_domain(t: &Theory) -> Self {
        let y = t.types();
        let side = |m| y.ids_of(m).into_iter().map(String::from).collect();
        TheoryJson {
            types: y.ids().to_vec(),
            sequents: t.sequents().iter().map(|q| SequentJson { lhs: side(q.lhs), rhs: side(q.rhs) }).collect(),
        }
    }

    pub fn to_domain(&self) -> Result<Theory> {
        let types = type_set("types", &self.types)?;
        let mut qs = Vec::with_capacity(self.sequents.len());
        for (i, q) in self.sequents.iter().enumerate() {
            qs.push(at(&format!("sequents[{i}]"), Sequent::named(&types, &q.lhs, &q.rhs))?);
        }
        Theory::new(types, qs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogicJson {
    pub types: Vec<String>,
    pub classification: ClassificationJson,
    pub theory: TheoryJson,
}

impl LogicJson {
    pub fn from_domain(l: &Logic) -> Self {
        LogicJson {
            types: l.types().ids().to_vec(),
            classification: ClassificationJson::from_domain(l.structure()),
            theory: TheoryJson::from_domain(l.theory()),
        }
    }

    pub fn to_domain(&self) -> Result<Logic> {
        let types = type_set("types", &self.types)?;
        let m = at("classification", self.classification.to_domain())?;
        let t = at("theory", self.theory.to_domain())?;
        if m.types() != &types || t.types() != &types {
            return Err(Error::ValidationError {
                path: "types".into(),
                message: "classification and theory must use the logic's type set".into(),
            });
        }
        Logic::new(m, t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeMapJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub map: BTreeMap<String, String>,
}

impl TypeMapJson {
    pub fn from_domain(f: &TypeMap) -> Self {
        TypeMapJson {
            source: f.source().ids().to_vec(),
            target: f.target().ids().to_vec(),
            map: f.pairs().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }

    pub fn to_domain(&self) -> Result<TypeMap> {
        let source = type_set("source", &self.source)?;
        let target = type_set("target", &self.target)?;
        at("map", TypeMap::new(source, target, self.map.iter()))
    }
}

/// A fiber morphism as `instance of M' -> instance of M`.
pub fn fiber_morphism_json(f: &FiberMorphism, m: &Classification, m2: &Classification) -> BTreeMap<String, String> {
    f.to_named(m, m2)
}

pub fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("domain JSON is always serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

fn arrows(v: &[ArrowJson]) -> impl Iterator<Item = (String, String, String)> + '_ {
    v.iter().map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub nodes: Vec<String>,
    pub edges: Vec<ArrowJson>,
}

impl GraphJson {
    pub fn from_domain(g: &Graph) -> Self {
        GraphJson {
            nodes: g.nodes().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| ArrowJson { id: e.id.clone(), src: g.nodes()[e.src].clone(), tgt: g.nodes()[e.tgt].clone() })
                .collect(),
        }
    }

    pub fn to_domain(&self) -> Result<Graph> {
        at("edges", Graph::new(self.nodes.iter().cloned(), arrows(&self.edges)))
    }
}

/// A path as its edge ids, or with an explicit start (required when empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathJson {
    Edges(Vec<String>),
    Rooted {
        start: String,
        edges: Vec<String>,
    },
}

impl PathJson {
    pub fn from_domain(p: &Path, g: &Graph) -> Self {
        if p.edges.is_empty() {
            PathJson::Rooted { start: g.nodes()[p.start].clone(), edges: vec![] }
        } else {
            PathJson::Edges(p.edge_ids(g).into_iter().map(String::from).collect())
        }
    }

    pub fn to_domain(&self, g: &Graph) -> Result<Path> {
        let (start, edges) = match self {
            PathJson::Edges(e) => (None, e),
            PathJson::Rooted { start, edges } => (Some(start.as_str()), edges),
        };
        g.path(start, &edges.iter().map(String::as_str).collect::<Vec<_>>())
    }
}

/// An equation as a pair of parallel paths.
pub type EquationJson = (PathJson, PathJson);

pub fn equation_json(q: &Equation, g: &Graph) -> EquationJson {
    (PathJson::from_domain(&q.lhs, g), PathJson::from_domain(&q.rhs, g))
}

pub fn equations_from_json(v: &[EquationJson], g: &Graph) -> Result<Vec<Equation>> {
    v.iter()
        .enumerate()
        .map(|(i, (a, b))| at(&format!("[{i}]"), Equation::new(g, a.to_domain(g)?, b.to_domain(g)?)))
        .collect()
}

/// A category as an explicit table. Without `identities`, an identity `1_X` is
/// added for every object; table entries involving identities may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<ArrowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub composition: Vec<(String, String, String)>,
}

impl CategoryJson {
    pub fn from_domain(c: &FiniteCategory) -> Self {
        let ms = c.morphisms();
        CategoryJson {
            objects: c.objects().to_vec(),
            morphisms: ms
                .iter()
                .map(|m| ArrowJson { id: m.id.clone(), src: c.objects()[m.src].clone(), tgt: c.objects()[m.tgt].clone() })
                .collect(),
            identities: Some(c.identities().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()),
            composition: c
                .composition()
                .into_iter()
                .filter(|(f, g, _)| {
                    let idx = |m: &str| c.morphism_index(m).expect("own morphism");
                    !c.is_identity(idx(f)) && !c.is_identity(idx(g))
                })
                .map(|(f, g, h)| (f.to_string(), g.to_string(), h.to_string()))
                .collect(),
        }
    }

    pub fn to_domain(&self) -> Result<FiniteCategory> {
        let mut morphisms: Vec<(String, String, String)> = arrows(&self.morphisms).collect();
        let identities: Vec<(String, String)> = match &self.identities {
            Some(ids) => ids.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
            None => {
                let ids: Vec<(String, String)> = self.objects.iter().map(|o| (o.clone(), format!("1_{o}"))).collect();
                morphisms.extend(ids.iter().map(|(o, m)| (m.clone(), o.clone(), o.clone())));
                ids
            }
        };
        at("composition", FiniteCategory::new(self.objects.iter().cloned(), morphisms, identities, self.composition.iter().cloned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub graph: GraphJson,
    pub category: CategoryJson,
    pub nodes: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl DiagramJson {
    pub fn from_domain(d: &Diagram) -> Self {
        let (g, c) = (d.graph(), d.target());
        DiagramJson {
            graph: GraphJson::from_domain(g),
            category: CategoryJson::from_domain(c),
            nodes: g.nodes().iter().zip(d.node_map()).map(|(n, &o)| (n.clone(), c.objects()[o].clone())).collect(),
            edges: g.edges().iter().zip(d.edge_map()).map(|(e, &m)| (e.id.clone(), c.morphisms()[m].id.clone())).collect(),
        }
    }

    pub fn to_domain(&self) -> Result<Diagram> {
        let g = at("graph", self.graph.to_domain())?;
        let c = at("category", self.category.to_domain())?;
        Diagram::new(g, c, self.nodes.clone(), self.edges.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphMorphismJson {
    pub source: GraphJson,
    pub target: GraphJson,
    pub nodes: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl GraphMorphismJson {
    pub fn to_domain(&self) -> Result<GraphMorphism> {
        let s = at("source", self.source.to_domain())?;
        let t = at("target", self.target.to_domain())?;
        GraphMorphism::new(s, t, self.nodes.clone(), self.edges.clone())
    }

    pub fn from_domain(h: &GraphMorphism) -> Self {
        let (s, t) = (h.source(), h.target());
        GraphMorphismJson {
            source: GraphJson::from_domain(s),
            target: GraphJson::from_domain(t),
            nodes: s.nodes().iter().zip(h.node_map()).map(|(a, &b)| (a.clone(), t.nodes()[b].clone())).collect(),
            edges: s.edges().iter().zip(h.edge_map()).map(|(a, &b)| (a.id.clone(), t.edges()[b].id.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureJson {
    pub variables: Vec<String>,
    pub entity_classification: ClassificationJson,
    pub relation_classification: ClassificationJson,
    pub reference: BTreeMap<String, String>,
    pub signatures: BTreeMap<String, BTreeMap<String, String>>,
    pub tuples: BTreeMap<String, BTreeMap<String, String>>,
}

impl StructureJson {
    pub fn from_domain(a: &FolStructure) -> Self {
        StructureJson {
            variables: a.variables().iter().cloned().collect(),
            entity_classification: ClassificationJson::from_domain(a.entity()),
            relation_classification: ClassificationJson::from_domain(a.relation()),
            reference: a.reference().clone(),
            signatures: a.signatures().clone(),
            tuples: a.tuples().clone(),
        }
    }

    pub fn to_domain(&self) -> Result<FolStructure> {
        let ent = at("entity_classification", self.entity_classification.to_domain())?;
        let rel = at("relation_classification", self.relation_classification.to_domain())?;
        FolStructure::new(
            self.variables.iter().cloned(),
            ent,
            rel,
            self.reference.clone(),
            self.tuples.clone(),
            self.signatures.clone(),
        )
    }
}

/// A JSON object kept in order, with repeated keys preserved so they can be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Pairs(#[serde(serialize_with = "pairs_as_map")] pub Vec<(String, String)>);

fn pairs_as_map<S: serde::Serializer>(v: &[(String, String)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(v.iter().map(|(a, b)| (a, b)))
}

impl<'de> Deserialize<'de> for Pairs {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Pairs;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object of strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> std::result::Result<Pairs, A::Error> {
                let mut out = Vec::new();
                while let Some(kv) = m.next_entry::<String, String>()? {
                    out.push(kv);
                }
                Ok(Pairs(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub frame: String,
    pub roles: Pairs,
}

impl FrameJson {
    pub fn to_domain(&self) -> Result<Frame> {
        at("roles", Frame::new(self.id.clone(), self.frame.clone(), self.roles.0.iter().cloned()))
    }
}

pub fn frames_from_json(v: &[FrameJson]) -> Result<Vec<Frame>> {
    v.iter().enumerate().map(|(i, f)| at(&format!("[{i}]"), f.to_domain())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetJson {
    pub schema: CategoryJson,
    pub rows: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

impl DatasetJson {
    pub fn from_domain(f: &DatasetState) -> Self {
        DatasetJson {
            schema: CategoryJson::from_domain(f.schema()),
            rows: f.rows().iter().map(|(t, rs)| (t.clone(), rs.iter().cloned().collect())).collect(),
            maps: f.maps().clone(),
        }
    }

    pub fn to_domain(&self) -> Result<DatasetState> {
        let schema = at("schema", self.schema.to_domain())?;
        let mut rows = BTreeMap::new();
        for (t, rs) in &self.rows {
            let set: BTreeSet<String> = rs.iter().cloned().collect();
            if set.len() != rs.len() {
                return Err(Error::DuplicateId(format!("a row of table {t}")));
            }
            rows.insert(t.clone(), set);
        }
        DatasetState::new(schema, rows, self.maps.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFunctorJson {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<BTreeMap<String, String>>,
}

impl DatasetFunctorJson {
    pub fn to_domain(&self) -> DatasetFunctor {
        DatasetFunctor { objects: self.objects.clone(), morphisms: self.morphisms.clone(), universe: self.universe.clone() }
    }
}
