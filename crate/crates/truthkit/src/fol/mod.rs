//! First-order structures as hypergraphs of classifications, role frames,
//! and the correspondence with functorial datasets.

mod dataset;

pub use dataset::{dataset_morphism_check, dataset_to_structure, structure_to_dataset, DatasetFunctor, DatasetState};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cls::{Classification, TypeSet};
use crate::error::{Error, Result};

/// A partial map from variables, defined exactly on its keys.
pub type Record = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolStructure {
    variables: BTreeSet<String>,
    entity: Classification,
    relation: Classification,
    reference: BTreeMap<String, String>,
    tuples: BTreeMap<String, Record>,
    signatures: BTreeMap<String, Record>,
}

impl FolStructure {
    /// `tuples` gives the record of every instance of `relation` (its arity is the key set);
    /// `signatures` gives the entity type of every variable in each relation type's arity.
    pub fn new(
        variables: impl IntoIterator<Item = String>,
        entity: Classification,
        relation: Classification,
        reference: BTreeMap<String, String>,
        tuples: BTreeMap<String, Record>,
        signatures: BTreeMap<String, Record>,
    ) -> Result<Self> {
        let mut vars = BTreeSet::new();
        for v in variables {
            if !vars.insert(v.clone()) {
                return Err(Error::DuplicateId(v));
            }
        }
        let etypes = entity.types();
        for v in &vars {
            let t = reference.get(v).ok_or_else(|| Error::DanglingReference(format!("variable {v} has no reference type")))?;
            if etypes.index_of(t).is_none() {
                return Err(Error::DanglingReference(format!("reference type {t} of {v}")));
            }
        }
        if let Some(v) = reference.keys().find(|v| !vars.contains(*v)) {
            return Err(Error::DanglingReference(format!("reference for undeclared variable {v}")));
        }
        let keys_match = |declared: &[String], given: &BTreeMap<String, Record>, what: &str| -> Result<()> {
            let declared: BTreeSet<&String> = declared.iter().collect();
            let given: BTreeSet<&String> = given.keys().collect();
            match declared.symmetric_difference(&given).next() {
                Some(x) => Err(Error::DanglingReference(format!("{what} {x} is declared on one side only"))),
                None => Ok(()),
            }
        };
        keys_match(relation.instances(), &tuples, "tuple")?;
        keys_match(relation.types().ids(), &signatures, "relation type")?;
        for (r, rec) in &tuples {
            for (x, a) in rec {
                if !vars.contains(x) {
                    return Err(Error::DanglingReference(format!("tuple {r} uses undeclared variable {x}")));
                }
                if entity.index_of(a).is_none() {
                    return Err(Error::DanglingReference(format!("tuple {r} refers to {a} outside the universe")));
                }
            }
        }
        for (rho, sig) in &signatures {
            for (x, t) in sig {
                if !vars.contains(x) {
                    return Err(Error::DanglingReference(format!("signature {rho} uses undeclared variable {x}")));
                }
                if etypes.index_of(t).is_none() {
                    return Err(Error::DanglingReference(format!("signature {rho} refers to unknown entity type {t}")));
                }
            }
        }
        Ok(FolStructure { variables: vars, entity, relation, reference, tuples, signatures })
    }

    pub fn variables(&self) -> &BTreeSet<String> {
        &self.variables
    }

    pub fn entity(&self) -> &Classification {
        &self.entity
    }

    pub fn relation(&self) -> &Classification {
        &self.relation
    }

    pub fn reference(&self) -> &BTreeMap<String, String> {
        &self.reference
    }

    pub fn tuples(&self) -> &BTreeMap<String, Record> {
        &self.tuples
    }

    pub fn signatures(&self) -> &BTreeMap<String, Record> {
        &self.signatures
    }

    pub fn universe(&self) -> &[String] {
        self.entity.instances()
    }

    pub fn tuple_arity(&self, r: &str) -> Option<BTreeSet<&str>> {
        self.tuples.get(r).map(|rec| rec.keys().map(String::as_str).collect())
    }

    pub fn reltype_arity(&self, rho: &str) -> Option<BTreeSet<&str>> {
        self.signatures.get(rho).map(|sig| sig.keys().map(String::as_str).collect())
    }

    /// Entity and relation classifications coincide.
    pub fn is_unified(&self) -> bool {
        self.entity == self.relation
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `r |= rho` but the tuple lacks variables of the relation type's arity.
    Arity { tuple: String, reltype: String, missing: Vec<String> },
    /// `r |= rho` but the filler of `variable` is not of the signature's entity type.
    Signature { tuple: String, reltype: String, variable: String, filler: String, entity_type: String },
}

fn pointwise(a: &FolStructure, r: &str, rho: &str) -> Vec<Violation> {
    let (rec, sig) = (&a.tuples[r], &a.signatures[rho]);
    let missing: Vec<String> = sig.keys().filter(|x| !rec.contains_key(*x)).cloned().collect();
    if !missing.is_empty() {
        return vec![Violation::Arity { tuple: r.into(), reltype: rho.into(), missing }];
    }
    sig.iter()
        .filter(|(x, t)| !a.entity.holds(&rec[*x], t))
        .map(|(x, t)| Violation::Signature {
            tuple: r.into(),
            reltype: rho.into(),
            variable: x.clone(),
            filler: rec[x].clone(),
            entity_type: t.clone(),
        })
        .collect()
}

/// Every incidence `r |= rho` whose record does not have the signature type.
pub fn validate_structure(a: &FolStructure) -> Vec<Violation> {
    let mut out = Vec::new();
    for (r, rho) in a.relation.incidence() {
        out.extend(pointwise(a, &r, &rho));
    }
    out.sort();
    out
}

/// Whether the record of `r` has the signature type of `rho`, asserted or not.
pub fn classify_tuple(a: &FolStructure, r: &str, rho: &str) -> Result<bool> {
    if !a.tuples.contains_key(r) {
        return Err(Error::UnknownId(r.to_string()));
    }
    if !a.signatures.contains_key(rho) {
        return Err(Error::UnknownId(rho.to_string()));
    }
    Ok(pointwise(a, r, rho).is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    /// Tuple id; the frame name when absent.
    pub id: Option<String>,
    pub frame: String,
    pub roles: BTreeMap<String, String>,
}

impl Frame {
    pub fn new<I, A, B>(id: Option<String>, frame: impl Into<String>, roles: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (role, filler) in roles {
            let role = role.into();
            if map.insert(role.clone(), filler.into()).is_some() {
                return Err(Error::DuplicateId(role));
            }
        }
        Ok(Frame { id, frame: frame.into(), roles: map })
    }

    pub fn tuple_id(&self) -> &str {
        self.id.as_deref().unwrap_or(&self.frame)
    }
}

/// One tuple per frame, every role a variable of the single entity type.
/// A relation type's arity is the set of roles all of its frames share.
pub fn frames_to_structure(frames: &[Frame], entity_type: &str) -> Result<FolStructure> {
    let mut tuples = BTreeMap::new();
    for f in frames {
        if tuples.insert(f.tuple_id().to_string(), f.roles.clone()).is_some() {
            return Err(Error::DuplicateFrameId(f.tuple_id().to_string()));
        }
    }
    let mut arity: BTreeMap<&str, BTreeSet<&String>> = BTreeMap::new();
    for f in frames {
        let roles: BTreeSet<&String> = f.roles.keys().collect();
        arity.entry(&f.frame).and_modify(|a| a.retain(|x| roles.contains(x))).or_insert(roles);
    }
    let variables: BTreeSet<String> = frames.iter().flat_map(|f| f.roles.keys().cloned()).collect();
    let universe: BTreeSet<&String> = frames.iter().flat_map(|f| f.roles.values()).collect();
    let ety = TypeSet::new([entity_type])?;
    let entity = Classification::new(ety, universe.iter().copied(), universe.iter().map(|u| (u.as_str(), entity_type)))?;
    let rtypes = TypeSet::new(arity.keys().copied())?;
    let relation = Classification::new(rtypes, tuples.keys(), frames.iter().map(|f| (f.tuple_id(), f.frame.as_str())))?;
    let reference = variables.iter().map(|v| (v.clone(), entity_type.to_string())).collect();
    let signatures = arity
        .into_iter()
        .map(|(rho, xs)| (rho.to_string(), xs.into_iter().map(|x| (x.clone(), entity_type.to_string())).collect()))
        .collect();
    FolStructure::new(variables, entity, relation, reference, tuples, signatures)
}
