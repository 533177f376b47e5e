//! The flattened categories of languages, specifications, structures,
//! logics and sound logics, and the law harness over them.

mod bundle;
mod laws;

pub use bundle::{Bundle, Chain};
pub use laws::{check_law, run_suite, verify_adjunction, LawReport, SuiteConfig, ADJUNCTION_IDS, LAW_IDS};

use std::fmt;

use crate::cls::{inverse_image_classification, Classification, FiberMorphism, TypeMap, TypeSet};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::theory::{inv_flow_generators, theory_geq, Theory};
use crate::truth::Logic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Lang,
    Spec,
    Struc,
    Log,
    Snd,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Lang => "Lang",
            Tag::Spec => "Spec",
            Tag::Struc => "Struc",
            Tag::Log => "Log",
            Tag::Snd => "Snd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Payload {
    Language(TypeSet),
    Theory(Theory),
    Classification(Classification),
    Logic(Logic),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrothObject {
    tag: Tag,
    payload: Payload,
}

impl GrothObject {
    pub fn lang(y: TypeSet) -> Self {
        GrothObject { tag: Tag::Lang, payload: Payload::Language(y) }
    }

    pub fn spec(t: Theory) -> Self {
        GrothObject { tag: Tag::Spec, payload: Payload::Theory(t) }
    }

    pub fn struc(m: Classification) -> Self {
        GrothObject { tag: Tag::Struc, payload: Payload::Classification(m) }
    }

    pub fn log(l: Logic) -> Self {
        GrothObject { tag: Tag::Log, payload: Payload::Logic(l) }
    }

    pub fn snd(l: Logic) -> Result<Self> {
        if !l.is_sound() {
            return Err(Error::NotAModel);
        }
        Ok(GrothObject { tag: Tag::Snd, payload: Payload::Logic(l) })
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn language(&self) -> &TypeSet {
        match &self.payload {
            Payload::Language(y) => y,
            Payload::Theory(t) => t.types(),
            Payload::Classification(m) => m.types(),
            Payload::Logic(l) => l.types(),
        }
    }

    pub fn theory(&self) -> Option<&Theory> {
        match &self.payload {
            Payload::Theory(t) => Some(t),
            Payload::Logic(l) => Some(l.theory()),
            _ => None,
        }
    }

    pub fn structure(&self) -> Option<&Classification> {
        match &self.payload {
            Payload::Classification(m) => Some(m),
            Payload::Logic(l) => Some(l.structure()),
            _ => None,
        }
    }

    fn with_tag(&self, tag: Tag) -> Result<GrothObject> {
        let payload = match (tag, &self.payload) {
            (Tag::Lang, _) => Payload::Language(self.language().clone()),
            (Tag::Spec, _) => Payload::Theory(self.theory().ok_or_else(|| mismatch("Log or Snd", self.tag))?.clone()),
            (Tag::Struc, _) => {
                Payload::Classification(self.structure().ok_or_else(|| mismatch("Log or Snd", self.tag))?.clone())
            }
            _ => return Err(mismatch("a projection target", tag)),
        };
        Ok(GrothObject { tag, payload })
    }
}

fn mismatch(expected: &str, found: Tag) -> Error {
    Error::TagMismatch { expected: expected.to_string(), found: found.to_string() }
}

/// `(sigma, f) : source -> target`; `f` is present exactly for Struc, Log and Snd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrothMorphism {
    source: GrothObject,
    target: GrothObject,
    sigma: TypeMap,
    fiber: Option<FiberMorphism>,
}

impl GrothMorphism {
    pub fn new(
        source: GrothObject,
        target: GrothObject,
        sigma: TypeMap,
        fiber: Option<FiberMorphism>,
        limits: &Limits,
    ) -> Result<Self> {
        if source.tag != target.tag {
            return Err(mismatch(&source.tag.to_string(), target.tag));
        }
        if sigma.source() != source.language() || sigma.target() != target.language() {
            return Err(Error::IllFormedMorphism("type map does not run between the objects' languages".into()));
        }
        let tag = source.tag;
        let needs_fiber = matches!(tag, Tag::Struc | Tag::Log | Tag::Snd);
        match (&fiber, needs_fiber) {
            (Some(_), false) => return Err(Error::IllFormedMorphism(format!("{tag} morphisms carry no fiber part"))),
            (None, true) => return Err(Error::IllFormedMorphism(format!("{tag} morphisms need a fiber part"))),
            _ => {}
        }
        if let (Some(t1), Some(t2)) = (source.theory(), target.theory()) {
            if !theory_geq(t1, &inv_flow_generators(&sigma, t2, limits)?, limits)? {
                return Err(Error::IllFormedMorphism("source theory is not >= the inverse flow of the target theory".into()));
            }
        }
        if let (Some(f), Some(m1), Some(m2)) = (&fiber, source.structure(), target.structure()) {
            let pulled = inverse_image_classification(&sigma, m2)?;
            if !f.is_valid(m1, &pulled) {
                return Err(Error::IllFormedMorphism("fiber part does not preserve state descriptions".into()));
            }
        }
        Ok(GrothMorphism { source, target, sigma, fiber })
    }

    pub fn identity(obj: &GrothObject) -> Self {
        let fiber = obj.structure().filter(|_| obj.tag != Tag::Spec).map(FiberMorphism::identity);
        GrothMorphism { source: obj.clone(), target: obj.clone(), sigma: TypeMap::identity(obj.language()), fiber }
    }

    pub fn source(&self) -> &GrothObject {
        &self.source
    }

    pub fn target(&self) -> &GrothObject {
        &self.target
    }

    pub fn sigma(&self) -> &TypeMap {
        &self.sigma
    }

    pub fn fiber(&self) -> Option<&FiberMorphism> {
        self.fiber.as_ref()
    }

    pub fn tag(&self) -> Tag {
        self.source.tag
    }
}

/// `m1` then `m2`; validated.
pub fn compose(m1: &GrothMorphism, m2: &GrothMorphism, limits: &Limits) -> Result<GrothMorphism> {
    if m1.tag() != m2.tag() {
        return Err(mismatch(&m1.tag().to_string(), m2.tag()));
    }
    if m1.target != m2.source {
        return Err(Error::NonComposable("first target differs from second source".into()));
    }
    let sigma = m1.sigma.then(&m2.sigma)?;
    let fiber = match (&m1.fiber, &m2.fiber) {
        (Some(f1), Some(f2)) => Some(f1.then(f2)),
        _ => None,
    };
    GrothMorphism::new(m1.source.clone(), m2.target.clone(), sigma, fiber, limits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    /// To the language map.
    Pr,
    /// To the structure part.
    Pr0,
    /// To the specification part.
    Pr1,
}

pub fn project(m: &GrothMorphism, which: Projection) -> Result<GrothMorphism> {
    let (tag, keep_fiber) = match which {
        Projection::Pr => (Tag::Lang, false),
        Projection::Pr0 => (Tag::Struc, true),
        Projection::Pr1 => (Tag::Spec, false),
    };
    if which != Projection::Pr && !matches!(m.tag(), Tag::Log | Tag::Snd) {
        return Err(mismatch("Log or Snd", m.tag()));
    }
    Ok(GrothMorphism {
        source: m.source.with_tag(tag)?,
        target: m.target.with_tag(tag)?,
        sigma: m.sigma.clone(),
        fiber: if keep_fiber { m.fiber.clone() } else { None },
    })
}
