use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category with an explicit composition table, validated on construction.
/// Composition is diagrammatic: `compose(f, g)` is "f then g".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    table: Vec<Option<usize>>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::IllFormedCategory(msg.into())
}

impl FiniteCategory {
    /// `morphisms` are `(id, src, tgt)`; `identities` names one morphism per object.
    /// Table entries involving an identity may be omitted and are filled in.
    pub fn new<O, M, I, C>(objects: O, morphisms: M, identities: I, composition: C) -> Result<Self>
    where
        O: IntoIterator,
        O::Item: Into<String>,
        M: IntoIterator<Item = (String, String, String)>,
        I: IntoIterator<Item = (String, String)>,
        C: IntoIterator<Item = (String, String, String)>,
    {
        let objects: Vec<String> = objects.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for o in &objects {
            if !seen.insert(o.as_str()) {
                return Err(Error::DuplicateId(o.clone()));
            }
        }
        let obj = |o: &str| objects.iter().position(|x| x == o).ok_or_else(|| Error::DanglingReference(o.to_string()));
        let mut ms = Vec::new();
        let mut ids = BTreeSet::new();
        for (id, s, t) in morphisms {
            if !ids.insert(id.clone()) {
                return Err(Error::DuplicateId(id));
            }
            ms.push(Morphism { src: obj(&s)?, tgt: obj(&t)?, id });
        }
        let mor = |m: &str| ms.iter().position(|x| x.id == m).ok_or_else(|| Error::DanglingReference(m.to_string()));
        let mut identity = vec![None; objects.len()];
        for (o, m) in identities {
            let (oi, mi) = (obj(&o)?, mor(&m)?);
            if identity[oi].replace(mi).is_some() {
                return Err(bad(format!("two identities for {o}")));
            }
            if ms[mi].src != oi || ms[mi].tgt != oi {
                return Err(bad(format!("identity {m} is not an endomorphism of {o}")));
            }
        }
        let identities = identity
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| bad(format!("object {} has no identity", objects[i]))))
            .collect::<Result<Vec<_>>>()?;
        let n = ms.len();
        let mut table = vec![None; n * n];
        for (f, g, h) in composition {
            let (fi, gi, hi) = (mor(&f)?, mor(&g)?, mor(&h)?);
            if table[fi * n + gi].replace(hi).is_some_and(|old| old != hi) {
                return Err(bad(format!("two composites for {f};{g}")));
            }
        }
        for (o, &e) in identities.iter().enumerate() {
            for (m, mo) in ms.iter().enumerate() {
                if mo.tgt == o {
                    table[m * n + e].get_or_insert(m);
                }
                if mo.src == o {
                    table[e * n + m].get_or_insert(m);
                }
            }
        }
        let c = FiniteCategory { objects, morphisms: ms, identities, table };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let n = self.morphisms.len();
        for f in 0..n {
            for g in 0..n {
                let composable = self.morphisms[f].tgt == self.morphisms[g].src;
                let (fid, gid) = (&self.morphisms[f].id, &self.morphisms[g].id);
                match (composable, self.table[f * n + g]) {
                    (true, None) => return Err(bad(format!("missing composite {fid};{gid}"))),
                    (false, Some(_)) => return Err(bad(format!("composite given for non-composable {fid};{gid}"))),
                    (true, Some(h)) => {
                        let hm = &self.morphisms[h];
                        if hm.src != self.morphisms[f].src || hm.tgt != self.morphisms[g].tgt {
                            return Err(bad(format!("{fid};{gid} = {} has the wrong endpoints", hm.id)));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for (o, &e) in self.identities.iter().enumerate() {
            for m in 0..n {
                let mo = &self.morphisms[m];
                if (mo.tgt == o && self.table[m * n + e] != Some(m)) || (mo.src == o && self.table[e * n + m] != Some(m)) {
                    return Err(bad(format!("{} is not a unit for {}", self.morphisms[e].id, mo.id)));
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(fg) = self.table[f * n + g] else { continue };
                for h in 0..n {
                    let Some(gh) = self.table[g * n + h] else { continue };
                    if self.table[fg * n + h] != self.table[f * n + gh] {
                        return Err(bad(format!(
                            "composition is not associative at {};{};{}",
                            self.morphisms[f].id, self.morphisms[g].id, self.morphisms[h].id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_index(&self, o: &str) -> Option<usize> {
        self.objects.iter().position(|x| x == o)
    }

    pub fn morphism_index(&self, m: &str) -> Option<usize> {
        self.morphisms.iter().position(|x| x.id == m)
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].src] == m
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.table[f * self.morphisms.len() + g]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| self.morphisms[m].src == a && self.morphisms[m].tgt == b).collect()
    }

    /// The full table as `(f, g, f;g)` ids, identities included.
    pub fn composition(&self) -> Vec<(&str, &str, &str)> {
        let n = self.morphisms.len();
        let mut out = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if let Some(h) = self.table[f * n + g] {
                    out.push((self.morphisms[f].id.as_str(), self.morphisms[g].id.as_str(), self.morphisms[h].id.as_str()));
                }
            }
        }
        out
    }

    pub fn identities(&self) -> BTreeMap<&str, &str> {
        self.identities.iter().enumerate().map(|(o, &m)| (self.objects[o].as_str(), self.morphisms[m].id.as_str())).collect()
    }

    /// Whether index maps `objects` and `morphisms` form a functor into `target`.
    pub fn is_functor(&self, target: &FiniteCategory, objects: &[usize], morphisms: &[usize]) -> bool {
        if objects.len() != self.objects.len() || morphisms.len() != self.morphisms.len() {
            return false;
        }
        if objects.iter().any(|&o| o >= target.objects.len()) || morphisms.iter().any(|&m| m >= target.morphisms.len()) {
            return false;
        }
        let ends = self.morphisms.iter().zip(morphisms).all(|(m, &fm)| {
            target.morphisms[fm].src == objects[m.src] && target.morphisms[fm].tgt == objects[m.tgt]
        });
        let units = self.identities.iter().enumerate().all(|(o, &e)| morphisms[e] == target.identities[objects[o]]);
        let n = self.morphisms.len();
        let comp = (0..n).all(|f| {
            (0..n).all(|g| match self.table[f * n + g] {
                Some(h) => target.compose(morphisms[f], morphisms[g]) == Some(morphisms[h]),
                None => true,
            })
        });
        ends && units && comp
    }

    /// Whether the maps are a functor that is bijective on objects and morphisms.
    pub fn is_isomorphism(&self, target: &FiniteCategory, objects: &[usize], morphisms: &[usize]) -> bool {
        let bijective = |v: &[usize], len: usize| v.len() == len && v.iter().collect::<BTreeSet<_>>().len() == len;
        bijective(objects, target.objects.len())
            && bijective(morphisms, target.morphisms.len())
            && self.is_functor(target, objects, morphisms)
    }
}
