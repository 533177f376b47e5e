use std::collections::{BTreeMap, BTreeSet};

use crate::cls::{Classification, TypeSet};
use crate::dgm::FiniteCategory;
use crate::error::{Error, Result};

use super::{FolStructure, Record};

/// A set-valued functor on a finite schema: rows per table, a row map per column.
/// Identity columns are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetState {
    schema: FiniteCategory,
    rows: BTreeMap<String, BTreeSet<String>>,
    maps: BTreeMap<String, BTreeMap<String, String>>,
}

fn nonfunctorial(msg: impl Into<String>) -> Error {
    Error::NonFunctorial(msg.into())
}

impl DatasetState {
    /// Tables missing from `rows` are empty. Maps for identity columns may be
    /// omitted; when given they must be identities.
    pub fn new(
        schema: FiniteCategory,
        rows: BTreeMap<String, BTreeSet<String>>,
        maps: BTreeMap<String, BTreeMap<String, String>>,
    ) -> Result<Self> {
        if let Some(t) = rows.keys().find(|t| schema.object_index(t).is_none()) {
            return Err(Error::DanglingReference(format!("table {t}")));
        }
        if let Some(m) = maps.keys().find(|m| schema.morphism_index(m).is_none()) {
            return Err(Error::DanglingReference(format!("column {m}")));
        }
        let mut seen = BTreeSet::new();
        for r in rows.values().flatten() {
            if !seen.insert(r) {
                return Err(Error::DuplicateId(r.clone()));
            }
        }
        let rows: BTreeMap<String, BTreeSet<String>> =
            schema.objects().iter().map(|t| (t.clone(), rows.get(t).cloned().unwrap_or_default())).collect();
        let mut full = BTreeMap::new();
        for (i, m) in schema.morphisms().iter().enumerate() {
            let (src, tgt) = (&rows[&schema.objects()[m.src]], &rows[&schema.objects()[m.tgt]]);
            let map = match maps.get(&m.id) {
                Some(map) => map.clone(),
                None if schema.is_identity(i) => src.iter().map(|r| (r.clone(), r.clone())).collect(),
                None if src.is_empty() => BTreeMap::new(),
                None => return Err(nonfunctorial(format!("column {} has no row map", m.id))),
            };
            if map.keys().collect::<BTreeSet<_>>() != src.iter().collect::<BTreeSet<_>>() {
                return Err(nonfunctorial(format!("column {} is not defined exactly on the rows of its table", m.id)));
            }
            if let Some((r, v)) = map.iter().find(|(_, v)| !tgt.contains(*v)) {
                return Err(nonfunctorial(format!("column {} sends {r} to {v}, outside its target table", m.id)));
            }
            if schema.is_identity(i) && map.iter().any(|(r, v)| r != v) {
                return Err(nonfunctorial(format!("identity column {} moves rows", m.id)));
            }
            full.insert(m.id.clone(), map);
        }
        for (f, g, h) in schema.composition() {
            for (r, v) in &full[f] {
                if full[g][v] != full[h][r] {
                    return Err(nonfunctorial(format!("{f};{g} and {h} disagree on row {r}")));
                }
            }
        }
        let maps = full.into_iter().filter(|(m, _)| !schema.is_identity(schema.morphism_index(m).expect("known"))).collect();
        Ok(DatasetState { schema, rows, maps })
    }

    pub fn schema(&self) -> &FiniteCategory {
        &self.schema
    }

    pub fn rows(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.rows
    }

    /// Row maps of the non-identity columns.
    pub fn maps(&self) -> &BTreeMap<String, BTreeMap<String, String>> {
        &self.maps
    }

    /// The image of `row` along `column`; identities included.
    pub fn apply<'a>(&'a self, column: &str, row: &'a str) -> Option<&'a str> {
        match self.maps.get(column) {
            Some(m) => m.get(row).map(String::as_str),
            None => {
                let i = self.schema.morphism_index(column)?;
                let table = &self.schema.objects()[self.schema.morphisms()[i].src];
                (self.schema.is_identity(i) && self.rows[table].contains(row)).then_some(row)
            }
        }
    }
}

/// Tables are relation types, rows are tuples, columns are variables with
/// their source table from the arities and their target from the reference map.
pub fn structure_to_dataset(a: &FolStructure) -> Result<DatasetState> {
    if !a.is_unified() {
        return Err(Error::NotUnified);
    }
    let rel = a.relation();
    let mut table_of = BTreeMap::new();
    for (i, r) in rel.instances().iter().enumerate() {
        let types = rel.types().ids_of(rel.state(i));
        match types.as_slice() {
            [t] => {
                table_of.insert(r.as_str(), *t);
            }
            _ => return Err(Error::AmbiguousRowType(r.clone())),
        }
    }
    for (&r, &rho) in &table_of {
        if a.tuple_arity(r) != a.reltype_arity(rho) {
            return Err(Error::NotTrim(format!("tuple {r} and its type {rho} have different arities")));
        }
    }
    let mut source = BTreeMap::new();
    for (rho, sig) in a.signatures() {
        for (x, t) in sig {
            if source.insert(x.as_str(), rho.as_str()).is_some() {
                return Err(Error::InvalidSchema(format!("variable {x} belongs to more than one table")));
            }
            if a.reference()[x] != *t {
                return Err(Error::InvalidSchema(format!("column {x} of {rho} is typed {t}, but refers to {}", a.reference()[x])));
            }
        }
    }
    if let Some(x) = a.variables().iter().find(|x| !source.contains_key(x.as_str())) {
        return Err(Error::InvalidSchema(format!("variable {x} belongs to no table")));
    }
    let tables = rel.types().ids();
    let identity = |t: &str| format!("1_{t}");
    if let Some(t) = tables.iter().find(|t| a.variables().contains(&identity(t))) {
        return Err(Error::InvalidSchema(format!("variable {} clashes with the identity column of {t}", identity(t))));
    }
    let mut rows: BTreeMap<String, BTreeSet<String>> = tables.iter().map(|t| (t.clone(), BTreeSet::new())).collect();
    for (&r, &t) in &table_of {
        rows.get_mut(t).expect("declared table").insert(r.to_string());
    }
    let maps: BTreeMap<String, BTreeMap<String, String>> = a
        .variables()
        .iter()
        .map(|x| {
            let col = rows[source[x.as_str()]].iter().map(|r| (r.clone(), a.tuples()[r][x].clone())).collect();
            (x.clone(), col)
        })
        .collect();
    let target = |x: &str| a.reference()[x].as_str();
    // resolve x;y to the identity or the first column with the same row map
    let mut composition = Vec::new();
    for (x, mx) in &maps {
        for (y, my) in maps.iter().filter(|(y, _)| source[y.as_str()] == target(x)) {
            let (from, to) = (source[x.as_str()], target(y));
            let ext = mx
                .iter()
                .map(|(r, v)| my.get(v).map(|w| (r, w)).ok_or_else(|| nonfunctorial(format!("{x} sends {r} to {v}, not a row of {y}'s table"))))
                .collect::<Result<BTreeMap<&String, &String>>>()?;
            let same = |m: &BTreeMap<String, String>| m.iter().all(|(r, v)| ext.get(r) == Some(&v));
            let z = if from == to && ext.iter().all(|(r, v)| r == v) {
                Some(identity(from))
            } else {
                maps.iter().find(|(z, mz)| source[z.as_str()] == from && target(z) == to && same(mz)).map(|(z, _)| z.clone())
            };
            let z = z.ok_or_else(|| Error::InvalidSchema(format!("no column equals the composite {x};{y}")))?;
            composition.push((x.clone(), y.clone(), z));
        }
    }
    let morphisms = tables
        .iter()
        .map(|t| (identity(t), t.clone(), t.clone()))
        .chain(a.variables().iter().map(|x| (x.clone(), source[x.as_str()].to_string(), target(x).to_string())));
    let identities = tables.iter().map(|t| (t.clone(), identity(t)));
    let schema = FiniteCategory::new(tables.iter().cloned(), morphisms, identities, composition)
        .map_err(|e| Error::InvalidSchema(e.to_string()))?;
    DatasetState::new(schema, rows, maps)
}

/// The unified, trim structure of a dataset: rows are both tuples and entities.
pub fn dataset_to_structure(f: &DatasetState) -> Result<FolStructure> {
    let s = &f.schema;
    let tables = TypeSet::new(s.objects().iter().cloned())?;
    let incidence: Vec<(&String, &String)> = f.rows.iter().flat_map(|(t, rs)| rs.iter().map(move |r| (r, t))).collect();
    let classification = Classification::new(tables, incidence.iter().map(|(r, _)| *r), incidence.iter().copied())?;
    let columns: Vec<_> = s.morphisms().iter().enumerate().filter(|(i, _)| !s.is_identity(*i)).map(|(_, m)| m).collect();
    let table = |i: usize| s.objects()[i].clone();
    let reference = columns.iter().map(|m| (m.id.clone(), table(m.tgt))).collect();
    let tuples = f
        .rows
        .iter()
        .flat_map(|(t, rs)| rs.iter().map(move |r| (t, r)))
        .map(|(t, r)| {
            let rec: Record =
                columns.iter().filter(|m| table(m.src) == *t).map(|m| (m.id.clone(), f.maps[&m.id][r].clone())).collect();
            (r.clone(), rec)
        })
        .collect();
    let signatures = s
        .objects()
        .iter()
        .enumerate()
        .map(|(o, t)| (t.clone(), columns.iter().filter(|m| m.src == o).map(|m| (m.id.clone(), table(m.tgt))).collect()))
        .collect();
    FolStructure::new(columns.iter().map(|m| m.id.clone()), classification.clone(), classification, reference, tuples, signatures)
}

/// A schema functor `H` from `F`'s schema to `G`'s, with an optional map from
/// `G`'s rows to `F`'s rows (identity on shared row ids when absent).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DatasetFunctor {
    pub objects: BTreeMap<String, String>,
    /// Identity columns may be omitted.
    pub morphisms: BTreeMap<String, String>,
    pub universe: Option<BTreeMap<String, String>>,
}

fn ill(msg: impl Into<String>) -> Error {
    Error::IllFormedFunctor(msg.into())
}

/// Whether `u^-1(F(rho)) = G(H(rho))` for every table `rho` of `F`.
pub fn dataset_morphism_check(h: &DatasetFunctor, f: &DatasetState, g: &DatasetState) -> Result<bool> {
    let (a, b) = (&f.schema, &g.schema);
    let objects = a
        .objects()
        .iter()
        .map(|o| {
            let t = h.objects.get(o).ok_or_else(|| ill(format!("table {o} is not mapped")))?;
            b.object_index(t).ok_or_else(|| ill(format!("unknown target table {t}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = a
        .morphisms()
        .iter()
        .enumerate()
        .map(|(i, m)| match h.morphisms.get(&m.id) {
            Some(t) => b.morphism_index(t).ok_or_else(|| ill(format!("unknown target column {t}"))),
            None if a.is_identity(i) => Ok(b.identity(objects[m.src])),
            None => Err(ill(format!("column {} is not mapped", m.id))),
        })
        .collect::<Result<Vec<_>>>()?;
    if !a.is_functor(b, &objects, &morphisms) {
        return Err(ill("the maps do not preserve endpoints, identities or composition"));
    }
    let f_rows: BTreeSet<&String> = f.rows.values().flatten().collect();
    let g_rows: BTreeSet<&String> = g.rows.values().flatten().collect();
    if let Some(u) = &h.universe {
        for s in &g_rows {
            match u.get(*s) {
                Some(v) if f_rows.contains(v) => {}
                Some(v) => return Err(ill(format!("universe map sends {s} to {v}, which is not a row"))),
                None => return Err(ill(format!("universe map is undefined on {s}"))),
            }
        }
    }
    let u = |s: &String| -> Option<String> {
        match &h.universe {
            Some(u) => u.get(s).cloned(),
            None => f_rows.contains(s).then(|| s.clone()),
        }
    };
    Ok(a.objects().iter().zip(&objects).all(|(rho, &o)| {
        let pre: BTreeSet<&String> = g_rows.iter().copied().filter(|s| u(s).is_some_and(|v| f.rows[rho].contains(&v))).collect();
        pre == g.rows[&b.objects()[o]].iter().collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    /// `c : T1 -> T2`.
    fn schema() -> FiniteCategory {
        FiniteCategory::new(
            ["T1", "T2"],
            [(s("1_T1"), s("T1"), s("T1")), (s("1_T2"), s("T2"), s("T2")), (s("c"), s("T1"), s("T2"))],
            [(s("T1"), s("1_T1")), (s("T2"), s("1_T2"))],
            [],
        )
        .unwrap()
    }

    fn state() -> DatasetState {
        DatasetState::new(
            schema(),
            [(s("T1"), [s("r1")].into()), (s("T2"), [s("s1")].into())].into(),
            [(s("c"), [(s("r1"), s("s1"))].into())].into(),
        )
        .unwrap()
    }

    #[test]
    fn round_trip_through_structures() {
        let f = state();
        let a = dataset_to_structure(&f).unwrap();
        assert_eq!(a.tuples()["r1"], [(s("c"), s("s1"))].into());
        assert!(a.tuples()["s1"].is_empty());
        assert!(a.is_unified());
        assert!(super::super::validate_structure(&a).is_empty());
        let back = structure_to_dataset(&a).unwrap();
        assert_eq!(back, f);
        assert_eq!(dataset_to_structure(&back).unwrap(), a);
    }

    #[test]
    fn single_table_without_columns() {
        let one = FiniteCategory::new(["T"], [(s("1_T"), s("T"), s("T"))], [(s("T"), s("1_T"))], []).unwrap();
        let f = DatasetState::new(one, [(s("T"), [s("a"), s("b")].into())].into(), BTreeMap::new()).unwrap();
        let a = dataset_to_structure(&f).unwrap();
        assert_eq!(a.tuples().len(), 2);
        assert!(a.variables().is_empty());
        assert_eq!(structure_to_dataset(&a).unwrap(), f);
    }

    #[test]
    fn empty_structure_gives_empty_tables() {
        let f = DatasetState::new(schema(), BTreeMap::new(), BTreeMap::new()).unwrap();
        assert!(f.rows().values().all(BTreeSet::is_empty));
        let a = dataset_to_structure(&f).unwrap();
        assert!(a.tuples().is_empty());
        assert_eq!(structure_to_dataset(&a).unwrap(), f);
    }

    #[test]
    fn composition_violations_are_not_functorial() {
        // a : A -> B, b : B -> C, ab = a;b but with a different row map
        let cat = FiniteCategory::new(
            ["A", "B", "C"],
            [
                (s("1A"), s("A"), s("A")),
                (s("1B"), s("B"), s("B")),
                (s("1C"), s("C"), s("C")),
                (s("a"), s("A"), s("B")),
                (s("b"), s("B"), s("C")),
                (s("ab"), s("A"), s("C")),
            ],
            [(s("A"), s("1A")), (s("B"), s("1B")), (s("C"), s("1C"))],
            [(s("a"), s("b"), s("ab"))],
        )
        .unwrap();
        let rows: BTreeMap<String, BTreeSet<String>> =
            [(s("A"), [s("x")].into()), (s("B"), [s("y")].into()), (s("C"), [s("z1"), s("z2")].into())].into();
        let maps = |t: &str| -> BTreeMap<String, BTreeMap<String, String>> {
            [
                (s("a"), [(s("x"), s("y"))].into()),
                (s("b"), [(s("y"), s("z1"))].into()),
                (s("ab"), [(s("x"), s(t))].into()),
            ]
            .into()
        };
        assert!(DatasetState::new(cat.clone(), rows.clone(), maps("z1")).is_ok());
        assert_eq!(DatasetState::new(cat, rows, maps("z2")).unwrap_err().kind(), "NonFunctorial");
    }

    #[test]
    fn conversion_preconditions() {
        let a = super::super::tests::sam();
        assert_eq!(structure_to_dataset(&a).unwrap_err().kind(), "NotUnified");
        let f = state();
        let u = dataset_to_structure(&f).unwrap();
        // r1 typed in both tables
        let both = Classification::new(
            u.relation().types().clone(),
            ["r1", "s1"],
            [("r1", "T1"), ("r1", "T2"), ("s1", "T2")],
        )
        .unwrap();
        let mut sigs = u.signatures().clone();
        sigs.insert(s("T2"), BTreeMap::new());
        let amb = FolStructure::new(u.variables().iter().cloned(), both.clone(), both, u.reference().clone(), u.tuples().clone(), sigs)
            .unwrap();
        assert_eq!(structure_to_dataset(&amb).unwrap_err().kind(), "AmbiguousRowType");
        let mut tuples = u.tuples().clone();
        tuples.get_mut("s1").unwrap().insert(s("c"), s("s1"));
        let untrim = FolStructure::new(
            u.variables().iter().cloned(),
            u.entity().clone(),
            u.relation().clone(),
            u.reference().clone(),
            tuples,
            u.signatures().clone(),
        )
        .unwrap();
        assert_eq!(structure_to_dataset(&untrim).unwrap_err().kind(), "NotTrim");
    }

    #[test]
    fn morphism_checks() {
        let f = state();
        let id = DatasetFunctor {
            objects: [(s("T1"), s("T1")), (s("T2"), s("T2"))].into(),
            morphisms: [(s("c"), s("c"))].into(),
            universe: None,
        };
        assert!(dataset_morphism_check(&id, &f, &f).unwrap());
        // collapse both tables onto one table holding only r1
        let one = FiniteCategory::new(["T"], [(s("1_T"), s("T"), s("T"))], [(s("T"), s("1_T"))], []).unwrap();
        let g = DatasetState::new(one, [(s("T"), [s("r1")].into())].into(), BTreeMap::new()).unwrap();
        let collapse = DatasetFunctor {
            objects: [(s("T1"), s("T")), (s("T2"), s("T"))].into(),
            morphisms: [(s("c"), s("1_T"))].into(),
            universe: None,
        };
        assert!(!dataset_morphism_check(&collapse, &f, &g).unwrap());
        let wrong = DatasetFunctor { objects: [(s("T1"), s("T2")), (s("T2"), s("T1"))].into(), ..id.clone() };
        assert_eq!(dataset_morphism_check(&wrong, &f, &f).unwrap_err().kind(), "IllFormedFunctor");
        let empty = FiniteCategory::new(Vec::<String>::new(), [], [], []).unwrap();
        let e = DatasetState::new(empty, BTreeMap::new(), BTreeMap::new()).unwrap();
        assert!(dataset_morphism_check(&DatasetFunctor::default(), &e, &e).unwrap());
        let renamed = DatasetFunctor { universe: Some([(s("r1"), s("r1")), (s("s1"), s("s1"))].into()), ..id };
        assert!(dataset_morphism_check(&renamed, &f, &f).unwrap());
    }
}
