//! Sequent theories over a type set, their semantic closure and flows.

use std::collections::BTreeSet;
use std::fmt;

use crate::cls::{Mask, TypeMap, TypeSet};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A sequent `lhs |- rhs` over a type set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub lhs: Mask,
    pub rhs: Mask,
}

impl Sequent {
    pub fn new(lhs: Mask, rhs: Mask) -> Self {
        Sequent { lhs, rhs }
    }

    pub fn named<A, B>(types: &TypeSet, lhs: &[A], rhs: &[B]) -> Result<Self>
    where
        A: AsRef<str>,
        B: AsRef<str>,
    {
        Ok(Sequent { lhs: types.mask_of(lhs)?, rhs: types.mask_of(rhs)? })
    }

    /// `Gamma ⊆ S` implies `S ∩ Delta ≠ ∅`.
    pub fn holds_in(&self, s: Mask) -> bool {
        self.lhs & !s != 0 || s & self.rhs != 0
    }

    pub fn display(&self, types: &TypeSet) -> String {
        format!("{} |- {}", types.ids_of(self.lhs).join(","), types.ids_of(self.rhs).join(","))
    }
}

pub fn subset_satisfies(s: Mask, q: &Sequent) -> bool {
    q.holds_in(s)
}

/// A theory: a finite generator set of sequents. Closure is semantic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Theory {
    types: TypeSet,
    sequents: BTreeSet<Sequent>,
}

impl Theory {
    pub fn new(types: TypeSet, sequents: impl IntoIterator<Item = Sequent>) -> Result<Self> {
        let sequents: BTreeSet<Sequent> = sequents.into_iter().collect();
        if let Some(q) = sequents.iter().find(|q| !types.contains_mask(q.lhs | q.rhs)) {
            return Err(Error::DanglingReference(format!("sequent {q:?} uses undeclared types")));
        }
        Ok(Theory { types, sequents })
    }

    pub fn named<A, B>(types: TypeSet, sequents: &[(&[A], &[B])]) -> Result<Self>
    where
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let qs = sequents
            .iter()
            .map(|(l, r)| Sequent::named(&types, l, r))
            .collect::<Result<Vec<_>>>()?;
        Theory::new(types, qs)
    }

    /// The theory whose extent is exactly the subsets accepted by `keep`:
    /// one sequent `S |- Y \ S` for every rejected `S`.
    pub fn from_extent(types: &TypeSet, keep: impl Fn(Mask) -> bool, limits: &Limits) -> Result<Self> {
        let full = types.full_mask();
        let sequents = types.subsets(limits)?.filter(|&s| !keep(s)).map(|s| Sequent::new(s, full & !s)).collect();
        Ok(Theory { types: types.clone(), sequents })
    }

    pub fn types(&self) -> &TypeSet {
        &self.types
    }

    pub fn sequents(&self) -> &BTreeSet<Sequent> {
        &self.sequents
    }

    pub fn len(&self) -> usize {
        self.sequents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequents.is_empty()
    }

    pub fn contains(&self, q: &Sequent) -> bool {
        self.sequents.contains(q)
    }

    /// `S` satisfies every generator.
    pub fn admits(&self, s: Mask) -> bool {
        self.sequents.iter().all(|q| q.holds_in(s))
    }

    /// Satisfying subsets, in increasing mask order.
    pub fn extent_masks(&self, limits: &Limits) -> Result<Vec<Mask>> {
        Ok(self.types.subsets(limits)?.filter(|&s| self.admits(s)).collect())
    }
}

fn same_types(a: &TypeSet, b: &TypeSet) -> Result<()> {
    if a != b {
        return Err(Error::TagMismatch {
            expected: format!("type set {:?}", a.ids()),
            found: format!("type set {:?}", b.ids()),
        });
    }
    Ok(())
}

/// A theory together with its cached semantic extent.
#[derive(Debug, Clone)]
pub struct ClosureOracle {
    theory: Theory,
    satisfying: Vec<Mask>,
}

impl ClosureOracle {
    pub fn new(theory: &Theory, limits: &Limits) -> Result<Self> {
        let satisfying = theory.extent_masks(limits)?;
        Ok(ClosureOracle { theory: theory.clone(), satisfying })
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn satisfying_subsets(&self) -> &[Mask] {
        &self.satisfying
    }

    pub fn entails(&self, q: &Sequent) -> bool {
        self.satisfying.iter().all(|&s| q.holds_in(s))
    }
}

/// `q ∈ T•`: every subset satisfying `T` satisfies `q`.
pub fn entails(t: &Theory, q: &Sequent, limits: &Limits) -> Result<bool> {
    Ok(ClosureOracle::new(t, limits)?.entails(q))
}

/// Every sequent over `y`, in (lhs, rhs) mask order.
pub fn all_sequents(y: &TypeSet, limits: &Limits) -> Result<impl Iterator<Item = Sequent>> {
    limits.check_sequents(y.len())?;
    let n = 1u64 << y.len();
    Ok((0..n).flat_map(move |l| (0..n).map(move |r| Sequent::new(l, r))))
}

/// The full closure `T•`.
pub fn closure_enumerate(t: &Theory, limits: &Limits) -> Result<Theory> {
    let oracle = ClosureOracle::new(t, limits)?;
    let sequents = all_sequents(t.types(), limits)?.filter(|q| oracle.entails(q)).collect();
    Ok(Theory { types: t.types.clone(), sequents })
}

/// `T1 >= T2`, i.e. `T1• ⊆ T2•`.
pub fn theory_geq(t1: &Theory, t2: &Theory, limits: &Limits) -> Result<bool> {
    same_types(t1.types(), t2.types())?;
    let oracle = ClosureOracle::new(t2, limits)?;
    Ok(t1.sequents.iter().all(|q| oracle.entails(q)))
}

/// `T1• = T2•`, compared through extents.
pub fn same_closure(t1: &Theory, t2: &Theory, limits: &Limits) -> Result<bool> {
    same_types(t1.types(), t2.types())?;
    Ok(t1.extent_masks(limits)? == t2.extent_masks(limits)?)
}

pub fn bottom_theory(y: &TypeSet) -> Theory {
    Theory { types: y.clone(), sequents: BTreeSet::new() }
}

/// Generator union; its extent is the intersection of the two extents.
pub fn join_theories(t1: &Theory, t2: &Theory) -> Result<Theory> {
    same_types(t1.types(), t2.types())?;
    let sequents = t1.sequents.union(&t2.sequents).copied().collect();
    Ok(Theory { types: t1.types.clone(), sequents })
}

/// Elementwise image of every generator along `f`.
pub fn dir_flow(f: &TypeMap, t1: &Theory) -> Result<Theory> {
    same_types(f.source(), t1.types())?;
    let sequents = t1.sequents.iter().map(|q| Sequent::new(f.image_of(q.lhs), f.image_of(q.rhs))).collect();
    Ok(Theory { types: f.target().clone(), sequents })
}

/// Membership in the inverse flow: `T2 |- f[Gamma] |- f[Delta]`.
pub fn inv_flow_contains(f: &TypeMap, t2: &Theory, q: &Sequent, limits: &Limits) -> Result<bool> {
    same_types(f.target(), t2.types())?;
    entails(t2, &Sequent::new(f.image_of(q.lhs), f.image_of(q.rhs)), limits)
}

/// The inverse flow, fully enumerated over `Y1`.
pub fn inv_flow(f: &TypeMap, t2: &Theory, limits: &Limits) -> Result<Theory> {
    same_types(f.target(), t2.types())?;
    let oracle = ClosureOracle::new(t2, limits)?;
    let sequents = all_sequents(f.source(), limits)?
        .filter(|q| oracle.entails(&Sequent::new(f.image_of(q.lhs), f.image_of(q.rhs))))
        .collect();
    Ok(Theory { types: f.source().clone(), sequents })
}

/// A generator set for the inverse flow with at most `2^|Y1|` sequents:
/// its extent is `{ f^-1(S2) | S2 ∈ ext(T2) }`.
pub fn inv_flow_generators(f: &TypeMap, t2: &Theory, limits: &Limits) -> Result<Theory> {
    same_types(f.target(), t2.types())?;
    let pulled: BTreeSet<Mask> = t2.extent_masks(limits)?.into_iter().map(|s| f.preimage(s)).collect();
    Theory::from_extent(f.source(), |s| pulled.contains(&s), limits)
}

impl fmt::Display for Theory {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.sequents.iter().map(|q| q.display(&self.types)).collect();
        write!(out, "[{}]", qs.join("; "))
    }
}
