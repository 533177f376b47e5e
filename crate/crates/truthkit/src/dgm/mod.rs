//! Graphs as languages, diagrams into finite categories as structures and
//! equations between parallel paths as specifications.

mod category;

pub use category::{FiniteCategory, Morphism};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Most paths a path category may have before construction gives up.
pub const PATH_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Edge ids may not contain `;` or start with `id:`, since path ids are built from them.
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for n in &nodes {
            if !seen.insert(n.clone()) {
                return Err(Error::DuplicateId(n.clone()));
            }
        }
        let node = |n: &str| nodes.iter().position(|x| x == n).ok_or_else(|| Error::DanglingReference(n.to_string()));
        let mut out = Vec::new();
        for (id, s, t) in edges {
            if id.contains(';') || id.starts_with("id:") || id.is_empty() {
                return Err(Error::ValidationError { path: "edges".into(), message: format!("edge id {id:?} is reserved") });
            }
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateId(id));
            }
            out.push(Edge { src: node(&s)?, tgt: node(&t)?, id });
        }
        Ok(Graph { nodes, edges: out })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_index(&self, n: &str) -> Option<usize> {
        self.nodes.iter().position(|x| x == n)
    }

    pub fn edge_index(&self, e: &str) -> Option<usize> {
        self.edges.iter().position(|x| x.id == e)
    }

    /// A path from edge ids; `start` is needed only for the empty path.
    pub fn path(&self, start: Option<&str>, edges: &[&str]) -> Result<Path> {
        let idx = edges
            .iter()
            .map(|e| self.edge_index(e).ok_or_else(|| Error::IllFormedPath(format!("unknown edge {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let start = match (start, idx.first()) {
            (Some(s), _) => self.node_index(s).ok_or_else(|| Error::IllFormedPath(format!("unknown node {s}")))?,
            (None, Some(&e)) => self.edges[e].src,
            (None, None) => return Err(Error::IllFormedPath("an empty path needs a start node".into())),
        };
        let p = Path { start, edges: idx };
        p.check(self)?;
        Ok(p)
    }

    fn has_cycle(&self) -> bool {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.tgt] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = ready.pop() {
            done += 1;
            for e in self.edges.iter().filter(|e| e.src == v) {
                indeg[e.tgt] -= 1;
                if indeg[e.tgt] == 0 {
                    ready.push(e.tgt);
                }
            }
        }
        done < n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn empty(node: usize) -> Self {
        Path { start: node, edges: Vec::new() }
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.start >= g.nodes.len() || self.edges.iter().any(|&e| e >= g.edges.len()) {
            return Err(Error::IllFormedPath("index out of range".into()));
        }
        let mut at = self.start;
        for &e in &self.edges {
            if g.edges[e].src != at {
                return Err(Error::IllFormedPath(format!("edge {} does not start at {}", g.edges[e].id, g.nodes[at])));
            }
            at = g.edges[e].tgt;
        }
        Ok(())
    }

    pub fn end(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.edges[e].tgt)
    }

    /// `id:A` for the empty path at `A`, else the edge ids joined by `;`.
    pub fn id(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            format!("id:{}", g.nodes[self.start])
        } else {
            self.edges.iter().map(|&e| g.edges[e].id.as_str()).collect::<Vec<_>>().join(";")
        }
    }

    pub fn edge_ids<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.edges.iter().map(|&e| g.edges[e].id.as_str()).collect()
    }

    fn then(&self, next: &Path) -> Path {
        Path { start: self.start, edges: self.edges.iter().chain(&next.edges).copied().collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Path,
    pub rhs: Path,
}

impl Equation {
    pub fn new(g: &Graph, lhs: Path, rhs: Path) -> Result<Self> {
        lhs.check(g)?;
        rhs.check(g)?;
        if lhs.start != rhs.start || lhs.end(g) != rhs.end(g) {
            return Err(Error::IllFormedPath(format!("{} and {} are not parallel", lhs.id(g), rhs.id(g))));
        }
        Ok(Equation { lhs, rhs })
    }
}

/// Every path of an acyclic graph, shortest first.
struct PathSpace {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl PathSpace {
    fn new(g: &Graph, length_cap: usize) -> Result<Self> {
        if g.has_cycle() {
            return Err(Error::PathSpaceInfinite("the graph has a cycle".into()));
        }
        let mut paths: Vec<Path> = (0..g.nodes.len()).map(Path::empty).collect();
        let mut frontier = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = p.end(g);
                for (e, edge) in g.edges.iter().enumerate() {
                    if edge.src == end {
                        let mut q = p.clone();
                        q.edges.push(e);
                        if q.edges.len() > length_cap {
                            return Err(Error::PathSpaceInfinite(format!("a path is longer than the cap {length_cap}")));
                        }
                        next.push(q);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            if paths.len() > PATH_CAP {
                return Err(Error::SizeCapExceeded { what: "paths".into(), size: paths.len() as u128, cap: PATH_CAP as u128 });
            }
            frontier = next;
        }
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(PathSpace { paths, index })
    }

    fn of(&self, p: &Path) -> usize {
        self.index[p]
    }
}

/// The free category on an acyclic graph: objects are nodes, morphisms are paths.
pub fn path_category(g: &Graph, length_cap: usize) -> Result<FiniteCategory> {
    let space = PathSpace::new(g, length_cap)?;
    let morphisms = space.paths.iter().map(|p| (p.id(g), g.nodes[p.start].clone(), g.nodes[p.end(g)].clone()));
    let identities = (0..g.nodes.len()).map(|v| (g.nodes[v].clone(), Path::empty(v).id(g)));
    let mut composition = Vec::new();
    for a in &space.paths {
        for b in space.paths.iter().filter(|b| b.start == a.end(g)) {
            composition.push((a.id(g), b.id(g), a.then(b).id(g)));
        }
    }
    FiniteCategory::new(g.nodes.iter().cloned(), morphisms, identities, composition)
}

/// `G/E` together with the canonical functor from paths to classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCategory {
    pub category: FiniteCategory,
    /// Every path of the graph, shortest first.
    pub paths: Vec<Path>,
    /// `class_of[i]` is the morphism of `category` that `paths[i]` lands in.
    pub class_of: Vec<usize>,
}

impl QuotientCategory {
    pub fn class(&self, p: &Path) -> Option<usize> {
        self.paths.iter().position(|q| q == p).map(|i| self.class_of[i])
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    // keep the earlier (shorter) path as the root so it names the class
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi] = lo;
    true
}

/// The least congruence containing `eqs`, and the category of its classes.
/// Each class is named after its shortest path.
pub fn quotient_category(g: &Graph, eqs: &[Equation], length_cap: usize) -> Result<QuotientCategory> {
    for q in eqs {
        Equation::new(g, q.lhs.clone(), q.rhs.clone())?;
    }
    let space = PathSpace::new(g, length_cap)?;
    let n = space.paths.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for q in eqs {
        union(&mut parent, space.of(&q.lhs), space.of(&q.rhs));
    }
    // whisker every path with its class root by single edges until nothing merges
    loop {
        let mut changed = false;
        for p in 0..n {
            let r = find(&mut parent, p);
            if r == p {
                continue;
            }
            let (pp, rp) = (space.paths[p].clone(), space.paths[r].clone());
            let end = pp.end(g);
            for (e, edge) in g.edges.iter().enumerate() {
                let step = Path { start: edge.src, edges: vec![e] };
                if edge.src == end {
                    changed |= union(&mut parent, space.of(&pp.then(&step)), space.of(&rp.then(&step)));
                }
                if edge.tgt == pp.start {
                    changed |= union(&mut parent, space.of(&step.then(&pp)), space.of(&step.then(&rp)));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let roots: Vec<usize> = (0..n).filter(|&p| find(&mut parent, p) == p).collect();
    let class_index: BTreeMap<usize, usize> = roots.iter().enumerate().map(|(c, &r)| (r, c)).collect();
    let class_of: Vec<usize> = (0..n).map(|p| class_index[&find(&mut parent, p)]).collect();
    let name = |c: usize| space.paths[roots[c]].id(g);
    let morphisms = roots.iter().map(|&r| {
        let p = &space.paths[r];
        (p.id(g), g.nodes[p.start].clone(), g.nodes[p.end(g)].clone())
    });
    let identities = (0..g.nodes.len()).map(|v| (g.nodes[v].clone(), name(class_of[v])));
    let mut table = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if space.paths[a].end(g) != space.paths[b].start {
                continue;
            }
            let ab = class_of[space.of(&space.paths[a].then(&space.paths[b]))];
            if *table.entry((class_of[a], class_of[b])).or_insert(ab) != ab {
                return Err(Error::IllFormedCategory("composition is not well defined on classes".into()));
            }
        }
    }
    let composition = table.into_iter().map(|((a, b), c)| (name(a), name(b), name(c)));
    let category = FiniteCategory::new(g.nodes.iter().cloned(), morphisms, identities, composition)?;
    Ok(QuotientCategory { category, paths: space.paths, class_of })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    graph: Graph,
    target: FiniteCategory,
    nodes: Vec<usize>,
    edges: Vec<usize>,
}

impl Diagram {
    /// `nodes` and `edges` map graph ids to object and morphism ids of `target`.
    pub fn new<N, E>(graph: Graph, target: FiniteCategory, nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = (String, String)>,
        E: IntoIterator<Item = (String, String)>,
    {
        let nodes: BTreeMap<String, String> = nodes.into_iter().collect();
        let edges: BTreeMap<String, String> = edges.into_iter().collect();
        let node_map = graph
            .nodes
            .iter()
            .map(|n| {
                let o = nodes.get(n).ok_or_else(|| Error::IllFormedMorphism(format!("node {n} is not mapped")))?;
                target.object_index(o).ok_or_else(|| Error::DanglingReference(o.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let edge_map = graph
            .edges
            .iter()
            .map(|e| {
                let m = edges.get(&e.id).ok_or_else(|| Error::IllFormedMorphism(format!("edge {} is not mapped", e.id)))?;
                target.morphism_index(m).ok_or_else(|| Error::DanglingReference(m.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        for k in nodes.keys().chain(edges.keys()) {
            if graph.node_index(k).is_none() && graph.edge_index(k).is_none() {
                return Err(Error::DanglingReference(k.clone()));
            }
        }
        Diagram::from_indices(graph, target, node_map, edge_map)
    }

    pub fn from_indices(graph: Graph, target: FiniteCategory, nodes: Vec<usize>, edges: Vec<usize>) -> Result<Self> {
        if nodes.len() != graph.nodes.len() || edges.len() != graph.edges.len() {
            return Err(Error::IllFormedMorphism("diagram maps have the wrong length".into()));
        }
        for (e, &m) in graph.edges.iter().zip(&edges) {
            let mm = target.morphisms().get(m).ok_or_else(|| Error::IllFormedMorphism("morphism out of range".into()))?;
            if mm.src != nodes[e.src] || mm.tgt != nodes[e.tgt] {
                return Err(Error::IllFormedMorphism(format!("edge {} is sent to {} with the wrong endpoints", e.id, mm.id)));
            }
        }
        Ok(Diagram { graph, target, nodes, edges })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn target(&self) -> &FiniteCategory {
        &self.target
    }

    pub fn node_map(&self) -> &[usize] {
        &self.nodes
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edges
    }
}

/// The morphism `D(pi)`: the fold of the edge images, or the identity at `D(start)`.
pub fn diagram_composite(d: &Diagram, p: &Path) -> Result<usize> {
    p.check(&d.graph)?;
    let mut acc = d.target.identity(d.nodes[p.start]);
    for &e in &p.edges {
        acc = d.target.compose(acc, d.edges[e]).expect("endpoints were validated");
    }
    Ok(acc)
}

pub fn dgm_satisfies(d: &Diagram, eq: &Equation) -> Result<bool> {
    Equation::new(&d.graph, eq.lhs.clone(), eq.rhs.clone())?;
    Ok(diagram_composite(d, &eq.lhs)? == diagram_composite(d, &eq.rhs)?)
}

/// Every equation (ordered pair of parallel paths, reflexive ones included) that `d` satisfies.
pub fn dgm_intent(d: &Diagram, length_cap: usize) -> Result<Vec<Equation>> {
    let space = PathSpace::new(&d.graph, length_cap)?;
    let values = space.paths.iter().map(|p| diagram_composite(d, p)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (i, a) in space.paths.iter().enumerate() {
        for (j, b) in space.paths.iter().enumerate() {
            if a.start == b.start && a.end(&d.graph) == b.end(&d.graph) && values[i] == values[j] {
                out.push(Equation { lhs: a.clone(), rhs: b.clone() });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    source: Graph,
    target: Graph,
    nodes: Vec<usize>,
    edges: Vec<usize>,
}

impl GraphMorphism {
    pub fn new<N, E>(source: Graph, target: Graph, nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = (String, String)>,
        E: IntoIterator<Item = (String, String)>,
    {
        let nodes: BTreeMap<String, String> = nodes.into_iter().collect();
        let edges: BTreeMap<String, String> = edges.into_iter().collect();
        let nm = source
            .nodes
            .iter()
            .map(|n| {
                let t = nodes.get(n).ok_or_else(|| Error::IllFormedMorphism(format!("node {n} is not mapped")))?;
                target.node_index(t).ok_or_else(|| Error::DanglingReference(t.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let em = source
            .edges
            .iter()
            .map(|e| {
                let t = edges.get(&e.id).ok_or_else(|| Error::IllFormedMorphism(format!("edge {} is not mapped", e.id)))?;
                target.edge_index(t).ok_or_else(|| Error::DanglingReference(t.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        GraphMorphism::from_indices(source, target, nm, em)
    }

    pub fn from_indices(source: Graph, target: Graph, nodes: Vec<usize>, edges: Vec<usize>) -> Result<Self> {
        if nodes.len() != source.nodes.len() || edges.len() != source.edges.len() {
            return Err(Error::IllFormedMorphism("graph morphism maps have the wrong length".into()));
        }
        for (e, &t) in source.edges.iter().zip(&edges) {
            let te = target.edges.get(t).ok_or_else(|| Error::IllFormedMorphism("edge out of range".into()))?;
            if te.src != nodes[e.src] || te.tgt != nodes[e.tgt] {
                return Err(Error::IllFormedMorphism(format!("edge {} is sent to {} with the wrong endpoints", e.id, te.id)));
            }
        }
        Ok(GraphMorphism { source, target, nodes, edges })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn node_map(&self) -> &[usize] {
        &self.nodes
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edges
    }

    pub fn apply(&self, p: &Path) -> Path {
        Path { start: self.nodes[p.start], edges: p.edges.iter().map(|&e| self.edges[e]).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    /// The equation carried forward along `H`.
    pub equation: Equation,
    /// `H` then `D'`.
    pub diagram: Diagram,
    /// Whether the pulled-back diagram satisfies the original equation.
    pub pulled_satisfies: bool,
    /// Whether `D'` satisfies the translated equation.
    pub translated_satisfies: bool,
}

pub fn translate_along(h: &GraphMorphism, eq: &Equation, d2: &Diagram) -> Result<Translation> {
    if d2.graph != h.target {
        return Err(Error::IllFormedMorphism("the diagram is not over the morphism's target graph".into()));
    }
    let eq = Equation::new(&h.source, eq.lhs.clone(), eq.rhs.clone())?;
    let equation = Equation { lhs: h.apply(&eq.lhs), rhs: h.apply(&eq.rhs) };
    let diagram = Diagram::from_indices(
        h.source.clone(),
        d2.target.clone(),
        h.nodes.iter().map(|&v| d2.nodes[v]).collect(),
        h.edges.iter().map(|&e| d2.edges[e]).collect(),
    )?;
    Ok(Translation {
        pulled_satisfies: dgm_satisfies(&diagram, &eq)?,
        translated_satisfies: dgm_satisfies(d2, &equation)?,
        equation,
        diagram,
    })
}

/// The functor `G/E -> C` through which `D` factors: `[pi] |-> D(pi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub quotient: QuotientCategory,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

pub fn factor_through_quotient(d: &Diagram, eqs: &[Equation], length_cap: usize) -> Result<Factor> {
    for q in eqs {
        if !dgm_satisfies(d, q)? {
            return Err(Error::DoesNotSatisfy(format!("{} = {}", q.lhs.id(&d.graph), q.rhs.id(&d.graph))));
        }
    }
    let quotient = quotient_category(&d.graph, eqs, length_cap)?;
    let classes = quotient.category.morphisms().len();
    let mut morphisms = vec![None; classes];
    for (p, &c) in quotient.paths.iter().zip(&quotient.class_of) {
        let v = diagram_composite(d, p)?;
        if *morphisms[c].get_or_insert(v) != v {
            return Err(Error::DoesNotSatisfy(format!("paths in class {} have different composites", quotient.category.morphisms()[c].id)));
        }
    }
    // every class has a path, so the canonical functor is surjective and the factor is unique
    let morphisms = morphisms.into_iter().map(|m| m.expect("classes are inhabited")).collect::<Vec<_>>();
    let objects = d.nodes.clone();
    if !quotient.category.is_functor(&d.target, &objects, &morphisms) {
        return Err(Error::IllFormedFunctor("the class map is not a functor".into()));
    }
    Ok(Factor { quotient, objects, morphisms })
}
