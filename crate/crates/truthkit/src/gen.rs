//! Seeded random instances for law checking and property tests.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cls::{Classification, Mask, TypeMap, TypeSet};
use crate::dgm::{quotient_category, Diagram, Equation, Graph, GraphMorphism, Path};
use crate::fol::{FolStructure, Record};
use crate::theory::{Sequent, Theory};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

/// Type set of size `n` with ids drawn from `p, q, r, ...`, optionally prefixed.
pub fn type_set(n: usize, prefix: &str) -> TypeSet {
    let ids = (0..n).map(|i| match NAMES.get(i) {
        Some(s) => format!("{prefix}{s}"),
        None => format!("{prefix}t{i}"),
    });
    TypeSet::new(ids).expect("generated ids are distinct")
}

pub fn mask(r: &mut impl Rng, y: &TypeSet) -> Mask {
    r.gen::<u64>() & y.full_mask()
}

pub fn classification(r: &mut impl Rng, y: &TypeSet, max_instances: usize) -> Classification {
    let n = r.gen_range(0..=max_instances);
    Classification::from_states(y.clone(), (0..n).map(|i| (format!("x{i}"), mask(r, y)))).expect("distinct ids")
}

/// A sequent biased towards small sides, so theories are neither trivial nor absurd too often.
pub fn sequent(r: &mut impl Rng, y: &TypeSet) -> Sequent {
    let sparse = |r: &mut dyn rand::RngCore| {
        let mut m = 0;
        for i in 0..y.len() {
            if r.gen_bool(0.35) {
                m |= 1 << i;
            }
        }
        m
    };
    Sequent::new(sparse(r), sparse(r))
}

pub fn theory(r: &mut impl Rng, y: &TypeSet, max_generators: usize) -> Theory {
    let n = r.gen_range(0..=max_generators);
    Theory::new(y.clone(), (0..n).map(|_| sequent(r, y))).expect("sequents over y")
}

pub fn type_map(r: &mut impl Rng, source: &TypeSet, target: &TypeSet) -> TypeMap {
    assert!(!target.is_empty() || source.is_empty(), "no map into an empty type set");
    let image = (0..source.len()).map(|_| r.gen_range(0..target.len())).collect();
    TypeMap::from_indices(source.clone(), target.clone(), image).expect("indices in range")
}

/// A random subset of `items`, each kept with probability `p`.
pub fn sample<T: Clone>(r: &mut impl Rng, items: impl IntoIterator<Item = T>, p: f64) -> Vec<T> {
    items.into_iter().filter(|_| r.gen_bool(p)).collect()
}

pub fn pick<'a, T>(r: &mut impl Rng, items: &'a [T]) -> Option<&'a T> {
    items.choose(r)
}

/// Acyclic graph with nodes `{prefix}0..` and edges only from lower to higher nodes.
pub fn graph(r: &mut impl Rng, max_nodes: usize, max_edges: usize, prefix: &str) -> Graph {
    let n = r.gen_range(1..=max_nodes.max(1));
    let nodes: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let m = if n > 1 { r.gen_range(0..=max_edges) } else { 0 };
    let edges = (0..m).map(|k| {
        let a = r.gen_range(0..n - 1);
        let b = r.gen_range(a + 1..n);
        (format!("{prefix}e{k}"), nodes[a].clone(), nodes[b].clone())
    });
    let edges: Vec<_> = edges.collect();
    Graph::new(nodes, edges).expect("generated graph is well formed")
}

fn paths(g: &Graph) -> Vec<Path> {
    let mut out: Vec<Path> = (0..g.nodes().len()).map(Path::empty).collect();
    let mut i = 0;
    while i < out.len() {
        let p = out[i].clone();
        for (e, edge) in g.edges().iter().enumerate() {
            if edge.src == p.end(g) {
                let mut q = p.clone();
                q.edges.push(e);
                out.push(q);
            }
        }
        i += 1;
    }
    out
}

/// A pair of parallel paths, often non-trivial.
pub fn equation(r: &mut impl Rng, g: &Graph) -> Equation {
    let ps = paths(g);
    let a = ps[r.gen_range(0..ps.len())].clone();
    let parallel: Vec<&Path> = ps.iter().filter(|b| b.start == a.start && b.end(g) == a.end(g)).collect();
    let b = (*parallel[r.gen_range(0..parallel.len())]).clone();
    Equation::new(g, a, b).expect("parallel by construction")
}

/// A diagram over `g` into a random quotient of `g`'s path category,
/// sending each edge to a random morphism with the right endpoints.
pub fn diagram(r: &mut impl Rng, g: &Graph, max_equations: usize) -> Diagram {
    let n = r.gen_range(0..=max_equations);
    let eqs: Vec<Equation> = (0..n).map(|_| equation(r, g)).collect();
    let q = quotient_category(g, &eqs, 16).expect("small acyclic graph").category;
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let hom = q.hom(e.src, e.tgt);
            hom[r.gen_range(0..hom.len())]
        })
        .collect();
    Diagram::from_indices(g.clone(), q, (0..g.nodes().len()).collect(), edges).expect("endpoints respected")
}

/// A graph morphism into `target`: each source edge copies some target edge
/// between the images of its endpoints, so the source is acyclic whenever the target is.
pub fn graph_morphism(r: &mut impl Rng, target: &Graph, max_nodes: usize, max_edges: usize) -> GraphMorphism {
    let n = r.gen_range(1..=max_nodes.max(1));
    let nodes: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let node_map: Vec<usize> = (0..n).map(|_| r.gen_range(0..target.nodes().len())).collect();
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    if !target.edges().is_empty() {
        for k in 0..r.gen_range(0..=max_edges) {
            let t = r.gen_range(0..target.edges().len());
            let te = &target.edges()[t];
            let srcs: Vec<usize> = (0..n).filter(|&v| node_map[v] == te.src).collect();
            let tgts: Vec<usize> = (0..n).filter(|&v| node_map[v] == te.tgt).collect();
            if let (Some(&a), Some(&b)) = (pick(r, &srcs), pick(r, &tgts)) {
                edges.push((format!("se{k}"), nodes[a].clone(), nodes[b].clone()));
                edge_map.push(t);
            }
        }
    }
    let source = Graph::new(nodes, edges).expect("generated graph is well formed");
    GraphMorphism::from_indices(source, target.clone(), node_map, edge_map).expect("edges copy target edges")
}

/// A unified, trim structure with one relation type per tuple: tables `T0..`,
/// columns only from lower to higher tables, closed under composition.
pub fn unified_structure(r: &mut impl Rng, max_tables: usize, max_rows: usize) -> FolStructure {
    let k = r.gen_range(1..=max_tables.max(1));
    let tables: Vec<String> = (0..k).map(|i| format!("T{i}")).collect();
    let rows: Vec<Vec<String>> =
        (0..k).map(|i| (0..r.gen_range(0..=max_rows)).map(|j| format!("t{i}r{j}")).collect()).collect();
    // (src, tgt, row map as indices)
    let mut cols: Vec<(String, usize, usize, Vec<usize>)> = Vec::new();
    for n in 0..r.gen_range(0..=3) {
        if k < 2 {
            break;
        }
        let a = r.gen_range(0..k - 1);
        let b = r.gen_range(a + 1..k);
        if rows[b].is_empty() && !rows[a].is_empty() {
            continue;
        }
        let map = rows[a].iter().map(|_| r.gen_range(0..rows[b].len())).collect();
        cols.push((format!("c{n}"), a, b, map));
    }
    loop {
        let mut added = None;
        'search: for x in &cols {
            for y in cols.iter().filter(|y| y.1 == x.2) {
                let ext: Vec<usize> = x.3.iter().map(|&v| y.3[v]).collect();
                if !cols.iter().any(|z| z.1 == x.1 && z.2 == y.2 && z.3 == ext) {
                    added = Some((format!("{}.{}", x.0, y.0), x.1, y.2, ext));
                    break 'search;
                }
            }
        }
        match added {
            Some(c) => cols.push(c),
            None => break,
        }
    }
    let ty = TypeSet::new(tables.iter().cloned()).expect("distinct tables");
    let incidence: Vec<(String, String)> =
        rows.iter().enumerate().flat_map(|(i, rs)| rs.iter().map(move |x| (x.clone(), format!("T{i}")))).collect();
    let cls = Classification::new(ty, incidence.iter().map(|(x, _)| x.clone()), incidence.iter().cloned()).expect("valid");
    let reference = cols.iter().map(|c| (c.0.clone(), tables[c.2].clone())).collect();
    let mut tuples = std::collections::BTreeMap::new();
    for (i, rs) in rows.iter().enumerate() {
        for (j, x) in rs.iter().enumerate() {
            let rec: Record = cols.iter().filter(|c| c.1 == i).map(|c| (c.0.clone(), rows[c.2][c.3[j]].clone())).collect();
            tuples.insert(x.clone(), rec);
        }
    }
    let signatures = (0..k)
        .map(|i| (tables[i].clone(), cols.iter().filter(|c| c.1 == i).map(|c| (c.0.clone(), tables[c.2].clone())).collect()))
        .collect();
    FolStructure::new(cols.iter().map(|c| c.0.clone()), cls.clone(), cls, reference, tuples, signatures).expect("valid by construction")
}
