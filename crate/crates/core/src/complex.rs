//! Clique (flag) complexes and the structural operations on them.
//!
//! A [`CliqueComplex`] is determined by its graph: every clique with at most
//! `dim_cap + 1` vertices is a face. Complexes may live on a subset of the
//! ambient vertex ids (links and flag closures keep the original ids), so
//! `vertices()` is not necessarily `0..n`.

use std::fmt::Write as _;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::ComplexError;
use crate::graph::Graph;
use crate::simplex::{Simplex, Vertex};

pub const DEFAULT_FACE_BUDGET: usize = 5_000_000;

/// `dim_cap` value meaning "enumerate every clique".
pub const UNBOUNDED: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct CliqueComplex {
    /// Ambient-sized graph whose edges all lie inside `vertices`. Edgeless
    /// when `dim_cap == 0`.
    graph: Graph,
    vertices: Vec<Vertex>,
    faces: Vec<Vec<Simplex>>,
    index: FxHashSet<Simplex>,
    dim_cap: usize,
}

impl CliqueComplex {
    /// Clique complex of `graph` on all of its vertices, with the default
    /// face budget.
    pub fn new(graph: Graph, dim_cap: usize) -> Result<Self, ComplexError> {
        Self::with_budget(graph, dim_cap, DEFAULT_FACE_BUDGET)
    }

    pub fn with_budget(graph: Graph, dim_cap: usize, budget: usize) -> Result<Self, ComplexError> {
        let vertices = (0..graph.n() as Vertex).collect();
        Self::build(graph, vertices, dim_cap, budget)
    }

    /// Clique complex of the subgraph induced on `vertices` (ids preserved).
    pub fn induced(
        graph: &Graph,
        vertices: &[Vertex],
        dim_cap: usize,
        budget: usize,
    ) -> Result<Self, ComplexError> {
        let mut keep = vec![false; graph.n()];
        for &v in vertices {
            if v as usize >= graph.n() {
                return Err(ComplexError::VertexNotFound(v));
            }
            keep[v as usize] = true;
        }
        let sub = graph.induced(&keep);
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        Self::build(sub, vs, dim_cap, budget)
    }

    fn build(
        graph: Graph,
        vertices: Vec<Vertex>,
        dim_cap: usize,
        budget: usize,
    ) -> Result<Self, ComplexError> {
        let graph = if dim_cap == 0 {
            Graph::empty(graph.n())
        } else {
            graph
        };
        let mut faces: Vec<Vec<Simplex>> = Vec::new();
        let mut total = 0usize;
        let mut stack: Vec<Vertex> = Vec::new();
        for &v in &vertices {
            stack.clear();
            stack.push(v);
            let cands: Vec<Vertex> = graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| u > v)
                .collect();
            extend_cliques(
                &graph, &mut stack, &cands, dim_cap, budget, &mut total, &mut faces,
            )?;
        }
        let mut index = FxHashSet::default();
        index.reserve(total);
        for layer in &faces {
            debug_assert!(layer.windows(2).all(|w| w[0] < w[1]));
            index.extend(layer.iter().cloned());
        }
        Ok(CliqueComplex {
            graph,
            vertices,
            faces,
            index,
            dim_cap,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Dimension of the top face; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    /// Faces of dimension `d`, lexicographically sorted.
    pub fn faces(&self, d: usize) -> &[Simplex] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn num_faces(&self) -> usize {
        self.index.len()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains(s)
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, l)| {
                if d % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Number of edges of the complex at `v`.
    pub fn vertex_degree(&self, v: Vertex) -> Result<usize, ComplexError> {
        if !self.has_vertex(v) {
            return Err(ComplexError::VertexNotFound(v));
        }
        Ok(self.graph.degree(v))
    }

    /// Faces `σ ∪ {w}` one dimension up that are present.
    pub fn cofaces<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = Simplex> + 'a {
        let first = s.vertices()[0];
        self.graph
            .neighbors(first)
            .iter()
            .filter_map(move |&w| s.with_vertex(w))
            .filter(move |t| self.index.contains(t))
    }

    pub fn maximal_faces(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self
            .all_faces()
            .filter(|s| self.cofaces(s).next().is_none())
            .cloned()
            .collect();
        out.sort();
        out
    }

    /// Link of a vertex: the clique complex on its neighbourhood, keeping
    /// the original vertex ids. An isolated vertex has the empty link.
    pub fn link(&self, v: Vertex) -> Result<CliqueComplex, ComplexError> {
        if !self.has_vertex(v) {
            return Err(ComplexError::VertexNotFound(v));
        }
        CliqueComplex::induced(
            &self.graph,
            self.graph.neighbors(v),
            self.dim_cap.saturating_sub(1),
            DEFAULT_FACE_BUDGET,
        )
    }

    /// Star of a vertex: every face containing it.
    pub fn star(&self, v: Vertex) -> Result<FaceSet, ComplexError> {
        let link = self.link(v)?;
        let mut faces = vec![Simplex::vertex(v)];
        faces.extend(
            link.all_faces()
                .filter_map(|s| s.with_vertex(v))
                .filter(|s| self.contains(s)),
        );
        Ok(FaceSet::new(faces))
    }

    /// All faces of dimension at most `i`.
    pub fn skeleton(&self, i: usize) -> CliqueComplex {
        let faces: Vec<Vec<Simplex>> = self.faces.iter().take(i + 1).cloned().collect();
        let index = faces.iter().flatten().cloned().collect();
        let graph = if i == 0 {
            Graph::empty(self.graph.n())
        } else {
            self.graph.clone()
        };
        CliqueComplex {
            graph,
            vertices: self.vertices.clone(),
            faces,
            index,
            dim_cap: i.min(self.dim_cap),
        }
    }

    /// SHA-256 over the vertex count and the sorted maximal faces.
    pub fn fingerprint(&self) -> String {
        fingerprint_of(self.graph.n(), &self.maximal_faces())
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            n: self.graph.n(),
            faces: self.maximal_faces(),
        }
    }

    /// Rebuilds a clique complex from its maximal faces. Fails if the
    /// downward closure of the listed faces is not the clique complex of its
    /// own 1-skeleton.
    pub fn from_json(json: &ComplexJson) -> Result<Self, ComplexError> {
        let closure = SimplicialFaces::closure_of(json.n, &json.faces)?;
        let mut edges = Vec::new();
        for f in &json.faces {
            edges.extend(f.edges().map(|(u, v)| (u as usize, v as usize)));
        }
        let graph = Graph::new(json.n, &edges)?;
        let complex = CliqueComplex::new(graph, UNBOUNDED)?;
        if complex.num_faces() != closure.len() {
            let missing = complex
                .all_faces()
                .find(|s| !closure.contains(s))
                .cloned()
                .ok_or_else(|| ComplexError::Json("face outside the vertex range".into()))?;
            return Err(ComplexError::NotFlag(missing));
        }
        Ok(complex)
    }
}

fn extend_cliques(
    graph: &Graph,
    stack: &mut Vec<Vertex>,
    cands: &[Vertex],
    dim_cap: usize,
    budget: usize,
    total: &mut usize,
    faces: &mut Vec<Vec<Simplex>>,
) -> Result<(), ComplexError> {
    let d = stack.len() - 1;
    if faces.len() <= d {
        faces.push(Vec::new());
    }
    *total += 1;
    if *total > budget {
        return Err(ComplexError::BudgetExceeded { budget });
    }
    faces[d].push(Simplex::from_sorted(stack));
    if d >= dim_cap {
        return Ok(());
    }
    for (i, &w) in cands.iter().enumerate() {
        let nw = graph.neighbors(w);
        let next: Vec<Vertex> = cands[i + 1..]
            .iter()
            .copied()
            .filter(|u| nw.binary_search(u).is_ok())
            .collect();
        stack.push(w);
        extend_cliques(graph, stack, &next, dim_cap, budget, total, faces)?;
        stack.pop();
    }
    Ok(())
}

pub(crate) fn fingerprint_of(n: usize, maximal: &[Simplex]) -> String {
    let mut text = format!("n={n}\n");
    for f in maximal {
        for (i, v) in f.vertices().iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            write!(text, "{v}").unwrap();
        }
        text.push('\n');
    }
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Serialized form of a complex: vertex count plus maximal faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub faces: Vec<Simplex>,
}

/// A sorted, duplicate-free set of faces, not necessarily closed under
/// taking subfaces (stars are the typical example).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FaceSet(Vec<Simplex>);

impl FaceSet {
    pub fn new(mut faces: Vec<Simplex>) -> Self {
        faces.sort();
        faces.dedup();
        FaceSet(faces)
    }

    pub fn as_slice(&self) -> &[Simplex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.0.binary_search(s).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Simplex> {
        self.0.iter()
    }
}

/// Downward closure of a face list, used to validate serialized complexes.
struct SimplicialFaces;

impl SimplicialFaces {
    fn closure_of(n: usize, faces: &[Simplex]) -> Result<FxHashSet<Simplex>, ComplexError> {
        let mut out = FxHashSet::default();
        for f in faces {
            if let Some(&v) = f.vertices().iter().find(|&&v| v as usize >= n) {
                return Err(ComplexError::VertexNotFound(v));
            }
            out.extend(f.faces());
        }
        for v in 0..n as Vertex {
            out.insert(Simplex::vertex(v));
        }
        Ok(out)
    }
}

/// Clique complex of `g` with at most `dim_cap + 1` vertices per face.
pub fn clique_complex(g: &Graph, dim_cap: usize) -> Result<CliqueComplex, ComplexError> {
    CliqueComplex::new(g.clone(), dim_cap)
}

/// Vertex support: every vertex that appears in some face, sorted.
pub fn vsupp<'a>(faces: impl IntoIterator<Item = &'a Simplex>) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = faces
        .into_iter()
        .flat_map(|f| f.vertices().iter().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of edges of the (downward closure of the) face set containing `v`.
pub fn vertex_degree_in<'a>(
    faces: impl IntoIterator<Item = &'a Simplex>,
    v: Vertex,
) -> Result<usize, ComplexError> {
    let mut found = false;
    let mut nbrs: Vec<Vertex> = Vec::new();
    for f in faces {
        if f.contains(v) {
            found = true;
            nbrs.extend(f.vertices().iter().copied().filter(|&u| u != v));
        }
    }
    if !found {
        return Err(ComplexError::VertexNotFound(v));
    }
    nbrs.sort_unstable();
    nbrs.dedup();
    Ok(nbrs.len())
}

/// 1-skeleton of a face set, as an ambient-sized graph.
pub fn one_skeleton<'a>(n: usize, faces: impl IntoIterator<Item = &'a Simplex>) -> Graph {
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for f in faces {
        for (u, v) in f.edges() {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    Graph::from_sorted_adjacency(adj)
}

/// Flag closure: the clique complex of the face set's 1-skeleton, on the
/// face set's vertex support. `n` is the ambient vertex count.
pub fn flag_closure<'a>(
    n: usize,
    faces: impl IntoIterator<Item = &'a Simplex> + Clone,
) -> Result<CliqueComplex, ComplexError> {
    if let Some(&v) = vsupp(faces.clone()).iter().find(|&&v| v as usize >= n) {
        return Err(ComplexError::VertexNotFound(v));
    }
    let support = vsupp(faces.clone());
    let graph = one_skeleton(n, faces);
    CliqueComplex::induced(&graph, &support, UNBOUNDED, DEFAULT_FACE_BUDGET)
}
