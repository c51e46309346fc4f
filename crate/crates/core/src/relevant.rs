//! Maximal relevant subcomplexes: the connected components of the
//! "shares a codimension-one face" relation on the d-faces of a complex,
//! together with their flag closures.

use petgraph::unionfind::UnionFind;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::complex::{flag_closure, one_skeleton, vsupp, CliqueComplex};
use crate::error::ComplexError;
use crate::graph::Graph;
use crate::simplex::{Simplex, Vertex};

/// A strongly connected pure `d`-dimensional subcomplex, stored by its
/// facets. Lower faces are implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelevantSubcomplex {
    d: usize,
    facets: Vec<Simplex>,
    support: Vec<Vertex>,
}

impl RelevantSubcomplex {
    /// Facets must be nonempty, all of dimension `d`; they are sorted here.
    /// Connectivity is not checked (see [`Self::is_strongly_connected`]).
    pub fn from_facets(d: usize, mut facets: Vec<Simplex>) -> Self {
        assert!(!facets.is_empty(), "relevant subcomplex needs a facet");
        assert!(
            facets.iter().all(|f| f.dim() == d),
            "facets of mixed dimension"
        );
        facets.sort();
        facets.dedup();
        let support = vsupp(&facets);
        RelevantSubcomplex { d, facets, support }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn support(&self) -> &[Vertex] {
        &self.support
    }

    pub fn least_facet(&self) -> &Simplex {
        &self.facets[0]
    }

    /// `(vertex, degree)` over the support, degree counted in the 1-skeleton.
    pub fn degrees(&self) -> Vec<(Vertex, usize)> {
        let mut edges: Vec<(Vertex, Vertex)> = self.facets.iter().flat_map(|f| f.edges()).collect();
        edges.sort_unstable();
        edges.dedup();
        let mut deg: FxHashMap<Vertex, usize> = FxHashMap::default();
        for (u, v) in edges {
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
        }
        self.support
            .iter()
            .map(|&v| (v, deg.get(&v).copied().unwrap_or(0)))
            .collect()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees()
            .into_iter()
            .map(|(_, d)| d)
            .min()
            .unwrap_or(0)
    }

    /// Ambient-sized graph of the subcomplex's edges.
    pub fn one_skeleton(&self, n: usize) -> Graph {
        one_skeleton(n, &self.facets)
    }

    pub fn flag_closure(&self, n: usize) -> Result<CliqueComplex, ComplexError> {
        flag_closure(n, &self.facets)
    }

    pub fn is_strongly_connected(&self) -> bool {
        facet_components(&self.facets).len() == 1
    }
}

/// Groups facets (all of one dimension ≥ 1) into components of the
/// shared-ridge relation. Components come out ordered by their least facet
/// and each is sorted, provided the input is sorted.
pub fn facet_components(facets: &[Simplex]) -> Vec<Vec<Simplex>> {
    if facets.is_empty() {
        return Vec::new();
    }
    let mut uf = UnionFind::<usize>::new(facets.len());
    let mut first_with_ridge: FxHashMap<Simplex, usize> = FxHashMap::default();
    for (i, f) in facets.iter().enumerate() {
        for ridge in f.facets() {
            match first_with_ridge.get(&ridge) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    first_with_ridge.insert(ridge, i);
                }
            }
        }
    }
    let mut slot: FxHashMap<usize, usize> = FxHashMap::default();
    let mut out: Vec<Vec<Simplex>> = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        let root = uf.find(i);
        let idx = *slot.entry(root).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[idx].push(f.clone());
    }
    out
}

/// The maximal relevant `d`-subcomplexes of `c`, ordered by least facet.
pub fn facet_adjacency_components(c: &CliqueComplex, d: usize) -> Vec<RelevantSubcomplex> {
    facet_components(c.faces(d))
        .into_iter()
        .map(|facets| RelevantSubcomplex::from_facets(d, facets))
        .collect()
}

/// Each maximal relevant `d`-subcomplex paired with its flag closure.
pub fn closure_partition(
    c: &CliqueComplex,
    d: usize,
) -> Result<Vec<(RelevantSubcomplex, CliqueComplex)>, ComplexError> {
    facet_adjacency_components(c, d)
        .into_iter()
        .map(|s| {
            let closure = s.flag_closure(c.graph().n())?;
            Ok((s, closure))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionViolation {
    pub pair: [usize; 2],
    pub face: Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub pass: bool,
    pub violations: Vec<IntersectionViolation>,
}

/// For every pair of closures: their intersection has dimension at most
/// `d - 1`, and each `(d-1)`-face in it is maximal in at least one of the
/// two. Faces breaking either rule are reported.
pub fn check_intersection_bound(
    pairs: &[(RelevantSubcomplex, CliqueComplex)],
    d: usize,
) -> IntersectionReport {
    let mut violations = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (a, b) = (&pairs[i].1, &pairs[j].1);
            let top = a.dim().unwrap_or(0);
            for dim in d.saturating_sub(1)..=top {
                for face in a.faces(dim) {
                    if !b.contains(face) {
                        continue;
                    }
                    let bad = if dim >= d {
                        true
                    } else {
                        a.cofaces(face).next().is_some() && b.cofaces(face).next().is_some()
                    };
                    if bad {
                        violations.push(IntersectionViolation {
                            pair: [i, j],
                            face: face.clone(),
                        });
                    }
                }
            }
        }
    }
    IntersectionReport {
        pass: violations.is_empty(),
        violations,
    }
}
