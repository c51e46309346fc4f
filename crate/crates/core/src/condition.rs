//! Deciding the degree condition: every strongly connected pure
//! (k+1)-dimensional subcomplex has a vertex of degree at most 2k+1.
//!
//! The exact check peels. Within each facet-adjacency component of the
//! remaining (k+1)-faces, the least-degree vertex is deleted together with
//! every (k+1)-face through it, as long as its degree is at most 2k+1. A
//! violating subcomplex T never loses a face this way: each of its vertices
//! has degree at least 2k+2 in T, hence in any component containing T. So
//! the peel empties exactly when no violating subcomplex exists.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::complex::CliqueComplex;
use crate::error::ConditionError;
use crate::graph::Graph;
use crate::relevant::{facet_components, RelevantSubcomplex};
use crate::simplex::{Simplex, Vertex};

pub const BRUTE_FORCE_FACET_BOUND: usize = 12;
pub const BRUTE_FORCE_VERTEX_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionStatus {
    Satisfied,
    Violated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelEntry {
    pub vertex: Vertex,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub status: ConditionStatus,
    pub witness: Option<RelevantSubcomplex>,
    pub peel_order: Option<Vec<PeelEntry>>,
}

impl ConditionReport {
    pub fn is_satisfied(&self) -> bool {
        self.status == ConditionStatus::Satisfied
    }

    fn satisfied(peel_order: Option<Vec<PeelEntry>>) -> Self {
        ConditionReport {
            status: ConditionStatus::Satisfied,
            witness: None,
            peel_order,
        }
    }

    fn violated(witness: RelevantSubcomplex) -> Self {
        ConditionReport {
            status: ConditionStatus::Violated,
            witness: Some(witness),
            peel_order: None,
        }
    }
}

/// Exact decision by peeling. Component ids in the peel order count every
/// component ever formed, in the order they are created.
pub fn check_condition(c: &CliqueComplex, k: usize) -> ConditionReport {
    let bound = 2 * k + 1;
    let mut next_id = 0usize;
    let mut stack: Vec<(usize, Vec<Simplex>)> = Vec::new();
    let mut push_all = |stack: &mut Vec<(usize, Vec<Simplex>)>, comps: Vec<Vec<Simplex>>| {
        let base = next_id;
        next_id += comps.len();
        stack.extend(
            comps
                .into_iter()
                .enumerate()
                .map(|(i, f)| (base + i, f))
                .rev(),
        );
    };
    push_all(&mut stack, facet_components(c.faces(k + 1)));

    let mut order = Vec::new();
    while let Some((id, facets)) = stack.pop() {
        let comp = RelevantSubcomplex::from_facets(k + 1, facets);
        let (v, deg) = comp
            .degrees()
            .into_iter()
            .min_by_key(|&(v, d)| (d, v))
            .expect("nonempty support");
        if deg > bound {
            return ConditionReport::violated(comp);
        }
        order.push(PeelEntry {
            vertex: v,
            component: id,
        });
        let rest: Vec<Simplex> = comp
            .facets()
            .iter()
            .filter(|f| !f.contains(v))
            .cloned()
            .collect();
        push_all(&mut stack, facet_components(&rest));
    }
    ConditionReport::satisfied(Some(order))
}

/// The `d`-core: the largest induced subgraph with minimum degree at least
/// `d`, as a sorted vertex list.
pub fn core_prefilter(g: &Graph, d: usize) -> Vec<Vertex> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n as Vertex).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<Vertex> = (0..n as Vertex).filter(|&v| deg[v as usize] < d).collect();
    for &v in &queue {
        removed[v as usize] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            let u_idx = u as usize;
            if removed[u_idx] {
                continue;
            }
            deg[u_idx] -= 1;
            if deg[u_idx] < d {
                removed[u_idx] = true;
                queue.push_back(u);
            }
        }
    }
    (0..n as Vertex).filter(|&v| !removed[v as usize]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefilterReport {
    /// `satisfied` when the (2k+2)-core is empty, otherwise `inconclusive`.
    pub verdict: String,
    pub core: Vec<Vertex>,
}

/// Sound shortcut: an empty (2k+2)-core of the graph rules out every
/// violating subcomplex. A nonempty core decides nothing.
pub fn prefilter_condition(c: &CliqueComplex, k: usize) -> PrefilterReport {
    let core = core_prefilter(c.graph(), 2 * k + 2);
    PrefilterReport {
        verdict: if core.is_empty() {
            "satisfied"
        } else {
            "inconclusive"
        }
        .into(),
        core,
    }
}

/// Test oracle. Enumerates facet subsets when there are at most
/// [`BRUTE_FORCE_FACET_BOUND`] (k+1)-faces, otherwise vertex subsets when
/// there are at most [`BRUTE_FORCE_VERTEX_BOUND`] vertices.
pub fn brute_force_condition(
    c: &CliqueComplex,
    k: usize,
) -> Result<ConditionReport, ConditionError> {
    let facets = c.faces(k + 1);
    if facets.len() <= BRUTE_FORCE_FACET_BOUND {
        Ok(brute_force_by_facets(c, k))
    } else if c.vertices().len() <= BRUTE_FORCE_VERTEX_BOUND {
        Ok(brute_force_by_vertices(c, k))
    } else {
        Err(ConditionError::OracleBound {
            facets: facets.len(),
            bound: BRUTE_FORCE_FACET_BOUND,
            vertices: c.vertices().len(),
            vertex_bound: BRUTE_FORCE_VERTEX_BOUND,
        })
    }
}

/// Every nonempty facet subset that is strongly connected is a relevant
/// subcomplex; look for one with all degrees at least 2k+2.
pub fn brute_force_by_facets(c: &CliqueComplex, k: usize) -> ConditionReport {
    let facets = c.faces(k + 1);
    assert!(facets.len() < 32, "facet enumeration bound");
    for mask in 1u32..(1u32 << facets.len()) {
        let chosen: Vec<Simplex> = (0..facets.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| facets[i].clone())
            .collect();
        let sub = RelevantSubcomplex::from_facets(k + 1, chosen);
        if sub.is_strongly_connected() && sub.min_degree() > 2 * k + 1 {
            return ConditionReport::violated(sub);
        }
    }
    ConditionReport::satisfied(None)
}

/// A violating T with support U lies inside one component R of the
/// (k+1)-faces spanned by U, and R has support U with degrees at least
/// those in T. So it suffices to test, for every vertex subset U, the
/// components of the faces U spans.
pub fn brute_force_by_vertices(c: &CliqueComplex, k: usize) -> ConditionReport {
    let vs = c.vertices();
    assert!(vs.len() < 32, "vertex enumeration bound");
    let facets = c.faces(k + 1);
    for mask in 1u32..(1u32 << vs.len()) {
        if (mask.count_ones() as usize) < k + 2 {
            continue;
        }
        let inside = |v: &Vertex| {
            let i = vs.binary_search(v).expect("face vertex in complex");
            mask & (1 << i) != 0
        };
        let spanned: Vec<Simplex> = facets
            .iter()
            .filter(|f| f.vertices().iter().all(inside))
            .cloned()
            .collect();
        for comp in facet_components(&spanned) {
            let sub = RelevantSubcomplex::from_facets(k + 1, comp);
            if sub.min_degree() > 2 * k + 1 {
                return ConditionReport::violated(sub);
            }
        }
    }
    ConditionReport::satisfied(None)
}
