use std::cmp::Reverse;
use std::collections::BTreeSet;

use super::working::WorkingComplex;
use super::{CollapseCertificate, CollapseOutcome, CollapseStep, Strategy};
use crate::complex::{CliqueComplex, DEFAULT_FACE_BUDGET, UNBOUNDED};
use crate::error::CollapseError;
use crate::relevant::{facet_components, RelevantSubcomplex};
use crate::simplex::{Simplex, Vertex};

/// Every free pair `(σ, τ)` with `dim σ >= min_dim`, sorted by `σ`.
pub fn find_free_faces(c: &WorkingComplex, min_dim: usize) -> Vec<CollapseStep> {
    let mut out: Vec<CollapseStep> = c
        .all_faces()
        .filter(|s| s.dim() >= min_dim)
        .filter_map(|s| {
            c.free_coface(s).map(|t| CollapseStep {
                free_face: s.clone(),
                coface: t,
            })
        })
        .collect();
    out.sort_by(|a, b| a.free_face.cmp(&b.free_face));
    out
}

/// Factors the collapse of the interval `[σ, τ]` into elementary steps.
/// With `w` the least vertex of `τ ∖ σ`, each `η` in the interval avoiding
/// `w` is paired with `η ∪ {w}`, larger `η` first.
pub fn expand_interval(sigma: &Simplex, tau: &Simplex) -> Result<Vec<CollapseStep>, CollapseError> {
    if sigma.len() >= tau.len() || !sigma.is_subset_of(tau) {
        return Err(CollapseError::NotProperFace {
            sigma: sigma.clone(),
            tau: tau.clone(),
        });
    }
    let extra: Vec<Vertex> = tau
        .vertices()
        .iter()
        .copied()
        .filter(|&v| !sigma.contains(v))
        .collect();
    let w = extra[0];
    let rest = &extra[1..];
    let mut etas: Vec<Simplex> = (0u32..(1 << rest.len()))
        .map(|mask| {
            let mut eta = sigma.clone();
            for (i, &v) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    eta = eta.with_vertex(v).expect("vertex outside sigma");
                }
            }
            eta
        })
        .collect();
    etas.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(etas
        .into_iter()
        .map(|eta| {
            let up = eta.with_vertex(w).expect("w outside eta");
            CollapseStep {
                free_face: eta,
                coface: up,
            }
        })
        .collect())
}

/// Collapses a cone `apex * L` by pairing each apex-free face `σ` with
/// `dim σ >= target_dim - 1` with `σ ∪ {apex}`, highest dimension first.
/// Afterwards the complex has dimension below `target_dim`.
pub fn cone_collapse(
    c: &CliqueComplex,
    apex: Vertex,
    target_dim: usize,
) -> Result<Vec<CollapseStep>, CollapseError> {
    if c.vertex_degree(apex)? + 1 != c.vertices().len() {
        return Err(CollapseError::ApexNotUniversal { apex });
    }
    let mut base: Vec<&Simplex> = c
        .all_faces()
        .filter(|s| !s.contains(apex) && s.len() >= target_dim)
        .collect();
    base.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    base.into_iter()
        .map(|s| {
            let up = s.with_vertex(apex).expect("apex not in s");
            if !c.contains(&up) {
                return Err(CollapseError::NotFree {
                    free: s.clone(),
                    coface: up,
                    reason: "cone face missing (dimension cap too low)".into(),
                });
            }
            Ok(CollapseStep {
                free_face: s.clone(),
                coface: up,
            })
        })
        .collect()
}

/// Collapses a vertex link on at most `2k + 1` vertices down to dimension
/// `k - 1`. A link with a universal vertex is coned off; otherwise every
/// subcomplex has a vertex of degree at most `2k - 1` and the link is
/// handled by the theorem strategy with parameter `k - 1`.
///
/// At `k = 0` the link has at most one vertex and nothing in it can be
/// removed without the empty face; the caller pairs the vertex with its
/// edge directly.
pub fn collapse_link_to_dim(
    link: &CliqueComplex,
    k: usize,
) -> Result<Vec<CollapseStep>, CollapseError> {
    let limit = 2 * k + 1;
    let nv = link.vertices().len();
    if nv > limit {
        return Err(CollapseError::LinkTooLarge {
            vertices: nv,
            limit,
        });
    }
    if k == 0 || link.dim().is_none_or(|d| d < k) {
        return Ok(Vec::new());
    }
    let universal = link
        .vertices()
        .iter()
        .copied()
        .find(|&v| link.graph().degree(v) + 1 == nv);
    if let Some(apex) = universal {
        return cone_collapse(link, apex, k);
    }
    match collapse_to_dim(link, k - 1, Strategy::Theorem)? {
        CollapseOutcome::Success(cert) => Ok(cert.steps),
        CollapseOutcome::Failure { witness } => Err(CollapseError::Internal(format!(
            "link on {nv} vertices without a universal vertex failed the degree condition: {witness:?}"
        ))),
    }
}

/// Maps each link step `(σ, τ)` to `(σ ∪ {v}, τ ∪ {v})`. Free faces must
/// have dimension at least `k - 1` so that lifted free faces have dimension
/// at least `k`.
pub fn lift_steps(
    steps: &[CollapseStep],
    v: Vertex,
    k: usize,
) -> Result<Vec<CollapseStep>, CollapseError> {
    steps
        .iter()
        .map(|s| {
            let err = |reason: &str| CollapseError::Lift {
                free: s.free_face.clone(),
                coface: s.coface.clone(),
                vertex: v,
                reason: reason.into(),
            };
            if s.free_face.len() < k {
                return Err(err("free face below dimension k - 1"));
            }
            match (s.free_face.with_vertex(v), s.coface.with_vertex(v)) {
                (Some(free_face), Some(coface)) => Ok(CollapseStep { free_face, coface }),
                _ => Err(err("step already contains the lifting vertex")),
            }
        })
        .collect()
}

/// Collapses `c` to dimension at most `k` (i.e. shows it is
/// (k+1)-collapsible), removing only faces of dimension at least `k`.
pub fn collapse_to_dim(
    c: &CliqueComplex,
    k: usize,
    strategy: Strategy,
) -> Result<CollapseOutcome, CollapseError> {
    match strategy {
        Strategy::Theorem => theorem_collapse(c, k),
        Strategy::Greedy => greedy_collapse(c, k),
    }
}

/// Vertex of least degree (ties by id) if that degree is at most `bound`.
fn pick_low_degree_vertex(s: &RelevantSubcomplex, bound: usize) -> Option<Vertex> {
    s.degrees()
        .into_iter()
        .filter(|&(_, d)| d <= bound)
        .min_by_key(|&(v, d)| (d, v))
        .map(|(v, _)| v)
}

fn theorem_collapse(c: &CliqueComplex, k: usize) -> Result<CollapseOutcome, CollapseError> {
    let n = c.graph().n();
    let mut work = WorkingComplex::from_complex(c);
    let mut steps: Vec<CollapseStep> = Vec::new();

    // Each pending entry is the facet set of a maximal relevant
    // (k+1)-subcomplex S of the part still to be cleared. Clearing the
    // star of one low-degree vertex v leaves the clique complex S' on
    // vsupp(S) - v, whose own components are pushed back.
    let mut pending = facet_components(c.faces(k + 1));
    pending.reverse();
    while let Some(facets) = pending.pop() {
        let s = RelevantSubcomplex::from_facets(k + 1, facets);
        let Some(v) = pick_low_degree_vertex(&s, 2 * k + 1) else {
            return Ok(CollapseOutcome::Failure { witness: Some(s) });
        };
        let skeleton = s.one_skeleton(n);
        let star_steps = if k == 0 {
            let u = skeleton.neighbors(v)[0];
            vec![CollapseStep {
                free_face: Simplex::vertex(v),
                coface: Simplex::new([u, v])?,
            }]
        } else {
            let link = CliqueComplex::induced(
                &skeleton,
                skeleton.neighbors(v),
                UNBOUNDED,
                DEFAULT_FACE_BUDGET,
            )?;
            lift_steps(&collapse_link_to_dim(&link, k)?, v, k)?
        };
        for step in &star_steps {
            work.apply(step).map_err(|e| {
                CollapseError::Internal(format!("lifted step {step} at vertex {v} rejected: {e}"))
            })?;
        }
        steps.extend(star_steps);

        let rest: Vec<Simplex> = s
            .facets()
            .iter()
            .filter(|f| !f.contains(v))
            .cloned()
            .collect();
        let mut sub = facet_components(&rest);
        sub.reverse();
        pending.extend(sub);
    }

    if work.count_from(k + 1) != 0 {
        return Err(CollapseError::Internal(format!(
            "faces of dimension > {k} survived: f-vector {:?}",
            work.f_vector()
        )));
    }
    Ok(CollapseOutcome::Success(CollapseCertificate {
        k,
        fingerprint: c.fingerprint(),
        steps,
        final_dim: work.dim().unwrap_or(0),
    }))
}

fn greedy_collapse(c: &CliqueComplex, k: usize) -> Result<CollapseOutcome, CollapseError> {
    let mut work = WorkingComplex::from_complex(c);
    let mut steps = Vec::new();
    // candidates ordered by dimension (highest first), then lexicographically
    let mut queue: BTreeSet<(Reverse<usize>, Simplex)> = c
        .all_faces()
        .filter(|s| s.dim() >= k)
        .map(|s| (Reverse(s.dim()), s.clone()))
        .collect();
    while work.count_from(k + 1) > 0 {
        let Some((_, sigma)) = queue.pop_first() else {
            return Ok(CollapseOutcome::Failure { witness: None });
        };
        let Some(tau) = work.free_coface(&sigma) else {
            continue;
        };
        let step = CollapseStep {
            free_face: sigma,
            coface: tau,
        };
        work.apply(&step)?;
        // Only faces of τ one or two dimensions down can change status.
        for rho in step.coface.facets() {
            if rho != step.free_face {
                for low in rho.facets() {
                    if low.dim() >= k && work.contains(&low) {
                        queue.insert((Reverse(low.dim()), low));
                    }
                }
                if rho.dim() >= k {
                    queue.insert((Reverse(rho.dim()), rho));
                }
            }
        }
        for low in step.free_face.facets() {
            if low.dim() >= k && work.contains(&low) {
                queue.insert((Reverse(low.dim()), low));
            }
        }
        steps.push(step);
    }
    Ok(CollapseOutcome::Success(CollapseCertificate {
        k,
        fingerprint: c.fingerprint(),
        steps,
        final_dim: work.dim().unwrap_or(0),
    }))
}
