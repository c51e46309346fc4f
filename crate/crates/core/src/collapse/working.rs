use rustc_hash::FxHashSet;

use super::CollapseStep;
use crate::complex::CliqueComplex;
use crate::error::CollapseError;
use crate::graph::Graph;
use crate::homology::SimplicialComplex;
use crate::simplex::Simplex;

/// Mutable copy of a clique complex that shrinks under elementary collapses.
/// Coface lookups go through the original graph, whose edges are a superset
/// of the current 1-skeleton.
#[derive(Clone, Debug)]
pub struct WorkingComplex {
    graph: Graph,
    faces: Vec<FxHashSet<Simplex>>,
}

impl WorkingComplex {
    pub fn from_complex(c: &CliqueComplex) -> Self {
        let top = c.dim().map_or(0, |d| d + 1);
        let faces = (0..top)
            .map(|d| c.faces(d).iter().cloned().collect())
            .collect();
        WorkingComplex {
            graph: c.graph().clone(),
            faces,
        }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.faces.get(s.dim()).is_some_and(|l| l.contains(s))
    }

    /// Present faces `s ∪ {w}`.
    pub fn cofaces<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = Simplex> + 'a {
        let up = self.faces.get(s.len());
        self.graph
            .neighbors(s.vertices()[0])
            .iter()
            .filter_map(move |&w| s.with_vertex(w))
            .filter(move |t| up.is_some_and(|l| l.contains(t)))
    }

    /// The coface `τ` making `s` a free face, if `s` is present, has exactly
    /// one coface one dimension up, and that coface is maximal.
    pub fn free_coface(&self, s: &Simplex) -> Option<Simplex> {
        if !self.contains(s) {
            return None;
        }
        let mut it = self.cofaces(s);
        let tau = it.next()?;
        if it.next().is_some() || self.cofaces(&tau).next().is_some() {
            return None;
        }
        Some(tau)
    }

    pub fn check_step(&self, step: &CollapseStep) -> Result<(), CollapseError> {
        let not_free = |reason: &str| CollapseError::NotFree {
            free: step.free_face.clone(),
            coface: step.coface.clone(),
            reason: reason.to_string(),
        };
        if !step.is_elementary() {
            return Err(CollapseError::NotProperFace {
                sigma: step.free_face.clone(),
                tau: step.coface.clone(),
            });
        }
        if !self.contains(&step.free_face) {
            return Err(not_free("free face absent"));
        }
        if !self.contains(&step.coface) {
            return Err(not_free("coface absent"));
        }
        match self.free_coface(&step.free_face) {
            Some(t) if t == step.coface => Ok(()),
            _ => Err(not_free("face lies in more than one maximal face")),
        }
    }

    /// Removes `step.free_face` and `step.coface` after checking freeness.
    pub fn apply(&mut self, step: &CollapseStep) -> Result<(), CollapseError> {
        self.check_step(step)?;
        self.faces[step.coface.dim()].remove(&step.coface);
        self.faces[step.free_face.dim()].remove(&step.free_face);
        while self.faces.last().is_some_and(|l| l.is_empty()) {
            self.faces.pop();
        }
        Ok(())
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|l| l.len()).collect()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(|l| l.len()).sum()
    }

    /// Number of faces of dimension at least `d`.
    pub fn count_from(&self, d: usize) -> usize {
        self.faces.iter().skip(d).map(|l| l.len()).sum()
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

    /// Faces of dimension `d`, sorted.
    pub fn faces(&self, d: usize) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self
            .faces
            .get(d)
            .map(|l| l.iter().cloned().collect())
            .unwrap_or_default();
        out.sort();
        out
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn to_simplicial(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed_faces(self.all_faces().cloned())
            .expect("collapses keep the complex downward closed")
    }
}

/// Copying form of [`WorkingComplex::apply`].
pub fn elementary_collapse(
    c: &WorkingComplex,
    step: &CollapseStep,
) -> Result<WorkingComplex, CollapseError> {
    let mut out = c.clone();
    out.apply(step)?;
    Ok(out)
}
