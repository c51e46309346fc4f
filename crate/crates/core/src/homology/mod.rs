//! Integer simplicial homology of arbitrary finite simplicial complexes,
//! computed from signed boundary matrices and their Smith normal forms.
//! Used as an oracle independent of the collapse machinery.

mod snf;

use num_traits::ToPrimitive;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

pub use snf::{smith_normal_form, smith_normal_form_sparse, IntMatrix, SmithForm, SparseMatrix};

use crate::complex::CliqueComplex;
use crate::error::HomologyError;
use crate::simplex::Simplex;

/// A downward-closed set of faces, stored per dimension in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces: Vec<Vec<Simplex>>,
    index: Vec<FxHashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given faces.
    pub fn from_maximal(faces: &[Simplex]) -> Self {
        let mut all: Vec<Simplex> = faces.iter().flat_map(|f| f.faces()).collect();
        all.sort();
        all.dedup();
        Self::from_closed_faces(all).expect("closure is downward closed")
    }

    /// Faces that must already be downward closed.
    pub fn from_closed_faces(
        faces: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self, HomologyError> {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for f in faces {
            let d = f.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(f);
        }
        for layer in &mut by_dim {
            layer.sort();
            layer.dedup();
        }
        let index: Vec<FxHashMap<Simplex, usize>> = by_dim
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        for (d, layer) in by_dim.iter().enumerate().skip(1) {
            for f in layer {
                if let Some(missing) = f.facets().find(|s| !index[d - 1].contains_key(s)) {
                    return Err(HomologyError::NotClosed(missing));
                }
            }
        }
        Ok(SimplicialComplex {
            faces: by_dim,
            index,
        })
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, d: usize) -> &[Simplex] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.get(s.dim()).is_some_and(|m| m.contains_key(s))
    }

    pub fn maximal_faces(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = Vec::new();
        for (d, layer) in self.faces.iter().enumerate() {
            let covered: FxHashSet<Simplex> =
                self.faces(d + 1).iter().flat_map(|t| t.facets()).collect();
            out.extend(layer.iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out.sort();
        out
    }
}

impl From<&CliqueComplex> for SimplicialComplex {
    fn from(c: &CliqueComplex) -> Self {
        let faces: Vec<Vec<Simplex>> = (0..c.dim().map_or(0, |d| d + 1))
            .map(|d| c.faces(d).to_vec())
            .collect();
        let index = faces
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        SimplicialComplex { faces, index }
    }
}

/// Signed incidence matrix from `d`-faces (columns) to `(d-1)`-faces
/// (rows). Deleting the i-th vertex contributes sign `(-1)^i`.
pub fn boundary_matrix(complex: &SimplicialComplex, d: usize) -> SparseMatrix {
    let cols = complex.faces(d);
    if d == 0 || cols.is_empty() {
        return SparseMatrix {
            rows: if d == 0 {
                0
            } else {
                complex.faces(d - 1).len()
            },
            columns: vec![Vec::new(); cols.len()],
        };
    }
    let rows_index = &complex.index[d - 1];
    let columns = cols
        .iter()
        .map(|f| {
            let mut col: Vec<(usize, i64)> = f
                .facets()
                .enumerate()
                .map(|(i, s)| (rows_index[&s], if i % 2 == 0 { 1 } else { -1 }))
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    SparseMatrix {
        rows: complex.faces(d - 1).len(),
        columns,
    }
}

/// Betti numbers and torsion coefficients per dimension, plus the Euler
/// characteristic of the whole complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
    pub euler: i64,
}

impl HomologyProfile {
    pub fn betti_at(&self, d: usize) -> usize {
        self.betti.get(d).copied().unwrap_or(0)
    }
}

/// Homology in dimensions `0..=max_dim`; dimensions above the complex
/// report zero.
pub fn homology_profile(
    complex: &SimplicialComplex,
    max_dim: usize,
) -> Result<HomologyProfile, HomologyError> {
    let top = complex.dim().map_or(0, |d| d + 1);
    // smith[d] is the Smith form of ∂_d, for d in 0..=max_dim+1
    let forms: Vec<SmithForm> = (0..=max_dim + 1)
        .map(|d| {
            if d == 0 || d >= top {
                SmithForm {
                    rank: 0,
                    factors: Vec::new(),
                }
            } else {
                smith_normal_form_sparse(&boundary_matrix(complex, d))
            }
        })
        .collect();
    let mut betti = Vec::with_capacity(max_dim + 1);
    let mut torsion = Vec::with_capacity(max_dim + 1);
    for d in 0..=max_dim {
        let f = complex.faces(d).len();
        betti.push(f - forms[d].rank - forms[d + 1].rank);
        let t = forms[d + 1]
            .torsion()
            .map(|b| {
                b.to_u64()
                    .ok_or_else(|| HomologyError::Overflow(b.to_string()))
            })
            .collect::<Result<Vec<u64>, _>>()?;
        torsion.push(t);
    }
    Ok(HomologyProfile {
        betti,
        torsion,
        euler: euler_characteristic(complex),
    })
}

pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex
        .f_vector()
        .iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}
