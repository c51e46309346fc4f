use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};
use smallvec::SmallVec;

use crate::error::ComplexError;

pub type Vertex = u32;

/// A nonempty, strictly increasing list of vertex ids.
///
/// Ordering is lexicographic on the vertex arrays, so `{0} < {0,1} < {1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Simplex(SmallVec<[Vertex; 8]>);

impl Simplex {
    /// Builds a simplex from arbitrary vertices, sorting them. Fails on an
    /// empty list or repeated vertices.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self, ComplexError> {
        let mut v: SmallVec<[Vertex; 8]> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(ComplexError::InvalidSimplex("empty simplex".into()));
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::InvalidSimplex(format!(
                "repeated vertex in {v:?}"
            )));
        }
        Ok(Simplex(v))
    }

    /// Caller guarantees the slice is nonempty and strictly increasing.
    pub(crate) fn from_sorted(vertices: &[Vertex]) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(SmallVec::from_slice(vertices))
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(SmallVec::from_slice(&[v]))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// `self ∪ {v}`; `None` if `v` is already a vertex.
    pub fn with_vertex(&self, v: Vertex) -> Option<Simplex> {
        match self.0.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Some(Simplex(out))
            }
        }
    }

    /// `self ∖ {v}`; `None` if `v` is absent or the result would be empty.
    pub fn without_vertex(&self, v: Vertex) -> Option<Simplex> {
        let pos = self.0.binary_search(&v).ok()?;
        if self.0.len() == 1 {
            return None;
        }
        let mut out = self.0.clone();
        out.remove(pos);
        Some(Simplex(out))
    }

    /// Codimension-one faces, in the order obtained by deleting vertex 0, 1, ...
    /// Empty for a vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut out = self.0.clone();
            out.remove(i);
            Simplex(out)
        })
    }

    /// All nonempty faces (including `self`).
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 32, "simplex too large to enumerate faces");
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// Vertex pairs of the simplex, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let v = &self.0;
        (0..v.len()).flat_map(move |i| (i + 1..v.len()).map(move |j| (v[i], v[j])))
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vertex>::deserialize(d)?;
        Simplex::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Shorthand for tests and fixtures: `simplex![0, 1, 2]`.
#[macro_export]
macro_rules! simplex {
    ($($v:expr),+ $(,)?) => {
        $crate::simplex::Simplex::new([$($v as u32),+]).expect("valid simplex literal")
    };
}
