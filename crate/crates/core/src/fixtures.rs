//! Small named complexes used throughout tests, examples and the CLI docs.

use crate::complex::{CliqueComplex, UNBOUNDED};
use crate::graph::Graph;
use crate::simplex::Simplex;

fn clique(n: usize, edges: &[(usize, usize)]) -> CliqueComplex {
    CliqueComplex::new(Graph::new(n, edges).expect("fixture graph"), UNBOUNDED)
        .expect("fixture complex")
}

/// K₃: one filled triangle.
pub fn triangle() -> CliqueComplex {
    clique(3, &[(0, 1), (1, 2), (0, 2)])
}

pub fn cycle(n: usize) -> CliqueComplex {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    clique(n, &edges)
}

pub fn path(n: usize) -> CliqueComplex {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    clique(n, &edges)
}

/// The full `d`-simplex on vertices `0..=d`.
pub fn simplex_complex(d: usize) -> CliqueComplex {
    CliqueComplex::new(Graph::complete(d + 1), UNBOUNDED).expect("fixture complex")
}

/// K_{2,2,2}; antipodal pairs are {0,1}, {2,3}, {4,5}. Its clique complex
/// is the boundary of the octahedron, a 2-sphere.
pub fn octahedron() -> CliqueComplex {
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if u / 2 != v / 2 {
                edges.push((u, v));
            }
        }
    }
    clique(6, &edges)
}

/// Triangles {0,1,2} and {2,3,4} meeting in the vertex 2.
pub fn bowtie() -> CliqueComplex {
    clique(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
}

/// Triangles {0,1,2} and {0,1,3} glued along the edge {0,1}.
pub fn glued_triangles() -> CliqueComplex {
    clique(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
}

/// Octahedron on 0..6 plus a disjoint triangle on 6, 7, 8.
pub fn octahedron_plus_triangle() -> CliqueComplex {
    let mut edges: Vec<(usize, usize)> = octahedron()
        .graph()
        .edges()
        .map(|(u, v)| (u as usize, v as usize))
        .collect();
    edges.extend([(6, 7), (7, 8), (6, 8)]);
    clique(9, &edges)
}

/// C₄ with a pendant vertex 4 attached to 0.
pub fn cycle_with_pendant() -> Graph {
    Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).expect("fixture graph")
}

/// Maximal faces of the 6-vertex triangulation of the real projective plane.
pub fn projective_plane_facets() -> Vec<Simplex> {
    [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [1, 3, 4],
        [1, 3, 5],
        [2, 3, 5],
        [2, 4, 5],
    ]
    .into_iter()
    .map(|f| Simplex::new(f).expect("fixture simplex"))
    .collect()
}
