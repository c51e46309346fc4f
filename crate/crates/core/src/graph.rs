use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::GraphError;
use crate::simplex::Vertex;

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v as Vertex);
            adj[v].push(u as Vertex);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { n, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n as Vertex).filter(|&u| u as usize != v).collect())
            .collect();
        Graph { n, adj }
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.n && self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as Vertex;
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Keeps only the edges with both ends in `keep`; vertex ids unchanged.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let adj = (0..self.n)
            .map(|v| {
                if !keep[v] {
                    return Vec::new();
                }
                self.adj[v]
                    .iter()
                    .copied()
                    .filter(|&u| keep[u as usize])
                    .collect()
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// True iff the graph has exactly one connected component spanning all
    /// `n` vertices. The graph on zero vertices counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().iter().all(|&c| c == 0)
    }

    /// Component label per vertex, labels assigned in order of least vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if label[u as usize] == usize::MAX {
                        label[u as usize] = next;
                        queue.push_back(u as usize);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Parses the `n m` header plus `m` lines of `u v` format.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|e| GraphError::Parse(format!("bad integer {t:?}: {e}")))
        });
        let mut next = |what: &str| {
            tokens
                .next()
                .unwrap_or_else(|| Err(GraphError::Parse(format!("missing {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let u = next(&format!("endpoint of edge {i}"))?;
            let v = next(&format!("endpoint of edge {i}"))?;
            edges.push((u, v));
        }
        if tokens.next().is_some() {
            return Err(GraphError::Parse(format!(
                "more than the declared {m} edges"
            )));
        }
        Graph::new(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}
