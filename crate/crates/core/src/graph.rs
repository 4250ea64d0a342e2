//! Simple undirected graphs with an indexed edge list.
//!
//! Vertices are `0..n`. Edges are stored as a list of normalized pairs
//! `(u, v)` with `u < v`; the list index is the edge's identity throughout the
//! crate (page assignments are indexed by it). Adjacency lists are kept
//! separately so their order can be randomized independently of the edge list
//! (see [`crate::generators::randomize_representation`]).

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph text: {0}")]
    Parse(String),
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to `u < v` and rejecting
    /// self-loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut norm = Vec::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            norm.push(e);
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    /// Same graph with the given adjacency lists. Callers guarantee the lists
    /// match the edge list; only used for representation shuffling.
    pub(crate) fn with_adjacency(
        n: usize,
        edges: Vec<(usize, usize)>,
        adj: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert_eq!(adj.len(), n);
        debug_assert_eq!(adj.iter().map(Vec::len).sum::<usize>(), 2 * edges.len());
        Graph { n, edges, adj }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].contains(&b)
    }

    /// Edge ids incident to each vertex; index matches [`Self::edges`].
    pub fn incident_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(i);
            inc[v].push(i);
        }
        inc
    }

    /// Text form: a line `n m` followed by one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut tokens = text.split_whitespace();
        let mut next_num = |what: &str| -> Result<usize, GraphError> {
            let t = tokens
                .next()
                .ok_or_else(|| GraphError::Parse(format!("missing {what}")))?;
            t.parse()
                .map_err(|_| GraphError::Parse(format!("bad {what}: {t:?}")))
        };
        let n = next_num("vertex count")?;
        let m = next_num("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let u = next_num(&format!("endpoint of edge {i}"))?;
            let v = next_num(&format!("endpoint of edge {i}"))?;
            edges.push((u, v));
        }
        if let Some(t) = tokens.next() {
            return Err(GraphError::Parse(format!("trailing token {t:?}")));
        }
        Graph::new(n, edges)
    }
}
