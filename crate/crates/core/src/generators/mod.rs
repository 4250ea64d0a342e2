//! Seeded benchmark graph generators.
//!
//! Ten graph families cover the usual benchmark spectrum: sparse and dense
//! random graphs, three flavors of near-planar graphs, k-trees, and the
//! structured classes (hypercubes, cube-connected cycles, toroidal meshes).
//! Every generator is a pure function of its parameters and a `u64` seed and
//! always produces a simple graph.
//!
//! [`randomize_representation`] relabels a graph and shuffles its adjacency
//! lists, so heuristics can be evaluated free of construction-order artifacts.

mod geometric;
mod planar;

pub use geometric::{gen_kplanar_geometric, max_kplanar_edges, GeometricDrawing, PointSet};
pub use planar::{gen_apollonian, gen_oneplanar_topological, gen_planar_triangulation, Embedding};

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;
use thiserror::Error;

use crate::graph::Graph;
use crate::seeds::rng_from_seed;

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("requested {requested} edges but a simple graph on {n} vertices has at most {max}")]
    TooManyEdges {
        n: usize,
        requested: usize,
        max: usize,
    },
    #[error("edge probability must be in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("{class} needs at least {min} vertices, got {n}")]
    TooFewVertices {
        class: &'static str,
        n: usize,
        min: usize,
    },
    #[error("k-tree needs n >= k >= 1, got n = {n}, k = {k}")]
    BadKtreeOrder { n: usize, k: usize },
    #[error("hypercube dimension must be in 1..=32, got {0}")]
    BadHypercubeDimension(usize),
    #[error("cube-connected cycles need dimension in 3..=32, got {0}")]
    BadCccDimension(usize),
    #[error("cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),
    #[error("per-edge crossing budget must be at most 4, got {0}")]
    BadCrossingBudget(usize),
    #[error("unknown graph class {0:?}")]
    UnknownClass(String),
}

/// The graph families this crate can generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    RandomLinear,
    RandomQuadratic,
    PlanarTopological,
    OneplanarTopological,
    KplanarGeometric,
    Ktree,
    Hypercube,
    Ccc,
    Toroidal,
    Toroidal3,
}

impl GraphClass {
    pub const ALL: [GraphClass; 10] = [
        GraphClass::RandomLinear,
        GraphClass::RandomQuadratic,
        GraphClass::PlanarTopological,
        GraphClass::OneplanarTopological,
        GraphClass::KplanarGeometric,
        GraphClass::Ktree,
        GraphClass::Hypercube,
        GraphClass::Ccc,
        GraphClass::Toroidal,
        GraphClass::Toroidal3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphClass::RandomLinear => "random-linear",
            GraphClass::RandomQuadratic => "random-quadratic",
            GraphClass::PlanarTopological => "planar-topological",
            GraphClass::OneplanarTopological => "oneplanar-topological",
            GraphClass::KplanarGeometric => "kplanar-geometric",
            GraphClass::Ktree => "ktree",
            GraphClass::Hypercube => "hypercube",
            GraphClass::Ccc => "ccc",
            GraphClass::Toroidal => "toroidal",
            GraphClass::Toroidal3 => "toroidal3",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphClass {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| GeneratorError::UnknownClass(s.to_string()))
    }
}

/// A fully parameterized generator invocation; [`GeneratorSpec::generate`]
/// turns it into a graph for a given seed.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    RandomLinear { n: usize, a: usize },
    RandomQuadratic { n: usize, p: f64 },
    PlanarTopological { n: usize },
    OneplanarTopological { n: usize },
    KplanarGeometric { n: usize, k: usize },
    Ktree { n: usize, k: usize },
    Hypercube { d: usize },
    Ccc { d: usize },
    Toroidal { i: usize, j: usize },
    Toroidal3 { i: usize, j: usize, l: usize },
}

impl GeneratorSpec {
    pub fn class(&self) -> GraphClass {
        match self {
            GeneratorSpec::RandomLinear { .. } => GraphClass::RandomLinear,
            GeneratorSpec::RandomQuadratic { .. } => GraphClass::RandomQuadratic,
            GeneratorSpec::PlanarTopological { .. } => GraphClass::PlanarTopological,
            GeneratorSpec::OneplanarTopological { .. } => GraphClass::OneplanarTopological,
            GeneratorSpec::KplanarGeometric { .. } => GraphClass::KplanarGeometric,
            GeneratorSpec::Ktree { .. } => GraphClass::Ktree,
            GeneratorSpec::Hypercube { .. } => GraphClass::Hypercube,
            GeneratorSpec::Ccc { .. } => GraphClass::Ccc,
            GeneratorSpec::Toroidal { .. } => GraphClass::Toroidal,
            GeneratorSpec::Toroidal3 { .. } => GraphClass::Toroidal3,
        }
    }

    /// Compact parameter-bearing label, usable in file names and CSV ids
    /// (never contains commas or whitespace).
    pub fn label(&self) -> String {
        match *self {
            GeneratorSpec::RandomLinear { n, a } => format!("random-linear-n{n}-a{a}"),
            GeneratorSpec::RandomQuadratic { n, p } => format!("random-quadratic-n{n}-p{p}"),
            GeneratorSpec::PlanarTopological { n } => format!("planar-topological-n{n}"),
            GeneratorSpec::OneplanarTopological { n } => format!("oneplanar-topological-n{n}"),
            GeneratorSpec::KplanarGeometric { n, k } => format!("kplanar-geometric-n{n}-k{k}"),
            GeneratorSpec::Ktree { n, k } => format!("ktree-n{n}-k{k}"),
            GeneratorSpec::Hypercube { d } => format!("hypercube-d{d}"),
            GeneratorSpec::Ccc { d } => format!("ccc-d{d}"),
            GeneratorSpec::Toroidal { i, j } => format!("toroidal-{i}x{j}"),
            GeneratorSpec::Toroidal3 { i, j, l } => format!("toroidal3-{i}x{j}x{l}"),
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Graph, GeneratorError> {
        match *self {
            GeneratorSpec::RandomLinear { n, a } => gen_random_linear(n, a, seed),
            GeneratorSpec::RandomQuadratic { n, p } => gen_random_quadratic(n, p, seed),
            GeneratorSpec::PlanarTopological { n } => gen_planar_triangulation(n, seed),
            GeneratorSpec::OneplanarTopological { n } => {
                gen_oneplanar_topological(n, seed).map(|(g, _)| g)
            }
            GeneratorSpec::KplanarGeometric { n, k } => {
                gen_kplanar_geometric(n, k, seed).map(|(g, _)| g)
            }
            GeneratorSpec::Ktree { n, k } => gen_ktree(n, k, seed),
            GeneratorSpec::Hypercube { d } => gen_hypercube(d),
            GeneratorSpec::Ccc { d } => gen_ccc(d),
            GeneratorSpec::Toroidal { i, j } => gen_toroidal(i, j),
            GeneratorSpec::Toroidal3 { i, j, l } => gen_toroidal3(i, j, l),
        }
    }
}

/// Lexicographic rank of pairs `(u, v)` with `u < v < n`, inverted.
fn pair_from_index(n: usize, mut t: usize) -> (usize, usize) {
    let mut u = 0;
    let mut row = n - 1;
    while t >= row {
        t -= row;
        u += 1;
        row -= 1;
    }
    (u, u + 1 + t)
}

/// Uniform simple graph with exactly `a * n` edges.
pub fn gen_random_linear(n: usize, a: usize, seed: u64) -> Result<Graph, GeneratorError> {
    let max = n * n.saturating_sub(1) / 2;
    let requested = a.saturating_mul(n);
    if requested > max {
        return Err(GeneratorError::TooManyEdges { n, requested, max });
    }
    let mut rng = rng_from_seed(seed);
    let edges = rand::seq::index::sample(&mut rng, max, requested)
        .into_iter()
        .map(|t| pair_from_index(n, t))
        .collect();
    Ok(Graph::new(n, edges).expect("sampled pair ranks are distinct"))
}

/// Each of the `n(n-1)/2` pairs is an edge independently with probability `p`.
pub fn gen_random_quadratic(n: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GeneratorError::BadProbability(p));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, edges).expect("distinct pairs"))
}

/// Random k-tree: start from `K_k`, then attach each new vertex to every
/// vertex of a uniformly random k-clique created so far. The construction
/// order reversed is a perfect elimination order.
pub fn gen_ktree(n: usize, k: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if k < 1 || n < k {
        return Err(GeneratorError::BadKtreeOrder { n, k });
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(k * (k - 1) / 2 + (n - k) * k);
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    let mut cliques = vec![(0..k).collect::<Vec<usize>>()];
    for v in k..n {
        let base = cliques[rng.random_range(0..cliques.len())].clone();
        for &w in &base {
            edges.push((w, v));
        }
        for i in 0..k {
            let mut c = base.clone();
            c[i] = v;
            cliques.push(c);
        }
    }
    Ok(Graph::new(n, edges).expect("k-tree construction is simple"))
}

/// `d`-dimensional hypercube: vertices are bit strings, edges join strings at
/// Hamming distance one.
pub fn gen_hypercube(d: usize) -> Result<Graph, GeneratorError> {
    if !(1..=32).contains(&d) {
        return Err(GeneratorError::BadHypercubeDimension(d));
    }
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(n * d / 2);
    for x in 0..n {
        for b in 0..d {
            let y = x ^ (1 << b);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    Ok(Graph::new(n, edges).expect("hypercube is simple"))
}

/// Cube-connected cycles: every hypercube vertex is replaced by a cycle of
/// length `d`, cycle position `i` carrying the dimension-`i` cube edge.
pub fn gen_ccc(d: usize) -> Result<Graph, GeneratorError> {
    if !(3..=32).contains(&d) {
        return Err(GeneratorError::BadCccDimension(d));
    }
    let cubes = 1usize << d;
    let id = |x: usize, i: usize| x * d + i;
    let mut edges = Vec::with_capacity(cubes * d * 3 / 2);
    for x in 0..cubes {
        for i in 0..d {
            edges.push((id(x, i), id(x, (i + 1) % d)));
            let y = x ^ (1 << i);
            if x < y {
                edges.push((id(x, i), id(y, i)));
            }
        }
    }
    Ok(Graph::new(cubes * d, edges).expect("ccc is simple"))
}

/// Cartesian product of two cycles (a torus grid); 4-regular, `m = 2n`.
pub fn gen_toroidal(i: usize, j: usize) -> Result<Graph, GeneratorError> {
    let short = i.min(j);
    if short < 3 {
        return Err(GeneratorError::CycleTooShort(short));
    }
    let mut edges = Vec::with_capacity(2 * i * j);
    for a in 0..i {
        for b in 0..j {
            let v = a * j + b;
            edges.push((v, (a + 1) % i * j + b));
            edges.push((v, a * j + (b + 1) % j));
        }
    }
    Ok(Graph::new(i * j, edges).expect("torus is simple"))
}

/// Cartesian product of three cycles; 6-regular, `m = 3n`.
pub fn gen_toroidal3(i: usize, j: usize, l: usize) -> Result<Graph, GeneratorError> {
    let short = i.min(j).min(l);
    if short < 3 {
        return Err(GeneratorError::CycleTooShort(short));
    }
    let id = |a: usize, b: usize, c: usize| (a * j + b) * l + c;
    let mut edges = Vec::with_capacity(3 * i * j * l);
    for a in 0..i {
        for b in 0..j {
            for c in 0..l {
                edges.push((id(a, b, c), id((a + 1) % i, b, c)));
                edges.push((id(a, b, c), id(a, (b + 1) % j, c)));
                edges.push((id(a, b, c), id(a, b, (c + 1) % l)));
            }
        }
    }
    Ok(Graph::new(i * j * l, edges).expect("torus is simple"))
}

/// Uniformly random relabeling of `g` with independently shuffled adjacency
/// lists and edge order. Returns the new graph and the permutation mapping
/// old vertex ids to new ones.
pub fn randomize_representation(g: &Graph, seed: u64) -> (Graph, Vec<usize>) {
    let mut rng = rng_from_seed(seed);
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.shuffle(&mut rng);
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.shuffle(&mut rng);
    }
    (Graph::with_adjacency(n, edges, adj), perm)
}
