//! Geometric k-planar generator: a greedy straight-line drawing on random
//! points where no segment, old or new, may exceed a per-edge crossing budget.

use rand::Rng as _;

use super::GeneratorError;
use crate::graph::Graph;
use crate::seeds::{rng_from_seed, Rng};

/// Random points in the unit square, held in lexicographic order and nudged
/// into general position: all x-coordinates distinct, no three points
/// collinear (within a fixed tolerance).
#[derive(Debug, Clone)]
pub struct PointSet {
    pts: Vec<(f64, f64)>,
}

const COLLINEAR_TOL: f64 = 1e-12;

impl PointSet {
    pub fn sample(n: usize, rng: &mut Rng) -> PointSet {
        let mut pts: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        // Ties on x get a deterministic index-scaled shift.
        loop {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| pts[a].0.total_cmp(&pts[b].0));
            let dup: Vec<usize> = idx
                .windows(2)
                .filter(|w| pts[w[0]].0 == pts[w[1]].0)
                .map(|w| w[1])
                .collect();
            if dup.is_empty() {
                break;
            }
            for i in dup {
                pts[i].0 += (i + 1) as f64 * 1e-12;
            }
        }
        // Collinear triples get the latest point nudged off the line.
        'attempt: for attempt in 1..=100u32 {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if orient(pts[a], pts[b], pts[c]).abs() < COLLINEAR_TOL {
                            pts[c].1 += (c + 1) as f64 * attempt as f64 * 1e-9;
                            continue 'attempt;
                        }
                    }
                }
            }
            pts.sort_by(|p, q| p.partial_cmp(q).expect("coordinates are finite"));
            return PointSet { pts };
        }
        unreachable!("collinearity nudging did not converge");
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.pts
    }
}

/// The straight-line drawing behind a geometric graph: vertex coordinates
/// plus the crossing registry accumulated while edges were added.
#[derive(Debug, Clone)]
pub struct GeometricDrawing {
    points: Vec<(f64, f64)>,
    crossings: Vec<(usize, usize)>,
    counts: Vec<usize>,
}

impl GeometricDrawing {
    /// Coordinates of vertex `i`, in the graph's vertex order.
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// All crossing segment pairs as `(earlier edge id, later edge id)`.
    pub fn crossings(&self) -> &[(usize, usize)] {
        &self.crossings
    }

    /// Number of crossings on each edge.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }
}

fn orient(p: (f64, f64), q: (f64, f64), r: (f64, f64)) -> f64 {
    (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
}

/// Proper intersection of segments `a-b` and `c-d` with no shared endpoints;
/// exact on point sets in general position.
fn segments_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    orient(a, b, c) * orient(a, b, d) < 0.0 && orient(c, d, a) * orient(c, d, b) < 0.0
}

/// Largest edge count a k-planar graph on `n` vertices can have, for the
/// budgets this generator accepts (k in 0..=4).
pub fn max_kplanar_edges(n: usize, k: usize) -> f64 {
    let n = n as f64;
    match k {
        0 => 3.0 * n - 6.0,
        1 => 4.0 * n - 8.0,
        2 => 5.0 * n - 10.0,
        3 => 5.5 * n - 11.0,
        4 => 6.0 * n - 12.0,
        _ => panic!("no edge bound on record for k = {k}"),
    }
}

/// Greedy geometric graph on `n` random points: scanning vertices in
/// lexicographic order (and earlier endpoints right-to-left), a segment is
/// added iff it would cross at most `k` existing segments and no existing
/// segment's crossing count would exceed `k`.
pub fn gen_kplanar_geometric(
    n: usize,
    k: usize,
    seed: u64,
) -> Result<(Graph, GeometricDrawing), GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::TooFewVertices {
            class: "kplanar-geometric",
            n,
            min: 2,
        });
    }
    if k > 4 {
        return Err(GeneratorError::BadCrossingBudget(k));
    }
    let mut rng = rng_from_seed(seed);
    let points = PointSet::sample(n, &mut rng).pts;

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut crossings: Vec<(usize, usize)> = Vec::new();
    let mut hit = Vec::new();
    for j in 1..n {
        for i in (0..j).rev() {
            hit.clear();
            for (e, &(a, b)) in edges.iter().enumerate() {
                if a == i || b == i || a == j || b == j {
                    continue;
                }
                if segments_cross(points[a], points[b], points[i], points[j]) {
                    hit.push(e);
                }
            }
            if hit.len() <= k && hit.iter().all(|&e| counts[e] < k) {
                let id = edges.len();
                for &e in &hit {
                    counts[e] += 1;
                    crossings.push((e, id));
                }
                counts.push(hit.len());
                edges.push((i, j));
            }
        }
    }

    let g = Graph::new(n, edges).expect("distinct point pairs");
    Ok((
        g,
        GeometricDrawing {
            points,
            crossings,
            counts,
        },
    ))
}
