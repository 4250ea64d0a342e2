//! Planar and 1-planar generators built on an edge-flip triangulation.
//!
//! The workhorse is a combinatorial triangulation of the sphere that supports
//! uniform random vertex insertion (Apollonian growth), O(1) edge flips, and
//! face queries. Faces are stored as consistently oriented triples: every
//! undirected edge appears exactly once as `x -> y` and once as `y -> x`
//! across all faces, which makes the rotation system derivable by a walk.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::GeneratorError;
use crate::graph::Graph;
use crate::seeds::{rng_from_seed, Rng};

const NONE: usize = usize::MAX;

/// Combinatorial embedding of a planar triangulation: the oriented face list
/// and the per-vertex cyclic neighbor order it induces.
#[derive(Debug, Clone)]
pub struct Embedding {
    faces: Vec<[usize; 3]>,
    rotation: Vec<Vec<usize>>,
}

impl Embedding {
    /// Oriented triangles; each edge occurs in exactly two of them, once per
    /// direction.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Cyclic neighbor order around each vertex.
    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }
}

struct Triangulation {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Triangular-matrix maps keyed by `key(u, v)`.
    slot: Vec<usize>,
    incident: Vec<[usize; 2]>,
    faces: Vec<[usize; 3]>,
}

fn third(f: [usize; 3], u: usize, v: usize) -> usize {
    f.into_iter()
        .find(|&x| x != u && x != v)
        .expect("face has a third corner")
}

/// Triangular-matrix rank of the unordered pair.
fn key(u: usize, v: usize) -> usize {
    let (a, b) = (u.min(v), u.max(v));
    b * (b - 1) / 2 + a
}

impl Triangulation {
    fn k4(n: usize) -> Self {
        let mut t = Triangulation {
            n,
            edges: Vec::with_capacity(3 * n),
            slot: vec![NONE; n * (n - 1) / 2],
            incident: vec![[NONE; 2]; n * (n - 1) / 2],
            faces: vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]],
        };
        for fid in 0..t.faces.len() {
            let f = t.faces[fid];
            for i in 0..3 {
                let (x, y) = (f[i], f[(i + 1) % 3]);
                let k = key(x, y);
                if t.slot[k] == NONE {
                    t.slot[k] = t.edges.len();
                    t.edges.push((x.min(y), x.max(y)));
                    t.incident[k] = [fid, NONE];
                } else {
                    t.incident[k][1] = fid;
                }
            }
        }
        t
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.slot[key(u, v)] != NONE
    }

    fn add_edge(&mut self, u: usize, v: usize, inc: [usize; 2]) {
        let k = key(u, v);
        debug_assert_eq!(self.slot[k], NONE);
        self.slot[k] = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        self.incident[k] = inc;
    }

    fn remove_edge_index(&mut self, t: usize) {
        let (u, v) = self.edges.swap_remove(t);
        self.slot[key(u, v)] = NONE;
        if t < self.edges.len() {
            let (x, y) = self.edges[t];
            self.slot[key(x, y)] = t;
        }
    }

    fn replace_incident(&mut self, u: usize, v: usize, old: usize, new: usize) {
        let k = key(u, v);
        let pair = &mut self.incident[k];
        if pair[0] == old {
            pair[0] = new;
        } else {
            debug_assert_eq!(pair[1], old);
            pair[1] = new;
        }
    }

    /// Splits face `fid` into three by connecting `v` to its corners.
    fn insert_vertex(&mut self, v: usize, fid: usize) {
        let [a, b, c] = self.faces[fid];
        let g = self.faces.len();
        let h = g + 1;
        self.faces[fid] = [a, b, v];
        self.faces.push([b, c, v]);
        self.faces.push([c, a, v]);
        self.replace_incident(b, c, fid, g);
        self.replace_incident(c, a, fid, h);
        self.add_edge(a, v, [fid, h]);
        self.add_edge(b, v, [fid, g]);
        self.add_edge(c, v, [g, h]);
    }

    /// Replaces edge `edges[t]` by the opposite diagonal of its two incident
    /// triangles, if that diagonal is not already an edge.
    fn flip_edge_at(&mut self, t: usize) -> bool {
        let (u, v) = self.edges[t];
        let [f, g] = self.incident[key(u, v)];
        // Orient the quadrilateral: face f holds s -> t_, face g holds t_ -> s.
        let fface = self.faces[f];
        let i = fface
            .iter()
            .position(|&x| x == u)
            .expect("endpoint in face");
        let (s, t_) = if fface[(i + 1) % 3] == v {
            (u, v)
        } else {
            (v, u)
        };
        let a = third(fface, u, v);
        let b = third(self.faces[g], u, v);
        if self.has_edge(a, b) {
            return false;
        }
        self.faces[f] = [a, s, b];
        self.faces[g] = [b, t_, a];
        self.replace_incident(t_, a, f, g);
        self.replace_incident(s, b, g, f);
        self.remove_edge_index(t);
        self.add_edge(a, b, [f, g]);
        true
    }

    fn flip_attempt(&mut self, rng: &mut Rng) -> bool {
        let t = rng.random_range(0..self.edges.len());
        self.flip_edge_at(t)
    }

    fn rotation_system(&self) -> Vec<Vec<usize>> {
        let mut next = HashMap::with_capacity(3 * self.faces.len());
        for f in &self.faces {
            next.insert((f[0], f[1]), f[2]);
            next.insert((f[1], f[2]), f[0]);
            next.insert((f[2], f[0]), f[1]);
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj.iter()
            .enumerate()
            .map(|(v, nb)| {
                let mut rot = Vec::with_capacity(nb.len());
                if let Some(&start) = nb.first() {
                    let mut cur = start;
                    loop {
                        rot.push(cur);
                        cur = next[&(v, cur)];
                        if cur == start {
                            break;
                        }
                    }
                }
                debug_assert_eq!(rot.len(), nb.len(), "vertex link must be one cycle");
                rot
            })
            .collect()
    }

    fn embedding(&self) -> Embedding {
        Embedding {
            faces: self.faces.clone(),
            rotation: self.rotation_system(),
        }
    }

    fn graph(&self) -> Graph {
        Graph::new(self.n, self.edges.clone()).expect("triangulation is simple")
    }
}

fn apollonian_with(n: usize, rng: &mut Rng) -> Triangulation {
    let mut t = Triangulation::k4(n);
    for v in 4..n {
        let fid = rng.random_range(0..t.faces.len());
        t.insert_vertex(v, fid);
    }
    t
}

fn check_min_n(class: &'static str, n: usize) -> Result<(), GeneratorError> {
    if n < 4 {
        return Err(GeneratorError::TooFewVertices { class, n, min: 4 });
    }
    Ok(())
}

/// Random Apollonian network: grow from `K_4` by repeatedly placing a new
/// vertex inside a uniformly random face. Always a planar triangulation with
/// `m = 3n - 6`; the embedding is returned alongside the graph.
pub fn gen_apollonian(n: usize, seed: u64) -> Result<(Graph, Embedding), GeneratorError> {
    check_min_n("apollonian", n)?;
    let mut rng = rng_from_seed(seed);
    let t = apollonian_with(n, &mut rng);
    Ok((t.graph(), t.embedding()))
}

/// Random planar triangulation: an Apollonian start mixed by `n^3` random
/// edge-flip attempts (an attempt on an unflippable edge is a no-op step).
pub fn gen_planar_triangulation(n: usize, seed: u64) -> Result<Graph, GeneratorError> {
    check_min_n("planar-topological", n)?;
    let mut rng = rng_from_seed(seed);
    let mut t = apollonian_with(n, &mut rng);
    for _ in 0..n.saturating_pow(3) {
        t.flip_attempt(&mut rng);
    }
    Ok(t.graph())
}

/// Random 1-planar graph: augment a random planar triangulation with
/// quadrilateral diagonals. Every pair of triangles sharing an edge proposes
/// the opposite diagonal; proposals are visited in random order and accepted
/// iff the diagonal is not yet an edge, the shared edge is not yet crossed,
/// and neither triangle already hosts another diagonal. Two diagonals routed
/// through a common triangle would be forced to cross each other, so the
/// triangle-exclusivity check is what keeps every added edge at exactly one
/// crossing (and the total at or below the 1-planar maximum of `4n - 8`).
///
/// Returns the graph (triangulation edges first, then the added diagonals in
/// acceptance order) and the crossing certificate: one
/// `(diagonal edge id, crossed edge id)` pair per added edge.
pub fn gen_oneplanar_topological(
    n: usize,
    seed: u64,
) -> Result<(Graph, Vec<(usize, usize)>), GeneratorError> {
    check_min_n("oneplanar-topological", n)?;
    let mut rng = rng_from_seed(seed);
    let mut t = apollonian_with(n, &mut rng);
    for _ in 0..n.saturating_pow(3) {
        t.flip_attempt(&mut rng);
    }

    let planar = t.edges.clone();
    let mut order: Vec<usize> = (0..planar.len()).collect();
    order.shuffle(&mut rng);

    let mut crossed = vec![false; planar.len()];
    let mut face_used = vec![false; t.faces.len()];
    let mut added: Vec<(usize, usize)> = Vec::new();
    let mut added_set: HashSet<(usize, usize)> = HashSet::new();
    let mut certificate = Vec::new();
    for shared in order {
        if crossed[shared] {
            continue;
        }
        let (u, v) = planar[shared];
        let [f, g] = t.incident[key(u, v)];
        if face_used[f] || face_used[g] {
            continue;
        }
        let a = third(t.faces[f], u, v);
        let b = third(t.faces[g], u, v);
        let diag = (a.min(b), a.max(b));
        if t.has_edge(diag.0, diag.1) || added_set.contains(&diag) {
            continue;
        }
        crossed[shared] = true;
        face_used[f] = true;
        face_used[g] = true;
        added_set.insert(diag);
        certificate.push((planar.len() + added.len(), shared));
        added.push(diag);
    }

    let mut edges = planar;
    edges.extend(added);
    Ok((
        Graph::new(n, edges).expect("augmentation stays simple"),
        certificate,
    ))
}
