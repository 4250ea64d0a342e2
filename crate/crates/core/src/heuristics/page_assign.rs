//! Page-assignment heuristics for a fixed spine order.
//!
//! Four of the five are edge orderings fed to the same greedy placer;
//! earDecomp instead k-colors ears of the conflict graph. Greedy ties always
//! go to the lowest page index, so every heuristic here is deterministic.

use crate::crossings::edges_cross;
use crate::drawing::{PageAssignment, VertexOrder};
use crate::graph::Graph;

/// Edge-conflict graph: one node per edge of `g`, adjacent iff the two edges
/// alternate along the spine (equivalently, their chords cross in the circular
/// drawing; the two notions coincide for chords with distinct endpoints).
pub struct ConflictGraph {
    adj: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn build(g: &Graph, vo: &VertexOrder) -> Self {
        let m = g.m();
        let mut adj = vec![Vec::new(); m];
        for e in 0..m {
            for f in e + 1..m {
                if edges_cross(g.edge(e), g.edge(f), vo) {
                    adj[e].push(f);
                    adj[f].push(e);
                }
            }
        }
        ConflictGraph { adj }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, e: usize) -> &[usize] {
        &self.adj[e]
    }
}

/// Page with the fewest crossings against the edges already placed, lowest
/// page on ties.
fn cheapest_page(g: &Graph, vo: &VertexOrder, per_page: &[Vec<usize>], e: usize) -> usize {
    let ends = g.edge(e);
    let mut best = 0;
    let mut best_cost = u64::MAX;
    for (p, placed) in per_page.iter().enumerate() {
        let cost = placed
            .iter()
            .filter(|&&f| edges_cross(ends, g.edge(f), vo))
            .count() as u64;
        if cost < best_cost {
            best_cost = cost;
            best = p;
        }
    }
    best
}

/// Completes a partial assignment by placing the listed edges one at a time on
/// their cheapest page.
fn greedy_fill(
    g: &Graph,
    vo: &VertexOrder,
    k: usize,
    pages: &mut [Option<usize>],
    sequence: impl IntoIterator<Item = usize>,
) {
    let mut per_page: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (e, p) in pages.iter().enumerate() {
        if let Some(p) = p {
            per_page[*p].push(e);
        }
    }
    for e in sequence {
        debug_assert!(pages[e].is_none());
        let p = cheapest_page(g, vo, &per_page, e);
        pages[e] = Some(p);
        per_page[p].push(e);
    }
}

fn finish(pages: Vec<Option<usize>>, k: usize) -> PageAssignment {
    let pages: Vec<usize> = pages
        .into_iter()
        .map(|p| p.expect("every edge assigned"))
        .collect();
    PageAssignment::from_pages(k, pages).expect("pages stay below k")
}

/// Greedy placement following an explicit edge sequence.
pub fn pa_greedy_place(
    g: &Graph,
    vo: &VertexOrder,
    k: usize,
    edge_sequence: &[usize],
) -> PageAssignment {
    assert!(k >= 1, "need at least one page");
    debug_assert_eq!(edge_sequence.len(), g.m());
    let mut pages = vec![None; g.m()];
    greedy_fill(g, vo, k, &mut pages, edge_sequence.iter().copied());
    finish(pages, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrderTag {
    CeilFloor,
    ELen,
    Circular,
}

/// A named edge-processing order for the greedy placer.
pub struct EdgeOrderStrategy {
    pub tag: EdgeOrderTag,
    sequence: Vec<usize>,
}

impl EdgeOrderStrategy {
    pub fn derive(tag: EdgeOrderTag, g: &Graph, vo: &VertexOrder) -> Self {
        let sequence = match tag {
            EdgeOrderTag::Circular => circular_sequence(g, vo),
            EdgeOrderTag::CeilFloor | EdgeOrderTag::ELen => {
                let n = g.n();
                let mut keyed: Vec<(usize, usize)> = (0..g.m())
                    .map(|e| {
                        let (u, v) = g.edge(e);
                        let span = vo.position_of(u).abs_diff(vo.position_of(v));
                        let key = match tag {
                            EdgeOrderTag::CeilFloor => span.min(n - span),
                            _ => span,
                        };
                        (key, e)
                    })
                    .collect();
                keyed.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
                keyed.into_iter().map(|(_, e)| e).collect()
            }
        };
        EdgeOrderStrategy { tag, sequence }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }
}

/// Longest cyclic chords first, edge index on ties.
pub fn pa_ceil_floor(g: &Graph, vo: &VertexOrder, k: usize) -> PageAssignment {
    let strat = EdgeOrderStrategy::derive(EdgeOrderTag::CeilFloor, g, vo);
    pa_greedy_place(g, vo, k, strat.sequence())
}

/// Longest spine spans first, edge index on ties.
pub fn pa_elen(g: &Graph, vo: &VertexOrder, k: usize) -> PageAssignment {
    let strat = EdgeOrderStrategy::derive(EdgeOrderTag::ELen, g, vo);
    pa_greedy_place(g, vo, k, strat.sequence())
}

/// Edge order harvested from zig-zag paths over the spine positions. Path i
/// (0-based start s = i-1) visits positions s, s+1, s-1, s+2, s-2, ... mod n;
/// each consecutive position pair that is an edge of `g` and not yet enqueued
/// joins the sequence. Edges never visited follow in index order.
fn circular_sequence(g: &Graph, vo: &VertexOrder) -> Vec<usize> {
    let n = g.n();
    let mut edge_id = std::collections::HashMap::new();
    for e in 0..g.m() {
        edge_id.insert(g.edge(e), e);
    }
    let lookup = |x: usize, y: usize| {
        let (a, b) = (vo.vertex_at(x), vo.vertex_at(y));
        let key = if a < b { (a, b) } else { (b, a) };
        edge_id.get(&key).copied()
    };
    let mut seen = vec![false; g.m()];
    let mut seq = Vec::with_capacity(g.m());
    for s in 0..n.div_ceil(2) {
        let mut path = Vec::with_capacity(n);
        path.push(s);
        let mut t = 1;
        while path.len() < n {
            path.push((s + t) % n);
            if path.len() < n {
                path.push((s + n - t) % n);
            }
            t += 1;
        }
        for w in path.windows(2) {
            if w[0] == w[1] {
                continue;
            }
            if let Some(e) = lookup(w[0], w[1]) {
                if !seen[e] {
                    seen[e] = true;
                    seq.push(e);
                }
            }
        }
    }
    for (e, &done) in seen.iter().enumerate() {
        if !done {
            seq.push(e);
        }
    }
    seq
}

pub fn pa_circular(g: &Graph, vo: &VertexOrder, k: usize) -> PageAssignment {
    let strat = EdgeOrderStrategy::derive(EdgeOrderTag::Circular, g, vo);
    pa_greedy_place(g, vo, k, strat.sequence())
}

/// Pages cycle 0..k-1 along each ear of the conflict graph; already-assigned
/// nodes still advance the counter so the alternation carries across ear ends.
/// Nodes on no cycle fall back to greedy placement in edge-index order.
pub fn pa_ear_decomp(g: &Graph, vo: &VertexOrder, k: usize) -> PageAssignment {
    assert!(k >= 1, "need at least one page");
    let cg = ConflictGraph::build(g, vo);
    let m = cg.node_count();
    let mut pages: Vec<Option<usize>> = vec![None; m];
    for chain in chain_decomposition(&cg) {
        for (tick, &node) in chain.iter().enumerate() {
            if pages[node].is_none() {
                pages[node] = Some(tick % k);
            }
        }
    }
    let leftovers: Vec<usize> = (0..m).filter(|&e| pages[e].is_none()).collect();
    greedy_fill(g, vo, k, &mut pages, leftovers);
    finish(pages, k)
}

/// Ear decomposition of every 2-edge-connected block of the conflict graph,
/// expressed as node chains: the first chain of a block is a cycle, later
/// chains are paths whose endpoints appeared before. Bridges and nodes on no
/// cycle belong to no chain.
///
/// Chains are harvested from a DFS forest of the bridge-free graph: for each
/// node v in preorder, each back edge to a deeper node w opens a chain that
/// runs v, w, then parent steps from w until it meets an already-chained node.
fn chain_decomposition(cg: &ConflictGraph) -> Vec<Vec<usize>> {
    let m = cg.node_count();
    let mut conflict_edges = 0;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for e in 0..m {
        for &f in cg.neighbors(e) {
            if e < f {
                adj[e].push((f, conflict_edges));
                adj[f].push((e, conflict_edges));
                conflict_edges += 1;
            }
        }
    }
    let bridge = bridges(&adj, conflict_edges);

    let mut parent = vec![usize::MAX; m];
    let mut num = vec![usize::MAX; m];
    let mut preorder = Vec::with_capacity(m);
    for root in 0..m {
        if num[root] != usize::MAX {
            continue;
        }
        num[root] = preorder.len();
        preorder.push(root);
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let (w, eid) = adj[v][*idx];
                *idx += 1;
                if !bridge[eid] && num[w] == usize::MAX {
                    num[w] = preorder.len();
                    preorder.push(w);
                    parent[w] = v;
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
            }
        }
    }

    let mut chains = Vec::new();
    let mut marked = vec![false; m];
    for &v in &preorder {
        for &(w, eid) in &adj[v] {
            if bridge[eid] || num[w] <= num[v] || parent[w] == v {
                continue;
            }
            marked[v] = true;
            let mut chain = vec![v];
            let mut x = w;
            while !marked[x] {
                marked[x] = true;
                chain.push(x);
                x = parent[x];
            }
            if x != v {
                chain.push(x);
            }
            chains.push(chain);
        }
    }
    chains
}

/// Bridge edges via low-link, iterative.
fn bridges(adj: &[Vec<(usize, usize)>], num_edges: usize) -> Vec<bool> {
    let m = adj.len();
    let mut bridge = vec![false; num_edges];
    let mut disc = vec![usize::MAX; m];
    let mut low = vec![0usize; m];
    let mut timer = 0;
    for root in 0..m {
        if disc[root] != usize::MAX {
            continue;
        }
        // (node, next neighbor index, conflict-edge id used to enter)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, 0, usize::MAX)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, ref mut idx, entry)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let (w, eid) = adj[v][*idx];
                *idx += 1;
                if eid == entry {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, 0, eid));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        bridge[entry] = true;
                    }
                }
            }
        }
    }
    bridge
}

/// Chord slope classes: edge {u,v} gets class s = (p_u + p_v) mod n and page
/// floor(s*k/n). Parallel chords share a class and never cross.
pub fn pa_slope(g: &Graph, vo: &VertexOrder, k: usize) -> PageAssignment {
    assert!(k >= 1, "need at least one page");
    let n = g.n();
    let pages = (0..g.m())
        .map(|e| {
            let (u, v) = g.edge(e);
            let s = (vo.position_of(u) + vo.position_of(v)) % n;
            s * k / n
        })
        .collect();
    PageAssignment::from_pages(k, pages).expect("floor(s*k/n) < k since s < n")
}
