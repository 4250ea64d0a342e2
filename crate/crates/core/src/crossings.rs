//! Crossing predicates, counters and move deltas.
//!
//! Two edges on the same page cross exactly when their endpoints alternate
//! along the spine; edges sharing an endpoint never cross. [`count_crossings`]
//! sweeps each page with a Fenwick tree in O(m log n); the literal pair loop
//! [`count_crossings_reference`] is kept as an independent check and must never
//! be rewritten in terms of the fast counter.
//!
//! The insertion-profile helpers answer "how many crossings would edge (v, u)
//! pick up if v were inserted in gap g" for every gap at once. Removing a
//! vertex keeps the relative order of the others, and edges sharing the moved
//! vertex never cross each other, so a vertex move only re-prices the pairs
//! (incident edge, fixed edge). For one such pair the set of gaps where the two
//! edges cross is a union of at most two intervals, which difference arrays
//! accumulate in O(1) per pair.

use crate::drawing::{PageAssignment, VertexOrder};
use crate::graph::Graph;

/// Alternation test on spine positions.
#[inline]
pub(crate) fn spans_cross(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a < c && c < b) != (a < d && d < b)
}

/// Do `e` and `f` cross under `vo`, pages aside? Shared endpoints never cross.
pub fn edges_cross(e: (usize, usize), f: (usize, usize), vo: &VertexOrder) -> bool {
    if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
        return false;
    }
    spans_cross(
        vo.position_of(e.0),
        vo.position_of(e.1),
        vo.position_of(f.0),
        vo.position_of(f.1),
    )
}

struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn clear(&mut self) {
        self.tree.fill(0);
    }

    fn add(&mut self, mut i: usize) {
        i += 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of inserted values `<= i`.
    fn prefix(&self, mut i: usize) -> u64 {
        i += 1;
        let mut s = 0u64;
        while i > 0 {
            s += self.tree[i] as u64;
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Count of inserted values in `lo..=hi`.
    fn range(&self, lo: usize, hi: usize) -> u64 {
        if lo > hi {
            return 0;
        }
        let below = if lo == 0 { 0 } else { self.prefix(lo - 1) };
        self.prefix(hi) - below
    }
}

/// Total crossings of the drawing. Per page, edges become spine intervals
/// (l, r); a pair crosses iff l1 < l2 < r1 < r2, counted by sweeping the
/// intervals in order of l and querying earlier right endpoints inside (l, r).
pub fn count_crossings(g: &Graph, vo: &VertexOrder, pa: &PageAssignment) -> u64 {
    let n = g.n();
    if n < 4 || g.m() < 2 {
        return 0;
    }
    let mut by_page = vec![Vec::new(); pa.k()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let (pu, pv) = (vo.position_of(u), vo.position_of(v));
        by_page[pa.page_of(i)].push((pu.min(pv), pu.max(pv)));
    }
    let mut fen = Fenwick::new(n);
    let mut total = 0u64;
    for intervals in &mut by_page {
        if intervals.len() < 2 {
            continue;
        }
        intervals.sort_unstable();
        fen.clear();
        let mut i = 0;
        while i < intervals.len() {
            let l = intervals[i].0;
            let mut j = i;
            while j < intervals.len() && intervals[j].0 == l {
                let r = intervals[j].1;
                if r > l + 1 {
                    total += fen.range(l + 1, r - 1);
                }
                j += 1;
            }
            for &(_, r) in &intervals[i..j] {
                fen.add(r);
            }
            i = j;
        }
    }
    total
}

/// Literal definition: every pair of same-page edges, alternation test.
/// Kept deliberately naive as the oracle for [`count_crossings`].
pub fn count_crossings_reference(g: &Graph, vo: &VertexOrder, pa: &PageAssignment) -> u64 {
    let edges = g.edges();
    let mut total = 0u64;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if pa.page_of(i) == pa.page_of(j) && edges_cross(edges[i], edges[j], vo) {
                total += 1;
            }
        }
    }
    total
}

/// Crossings edge `e` would have on `page`, against every other edge currently
/// assigned there; `e`'s own assignment is ignored.
pub fn crossings_of_edge(
    g: &Graph,
    vo: &VertexOrder,
    pa: &PageAssignment,
    e: usize,
    page: usize,
) -> u64 {
    let edges = g.edges();
    let mut c = 0u64;
    for f in 0..edges.len() {
        if f != e && pa.page_of(f) == page && edges_cross(edges[e], edges[f], vo) {
            c += 1;
        }
    }
    c
}

/// Change in total crossings if `v` is removed from the spine and reinserted
/// at `new_pos`, pages untouched. Zero when `new_pos` is `v`'s position.
pub fn vertex_move_delta(
    g: &Graph,
    vo: &VertexOrder,
    pa: &PageAssignment,
    v: usize,
    new_pos: usize,
) -> i64 {
    let costs = vertex_gap_costs_fixed_pages(g, vo, pa, v);
    costs[new_pos] - costs[vo.position_of(v)]
}

/// Gaps where the fixed edge with endpoint positions (lo, hi) crosses the
/// incident edge whose placed endpoint sits at `q`, as ±1 updates on `diff`.
/// Gap g means the moving vertex lands at position g; a point p lies strictly
/// between the moving endpoint and q iff (g <= p < q) or (q < p < g), so the
/// crossing region is [lo+1, hi] when q is outside [lo, hi] and the complement
/// pair [0, lo], [hi+1, ..] when lo < q < hi.
#[inline]
fn add_pair_region(diff: &mut [i64], q: usize, lo: usize, hi: usize) {
    debug_assert!(lo < hi && lo != q && hi != q);
    if hi < q || lo > q {
        diff[lo + 1] += 1;
        diff[hi + 1] -= 1;
    } else {
        diff[0] += 1;
        diff[lo + 1] -= 1;
        diff[hi + 1] += 1;
    }
}

/// Per-gap crossing cost of moving `v`, with every edge kept on its current
/// page. Entry `g` is the number of crossings between v's incident edges and
/// all other edges if v sat at position `g`; subtracting the entry at v's
/// current position turns it into a move delta.
pub(crate) fn vertex_gap_costs_fixed_pages(
    g: &Graph,
    vo: &VertexOrder,
    pa: &PageAssignment,
    v: usize,
) -> Vec<i64> {
    let n = g.n();
    let pos_v = vo.position_of(v);
    let reduce = |w: usize| {
        let p = vo.position_of(w);
        if p > pos_v {
            p - 1
        } else {
            p
        }
    };
    // (endpoint vertex, reduced endpoint position, page) of v's edges
    let mut incident = Vec::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if a == v {
            incident.push((b, reduce(b), pa.page_of(i)));
        } else if b == v {
            incident.push((a, reduce(a), pa.page_of(i)));
        }
    }
    let mut diff = vec![0i64; n + 1];
    for (f, &(a, b)) in g.edges().iter().enumerate() {
        if a == v || b == v {
            continue;
        }
        let page = pa.page_of(f);
        let (ra, rb) = (reduce(a), reduce(b));
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        for &(u, q, pe) in &incident {
            if pe == page && u != a && u != b {
                add_pair_region(&mut diff, q, lo, hi);
            }
        }
    }
    let mut costs = Vec::with_capacity(n);
    let mut acc = 0i64;
    for d in diff.iter().take(n) {
        acc += d;
        costs.push(acc);
    }
    costs
}

/// Crossing profiles for inserting one new vertex into a spine of
/// `num_gaps - 1` placed vertices. `reduced_pos[w]` is valid for every vertex
/// appearing in `incident` or `fixed`. Returns `[incident][page][gap]` counts
/// of fixed edges on that page crossing the incident edge.
pub(crate) fn insertion_profiles(
    num_gaps: usize,
    k: usize,
    reduced_pos: &[usize],
    incident: &[usize],
    fixed: &[(usize, usize, usize)],
) -> Vec<Vec<Vec<i64>>> {
    let mut diff = vec![vec![vec![0i64; num_gaps + 1]; k]; incident.len()];
    for &(a, b, page) in fixed {
        let (ra, rb) = (reduced_pos[a], reduced_pos[b]);
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        for (i, &u) in incident.iter().enumerate() {
            if u != a && u != b {
                add_pair_region(&mut diff[i][page], reduced_pos[u], lo, hi);
            }
        }
    }
    for per_edge in &mut diff {
        for per_page in per_edge.iter_mut() {
            let mut acc = 0i64;
            for slot in per_page.iter_mut().take(num_gaps) {
                acc += *slot;
                *slot = acc;
            }
            per_page.truncate(num_gaps);
        }
    }
    diff
}

/// Like [`insertion_profiles`] but for a single gap: `[incident][page]` counts.
pub(crate) fn insertion_page_costs_at(
    gap: usize,
    k: usize,
    reduced_pos: &[usize],
    incident: &[usize],
    fixed: &[(usize, usize, usize)],
) -> Vec<Vec<i64>> {
    let mut costs = vec![vec![0i64; k]; incident.len()];
    for &(a, b, page) in fixed {
        let (ra, rb) = (reduced_pos[a], reduced_pos[b]);
        for (i, &u) in incident.iter().enumerate() {
            if u == a || u == b {
                continue;
            }
            let q = reduced_pos[u];
            let between = |p: usize| {
                if gap <= q {
                    gap <= p && p < q
                } else {
                    q < p && p < gap
                }
            };
            if between(ra) != between(rb) {
                costs[i][page] += 1;
            }
        }
    }
    costs
}
