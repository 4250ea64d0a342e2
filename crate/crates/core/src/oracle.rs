//! Exact solvers for small instances, used as ground truth in tests.
//!
//! The full solver walks spine prefixes in lexicographic order (appending on
//! the right keeps earlier positions stable, so crossings among closed edges
//! are final and give an admissible bound) and solves an exact page assignment
//! at each surviving leaf. Reflections are skipped by requiring the first
//! spine vertex to be smaller than the last, which keeps exactly the
//! lexicographically smaller member of each mirror pair.

use crate::drawing::{BookDrawing, PageAssignment, VertexOrder};
use crate::graph::Graph;
use crate::heuristics::con_greedy_plus::con_greedy_plus;

/// Instance-size limits for the exponential searches.
#[derive(Clone, Copy, Debug)]
pub struct SizeGuard {
    pub max_n: usize,
    pub max_m: usize,
}

impl SizeGuard {
    /// Limit for the full order x assignment search.
    pub fn drawing() -> Self {
        SizeGuard {
            max_n: 9,
            max_m: 14,
        }
    }

    /// Limit for the fixed-order page assignment search.
    pub fn pages() -> Self {
        SizeGuard {
            max_n: usize::MAX,
            max_m: 20,
        }
    }

    /// No limits; callers accept the blowup.
    pub fn unlimited() -> Self {
        SizeGuard {
            max_n: usize::MAX,
            max_m: usize::MAX,
        }
    }

    fn check(&self, n: usize, m: usize) -> Result<(), OracleError> {
        if n > self.max_n || m > self.max_m {
            return Err(OracleError::TooLarge {
                n,
                m,
                max_n: self.max_n,
                max_m: self.max_m,
            });
        }
        Ok(())
    }
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(
        "instance too large for exact search (n={n}, m={m}; guard allows n<={max_n}, m<={max_m})"
    )]
    TooLarge {
        n: usize,
        m: usize,
        max_n: usize,
        max_m: usize,
    },
}

/// Minimum crossings over every spine order and page assignment, with the
/// witness drawing on the lexicographically smallest optimal order.
pub fn exact_book_crossing_number(g: &Graph, k: usize) -> Result<(u64, BookDrawing), OracleError> {
    exact_book_crossing_number_with_guard(g, k, SizeGuard::drawing())
}

pub fn exact_book_crossing_number_with_guard(
    g: &Graph,
    k: usize,
    guard: SizeGuard,
) -> Result<(u64, BookDrawing), OracleError> {
    assert!(k >= 1, "need at least one page");
    guard.check(g.n(), g.m())?;
    let n = g.n();
    if n <= 1 {
        let vo = VertexOrder::from_order((0..n).collect()).unwrap();
        let pa = PageAssignment::single_page(k, g.m()).unwrap();
        let mut d = BookDrawing::new(g.clone(), vo, pa).unwrap();
        d.set_cached(0);
        return Ok((0, d));
    }

    // cheap upper bound so pruning bites before the first leaf; +1 keeps the
    // strict-improvement rule in charge of picking the canonical witness
    let mut cutoff = (0..3)
        .map(|seed| con_greedy_plus(g, k, seed).count())
        .min()
        .unwrap()
        + 1;
    let mut best: Option<(u64, Vec<usize>, PageAssignment)> = None;

    let mut search = PrefixSearch {
        g,
        k,
        order: Vec::with_capacity(n),
        position: vec![usize::MAX; n],
        used: vec![false; n],
        closed: Vec::with_capacity(g.m()),
        pair_count: 0,
        clique: Vec::new(),
    };
    search.run(&mut cutoff, &mut best);

    let (min, order, pa) = best.expect("the heuristic bound is met or beaten by some order");
    let vo = VertexOrder::from_order(order).unwrap();
    let mut d = BookDrawing::new(g.clone(), vo, pa).unwrap();
    d.set_cached(min);
    Ok((min, d))
}

struct PrefixSearch<'a> {
    g: &'a Graph,
    k: usize,
    order: Vec<usize>,
    position: Vec<usize>,
    used: Vec<bool>,
    /// closed edges as position intervals (lo, hi), hi = closing position
    closed: Vec<(usize, usize)>,
    /// alternating pairs among closed edges
    pair_count: u64,
    /// greedily grown set of pairwise alternating closed edges (indices into
    /// `closed`)
    clique: Vec<usize>,
}

/// Does the closed edge at positions (lo, hi) alternate with a new edge from
/// position q to the fresh rightmost position `end`? Equal positions mean a
/// shared vertex and never cross; hi == end marks an edge closed by the same
/// placement (sharing the new vertex).
fn alternates((lo, hi): (usize, usize), q: usize, end: usize) -> bool {
    if lo == q || hi == q || hi == end {
        return false;
    }
    (q < lo && lo < end) != (q < hi && hi < end)
}

impl PrefixSearch<'_> {
    fn run(&mut self, cutoff: &mut u64, best: &mut Option<(u64, Vec<usize>, PageAssignment)>) {
        let n = self.g.n();
        let depth = self.order.len();
        if depth == n {
            if let Some((cost, pa)) = exact_pa_bounded(self.g, &self.position, self.k, *cutoff) {
                *cutoff = cost;
                *best = Some((cost, self.order.clone(), pa));
            }
            return;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            // mirror orders agree on crossings; keep first < last
            if depth == n - 1 && self.order[0] > v {
                continue;
            }
            if depth == 0 && v == n - 1 {
                continue;
            }
            let undo = self.place(v);
            if self.lower_bound() < *cutoff {
                self.run(cutoff, best);
            }
            self.unplace(v, undo);
        }
    }

    /// Appends v to the spine, closing its edges to placed vertices. Returns
    /// (closed edges added, clique members added, pair count added).
    fn place(&mut self, v: usize) -> (usize, usize, u64) {
        let pos = self.order.len();
        self.order.push(v);
        self.position[v] = pos;
        self.used[v] = true;
        let mut added_edges = 0;
        let mut added_clique = 0;
        let mut added_pairs = 0u64;
        for &u in self.g.neighbors(v) {
            if !self.used[u] {
                continue;
            }
            let q = self.position[u];
            for &old in &self.closed {
                if alternates(old, q, pos) {
                    added_pairs += 1;
                }
            }
            let crosses_all = self
                .clique
                .iter()
                .all(|&i| alternates(self.closed[i], q, pos));
            self.closed.push((q, pos));
            if crosses_all {
                self.clique.push(self.closed.len() - 1);
                added_clique += 1;
            }
            added_edges += 1;
        }
        self.pair_count += added_pairs;
        (added_edges, added_clique, added_pairs)
    }

    fn unplace(&mut self, v: usize, (added_edges, added_clique, added_pairs): (usize, usize, u64)) {
        self.pair_count -= added_pairs;
        self.clique.truncate(self.clique.len() - added_clique);
        self.closed.truncate(self.closed.len() - added_edges);
        self.used[v] = false;
        self.position[v] = usize::MAX;
        self.order.pop();
    }

    /// Crossings forced by the placed prefix: the exact alternating count on
    /// one page; on k pages, the best split of a pairwise alternating set of
    /// size s = q*k + r still costs k*C(q,2) + r*q.
    fn lower_bound(&self) -> u64 {
        if self.k == 1 {
            return self.pair_count;
        }
        let s = self.clique.len() as u64;
        let k = self.k as u64;
        let q = s / k;
        let r = s % k;
        k * q * (q.saturating_sub(1)) / 2 + r * q
    }
}

/// Optimal page assignment for a fixed spine, or the input error if the guard
/// trips. The witness is deterministic: the branch and bound assigns edges by
/// falling conflict degree, tries low pages first, and never revisits equal
/// solutions.
pub fn exact_pa(
    g: &Graph,
    vo: &VertexOrder,
    k: usize,
) -> Result<(u64, PageAssignment), OracleError> {
    exact_pa_with_guard(g, vo, k, SizeGuard::pages())
}

pub fn exact_pa_with_guard(
    g: &Graph,
    vo: &VertexOrder,
    k: usize,
    guard: SizeGuard,
) -> Result<(u64, PageAssignment), OracleError> {
    assert!(k >= 1, "need at least one page");
    guard.check(g.n(), g.m())?;
    let (cost, pa) = exact_pa_bounded(g, vo.positions(), k, u64::MAX)
        .expect("every assignment beats an infinite cutoff");
    Ok((cost, pa))
}

/// Best assignment strictly below `cutoff`, if any.
fn exact_pa_bounded(
    g: &Graph,
    positions: &[usize],
    k: usize,
    cutoff: u64,
) -> Option<(u64, PageAssignment)> {
    let m = g.m();
    if m == 0 {
        return if cutoff > 0 {
            Some((0, PageAssignment::single_page(k, 0).unwrap()))
        } else {
            None
        };
    }
    let intervals: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (positions[u], positions[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    let cross = |e: usize, f: usize| {
        let (al, ah) = intervals[e];
        let (bl, bh) = intervals[f];
        (al < bl && bl < ah) != (al < bh && bh < ah) && al != bl && al != bh && ah != bl && ah != bh
    };
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); m];
    for e in 0..m {
        for f in e + 1..m {
            if cross(e, f) {
                conflicts[e].push(f);
                conflicts[f].push(e);
            }
        }
    }
    let mut sequence: Vec<usize> = (0..m).collect();
    sequence.sort_by_key(|&e| (std::cmp::Reverse(conflicts[e].len()), e));
    let rank = {
        let mut r = vec![0usize; m];
        for (i, &e) in sequence.iter().enumerate() {
            r[e] = i;
        }
        r
    };

    let mut state = PaSearch {
        k,
        sequence,
        rank,
        conflicts,
        page: vec![usize::MAX; m],
        cnt: vec![vec![0u64; k]; m],
        cutoff,
        best: None,
    };
    state.run(0, 0, 0);
    let PaSearch { best, k, .. } = state;
    best.map(|(cost, pages)| (cost, PageAssignment::from_pages(k, pages).unwrap()))
}

struct PaSearch {
    k: usize,
    sequence: Vec<usize>,
    rank: Vec<usize>,
    conflicts: Vec<Vec<usize>>,
    page: Vec<usize>,
    /// cnt[e][p]: assigned conflict neighbors of e on page p
    cnt: Vec<Vec<u64>>,
    cutoff: u64,
    best: Option<(u64, Vec<usize>)>,
}

impl PaSearch {
    fn run(&mut self, depth: usize, cost: u64, pages_used: usize) {
        if depth == self.sequence.len() {
            self.cutoff = cost;
            self.best = Some((cost, self.page.clone()));
            return;
        }
        let e = self.sequence[depth];
        // unassigned edges each pay at least their cheapest page
        let rest: u64 = self.sequence[depth..]
            .iter()
            .map(|&f| *self.cnt[f].iter().min().unwrap())
            .sum();
        if cost + rest >= self.cutoff {
            return;
        }
        // identical pages are interchangeable: allow one fresh page at most
        let limit = (pages_used + 1).min(self.k);
        for p in 0..limit {
            let c = cost + self.cnt[e][p];
            if c >= self.cutoff {
                continue;
            }
            self.page[e] = p;
            for i in 0..self.conflicts[e].len() {
                let f = self.conflicts[e][i];
                if self.rank[f] > depth {
                    self.cnt[f][p] += 1;
                }
            }
            self.run(depth + 1, c, pages_used.max(p + 1));
            for i in 0..self.conflicts[e].len() {
                let f = self.conflicts[e][i];
                if self.rank[f] > depth {
                    self.cnt[f][p] -= 1;
                }
            }
            self.page[e] = usize::MAX;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossings::count_crossings;
    use crate::heuristics::page_assign::{
        pa_ceil_floor, pa_circular, pa_ear_decomp, pa_elen, pa_slope,
    };
    use crate::seeds::rng_from_seed;
    use rand::Rng as _;

    fn random_graph(n: usize, m: usize, seed: u64) -> Graph {
        let mut rng = rng_from_seed(seed);
        let mut edges = Vec::new();
        let mut have = std::collections::HashSet::new();
        while edges.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && have.insert((u.min(v), u.max(v))) {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    /// Unpruned reference: every order, every assignment.
    fn brute_force(g: &Graph, k: usize) -> u64 {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for rest in permutations(n - 1) {
                for slot in 0..=rest.len() {
                    let mut p = rest.clone();
                    p.insert(slot, n - 1);
                    out.push(p);
                }
            }
            out
        }
        let m = g.m();
        let mut best = u64::MAX;
        for order in permutations(g.n()) {
            let vo = VertexOrder::from_order(order).unwrap();
            let mut pages = vec![0usize; m];
            loop {
                let pa = PageAssignment::from_pages(k, pages.clone()).unwrap();
                best = best.min(count_crossings(g, &vo, &pa));
                let mut i = 0;
                while i < m && pages[i] == k - 1 {
                    pages[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
                pages[i] += 1;
            }
        }
        best
    }

    #[test]
    fn complete_graph_fixtures() {
        let k4 = Graph::complete(4);
        assert_eq!(exact_book_crossing_number(&k4, 2).unwrap().0, 0);
        let k5 = Graph::complete(5);
        assert_eq!(exact_book_crossing_number(&k5, 2).unwrap().0, 1);
        assert_eq!(exact_book_crossing_number(&k5, 3).unwrap().0, 0);
    }

    #[test]
    fn matches_unpruned_brute_force_on_small_instances() {
        for seed in 0..6 {
            let g = random_graph(5, 6, seed);
            for k in 1..=2 {
                let (min, mut witness) = exact_book_crossing_number(&g, k).unwrap();
                assert_eq!(min, brute_force(&g, k), "seed {seed} k {k}");
                assert_eq!(witness.crossings(), min);
            }
        }
    }

    #[test]
    fn witness_is_the_lexicographically_smallest_optimal_order() {
        let c4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let (min, witness) = exact_book_crossing_number(&c4, 1).unwrap();
        assert_eq!(min, 0);
        assert_eq!(witness.vo().order(), [0, 1, 2, 3]);
        let k4 = Graph::complete(4);
        let (_, witness) = exact_book_crossing_number(&k4, 2).unwrap();
        assert_eq!(witness.vo().order(), [0, 1, 2, 3]);
    }

    #[test]
    fn size_guard_trips_and_can_be_lifted() {
        let big_n = random_graph(10, 9, 1);
        assert!(matches!(
            exact_book_crossing_number(&big_n, 2),
            Err(OracleError::TooLarge { n: 10, .. })
        ));
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let tight = SizeGuard {
            max_n: 2,
            max_m: 10,
        };
        assert!(exact_book_crossing_number_with_guard(&path, 1, tight).is_err());
        assert_eq!(
            exact_book_crossing_number_with_guard(&path, 1, SizeGuard::unlimited())
                .unwrap()
                .0,
            0
        );
    }

    #[test]
    fn fixed_order_solver_handles_the_trivial_cases() {
        let g = Graph::new(5, vec![(0, 2), (1, 4), (2, 3)]).unwrap();
        let vo = VertexOrder::identity(5);
        let one_page = PageAssignment::single_page(1, g.m()).unwrap();
        let base = count_crossings(&g, &vo, &one_page);
        let (c1, _) = exact_pa(&g, &vo, 1).unwrap();
        assert_eq!(c1, base, "one page leaves no choice");
        let k4 = Graph::complete(4);
        let (c, pa) = exact_pa(&k4, &VertexOrder::identity(4), 2).unwrap();
        assert_eq!(c, 0);
        assert_eq!(count_crossings(&k4, &VertexOrder::identity(4), &pa), 0);
    }

    #[test]
    fn fixed_order_solver_lower_bounds_every_page_heuristic() {
        for seed in 0..8 {
            let g = random_graph(7, 10, 100 + seed);
            let vo = VertexOrder::identity(7);
            for k in [2, 3] {
                let (opt, _) = exact_pa(&g, &vo, k).unwrap();
                for pa in [
                    pa_ceil_floor(&g, &vo, k),
                    pa_elen(&g, &vo, k),
                    pa_circular(&g, &vo, k),
                    pa_ear_decomp(&g, &vo, k),
                    pa_slope(&g, &vo, k),
                ] {
                    assert!(count_crossings(&g, &vo, &pa) >= opt);
                }
            }
        }
    }

    #[test]
    fn fixed_order_guard_watches_edge_count() {
        let g = random_graph(12, 21, 3);
        let vo = VertexOrder::identity(12);
        assert!(matches!(
            exact_pa(&g, &vo, 2),
            Err(OracleError::TooLarge { m: 21, .. })
        ));
        assert!(exact_pa_with_guard(&g, &vo, 2, SizeGuard::unlimited()).is_ok());
    }

    #[test]
    fn oracle_is_deterministic() {
        let g = random_graph(6, 9, 7);
        let (a_min, a) = exact_book_crossing_number(&g, 2).unwrap();
        let (b_min, b) = exact_book_crossing_number(&g, 2).unwrap();
        assert_eq!(a_min, b_min);
        assert_eq!(a.vo().order(), b.vo().order());
        assert_eq!(a.pa().pages(), b.pa().pages());
    }
}
