//! Combined spine + page construction: conGreedy vertex selection, but each
//! candidate position is scored by greedily paging the vertex's newly closed
//! edges, and the cheapest position is committed together with those pages.

use super::vertex_order::select_candidate;
use crate::crossings::insertion_profiles;
use crate::drawing::{BookDrawing, PageAssignment, VertexOrder};
use crate::graph::Graph;
use crate::seeds::rng_from_seed;

pub fn con_greedy_plus(g: &Graph, k: usize, seed: u64) -> BookDrawing {
    con_greedy_plus_traced(g, k, seed, |_, _| {})
}

/// As [`con_greedy_plus`], reporting every evaluated cost vector and the
/// committed gap, so tests can audit that commitments are never beaten.
pub(crate) fn con_greedy_plus_traced(
    g: &Graph,
    k: usize,
    seed: u64,
    mut on_step: impl FnMut(&[i64], usize),
) -> BookDrawing {
    assert!(k >= 1, "need at least one page");
    let mut rng = rng_from_seed(seed);
    let n = g.n();
    let incident_edges = g.incident_edges();
    let mut placed = vec![false; n];
    let mut placed_nb = vec![0usize; n];
    let mut pos = vec![0usize; n];
    let mut spine: Vec<usize> = Vec::with_capacity(n);
    let mut committed: Vec<(usize, usize, usize)> = Vec::with_capacity(g.m());
    let mut pages = vec![0usize; g.m()];
    let mut total = 0u64;
    for _ in 0..n {
        let u = select_candidate(g, &placed_nb, &placed, &mut rng);
        // newly closed edges, by placed endpoint position ascending; the pages
        // of closed edges sharing u never interact, so the order only fixes
        // the bookkeeping sequence, not the outcome
        let mut closing: Vec<(usize, usize)> = incident_edges[u]
            .iter()
            .map(|&e| {
                let (a, b) = g.edge(e);
                (e, if a == u { b } else { a })
            })
            .filter(|&(_, v)| placed[v])
            .collect();
        closing.sort_by_key(|&(_, v)| pos[v]);
        let endpoints: Vec<usize> = closing.iter().map(|&(_, v)| v).collect();
        let gaps = spine.len() + 1;
        let profiles = insertion_profiles(gaps, k, &pos, &endpoints, &committed);
        let mut costs = vec![0i64; gaps];
        for prof in &profiles {
            for (gap, cost) in costs.iter_mut().enumerate() {
                *cost += (0..k).map(|p| prof[p][gap]).min().unwrap();
            }
        }
        let best_gap = (0..gaps).min_by_key(|&gap| costs[gap]).unwrap();
        on_step(&costs, best_gap);
        total += costs[best_gap] as u64;
        for (i, &(e, v)) in closing.iter().enumerate() {
            let prof = &profiles[i];
            let page = (0..k).min_by_key(|&p| prof[p][best_gap]).unwrap();
            pages[e] = page;
            committed.push((u, v, page));
        }
        spine.insert(best_gap, u);
        for (i, &x) in spine.iter().enumerate().skip(best_gap) {
            pos[x] = i;
        }
        placed[u] = true;
        for &w in g.neighbors(u) {
            if !placed[w] {
                placed_nb[w] += 1;
            }
        }
    }
    let vo = VertexOrder::from_order(spine).expect("every vertex placed once");
    let pa = PageAssignment::from_pages(k, pages).expect("pages stay below k");
    let mut d = BookDrawing::new(g.clone(), vo, pa).expect("drawing matches graph");
    d.set_cached(total);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::derive_seed;
    use rand::Rng as _;

    fn random_tree(n: usize, seed: u64) -> Graph {
        let mut rng = rng_from_seed(seed);
        let edges = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
        Graph::new(n, edges).unwrap()
    }

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

    #[test]
    fn trees_come_out_crossing_free_on_any_page_count() {
        for seed in 0..25 {
            let g = random_tree(70, derive_seed(11, seed));
            for k in [1, 2, 3] {
                let mut d = con_greedy_plus(&g, k, seed);
                assert_eq!(d.crossings(), 0);
            }
        }
    }

    #[test]
    fn k4_on_two_pages_is_solved_from_every_seed() {
        let g = Graph::complete(4);
        for seed in 0..50 {
            let mut d = con_greedy_plus(&g, 2, seed);
            assert_eq!(d.crossings(), 0);
        }
    }

    #[test]
    fn output_is_a_valid_drawing_and_cache_matches_recount() {
        for seed in 0..20 {
            let g = random_graph(14, 30, derive_seed(23, seed));
            let d = con_greedy_plus(&g, 3, seed);
            // set_cached debug-asserts cache == recount; recheck release-style
            assert_eq!(d.cached_crossings().unwrap(), d.count());
            assert_eq!(d.vo().len(), 14);
            assert_eq!(d.pa().len(), 30);
        }
    }

    #[test]
    fn committed_position_is_never_beaten() {
        let g = random_graph(12, 24, 5);
        for seed in 0..10 {
            con_greedy_plus_traced(&g, 2, seed, |costs, chosen| {
                let best = *costs.iter().min().unwrap();
                assert_eq!(costs[chosen], best);
                assert!(
                    costs[..chosen].iter().all(|&c| c > best),
                    "smallest index wins ties"
                );
            });
        }
    }

    #[test]
    fn same_seed_gives_same_spine_independent_of_k() {
        // the spine only depends on candidate selection and gap costs with the
        // committed pages, so this holds for k vs k only; across k it may
        // differ. Check determinism at fixed k.
        let g = random_graph(13, 26, 9);
        for seed in 0..5 {
            let a = con_greedy_plus(&g, 3, seed);
            let b = con_greedy_plus(&g, 3, seed);
            assert_eq!(a.vo().order(), b.vo().order());
            assert_eq!(a.pa().pages(), b.pa().pages());
        }
    }
}
