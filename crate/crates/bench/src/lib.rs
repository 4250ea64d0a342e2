//! Shared input builders for the criterion benches.

use bookdraw::seeds::{derive_seed, rng_from_seed};
use bookdraw::{BookDrawing, Graph, PageAssignment, VertexOrder};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random drawing of a random graph, for counter benchmarks.
pub fn random_drawing(n: usize, m: usize, k: usize, seed: u64) -> BookDrawing {
    let mut rng = rng_from_seed(derive_seed(seed, 1));
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(&mut rng);
    pairs.truncate(m);
    let graph = Graph::new(n, pairs).unwrap();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let vo = VertexOrder::from_order(order).unwrap();
    let pages = (0..graph.m()).map(|_| rng.random_range(0..k)).collect();
    let pa = PageAssignment::from_pages(k, pages).unwrap();
    BookDrawing::new(graph, vo, pa).unwrap()
}
