//! Spine orders, page assignments and complete book drawings.
//!
//! A book drawing of a graph places the vertices on a line (the spine) and
//! assigns every edge to one of `k` half-planes (pages). Two edges on the same
//! page cross exactly when their endpoints alternate along the spine.

use std::fmt::Write as _;

use thiserror::Error;

use crate::crossings;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum DrawingError {
    #[error("order of length {0} is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("page count must be at least 1")]
    NoPages,
    #[error("page {page} out of range for k = {k}")]
    PageOutOfRange { page: usize, k: usize },
    #[error("stated crossing count {stated} but drawing has {actual}")]
    CrossingsMismatch { stated: u64, actual: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("drawing text: {0}")]
    Parse(String),
}

/// A linear order of the vertices, kept as the pair of mutually inverse maps
/// position -> vertex (`order`) and vertex -> position (`position`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        VertexOrder {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// From a position -> vertex table.
    pub fn from_order(order: Vec<usize>) -> Result<Self, DrawingError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(DrawingError::NotAPermutation(n));
            }
            position[v] = p;
        }
        Ok(VertexOrder { order, position })
    }

    /// From a vertex -> position table.
    pub fn from_position(position: Vec<usize>) -> Result<Self, DrawingError> {
        let n = position.len();
        let mut order = vec![usize::MAX; n];
        for (v, &p) in position.iter().enumerate() {
            if p >= n || order[p] != usize::MAX {
                return Err(DrawingError::NotAPermutation(n));
            }
            order[p] = v;
        }
        Ok(VertexOrder { order, position })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertex_at(&self, pos: usize) -> usize {
        self.order[pos]
    }

    pub fn position_of(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Position -> vertex slice.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Vertex -> position slice.
    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn reverse(&mut self) {
        self.order.reverse();
        let n = self.order.len();
        for p in &mut self.position {
            *p = n - 1 - *p;
        }
    }

    pub fn reversed(&self) -> Self {
        let mut r = self.clone();
        r.reverse();
        r
    }

    pub fn swap_positions(&mut self, p: usize, q: usize) {
        let (a, b) = (self.order[p], self.order[q]);
        self.order.swap(p, q);
        self.position[a] = q;
        self.position[b] = p;
    }

    /// Removes `v` and reinserts it so that it ends up at `new_pos`; the
    /// relative order of all other vertices is unchanged.
    pub fn move_to(&mut self, v: usize, new_pos: usize) {
        let old = self.position[v];
        if old == new_pos {
            return;
        }
        if old < new_pos {
            for p in old..new_pos {
                self.order[p] = self.order[p + 1];
                self.position[self.order[p]] = p;
            }
        } else {
            for p in (new_pos + 1..=old).rev() {
                self.order[p] = self.order[p - 1];
                self.position[self.order[p]] = p;
            }
        }
        self.order[new_pos] = v;
        self.position[v] = new_pos;
    }
}

/// One page index per edge, in edge-list order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageAssignment {
    page: Vec<usize>,
    k: usize,
}

impl PageAssignment {
    /// All `m` edges on page 0.
    pub fn single_page(k: usize, m: usize) -> Result<Self, DrawingError> {
        if k == 0 {
            return Err(DrawingError::NoPages);
        }
        Ok(PageAssignment {
            page: vec![0; m],
            k,
        })
    }

    pub fn from_pages(k: usize, page: Vec<usize>) -> Result<Self, DrawingError> {
        if k == 0 {
            return Err(DrawingError::NoPages);
        }
        if let Some(&p) = page.iter().find(|&&p| p >= k) {
            return Err(DrawingError::PageOutOfRange { page: p, k });
        }
        Ok(PageAssignment { page, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.page.len()
    }

    pub fn is_empty(&self) -> bool {
        self.page.is_empty()
    }

    pub fn page_of(&self, e: usize) -> usize {
        self.page[e]
    }

    pub fn pages(&self) -> &[usize] {
        &self.page
    }

    pub fn set_page(&mut self, e: usize, page: usize) -> Result<(), DrawingError> {
        if page >= self.k {
            return Err(DrawingError::PageOutOfRange { page, k: self.k });
        }
        self.page[e] = page;
        Ok(())
    }
}

/// A graph together with a spine order and a page assignment.
///
/// The crossing count is cached after the first query; every mutating method
/// drops the cache, so a stale value can never be observed.
#[derive(Debug, Clone)]
pub struct BookDrawing {
    graph: Graph,
    vo: VertexOrder,
    pa: PageAssignment,
    cached: Option<u64>,
}

impl BookDrawing {
    pub fn new(graph: Graph, vo: VertexOrder, pa: PageAssignment) -> Result<Self, DrawingError> {
        if vo.len() != graph.n() {
            return Err(DrawingError::LengthMismatch {
                expected: graph.n(),
                got: vo.len(),
            });
        }
        if pa.len() != graph.m() {
            return Err(DrawingError::LengthMismatch {
                expected: graph.m(),
                got: pa.len(),
            });
        }
        Ok(BookDrawing {
            graph,
            vo,
            pa,
            cached: None,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vo(&self) -> &VertexOrder {
        &self.vo
    }

    pub fn pa(&self) -> &PageAssignment {
        &self.pa
    }

    pub fn k(&self) -> usize {
        self.pa.k()
    }

    pub fn into_parts(self) -> (Graph, VertexOrder, PageAssignment) {
        (self.graph, self.vo, self.pa)
    }

    /// Crossing count, cached.
    pub fn crossings(&mut self) -> u64 {
        match self.cached {
            Some(c) => c,
            None => {
                let c = crossings::count_crossings(&self.graph, &self.vo, &self.pa);
                self.cached = Some(c);
                c
            }
        }
    }

    /// Crossing count without touching the cache.
    pub fn count(&self) -> u64 {
        match self.cached {
            Some(c) => c,
            None => crossings::count_crossings(&self.graph, &self.vo, &self.pa),
        }
    }

    pub fn cached_crossings(&self) -> Option<u64> {
        self.cached
    }

    pub fn set_page(&mut self, e: usize, page: usize) -> Result<(), DrawingError> {
        self.pa.set_page(e, page)?;
        self.cached = None;
        Ok(())
    }

    pub fn move_vertex(&mut self, v: usize, new_pos: usize) {
        self.vo.move_to(v, new_pos);
        self.cached = None;
    }

    pub(crate) fn set_cached(&mut self, c: u64) {
        debug_assert_eq!(
            c,
            crossings::count_crossings(&self.graph, &self.vo, &self.pa)
        );
        self.cached = Some(c);
    }

    /// Text form: the graph block, then the spine as one line of vertex ids,
    /// then one line of page ids in edge-list order, then `crossings C`.
    pub fn to_text(&self) -> String {
        let mut s = self.graph.to_text();
        let order: Vec<String> = self.vo.order().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", order.join(" "));
        let pages: Vec<String> = self.pa.pages().iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "{}", pages.join(" "));
        let _ = writeln!(s, "crossings {}", self.count());
        s
    }

    /// Parses [`Self::to_text`] output. The page count is taken as the largest
    /// page id plus one (at least 1); a `crossings` line, if present, is
    /// verified against a recount.
    pub fn from_text(text: &str) -> Result<Self, DrawingError> {
        let mut tokens = text.split_whitespace().peekable();
        let next_num = |tokens: &mut std::iter::Peekable<std::str::SplitWhitespace>,
                        what: &str|
         -> Result<usize, DrawingError> {
            let t = tokens
                .next()
                .ok_or_else(|| DrawingError::Parse(format!("missing {what}")))?;
            t.parse()
                .map_err(|_| DrawingError::Parse(format!("bad {what}: {t:?}")))
        };
        let n = next_num(&mut tokens, "vertex count")?;
        let m = next_num(&mut tokens, "edge count")?;
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let u = next_num(&mut tokens, &format!("endpoint of edge {i}"))?;
            let v = next_num(&mut tokens, &format!("endpoint of edge {i}"))?;
            edges.push((u, v));
        }
        let graph = Graph::new(n, edges)?;
        let mut order = Vec::with_capacity(n);
        for i in 0..n {
            order.push(next_num(&mut tokens, &format!("spine entry {i}"))?);
        }
        let vo = VertexOrder::from_order(order)?;
        let mut pages = Vec::with_capacity(m);
        for i in 0..m {
            pages.push(next_num(&mut tokens, &format!("page of edge {i}"))?);
        }
        let k = pages.iter().copied().max().map_or(1, |p| p + 1);
        let pa = PageAssignment::from_pages(k, pages)?;
        let stated = match tokens.next() {
            None => None,
            Some("crossings") => Some(next_num(&mut tokens, "crossing count")? as u64),
            Some(t) => return Err(DrawingError::Parse(format!("unexpected token {t:?}"))),
        };
        if let Some(t) = tokens.next() {
            return Err(DrawingError::Parse(format!("trailing token {t:?}")));
        }
        let mut d = BookDrawing::new(graph, vo, pa)?;
        let actual = d.crossings();
        if let Some(stated) = stated {
            if stated != actual {
                return Err(DrawingError::CrossingsMismatch { stated, actual });
            }
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_maps_are_inverse() {
        let vo = VertexOrder::from_order(vec![2, 0, 3, 1]).unwrap();
        for p in 0..4 {
            assert_eq!(vo.position_of(vo.vertex_at(p)), p);
        }
        let same = VertexOrder::from_position(vo.positions().to_vec()).unwrap();
        assert_eq!(same, vo);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(VertexOrder::from_order(vec![0, 0, 1]).is_err());
        assert!(VertexOrder::from_order(vec![0, 3]).is_err());
        assert!(VertexOrder::from_position(vec![1, 1]).is_err());
    }

    #[test]
    fn move_to_shifts_between() {
        let mut vo = VertexOrder::identity(5);
        vo.move_to(0, 3);
        assert_eq!(vo.order(), &[1, 2, 3, 0, 4]);
        vo.move_to(4, 0);
        assert_eq!(vo.order(), &[4, 1, 2, 3, 0]);
        vo.move_to(2, 2);
        assert_eq!(vo.order(), &[4, 1, 2, 3, 0]);
        for p in 0..5 {
            assert_eq!(vo.position_of(vo.vertex_at(p)), p);
        }
    }

    #[test]
    fn reverse_is_involution() {
        let vo = VertexOrder::from_order(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(vo.reversed().reversed(), vo);
        assert_eq!(vo.reversed().order(), &[1, 3, 0, 2]);
    }

    #[test]
    fn page_bounds_checked() {
        let mut pa = PageAssignment::from_pages(2, vec![0, 1, 0]).unwrap();
        assert!(pa.set_page(0, 2).is_err());
        assert!(pa.set_page(0, 1).is_ok());
        assert_eq!(pa.page_of(0), 1);
        assert!(PageAssignment::from_pages(0, vec![]).is_err());
        assert!(PageAssignment::from_pages(1, vec![1]).is_err());
    }

    #[test]
    fn drawing_validates_sizes() {
        let g = Graph::complete(3);
        let vo = VertexOrder::identity(3);
        let pa = PageAssignment::single_page(1, 2).unwrap();
        assert!(BookDrawing::new(g, vo, pa).is_err());
    }

    #[test]
    fn cache_cleared_on_mutation() {
        let g = Graph::complete(4);
        let vo = VertexOrder::identity(4);
        let pa = PageAssignment::single_page(2, 6).unwrap();
        let mut d = BookDrawing::new(g, vo, pa).unwrap();
        assert_eq!(d.crossings(), 1);
        assert_eq!(d.cached_crossings(), Some(1));
        d.set_page(1, 1).unwrap();
        assert_eq!(d.cached_crossings(), None);
        assert_eq!(d.crossings(), 0);
        d.move_vertex(0, 2);
        assert_eq!(d.cached_crossings(), None);
    }

    #[test]
    fn drawing_text_round_trip() {
        let g = Graph::complete(4);
        let vo = VertexOrder::from_order(vec![1, 3, 0, 2]).unwrap();
        let pa = PageAssignment::from_pages(2, vec![0, 1, 0, 1, 0, 1]).unwrap();
        let mut d = BookDrawing::new(g, vo, pa).unwrap();
        let c = d.crossings();
        let text = d.to_text();
        let parsed = BookDrawing::from_text(&text).unwrap();
        assert_eq!(parsed.vo(), d.vo());
        assert_eq!(parsed.pa().pages(), d.pa().pages());
        assert_eq!(parsed.count(), c);
    }

    #[test]
    fn drawing_text_rejects_wrong_count() {
        let g = Graph::complete(4);
        let vo = VertexOrder::identity(4);
        let pa = PageAssignment::single_page(1, 6).unwrap();
        let d = BookDrawing::new(g, vo, pa).unwrap();
        let text = d.to_text().replace("crossings 1", "crossings 7");
        assert!(matches!(
            BookDrawing::from_text(&text),
            Err(DrawingError::CrossingsMismatch {
                stated: 7,
                actual: 1
            })
        ));
    }
}
