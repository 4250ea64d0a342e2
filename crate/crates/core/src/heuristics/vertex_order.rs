//! Spine-order construction heuristics.
//!
//! All of them consume a seed; unspecified ties (equal degree, equal
//! connectivity, equal cost) are broken by the seeded generator. Position ties
//! in conGreedy are broken toward the smaller index, end ties in conCro toward
//! the right end.

use crate::crossings::insertion_profiles;
use crate::drawing::VertexOrder;
use crate::graph::Graph;
use crate::seeds::{rng_from_seed, Rng};
use rand::Rng as _;

fn pick<T: Copy>(rng: &mut Rng, ties: &[T]) -> T {
    if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.random_range(0..ties.len())]
    }
}

/// Unvisited vertex of minimum degree, ties seeded-random.
fn min_degree_unvisited(g: &Graph, visited: &[bool], rng: &mut Rng) -> usize {
    let mut best = usize::MAX;
    let mut ties = Vec::new();
    for (v, &seen) in visited.iter().enumerate() {
        if seen {
            continue;
        }
        let d = g.degree(v);
        if d < best {
            best = d;
            ties.clear();
        }
        if d == best {
            ties.push(v);
        }
    }
    pick(rng, &ties)
}

fn any_unvisited(g: &Graph, visited: &[bool], rng: &mut Rng) -> usize {
    let ties: Vec<usize> = (0..g.n()).filter(|&v| !visited[v]).collect();
    pick(rng, &ties)
}

/// Depth-first order that roots at a minimum-degree vertex and always descends
/// to the unvisited neighbor of smallest degree, backtracking when stuck;
/// exhausted components restart at the unvisited vertex of smallest degree.
pub fn vo_sml_dgr_dfs(g: &Graph, seed: u64) -> VertexOrder {
    let mut rng = rng_from_seed(seed);
    dfs_order(g, &mut rng, min_degree_unvisited, |g, cands, rng| {
        let mut best = usize::MAX;
        let mut ties = Vec::new();
        for &w in cands {
            let d = g.degree(w);
            if d < best {
                best = d;
                ties.clear();
            }
            if d == best {
                ties.push(w);
            }
        }
        pick(rng, &ties)
    })
}

/// Depth-first order with uniformly random root and descent.
pub fn vo_rand_dfs(g: &Graph, seed: u64) -> VertexOrder {
    let mut rng = rng_from_seed(seed);
    dfs_order(g, &mut rng, any_unvisited, |_, cands, rng| pick(rng, cands))
}

fn dfs_order(
    g: &Graph,
    rng: &mut Rng,
    root: impl Fn(&Graph, &[bool], &mut Rng) -> usize,
    descend: impl Fn(&Graph, &[usize], &mut Rng) -> usize,
) -> VertexOrder {
    let n = g.n();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = Vec::new();
    while order.len() < n {
        let r = root(g, &visited, rng);
        visited[r] = true;
        order.push(r);
        stack.push(r);
        while let Some(&v) = stack.last() {
            let cands: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| !visited[w])
                .collect();
            if cands.is_empty() {
                stack.pop();
            } else {
                let w = descend(g, &cands, rng);
                visited[w] = true;
                order.push(w);
                stack.push(w);
            }
        }
    }
    VertexOrder::from_order(order).expect("DFS visits every vertex once")
}

/// Preorder of a breadth-first spanning forest grown from seeded-random roots;
/// children keep their discovery order. On a tree this yields a spine with no
/// one-page crossings.
pub fn vo_tree_bfs(g: &Graph, seed: u64) -> VertexOrder {
    let mut rng = rng_from_seed(seed);
    let n = g.n();
    let mut visited = vec![false; n];
    let mut children = vec![Vec::new(); n];
    let mut roots = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let mut seen = 0;
    while seen < n {
        let r = any_unvisited(g, &visited, &mut rng);
        visited[r] = true;
        seen += 1;
        roots.push(r);
        queue.push_back(r);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    seen += 1;
                    children[v].push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut stack = Vec::new();
    for &r in &roots {
        stack.push(r);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in children[v].iter().rev() {
                stack.push(c);
            }
        }
    }
    VertexOrder::from_order(order).expect("BFS forest covers every vertex once")
}

/// Unplaced vertex with the most placed neighbors; ties to fewest unplaced
/// neighbors, then seeded-random. Shared by conCro, conGreedy and the
/// combined construction.
pub(crate) fn select_candidate(
    g: &Graph,
    placed_nb: &[usize],
    placed: &[bool],
    rng: &mut Rng,
) -> usize {
    let mut best = (0usize, usize::MAX);
    let mut ties = Vec::new();
    for v in 0..g.n() {
        if placed[v] {
            continue;
        }
        let key = (placed_nb[v], g.degree(v) - placed_nb[v]);
        if key.0 > best.0 || (key.0 == best.0 && key.1 < best.1) {
            best = key;
            ties.clear();
        }
        if key == best {
            ties.push(v);
        }
    }
    pick(rng, &ties)
}

/// Connectivity-driven end placement. Each selected vertex goes to the spine
/// end where its closing edges cross fewer open edges; an open edge with
/// placed endpoint x is crossed by the closing edge to v at the right end iff
/// x sits strictly between v and that end (symmetrically on the left). End
/// ties go right.
pub fn vo_con_cro(g: &Graph, seed: u64) -> VertexOrder {
    let mut rng = rng_from_seed(seed);
    let n = g.n();
    let mut placed = vec![false; n];
    let mut placed_nb = vec![0usize; n];
    let mut open_deg = vec![0usize; n];
    let mut spine: Vec<usize> = Vec::with_capacity(n);
    for _ in 0..n {
        let u = select_candidate(g, &placed_nb, &placed, &mut rng);
        if !spine.is_empty() {
            // open edge count with placed endpoint at spine index <= i / >= i,
            // still counting edges toward u (corrected per closing edge below)
            let len = spine.len();
            let mut prefix = vec![0u64; len];
            let mut acc = 0u64;
            for (i, &x) in spine.iter().enumerate() {
                acc += open_deg[x] as u64;
                prefix[i] = acc;
            }
            let total = acc;
            let closing: Vec<usize> = {
                let mut pos_of = |v: usize| spine.iter().position(|&x| x == v).unwrap();
                g.neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&v| placed[v])
                    .map(&mut pos_of)
                    .collect()
            };
            let mut cost_left = 0i64;
            let mut cost_right = 0i64;
            for &p in &closing {
                let open_left = if p == 0 { 0 } else { prefix[p - 1] } as i64;
                let open_right = (total - prefix[p]) as i64;
                let own_left = closing.iter().filter(|&&q| q < p).count() as i64;
                let own_right = closing.iter().filter(|&&q| q > p).count() as i64;
                cost_left += open_left - own_left;
                cost_right += open_right - own_right;
            }
            if cost_left < cost_right {
                spine.insert(0, u);
            } else {
                spine.push(u);
            }
        } else {
            spine.push(u);
        }
        placed[u] = true;
        let mut open = 0;
        for &w in g.neighbors(u) {
            if placed[w] {
                open_deg[w] -= 1;
            } else {
                open += 1;
                placed_nb[w] += 1;
            }
        }
        open_deg[u] = open;
    }
    VertexOrder::from_order(spine).expect("every vertex placed once")
}

/// Like conCro but every insertion position is considered; the cost of a
/// position is the number of crossings its newly closed edges pick up against
/// the closed edges so far, all taken on a single page. Position ties break
/// toward the smaller index.
pub fn vo_con_greedy(g: &Graph, seed: u64) -> VertexOrder {
    let mut rng = rng_from_seed(seed);
    let n = g.n();
    let mut placed = vec![false; n];
    let mut placed_nb = vec![0usize; n];
    let mut pos = vec![0usize; n];
    let mut spine: Vec<usize> = Vec::with_capacity(n);
    let mut closed: Vec<(usize, usize, usize)> = Vec::with_capacity(g.m());
    for _ in 0..n {
        let u = select_candidate(g, &placed_nb, &placed, &mut rng);
        let incident: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| placed[v])
            .collect();
        let gaps = spine.len() + 1;
        let profiles = insertion_profiles(gaps, 1, &pos, &incident, &closed);
        let mut best_gap = 0;
        let mut best_cost = i64::MAX;
        for gap in 0..gaps {
            let cost: i64 = profiles.iter().map(|p| p[0][gap]).sum();
            if cost < best_cost {
                best_cost = cost;
                best_gap = gap;
            }
        }
        spine.insert(best_gap, u);
        for (i, &x) in spine.iter().enumerate().skip(best_gap) {
            pos[x] = i;
        }
        placed[u] = true;
        for &v in &incident {
            closed.push((u, v, 0));
        }
        for &w in g.neighbors(u) {
            if !placed[w] {
                placed_nb[w] += 1;
            }
        }
    }
    VertexOrder::from_order(spine).expect("every vertex placed once")
}
