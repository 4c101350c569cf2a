//! Brute-force reference implementations. Everything here is deliberately
//! independent of the planar machinery: it sees graphs as plain edge lists
//! (except for the face-parity test of the cut-cycle enumeration, which only
//! needs face adjacency).

use std::collections::{BinaryHeap, VecDeque};

use crate::embedding::{edge_of, twin, EmbeddedGraph, VertexId};
use crate::error::CutError;
use crate::scalar::{Dist, MinKey, Scalar};

/// Residual network for undirected max-flow. Each undirected edge becomes a
/// pair of opposite arcs, each with the full capacity, that are each other's
/// reverse.
#[derive(Clone, Debug)]
pub struct FlowNetwork<W> {
    n: usize,
    head: Vec<usize>,
    residual: Vec<W>,
    adj: Vec<Vec<usize>>,
}

impl<W: Scalar> FlowNetwork<W> {
    pub fn new(n: usize, edges: &[(VertexId, VertexId, W)]) -> Self {
        let mut net = FlowNetwork {
            n,
            head: Vec::with_capacity(2 * edges.len()),
            residual: Vec::with_capacity(2 * edges.len()),
            adj: vec![Vec::new(); n],
        };
        for &(u, v, c) in edges {
            assert!(!c.is_negative(), "negative capacity");
            net.adj[u].push(net.head.len());
            net.head.push(v);
            net.residual.push(c);
            net.adj[v].push(net.head.len());
            net.head.push(u);
            net.residual.push(c);
        }
        net
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.n];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let v = self.head[a];
                if level[v] == usize::MAX && self.residual[a] > W::zero() {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, limit: W, level: &[usize], it: &mut [usize]) -> W {
        if u == t {
            return limit;
        }
        while it[u] < self.adj[u].len() {
            let a = self.adj[u][it[u]];
            let v = self.head[a];
            if level[v] == level[u] + 1 && self.residual[a] > W::zero() {
                let cap = if self.residual[a] < limit { self.residual[a] } else { limit };
                let pushed = self.augment(v, t, cap, level, it);
                if pushed > W::zero() {
                    self.residual[a] = self.residual[a] - pushed;
                    self.residual[a ^ 1] = self.residual[a ^ 1] + pushed;
                    return pushed;
                }
            }
            it[u] += 1;
        }
        W::zero()
    }

    /// Dinic's algorithm. Returns the flow value; residuals keep the flow.
    pub fn max_flow(&mut self, s: usize, t: usize) -> W {
        let mut total = W::zero();
        let big = self.residual.iter().fold(W::one(), |a, &b| a + b);
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut it = vec![0; self.n];
            loop {
                let f = self.augment(s, t, big, &level, &mut it);
                if f <= W::zero() {
                    break;
                }
                total = total + f;
            }
        }
    }

    /// Net flow on the `i`-th input edge, oriented from its first endpoint.
    pub fn edge_flow(&self, i: usize, original: W) -> W {
        original - self.residual[2 * i]
    }

    /// Vertices reachable from `s` in the residual graph (the source side of
    /// a minimum cut after `max_flow`).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let l = self.levels(s);
        l.iter().map(|&x| x != usize::MAX).collect()
    }
}

/// Exact maximum s-t flow value of an undirected graph.
pub fn oracle_maxflow<W: Scalar>(g: &EmbeddedGraph<W>, s: VertexId, t: VertexId) -> W {
    assert_ne!(s, t, "oracle_maxflow needs distinct endpoints");
    let mut net = FlowNetwork::new(g.vertex_count(), &g.edge_list());
    let value = net.max_flow(s, t);
    debug_assert!(conservation_holds(&net, g, s, t, value));
    value
}

fn conservation_holds<W: Scalar>(
    net: &FlowNetwork<W>,
    g: &EmbeddedGraph<W>,
    s: usize,
    t: usize,
    value: W,
) -> bool {
    let mut excess = vec![W::zero(); g.vertex_count()];
    for (i, (u, v, c)) in g.edge_list().into_iter().enumerate() {
        let f = net.edge_flow(i, c);
        excess[u] = excess[u] - f;
        excess[v] = excess[v] + f;
    }
    excess.iter().enumerate().all(|(x, &e)| {
        if x == s {
            e == -value
        } else if x == t {
            e == value
        } else {
            e.is_zero()
        }
    })
}

/// Dijkstra over an adjacency list with nonnegative lengths.
pub fn dijkstra_adj<W: Scalar>(
    adj: &[Vec<(usize, W)>],
    sources: &[(usize, W)],
) -> Vec<Dist<W>> {
    let mut dist = vec![Dist::Inf; adj.len()];
    let mut heap = BinaryHeap::new();
    for &(s, d0) in sources {
        if Dist::Finite(d0) < dist[s] {
            dist[s] = Dist::Finite(d0);
            heap.push(MinKey(d0, s));
        }
    }
    while let Some(MinKey(d, u)) = heap.pop() {
        if Dist::Finite(d) > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if Dist::Finite(nd) < dist[v] {
                dist[v] = Dist::Finite(nd);
                heap.push(MinKey(nd, v));
            }
        }
    }
    dist
}

/// Single-source distances in an embedded graph, edge lengths = capacities.
pub fn oracle_dijkstra<W: Scalar>(g: &EmbeddedGraph<W>, source: VertexId) -> Vec<Dist<W>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (u, v, c) in g.edge_list() {
        adj[u].push((v, c));
        adj[v].push((u, c));
    }
    dijkstra_adj(&adj, &[(source, W::zero())])
}

/// Bellman-Ford over directed arcs. `Err(NegativeCycle)` if a negative cycle
/// is reachable from the source.
pub fn bellman_ford<W: Scalar>(
    n: usize,
    arcs: &[(usize, usize, W)],
    source: usize,
) -> Result<Vec<Dist<W>>, CutError> {
    let mut dist = vec![Dist::Inf; n];
    dist[source] = Dist::zero();
    for round in 0..n {
        let mut changed = false;
        for &(u, v, w) in arcs {
            if let Dist::Finite(du) = dist[u] {
                let nd = Dist::Finite(du + w);
                if nd < dist[v] {
                    dist[v] = nd;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(dist);
        }
        if round + 1 == n {
            return Err(CutError::NegativeCycle);
        }
    }
    Ok(dist)
}

/// Largest dual edge count accepted by [`oracle_all_cut_cycles`].
pub const CUT_CYCLE_ENUMERATION_LIMIT: usize = 16;

/// Exhaustive minimum cost of a closed walk in `dual` that
///
/// * visits `path[i - 1]` (1-based index `i`),
/// * avoids every `path[j - 1]` for `j > i`,
/// * separates face `face_s` from face `face_t` of `dual`.
///
/// Walks are enumerated as edge multiplicity vectors in {0, 1, 2}: a closed
/// walk exists iff every degree is even and the support is connected, and a
/// minimal walk never needs an edge three times. Separation is decided by
/// face parity: the odd-multiplicity edges form a cut of the face adjacency
/// graph, and `face_s`/`face_t` must land on opposite sides.
pub fn oracle_all_cut_cycles<W: Scalar>(
    dual: &EmbeddedGraph<W>,
    face_s: usize,
    face_t: usize,
    path: &[usize],
    i: usize,
) -> Result<Dist<W>, CutError> {
    let m = dual.edge_count();
    if m > CUT_CYCLE_ENUMERATION_LIMIT || dual.vertex_count() > 12 {
        return Err(CutError::TooLarge(format!("{m} edges")));
    }
    if i == 0 || i > path.len() {
        return Err(CutError::IndexOutOfRange { index: i, k: path.len() });
    }
    let target = path[i - 1];
    let mut forbidden = vec![false; dual.vertex_count()];
    for &f in &path[i..] {
        forbidden[f] = true;
    }
    if forbidden[target] {
        return Ok(Dist::Inf);
    }
    let faces = dual.faces();
    let usable: Vec<usize> = (0..m)
        .filter(|&e| {
            let (a, b) = dual.endpoints(e);
            !forbidden[a] && !forbidden[b]
        })
        .collect();
    let mut best = Dist::Inf;
    let mut mult = vec![0u8; m];
    enumerate(
        dual,
        &faces.face_of,
        faces.len(),
        (face_s, face_t, target),
        &usable,
        0,
        W::zero(),
        &mut mult,
        &mut best,
    );
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn enumerate<W: Scalar>(
    g: &EmbeddedGraph<W>,
    face_of: &[usize],
    face_count: usize,
    ends: (usize, usize, usize),
    usable: &[usize],
    pos: usize,
    cost: W,
    mult: &mut [u8],
    best: &mut Dist<W>,
) {
    if best.is_finite() && Dist::Finite(cost) >= *best {
        return;
    }
    if pos == usable.len() {
        if is_valid_walk(g, face_of, face_count, ends, mult) {
            *best = best.min(Dist::Finite(cost));
        }
        return;
    }
    let e = usable[pos];
    for k in 0..3u8 {
        mult[e] = k;
        let mut c = cost;
        for _ in 0..k {
            c = c + g.capacity(e);
        }
        enumerate(g, face_of, face_count, ends, usable, pos + 1, c, mult, best);
    }
    mult[e] = 0;
}

fn is_valid_walk<W: Scalar>(
    g: &EmbeddedGraph<W>,
    face_of: &[usize],
    face_count: usize,
    (face_s, face_t, target): (usize, usize, usize),
    mult: &[u8],
) -> bool {
    let n = g.vertex_count();
    let mut deg = vec![0usize; n];
    let mut any = false;
    for (e, &k) in mult.iter().enumerate() {
        if k > 0 {
            any = true;
            let (a, b) = g.endpoints(e);
            deg[a] += k as usize;
            deg[b] += k as usize;
        }
    }
    if !any || deg[target] == 0 || deg.iter().any(|d| d % 2 == 1) {
        return false;
    }
    // Support connected.
    let mut seen = vec![false; n];
    let mut stack = vec![target];
    seen[target] = true;
    while let Some(v) = stack.pop() {
        for d in g.darts_around(v) {
            if mult[edge_of(d)] > 0 {
                let w = g.head(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    if (0..n).any(|v| deg[v] > 0 && !seen[v]) {
        return false;
    }
    // Face parity across odd edges.
    let mut adj = vec![Vec::new(); face_count];
    for d in (0..g.dart_count()).step_by(2) {
        let (fa, fb) = (face_of[d], face_of[twin(d)]);
        let odd = mult[edge_of(d)] % 2 == 1;
        adj[fa].push((fb, odd));
        adj[fb].push((fa, odd));
    }
    let mut parity = vec![u8::MAX; face_count];
    parity[face_s] = 0;
    let mut stack = vec![face_s];
    while let Some(f) = stack.pop() {
        for &(h, odd) in &adj[f] {
            let p = parity[f] ^ odd as u8;
            if parity[h] == u8::MAX {
                parity[h] = p;
                stack.push(h);
            }
        }
    }
    parity[face_t] == 1
}
