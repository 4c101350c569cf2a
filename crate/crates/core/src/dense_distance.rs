//! Dense distance graphs (border-to-border distance matrices of clusters)
//! and Dijkstra over a mix of such matrices and explicit edges.

use std::collections::BinaryHeap;

use crate::embedding::{DartId, EdgeId, EmbeddedGraph, VertexId};
use crate::error::CutError;
use crate::partition::{Cluster, ClusterGraph};
use crate::scalar::{Dist, MinKey, Scalar};

/// Complete graph on a cluster's border vertices weighted by in-cluster
/// distances.
#[derive(Clone, Debug)]
pub struct DenseDistanceGraph<W> {
    pub cluster: usize,
    pub border: Vec<VertexId>,
    /// `dist[i][j]`: distance inside the cluster from `border[i]` to
    /// `border[j]`.
    pub dist: Vec<Vec<Dist<W>>>,
    local: ClusterGraph<W>,
    /// Per border vertex: shortest-path tree as the local dart entering each
    /// local vertex (`usize::MAX` at the root / unreachable).
    trees: Vec<Vec<DartId>>,
}

impl<W: Scalar> DenseDistanceGraph<W> {
    pub fn len(&self) -> usize {
        self.border.len()
    }

    pub fn is_empty(&self) -> bool {
        self.border.is_empty()
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.border.iter().position(|&b| b == v)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.local.edges
    }

    /// A shortest in-cluster path from `border[i]` to `border[j]` as darts
    /// of the whole graph; `None` if unreachable.
    pub fn path(&self, i: usize, j: usize) -> Option<Vec<DartId>> {
        if !self.dist[i][j].is_finite() {
            return None;
        }
        let g = &self.local.graph;
        let tree = &self.trees[i];
        let root = self.local.local[&self.border[i]];
        let mut v = self.local.local[&self.border[j]];
        let mut darts = Vec::new();
        while v != root {
            let d = tree[v];
            darts.push(self.local.global_dart(d));
            v = g.origin(d);
        }
        darts.reverse();
        Some(darts)
    }
}

/// DDG of a partition cluster, by Dijkstra from every border vertex.
pub fn compute_ddg<W: Scalar>(h: &EmbeddedGraph<W>, cluster: &Cluster) -> DenseDistanceGraph<W> {
    compute_ddg_on(h, cluster.id, &cluster.edges, &cluster.border_vertices)
}

/// DDG of an arbitrary edge set with the given terminals (each must be an
/// endpoint of some edge in the set).
pub fn compute_ddg_on<W: Scalar>(
    h: &EmbeddedGraph<W>,
    cluster: usize,
    edges: &[EdgeId],
    border: &[VertexId],
) -> DenseDistanceGraph<W> {
    let local = ClusterGraph::new(h, edges);
    let g = &local.graph;
    let mut dist = Vec::with_capacity(border.len());
    let mut trees = Vec::with_capacity(border.len());
    for &b in border {
        let (d, tree) = local_dijkstra(g, local.local[&b]);
        dist.push(border.iter().map(|x| d[local.local[x]]).collect());
        trees.push(tree);
    }
    DenseDistanceGraph { cluster, border: border.to_vec(), dist, local, trees }
}

fn local_dijkstra<W: Scalar>(g: &EmbeddedGraph<W>, src: VertexId) -> (Vec<Dist<W>>, Vec<DartId>) {
    let n = g.vertex_count();
    let mut dist = vec![Dist::Inf; n];
    let mut tree = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[src] = Dist::zero();
    heap.push(MinKey(W::zero(), src));
    while let Some(MinKey(d, v)) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for a in g.darts_around(v) {
            let w = g.head(a);
            let nd = d + g.length(a);
            if !done[w] && Dist::Finite(nd) < dist[w] {
                dist[w] = Dist::Finite(nd);
                tree[w] = a;
                heap.push(MinKey(nd, w));
            }
        }
    }
    (dist, tree)
}

/// A DDG placed into a hybrid graph: border index `i` becomes hybrid vertex
/// `vertex[i]`, or is left out when `None`.
#[derive(Clone, Debug)]
pub struct DdgView<'a, W> {
    pub ddg: &'a DenseDistanceGraph<W>,
    pub vertex: Vec<Option<usize>>,
}

/// Vertices `0..n`, explicit undirected edges and DDG views.
#[derive(Clone, Debug)]
pub struct HybridGraph<'a, W> {
    pub n: usize,
    pub ddgs: Vec<DdgView<'a, W>>,
    pub explicit: Vec<(usize, usize, W)>,
}

/// How a vertex was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Source,
    /// Explicit edge index and the vertex it came from.
    Edge(usize, usize),
    /// View index and the border indices `(from, to)` inside that view.
    Ddg(usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct HybridTree<W> {
    pub dist: Vec<Dist<W>>,
    pub step: Vec<Option<Step>>,
}

impl<W: Scalar> HybridTree<W> {
    /// Steps from a source to `v`, in order.
    pub fn steps_to(&self, h: &HybridGraph<'_, W>, v: usize) -> Vec<Step> {
        let mut out = Vec::new();
        let mut x = v;
        while let Some(s) = self.step[x] {
            match s {
                Step::Source => break,
                Step::Edge(_, from) => x = from,
                Step::Ddg(view, from, _) => x = h.ddgs[view].vertex[from].expect("view vertex"),
            }
            out.push(s);
        }
        out.reverse();
        out
    }
}

impl<'a, W: Scalar> HybridGraph<'a, W> {
    pub fn new(n: usize) -> Self {
        HybridGraph { n, ddgs: Vec::new(), explicit: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, len: W) {
        self.explicit.push((u, v, len));
    }

    /// Adds a DDG whose border vertex ids are used as hybrid vertex ids.
    pub fn add_ddg(&mut self, ddg: &'a DenseDistanceGraph<W>) {
        let vertex = ddg.border.iter().map(|&b| Some(b)).collect();
        self.ddgs.push(DdgView { ddg, vertex });
    }

    pub fn add_view(&mut self, view: DdgView<'a, W>) {
        self.ddgs.push(view);
    }

    /// Every vertex of the explicit clique expansion, as plain edges (used by
    /// tests and oracles).
    pub fn expanded_edges(&self) -> Vec<(usize, usize, W)> {
        let mut out = self.explicit.clone();
        for view in &self.ddgs {
            for (i, a) in view.vertex.iter().enumerate() {
                for (j, b) in view.vertex.iter().enumerate() {
                    if let (Some(a), Some(b), Dist::Finite(w)) = (a, b, view.ddg.dist[i][j]) {
                        if i < j {
                            out.push((*a, *b, w));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Entry {
    Vertex(usize),
    View(usize),
}

/// Multi-source shortest distances in a hybrid graph.
pub fn hybrid_dijkstra<W: Scalar>(h: &HybridGraph<'_, W>, sources: &[(usize, W)]) -> Result<Vec<Dist<W>>, CutError> {
    Ok(hybrid_search(h, sources, None)?.dist)
}

/// Hybrid Dijkstra with predecessor steps, stopping early once `target` is
/// settled.
///
/// One global heap holds explicit-edge candidates and, for each DDG view,
/// only its current best unsettled border vertex. Settling a vertex relaxes
/// its explicit edges and its full row in every view containing it.
pub fn hybrid_search<W: Scalar>(
    h: &HybridGraph<'_, W>,
    sources: &[(usize, W)],
    target: Option<usize>,
) -> Result<HybridTree<W>, CutError> {
    let n = h.n;
    for &(s, w) in sources {
        if s >= n {
            return Err(CutError::UnknownVertex(s));
        }
        if w.is_negative() {
            return Err(CutError::UnknownVertex(s));
        }
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v, _)) in h.explicit.iter().enumerate() {
        adj[u].push((v, i));
        if u != v {
            adj[v].push((u, i));
        }
    }
    let mut views_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (vi, view) in h.ddgs.iter().enumerate() {
        for (i, x) in view.vertex.iter().enumerate() {
            if let Some(x) = x {
                views_of[*x].push((vi, i));
            }
        }
    }
    let mut dist = vec![Dist::Inf; n];
    let mut step = vec![None; n];
    let mut done = vec![false; n];
    let mut heap: BinaryHeap<MinKey<W, Entry>> = BinaryHeap::new();
    let mut local: Vec<BinaryHeap<MinKey<W, usize>>> = vec![BinaryHeap::new(); h.ddgs.len()];
    let mut pending: Vec<Option<W>> = vec![None; h.ddgs.len()];

    for &(s, w) in sources {
        if Dist::Finite(w) < dist[s] {
            dist[s] = Dist::Finite(w);
            step[s] = Some(Step::Source);
            heap.push(MinKey(w, Entry::Vertex(s)));
        }
    }

    // Drops settled or outdated entries from the top of a view heap.
    let clean = |lh: &mut BinaryHeap<MinKey<W, usize>>, view: &DdgView<'_, W>, dist: &[Dist<W>], done: &[bool]| {
        while let Some(MinKey(k, i)) = lh.peek().copied() {
            let x = view.vertex[i].expect("view vertex");
            if done[x] || dist[x] != Dist::Finite(k) {
                lh.pop();
            } else {
                return Some(k);
            }
        }
        None
    };

    while let Some(MinKey(key, entry)) = heap.pop() {
        let v = match entry {
            Entry::Vertex(v) => {
                if done[v] || dist[v] != Dist::Finite(key) {
                    continue;
                }
                v
            }
            Entry::View(vi) => {
                if pending[vi] != Some(key) {
                    continue;
                }
                pending[vi] = None;
                let view = &h.ddgs[vi];
                let top = clean(&mut local[vi], view, &dist, &done);
                let settle = match top {
                    Some(k) if k.total_cmp(&key) == std::cmp::Ordering::Equal => {
                        let MinKey(_, i) = local[vi].pop().expect("top");
                        Some(view.vertex[i].expect("view vertex"))
                    }
                    _ => None,
                };
                if let Some(k) = clean(&mut local[vi], view, &dist, &done) {
                    pending[vi] = Some(k);
                    heap.push(MinKey(k, Entry::View(vi)));
                }
                match settle {
                    Some(x) if !done[x] => x,
                    _ => continue,
                }
            }
        };
        done[v] = true;
        if Some(v) == target {
            break;
        }
        let dv = key;
        for &(w, ei) in &adj[v] {
            let nd = dv + h.explicit[ei].2;
            if !done[w] && Dist::Finite(nd) < dist[w] {
                dist[w] = Dist::Finite(nd);
                step[w] = Some(Step::Edge(ei, v));
                heap.push(MinKey(nd, Entry::Vertex(w)));
            }
        }
        for &(vi, i) in &views_of[v] {
            let view = &h.ddgs[vi];
            let row = &view.ddg.dist[i];
            let mut improved: Option<W> = None;
            for (j, x) in view.vertex.iter().enumerate() {
                let (Some(x), Dist::Finite(len)) = (x, row[j]) else { continue };
                let nd = dv + len;
                if !done[*x] && Dist::Finite(nd) < dist[*x] {
                    dist[*x] = Dist::Finite(nd);
                    step[*x] = Some(Step::Ddg(vi, i, j));
                    local[vi].push(MinKey(nd, j));
                    if improved.is_none_or(|b| nd < b) {
                        improved = Some(nd);
                    }
                }
            }
            if let Some(b) = improved {
                if pending[vi].is_none_or(|p| b < p) {
                    pending[vi] = Some(b);
                    heap.push(MinKey(b, Entry::View(vi)));
                }
            }
        }
    }
    Ok(HybridTree { dist, step })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::build_r_partition;

    fn one_cluster(edges: &[(usize, usize, i64)], rot: &[Vec<usize>], border: &[usize]) -> DenseDistanceGraph<i64> {
        let n = rot.len();
        let g = EmbeddedGraph::build(n, edges, rot).unwrap();
        let all: Vec<usize> = (0..g.edge_count()).collect();
        compute_ddg_on(&g, 0, &all, border)
    }

    #[test]
    fn single_edge_matrix() {
        let d = one_cluster(&[(0, 1, 3)], &[vec![0], vec![0]], &[0, 1]);
        assert_eq!(d.dist, vec![vec![Dist::Finite(0), Dist::Finite(3)], vec![Dist::Finite(3), Dist::Finite(0)]]);
    }

    #[test]
    fn path_cluster_distance() {
        let d = one_cluster(&[(0, 1, 1), (1, 2, 2)], &[vec![0], vec![0, 1], vec![1]], &[0, 2]);
        assert_eq!(d.dist[0][1], Dist::Finite(3));
        assert_eq!(d.path(0, 1).unwrap().len(), 2);
    }

    #[test]
    fn single_ddg_row() {
        let d = one_cluster(&[(0, 1, 1), (1, 2, 2), (2, 0, 7)], &[vec![0, 2], vec![1, 0], vec![2, 1]], &[0, 1, 2]);
        let mut h = HybridGraph::new(3);
        h.add_ddg(&d);
        let r = hybrid_dijkstra(&h, &[(2, 0)]).unwrap();
        assert_eq!(r, d.dist[2]);
        assert!(hybrid_dijkstra(&h, &[(5, 0)]).is_err());
    }

    #[test]
    fn partition_ddgs_are_metric() {
        let g = crate::generate::random_maximal_planar(120, crate::generate::CapDist::Uniform(1, 9), 4);
        let dual = g.dual();
        let p = build_r_partition(&dual.graph, 32).unwrap();
        for c in &p.clusters {
            let d = compute_ddg(&dual.graph, c);
            for i in 0..d.len() {
                assert_eq!(d.dist[i][i], Dist::zero());
                for j in 0..d.len() {
                    assert_eq!(d.dist[i][j], d.dist[j][i]);
                    for k in 0..d.len() {
                        assert!(d.dist[i][k] <= d.dist[i][j].add_dist(d.dist[j][k]));
                    }
                }
            }
        }
    }
}
