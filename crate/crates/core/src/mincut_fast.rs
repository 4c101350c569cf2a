//! Min cut through an r-partition: the stitched graph (explicit terminal
//! clusters, DDGs elsewhere), the path choice, the divide and conquer with
//! DDG-accelerated searches, contracted-size accounting and the extra data
//! needed for clusters with several holes.

use std::collections::VecDeque;

use crate::cut_open::{
    divide_and_conquer, find_connecting_path, reif_mincut, source_side_faces, cut_along_path,
    terminal_path, CutCycle, DualPath, PathSides, ReifResult,
};
use crate::dense_distance::{compute_ddg, compute_ddg_on, hybrid_dijkstra, hybrid_search, DdgView, DenseDistanceGraph, HybridGraph, Step};
use crate::embedding::{DartId, DualGraph, EdgeId, EmbeddedGraph, VertexId};
use crate::error::CutError;
use crate::partition::{build_r_partition, ClusterGraph, RPartition};
use crate::scalar::{Dist, Scalar};

/// Where an edge of the stitched graph comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Explicit(EdgeId),
    /// Entry `(i, j)` of the DDG of a cluster.
    Ddg { cluster: usize, i: usize, j: usize },
    /// Infinite edge between consecutive border vertices of a hole.
    Skeleton { cluster: usize, hole: usize },
}

/// `H` with every non-explicit cluster replaced by its DDG.
#[derive(Clone, Debug)]
pub struct StitchedGraph<'a, W> {
    pub h: &'a EmbeddedGraph<W>,
    pub partition: &'a RPartition,
    pub ddgs: &'a [DenseDistanceGraph<W>],
    pub f_s: VertexId,
    pub f_t: VertexId,
    /// Faces of `h` holding the terminals.
    pub face_s: usize,
    pub face_t: usize,
    pub p_s: usize,
    pub p_t: usize,
    pub explicit: Vec<bool>,
    /// Clusters traversed by the chosen path.
    pub pi_clusters: Vec<usize>,
}

impl<'a, W: Scalar> StitchedGraph<'a, W> {
    pub fn explicit_edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = (0..self.partition.clusters.len())
            .filter(|&c| self.explicit[c])
            .flat_map(|c| self.partition.clusters[c].edges.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn make_explicit(&mut self, cluster: usize) {
        self.explicit[cluster] = true;
    }

    /// Vertices present in the stitched graph.
    pub fn vertex_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.h.vertex_count()];
        for c in &self.partition.clusters {
            let list = if self.explicit[c.id] { &c.vertices } else { &c.border_vertices };
            for &v in list {
                m[v] = true;
            }
        }
        m
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_mask().iter().filter(|&&x| x).count()
    }

    /// All edges with lengths (`None` for the infinite skeleton edges).
    pub fn edges(&self) -> Vec<(VertexId, VertexId, Option<W>, Provenance)> {
        let mut out = Vec::new();
        for e in self.explicit_edges() {
            let (a, b) = self.h.endpoints(e);
            out.push((a, b, Some(self.h.length(2 * e)), Provenance::Explicit(e)));
        }
        for c in &self.partition.clusters {
            if self.explicit[c.id] {
                continue;
            }
            let d = &self.ddgs[c.id];
            for i in 0..d.len() {
                for j in i + 1..d.len() {
                    if let Dist::Finite(w) = d.dist[i][j] {
                        out.push((d.border[i], d.border[j], Some(w), Provenance::Ddg { cluster: c.id, i, j }));
                    }
                }
            }
        }
        for c in &self.partition.clusters {
            for (hi, hole) in c.holes.iter().enumerate() {
                let l = hole.border.len();
                for j in 0..l {
                    if l > 1 || !hole.border.is_empty() {
                        let (a, b) = (hole.border[j], hole.border[(j + 1) % l]);
                        out.push((a, b, None, Provenance::Skeleton { cluster: c.id, hole: hi }));
                    }
                }
            }
        }
        out
    }

    /// Explicit edges plus a DDG view per non-explicit cluster, on the
    /// vertex ids of `h`.
    pub fn hybrid(&self) -> HybridGraph<'a, W> {
        let mut hy = HybridGraph::new(self.h.vertex_count());
        for e in self.explicit_edges() {
            let (a, b) = self.h.endpoints(e);
            hy.add_edge(a, b, self.h.length(2 * e));
        }
        for c in &self.partition.clusters {
            if !self.explicit[c.id] {
                hy.add_ddg(&self.ddgs[c.id]);
            }
        }
        hy
    }

    /// Shortest distances from `v` inside the stitched graph.
    pub fn distances_from(&self, v: VertexId) -> Result<Vec<Dist<W>>, CutError> {
        hybrid_dijkstra(&self.hybrid(), &[(v, W::zero())])
    }
}

/// Stitched graph with the clusters of `f_s` and `f_t` explicit.
pub fn build_gst<'a, W: Scalar>(
    h: &'a EmbeddedGraph<W>,
    p: &'a RPartition,
    ddgs: &'a [DenseDistanceGraph<W>],
    f_s: VertexId,
    f_t: VertexId,
    terminal_faces: (usize, usize),
) -> Result<StitchedGraph<'a, W>, CutError> {
    let find = |f: VertexId| -> Result<usize, CutError> {
        if f >= h.vertex_count() {
            return Err(CutError::FaceNotInCluster(f));
        }
        p.clusters_of_vertex(h, f).into_iter().min().ok_or(CutError::FaceNotInCluster(f))
    };
    let p_s = find(f_s)?;
    let p_t = find(f_t)?;
    let mut explicit = vec![false; p.clusters.len()];
    explicit[p_s] = true;
    explicit[p_t] = true;
    Ok(StitchedGraph {
        h,
        partition: p,
        ddgs,
        f_s,
        f_t,
        face_s: terminal_faces.0,
        face_t: terminal_faces.1,
        p_s,
        p_t,
        explicit,
        pi_clusters: Vec::new(),
    })
}

/// BFS path from `f_s` to `f_t`; every cluster it touches and every cluster
/// with several holes becomes explicit, so DDG paths never meet the path.
pub fn choose_pi<W: Scalar>(gst: &mut StitchedGraph<'_, W>) -> Result<DualPath, CutError> {
    let h = gst.h;
    let faces = h.faces();
    let slot = |f: VertexId, face: usize| h.darts_around(f).filter(|&d| faces.face_of[d] == face).min();
    let s_slot = slot(gst.f_s, gst.face_s).ok_or(CutError::NotOnPath(gst.f_s))?;
    let t_slot = slot(gst.f_t, gst.face_t).ok_or(CutError::NotOnPath(gst.f_t))?;
    let n = h.vertex_count();
    let mut pred = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[gst.f_s] = true;
    let mut queue = VecDeque::from([gst.f_s]);
    while let Some(v) = queue.pop_front() {
        if v == gst.f_t {
            break;
        }
        let mut darts: Vec<DartId> = h.darts_around(v).collect();
        darts.sort_unstable();
        for d in darts {
            let w = h.head(d);
            if !seen[w] {
                seen[w] = true;
                pred[w] = d;
                queue.push_back(w);
            }
        }
    }
    if !seen[gst.f_t] {
        return Err(CutError::NoPath);
    }
    let mut darts = Vec::new();
    let mut v = gst.f_t;
    while v != gst.f_s {
        darts.push(pred[v]);
        v = h.origin(pred[v]);
    }
    darts.reverse();
    let mut fs = vec![gst.f_s];
    fs.extend(darts.iter().map(|&d| h.head(d)));
    let pi = DualPath { faces: fs, darts, s_slot, t_slot };
    let mut touched = Vec::new();
    for &f in &pi.faces {
        touched.extend(gst.partition.clusters_of_vertex(h, f));
    }
    touched.sort_unstable();
    touched.dedup();
    for &c in &touched {
        gst.make_explicit(c);
    }
    for c in &gst.partition.clusters {
        if c.holes.len() > 1 {
            gst.explicit[c.id] = true;
        }
    }
    gst.pi_clusters = touched;
    Ok(pi)
}

/// Contracted size of a part: vertices of degree at least three once each
/// DDG is a star through a center (centers included), plus path vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ContractedView {
    pub vertices: usize,
    pub centers: usize,
}

fn contracted_view<W: Scalar>(
    gst: &StitchedGraph<'_, W>,
    explicit_edges: &[EdgeId],
    on_pi: &[bool],
    vm: &[bool],
    em: &[bool],
) -> ContractedView {
    let h = gst.h;
    let mut deg = vec![0usize; h.vertex_count()];
    for &e in explicit_edges {
        let (a, b) = h.endpoints(e);
        if em[e] && vm[a] && vm[b] {
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    let mut centers = 0;
    for c in &gst.partition.clusters {
        if gst.explicit[c.id] {
            continue;
        }
        let inside: Vec<VertexId> = c.border_vertices.iter().copied().filter(|&b| vm[b]).collect();
        if inside.len() >= 3 {
            centers += 1;
        }
        for b in inside {
            deg[b] += 1;
        }
    }
    let vertices = (0..h.vertex_count()).filter(|&v| vm[v] && (deg[v] >= 3 || on_pi[v])).count() + centers;
    ContractedView { vertices, centers }
}

/// Divide and conquer over `pi` in the stitched graph. Each part search runs
/// the hybrid Dijkstra on the two-sheeted lift; DDG steps are expanded into
/// cluster paths so that the split uses the exact cycle.
pub fn fast_mincut<W: Scalar>(gst: &StitchedGraph<'_, W>, pi: &DualPath) -> Result<ReifResult<W>, CutError> {
    let h = gst.h;
    let sides = PathSides::new(h, pi)?;
    let explicit_edges = gst.explicit_edges();
    let implicit: Vec<&DenseDistanceGraph<W>> = gst
        .partition
        .clusters
        .iter()
        .filter(|c| !gst.explicit[c.id])
        .map(|c| &gst.ddgs[c.id])
        .collect();
    let mut on_pi = vec![false; h.vertex_count()];
    for &f in &pi.faces {
        on_pi[f] = true;
    }
    let idx = &sides.index_of;
    let search = |i: usize, vm: &[bool], em: &[bool]| -> Result<Option<CutCycle<W>>, CutError> {
        let f = pi.faces[i - 1];
        if !vm[f] {
            return Ok(None);
        }
        let mut hy = HybridGraph::new(2 * h.vertex_count());
        let mut edge_id = Vec::new();
        for &e in &explicit_edges {
            let (a, b) = h.endpoints(e);
            if !em[e] || !vm[a] || !vm[b] || idx[a] > i || idx[b] > i {
                continue;
            }
            let fl = sides.flip(2 * e) as usize;
            for c in 0..2 {
                hy.add_edge(2 * a + c, 2 * b + (c ^ fl), h.length(2 * e));
                edge_id.push(e);
            }
        }
        for ddg in &implicit {
            for c in 0..2 {
                let vertex: Vec<Option<usize>> = ddg.border.iter().map(|&b| vm[b].then_some(2 * b + c)).collect();
                if vertex.iter().any(|x| x.is_some()) {
                    hy.add_view(DdgView { ddg, vertex });
                }
            }
        }
        let target = 2 * f + 1;
        let tree = hybrid_search(&hy, &[(2 * f, W::zero())], Some(target))?;
        let Dist::Finite(cost) = tree.dist[target] else {
            return Ok(None);
        };
        let mut darts = Vec::new();
        for step in tree.steps_to(&hy, target) {
            match step {
                Step::Source => {}
                Step::Edge(k, from) => {
                    let e = edge_id[k];
                    darts.push(if h.origin(2 * e) == from / 2 { 2 * e } else { 2 * e + 1 });
                }
                Step::Ddg(view, a, b) => {
                    darts.extend(hy.ddgs[view].ddg.path(a, b).ok_or(CutError::BadCycle)?);
                }
            }
        }
        Ok(Some(CutCycle { darts, cost, anchor: i }))
    };
    let measure = |vm: &[bool], em: &[bool]| contracted_view(gst, &explicit_edges, &on_pi, vm, em).vertices;
    divide_and_conquer(h, pi, search, measure)
}

/// Per hole pair of a cluster with several holes.
#[derive(Clone, Debug)]
pub struct HolePair<W> {
    pub holes: (usize, usize),
    /// First border vertex of each of the two holes.
    pub anchors: (VertexId, VertexId),
    /// Canonical walk from the first anchor around every hole to the second
    /// anchor (darts of `H`).
    pub walk: Vec<DartId>,
    /// DDG of the cluster cut open along the walk; `None` when the walk
    /// cannot be made non-crossing.
    pub cut_ddg: Option<DenseDistanceGraph<W>>,
    /// Minimum cycle of the cluster separating the two holes.
    pub value: Dist<W>,
    pub cycle: Option<CutCycle<W>>,
}

impl<W: Scalar> HolePair<W> {
    pub fn walk_vertices(&self, h: &EmbeddedGraph<W>) -> Vec<VertexId> {
        let mut out = vec![self.anchors.0];
        out.extend(self.walk.iter().map(|&d| h.head(d)));
        out
    }
}

#[derive(Clone, Debug)]
pub struct HolePairData<W> {
    pub cluster: usize,
    pub pairs: Vec<HolePair<W>>,
}

fn local_bfs<W: Scalar>(g: &EmbeddedGraph<W>, from: VertexId, to: VertexId) -> Option<Vec<DartId>> {
    let mut pred = vec![usize::MAX; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for d in g.darts_around(v) {
            let w = g.head(d);
            if !seen[w] {
                seen[w] = true;
                pred[w] = d;
                queue.push_back(w);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut out = Vec::new();
    let mut v = to;
    while v != from {
        out.push(pred[v]);
        v = g.origin(pred[v]);
    }
    out.reverse();
    Some(out)
}

/// Hole-pair data for every cluster with at least two holes.
pub fn precompute_hole_pairs<W: Scalar>(h: &EmbeddedGraph<W>, p: &RPartition) -> Vec<HolePairData<W>> {
    p.clusters.iter().filter_map(|c| hole_pairs_of(h, c)).collect()
}

/// Hole-pair data of one cluster; `None` unless it has at least two holes.
pub fn hole_pairs_of<W: Scalar>(h: &EmbeddedGraph<W>, c: &crate::partition::Cluster) -> Option<HolePairData<W>> {
    if c.holes.len() < 2 {
        return None;
    }
    let local = ClusterGraph::new(h, &c.edges);
    let g = &local.graph;
    let lf = g.faces();
    let hole_face: Vec<usize> = c
        .holes
        .iter()
        .map(|hole| lf.face_of[local.local_dart(hole.darts[0]).expect("hole dart in cluster")])
        .collect();
    let anchor = |k: usize| c.holes[k].border.first().copied().unwrap_or_else(|| h.origin(c.holes[k].darts[0]));
    let mut pairs = Vec::new();
    for a in 0..c.holes.len() {
        for b in a + 1..c.holes.len() {
            let (value, cycle) = match find_connecting_path(g, &lf, hole_face[a], hole_face[b])
                .and_then(|lp| reif_mincut(g, &lp))
            {
                Ok((v, cyc)) => (
                    v,
                    cyc.map(|cy| CutCycle {
                        darts: cy.darts.iter().map(|&d| local.global_dart(d)).collect(),
                        cost: cy.cost,
                        anchor: cy.anchor,
                    }),
                ),
                // holes in different components are separated for free
                Err(CutError::NoPath) => (Dist::zero(), None),
                Err(_) => (Dist::Inf, None),
            };
            let order: Vec<usize> =
                std::iter::once(a).chain((0..c.holes.len()).filter(|&x| x != a && x != b)).chain([b]).collect();
            let mut walk_local: Vec<DartId> = Vec::new();
            let mut at = local.local[&anchor(a)];
            let mut slots = (usize::MAX, usize::MAX);
            for &k in &order {
                let target = local.local[&anchor(k)];
                if let Some(seg) = local_bfs(g, at, target) {
                    walk_local.extend(seg);
                }
                // once around the hole, starting at its anchor
                let ld: Vec<DartId> = c.holes[k].darts.iter().map(|&d| local.local_dart(d).unwrap()).collect();
                let start = ld.iter().position(|&d| g.origin(d) == target).unwrap_or(0);
                if k == a {
                    slots.0 = ld[start];
                }
                if k == b {
                    slots.1 = ld[start];
                }
                walk_local.extend((0..ld.len()).map(|j| ld[(start + j) % ld.len()]));
                at = target;
            }
            let cut_ddg = hole_walk_ddg(c, &local, &walk_local, slots);
            pairs.push(HolePair {
                holes: (a, b),
                anchors: (anchor(a), anchor(b)),
                walk: walk_local.iter().map(|&d| local.global_dart(d)).collect(),
                cut_ddg,
                value,
                cycle,
            });
        }
    }
    Some(HolePairData { cluster: c.id, pairs })
}

fn hole_walk_ddg<W: Scalar>(
    c: &crate::partition::Cluster,
    local: &ClusterGraph<W>,
    walk: &[DartId],
    (s_slot, t_slot): (DartId, DartId),
) -> Option<DenseDistanceGraph<W>> {
    let g = &local.graph;
    let first = g.origin(s_slot);
    // drop every closed sub-walk so the path is simple
    let mut darts: Vec<DartId> = Vec::new();
    let mut pos = std::collections::HashMap::from([(first, 0usize)]);
    for &d in walk {
        let w = g.head(d);
        if let Some(&p) = pos.get(&w) {
            for x in darts.drain(p..) {
                pos.remove(&g.head(x));
            }
            pos.insert(w, p);
        } else {
            darts.push(d);
            pos.insert(w, darts.len());
        }
    }
    let mut faces = vec![first];
    faces.extend(darts.iter().map(|&d| g.head(d)));
    let lp = DualPath { faces, darts, s_slot, t_slot };
    let cg = cut_along_path(g, &lp).ok()?;
    let is_border = |v: VertexId| c.border_vertices.binary_search(&local.vertices[v]).is_ok();
    let border: Vec<VertexId> = (0..cg.graph.vertex_count()).filter(|&v| is_border(cg.orig_vertex(v).0)).collect();
    let all: Vec<EdgeId> = (0..cg.graph.edge_count()).collect();
    Some(compute_ddg_on(&cg.graph, c.id, &all, &border))
}

/// Minimum of the fast search and every precomputed hole-pair cycle of a
/// traversed cluster that separates the terminals.
pub fn general_mincut<W: Scalar>(
    gst: &StitchedGraph<'_, W>,
    pi: &DualPath,
    hole_data: &[HolePairData<W>],
) -> Result<(Dist<W>, Option<CutCycle<W>>), CutError> {
    let res = fast_mincut(gst, pi)?;
    let (mut value, mut best) = (res.value, res.best);
    let faces = gst.h.faces();
    for hd in hole_data.iter().filter(|hd| gst.pi_clusters.contains(&hd.cluster)) {
        for pair in &hd.pairs {
            let Some(cyc) = &pair.cycle else { continue };
            if Dist::Finite(cyc.cost) >= value {
                continue;
            }
            let side = source_side_faces(gst.h, &faces, &cyc.odd_edges(), gst.face_s);
            if !side[gst.face_t] {
                value = Dist::Finite(cyc.cost);
                best = Some(cyc.clone());
            }
        }
    }
    Ok((value, best))
}

/// Search strategy for the primal entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Fast,
    General,
}

/// Result of a primal min-cut computation.
#[derive(Clone, Debug)]
pub struct MinCutOutcome<W> {
    pub value: W,
    /// Cut edges of the input graph.
    pub cut: Vec<EdgeId>,
    pub r: usize,
    pub path_len: usize,
    pub level_sizes: Vec<usize>,
    pub dual_vertices: usize,
}

/// `max(16, ceil(ln(n)^8))`, capped at `n`.
pub fn default_r(n: usize) -> usize {
    let l = (n.max(2) as f64).ln().powi(8).ceil();
    let r = if l > n as f64 { n } else { l as usize };
    r.max(16)
}

/// s-t min cut of a primal graph through an r-partition of its triangulated
/// dual.
pub fn primal_mincut<W: Scalar>(
    g: &EmbeddedGraph<W>,
    s: VertexId,
    t: VertexId,
    r: usize,
    mode: Mode,
) -> Result<MinCutOutcome<W>, CutError> {
    let tri = g.triangulate();
    let dual = tri.dual();
    let h = &dual.graph;
    let r = r.max(16).max(h.max_degree());
    let p = build_r_partition(h, r)?;
    let mut out = dual_mincut(&dual, &p, s, t, mode)?;
    out.cut.retain(|&e| e < g.edge_count());
    Ok(out)
}

/// Min cut between primal vertices `s` and `t` given a partition of the
/// dual graph.
pub fn dual_mincut<W: Scalar>(
    dual: &DualGraph<W>,
    p: &RPartition,
    s: VertexId,
    t: VertexId,
    mode: Mode,
) -> Result<MinCutOutcome<W>, CutError> {
    let h = &dual.graph;
    let ddgs: Vec<DenseDistanceGraph<W>> = p.clusters.iter().map(|c| compute_ddg(h, c)).collect();
    let tp = terminal_path(dual, s, t)?;
    let (face_s, face_t) = (dual.vertex_face[s], dual.vertex_face[t]);
    let mut gst = build_gst(h, p, &ddgs, tp.faces[0], *tp.faces.last().unwrap(), (face_s, face_t))?;
    let pi = choose_pi(&mut gst)?;
    let (value, best, level_sizes) = match mode {
        Mode::Fast => {
            let res = fast_mincut(&gst, &pi)?;
            (res.value, res.best, res.level_sizes)
        }
        Mode::General => {
            let hd = precompute_hole_pairs(h, p);
            let (v, b) = general_mincut(&gst, &pi, &hd)?;
            (v, b, Vec::new())
        }
    };
    let value = value.finite().ok_or(CutError::NoPath)?;
    let cut = best.map(|c| c.odd_edges()).unwrap_or_default();
    Ok(MinCutOutcome { value, cut, r: p.r, path_len: pi.faces.len(), level_sizes, dual_vertices: h.vertex_count() })
}
