//! r-partitions: edge-disjoint clusters with few border vertices and few
//! holes, plus the skeleton graph over border vertices.
//!
//! Construction: BFS spanning tree, greedy connected subtrees of about
//! `sqrt(r)` vertices, contraction, recursive BFS bisection of the contracted
//! graph, expansion to edge clusters, then re-splitting of clusters that
//! break a bound and merging of small neighbours.

use std::collections::{HashMap, VecDeque};

use crate::embedding::{edge_of, DartId, EdgeId, EmbeddedGraph, VertexId};
use crate::error::PartitionError;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionConfig {
    /// Border bound factor: `|border| <= c_b * sqrt(r)`.
    pub c_b: f64,
    /// Cluster count factor: `clusters <= c_k * n / r`.
    pub c_k: f64,
    /// Maximum holes per cluster.
    pub h_max: usize,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        PartitionConfig { c_b: 6.0, c_k: 4.0, h_max: 6 }
    }
}

/// A face of the cluster's own embedding that is not a face of the whole
/// graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hole {
    /// Boundary walk (global dart ids, cluster darts only).
    pub darts: Vec<DartId>,
    /// Border vertices in boundary order, consecutive repeats removed.
    pub border: Vec<VertexId>,
}

#[derive(Clone, Debug, Default)]
pub struct Cluster {
    pub id: usize,
    pub edges: Vec<EdgeId>,
    /// Sorted.
    pub vertices: Vec<VertexId>,
    pub internal_vertices: Vec<VertexId>,
    pub border_vertices: Vec<VertexId>,
    pub holes: Vec<Hole>,
}

#[derive(Clone, Debug)]
pub struct RPartition {
    pub clusters: Vec<Cluster>,
    pub r: usize,
    pub cluster_of_edge: Vec<usize>,
    pub config: PartitionConfig,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartitionStats {
    pub cluster_count: usize,
    pub max_size: usize,
    pub max_border: usize,
    pub max_holes: usize,
    /// `max |border| / sqrt(r)`.
    pub border_ratio: f64,
    /// `clusters * r / n`.
    pub count_ratio: f64,
}

#[derive(Clone, Debug, Default)]
pub struct PartitionReport {
    pub violations: Vec<String>,
    pub stats: PartitionStats,
}

impl RPartition {
    /// Clusters containing vertex `v` (through an incident edge).
    pub fn clusters_of_vertex<W: Scalar>(&self, h: &EmbeddedGraph<W>, v: VertexId) -> Vec<usize> {
        let mut cs: Vec<usize> = h.darts_around(v).map(|d| self.cluster_of_edge[edge_of(d)]).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    pub fn is_holeless(&self) -> bool {
        self.clusters.iter().all(|c| c.holes.len() <= 1)
    }

    pub fn stats(&self, n: usize) -> PartitionStats {
        let sr = (self.r as f64).sqrt();
        let max_border = self.clusters.iter().map(|c| c.border_vertices.len()).max().unwrap_or(0);
        PartitionStats {
            cluster_count: self.clusters.len(),
            max_size: self.clusters.iter().map(|c| c.vertices.len()).max().unwrap_or(0),
            max_border,
            max_holes: self.clusters.iter().map(|c| c.holes.len()).max().unwrap_or(0),
            border_ratio: max_border as f64 / sr,
            count_ratio: self.clusters.len() as f64 * self.r as f64 / n.max(1) as f64,
        }
    }

    /// Text dump of the stats, one `key value` pair per line.
    pub fn stats_text(&self, n: usize) -> String {
        let s = self.stats(n);
        format!(
            "r {}\nclusters {}\nmax_size {}\nmax_border {}\nmax_holes {}\nborder_ratio {:.3}\ncount_ratio {:.3}\n",
            self.r, s.cluster_count, s.max_size, s.max_border, s.max_holes, s.border_ratio, s.count_ratio
        )
    }
}

/// A cluster's edges as a standalone embedded graph (rotations restricted
/// from the whole graph). Local edge `i` is global edge `edges[i]` with the
/// same dart parity.
#[derive(Clone, Debug)]
pub struct ClusterGraph<W> {
    pub graph: EmbeddedGraph<W>,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub local: HashMap<VertexId, usize>,
}

impl<W: Scalar> ClusterGraph<W> {
    pub fn new(h: &EmbeddedGraph<W>, edges: &[EdgeId]) -> Self {
        let mut local_edge = HashMap::with_capacity(edges.len());
        for (i, &e) in edges.iter().enumerate() {
            local_edge.insert(e, i);
        }
        let mut vertices: Vec<VertexId> = edges
            .iter()
            .flat_map(|&e| {
                let (a, b) = h.endpoints(e);
                [a, b]
            })
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let local: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rots: Vec<Vec<DartId>> = vertices
            .iter()
            .map(|&v| {
                h.darts_around(v)
                    .filter_map(|d| local_edge.get(&edge_of(d)).map(|&i| 2 * i + (d & 1)))
                    .collect()
            })
            .collect();
        let caps = edges.iter().map(|&e| h.capacity(e)).collect();
        let synth = edges.iter().map(|&e| h.is_synthetic(e)).collect();
        let graph = EmbeddedGraph::from_dart_rotations(&rots, caps, synth).expect("restricted rotation");
        ClusterGraph { graph, vertices, edges: edges.to_vec(), local }
    }

    pub fn global_dart(&self, d: DartId) -> DartId {
        2 * self.edges[d / 2] + (d & 1)
    }

    pub fn local_dart(&self, d: DartId) -> Option<DartId> {
        self.edges.iter().position(|&e| e == edge_of(d)).map(|i| 2 * i + (d & 1))
    }

    /// Faces of the cluster embedding that are not faces of `h`.
    pub fn holes(&self, h: &EmbeddedGraph<W>, is_border: impl Fn(VertexId) -> bool) -> Vec<Hole> {
        let faces = self.graph.faces();
        let mut holes = Vec::new();
        for f in &faces.faces {
            let original = f.iter().all(|&d| {
                self.global_dart(self.graph.next_on_face(d)) == h.next_on_face(self.global_dart(d))
            });
            if original {
                continue;
            }
            let darts: Vec<DartId> = f.iter().map(|&d| self.global_dart(d)).collect();
            let mut border: Vec<VertexId> = Vec::new();
            for &d in &darts {
                let v = h.origin(d);
                if is_border(v) && border.last() != Some(&v) {
                    border.push(v);
                }
            }
            while border.len() > 1 && border.first() == border.last() {
                border.pop();
            }
            holes.push(Hole { darts, border });
        }
        holes
    }
}

/// Builds an r-partition with the default constants.
pub fn build_r_partition<W: Scalar>(h: &EmbeddedGraph<W>, r: usize) -> Result<RPartition, PartitionError> {
    build_r_partition_with(h, r, PartitionConfig::default())
}

pub fn build_r_partition_with<W: Scalar>(
    h: &EmbeddedGraph<W>,
    r: usize,
    config: PartitionConfig,
) -> Result<RPartition, PartitionError> {
    if r < 16 {
        return Err(PartitionError::RTooSmall { r });
    }
    let n = h.vertex_count();
    let border_cap = (config.c_b * (r as f64).sqrt()).floor() as usize;
    if let Some(v) = (0..n).find(|&v| h.degree(v) > r) {
        return Err(PartitionError::DegreeTooLarge { vertex: v, degree: h.degree(v), r });
    }
    let active: Vec<VertexId> = (0..n).filter(|&v| h.degree(v) > 0).collect();
    if active.len() <= r {
        return Ok(finalize(h, vec![(0..h.edge_count()).collect()], r, config));
    }
    let z = ((r as f64).sqrt().ceil() as usize).max(2);
    let pieces = tree_pieces(h, z);
    let regions = bisect_contracted(h, &pieces, r / 2);
    // Expand: region of every vertex, then assign each edge to the region of
    // its endpoint with the smaller region id.
    let mut region_of = vec![usize::MAX; n];
    for (i, reg) in regions.iter().enumerate() {
        for &v in reg {
            region_of[v] = i;
        }
    }
    let mut edge_sets: Vec<Vec<EdgeId>> = vec![Vec::new(); regions.len()];
    for e in 0..h.edge_count() {
        let (a, b) = h.endpoints(e);
        edge_sets[region_of[a].min(region_of[b])].push(e);
    }
    edge_sets.retain(|s| !s.is_empty());
    let mut sets = Vec::new();
    for s in edge_sets {
        sets.extend(edge_components(h, &s));
    }
    let sets = repair(h, sets, r, border_cap, config.h_max);
    let sets = merge_small(h, sets, r, border_cap, config.h_max);
    Ok(finalize(h, sets, r, config))
}

/// Greedy bottom-up cut of a BFS forest into connected vertex groups of at
/// least `z` vertices where possible.
fn tree_pieces<W: Scalar>(h: &EmbeddedGraph<W>, z: usize) -> Vec<Vec<VertexId>> {
    let n = h.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] || h.degree(root) == 0 {
            continue;
        }
        seen[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for d in h.darts_around(v) {
                let w = h.head(d);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    q.push_back(w);
                }
            }
        }
    }
    // pending[v]: vertices hanging below v not yet assigned to a piece.
    let mut pending: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut pieces = Vec::new();
    for &v in order.iter().rev() {
        let mut group = std::mem::take(&mut pending[v]);
        group.push(v);
        if group.len() >= z || parent[v] == usize::MAX {
            pieces.push(group);
        } else {
            pending[parent[v]].extend(group);
        }
    }
    pieces
}

/// Recursive BFS bisection of the graph of pieces until each region has at
/// most `target` vertices (or is a single piece).
fn bisect_contracted<W: Scalar>(h: &EmbeddedGraph<W>, pieces: &[Vec<VertexId>], target: usize) -> Vec<Vec<VertexId>> {
    let n = h.vertex_count();
    let mut piece_of = vec![usize::MAX; n];
    for (i, p) in pieces.iter().enumerate() {
        for &v in p {
            piece_of[v] = i;
        }
    }
    let np = pieces.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); np];
    for e in 0..h.edge_count() {
        let (a, b) = h.endpoints(e);
        let (pa, pb) = (piece_of[a], piece_of[b]);
        if pa != pb {
            adj[pa].push(pb);
            adj[pb].push(pa);
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
        a.dedup();
    }
    let weight: Vec<usize> = pieces.iter().map(|p| p.len()).collect();
    let mut out = Vec::new();
    let mut in_region = vec![usize::MAX; np];
    let mut stamp = 0usize;
    let mut stack: Vec<Vec<usize>> = components(&adj, &(0..np).collect::<Vec<_>>(), &mut in_region, &mut stamp);
    while let Some(region) = stack.pop() {
        let w: usize = region.iter().map(|&p| weight[p]).sum();
        if w <= target || region.len() == 1 {
            out.push(region.iter().flat_map(|&p| pieces[p].iter().copied()).collect());
            continue;
        }
        stamp += 1;
        for &p in &region {
            in_region[p] = stamp;
        }
        let far = bfs_order(&adj, region[0], &in_region, stamp);
        let order = bfs_order(&adj, *far.last().unwrap(), &in_region, stamp);
        let mut acc = 0;
        let mut half = Vec::new();
        let mut rest = Vec::new();
        for &p in &order {
            if acc < w / 2 {
                acc += weight[p];
                half.push(p);
            } else {
                rest.push(p);
            }
        }
        stack.extend(components(&adj, &half, &mut in_region, &mut stamp));
        stack.extend(components(&adj, &rest, &mut in_region, &mut stamp));
    }
    out
}

fn bfs_order(adj: &[Vec<usize>], start: usize, mark: &[usize], stamp: usize) -> Vec<usize> {
    let mut seen = HashMap::new();
    seen.insert(start, ());
    let mut q = VecDeque::from([start]);
    let mut order = Vec::new();
    while let Some(p) = q.pop_front() {
        order.push(p);
        for &x in &adj[p] {
            if mark[x] == stamp && seen.insert(x, ()).is_none() {
                q.push_back(x);
            }
        }
    }
    order
}

fn components(adj: &[Vec<usize>], nodes: &[usize], mark: &mut [usize], stamp: &mut usize) -> Vec<Vec<usize>> {
    *stamp += 1;
    let live = *stamp;
    for &p in nodes {
        mark[p] = live;
    }
    *stamp += 1;
    let done = *stamp;
    let mut out = Vec::new();
    for &p in nodes {
        if mark[p] != live {
            continue;
        }
        mark[p] = done;
        let mut comp = vec![p];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &y in &adj[x] {
                if mark[y] == live {
                    mark[y] = done;
                    comp.push(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Splits an edge set into connected components.
fn edge_components<W: Scalar>(h: &EmbeddedGraph<W>, edges: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    let mut by_vertex: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    for &e in edges {
        let (a, b) = h.endpoints(e);
        by_vertex.entry(a).or_default().push(e);
        if b != a {
            by_vertex.entry(b).or_default().push(e);
        }
    }
    let mut done: HashMap<EdgeId, ()> = HashMap::new();
    let mut out = Vec::new();
    for &e in edges {
        if done.contains_key(&e) {
            continue;
        }
        done.insert(e, ());
        let mut comp = vec![e];
        let mut i = 0;
        while i < comp.len() {
            let (a, b) = h.endpoints(comp[i]);
            i += 1;
            for v in [a, b] {
                for &f in &by_vertex[&v] {
                    if done.insert(f, ()).is_none() {
                        comp.push(f);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

struct Measure {
    vertices: usize,
    border: usize,
    holes: usize,
}

fn owner_map(sets: &[Vec<EdgeId>], m: usize) -> Vec<usize> {
    let mut owner = vec![usize::MAX; m];
    for (i, s) in sets.iter().enumerate() {
        for &e in s {
            owner[e] = i;
        }
    }
    owner
}

fn measure<W: Scalar>(h: &EmbeddedGraph<W>, edges: &[EdgeId], owner: &[usize], me: usize) -> Measure {
    let cg = ClusterGraph::new(h, edges);
    let is_border = |v: VertexId| h.darts_around(v).any(|d| owner[edge_of(d)] != me);
    let border = cg.vertices.iter().filter(|&&v| is_border(v)).count();
    let holes = if edges.len() == h.edge_count() { 1 } else { cg.holes(h, is_border).len() };
    Measure { vertices: cg.vertices.len(), border, holes }
}

/// Splits an edge set in two by BFS over its vertices from a far vertex;
/// returns the connected pieces.
fn split_edges<W: Scalar>(h: &EmbeddedGraph<W>, edges: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    let cg = ClusterGraph::new(h, edges);
    let g = &cg.graph;
    let bfs = |start: usize| {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[start] = 0;
        let mut q = VecDeque::from([start]);
        let mut order = Vec::new();
        while let Some(v) = q.pop_front() {
            order.push(v);
            for d in g.darts_around(v) {
                let w = g.head(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        (order, dist)
    };
    let (o1, _) = bfs(0);
    let (order, _) = bfs(*o1.last().unwrap());
    let mut rank = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    // Edge goes to the side of its earlier endpoint; cut at the median so
    // both sides get about half the edges.
    let mut keyed: Vec<(usize, EdgeId)> = (0..g.edge_count())
        .map(|i| {
            let (a, b) = g.endpoints(i);
            (rank[a].min(rank[b]), cg.edges[i])
        })
        .collect();
    keyed.sort_unstable();
    let half = keyed.len() / 2;
    let a: Vec<EdgeId> = keyed[..half].iter().map(|x| x.1).collect();
    let b: Vec<EdgeId> = keyed[half..].iter().map(|x| x.1).collect();
    let mut out = edge_components(h, &a);
    out.extend(edge_components(h, &b));
    out
}

fn repair<W: Scalar>(
    h: &EmbeddedGraph<W>,
    mut sets: Vec<Vec<EdgeId>>,
    r: usize,
    border_cap: usize,
    h_max: usize,
) -> Vec<Vec<EdgeId>> {
    loop {
        let owner = owner_map(&sets, h.edge_count());
        let mut changed = false;
        let mut next = Vec::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            let m = measure(h, s, &owner, i);
            if s.len() > 1 && (m.vertices > r || m.border > border_cap || m.holes > h_max) {
                next.extend(split_edges(h, s));
                changed = true;
            } else {
                next.push(s.clone());
            }
        }
        sets = next;
        if !changed {
            return sets;
        }
    }
}

/// Greedily merges pairs of small neighbouring clusters while every bound
/// still holds.
fn merge_small<W: Scalar>(
    h: &EmbeddedGraph<W>,
    mut sets: Vec<Vec<EdgeId>>,
    r: usize,
    border_cap: usize,
    h_max: usize,
) -> Vec<Vec<EdgeId>> {
    loop {
        let owner = owner_map(&sets, h.edge_count());
        let sizes: Vec<usize> = sets.iter().map(|s| ClusterGraph::new(h, s).vertices.len()).collect();
        let mut order: Vec<usize> = (0..sets.len()).collect();
        order.sort_by_key(|&i| sizes[i]);
        let mut merged_into: Vec<Option<usize>> = vec![None; sets.len()];
        let mut used = vec![false; sets.len()];
        for &i in &order {
            if used[i] || sizes[i] > r / 2 {
                continue;
            }
            let mut nbrs: Vec<usize> = sets[i]
                .iter()
                .flat_map(|&e| {
                    let (a, b) = h.endpoints(e);
                    [a, b]
                })
                .flat_map(|v| h.darts_around(v).map(|d| owner[edge_of(d)]).collect::<Vec<_>>())
                .filter(|&j| j != i && !used[j] && sizes[j] <= r / 2)
                .collect();
            nbrs.sort_by_key(|&j| (sizes[j], j));
            nbrs.dedup();
            for j in nbrs {
                if sizes[i] + sizes[j] > r {
                    continue;
                }
                let mut union = sets[i].clone();
                union.extend(&sets[j]);
                let mut trial_owner = owner.clone();
                for &e in &sets[j] {
                    trial_owner[e] = i;
                }
                let m = measure(h, &union, &trial_owner, i);
                if m.vertices <= r && m.border <= border_cap && m.holes <= h_max {
                    used[i] = true;
                    used[j] = true;
                    merged_into[j] = Some(i);
                    break;
                }
            }
        }
        if merged_into.iter().all(|x| x.is_none()) {
            return sets;
        }
        let mut next: Vec<Vec<EdgeId>> = Vec::new();
        let mut extra: HashMap<usize, Vec<EdgeId>> = HashMap::new();
        for (j, m) in merged_into.iter().enumerate() {
            if let Some(i) = m {
                extra.entry(*i).or_default().extend(sets[j].iter().copied());
            }
        }
        for (i, s) in sets.iter().enumerate() {
            if merged_into[i].is_some() {
                continue;
            }
            let mut s = s.clone();
            if let Some(x) = extra.remove(&i) {
                s.extend(x);
                s.sort_unstable();
            }
            next.push(s);
        }
        sets = next;
    }
}

fn finalize<W: Scalar>(h: &EmbeddedGraph<W>, sets: Vec<Vec<EdgeId>>, r: usize, config: PartitionConfig) -> RPartition {
    let owner = owner_map(&sets, h.edge_count());
    let whole = sets.len() == 1 && sets[0].len() == h.edge_count();
    let clusters = sets
        .into_iter()
        .enumerate()
        .map(|(id, edges)| make_cluster(h, id, edges, &owner, whole))
        .collect();
    RPartition { clusters, r, cluster_of_edge: owner, config }
}

fn make_cluster<W: Scalar>(h: &EmbeddedGraph<W>, id: usize, mut edges: Vec<EdgeId>, owner: &[usize], whole: bool) -> Cluster {
    edges.sort_unstable();
    let cg = ClusterGraph::new(h, &edges);
    let is_border = |v: VertexId| h.darts_around(v).any(|d| owner[edge_of(d)] != id);
    let (border_vertices, internal_vertices): (Vec<VertexId>, Vec<VertexId>) =
        cg.vertices.iter().partition(|&&v| is_border(v));
    let holes = if whole {
        vec![Hole { darts: Vec::new(), border: Vec::new() }]
    } else {
        cg.holes(h, is_border)
    };
    Cluster { id, edges, vertices: cg.vertices.clone(), internal_vertices, border_vertices, holes }
}

impl RPartition {
    /// Recomputes vertices, border and holes of cluster `id` after its edge
    /// list or `cluster_of_edge` was edited.
    pub fn refresh_cluster<W: Scalar>(&mut self, h: &EmbeddedGraph<W>, id: usize) {
        let whole = self.clusters.len() == 1 && self.clusters[0].edges.len() == h.edge_count();
        let edges = std::mem::take(&mut self.clusters[id].edges);
        self.clusters[id] = make_cluster(h, id, edges, &self.cluster_of_edge, whole);
    }
}

/// Partition with the given edge sets as clusters (no bound checks).
pub fn partition_from_edge_sets<W: Scalar>(h: &EmbeddedGraph<W>, sets: Vec<Vec<EdgeId>>, r: usize) -> RPartition {
    finalize(h, sets, r, PartitionConfig::default())
}

/// Recomputes border sets and holes of every cluster from the edge sets
/// (used after cluster edge sets are edited in place).
pub fn refresh<W: Scalar>(h: &EmbeddedGraph<W>, p: &RPartition) -> RPartition {
    finalize(h, p.clusters.iter().map(|c| c.edges.clone()).collect(), p.r, p.config)
}

/// Checks every partition invariant; returns violations and measured
/// constants.
pub fn validate_partition<W: Scalar>(h: &EmbeddedGraph<W>, p: &RPartition) -> PartitionReport {
    let mut violations = Vec::new();
    let m = h.edge_count();
    let mut count = vec![0usize; m];
    for c in &p.clusters {
        for &e in &c.edges {
            if e >= m {
                violations.push(format!("cluster {} has unknown edge {e}", c.id));
            } else {
                count[e] += 1;
            }
        }
    }
    for (e, &k) in count.iter().enumerate() {
        match k {
            0 => violations.push(format!("edge {e} in no cluster")),
            1 => {}
            _ => violations.push(format!("edge {e} assigned {k} times")),
        }
    }
    let border_cap = p.config.c_b * (p.r as f64).sqrt();
    for c in &p.clusters {
        if c.vertices.len() > p.r {
            violations.push(format!("cluster {} has {} vertices > r = {}", c.id, c.vertices.len(), p.r));
        }
        if c.border_vertices.len() as f64 > border_cap {
            violations.push(format!("cluster {} has {} border vertices", c.id, c.border_vertices.len()));
        }
        if c.holes.len() > p.config.h_max {
            violations.push(format!("cluster {} has {} holes", c.id, c.holes.len()));
        }
        for &v in &c.border_vertices {
            let others = h.darts_around(v).any(|d| count[edge_of(d)] == 1 && !c.edges.contains(&edge_of(d)));
            if !others {
                violations.push(format!("cluster {} border vertex {v} is not shared", c.id));
            }
            if !c.holes.iter().any(|hole| hole.border.contains(&v)) {
                violations.push(format!("cluster {} border vertex {v} on no hole", c.id));
            }
        }
        for &v in &c.internal_vertices {
            if h.darts_around(v).any(|d| !c.edges.contains(&edge_of(d))) {
                violations.push(format!("cluster {} internal vertex {v} has outside edges", c.id));
            }
        }
    }
    let n = (0..h.vertex_count()).filter(|&v| h.degree(v) > 0).count();
    if p.clusters.len() as f64 > p.config.c_k * (n as f64 / p.r as f64).max(1.0) {
        violations.push(format!("{} clusters exceed c_k * n / r", p.clusters.len()));
    }
    PartitionReport { violations, stats: p.stats(n) }
}

/// Border vertices joined around every hole by infinite-length edges.
#[derive(Clone, Debug, Default)]
pub struct SkeletonGraph {
    pub vertices: Vec<VertexId>,
    /// `(u, v, cluster, hole)`; every edge has infinite length.
    pub edges: Vec<(VertexId, VertexId, usize, usize)>,
}

pub fn skeleton_graph(p: &RPartition) -> SkeletonGraph {
    let mut vertices: Vec<VertexId> = p.clusters.iter().flat_map(|c| c.border_vertices.iter().copied()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut edges = Vec::new();
    for c in &p.clusters {
        for (hi, hole) in c.holes.iter().enumerate() {
            let b = &hole.border;
            for j in 0..b.len() {
                edges.push((b[j], b[(j + 1) % b.len()], c.id, hi));
            }
        }
    }
    SkeletonGraph { vertices, edges }
}
