//! Maximum flow from dual potentials: the cut-open dual with `-f*` arcs
//! across the path, distances from the copy of the path vertex of a minimum
//! cycle, and edge flows as potential differences.

use std::collections::BinaryHeap;

use crate::cut_open::{all_cut_cycles, terminal_path, CutCycle, DualPath, PathSides};
use crate::dense_distance::{compute_ddg, hybrid_dijkstra, HybridGraph};
use crate::embedding::{EdgeId, EmbeddedGraph, VertexId};
use crate::error::CutError;
use crate::partition::{build_r_partition, ClusterGraph, RPartition};
use crate::scalar::{Dist, MinKey, Scalar};

/// The dual cut open along the path (path vertex `f_i` keeps the edges from
/// below, its copy `f_i'` = vertex `n + i - 1` takes those from above) as a
/// directed graph, plus an arc `f_i -> f_i'` of length `-f*` and an arc
/// `f_i' -> f_i` of length `f*` per index.
#[derive(Clone, Debug)]
pub struct DirectedCutGraph<W> {
    pub vertex_count: usize,
    /// Vertices of `H`; ids `>= base` are primed path copies.
    pub base: usize,
    /// Two opposite arcs per edge of `H` (arc `2e` follows dart `2e`),
    /// then the `k` negative arcs, then the `k` reverse arcs.
    pub arcs: Vec<(usize, usize, W)>,
    pub path: Vec<VertexId>,
    pub f_star: W,
    pub i_min: usize,
    /// Per vertex of `H`: the region between consecutive cycles it lies in
    /// (0 = inside `C_1`, `k` = outside `C_k`).
    pub subnetwork_of: Vec<usize>,
}

impl<W: Scalar> DirectedCutGraph<W> {
    pub fn source(&self) -> usize {
        self.base + self.i_min - 1
    }

    pub fn k(&self) -> usize {
        self.path.len()
    }

    /// Arcs other than the negative ones.
    pub fn nonnegative_arcs(&self) -> impl Iterator<Item = &(usize, usize, W)> {
        let m2 = self.arcs.len() - 2 * self.k();
        self.arcs[..m2].iter().chain(&self.arcs[m2 + self.k()..])
    }

    /// Cut-open endpoint of dart `d` of `H` at its origin.
    pub fn dart_vertex(&self, sides: &PathSides, h: &EmbeddedGraph<W>, d: usize) -> usize {
        let v = h.origin(d);
        if sides.bit(d) {
            self.base + sides.index_of[v] - 1
        } else {
            v
        }
    }
}

/// Builds the directed cut graph. `cut_values[i - 1]` is the cost of the
/// minimum `f_i`-cut-cycle; `f_star` must equal their minimum.
pub fn build_directed_gpi<W: Scalar>(
    h: &EmbeddedGraph<W>,
    pi: &DualPath,
    cycles: &[Option<CutCycle<W>>],
    f_star: W,
) -> Result<DirectedCutGraph<W>, CutError> {
    let sides = PathSides::new(h, pi)?;
    let k = pi.faces.len();
    let (i_min, best) = cycles
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.as_ref().map(|c| (i + 1, c.cost)))
        .fold(None, |acc: Option<(usize, W)>, (i, c)| match acc {
            Some((_, b)) if b <= c => acc,
            _ => Some((i, c)),
        })
        .ok_or(CutError::NoPath)?;
    if best != f_star {
        return Err(CutError::InconsistentFlowValue { given: format!("{f_star:?}"), expected: format!("{best:?}") });
    }
    let n = h.vertex_count();
    let mut g = DirectedCutGraph {
        vertex_count: n + k,
        base: n,
        arcs: Vec::with_capacity(h.dart_count() + 2 * k),
        path: pi.faces.clone(),
        f_star,
        i_min,
        subnetwork_of: vec![0; n],
    };
    for e in 0..h.edge_count() {
        let a = g.dart_vertex(&sides, h, 2 * e);
        let b = g.dart_vertex(&sides, h, 2 * e + 1);
        g.arcs.push((a, b, h.length(2 * e)));
        g.arcs.push((b, a, h.length(2 * e + 1)));
    }
    for (i, &f) in pi.faces.iter().enumerate() {
        g.arcs.push((f, n + i, -f_star));
    }
    for (i, &f) in pi.faces.iter().enumerate() {
        g.arcs.push((n + i, f, f_star));
    }
    // region index: number of cycles whose source side does not contain v
    let faces = h.faces();
    let face_s = faces.face_of[pi.s_slot];
    for c in cycles.iter().flatten() {
        let side = crate::cut_open::source_side_faces(h, &faces, &c.odd_edges(), face_s);
        for v in 0..n {
            if !h.darts_around(v).any(|d| side[faces.face_of[d]]) {
                g.subnetwork_of[v] += 1;
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialMode {
    /// Bellman-Ford.
    ExactOracle,
    /// Dijkstra sweeps over the nonnegative arcs, relaxing the negative arcs
    /// outwards from `i_min` in between.
    Layered,
    /// Layered sweep over DDG-substituted clusters, then one Dijkstra per
    /// cluster from its border vertices.
    Accelerated,
}

/// Distances from the source of a directed cut graph.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialMap<W> {
    pub delta: Vec<Dist<W>>,
    /// Dijkstra phases used (1 for the oracle).
    pub rounds: usize,
}

impl<W: Scalar> PotentialMap<W> {
    /// Arcs violating `delta(v) <= delta(u) + len`.
    pub fn infeasible_arcs(&self, g: &DirectedCutGraph<W>) -> Vec<usize> {
        (0..g.arcs.len())
            .filter(|&a| {
                let (u, v, w) = g.arcs[a];
                self.delta[v] > self.delta[u].add(w)
            })
            .collect()
    }
}

/// Potentials by the selected mode. Accelerated mode needs the partition
/// of `h` and fails on clusters with several holes.
pub fn potentials<W: Scalar>(
    g: &DirectedCutGraph<W>,
    h: &EmbeddedGraph<W>,
    mode: PotentialMode,
    partition: Option<&RPartition>,
) -> Result<PotentialMap<W>, CutError> {
    match mode {
        PotentialMode::ExactOracle => {
            Ok(PotentialMap { delta: crate::oracle::bellman_ford(g.vertex_count, &g.arcs, g.source())?, rounds: 1 })
        }
        PotentialMode::Layered => {
            let mut adj = vec![Vec::new(); g.vertex_count];
            for &(u, v, w) in g.nonnegative_arcs() {
                adj[u].push((v, w));
            }
            layered(g, |dist, improved| relax_from(&adj, dist, improved))
        }
        PotentialMode::Accelerated => {
            let p = partition.ok_or(CutError::UnsupportedMultiHole(0))?;
            accelerated(g, h, p)
        }
    }
}

/// Negative arc order: outwards from `i_min` on both sides.
fn sweep_order(k: usize, i_min: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (i_min..=k).collect();
    order.extend((1..i_min).rev());
    order
}

fn layered<W: Scalar, F>(g: &DirectedCutGraph<W>, mut dijkstra: F) -> Result<PotentialMap<W>, CutError>
where
    F: FnMut(&mut Vec<Dist<W>>, Vec<usize>) -> Result<(), CutError>,
{
    let mut dist = vec![Dist::Inf; g.vertex_count];
    dist[g.source()] = Dist::zero();
    dijkstra(&mut dist, vec![g.source()])?;
    let order = sweep_order(g.k(), g.i_min);
    let mut rounds = 1;
    loop {
        let mut any = false;
        for &i in &order {
            let (f, fp) = (g.path[i - 1], g.base + i - 1);
            let cand = dist[f].add(-g.f_star);
            if cand < dist[fp] {
                dist[fp] = cand;
                dijkstra(&mut dist, vec![fp])?;
                rounds += 1;
                any = true;
            }
        }
        if !any {
            break;
        }
        if rounds > 2 * g.vertex_count + 2 {
            return Err(CutError::NegativeCycle);
        }
    }
    Ok(PotentialMap { delta: dist, rounds })
}

/// Decrease-only Dijkstra from already labelled vertices.
fn relax_from<W: Scalar>(adj: &[Vec<(usize, W)>], dist: &mut [Dist<W>], start: Vec<usize>) -> Result<(), CutError> {
    let mut heap = BinaryHeap::new();
    for s in start {
        if let Dist::Finite(d) = dist[s] {
            heap.push(MinKey(d, s));
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
    Ok(())
}

fn accelerated<W: Scalar>(g: &DirectedCutGraph<W>, h: &EmbeddedGraph<W>, p: &RPartition) -> Result<PotentialMap<W>, CutError> {
    if let Some(c) = p.clusters.iter().find(|c| c.holes.len() > 1) {
        return Err(CutError::UnsupportedMultiHole(c.id));
    }
    let n = g.base;
    let mut on_path = vec![false; n];
    for &f in &g.path {
        on_path[f] = true;
    }
    let explicit: Vec<bool> = p.clusters.iter().map(|c| c.vertices.iter().any(|&v| on_path[v])).collect();
    let ddgs: Vec<_> = p.clusters.iter().filter(|c| !explicit[c.id]).map(|c| compute_ddg(h, c)).collect();
    let mut hy = HybridGraph::new(g.vertex_count);
    for e in 0..h.edge_count() {
        if explicit[p.cluster_of_edge[e]] {
            let (a, b, w) = g.arcs[2 * e];
            hy.add_edge(a, b, w);
        }
    }
    for (i, &f) in g.path.iter().enumerate() {
        hy.add_edge(f, n + i, g.f_star);
    }
    for d in &ddgs {
        hy.add_ddg(d);
    }
    // phase 1: stitched graph
    let mut pm = layered(g, |dist, start| {
        let sources: Vec<(usize, W)> = start.iter().filter_map(|&s| dist[s].finite().map(|d| (s, d))).collect();
        let Some(lo) = sources.iter().map(|s| s.1).reduce(|a, b| if b < a { b } else { a }) else {
            return Ok(());
        };
        let shifted: Vec<(usize, W)> = sources.iter().map(|&(s, d)| (s, d - lo)).collect();
        let fresh = hybrid_dijkstra(&hy, &shifted)?;
        for (x, f) in dist.iter_mut().zip(fresh) {
            let f = f.add(lo);
            if f < *x {
                *x = f;
            }
        }
        Ok(())
    })?;
    // phase 2: inside every substituted cluster, from its border
    for c in p.clusters.iter().filter(|c| !explicit[c.id]) {
        let local = ClusterGraph::new(h, &c.edges);
        let lg = &local.graph;
        let mut adj = vec![Vec::new(); lg.vertex_count()];
        for (u, v, w) in lg.edge_list() {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        let mut dist: Vec<Dist<W>> = vec![Dist::Inf; lg.vertex_count()];
        let mut start = Vec::new();
        for &b in &c.border_vertices {
            let lb = local.local[&b];
            dist[lb] = pm.delta[b];
            start.push(lb);
        }
        relax_from(&adj, &mut dist, start)?;
        for (lv, &v) in local.vertices.iter().enumerate() {
            if dist[lv] < pm.delta[v] {
                pm.delta[v] = dist[lv];
            }
        }
    }
    pm.rounds += 1;
    Ok(pm)
}

/// Signed flow per edge (positive along dart `2e`) and the flow value.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowAssignment<W> {
    pub flow: Vec<W>,
    pub value: W,
}

impl<W: Scalar> FlowAssignment<W> {
    /// Capacity and conservation violations (empty when feasible).
    pub fn violations(&self, g: &EmbeddedGraph<W>, s: VertexId, t: VertexId) -> Vec<String> {
        let mut out = Vec::new();
        let mut net = vec![W::zero(); g.vertex_count()];
        for e in 0..g.edge_count() {
            let f = self.flow[e];
            let c = g.capacity(e);
            if f > c || -f > c {
                out.push(format!("edge {e}: |{f:?}| exceeds capacity {c:?}"));
            }
            let (u, v) = g.endpoints(e);
            net[u] = net[u] + f;
            net[v] = net[v] - f;
        }
        for (v, &x) in net.iter().enumerate() {
            let want = if v == s {
                self.value
            } else if v == t {
                -self.value
            } else {
                W::zero()
            };
            if s != t && x != want {
                out.push(format!("vertex {v}: net outflow {x:?}, expected {want:?}"));
            }
        }
        out
    }
}

/// Edge flows from potentials: the flow along primal dart `2e` is the
/// potential of the face on its left (the origin of dual dart `2e`) minus
/// that of the face on its right, read in the cut-open graph.
pub fn recover_flow<W: Scalar>(
    g: &EmbeddedGraph<W>,
    h: &EmbeddedGraph<W>,
    dg: &DirectedCutGraph<W>,
    pi: &DualPath,
    delta: &PotentialMap<W>,
    s: VertexId,
) -> Result<FlowAssignment<W>, CutError> {
    let sides = PathSides::new(h, pi)?;
    let mut flow = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let a = dg.dart_vertex(&sides, h, 2 * e);
        let b = dg.dart_vertex(&sides, h, 2 * e + 1);
        match (delta.delta[a], delta.delta[b]) {
            (Dist::Finite(x), Dist::Finite(y)) => flow.push(x - y),
            _ => return Err(CutError::FlowInvariant(format!("edge {e} has an unreachable dual endpoint"))),
        }
    }
    let mut value = W::zero();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        if u == s && v != s {
            value = value + flow[e];
        } else if v == s && u != s {
            value = value - flow[e];
        }
    }
    Ok(FlowAssignment { flow, value })
}

/// Result of [`max_flow`].
#[derive(Clone, Debug)]
pub struct MaxFlowOutcome<W> {
    pub value: W,
    pub flow: FlowAssignment<W>,
    pub i_min: usize,
    pub path_len: usize,
    pub rounds: usize,
}

/// Undirected s-t maximum flow. `r` is only used by the accelerated mode.
pub fn max_flow<W: Scalar>(
    g: &EmbeddedGraph<W>,
    s: VertexId,
    t: VertexId,
    mode: PotentialMode,
    r: usize,
) -> Result<MaxFlowOutcome<W>, CutError> {
    if s == t {
        return Err(CutError::SameEndpoints);
    }
    for v in [s, t] {
        if v >= g.vertex_count() {
            return Err(CutError::UnknownVertex(v));
        }
    }
    let tri = g.triangulate();
    let dual = tri.dual();
    let h = &dual.graph;
    let pi = terminal_path(&dual, s, t)?;
    let cycles = all_cut_cycles(h, &pi)?;
    let f_star = cycles.iter().flatten().map(|c| c.cost).reduce(|a, b| if b < a { b } else { a }).ok_or(CutError::NoPath)?;
    let dg = build_directed_gpi(h, &pi, &cycles, f_star)?;
    let partition = match mode {
        PotentialMode::Accelerated => Some(build_r_partition(h, r.max(16).max(h.max_degree()))?),
        _ => None,
    };
    let pm = potentials(&dg, h, mode, partition.as_ref())?;
    let full = recover_flow(&tri, h, &dg, &pi, &pm, s)?;
    let bad = full.violations(&tri, s, t);
    if let Some(first) = bad.first() {
        return Err(CutError::FlowInvariant(first.clone()));
    }
    if full.value != f_star {
        return Err(CutError::InconsistentFlowValue { given: format!("{:?}", full.value), expected: format!("{f_star:?}") });
    }
    for e in g.edge_count()..tri.edge_count() {
        if full.flow[e] != W::zero() {
            return Err(CutError::FlowInvariant(format!("synthetic edge {e} carries flow")));
        }
    }
    let flow = FlowAssignment { flow: full.flow[..g.edge_count()].to_vec(), value: full.value };
    Ok(MaxFlowOutcome { value: f_star, flow, i_min: dg.i_min, path_len: pi.faces.len(), rounds: pm.rounds })
}

/// Edge ids with nonzero flow.
pub fn support<W: Scalar>(f: &FlowAssignment<W>) -> Vec<EdgeId> {
    (0..f.flow.len()).filter(|&e| f.flow[e] != W::zero()).collect()
}
