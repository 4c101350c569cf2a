//! Dynamic shortest paths over an r-partition with periodic rebuilds, and
//! dynamic max-flow on top of them through a cycle gadget in the dual.

use crate::dense_distance::{compute_ddg, hybrid_search, DenseDistanceGraph, HybridGraph, Step};
use crate::embedding::{edge_of, DartId, EdgeId, EmbeddedGraph, Slot, VertexId};
use crate::error::{CutError, DynamicError};
use crate::cut_open::find_connecting_path;
use crate::mincut_fast::{build_gst, choose_pi, general_mincut, hole_pairs_of, HolePairData};
use crate::partition::{build_r_partition, Cluster, RPartition};
use crate::scalar::{Dist, Scalar};

/// Default r for a graph with `n` vertices: ceil(n^(2/3)).
pub fn default_dynamic_r(n: usize) -> usize {
    (n as f64).powf(2.0 / 3.0).ceil() as usize
}

#[derive(Clone, Debug)]
pub struct DynamicSP<W> {
    graph: EmbeddedGraph<W>,
    partition: RPartition,
    ddgs: Vec<DenseDistanceGraph<W>>,
    /// Hole-pair data of multi-hole clusters, kept only in flow mode.
    holes: Option<Vec<HolePairData<W>>>,
    r: usize,
    ops_since_rebuild: usize,
    rebuilds: usize,
}

impl<W: Scalar> DynamicSP<W> {
    /// Structure over `graph`; `r` defaults to ceil(n^(2/3)) and is raised
    /// to at least 16 and the maximum degree.
    pub fn new(graph: EmbeddedGraph<W>, r: Option<usize>) -> Result<Self, DynamicError> {
        Self::with_mode(graph, r, false)
    }

    pub(crate) fn with_mode(graph: EmbeddedGraph<W>, r: Option<usize>, flow: bool) -> Result<Self, DynamicError> {
        if (0..graph.edge_count()).any(|e| graph.capacity(e).is_negative()) {
            return Err(DynamicError::Negative);
        }
        let r = r.unwrap_or_else(|| default_dynamic_r(graph.vertex_count())).max(16);
        let mut d = DynamicSP {
            graph,
            partition: RPartition { clusters: Vec::new(), r, cluster_of_edge: Vec::new(), config: Default::default() },
            ddgs: Vec::new(),
            holes: flow.then(Vec::new),
            r,
            ops_since_rebuild: 0,
            rebuilds: 0,
        };
        d.rebuild()?;
        d.rebuilds = 0;
        Ok(d)
    }

    pub fn graph(&self) -> &EmbeddedGraph<W> {
        &self.graph
    }

    pub fn partition(&self) -> &RPartition {
        &self.partition
    }

    pub fn ddgs(&self) -> &[DenseDistanceGraph<W>] {
        &self.ddgs
    }

    pub fn hole_data(&self) -> &[HolePairData<W>] {
        self.holes.as_deref().unwrap_or(&[])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rebuild_threshold(&self) -> usize {
        (self.r as f64).sqrt().ceil() as usize
    }

    pub fn ops_since_rebuild(&self) -> usize {
        self.ops_since_rebuild
    }

    pub fn rebuilds(&self) -> usize {
        self.rebuilds
    }

    /// Fresh partition and DDGs of the current graph.
    pub fn rebuild(&mut self) -> Result<(), DynamicError> {
        let r = self.r.max(self.graph.max_degree());
        self.partition = build_r_partition(&self.graph, r).map_err(CutError::from)?;
        self.ddgs = self.partition.clusters.iter().map(|c| compute_ddg(&self.graph, c)).collect();
        if let Some(holes) = &mut self.holes {
            *holes = self.partition.clusters.iter().filter_map(|c| hole_pairs_of(&self.graph, c)).collect();
        }
        self.ops_since_rebuild = 0;
        self.rebuilds += 1;
        Ok(())
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), DynamicError> {
        if v >= self.graph.vertex_count() {
            return Err(DynamicError::UnknownVertex(v));
        }
        Ok(())
    }

    fn slot(&self, v: VertexId, pos: usize) -> Result<Slot, DynamicError> {
        self.check_vertex(v)?;
        self.graph.slot_at(v, pos).ok_or(DynamicError::SlotOutOfRange { vertex: v, slot: pos, degree: self.graph.degree(v) })
    }

    /// Adds a vertex without edges.
    pub fn add_vertex(&mut self) -> VertexId {
        self.graph.add_vertex()
    }

    /// Inserts an edge of length `len` between `x` and `y` at rotation
    /// positions `pos_x` and `pos_y`. Returns its edge id.
    pub fn insert(&mut self, x: VertexId, y: VertexId, len: W, pos_x: usize, pos_y: usize) -> Result<EdgeId, DynamicError> {
        let sx = self.slot(x, pos_x)?;
        let sy = self.slot(y, pos_y)?;
        self.insert_at(sx, sy, len)
    }

    /// Inserts an edge at explicit slots.
    pub fn insert_at(&mut self, sx: Slot, sy: Slot, len: W) -> Result<EdgeId, DynamicError> {
        if len.is_negative() {
            return Err(DynamicError::Negative);
        }
        let vx = self.slot_vertex(sx)?;
        let vy = self.slot_vertex(sy)?;
        let before: Vec<usize> = self.touching(vx, vy);
        // the smaller of the clusters holding x or y
        let target = before.iter().copied().min_by_key(|&c| (self.partition.clusters[c].edges.len(), c));
        let e = self.graph.insert_edge(sx, sy, len, false);
        let c = match target {
            Some(c) => c,
            None => {
                let id = self.partition.clusters.len();
                self.partition.clusters.push(Cluster { id, ..Default::default() });
                id
            }
        };
        self.partition.cluster_of_edge.push(c);
        self.partition.clusters[c].edges.push(e);
        let mut dirty = before;
        dirty.push(c);
        self.finish_op(dirty)?;
        Ok(e)
    }

    fn slot_vertex(&self, s: Slot) -> Result<VertexId, DynamicError> {
        let v = match s {
            Slot::Before(d) if d < 2 * self.graph.edge_count() => self.graph.origin(d),
            Slot::Before(d) => return Err(DynamicError::UnknownVertex(d)),
            Slot::Empty(v) => v,
        };
        self.check_vertex(v)?;
        Ok(v)
    }

    fn touching(&self, x: VertexId, y: VertexId) -> Vec<usize> {
        let mut cs = self.partition.clusters_of_vertex(&self.graph, x);
        cs.extend(self.partition.clusters_of_vertex(&self.graph, y));
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    /// Deletes one edge between `x` and `y`.
    pub fn delete(&mut self, x: VertexId, y: VertexId) -> Result<(), DynamicError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let e = self.graph.find_edge(x, y).ok_or(DynamicError::MissingEdge(x, y))?;
        self.delete_edge(e).map(|_| ())
    }

    /// Deletes edge `e`. The last edge takes over id `e`; its old id is
    /// returned when that happens.
    pub fn delete_edge(&mut self, e: EdgeId) -> Result<Option<EdgeId>, DynamicError> {
        if e >= self.graph.edge_count() {
            return Err(DynamicError::MissingEdge(e, e));
        }
        let (x, y) = self.graph.endpoints(e);
        let mut dirty = self.touching(x, y);
        let c = self.partition.cluster_of_edge[e];
        self.partition.clusters[c].edges.retain(|&f| f != e);
        let moved = self.graph.remove_edge(e);
        self.partition.cluster_of_edge.swap_remove(e);
        if let Some(last) = moved {
            let cl = self.partition.cluster_of_edge[e];
            for f in &mut self.partition.clusters[cl].edges {
                if *f == last {
                    *f = e;
                }
            }
            dirty.push(cl);
        }
        self.finish_op(dirty)?;
        Ok(moved)
    }

    fn finish_op(&mut self, mut dirty: Vec<usize>) -> Result<(), DynamicError> {
        self.ops_since_rebuild += 1;
        if self.ops_since_rebuild >= self.rebuild_threshold() {
            return self.rebuild();
        }
        dirty.sort_unstable();
        dirty.dedup();
        for c in dirty {
            self.partition.refresh_cluster(&self.graph, c);
            let cl = &self.partition.clusters[c];
            let ddg = compute_ddg(&self.graph, cl);
            if c == self.ddgs.len() {
                self.ddgs.push(ddg);
            } else {
                self.ddgs[c] = ddg;
            }
            if let Some(holes) = &mut self.holes {
                holes.retain(|hd| hd.cluster != c);
                holes.extend(hole_pairs_of(&self.graph, cl));
            }
        }
        Ok(())
    }

    /// Stitched graph for a query between `x` and `y`: clusters holding `x`
    /// or `y` explicit, every other cluster through its DDG.
    fn stitched(&self, x: VertexId, y: VertexId) -> (HybridGraph<'_, W>, Vec<EdgeId>) {
        let explicit = self.touching(x, y);
        let mut hy = HybridGraph::new(self.graph.vertex_count());
        let mut ids = Vec::new();
        for &c in &explicit {
            for &e in &self.partition.clusters[c].edges {
                let (u, v) = self.graph.endpoints(e);
                hy.add_edge(u, v, self.graph.capacity(e));
                ids.push(e);
            }
        }
        for (c, ddg) in self.ddgs.iter().enumerate() {
            if explicit.binary_search(&c).is_err() && !ddg.is_empty() {
                hy.add_ddg(ddg);
            }
        }
        (hy, ids)
    }

    /// Distance from `x` to `y` and a shortest path as darts.
    pub fn shortest_path(&self, x: VertexId, y: VertexId) -> Result<(Dist<W>, Vec<DartId>), DynamicError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Ok((Dist::zero(), Vec::new()));
        }
        let (hy, ids) = self.stitched(x, y);
        let tree = hybrid_search(&hy, &[(x, W::zero())], Some(y))?;
        let dist = tree.dist[y];
        if !dist.is_finite() {
            return Ok((Dist::Inf, Vec::new()));
        }
        let mut path = Vec::new();
        let mut at = x;
        for step in tree.steps_to(&hy, y) {
            match step {
                Step::Source => {}
                Step::Edge(i, from) => {
                    let e = ids[i];
                    let d = if self.graph.origin(2 * e) == from { 2 * e } else { 2 * e + 1 };
                    path.push(d);
                    at = self.graph.head(d);
                }
                Step::Ddg(view, a, b) => {
                    let ddg = hy.ddgs[view].ddg;
                    path.extend(ddg.path(a, b).unwrap_or_default());
                    at = ddg.border[b];
                }
            }
        }
        debug_assert_eq!(at, y);
        Ok((dist, path))
    }

    /// Distance only.
    pub fn distance(&self, x: VertexId, y: VertexId) -> Result<Dist<W>, DynamicError> {
        Ok(self.shortest_path(x, y)?.0)
    }
}

/// Edge of the gadget graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetEdge {
    /// Zero-length edge from g(d) to g(next_on_face(d)).
    Cycle(DartId),
    /// Dual of a primal edge, from g(2e) to g(2e+1).
    Dual(EdgeId),
}

/// Bookkeeping between primal darts and gadget vertices and edges.
#[derive(Clone, Debug, Default)]
pub struct GadgetIndex {
    /// g(d) for every primal dart.
    pub vertex_of_dart: Vec<VertexId>,
    /// c(d) for every primal dart.
    pub cycle_edge: Vec<EdgeId>,
    /// Gadget edge dual to each primal edge.
    pub dual_edge: Vec<EdgeId>,
    /// What each gadget edge stands for.
    pub kind: Vec<GadgetEdge>,
}

impl GadgetIndex {
    /// Gadget dart of the dual edge of `d` leaving g(d).
    pub fn dual_dart(&self, d: DartId) -> DartId {
        2 * self.dual_edge[edge_of(d)] + (d & 1)
    }
}

/// The dual with every vertex (primal face) of degree d replaced by a cycle
/// of d zero-length edges, one gadget vertex per incident dart, in face
/// order. Every gadget vertex has degree three.
#[derive(Clone, Debug)]
pub struct DualGadgetGraph<W> {
    pub graph: EmbeddedGraph<W>,
    pub index: GadgetIndex,
}

impl<W: Scalar> DualGadgetGraph<W> {
    pub fn new(primal: &EmbeddedGraph<W>) -> Result<Self, DynamicError> {
        let m = primal.edge_count();
        // gadget edge e: dual of primal edge e; m + d: cycle edge c(d)
        let rots: Vec<Vec<DartId>> = (0..2 * m)
            .map(|d| vec![d, 2 * (m + d), 2 * (m + prev_on_face(primal, d)) + 1])
            .collect();
        let caps = (0..m).map(|e| primal.capacity(e)).chain((0..2 * m).map(|_| W::zero())).collect();
        let graph = EmbeddedGraph::from_dart_rotations(&rots, caps, vec![false; 3 * m]).map_err(CutError::from)?;
        let index = GadgetIndex {
            vertex_of_dart: (0..2 * m).collect(),
            cycle_edge: (0..2 * m).map(|d| m + d).collect(),
            dual_edge: (0..m).collect(),
            kind: (0..m).map(GadgetEdge::Dual).chain((0..2 * m).map(GadgetEdge::Cycle)).collect(),
        };
        Ok(DualGadgetGraph { graph, index })
    }

    /// Gadget vertices of the cycle standing for the primal face of `d`.
    pub fn cycle_of(&self, primal: &EmbeddedGraph<W>, d: DartId) -> Vec<VertexId> {
        face_walk(primal, d).into_iter().map(|x| self.index.vertex_of_dart[x]).collect()
    }
}

fn prev_on_face<W: Scalar>(g: &EmbeddedGraph<W>, d: DartId) -> DartId {
    g.prev_around(d) ^ 1
}

fn face_walk<W: Scalar>(g: &EmbeddedGraph<W>, d: DartId) -> Vec<DartId> {
    let mut out = vec![d];
    let mut x = g.next_on_face(d);
    while x != d {
        out.push(x);
        x = g.next_on_face(x);
    }
    out
}

/// Result of a dynamic max-flow query.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowQuery<W> {
    pub value: W,
    /// Primal edges of a minimum cut.
    pub cut: Vec<EdgeId>,
}

/// Max-flow under edge insertions and deletions in a fixed embedding.
#[derive(Clone, Debug)]
pub struct DynamicMaxFlow<W> {
    primal: EmbeddedGraph<W>,
    sp: DynamicSP<W>,
    index: GadgetIndex,
    last_gadget_ops: usize,
}

impl<W: Scalar> DynamicMaxFlow<W> {
    /// `r` defaults to ceil(n^(2/3)) with n the gadget vertex count.
    pub fn new(primal: EmbeddedGraph<W>, r: Option<usize>) -> Result<Self, DynamicError> {
        primal.validate().map_err(CutError::from)?;
        let gadget = DualGadgetGraph::new(&primal)?;
        let sp = DynamicSP::with_mode(gadget.graph, r, true)?;
        Ok(DynamicMaxFlow { primal, sp, index: gadget.index, last_gadget_ops: 0 })
    }

    pub fn primal(&self) -> &EmbeddedGraph<W> {
        &self.primal
    }

    pub fn shortest_paths(&self) -> &DynamicSP<W> {
        &self.sp
    }

    pub fn index(&self) -> &GadgetIndex {
        &self.index
    }

    /// Gadget edge insertions and deletions done by the last update.
    pub fn last_gadget_ops(&self) -> usize {
        self.last_gadget_ops
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), DynamicError> {
        if v >= self.primal.vertex_count() {
            return Err(DynamicError::UnknownVertex(v));
        }
        Ok(())
    }

    fn gadget_insert(&mut self, kind: GadgetEdge) -> Result<(), DynamicError> {
        let g = self.sp.graph();
        let (sa, sb, len) = match kind {
            GadgetEdge::Dual(e) => {
                let (a, b) = (self.index.vertex_of_dart[2 * e], self.index.vertex_of_dart[2 * e + 1]);
                (Slot::Empty(a), Slot::Empty(b), self.primal.capacity(e))
            }
            // leaves g(d) right after its dual dart, enters g(to) right before it
            GadgetEdge::Cycle(d) => {
                let to = self.primal.next_on_face(d);
                let out = Slot::Before(g.next_around(self.index.dual_dart(d)));
                (out, Slot::Before(self.index.dual_dart(to)), W::zero())
            }
        };
        let ge = self.sp.insert_at(sa, sb, len)?;
        debug_assert_eq!(ge, self.index.kind.len());
        self.index.kind.push(kind);
        match kind {
            GadgetEdge::Dual(e) => self.index.dual_edge[e] = ge,
            GadgetEdge::Cycle(d) => self.index.cycle_edge[d] = ge,
        }
        self.last_gadget_ops += 1;
        Ok(())
    }

    fn gadget_delete(&mut self, kind: GadgetEdge) -> Result<(), DynamicError> {
        let ge = match kind {
            GadgetEdge::Dual(e) => self.index.dual_edge[e],
            GadgetEdge::Cycle(d) => self.index.cycle_edge[d],
        };
        let moved = self.sp.delete_edge(ge)?;
        self.index.kind.swap_remove(ge);
        if moved.is_some() {
            match self.index.kind[ge] {
                GadgetEdge::Dual(e) => self.index.dual_edge[e] = ge,
                GadgetEdge::Cycle(d) => self.index.cycle_edge[d] = ge,
            }
        }
        self.last_gadget_ops += 1;
        Ok(())
    }

    /// Inserts primal edge `u`-`v` at rotation positions `pos_u`, `pos_v`;
    /// both corners must lie on one face.
    pub fn insert(&mut self, u: VertexId, v: VertexId, cap: W, pos_u: usize, pos_v: usize) -> Result<EdgeId, DynamicError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if cap.is_negative() {
            return Err(DynamicError::Negative);
        }
        let slot = |x: VertexId, pos: usize| match self.primal.slot_at(x, pos) {
            Some(Slot::Before(d)) => Ok(d),
            _ => Err(DynamicError::SlotOutOfRange { vertex: x, slot: pos, degree: self.primal.degree(x) }),
        };
        let (du, dv) = (slot(u, pos_u)?, slot(v, pos_v)?);
        let tu = prev_on_face(&self.primal, du);
        let tv = prev_on_face(&self.primal, dv);
        if u == v || !face_walk(&self.primal, tu).contains(&tv) {
            return Err(DynamicError::SlotsNotOnCommonFace(u, v));
        }
        self.last_gadget_ops = 0;
        self.gadget_delete(GadgetEdge::Cycle(tu))?;
        self.gadget_delete(GadgetEdge::Cycle(tv))?;
        let e = self.primal.insert_edge(Slot::Before(du), Slot::Before(dv), cap, false);
        for _ in 0..2 {
            let g = self.sp.add_vertex();
            self.index.vertex_of_dart.push(g);
            self.index.cycle_edge.push(usize::MAX);
        }
        self.index.dual_edge.push(usize::MAX);
        self.gadget_insert(GadgetEdge::Dual(e))?;
        for d in [tu, 2 * e, tv, 2 * e + 1] {
            self.gadget_insert(GadgetEdge::Cycle(d))?;
        }
        Ok(e)
    }

    /// Deletes one primal edge between `u` and `v`. Bridges are refused,
    /// the flow setting needs a connected graph.
    pub fn delete(&mut self, u: VertexId, v: VertexId) -> Result<(), DynamicError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let e = self.primal.find_edge(u, v).ok_or(DynamicError::MissingEdge(u, v))?;
        let (a, b) = (2 * e, 2 * e + 1);
        if face_walk(&self.primal, a).contains(&b) {
            return Err(DynamicError::WouldDisconnect(u, v));
        }
        let pa = prev_on_face(&self.primal, a);
        let pb = prev_on_face(&self.primal, b);
        self.last_gadget_ops = 0;
        for kind in [GadgetEdge::Cycle(pa), GadgetEdge::Cycle(a), GadgetEdge::Cycle(pb), GadgetEdge::Cycle(b), GadgetEdge::Dual(e)] {
            self.gadget_delete(kind)?;
        }
        if let Some(last) = self.primal.remove_edge(e) {
            let remap = |x: DartId| if edge_of(x) == last { 2 * e + (x & 1) } else { x };
            let ix = &mut self.index;
            for k in 0..2 {
                ix.vertex_of_dart[2 * e + k] = ix.vertex_of_dart[2 * last + k];
                ix.cycle_edge[2 * e + k] = ix.cycle_edge[2 * last + k];
            }
            ix.dual_edge[e] = ix.dual_edge[last];
            for kind in &mut ix.kind {
                *kind = match *kind {
                    GadgetEdge::Cycle(d) => GadgetEdge::Cycle(remap(d)),
                    GadgetEdge::Dual(f) => GadgetEdge::Dual(if f == last { e } else { f }),
                };
            }
            let m = self.primal.edge_count();
            ix.vertex_of_dart.truncate(2 * m);
            ix.cycle_edge.truncate(2 * m);
            ix.dual_edge.truncate(m);
            self.gadget_insert(GadgetEdge::Cycle(remap(pa)))?;
            self.gadget_insert(GadgetEdge::Cycle(remap(pb)))?;
        } else {
            let m = self.primal.edge_count();
            self.index.vertex_of_dart.truncate(2 * m);
            self.index.cycle_edge.truncate(2 * m);
            self.index.dual_edge.truncate(m);
            self.gadget_insert(GadgetEdge::Cycle(pa))?;
            self.gadget_insert(GadgetEdge::Cycle(pb))?;
        }
        Ok(())
    }

    /// Gadget face standing for primal vertex `v`.
    fn vertex_face(&self, faces: &crate::embedding::FaceStructure, v: VertexId) -> usize {
        let d = self.primal.darts_around(v).next().expect("connected primal");
        faces.face_of[self.index.dual_dart(d)]
    }

    /// Max-flow value between `s` and `t` with a minimum cut.
    pub fn max_flow(&self, s: VertexId, t: VertexId) -> Result<FlowQuery<W>, DynamicError> {
        self.check_vertex(s)?;
        self.check_vertex(t)?;
        if s == t {
            return Err(CutError::SameEndpoints.into());
        }
        let h = self.sp.graph();
        let faces = h.faces();
        let (face_s, face_t) = (self.vertex_face(&faces, s), self.vertex_face(&faces, t));
        let tp = find_connecting_path(h, &faces, face_s, face_t)?;
        let (f_s, f_t) = (tp.faces[0], *tp.faces.last().unwrap());
        let p = self.sp.partition();
        let mut gst = build_gst(h, p, self.sp.ddgs(), f_s, f_t, (face_s, face_t))?;
        let pi = choose_pi(&mut gst)?;
        let (value, best) = general_mincut(&gst, &pi, self.sp.hole_data())?;
        let value = value.finite().ok_or(CutError::NoPath)?;
        let cut = best
            .map(|c| {
                c.odd_edges()
                    .into_iter()
                    .filter_map(|ge| match self.index.kind[ge] {
                        GadgetEdge::Dual(e) => Some(e),
                        GadgetEdge::Cycle(_) => None,
                    })
                    .collect()
            })
            .unwrap_or_default();
        Ok(FlowQuery { value, cut })
    }
}
