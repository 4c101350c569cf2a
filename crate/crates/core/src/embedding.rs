//! Dart-based rotation systems: the embedded planar graph, its faces, its
//! dual, and triangulation with zero-capacity edges.
//!
//! Edge `e` owns darts `2e` and `2e + 1`; dart `2e` leaves the first endpoint
//! given at construction. Rotations are clockwise and faces are the orbits of
//! `next_on_face(d) = next_around(twin(d))`.

use std::collections::VecDeque;

use crate::error::GraphError;
use crate::scalar::Scalar;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type DartId = usize;

/// Where a new dart goes in a vertex rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// Immediately before the given dart (so the new dart becomes its
    /// clockwise predecessor).
    Before(DartId),
    /// The vertex currently has no darts.
    Empty(VertexId),
}

#[derive(Clone, Debug)]
pub struct EmbeddedGraph<W> {
    origin: Vec<VertexId>,
    next: Vec<DartId>,
    prev: Vec<DartId>,
    first: Vec<Option<DartId>>,
    capacity: Vec<W>,
    synthetic: Vec<bool>,
}

#[inline]
pub fn twin(d: DartId) -> DartId {
    d ^ 1
}

#[inline]
pub fn edge_of(d: DartId) -> EdgeId {
    d >> 1
}

impl<W: Scalar> EmbeddedGraph<W> {
    /// Builds a graph from an edge list and per-vertex clockwise rotations of
    /// incident edge ids. Self-loops appear twice in their vertex's rotation;
    /// the first occurrence is taken as dart `2e`.
    pub fn build(
        vertex_count: usize,
        edges: &[(VertexId, VertexId, W)],
        rotations: &[Vec<EdgeId>],
    ) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        if rotations.len() != vertex_count {
            return Err(GraphError::BadRotation(format!(
                "{} rotations for {} vertices",
                rotations.len(),
                vertex_count
            )));
        }
        for (e, &(u, v, c)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(GraphError::UnknownVertex { edge: e, vertex: x });
                }
            }
            if c.is_negative() {
                return Err(GraphError::NegativeCapacity { edge: e });
            }
        }
        let m = edges.len();
        let mut seen = vec![0u8; 2 * m];
        let mut origin = vec![usize::MAX; 2 * m];
        let mut next = vec![usize::MAX; 2 * m];
        let mut prev = vec![usize::MAX; 2 * m];
        let mut first = vec![None; vertex_count];
        for (v, rot) in rotations.iter().enumerate() {
            let mut darts = Vec::with_capacity(rot.len());
            for &e in rot {
                if e >= m {
                    return Err(GraphError::UnknownEdge { vertex: v, edge: e });
                }
                let (a, b, _) = edges[e];
                let d = if a == v && b == v {
                    if seen[2 * e] == 0 {
                        2 * e
                    } else {
                        2 * e + 1
                    }
                } else if a == v {
                    2 * e
                } else if b == v {
                    2 * e + 1
                } else {
                    return Err(GraphError::UnknownEdge { vertex: v, edge: e });
                };
                if seen[d] > 0 {
                    return Err(GraphError::ExtraInRotation { edge: e, vertex: v });
                }
                seen[d] = 1;
                origin[d] = v;
                darts.push(d);
            }
            for i in 0..darts.len() {
                let d = darts[i];
                let n = darts[(i + 1) % darts.len()];
                next[d] = n;
                prev[n] = d;
            }
            first[v] = darts.first().copied();
        }
        for (d, &s) in seen.iter().enumerate() {
            if s == 0 {
                let (a, b, _) = edges[d / 2];
                let v = if d % 2 == 0 { a } else { b };
                return Err(GraphError::MissingFromRotation { edge: d / 2, vertex: v });
            }
        }
        let g = EmbeddedGraph {
            origin,
            next,
            prev,
            first,
            capacity: edges.iter().map(|e| e.2).collect(),
            synthetic: vec![false; m],
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Builds a graph directly from per-vertex clockwise dart lists. Dart `d`
    /// belongs to edge `d / 2`; every dart must appear exactly once. No
    /// connectivity check.
    pub fn from_dart_rotations(
        rotations: &[Vec<DartId>],
        capacity: Vec<W>,
        synthetic: Vec<bool>,
    ) -> Result<Self, GraphError> {
        let nd = 2 * capacity.len();
        let mut origin = vec![usize::MAX; nd];
        let mut next = vec![usize::MAX; nd];
        let mut prev = vec![usize::MAX; nd];
        let mut first = vec![None; rotations.len()];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= nd || origin[d] != usize::MAX {
                    return Err(GraphError::BadRotation(format!("dart {d} misplaced at vertex {v}")));
                }
                origin[d] = v;
                let n = rot[(i + 1) % rot.len()];
                next[d] = n;
                if n < nd {
                    prev[n] = d;
                }
            }
            first[v] = rot.first().copied();
        }
        if let Some(d) = origin.iter().position(|&o| o == usize::MAX) {
            return Err(GraphError::BadRotation(format!("dart {d} in no rotation")));
        }
        Ok(EmbeddedGraph { origin, next, prev, first, capacity, synthetic })
    }

    /// An edgeless graph on `n` vertices, for incremental construction.
    pub fn with_vertices(n: usize) -> Self {
        EmbeddedGraph {
            origin: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            first: vec![None; n],
            capacity: Vec::new(),
            synthetic: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.first.len()
    }

    pub fn edge_count(&self) -> usize {
        self.capacity.len()
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self, d: DartId) -> VertexId {
        self.origin[d]
    }

    pub fn head(&self, d: DartId) -> VertexId {
        self.origin[twin(d)]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.origin[2 * e], self.origin[2 * e + 1])
    }

    /// Clockwise successor of `d` around its origin.
    pub fn next_around(&self, d: DartId) -> DartId {
        self.next[d]
    }

    pub fn prev_around(&self, d: DartId) -> DartId {
        self.prev[d]
    }

    pub fn next_on_face(&self, d: DartId) -> DartId {
        self.next[twin(d)]
    }

    pub fn capacity(&self, e: EdgeId) -> W {
        self.capacity[e]
    }

    pub fn capacities(&self) -> &[W] {
        &self.capacity
    }

    /// Length of the edge carrying dart `d`.
    pub fn length(&self, d: DartId) -> W {
        self.capacity[edge_of(d)]
    }

    pub fn set_capacity(&mut self, e: EdgeId, c: W) {
        self.capacity[e] = c;
    }

    pub fn is_synthetic(&self, e: EdgeId) -> bool {
        self.synthetic[e]
    }

    pub fn first_dart(&self, v: VertexId) -> Option<DartId> {
        self.first[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.darts_around(v).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Darts leaving `v` in clockwise order.
    pub fn darts_around(&self, v: VertexId) -> DartsAround<'_, W> {
        DartsAround {
            g: self,
            start: self.first[v],
            cur: self.first[v],
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for d in self.darts_around(v) {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    pub fn faces(&self) -> FaceStructure {
        let mut face_of = vec![usize::MAX; self.dart_count()];
        let mut faces = Vec::new();
        for start in 0..self.dart_count() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                cycle.push(d);
                d = self.next_on_face(d);
                if d == start {
                    break;
                }
            }
            faces.push(cycle);
        }
        FaceStructure { faces, face_of }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces().len() as i64
    }

    /// Checks twin/rotation consistency, capacities, connectivity and Euler.
    pub fn validate(&self) -> Result<(), GraphError> {
        let nd = self.dart_count();
        for d in 0..nd {
            if self.prev[self.next[d]] != d {
                return Err(GraphError::BadRotation(format!("next/prev mismatch at dart {d}")));
            }
            if self.origin[self.next[d]] != self.origin[d] {
                return Err(GraphError::BadRotation(format!("dart {d} rotates off its vertex")));
            }
        }
        let mut covered = vec![false; nd];
        for v in 0..self.vertex_count() {
            for d in self.darts_around(v) {
                if covered[d] || self.origin[d] != v {
                    return Err(GraphError::BadRotation(format!("vertex {v} rotation broken")));
                }
                covered[d] = true;
            }
        }
        if covered.iter().any(|c| !c) {
            return Err(GraphError::BadRotation("dart outside every rotation".into()));
        }
        for (e, c) in self.capacity.iter().enumerate() {
            if c.is_negative() {
                return Err(GraphError::NegativeCapacity { edge: e });
            }
            if self.synthetic[e] && !c.is_zero() {
                return Err(GraphError::BadRotation(format!("synthetic edge {e} has capacity")));
            }
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let chi = self.euler_characteristic();
        if chi != 2 {
            return Err(GraphError::NotPlanar(chi));
        }
        Ok(())
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.first.push(None);
        self.first.len() - 1
    }

    fn link_before(&mut self, d: DartId, slot: Slot) {
        match slot {
            Slot::Empty(v) => {
                debug_assert!(self.first[v].is_none());
                self.origin[d] = v;
                self.next[d] = d;
                self.prev[d] = d;
                self.first[v] = Some(d);
            }
            Slot::Before(at) => {
                let p = self.prev[at];
                self.origin[d] = self.origin[at];
                self.next[p] = d;
                self.prev[d] = p;
                self.next[d] = at;
                self.prev[at] = d;
            }
        }
    }

    /// Inserts an edge whose first dart goes into `at_u` and second into
    /// `at_v`. Returns the new edge id. The caller is responsible for the
    /// two slots lying on a common face when planarity matters.
    pub fn insert_edge(&mut self, at_u: Slot, at_v: Slot, cap: W, synthetic: bool) -> EdgeId {
        let e = self.edge_count();
        self.origin.extend([usize::MAX, usize::MAX]);
        self.next.extend([usize::MAX, usize::MAX]);
        self.prev.extend([usize::MAX, usize::MAX]);
        self.capacity.push(cap);
        self.synthetic.push(synthetic);
        self.link_before(2 * e, at_u);
        // A self-loop inserted into an empty vertex: the second dart now has a
        // neighbour to sit before.
        let at_v = match at_v {
            Slot::Empty(v) if self.first[v].is_some() => Slot::Before(self.first[v].unwrap()),
            s => s,
        };
        self.link_before(2 * e + 1, at_v);
        e
    }

    fn unlink(&mut self, d: DartId) {
        let v = self.origin[d];
        if self.next[d] == d {
            self.first[v] = None;
        } else {
            let (p, n) = (self.prev[d], self.next[d]);
            self.next[p] = n;
            self.prev[n] = p;
            if self.first[v] == Some(d) {
                self.first[v] = Some(n);
            }
        }
    }

    /// Removes edge `e`. The last edge is renumbered to `e`; its old id is
    /// returned when that happens.
    pub fn remove_edge(&mut self, e: EdgeId) -> Option<EdgeId> {
        self.unlink(2 * e);
        self.unlink(2 * e + 1);
        let last = self.edge_count() - 1;
        let moved = if e != last {
            let remap = |x: DartId| if edge_of(x) == last { 2 * e + (x & 1) } else { x };
            for k in 0..2 {
                let (old, new) = (2 * last + k, 2 * e + k);
                self.origin[new] = self.origin[old];
                self.next[new] = remap(self.next[old]);
                self.prev[new] = remap(self.prev[old]);
            }
            for k in 0..2 {
                let new = 2 * e + k;
                let (p, n) = (self.prev[new], self.next[new]);
                self.next[p] = new;
                self.prev[n] = new;
                let v = self.origin[new];
                if self.first[v].map(edge_of) == Some(last) {
                    self.first[v] = self.first[v].map(remap);
                }
            }
            self.capacity[e] = self.capacity[last];
            self.synthetic[e] = self.synthetic[last];
            Some(last)
        } else {
            None
        };
        self.origin.truncate(2 * last);
        self.next.truncate(2 * last);
        self.prev.truncate(2 * last);
        self.capacity.truncate(last);
        self.synthetic.truncate(last);
        moved
    }

    /// Rotation index of dart `d` around its origin, counted from the
    /// vertex's first dart.
    pub fn rotation_index(&self, d: DartId) -> usize {
        self.darts_around(self.origin[d]).position(|x| x == d).expect("dart in rotation")
    }

    /// Slot for inserting at rotation position `pos` of `v` (0 = before the
    /// first dart, `degree` = after the last one).
    pub fn slot_at(&self, v: VertexId, pos: usize) -> Option<Slot> {
        let darts: Vec<DartId> = self.darts_around(v).collect();
        if darts.is_empty() {
            return (pos == 0).then_some(Slot::Empty(v));
        }
        if pos > darts.len() {
            return None;
        }
        Some(Slot::Before(darts[pos % darts.len()]))
    }

    /// Finds an edge between `u` and `v`.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.darts_around(u).find(|&d| self.head(d) == v).map(edge_of)
    }

    /// Edge list in `(u, v, capacity)` form, synthetic flags dropped.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId, W)> {
        (0..self.edge_count())
            .map(|e| {
                let (u, v) = self.endpoints(e);
                (u, v, self.capacity[e])
            })
            .collect()
    }

    /// Per-vertex clockwise rotations as edge ids.
    pub fn rotations(&self) -> Vec<Vec<EdgeId>> {
        (0..self.vertex_count())
            .map(|v| self.darts_around(v).map(edge_of).collect())
            .collect()
    }

    /// The dual: one vertex per face, one edge per primal edge (same id,
    /// length = capacity). Dual dart `d` leaves the face containing primal
    /// dart `d`, and dual rotations follow face boundary order.
    pub fn dual(&self) -> DualGraph<W> {
        let faces = self.faces();
        let nd = self.dart_count();
        let mut origin = vec![0; nd];
        let mut next = vec![0; nd];
        let mut prev = vec![0; nd];
        let mut first = vec![None; faces.len()];
        for d in 0..nd {
            origin[d] = faces.face_of[d];
            let n = self.next_on_face(d);
            next[d] = n;
            prev[n] = d;
        }
        for (f, cycle) in faces.faces.iter().enumerate() {
            first[f] = cycle.first().copied();
        }
        let graph = EmbeddedGraph {
            origin,
            next,
            prev,
            first,
            capacity: self.capacity.clone(),
            synthetic: self.synthetic.clone(),
        };
        let dual_faces = graph.faces();
        let vertex_face = (0..self.vertex_count())
            .map(|v| self.first[v].map(|d| dual_faces.face_of[d]).unwrap_or(usize::MAX))
            .collect();
        DualGraph {
            graph,
            primal_faces: faces,
            dual_faces,
            vertex_face,
        }
    }

    /// Adds zero-capacity synthetic edges until every face with more than
    /// three boundary darts is split into triangles. Faces bounded by one or
    /// two darts cannot be split without new vertices and are left alone.
    pub fn triangulate(&self) -> EmbeddedGraph<W> {
        let mut g = self.clone();
        let faces = g.faces();
        for face in faces.faces {
            let mut cyc = face;
            while cyc.len() > 3 {
                let m = cyc.len();
                let i = (0..m)
                    .find(|&i| g.origin[cyc[i]] != g.origin[cyc[(i + 2) % m]])
                    .unwrap_or(0);
                let (di, di2) = (cyc[i], cyc[(i + 2) % m]);
                let e = g.insert_edge(Slot::Before(di), Slot::Before(di2), W::zero(), true);
                // Triangle (d_i, d_{i+1}, 2e+1) splits off; 2e replaces the
                // two darts in the remaining face.
                let i1 = (i + 1) % m;
                let mut rest = Vec::with_capacity(m - 1);
                for (j, &d) in cyc.iter().enumerate() {
                    if j == i {
                        rest.push(2 * e);
                    } else if j != i1 {
                        rest.push(d);
                    }
                }
                cyc = rest;
            }
        }
        g
    }
}

pub struct DartsAround<'a, W> {
    g: &'a EmbeddedGraph<W>,
    start: Option<DartId>,
    cur: Option<DartId>,
}

impl<W> Iterator for DartsAround<'_, W> {
    type Item = DartId;
    fn next(&mut self) -> Option<DartId> {
        let d = self.cur?;
        let n = self.g.next[d];
        self.cur = if Some(n) == self.start { None } else { Some(n) };
        Some(d)
    }
}

#[derive(Clone, Debug)]
pub struct FaceStructure {
    /// Each face as its cyclic dart sequence.
    pub faces: Vec<Vec<DartId>>,
    pub face_of: Vec<usize>,
}

impl FaceStructure {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Dual of an embedded graph. Dual vertex `f` is primal face `f`; dual edge
/// ids equal primal edge ids, and `graph.capacity(e)` is the dual length.
#[derive(Clone, Debug)]
pub struct DualGraph<W> {
    pub graph: EmbeddedGraph<W>,
    /// Faces of the primal (= vertices of the dual).
    pub primal_faces: FaceStructure,
    /// Faces of the dual (= vertices of the primal).
    pub dual_faces: FaceStructure,
    /// Primal vertex -> dual face id.
    pub vertex_face: Vec<usize>,
}

impl<W: Scalar> DualGraph<W> {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn length(&self, e: EdgeId) -> W {
        self.graph.capacity(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> EmbeddedGraph<i64> {
        EmbeddedGraph::build(
            3,
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1)],
            &[vec![0, 2], vec![1, 0], vec![2, 1]],
        )
        .unwrap()
    }

    #[test]
    fn triangle_counts() {
        let g = triangle();
        assert_eq!(g.dart_count(), 6);
        assert_eq!(g.faces().len(), 2);
        g.validate().unwrap();
    }

    #[test]
    fn single_edge() {
        let g = EmbeddedGraph::build(2, &[(0, 1, 5i64)], &[vec![0], vec![0]]).unwrap();
        assert_eq!(g.dart_count(), 2);
        assert_eq!(g.faces().len(), 1);
        let d = g.dual();
        assert_eq!(d.vertex_count(), 1);
        assert_eq!(d.graph.endpoints(0), (0, 0));
        assert_eq!(d.length(0), 5);
    }

    #[test]
    fn triangle_dual_is_three_parallel_edges() {
        let d = triangle().dual();
        assert_eq!(d.vertex_count(), 2);
        for e in 0..3 {
            let (a, b) = d.graph.endpoints(e);
            assert_ne!(a, b);
            assert_eq!(d.length(e), 1);
        }
        d.graph.validate().unwrap();
    }

    #[test]
    fn build_errors() {
        let r = EmbeddedGraph::build(2, &[(0, 1, 1i64)], &[vec![0], vec![]]);
        assert!(matches!(r, Err(GraphError::MissingFromRotation { edge: 0, vertex: 1 })));
        let r = EmbeddedGraph::build(2, &[(0, 1, 1i64)], &[vec![0, 3], vec![0]]);
        assert!(matches!(r, Err(GraphError::UnknownEdge { .. })));
        let r = EmbeddedGraph::build(2, &[(0, 1, -1i64)], &[vec![0], vec![0]]);
        assert!(matches!(r, Err(GraphError::NegativeCapacity { edge: 0 })));
        let r = EmbeddedGraph::build(
            4,
            &[(0, 1, 1i64), (2, 3, 1)],
            &[vec![0], vec![0], vec![1], vec![1]],
        );
        assert!(matches!(r, Err(GraphError::Disconnected)));
    }

    #[test]
    fn insert_and_remove_roundtrip() {
        let mut g = triangle();
        let faces = g.faces();
        let (d0, d2) = (faces.faces[0][0], faces.faces[0][2]);
        let before = faces.len();
        let e = g.insert_edge(Slot::Before(d0), Slot::Before(d2), 0, true);
        assert_eq!(g.edge_count(), 4);
        // Chord between adjacent vertices of a triangle gives a digon face.
        assert_eq!(g.euler_characteristic(), 2);
        assert_eq!(g.faces().len(), before + 1);
        assert_eq!(g.remove_edge(e), None);
        g.validate().unwrap();
        let moved = g.remove_edge(0);
        assert_eq!(moved, Some(2));
        assert_eq!(g.edge_count(), 2);
        g.validate().unwrap();
    }
}
