//! Cutting a plane graph open along a path, separating shortest paths and the
//! divide-and-conquer minimum cut-cycle search.
//!
//! Everything here works on an arbitrary embedded graph `H` in which two
//! faces play the role of the terminals (for the plain min-cut problem `H` is
//! the dual and the terminal faces are the primal vertices `s` and `t`). A
//! closed walk in `H` is a *cut-cycle* when its odd-multiplicity edges put
//! the two terminal faces on opposite sides.
//!
//! A path `f_1 .. f_k` carries two *slots*: the corner of `f_1` that lies in
//! the source face and the corner of `f_k` that lies in the sink face. Slot
//! `x` (a dart of `H`) denotes the corner immediately before `x` in the
//! rotation of `origin(x)`, which lies in `face_of(x)`.

use std::collections::{BinaryHeap, VecDeque};

use crate::embedding::{edge_of, twin, DartId, EdgeId, EmbeddedGraph, FaceStructure, VertexId};
use crate::error::CutError;
use crate::scalar::{Dist, MinKey, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPath {
    /// `f_1 .. f_k`.
    pub faces: Vec<VertexId>,
    /// `k - 1` darts; `darts[j]` goes from `faces[j]` to `faces[j + 1]`.
    pub darts: Vec<DartId>,
    /// Dart at `f_1` whose preceding corner lies in the source face.
    pub s_slot: DartId,
    /// Dart at `f_k` whose preceding corner lies in the sink face.
    pub t_slot: DartId,
}

impl DualPath {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Checks head-to-tail consistency and slot placement against `h`.
    pub fn check<W: Scalar>(&self, h: &EmbeddedGraph<W>) -> Result<(), CutError> {
        let k = self.faces.len();
        if k == 0 || self.darts.len() + 1 != k {
            return Err(CutError::NoPath);
        }
        for (j, &d) in self.darts.iter().enumerate() {
            if h.origin(d) != self.faces[j] || h.head(d) != self.faces[j + 1] {
                return Err(CutError::NotOnPath(d));
            }
        }
        if h.origin(self.s_slot) != self.faces[0] {
            return Err(CutError::NotOnPath(self.s_slot));
        }
        if h.origin(self.t_slot) != self.faces[k - 1] {
            return Err(CutError::NotOnPath(self.t_slot));
        }
        Ok(())
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.faces.iter().all(|f| seen.insert(*f))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Incidence {
    Above,
    Below,
    OnPath,
}

/// Rotation position codes: dart at rotation index `q` is `2q + 1`, the
/// corner before it is `2q`.
fn codes_at<W: Scalar>(h: &EmbeddedGraph<W>, v: VertexId) -> Vec<DartId> {
    h.darts_around(v).collect()
}

fn in_open_interval(x: usize, lo: usize, hi: usize, modulus: usize) -> bool {
    let a = (x + modulus - lo) % modulus;
    let b = (hi + modulus - lo) % modulus;
    a > 0 && a < b
}

/// Per-dart above/below classification along a simple path.
#[derive(Clone, Debug)]
pub struct PathSides {
    /// 1-based path index of each vertex, 0 if off the path.
    pub index_of: Vec<usize>,
    /// Incidence of each dart whose origin lies on the path.
    pub incidence: Vec<Option<Incidence>>,
}

impl PathSides {
    pub fn new<W: Scalar>(h: &EmbeddedGraph<W>, pi: &DualPath) -> Result<Self, CutError> {
        pi.check(h)?;
        if !pi.is_simple() {
            let dup = first_repeat(&pi.faces);
            return Err(CutError::NotSimple(dup));
        }
        let k = pi.faces.len();
        let mut index_of = vec![0; h.vertex_count()];
        let mut incidence = vec![None; h.dart_count()];
        for (j, &f) in pi.faces.iter().enumerate() {
            index_of[f] = j + 1;
            let rot = codes_at(h, f);
            let code = |d: DartId, slot: bool| {
                let q = rot.iter().position(|&x| x == d).expect("dart at vertex");
                if slot {
                    2 * q
                } else {
                    2 * q + 1
                }
            };
            let inc = if j == 0 { code(pi.s_slot, true) } else { code(twin(pi.darts[j - 1]), false) };
            let out = if j + 1 == k { code(pi.t_slot, true) } else { code(pi.darts[j], false) };
            let modulus = 2 * rot.len();
            for (q, &d) in rot.iter().enumerate() {
                let c = 2 * q + 1;
                incidence[d] = Some(if c == inc || c == out {
                    Incidence::OnPath
                } else if in_open_interval(c, out, inc, modulus) {
                    Incidence::Above
                } else {
                    Incidence::Below
                });
            }
        }
        Ok(PathSides { index_of, incidence })
    }

    /// Sheet-change bit of a dart in the two-sheeted lift.
    pub fn bit(&self, d: DartId) -> bool {
        self.incidence[d] == Some(Incidence::Above)
    }

    /// Whether traversing `d` switches sheets.
    pub fn flip(&self, d: DartId) -> bool {
        self.bit(d) ^ self.bit(twin(d))
    }
}

fn first_repeat(xs: &[usize]) -> usize {
    let mut seen = std::collections::HashSet::new();
    *xs.iter().find(|x| !seen.insert(**x)).unwrap_or(&0)
}

/// Classifies dart `d` (whose origin must lie on the path).
pub fn classify_incidence<W: Scalar>(
    h: &EmbeddedGraph<W>,
    pi: &DualPath,
    d: DartId,
) -> Result<Incidence, CutError> {
    if d >= h.dart_count() {
        return Err(CutError::NotOnPath(d));
    }
    PathSides::new(h, pi)?.incidence[d].ok_or(CutError::NotOnPath(d))
}

/// Hop-count BFS path from a corner of face `face_s` to a corner of face
/// `face_t` of `h`. Ties resolve towards smaller dart ids.
pub fn find_connecting_path<W: Scalar>(
    h: &EmbeddedGraph<W>,
    faces: &FaceStructure,
    face_s: usize,
    face_t: usize,
) -> Result<DualPath, CutError> {
    if face_s == face_t {
        return Err(CutError::SameEndpoints);
    }
    let n = h.vertex_count();
    // corner_s[v]: smallest dart at v whose preceding corner is in face_s.
    let mut corner_s = vec![usize::MAX; n];
    let mut corner_t = vec![usize::MAX; n];
    for &d in &faces.faces[face_s] {
        let v = h.origin(d);
        corner_s[v] = corner_s[v].min(d);
    }
    for &d in &faces.faces[face_t] {
        let v = h.origin(d);
        corner_t[v] = corner_t[v].min(d);
    }
    let mut pred = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut starts: Vec<VertexId> = (0..n).filter(|&v| corner_s[v] != usize::MAX).collect();
    starts.sort_by_key(|&v| corner_s[v]);
    for v in starts {
        seen[v] = true;
        queue.push_back(v);
    }
    let mut end = None;
    while let Some(v) = queue.pop_front() {
        if corner_t[v] != usize::MAX {
            end = Some(v);
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
    let end = end.ok_or(CutError::NoPath)?;
    let mut darts = Vec::new();
    let mut v = end;
    while pred[v] != usize::MAX {
        darts.push(pred[v]);
        v = h.origin(pred[v]);
    }
    darts.reverse();
    let mut fs = vec![v];
    fs.extend(darts.iter().map(|&d| h.head(d)));
    Ok(DualPath { s_slot: corner_s[v], t_slot: corner_t[end], faces: fs, darts })
}

/// Path in the dual of a primal graph between the faces around `s` and `t`.
pub fn terminal_path<W: Scalar>(
    dual: &crate::embedding::DualGraph<W>,
    s: VertexId,
    t: VertexId,
) -> Result<DualPath, CutError> {
    if s == t {
        return Err(CutError::SameEndpoints);
    }
    let nv = dual.vertex_face.len();
    if s >= nv {
        return Err(CutError::UnknownVertex(s));
    }
    if t >= nv {
        return Err(CutError::UnknownVertex(t));
    }
    find_connecting_path(&dual.graph, &dual.dual_faces, dual.vertex_face[s], dual.vertex_face[t])
}

/// Splits every vertex where `pi` touches itself, joining each split-off
/// copy to the original by a zero-length (synthetic) edge. Returns the new
/// graph, the now simple path, and for each new vertex the vertex it was
/// split from (identity on old vertices). Dart ids of old edges are kept.
pub fn simplify_noncrossing<W: Scalar>(
    h: &EmbeddedGraph<W>,
    pi: &DualPath,
) -> Result<(EmbeddedGraph<W>, DualPath, Vec<VertexId>), CutError> {
    pi.check(h)?;
    let mut rots: Vec<Vec<DartId>> = (0..h.vertex_count()).map(|v| codes_at(h, v)).collect();
    let mut caps: Vec<W> = h.capacities().to_vec();
    let mut synth: Vec<bool> = (0..h.edge_count()).map(|e| h.is_synthetic(e)).collect();
    let mut from: Vec<VertexId> = (0..h.vertex_count()).collect();
    let mut path = pi.clone();
    let k = path.faces.len();
    loop {
        let mut visits: std::collections::HashMap<VertexId, Vec<usize>> = Default::default();
        for (j, &f) in path.faces.iter().enumerate() {
            visits.entry(f).or_default().push(j);
        }
        let Some(v) = visits.iter().filter(|(_, js)| js.len() > 1).map(|(v, _)| *v).min() else {
            break;
        };
        let rot = rots[v].clone();
        let pos = |d: DartId| rot.iter().position(|&x| x == d).expect("dart at vertex");
        // (code, visit j) for both ends of every visit.
        let mut marks = Vec::new();
        for &j in &visits[&v] {
            let inc = if j == 0 { 2 * pos(path.s_slot) } else { 2 * pos(twin(path.darts[j - 1])) + 1 };
            let out = if j + 1 == k { 2 * pos(path.t_slot) } else { 2 * pos(path.darts[j]) + 1 };
            if inc == out {
                return Err(CutError::NotSimple(v));
            }
            marks.push((inc, j));
            marks.push((out, j));
        }
        marks.sort_unstable();
        if !well_nested(&marks) {
            return Err(CutError::SelfCrossing(v));
        }
        // A visit whose two marks are cyclically adjacent; move the arc
        // between them (clockwise from the first to the second).
        let m = marks.len();
        let i = (0..m).find(|&i| marks[i].1 == marks[(i + 1) % m].1).expect("nested pair");
        let (a, b, j) = (marks[i].0, marks[(i + 1) % m].0, marks[i].1);
        let modulus = 2 * rot.len();
        let mut arc = Vec::new();
        let mut c = a;
        loop {
            if c % 2 == 1 {
                arc.push(rot[c / 2]);
            }
            if c == b {
                break;
            }
            c = (c + 1) % modulus;
        }
        let e = caps.len();
        caps.push(W::zero());
        synth.push(true);
        let (zv, zn) = (2 * e, 2 * e + 1);
        let nv = rots.len();
        let first_idx = rot.iter().position(|&x| x == arc[0]).expect("arc start");
        let mut keep = Vec::new();
        let mut placed = false;
        for q in 0..rot.len() {
            let d = rot[(first_idx + q) % rot.len()];
            if arc.contains(&d) {
                if !placed {
                    keep.push(zv);
                    placed = true;
                }
            } else {
                keep.push(d);
            }
        }
        let mut moved = arc.clone();
        moved.push(zn);
        rots[v] = keep;
        rots.push(moved);
        from.push(from[v]);
        // Retarget slots.
        // A slot of the moved visit either precedes the first arc dart (and
        // moves along) or marks the arc end, which at the new vertex is the
        // corner before the zero dart. A staying slot before the first arc
        // dart now precedes the zero dart at `v`.
        let retarget = |jj: usize, slot: DartId| -> DartId {
            if jj == j {
                if 2 * pos(slot) == b {
                    zn
                } else {
                    slot
                }
            } else if arc[0] == slot {
                zv
            } else {
                slot
            }
        };
        if path.faces[0] == v {
            path.s_slot = retarget(0, path.s_slot);
        }
        if path.faces[k - 1] == v {
            path.t_slot = retarget(k - 1, path.t_slot);
        }
        path.faces[j] = nv;
    }
    let g = EmbeddedGraph::from_dart_rotations(&rots, caps, synth)?;
    path.check(&g)?;
    Ok((g, path, from))
}

fn well_nested(marks: &[(usize, usize)]) -> bool {
    let mut stack: Vec<usize> = Vec::new();
    for &(_, j) in marks {
        if stack.last() == Some(&j) {
            stack.pop();
        } else {
            stack.push(j);
        }
    }
    // Cyclic sequence: whatever remains must cancel against itself from the
    // two ends (a rotation of a nested sequence).
    let (mut lo, mut hi) = (0usize, stack.len());
    while lo < hi && hi - lo >= 2 && stack[lo] == stack[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    lo == hi
}

/// The cut-open graph: two sheets of `H` glued crosswise along the path.
/// Vertex `v + c * n` is copy `c` of `v`; edge `e + c * m` is copy `c` of
/// edge `e`. Copy 1 of `f_i` is the primed vertex `f_i'`.
#[derive(Clone, Debug)]
pub struct CutGraph<W> {
    pub graph: EmbeddedGraph<W>,
    pub base_vertices: usize,
    pub base_edges: usize,
    /// `(f_i, f_i')` vertex ids for `i = 1..k`.
    pub path_pairs: Vec<(VertexId, VertexId)>,
}

impl<W: Scalar> CutGraph<W> {
    /// `(vertex of H, copy tag)`.
    pub fn orig_vertex(&self, v: VertexId) -> (VertexId, u8) {
        (v % self.base_vertices, (v / self.base_vertices) as u8)
    }

    pub fn orig_edge(&self, e: EdgeId) -> (EdgeId, u8) {
        (e % self.base_edges, (e / self.base_edges) as u8)
    }

    /// The dart of `H` a cut-graph dart projects to.
    pub fn orig_dart(&self, d: DartId) -> DartId {
        2 * (edge_of(d) % self.base_edges) + (d & 1)
    }
}

/// Builds the cut-open graph of `h` along the simple path `pi`.
pub fn cut_along_path<W: Scalar>(h: &EmbeddedGraph<W>, pi: &DualPath) -> Result<CutGraph<W>, CutError> {
    let sides = PathSides::new(h, pi)?;
    let (n, m) = (h.vertex_count(), h.edge_count());
    let lift = |d: DartId, c: usize| 2 * (edge_of(d) + c * m) + (d & 1);
    // Both sheets keep the orientation of `H`; at `(v, c)` every dart of `v`
    // appears in its original position, taken from the copy whose sheet
    // bit puts it there.
    let mut rots: Vec<Vec<DartId>> = vec![Vec::new(); 2 * n];
    for v in 0..n {
        for c in 0..2 {
            rots[v + c * n] = h.darts_around(v).map(|d| lift(d, c ^ sides.bit(d) as usize)).collect();
        }
    }
    let caps: Vec<W> = h.capacities().iter().chain(h.capacities()).copied().collect();
    let synth: Vec<bool> = (0..2 * m).map(|e| h.is_synthetic(e % m)).collect();
    let graph = EmbeddedGraph::from_dart_rotations(&rots, caps, synth)?;
    let path_pairs = pi.faces.iter().map(|&f| (f, f + n)).collect();
    Ok(CutGraph { graph, base_vertices: n, base_edges: m, path_pairs })
}

/// Lexicographic (cost, hops, smallest dart) Dijkstra between two vertices
/// of a graph given by a neighbour callback. Returns the cost and the darts
/// of the path.
fn lex_dijkstra<W: Scalar>(
    states: usize,
    source: usize,
    target: usize,
    mut neighbours: impl FnMut(usize, &mut Vec<(usize, W, DartId)>),
) -> Option<(W, Vec<DartId>)> {
    let mut best: Vec<Option<(W, usize)>> = vec![None; states];
    let mut pred: Vec<(usize, DartId)> = vec![(usize::MAX, usize::MAX); states];
    let mut done = vec![false; states];
    let mut heap = BinaryHeap::new();
    best[source] = Some((W::zero(), 0));
    heap.push(MinKey(W::zero(), (0usize, source)));
    let mut buf = Vec::new();
    while let Some(MinKey(d, (hops, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == target {
            let mut darts = Vec::new();
            let mut x = u;
            while x != source {
                let (p, dart) = pred[x];
                darts.push(dart);
                x = p;
            }
            darts.reverse();
            return Some((d, darts));
        }
        buf.clear();
        neighbours(u, &mut buf);
        for &(w, len, dart) in &buf {
            if done[w] {
                continue;
            }
            let cand = (d + len, hops + 1);
            let better = match best[w] {
                None => true,
                Some((bw, bh)) => match cand.0.total_cmp(&bw) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => cand.1 < bh || (cand.1 == bh && dart < pred[w].1),
                },
            };
            if better {
                best[w] = Some(cand);
                pred[w] = (u, dart);
                heap.push(MinKey(cand.0, (cand.1, w)));
            }
        }
    }
    None
}

/// Shortest `f_i` to `f_i'` path in the cut graph avoiding `f_j, f_j'` for
/// `j > i` (1-based `i`). Returns `Dist::Inf` and an empty path if none.
pub fn separating_shortest_path<W: Scalar>(
    cg: &CutGraph<W>,
    i: usize,
) -> Result<(Dist<W>, Vec<DartId>), CutError> {
    let k = cg.path_pairs.len();
    if i == 0 || i > k {
        return Err(CutError::IndexOutOfRange { index: i, k });
    }
    let g = &cg.graph;
    let mut removed = vec![false; g.vertex_count()];
    for &(a, b) in &cg.path_pairs[i..] {
        removed[a] = true;
        removed[b] = true;
    }
    let (src, dst) = cg.path_pairs[i - 1];
    let res = lex_dijkstra(g.vertex_count(), src, dst, |u, out| {
        for d in g.darts_around(u) {
            let w = g.head(d);
            if !removed[w] {
                out.push((w, g.length(d), d));
            }
        }
    });
    Ok(match res {
        Some((c, p)) => (Dist::Finite(c), p),
        None => (Dist::Inf, Vec::new()),
    })
}

/// A closed walk in `H` (darts of `H`), its cost and its path index.
#[derive(Clone, Debug, PartialEq)]
pub struct CutCycle<W> {
    pub darts: Vec<DartId>,
    pub cost: W,
    pub anchor: usize,
}

impl<W: Scalar> CutCycle<W> {
    /// Edges used an odd number of times: the primal cut edges.
    pub fn odd_edges(&self) -> Vec<EdgeId> {
        let mut count = std::collections::BTreeMap::new();
        for &d in &self.darts {
            *count.entry(edge_of(d)).or_insert(0usize) += 1;
        }
        count.into_iter().filter(|&(_, c)| c % 2 == 1).map(|(e, _)| e).collect()
    }

    pub fn is_closed<W2: Scalar>(&self, h: &EmbeddedGraph<W2>) -> bool {
        !self.darts.is_empty()
            && (0..self.darts.len())
                .all(|j| h.head(self.darts[j]) == h.origin(self.darts[(j + 1) % self.darts.len()]))
    }
}

/// Face parity of a set of odd edges: `true` for faces on the same side as
/// `face_s`. Faces unreachable from `face_s` (cannot happen in a connected
/// graph) count as not on the source side.
pub fn source_side_faces<W: Scalar>(
    h: &EmbeddedGraph<W>,
    faces: &FaceStructure,
    odd_edges: &[EdgeId],
    face_s: usize,
) -> Vec<bool> {
    let mut odd = vec![false; h.edge_count()];
    for &e in odd_edges {
        odd[e] = !odd[e];
    }
    let mut adj = vec![Vec::new(); faces.len()];
    for e in 0..h.edge_count() {
        let (fa, fb) = (faces.face_of[2 * e], faces.face_of[2 * e + 1]);
        adj[fa].push((fb, odd[e]));
        adj[fb].push((fa, odd[e]));
    }
    let mut side = vec![u8::MAX; faces.len()];
    side[face_s] = 0;
    let mut stack = vec![face_s];
    while let Some(f) = stack.pop() {
        for &(g, o) in &adj[f] {
            if side[g] == u8::MAX {
                side[g] = side[f] ^ o as u8;
                stack.push(g);
            }
        }
    }
    side.into_iter().map(|s| s == 0).collect()
}

/// The two-sheeted lift of `H` along a path, searched implicitly (no
/// explicit cut graph) with optional vertex/edge masks.
pub struct Lift<'a, W> {
    pub h: &'a EmbeddedGraph<W>,
    pub sides: PathSides,
    pub path: &'a DualPath,
}

impl<'a, W: Scalar> Lift<'a, W> {
    pub fn new(h: &'a EmbeddedGraph<W>, path: &'a DualPath) -> Result<Self, CutError> {
        Ok(Lift { h, sides: PathSides::new(h, path)?, path })
    }

    /// Minimum `f_i`-cut-cycle using only allowed vertices and edges.
    pub fn min_cycle(&self, i: usize, vmask: Option<&[bool]>, emask: Option<&[bool]>) -> Option<CutCycle<W>> {
        let h = self.h;
        let f = self.path.faces[i - 1];
        if vmask.is_some_and(|m| !m[f]) {
            return None;
        }
        let idx = &self.sides.index_of;
        let (c, darts) = lex_dijkstra(2 * h.vertex_count(), 2 * f, 2 * f + 1, |u, out| {
            let (v, c) = (u / 2, u % 2);
            for d in h.darts_around(v) {
                let w = h.head(d);
                if idx[w] > i || vmask.is_some_and(|m| !m[w]) || emask.is_some_and(|m| !m[edge_of(d)]) {
                    continue;
                }
                let cw = c ^ self.sides.flip(d) as usize;
                out.push((2 * w + cw, h.length(d), d));
            }
        })?;
        Some(CutCycle { darts, cost: c, anchor: i })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Inside,
    Outside,
    On,
}

/// Result of the divide-and-conquer search.
#[derive(Clone, Debug)]
pub struct ReifResult<W> {
    pub value: Dist<W>,
    pub best: Option<CutCycle<W>>,
    /// Per path index (0-based slot `i - 1`): the cycle found for `f_i`
    /// inside its part, if any.
    pub cycles: Vec<Option<CutCycle<W>>>,
    /// Total part vertex count per recursion level.
    pub level_sizes: Vec<usize>,
}

/// Divide and conquer over the path: find a minimum `f_mid`-cut-cycle,
/// split into its interior (for smaller indices) and exterior (for larger
/// ones), recurse. `face_s` is the source terminal face of `h`.
pub fn reif_search<W: Scalar>(h: &EmbeddedGraph<W>, pi: &DualPath) -> Result<ReifResult<W>, CutError> {
    let lift = Lift::new(h, pi)?;
    divide_and_conquer(
        h,
        pi,
        |i, vm, em| Ok(lift.min_cycle(i, Some(vm), Some(em))),
        |vm, _| vm.iter().filter(|&&x| x).count(),
    )
}

/// The recursion of [`reif_search`] with a pluggable per-part cycle search
/// and per-part size measure.
pub fn divide_and_conquer<W, F, M>(
    h: &EmbeddedGraph<W>,
    pi: &DualPath,
    mut min_cycle: F,
    mut measure: M,
) -> Result<ReifResult<W>, CutError>
where
    W: Scalar,
    F: FnMut(usize, &[bool], &[bool]) -> Result<Option<CutCycle<W>>, CutError>,
    M: FnMut(&[bool], &[bool]) -> usize,
{
    pi.check(h)?;
    let faces = h.faces();
    let face_s = faces.face_of[pi.s_slot];
    let face_t = faces.face_of[pi.t_slot];
    if face_s == face_t {
        return Err(CutError::SameEndpoints);
    }
    let k = pi.faces.len();
    let mut res = ReifResult {
        value: Dist::Inf,
        best: None,
        cycles: vec![None; k],
        level_sizes: Vec::new(),
    };
    let vmask = vec![true; h.vertex_count()];
    let emask = vec![true; h.edge_count()];
    // Work list of (lo, hi, depth, masks); indices lo < i < hi are open.
    let mut stack = vec![(0usize, k + 1, 0usize, vmask, emask)];
    while let Some((lo, hi, depth, vm, em)) = stack.pop() {
        if lo + 1 >= hi {
            continue;
        }
        if res.level_sizes.len() <= depth {
            res.level_sizes.resize(depth + 1, 0);
        }
        res.level_sizes[depth] += measure(&vm, &em);
        let mid = (lo + hi) / 2;
        let Some(cycle) = min_cycle(mid, &vm, &em)? else {
            stack.push((lo, mid, depth + 1, vm.clone(), em.clone()));
            stack.push((mid, hi, depth + 1, vm, em));
            continue;
        };
        let side_faces = source_side_faces(h, &faces, &cycle.odd_edges(), face_s);
        debug_assert!(!side_faces[face_t], "cycle does not separate the terminals");
        let mut on_cycle = vec![false; h.vertex_count()];
        for &d in &cycle.darts {
            on_cycle[h.origin(d)] = true;
        }
        let side = |v: VertexId| -> Side {
            if on_cycle[v] {
                return Side::On;
            }
            let mut ins = false;
            let mut outs = false;
            for d in h.darts_around(v) {
                if side_faces[faces.face_of[d]] {
                    ins = true;
                } else {
                    outs = true;
                }
            }
            match (ins, outs) {
                (true, false) => Side::Inside,
                (false, true) => Side::Outside,
                _ => Side::On,
            }
        };
        let sides: Vec<Side> = (0..h.vertex_count()).map(|v| if vm[v] { side(v) } else { Side::Outside }).collect();
        let mut vin = vm.clone();
        let mut vout = vm;
        for v in 0..h.vertex_count() {
            match sides[v] {
                Side::Inside => vout[v] = false,
                Side::Outside => vin[v] = false,
                Side::On => {}
            }
        }
        let mut ein = em.clone();
        let mut eout = em;
        for e in 0..h.edge_count() {
            let (a, b) = (side_faces[faces.face_of[2 * e]], side_faces[faces.face_of[2 * e + 1]]);
            if a && b {
                eout[e] = false;
            }
            if !a && !b {
                ein[e] = false;
            }
        }
        if Dist::Finite(cycle.cost) < res.value {
            res.value = Dist::Finite(cycle.cost);
            res.best = Some(cycle.clone());
        }
        res.cycles[mid - 1] = Some(cycle);
        stack.push((mid, hi, depth + 1, vout, eout));
        stack.push((lo, mid, depth + 1, vin, ein));
    }
    Ok(res)
}

/// Minimum cut-cycle of `h` between the terminal faces of `pi`.
pub fn reif_mincut<W: Scalar>(h: &EmbeddedGraph<W>, pi: &DualPath) -> Result<(Dist<W>, Option<CutCycle<W>>), CutError> {
    let r = reif_search(h, pi)?;
    Ok((r.value, r.best))
}

/// Minimum `f_i`-cut-cycle for every `i`, each computed on the whole lift.
pub fn all_min_cycles<W: Scalar>(h: &EmbeddedGraph<W>, pi: &DualPath) -> Result<Vec<Option<CutCycle<W>>>, CutError> {
    let lift = Lift::new(h, pi)?;
    Ok((1..=pi.faces.len()).map(|i| lift.min_cycle(i, None, None)).collect())
}

/// Minimum `f_i`-cut-cycle for every `i` via the divide and conquer; indices
/// whose vertex fell outside their part are searched on the whole lift.
pub fn all_cut_cycles<W: Scalar>(h: &EmbeddedGraph<W>, pi: &DualPath) -> Result<Vec<Option<CutCycle<W>>>, CutError> {
    let mut r = reif_search(h, pi)?;
    let lift = Lift::new(h, pi)?;
    for (i, c) in r.cycles.iter_mut().enumerate() {
        if c.is_none() {
            *c = lift.min_cycle(i + 1, None, None);
        }
    }
    Ok(r.cycles)
}

/// s-t min cut of a primal graph by divide and conquer in its dual.
pub fn primal_reif_mincut<W: Scalar>(
    g: &EmbeddedGraph<W>,
    s: VertexId,
    t: VertexId,
) -> Result<(W, Vec<EdgeId>), CutError> {
    let dual = g.dual();
    let pi = terminal_path(&dual, s, t)?;
    let (v, c) = reif_mincut(&dual.graph, &pi)?;
    let v = v.finite().ok_or(CutError::NoPath)?;
    Ok((v, c.map(|c| c.odd_edges()).unwrap_or_default()))
}
