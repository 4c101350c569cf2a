//! Seeded instance generators: grids, wheels and random maximal planar
//! graphs, with unit or uniform integer capacities.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{DartId, EmbeddedGraph, Slot, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapDist {
    Unit,
    /// Uniform integer in `lo..=hi`.
    Uniform(i64, i64),
}

impl CapDist {
    fn sample(self, rng: &mut impl Rng) -> i64 {
        match self {
            CapDist::Unit => 1,
            CapDist::Uniform(lo, hi) => rng.gen_range(lo..=hi),
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `w x h` grid. Vertex `(x, y)` has id `y * w + x`; rotations go east,
/// south, west, north.
pub fn grid(w: usize, h: usize, caps: CapDist, seed: u64) -> EmbeddedGraph<i64> {
    assert!(w * h >= 2, "grid needs at least two vertices");
    let mut rng = rng_from_seed(seed);
    let id = |x: usize, y: usize| y * w + x;
    let mut edges = Vec::new();
    let mut east = vec![None; w * h];
    let mut south = vec![None; w * h];
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                east[id(x, y)] = Some(edges.len());
                edges.push((id(x, y), id(x + 1, y), caps.sample(&mut rng)));
            }
            if y + 1 < h {
                south[id(x, y)] = Some(edges.len());
                edges.push((id(x, y), id(x, y + 1), caps.sample(&mut rng)));
            }
        }
    }
    let mut rot = vec![Vec::new(); w * h];
    for y in 0..h {
        for x in 0..w {
            let v = id(x, y);
            let west = (x > 0).then(|| east[id(x - 1, y)]).flatten();
            let north = (y > 0).then(|| south[id(x, y - 1)]).flatten();
            rot[v] = [east[v], south[v], west, north].into_iter().flatten().collect();
        }
    }
    EmbeddedGraph::build(w * h, &edges, &rot).expect("grid is a valid embedding")
}

/// Wheel with hub `0` and rim `1..=n`.
pub fn wheel(n: usize, caps: CapDist, seed: u64) -> EmbeddedGraph<i64> {
    assert!(n >= 3, "wheel needs at least three rim vertices");
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.push((0, i, caps.sample(&mut rng)));
    }
    for i in 1..=n {
        edges.push((i, i % n + 1, caps.sample(&mut rng)));
    }
    let spoke = |i: usize| i - 1;
    let rim_out = |i: usize| n + i - 1;
    let rim_in = |i: usize| if i == 1 { 2 * n - 1 } else { n + i - 2 };
    let mut rot = vec![(1..=n).map(spoke).collect::<Vec<_>>()];
    for i in 1..=n {
        rot.push(vec![spoke(i), rim_in(i), rim_out(i)]);
    }
    EmbeddedGraph::build(n + 1, &edges, &rot).expect("wheel is a valid embedding")
}

/// Dart on the face of `d` leaving `v`, i.e. the corner of that face at `v`.
pub fn corner_on_face<W>(g: &EmbeddedGraph<W>, d: DartId, v: VertexId) -> Option<DartId>
where
    W: crate::Scalar,
{
    let mut x = d;
    loop {
        if g.origin(x) == v {
            return Some(x);
        }
        x = g.next_on_face(x);
        if x == d {
            return None;
        }
    }
}

/// Random maximal planar graph on `n >= 3` vertices: start from a triangle
/// and repeatedly put a new vertex into a uniformly chosen face, joined to
/// its three corners.
pub fn random_maximal_planar(n: usize, caps: CapDist, seed: u64) -> EmbeddedGraph<i64> {
    assert!(n >= 3, "need at least three vertices");
    let mut rng = rng_from_seed(seed);
    let mut g = EmbeddedGraph::build(
        3,
        &[
            (0, 1, caps.sample(&mut rng)),
            (1, 2, caps.sample(&mut rng)),
            (2, 0, caps.sample(&mut rng)),
        ],
        &[vec![0, 2], vec![1, 0], vec![2, 1]],
    )
    .expect("triangle");
    // One representative dart per triangular face.
    let mut faces: Vec<DartId> = g.faces().faces.iter().map(|f| f[0]).collect();
    for _ in 3..n {
        let k = rng.gen_range(0..faces.len());
        let d0 = faces[k];
        let d1 = g.next_on_face(d0);
        let d2 = g.next_on_face(d1);
        let (a, b, c) = (g.origin(d0), g.origin(d1), g.origin(d2));
        let x = g.add_vertex();
        let ea = g.insert_edge(Slot::Before(d0), Slot::Empty(x), caps.sample(&mut rng), false);
        let xb = corner_on_face(&g, d1, x).expect("x on face");
        let eb = g.insert_edge(Slot::Before(d1), Slot::Before(xb), caps.sample(&mut rng), false);
        let xc = corner_on_face(&g, d2, x).expect("x on face");
        let ec = g.insert_edge(Slot::Before(d2), Slot::Before(xc), caps.sample(&mut rng), false);
        debug_assert_eq!(g.endpoints(ea), (a, x));
        debug_assert_eq!(g.endpoints(eb), (b, x));
        debug_assert_eq!(g.endpoints(ec), (c, x));
        faces[k] = d0;
        faces.push(d1);
        faces.push(d2);
    }
    debug_assert!(g.validate().is_ok());
    g
}

/// Random connected planar graph: a random maximal planar graph with a
/// fraction of non-bridge edges removed, so faces of mixed sizes appear.
pub fn random_planar(n: usize, drop: f64, caps: CapDist, seed: u64) -> EmbeddedGraph<i64> {
    let mut g = random_maximal_planar(n, caps, seed);
    let mut rng = rng_from_seed(seed ^ 0x9e37_79b9_7f4a_7c15);
    let target = ((g.edge_count() as f64) * drop) as usize;
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(&mut rng);
    let mut removed = 0;
    // Track edges by endpoints since removal renumbers.
    let pairs: Vec<(usize, usize)> = order.iter().map(|&e| g.endpoints(e)).collect();
    for (u, v) in pairs {
        if removed >= target {
            break;
        }
        let Some(e) = g.find_edge(u, v) else { continue };
        let faces = g.faces();
        if faces.face_of[2 * e] == faces.face_of[2 * e + 1] {
            continue; // bridge
        }
        g.remove_edge(e);
        removed += 1;
    }
    g
}

/// Random connected plane multigraph: a random tree on `n` vertices plus
/// `extra` edges, each joining two random corners of one random face. Loops,
/// parallel edges and bridges all occur.
pub fn random_multigraph(n: usize, extra: usize, caps: CapDist, seed: u64) -> EmbeddedGraph<i64> {
    assert!(n >= 2, "need at least two vertices");
    let mut rng = rng_from_seed(seed);
    let mut g = EmbeddedGraph::with_vertices(2);
    g.insert_edge(Slot::Empty(0), Slot::Empty(1), caps.sample(&mut rng), false);
    for _ in 2..n {
        let d = rng.gen_range(0..g.dart_count());
        let x = g.add_vertex();
        g.insert_edge(Slot::Before(d), Slot::Empty(x), caps.sample(&mut rng), false);
    }
    for _ in 0..extra {
        let faces = g.faces();
        let f = &faces.faces[rng.gen_range(0..faces.len())];
        let a = f[rng.gen_range(0..f.len())];
        let b = f[rng.gen_range(0..f.len())];
        g.insert_edge(Slot::Before(a), Slot::Before(b), caps.sample(&mut rng), false);
    }
    debug_assert!(g.validate().is_ok());
    g
}
