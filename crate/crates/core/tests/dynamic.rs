use planar_cut::dynamic::{DualGadgetGraph, DynamicMaxFlow, DynamicSP, GadgetEdge, GadgetIndex};
use planar_cut::error::DynamicError;
use planar_cut::generate::{grid, random_planar, rng_from_seed, CapDist};
use planar_cut::oracle::{oracle_dijkstra, oracle_maxflow};
use planar_cut::{Dist, EmbeddedGraph};
use rand::Rng;

/// Two corners of one random face with distinct vertices, as
/// `(x, pos_x, y, pos_y)` rotation positions.
fn random_chord(g: &EmbeddedGraph<i64>, rng: &mut impl Rng) -> Option<(usize, usize, usize, usize)> {
    let faces = g.faces();
    for _ in 0..20 {
        let f = &faces.faces[rng.gen_range(0..faces.faces.len())];
        let a = f[rng.gen_range(0..f.len())];
        let b = f[rng.gen_range(0..f.len())];
        let (x, y) = (g.origin(a), g.origin(b));
        if x != y {
            return Some((x, g.rotation_index(a), y, g.rotation_index(b)));
        }
    }
    None
}

fn check_queries(d: &DynamicSP<i64>, rng: &mut impl Rng, k: usize) {
    let g = d.graph();
    let n = g.vertex_count();
    for _ in 0..k {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let want = oracle_dijkstra(g, x)[y];
        let (got, path) = d.shortest_path(x, y).unwrap();
        assert_eq!(got, want, "{x} -> {y}");
        if let Dist::Finite(w) = got {
            let len: i64 = path.iter().map(|&p| g.length(p)).sum();
            assert_eq!(len, w);
            let mut at = x;
            for &p in &path {
                assert_eq!(g.origin(p), at);
                at = g.head(p);
            }
            assert_eq!(at, y);
        }
    }
}

#[test]
fn x_equals_y_is_zero() {
    let d = DynamicSP::new(grid(4, 4, CapDist::Uniform(1, 9), 0), None).unwrap();
    assert_eq!(d.distance(5, 5).unwrap(), Dist::Finite(0));
}

#[test]
fn shortcut_parallel_to_long_path() {
    // path 0-1-...-9 of unit edges; a length-1 edge 0-9 drops the distance
    let n = 10;
    let edges: Vec<(usize, usize, i64)> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
    let rots: Vec<Vec<usize>> = (0..n)
        .map(|v| match v {
            0 => vec![0],
            v if v == n - 1 => vec![v - 1],
            v => vec![v - 1, v],
        })
        .collect();
    let g = EmbeddedGraph::build(n, &edges, &rots).unwrap();
    let mut d = DynamicSP::new(g, Some(16)).unwrap();
    assert_eq!(d.distance(0, 9).unwrap(), Dist::Finite(9));
    d.insert(0, 9, 1, 0, 0).unwrap();
    assert_eq!(d.distance(0, 9).unwrap(), Dist::Finite(1));
    d.delete(0, 9).unwrap();
    assert_eq!(d.distance(0, 9).unwrap(), Dist::Finite(9));
    d.delete(4, 5).unwrap();
    assert_eq!(d.distance(0, 9).unwrap(), Dist::Inf);
    assert!(d.delete(4, 5).is_err());
}

#[test]
fn errors_on_bad_input() {
    let mut d = DynamicSP::new(grid(3, 3, CapDist::Unit, 0), None).unwrap();
    assert!(d.insert(0, 99, 1, 0, 0).is_err());
    assert!(d.insert(0, 8, 1, 7, 0).is_err());
    assert!(d.distance(0, 99).is_err());
}

#[test]
fn random_ops_on_grid_dual_match_oracle() {
    let mut rng = rng_from_seed(11);
    let g = grid(32, 32, CapDist::Uniform(1, 20), 4).dual().graph;
    let mut d = DynamicSP::new(g, None).unwrap();
    assert_eq!(d.r(), (d.graph().vertex_count() as f64).powf(2.0 / 3.0).ceil() as usize);
    check_queries(&d, &mut rng, 5);
    for op in 0..500 {
        if rng.gen_bool(0.5) {
            if let Some((x, px, y, py)) = random_chord(d.graph(), &mut rng) {
                d.insert(x, y, rng.gen_range(0..20), px, py).unwrap();
            }
        } else {
            let e = rng.gen_range(0..d.graph().edge_count());
            let (x, y) = d.graph().endpoints(e);
            d.delete(x, y).unwrap();
        }
        assert!(d.ops_since_rebuild() < d.rebuild_threshold());
        if op % 5 == 0 {
            check_queries(&d, &mut rng, 3);
        }
    }
    assert!(d.rebuilds() > 0);
}

#[test]
fn rebuild_is_transparent() {
    let mut rng = rng_from_seed(3);
    let mut d = DynamicSP::new(grid(12, 12, CapDist::Uniform(0, 9), 1), Some(16)).unwrap();
    for _ in 0..100 {
        if let Some((x, px, y, py)) = random_chord(d.graph(), &mut rng) {
            d.insert(x, y, rng.gen_range(0..9), px, py).unwrap();
        }
        let n = d.graph().vertex_count();
        let pairs: Vec<(usize, usize)> = (0..3).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let before: Vec<_> = pairs.iter().map(|&(x, y)| d.distance(x, y).unwrap()).collect();
        d.rebuild().unwrap();
        assert_eq!(d.ops_since_rebuild(), 0);
        let after: Vec<_> = pairs.iter().map(|&(x, y)| d.distance(x, y).unwrap()).collect();
        assert_eq!(before, after);
    }
}

#[test]
fn gadget_is_planar_and_transparent() {
    for seed in 0..40u64 {
        let g = random_planar(20 + seed as usize, 0.3, CapDist::Uniform(0, 9), seed);
        let gad = DualGadgetGraph::new(&g).unwrap();
        gad.graph.validate().unwrap();
        assert_eq!(gad.graph.max_degree(), 3);
        let dual = g.dual();
        let faces = g.faces();
        let src = 0;
        let want = oracle_dijkstra(&dual.graph, faces.face_of[src]);
        let got = oracle_dijkstra(&gad.graph, gad.index.vertex_of_dart[src]);
        for d in 0..2 * g.edge_count() {
            assert_eq!(got[gad.index.vertex_of_dart[d]], want[faces.face_of[d]], "seed {seed}");
        }
        // every primal vertex is one gadget face
        let gf = gad.graph.faces();
        for v in 0..g.vertex_count() {
            let ids: Vec<usize> = g.darts_around(v).map(|d| gf.face_of[gad.index.dual_dart(d)]).collect();
            assert!(ids.iter().all(|&f| f == ids[0]));
            assert_eq!(gf.faces[ids[0]].len(), 2 * g.degree(v));
        }
    }
}

#[test]
fn grid_corners_then_delete_at_source() {
    let g = grid(3, 3, CapDist::Unit, 0);
    let mut m = DynamicMaxFlow::new(g, None).unwrap();
    assert_eq!(m.max_flow(0, 8).unwrap().value, 2);
    let nb = m.primal().darts_around(0).map(|d| m.primal().head(d)).next().unwrap();
    m.delete(0, nb).unwrap();
    assert!(m.last_gadget_ops() <= 7);
    assert_eq!(m.max_flow(0, 8).unwrap().value, 1);
    assert_eq!(oracle_maxflow(m.primal(), 0, 8), 1);
}

#[test]
fn diagonal_splits_face_cycle() {
    let g = grid(3, 3, CapDist::Unit, 0);
    let mut m = DynamicMaxFlow::new(g, None).unwrap();
    // corners 0 and 4 of the face 0-1-4-3
    let faces = m.primal().faces();
    let f = faces.faces.iter().find(|f| f.iter().any(|&d| m.primal().origin(d) == 4) && f.iter().any(|&d| m.primal().origin(d) == 0)).unwrap();
    let len = f.len();
    let d0 = *f.iter().find(|&&d| m.primal().origin(d) == 0).unwrap();
    let d4 = *f.iter().find(|&&d| m.primal().origin(d) == 4).unwrap();
    let (p0, p4) = (m.primal().rotation_index(d0), m.primal().rotation_index(d4));
    let e = m.insert(0, 4, 1, p0, p4).unwrap();
    assert_eq!(m.last_gadget_ops(), 7);
    let gad = DualGadgetGraph::new(m.primal()).unwrap();
    let a = gad.cycle_of(m.primal(), 2 * e).len();
    let b = gad.cycle_of(m.primal(), 2 * e + 1).len();
    assert_eq!(a + b, len + 2);
    assert_eq!(canonical(&m), fresh_canonical(&m));
    assert_eq!(m.max_flow(0, 8).unwrap().value, oracle_maxflow(m.primal(), 0, 8));
    assert_eq!(m.max_flow(0, 4).unwrap().value, 3);
}

#[test]
fn bad_updates_rejected() {
    let mut m = DynamicMaxFlow::new(grid(3, 3, CapDist::Unit, 0), None).unwrap();
    assert!(matches!(m.delete(0, 8), Err(DynamicError::MissingEdge(0, 8))));
    // 0 and 4 share one face only
    let mut ok = 0;
    for p0 in 0..m.primal().degree(0) {
        for p4 in 0..4 {
            match m.clone().insert(0, 4, 1, p0, p4) {
                Ok(_) => ok += 1,
                Err(e) => assert_eq!(e, DynamicError::SlotsNotOnCommonFace(0, 4)),
            }
        }
    }
    assert_eq!(ok, 1);
    assert!(m.insert(0, 4, 1, 9, 0).is_err());
    assert!(m.max_flow(3, 3).is_err());
    let path = EmbeddedGraph::build(3, &[(0, 1, 1i64), (1, 2, 1)], &[vec![0], vec![0, 1], vec![1]]).unwrap();
    let mut m = DynamicMaxFlow::new(path, None).unwrap();
    assert!(matches!(m.delete(0, 1), Err(DynamicError::WouldDisconnect(0, 1))));
}

/// Random face chord or non-bridge deletion on the primal.
fn random_flow_op(m: &mut DynamicMaxFlow<i64>, rng: &mut impl Rng) {
    if rng.gen_bool(0.5) {
        if let Some((x, px, y, py)) = random_chord(m.primal(), rng) {
            m.insert(x, y, rng.gen_range(0..20), px, py).unwrap();
        }
    } else {
        for _ in 0..20 {
            let e = rng.gen_range(0..m.primal().edge_count());
            let (x, y) = m.primal().endpoints(e);
            match m.delete(x, y) {
                Err(DynamicError::WouldDisconnect(..)) => continue,
                r => {
                    r.unwrap();
                    break;
                }
            }
        }
    }
    assert!(m.last_gadget_ops() <= 7);
}

#[test]
fn random_flow_ops_match_oracle() {
    for seed in 0..6u64 {
        let mut rng = rng_from_seed(100 + seed);
        let g = random_planar(40 + 10 * seed as usize, 0.3, CapDist::Uniform(0, 20), seed);
        let mut m = DynamicMaxFlow::new(g, Some(16)).unwrap();
        for op in 0..80 {
            random_flow_op(&mut m, &mut rng);
            let n = m.primal().vertex_count();
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if s == t {
                continue;
            }
            let q = m.max_flow(s, t).unwrap_or_else(|e| panic!("seed {seed} op {op}: {e}"));
            assert_eq!(q.value, oracle_maxflow(m.primal(), s, t), "seed {seed} op {op}");
            let cut: i64 = q.cut.iter().map(|&e| m.primal().capacity(e)).sum();
            assert_eq!(cut, q.value);
        }
    }
}

#[test]
fn zero_cap_insert_changes_nothing() {
    let mut rng = rng_from_seed(9);
    let mut m = DynamicMaxFlow::new(grid(5, 5, CapDist::Uniform(1, 9), 2), None).unwrap();
    let before: Vec<i64> = (1..25).map(|t| m.max_flow(0, t).unwrap().value).collect();
    for _ in 0..10 {
        let (x, px, y, py) = random_chord(m.primal(), &mut rng).unwrap();
        m.insert(x, y, 0, px, py).unwrap();
    }
    let after: Vec<i64> = (1..25).map(|t| m.max_flow(0, t).unwrap().value).collect();
    assert_eq!(before, after);
}

/// Rotation of every gadget vertex g(d) written in primal terms, starting at
/// its dual dart: (edge kind, which end).
fn canonical_of(graph: &EmbeddedGraph<i64>, index: &GadgetIndex, darts: usize) -> Vec<Vec<(GadgetEdge, usize, i64)>> {
    (0..darts)
        .map(|d| {
            let start = index.dual_dart(d);
            let mut out = Vec::new();
            let mut x = start;
            loop {
                out.push((index.kind[x / 2], x & 1, graph.capacity(x / 2)));
                x = graph.next_around(x);
                if x == start {
                    break;
                }
            }
            assert_eq!(graph.origin(start), index.vertex_of_dart[d]);
            out
        })
        .collect()
}

fn canonical(m: &DynamicMaxFlow<i64>) -> Vec<Vec<(GadgetEdge, usize, i64)>> {
    canonical_of(m.shortest_paths().graph(), m.index(), 2 * m.primal().edge_count())
}

fn fresh_canonical(m: &DynamicMaxFlow<i64>) -> Vec<Vec<(GadgetEdge, usize, i64)>> {
    let gad = DualGadgetGraph::new(m.primal()).unwrap();
    canonical_of(&gad.graph, &gad.index, 2 * m.primal().edge_count())
}

#[test]
fn maintained_gadget_equals_rebuilt_gadget() {
    let mut rng = rng_from_seed(21);
    let g = random_planar(30, 0.3, CapDist::Uniform(0, 9), 21);
    let mut m = DynamicMaxFlow::new(g, Some(16)).unwrap();
    for _ in 0..150 {
        random_flow_op(&mut m, &mut rng);
        assert_eq!(canonical(&m), fresh_canonical(&m));
    }
}

#[test]
fn delete_then_reinsert_restores_gadget() {
    let mut m = DynamicMaxFlow::new(grid(4, 4, CapDist::Uniform(1, 9), 5), None).unwrap();
    let e = m.primal().find_edge(5, 6).unwrap();
    let cap = m.primal().capacity(e);
    let (u, v) = m.primal().endpoints(e);
    // the darts that follow e around u and v; they keep their place
    let nu = m.primal().endpoints(m.primal().next_around(2 * e) / 2);
    let nv = m.primal().endpoints(m.primal().next_around(2 * e + 1) / 2);
    let before = id_free(&m);
    let flows: Vec<i64> = (1..16).map(|t| m.max_flow(0, t).unwrap().value).collect();
    m.delete(u, v).unwrap();
    let pos = |m: &DynamicMaxFlow<i64>, x: usize, ends: (usize, usize)| {
        let g = m.primal();
        g.darts_around(x).position(|d| g.endpoints(d / 2) == ends).unwrap()
    };
    let (pu, pv) = (pos(&m, u, nu), pos(&m, v, nv));
    m.insert(u, v, cap, pu, pv).unwrap();
    assert_eq!(id_free(&m), before);
    let again: Vec<i64> = (1..16).map(|t| m.max_flow(0, t).unwrap().value).collect();
    assert_eq!(flows, again);
}

type Row = ((usize, usize), Vec<((usize, usize), usize, i64)>);

/// Gadget rotations named by primal vertex pairs instead of ids (valid for
/// simple primal graphs).
fn id_free(m: &DynamicMaxFlow<i64>) -> Vec<Row> {
    let g = m.primal();
    let ends = |d: usize| (g.origin(d), g.head(d));
    let mut rows: Vec<Row> = canonical(m)
        .into_iter()
        .enumerate()
        .map(|(d, row)| {
            let row = row
                .into_iter()
                .map(|(k, end, cap)| match k {
                    GadgetEdge::Dual(e) => (ends(2 * e), end, cap),
                    GadgetEdge::Cycle(x) => ((g.origin(x), g.origin(g.next_on_face(x))), end + 2, cap),
                })
                .collect();
            (ends(d), row)
        })
        .collect();
    rows.sort();
    rows
}
