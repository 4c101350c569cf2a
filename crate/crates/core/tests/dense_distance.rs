use planar_cut::dense_distance::{compute_ddg, compute_ddg_on, hybrid_dijkstra, hybrid_search, DdgView, HybridGraph, Step};
use planar_cut::generate::{random_maximal_planar, random_multigraph, rng_from_seed, CapDist};
use planar_cut::oracle::{dijkstra_adj, oracle_dijkstra};
use planar_cut::partition::{build_r_partition, ClusterGraph};
use planar_cut::{Dist, EmbeddedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

fn oracle_on(n: usize, edges: &[(usize, usize, i64)], sources: &[(usize, i64)]) -> Vec<Dist<i64>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in edges {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    dijkstra_adj(&adj, sources)
}

/// A connected-ish random edge subset grown by BFS from a random vertex.
fn grow_edges(g: &EmbeddedGraph<i64>, size: usize, rng: &mut impl Rng) -> Vec<usize> {
    let start = rng.gen_range(0..g.vertex_count());
    let mut seen = vec![false; g.edge_count()];
    let mut out = Vec::new();
    let mut frontier = vec![start];
    while let Some(v) = frontier.pop() {
        for d in g.darts_around(v) {
            let e = d / 2;
            if out.len() < size && !seen[e] {
                seen[e] = true;
                out.push(e);
                frontier.insert(0, g.head(d));
            }
        }
    }
    out.sort_unstable();
    out
}

#[test]
fn ddg_matches_cluster_dijkstra() {
    let mut rng = rng_from_seed(17);
    for seed in 0..20 {
        let g = random_multigraph(30, 20, CapDist::Uniform(0, 9), seed);
        let edges = grow_edges(&g, 50, &mut rng);
        let local = ClusterGraph::new(&g, &edges);
        let mut verts = local.vertices.clone();
        verts.shuffle(&mut rng);
        verts.truncate(8);
        let ddg = compute_ddg_on(&g, 0, &edges, &verts);
        for (i, &a) in verts.iter().enumerate() {
            let d = oracle_dijkstra(&local.graph, local.local[&a]);
            for (j, &b) in verts.iter().enumerate() {
                assert_eq!(ddg.dist[i][j], d[local.local[&b]]);
                if let Some(path) = ddg.path(i, j) {
                    let len: i64 = path.iter().map(|&x| g.length(x)).sum();
                    assert_eq!(Dist::Finite(len), ddg.dist[i][j]);
                    if let Some(&first) = path.first() {
                        assert_eq!(g.origin(first), a);
                        assert_eq!(g.head(*path.last().unwrap()), b);
                    }
                }
            }
        }
    }
}

#[test]
fn random_hybrid_instances_match_expansion() {
    let mut rng = rng_from_seed(5);
    for seed in 0..200u64 {
        let g = random_multigraph(25, 15, CapDist::Uniform(0, 12), seed);
        let n = 40;
        let ddgs: Vec<_> = (0..3)
            .map(|k| {
                let edges = grow_edges(&g, 20, &mut rng);
                let local = ClusterGraph::new(&g, &edges);
                let mut verts = local.vertices.clone();
                verts.shuffle(&mut rng);
                verts.truncate(6);
                compute_ddg_on(&g, k, &edges, &verts)
            })
            .collect();
        let mut hy = HybridGraph::new(n);
        for ddg in &ddgs {
            let vertex = (0..ddg.len()).map(|_| if rng.gen_bool(0.85) { Some(rng.gen_range(0..n)) } else { None }).collect();
            hy.add_view(DdgView { ddg, vertex });
        }
        for _ in 0..rng.gen_range(0..30) {
            hy.add_edge(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..15));
        }
        let src = rng.gen_range(0..n);
        let expect = oracle_on(n, &hy.expanded_edges(), &[(src, 0)]);
        let got = hybrid_dijkstra(&hy, &[(src, 0)]).unwrap();
        assert_eq!(got, expect, "seed {seed}");

        let target = rng.gen_range(0..n);
        let tree = hybrid_search(&hy, &[(src, 0)], Some(target)).unwrap();
        assert_eq!(tree.dist[target], expect[target]);
        if let Dist::Finite(total) = expect[target] {
            let mut sum = 0;
            let mut at = src;
            for step in tree.steps_to(&hy, target) {
                match step {
                    Step::Source => {}
                    Step::Edge(idx, from) => {
                        let (u, v, w) = hy.explicit[idx];
                        assert!(from == at && (u == at || v == at));
                        at = if u == at { v } else { u };
                        sum += w;
                    }
                    Step::Ddg(vi, a, b) => {
                        let view = &hy.ddgs[vi];
                        assert_eq!(view.vertex[a], Some(at));
                        sum += view.ddg.dist[a][b].finite().unwrap();
                        at = view.vertex[b].unwrap();
                    }
                }
            }
            assert_eq!(at, target);
            assert_eq!(sum, total);
        }
    }
}

#[test]
fn two_ddgs_sharing_a_border_vertex() {
    // Path a-b-c split into clusters {a-b} and {b-c}; b is shared.
    let g = EmbeddedGraph::<i64>::build(3, &[(0, 1, 4), (1, 2, 7)], &[vec![0], vec![0, 1], vec![1]]).unwrap();
    let left = compute_ddg_on(&g, 0, &[0], &[0, 1]);
    let right = compute_ddg_on(&g, 1, &[1], &[1, 2]);
    let mut hy = HybridGraph::new(3);
    hy.add_ddg(&left);
    hy.add_ddg(&right);
    let d = hybrid_dijkstra(&hy, &[(0, 0)]).unwrap();
    assert_eq!(d, vec![Dist::Finite(0), Dist::Finite(4), Dist::Finite(11)]);
}

#[test]
fn multi_source_offsets_are_monotone() {
    let g = random_maximal_planar(80, CapDist::Uniform(1, 9), 2);
    let dual = g.dual();
    let p = build_r_partition(&dual.graph, 25).unwrap();
    let ddgs: Vec<_> = p.clusters.iter().map(|c| compute_ddg(&dual.graph, c)).collect();
    let mut hy = HybridGraph::new(dual.graph.vertex_count());
    for d in &ddgs {
        hy.add_ddg(d);
    }
    let border: Vec<usize> = ddgs.iter().flat_map(|d| d.border.iter().copied()).collect();
    let a = hybrid_dijkstra(&hy, &[(border[0], 0)]).unwrap();
    let b = hybrid_dijkstra(&hy, &[(border[0], 3), (border[1], 5)]).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!(*y <= x.add_dist(Dist::Finite(3)));
    }
    // border-to-border distances equal plain Dijkstra on the whole dual
    let full = oracle_dijkstra(&dual.graph, border[0]);
    for &v in &border {
        assert_eq!(a[v], full[v]);
    }
}
