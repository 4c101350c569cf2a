use planar_cut::generate::*;
use planar_cut::partition::*;
use planar_cut::EmbeddedGraph;

fn check(h: &EmbeddedGraph<i64>, r: usize) -> RPartition {
    let p = build_r_partition(h, r).unwrap();
    let rep = validate_partition(h, &p);
    assert!(rep.violations.is_empty(), "r={r}: {:?}", rep.violations);
    p
}

#[test]
fn bounds_hold_across_families() {
    let graphs = [
        grid(40, 40, CapDist::Unit, 0).triangulate(),
        random_maximal_planar(1500, CapDist::Unit, 3),
        wheel(300, CapDist::Unit, 0).triangulate(),
        random_planar(800, 0.3, CapDist::Unit, 5).triangulate(),
    ];
    for g in &graphs {
        let dual = g.dual();
        for r in [16, 49, 100, 400] {
            let p = check(&dual.graph, r);
            let s = p.stats(dual.vertex_count());
            assert!(s.border_ratio <= 6.0 && s.count_ratio <= 4.0 && s.max_holes <= 6);
        }
    }
}

#[test]
fn clusters_partition_edges_exactly() {
    for seed in 0..20 {
        let g = random_maximal_planar(200, CapDist::Uniform(1, 9), seed);
        let dual = g.dual();
        let p = check(&dual.graph, 16 + seed as usize * 3);
        let mut all: Vec<usize> = p.clusters.iter().flat_map(|c| c.edges.iter().copied()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..dual.graph.edge_count()).collect::<Vec<_>>());
        for c in &p.clusters {
            for &e in &c.edges {
                assert_eq!(p.cluster_of_edge[e], c.id);
            }
        }
    }
}

#[test]
fn border_vertices_are_shared_and_internal_are_not() {
    let g = grid(20, 20, CapDist::Unit, 1).triangulate();
    let dual = g.dual();
    let p = check(&dual.graph, 36);
    for v in 0..dual.vertex_count() {
        let cs = p.clusters_of_vertex(&dual.graph, v);
        for &c in &cs {
            let cl = &p.clusters[c];
            assert_eq!(cl.border_vertices.contains(&v), cs.len() > 1);
            assert_eq!(cl.internal_vertices.contains(&v), cs.len() == 1);
        }
    }
}

#[test]
fn skeleton_edges_count_hole_lengths() {
    let g = random_maximal_planar(600, CapDist::Unit, 9);
    let dual = g.dual();
    let p = check(&dual.graph, 64);
    let sk = skeleton_graph(&p);
    let total: usize = p.clusters.iter().flat_map(|c| c.holes.iter()).map(|h| h.border.len()).sum();
    assert_eq!(sk.edges.len(), total);
    let mut border: Vec<usize> = p.clusters.iter().flat_map(|c| c.border_vertices.iter().copied()).collect();
    border.sort_unstable();
    border.dedup();
    assert_eq!(sk.vertices, border);
    for &(u, v, c, _) in &sk.edges {
        assert!(p.clusters[c].border_vertices.contains(&u) && p.clusters[c].border_vertices.contains(&v));
    }
}

#[test]
fn high_degree_is_rejected() {
    let g = grid(20, 20, CapDist::Unit, 0);
    let dual = g.dual();
    assert!(matches!(
        build_r_partition(&dual.graph, 16),
        Err(planar_cut::error::PartitionError::DegreeTooLarge { .. })
    ));
}
