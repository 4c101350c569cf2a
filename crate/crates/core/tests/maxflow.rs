use planar_cut::cut_open::{all_cut_cycles, terminal_path, CutCycle, DualPath};
use planar_cut::error::CutError;
use planar_cut::generate::{grid, random_maximal_planar, random_planar, CapDist};
use planar_cut::maxflow::{build_directed_gpi, max_flow, potentials, recover_flow, DirectedCutGraph, PotentialMode};
use planar_cut::oracle::{bellman_ford, oracle_maxflow};
use planar_cut::partition::{build_r_partition, partition_from_edge_sets};
use planar_cut::{DualGraph, EmbeddedGraph};

type Setup = (EmbeddedGraph<i64>, DualGraph<i64>, DualPath, Vec<Option<CutCycle<i64>>>, DirectedCutGraph<i64>);

fn setup(g: &EmbeddedGraph<i64>, s: usize, t: usize) -> Setup {
    let tri = g.triangulate();
    let dual = tri.dual();
    let pi = terminal_path(&dual, s, t).unwrap();
    let cycles = all_cut_cycles(&dual.graph, &pi).unwrap();
    let f = cycles.iter().flatten().map(|c| c.cost).min().unwrap();
    let dg = build_directed_gpi(&dual.graph, &pi, &cycles, f).unwrap();
    (tri, dual, pi, cycles, dg)
}

#[test]
fn single_edge() {
    let g = EmbeddedGraph::build(2, &[(0, 1, 5i64)], &[vec![0], vec![0]]).unwrap();
    for mode in [PotentialMode::ExactOracle, PotentialMode::Layered, PotentialMode::Accelerated] {
        let out = max_flow(&g, 0, 1, mode, 16).unwrap();
        assert_eq!(out.value, 5);
        assert_eq!(out.flow.flow, vec![5]);
    }
}

#[test]
fn triangle_unit_any_pair() {
    let g = EmbeddedGraph::build(3, &[(0, 1, 1i64), (1, 2, 1), (2, 0, 1)], &[vec![0, 2], vec![1, 0], vec![2, 1]]).unwrap();
    for (s, t) in [(0, 1), (1, 2), (2, 0), (1, 0)] {
        assert_eq!(max_flow(&g, s, t, PotentialMode::Layered, 16).unwrap().value, 2);
    }
}

#[test]
fn grid_corners_conserve() {
    let g = grid(3, 3, CapDist::Unit, 0);
    let out = max_flow(&g, 0, 8, PotentialMode::ExactOracle, 16).unwrap();
    assert_eq!(out.value, 2);
    assert!(out.flow.violations(&g, 0, 8).is_empty());
}

#[test]
fn same_endpoints_rejected() {
    let g = grid(3, 3, CapDist::Unit, 0);
    assert_eq!(max_flow(&g, 4, 4, PotentialMode::Layered, 16).unwrap_err(), CutError::SameEndpoints);
}

#[test]
fn random_flows_match_oracle() {
    for seed in 0..500u64 {
        let n = 6 + (seed as usize * 11) % 90;
        let g = random_planar(n, 0.35, CapDist::Uniform(0, 20), seed);
        let (s, t) = (seed as usize % n, (seed as usize / 3 + 1) % n);
        if s == t {
            continue;
        }
        let expect = oracle_maxflow(&g, s, t);
        let mode = [PotentialMode::ExactOracle, PotentialMode::Layered][seed as usize % 2];
        let out = max_flow(&g, s, t, mode, 16).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert_eq!(out.value, expect, "seed {seed}");
        assert_eq!(out.flow.value, expect);
        assert!(out.flow.violations(&g, s, t).is_empty(), "seed {seed}");
    }
}

#[test]
fn directed_graph_shape_and_no_negative_cycle() {
    for seed in 0..200u64 {
        let g = random_planar(25, 0.3, CapDist::Uniform(0, 15), seed);
        let (_, dual, pi, _, dg) = setup(&g, 0, 13);
        assert_eq!(dg.arcs.len(), 2 * dual.graph.edge_count() + 2 * pi.faces.len());
        assert_eq!(dg.vertex_count, dual.graph.vertex_count() + pi.faces.len());
        assert!(bellman_ford(dg.vertex_count, &dg.arcs, dg.source()).is_ok(), "seed {seed}");
        assert!(dg.subnetwork_of.iter().all(|&j| j <= pi.faces.len()));
    }
}

#[test]
fn inconsistent_f_star_rejected() {
    let g = random_planar(20, 0.3, CapDist::Uniform(1, 9), 1);
    let (_, dual, pi, cycles, dg) = setup(&g, 0, 11);
    let err = build_directed_gpi(&dual.graph, &pi, &cycles, dg.f_star + 1).unwrap_err();
    assert!(matches!(err, CutError::InconsistentFlowValue { .. }));
}

#[test]
fn potential_modes_agree() {
    let mut accelerated_runs = 0;
    for seed in 0..200u64 {
        let g = random_maximal_planar(30 + seed as usize % 60, CapDist::Uniform(0, 20), seed);
        let (tri, dual, pi, _, dg) = setup(&g, 1, 20);
        let h = &dual.graph;
        let exact = potentials(&dg, h, PotentialMode::ExactOracle, None).unwrap();
        assert_eq!(exact.delta[dg.source()], planar_cut::Dist::zero());
        assert!(exact.infeasible_arcs(&dg).is_empty());
        let layered = potentials(&dg, h, PotentialMode::Layered, None).unwrap();
        assert_eq!(layered.delta, exact.delta, "seed {seed}");
        let p = build_r_partition(h, 16).unwrap();
        match potentials(&dg, h, PotentialMode::Accelerated, Some(&p)) {
            Ok(acc) => {
                accelerated_runs += 1;
                assert_eq!(acc.delta, exact.delta, "accelerated, seed {seed}");
            }
            Err(CutError::UnsupportedMultiHole(c)) => assert!(p.clusters[c].holes.len() > 1),
            Err(e) => panic!("seed {seed}: {e}"),
        }
        let flow = recover_flow(&tri, h, &dg, &pi, &exact, 1).unwrap();
        assert!(flow.violations(&tri, 1, 20).is_empty());
    }
    assert!(accelerated_runs >= 100, "accelerated ran {accelerated_runs} times");
}

#[test]
fn accelerated_rejects_multi_hole_partition() {
    let g = random_maximal_planar(40, CapDist::Uniform(1, 9), 3);
    let (_, dual, _, _, dg) = setup(&g, 0, 30);
    let h = &dual.graph;
    // one cluster = everything but the dual edges around primal vertex 5
    // and the vertex farthest from it, which leaves two holes
    let hops = planar_cut::oracle::oracle_dijkstra(&unit(&g), 5);
    let far = (0..g.vertex_count()).max_by_key(|&v| hops[v].finite().unwrap()).unwrap();
    let around: Vec<usize> = [5usize, far].iter().flat_map(|&v| g.darts_around(v).map(|d| d / 2)).collect();
    let rest: Vec<usize> = (0..h.edge_count()).filter(|e| !around.contains(e)).collect();
    let p = partition_from_edge_sets(h, vec![rest, around], 16);
    assert!(p.clusters[0].holes.len() >= 2);
    assert!(matches!(potentials(&dg, h, PotentialMode::Accelerated, Some(&p)), Err(CutError::UnsupportedMultiHole(_))));
}

fn unit(g: &EmbeddedGraph<i64>) -> EmbeddedGraph<i64> {
    let mut u = g.clone();
    for e in 0..u.edge_count() {
        u.set_capacity(e, 1);
    }
    u
}
