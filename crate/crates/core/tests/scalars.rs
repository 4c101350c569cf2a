use num_rational::Ratio;
use planar_cut::generate::{random_planar, CapDist};
use planar_cut::maxflow::{max_flow, PotentialMode};
use planar_cut::mincut_fast::{primal_mincut, Mode};
use planar_cut::oracle::oracle_maxflow;
use planar_cut::{FloatGraph, IntGraph, RatioGraph};

fn convert<W: planar_cut::Scalar>(g: &IntGraph, f: impl Fn(i64) -> W) -> planar_cut::EmbeddedGraph<W> {
    let rots: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.darts_around(v).collect()).collect();
    let caps = (0..g.edge_count()).map(|e| f(g.capacity(e))).collect();
    planar_cut::EmbeddedGraph::from_dart_rotations(&rots, caps, vec![false; g.edge_count()]).unwrap()
}

#[test]
fn rational_and_float_capacities() {
    for seed in 0..30u64 {
        let g: IntGraph = random_planar(30, 0.3, CapDist::Uniform(0, 20), seed);
        let (s, t) = (0, 17);
        let want = oracle_maxflow(&g, s, t);
        let rg: RatioGraph = convert(&g, |c| Ratio::new(c, 3));
        let got = primal_mincut(&rg, s, t, 16, Mode::Fast).unwrap().value;
        assert_eq!(got, Ratio::new(want, 3));
        let flow = max_flow(&rg, s, t, PotentialMode::Layered, 16).unwrap();
        assert_eq!(flow.value, Ratio::new(want, 3));
        assert!(flow.flow.violations(&rg, s, t).is_empty());
        let fg: FloatGraph = convert(&g, |c| c as f64 * 0.5);
        let got = primal_mincut(&fg, s, t, 16, Mode::General).unwrap().value;
        assert_eq!(got, want as f64 * 0.5);
    }
}
