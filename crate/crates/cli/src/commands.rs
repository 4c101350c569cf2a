use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use planar_cut::cut_open::{reif_mincut, terminal_path};
use planar_cut::dynamic::{DynamicMaxFlow, DynamicSP};
use planar_cut::error::CutError;
use planar_cut::format::{parse_ops, parse_pg, write_pg, Instance, Op};
use planar_cut::generate::{grid, random_maximal_planar, random_planar, wheel, CapDist};
use planar_cut::maxflow::{max_flow, PotentialMode};
use planar_cut::mincut_fast::{default_r, primal_mincut, Mode};
use planar_cut::oracle::{oracle_dijkstra, FlowNetwork};
use planar_cut::{Dist, IntGraph};

use crate::{bench, verify, Cmd, CutMode, FlowMode, GenKind, SpMode};

pub fn load(path: &Path) -> Result<Instance<i64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_pg(&text)?)
}

pub fn parse_caps(s: &str) -> Result<CapDist> {
    if s == "unit" {
        return Ok(CapDist::Unit);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["uniform", lo, hi] => {
            let (lo, hi): (i64, i64) = (lo.parse()?, hi.parse()?);
            if lo < 0 || lo > hi {
                bail!("bad capacity range {lo}..{hi}");
            }
            Ok(CapDist::Uniform(lo, hi))
        }
        _ => bail!("capacity distribution must be `unit` or `uniform:LO:HI`, got `{s}`"),
    }
}

fn check_endpoints(g: &IntGraph, s: usize, t: usize) -> Result<()> {
    for v in [s, t] {
        if v >= g.vertex_count() {
            return Err(CutError::UnknownVertex(v).into());
        }
    }
    if s == t {
        return Err(CutError::SameEndpoints.into());
    }
    Ok(())
}

pub fn generate(kind: &GenKind, caps: CapDist, seed: u64) -> Result<Instance<i64>> {
    let (graph, desc) = match *kind {
        GenKind::Grid { w, h } => {
            if w * h < 2 {
                bail!("grid needs at least two vertices");
            }
            (grid(w, h, caps, seed), format!("grid {w} {h}"))
        }
        GenKind::Maximal { n } => {
            if n < 3 {
                bail!("maximal planar graph needs n >= 3");
            }
            (random_maximal_planar(n, caps, seed), format!("maximal {n}"))
        }
        GenKind::Wheel { n } => {
            if n < 3 {
                bail!("wheel needs at least three rim vertices");
            }
            (wheel(n, caps, seed), format!("wheel {n}"))
        }
        GenKind::Random { n, drop } => {
            if n < 3 || !(0.0..1.0).contains(&drop) {
                bail!("random needs n >= 3 and 0 <= drop < 1");
            }
            (random_planar(n, drop, caps, seed), format!("random {n} {drop}"))
        }
    };
    let caps = match caps {
        CapDist::Unit => "unit".to_string(),
        CapDist::Uniform(lo, hi) => format!("uniform:{lo}:{hi}"),
    };
    Ok(Instance { graph, meta: vec![format!("generator {desc} caps {caps} seed {seed}")] })
}

/// Min-cut value and cut edges in one mode.
pub fn mincut(g: &IntGraph, s: usize, t: usize, mode: CutMode, r: Option<usize>) -> Result<(i64, Vec<usize>)> {
    check_endpoints(g, s, t)?;
    let m = g.edge_count();
    Ok(match mode {
        CutMode::Oracle => {
            let edges = g.edge_list();
            let mut net = FlowNetwork::new(g.vertex_count(), &edges);
            let value = net.max_flow(s, t);
            let side = net.source_side(s);
            let cut = edges.iter().enumerate().filter(|(_, &(u, v, _))| side[u] != side[v]).map(|(e, _)| e).collect();
            (value, cut)
        }
        CutMode::Reif => {
            let dual = g.triangulate().dual();
            let pi = terminal_path(&dual, s, t)?;
            let (value, best) = reif_mincut(&dual.graph, &pi)?;
            let cut = best.map(|c| c.odd_edges()).unwrap_or_default().into_iter().filter(|&e| e < m).collect();
            (value.finite().ok_or(CutError::NoPath)?, cut)
        }
        CutMode::Fast | CutMode::General => {
            let mode = if mode == CutMode::Fast { Mode::Fast } else { Mode::General };
            let out = primal_mincut(g, s, t, r.unwrap_or_else(|| default_r(g.vertex_count())), mode)?;
            (out.value, out.cut)
        }
    })
}

/// Max-flow value and per-edge flows (positive along the edge's `u -> v`).
pub fn maxflow(g: &IntGraph, s: usize, t: usize, mode: FlowMode, r: Option<usize>) -> Result<(i64, Vec<i64>)> {
    check_endpoints(g, s, t)?;
    let pm = match mode {
        FlowMode::Oracle => {
            let edges = g.edge_list();
            let mut net = FlowNetwork::new(g.vertex_count(), &edges);
            let value = net.max_flow(s, t);
            let flow = edges.iter().enumerate().map(|(i, e)| net.edge_flow(i, e.2)).collect();
            return Ok((value, flow));
        }
        FlowMode::Exact => PotentialMode::ExactOracle,
        FlowMode::Layered => PotentialMode::Layered,
        FlowMode::Accelerated => PotentialMode::Accelerated,
    };
    let out = max_flow(g, s, t, pm, r.unwrap_or(16))?;
    Ok((out.value, out.flow.flow))
}

fn write_dist(out: &mut impl Write, d: Dist<i64>) -> Result<()> {
    match d {
        Dist::Finite(w) => writeln!(out, "value {w}")?,
        Dist::Inf => writeln!(out, "value inf")?,
    }
    Ok(())
}

pub fn dispatch(cmd: Cmd, out: &mut impl Write) -> Result<()> {
    match cmd {
        Cmd::Generate { kind, caps, seed, out: path } => {
            let inst = generate(&kind, parse_caps(&caps)?, seed)?;
            let text = write_pg(&inst);
            match path {
                Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Cmd::Mincut { graph, s, t, mode, r, certificate } => {
            let g = load(&graph)?.graph;
            let (value, cut) = mincut(&g, s, t, mode, r)?;
            writeln!(out, "value {value}")?;
            if certificate {
                for e in cut {
                    writeln!(out, "cut {e}")?;
                }
            }
        }
        Cmd::Maxflow { graph, s, t, mode, r } => {
            let g = load(&graph)?.graph;
            let (value, flow) = maxflow(&g, s, t, mode, r)?;
            writeln!(out, "value {value}")?;
            for (e, f) in flow.iter().enumerate() {
                writeln!(out, "f {e} {f}")?;
            }
        }
        Cmd::Sp { graph, x, y, mode, r, certificate } => {
            let g = load(&graph)?.graph;
            for v in [x, y] {
                if v >= g.vertex_count() {
                    return Err(CutError::UnknownVertex(v).into());
                }
            }
            match mode {
                SpMode::Oracle => write_dist(out, oracle_dijkstra(&g, x)[y])?,
                SpMode::Dynamic => {
                    let d = DynamicSP::new(g.clone(), r)?;
                    let (dist, path) = d.shortest_path(x, y)?;
                    write_dist(out, dist)?;
                    if certificate && dist.is_finite() {
                        let mut verts = vec![x];
                        verts.extend(path.iter().map(|&p| g.head(p)));
                        let verts: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
                        writeln!(out, "path {}", verts.join(" "))?;
                    }
                }
            }
        }
        Cmd::Verify { graph, s, t, flow, sweep, seed, inject_ddg_fault } => {
            let opts = verify::Options { inject_ddg_fault };
            match (graph, sweep) {
                (Some(path), _) => {
                    let (Some(s), Some(t)) = (s, t) else { bail!("verify needs a graph and both endpoints") };
                    let g = load(&path)?.graph;
                    check_endpoints(&g, s, t)?;
                    let flow_text = match flow {
                        Some(p) => Some(std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?),
                        None => None,
                    };
                    verify::single(&g, s, t, flow_text.as_deref(), &opts, out)?;
                }
                (None, Some(n)) => verify::sweep(n, seed, &opts, out)?,
                (None, None) => bail!("verify needs a graph file or --sweep N"),
            }
        }
        Cmd::Bench { sizes, r, modes, seed, out: path } => {
            let csv = bench::run(&bench::parse_list(&sizes)?, &bench::parse_list(&r)?, &bench::parse_modes(&modes)?, seed)?;
            match path {
                Some(p) => std::fs::write(&p, csv).with_context(|| format!("writing {}", p.display()))?,
                None => out.write_all(csv.as_bytes())?,
            }
        }
        Cmd::Replay { graph, script, r } => {
            let g = load(&graph)?.graph;
            let text = std::fs::read_to_string(&script).with_context(|| format!("reading {}", script.display()))?;
            let ops = parse_ops::<i64>(&text)?;
            replay(g, &ops, r, out)?;
        }
    }
    Ok(())
}

/// Applies `ops` to a dynamic max-flow structure and a dynamic shortest-path
/// structure over the same graph, printing one line per query.
pub fn replay(g: IntGraph, ops: &[Op<i64>], r: Option<usize>, out: &mut impl Write) -> Result<()> {
    let mut flow = DynamicMaxFlow::new(g.clone(), r)?;
    let mut sp = DynamicSP::new(g, r)?;
    for (i, op) in ops.iter().enumerate() {
        let line = || format!("op {}", i + 1);
        match *op {
            Op::Insert { u, v, cap, pos_u, pos_v } => {
                flow.insert(u, v, cap, pos_u, pos_v).with_context(line)?;
                sp.insert(u, v, cap, pos_u, pos_v).with_context(line)?;
            }
            Op::Delete { u, v } => {
                flow.delete(u, v).with_context(line)?;
                sp.delete(u, v).with_context(line)?;
            }
            Op::MaxFlow { s, t } => writeln!(out, "value {}", flow.max_flow(s, t).with_context(line)?.value)?,
            Op::Sp { x, y } => write_dist(out, sp.distance(x, y).with_context(line)?)?,
        }
    }
    Ok(())
}
