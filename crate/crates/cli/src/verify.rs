use std::io::Write;

use anyhow::{bail, Result};
use planar_cut::cut_open::terminal_path;
use planar_cut::dense_distance::compute_ddg;
use planar_cut::error::CutError;
use planar_cut::format::{write_pg, Instance};
use planar_cut::generate::{random_planar, rng_from_seed, CapDist};
use planar_cut::maxflow::FlowAssignment;
use planar_cut::mincut_fast::{build_gst, choose_pi, fast_mincut};
use planar_cut::partition::build_r_partition;
use planar_cut::{Dist, IntGraph};
use rand::Rng;

use crate::commands::{maxflow, mincut};
use crate::{CutMode, FlowMode, Mismatch};

pub struct Options {
    /// Lower every positive off-diagonal DDG entry by one in an extra fast
    /// run, to check that the comparison notices.
    pub inject_ddg_fault: bool,
}

/// Every mode's value on one instance, in a fixed order.
fn all_values(g: &IntGraph, s: usize, t: usize, opts: &Options) -> Result<Vec<(String, i64)>> {
    let mut vals = Vec::new();
    for (name, mode, r) in [
        ("oracle", CutMode::Oracle, None),
        ("reif", CutMode::Reif, None),
        ("fast r=16", CutMode::Fast, Some(16)),
        ("fast r=64", CutMode::Fast, Some(64)),
        ("general r=16", CutMode::General, Some(16)),
    ] {
        vals.push((name.to_string(), mincut(g, s, t, mode, r)?.0));
    }
    for (name, mode) in [("flow exact", FlowMode::Exact), ("flow layered", FlowMode::Layered), ("flow accelerated", FlowMode::Accelerated)] {
        match maxflow(g, s, t, mode, Some(16)) {
            Ok((value, flow)) => {
                let bad = FlowAssignment { flow, value }.violations(g, s, t);
                if let Some(v) = bad.first() {
                    return Err(Mismatch(format!("{name}: infeasible flow: {v}")).into());
                }
                vals.push((name.to_string(), value));
            }
            Err(e) if matches!(e.downcast_ref::<CutError>(), Some(CutError::UnsupportedMultiHole(_))) => {}
            Err(e) => return Err(e),
        }
    }
    if opts.inject_ddg_fault {
        vals.push(("fast with faulty DDG".to_string(), faulty_fast(g, s, t)?));
    }
    Ok(vals)
}

fn faulty_fast(g: &IntGraph, s: usize, t: usize) -> Result<i64> {
    let dual = g.triangulate().dual();
    let h = &dual.graph;
    let p = build_r_partition(h, 16.max(h.max_degree()))?;
    let mut ddgs: Vec<_> = p.clusters.iter().map(|c| compute_ddg(h, c)).collect();
    for ddg in &mut ddgs {
        for (i, row) in ddg.dist.iter_mut().enumerate() {
            for (j, d) in row.iter_mut().enumerate() {
                if let Dist::Finite(w) = d {
                    if i != j && *w > 0 {
                        *w -= 1;
                    }
                }
            }
        }
    }
    let tp = terminal_path(&dual, s, t)?;
    let faces = (dual.vertex_face[s], dual.vertex_face[t]);
    let mut gst = build_gst(h, &p, &ddgs, tp.faces[0], *tp.faces.last().unwrap(), faces)?;
    let pi = choose_pi(&mut gst)?;
    Ok(fast_mincut(&gst, &pi)?.value.finite().ok_or(CutError::NoPath)?)
}

fn reproducer(g: &IntGraph, s: usize, t: usize) -> String {
    let inst = Instance { graph: g.clone(), meta: vec![format!("reproducer s {s} t {t}")] };
    write_pg(&inst)
}

fn check(g: &IntGraph, s: usize, t: usize, opts: &Options) -> Result<Vec<(String, i64)>> {
    let vals = match all_values(g, s, t, opts) {
        Err(e) if e.downcast_ref::<Mismatch>().is_some() => {
            eprint!("{}", reproducer(g, s, t));
            return Err(e);
        }
        r => r?,
    };
    let want = vals[0].1;
    if let Some((name, v)) = vals.iter().find(|(_, v)| *v != want) {
        eprint!("{}", reproducer(g, s, t));
        return Err(Mismatch(format!("{name} gives {v}, oracle gives {want} (s = {s}, t = {t})")).into());
    }
    Ok(vals)
}

/// Parses `value` / `f <edge> <flow>` lines.
fn parse_flow(text: &str, m: usize) -> Result<FlowAssignment<i64>> {
    let mut value = None;
    let mut flow = vec![0i64; m];
    for (i, line) in text.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["value", v] => value = Some(v.parse()?),
            ["f", e, f] => {
                let e: usize = e.parse()?;
                if e >= m {
                    bail!("flow file line {}: unknown edge {e}", i + 1);
                }
                flow[e] = f.parse()?;
            }
            _ => bail!("flow file line {}: cannot parse `{line}`", i + 1),
        }
    }
    let Some(value) = value else { bail!("flow file has no value line") };
    Ok(FlowAssignment { flow, value })
}

pub fn single(g: &IntGraph, s: usize, t: usize, flow: Option<&str>, opts: &Options, out: &mut impl Write) -> Result<()> {
    let vals = check(g, s, t, opts)?;
    for (name, v) in &vals {
        writeln!(out, "{name}: {v}")?;
    }
    if let Some(text) = flow {
        let fa = parse_flow(text, g.edge_count())?;
        let bad = fa.violations(g, s, t);
        if let Some(v) = bad.first() {
            return Err(Mismatch(format!("given flow is infeasible: {v}")).into());
        }
        if fa.value != vals[0].1 {
            return Err(Mismatch(format!("given flow has value {}, max-flow is {}", fa.value, vals[0].1)).into());
        }
        writeln!(out, "flow feasible and maximum")?;
    }
    writeln!(out, "all modes agree")?;
    Ok(())
}

pub fn sweep(n: usize, seed: u64, opts: &Options, out: &mut impl Write) -> Result<()> {
    let mut rng = rng_from_seed(seed);
    for i in 0..n {
        let size = rng.gen_range(4..=256);
        let g = random_planar(size, 0.3, CapDist::Uniform(0, 20), rng.gen());
        let s = rng.gen_range(0..size);
        let t = (s + rng.gen_range(1..size)) % size;
        check(&g, s, t, opts).map_err(|e| e.context(format!("instance {i}")))?;
    }
    writeln!(out, "{n} instances, all modes agree")?;
    Ok(())
}
