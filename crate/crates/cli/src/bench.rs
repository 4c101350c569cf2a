use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Result};
use planar_cut::generate::{grid, CapDist};
use planar_cut::IntGraph;

use crate::commands::mincut;
use crate::{CutMode, Mismatch};

pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|x| Ok(x.trim().parse()?)).collect()
}

pub fn parse_modes(s: &str) -> Result<Vec<CutMode>> {
    s.split(',')
        .map(|x| match x.trim() {
            "oracle" => Ok(CutMode::Oracle),
            "reif" => Ok(CutMode::Reif),
            "fast" => Ok(CutMode::Fast),
            "general" => Ok(CutMode::General),
            other => bail!("unknown mode `{other}`"),
        })
        .collect()
}

fn mode_name(m: CutMode) -> &'static str {
    match m {
        CutMode::Oracle => "oracle",
        CutMode::Reif => "reif",
        CutMode::Fast => "fast",
        CutMode::General => "general",
    }
}

/// Grid with 2^k vertices and terminals a quarter of the way in from
/// opposite corners, so the path between them crosses many faces.
pub fn bench_grid(k: usize, seed: u64) -> (IntGraph, usize, usize) {
    let w = 1usize << k.div_ceil(2);
    let h = 1usize << (k / 2);
    let g = grid(w, h, CapDist::Uniform(1, 20), seed);
    (g, (h / 4) * w + w / 4, (3 * h / 4) * w + 3 * w / 4)
}

/// CSV rows `n,r,mode,seconds,value,ratio`; `ratio` is the time over the
/// time of the previous (half as large) size for the same mode and r.
/// Modes that do not take r report it as 0.
pub fn run(sizes: &[usize], rs: &[usize], modes: &[CutMode], seed: u64) -> Result<String> {
    let mut csv = String::from("n,r,mode,seconds,value,ratio\n");
    let mut prev: HashMap<(usize, CutMode), (usize, f64)> = HashMap::new();
    for &k in sizes {
        let (g, s, t) = bench_grid(k, seed);
        let n = g.vertex_count();
        let mut value = None;
        for &mode in modes {
            let r_list: Vec<usize> = if matches!(mode, CutMode::Fast | CutMode::General) { rs.to_vec() } else { vec![0] };
            for &r in &r_list {
                let start = Instant::now();
                let (v, _) = mincut(&g, s, t, mode, (r > 0).then_some(r))?;
                let secs = start.elapsed().as_secs_f64();
                if *value.get_or_insert(v) != v {
                    return Err(Mismatch(format!("n = {n}: {} r = {r} gives {v}, expected {}", mode_name(mode), value.unwrap())).into());
                }
                let ratio = match prev.get(&(r, mode)) {
                    Some(&(pn, pt)) if pn * 2 == n && pt > 0.0 => format!("{:.3}", secs / pt),
                    _ => String::new(),
                };
                prev.insert((r, mode), (n, secs));
                let _ = writeln!(csv, "{n},{r},{},{secs:.6},{v},{ratio}", mode_name(mode));
            }
        }
    }
    Ok(csv)
}
