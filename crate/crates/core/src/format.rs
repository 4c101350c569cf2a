//! Plain-text formats: `.pg` graphs and `.ops` dynamic scripts.
//!
//! ```text
//! c optional comment / metadata line
//! p planar <V> <E>
//! e <id> <u> <v> <cap>
//! r <v> <eid_1> ... <eid_k>
//! ```

use std::fmt::Write as _;

use crate::embedding::EmbeddedGraph;
use crate::error::FormatError;
use crate::scalar::Scalar;

/// A graph plus the free-form metadata carried in `c` lines.
#[derive(Clone, Debug)]
pub struct Instance<W> {
    pub graph: EmbeddedGraph<W>,
    pub meta: Vec<String>,
}

fn perr(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, FormatError> {
    let s = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    s.parse().map_err(|_| perr(line, format!("bad {what} `{s}`")))
}

pub fn parse_pg<W: Scalar>(text: &str) -> Result<Instance<W>, FormatError> {
    let mut meta = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Option<(usize, usize, W)>> = Vec::new();
    let mut rots: Vec<Option<Vec<usize>>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(' ') {
                meta.push(rest.trim_start().to_string());
                continue;
            }
        }
        let mut it = l.split_whitespace();
        let tag = it.next().unwrap();
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                if it.next() != Some("planar") {
                    return Err(perr(line, "expected `p planar <V> <E>`"));
                }
                let v: usize = field(it.next(), line, "vertex count")?;
                let e: usize = field(it.next(), line, "edge count")?;
                header = Some((v, e));
                edges = vec![None; e];
                rots = vec![None; v];
            }
            "e" => {
                let (n, m) = header.ok_or_else(|| perr(line, "edge before header"))?;
                let id: usize = field(it.next(), line, "edge id")?;
                let u: usize = field(it.next(), line, "endpoint")?;
                let v: usize = field(it.next(), line, "endpoint")?;
                let c: W = field(it.next(), line, "capacity")?;
                if id >= m {
                    return Err(perr(line, format!("edge id {id} out of range")));
                }
                if u >= n || v >= n {
                    return Err(perr(line, format!("edge {id} references unknown vertex")));
                }
                if c.is_negative() {
                    return Err(perr(line, format!("edge {id} has negative capacity")));
                }
                if edges[id].replace((u, v, c)).is_some() {
                    return Err(perr(line, format!("edge {id} defined twice")));
                }
            }
            "r" => {
                let (n, m) = header.ok_or_else(|| perr(line, "rotation before header"))?;
                let v: usize = field(it.next(), line, "vertex")?;
                if v >= n {
                    return Err(perr(line, format!("unknown vertex {v}")));
                }
                let mut list = Vec::new();
                for tok in it {
                    let e: usize = tok.parse().map_err(|_| perr(line, format!("bad edge id `{tok}`")))?;
                    if e >= m {
                        return Err(perr(line, format!("rotation mentions unknown edge {e}")));
                    }
                    list.push(e);
                }
                if rots[v].replace(list).is_some() {
                    return Err(perr(line, format!("rotation of vertex {v} given twice")));
                }
            }
            other => return Err(perr(line, format!("unknown line type `{other}`"))),
        }
        if it_has_trailing(tag, l) {
            return Err(perr(line, "trailing tokens"));
        }
    }
    let (n, _) = header.ok_or_else(|| perr(0, "missing header"))?;
    let edges: Vec<_> = edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| perr(0, format!("edge {i} missing"))))
        .collect::<Result<_, _>>()?;
    let rots: Vec<_> = rots.into_iter().map(|r| r.unwrap_or_default()).collect();
    let graph = EmbeddedGraph::build(n, &edges, &rots)?;
    graph.validate()?;
    Ok(Instance { graph, meta })
}

fn it_has_trailing(tag: &str, l: &str) -> bool {
    let count = l.split_whitespace().count();
    match tag {
        "p" => count != 4,
        "e" => count != 5,
        _ => false,
    }
}

pub fn write_pg<W: Scalar>(inst: &Instance<W>) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    for m in &inst.meta {
        if m.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {m}");
        }
    }
    let _ = writeln!(out, "p planar {} {}", g.vertex_count(), g.edge_count());
    for (i, (u, v, c)) in g.edge_list().into_iter().enumerate() {
        let _ = writeln!(out, "e {i} {u} {v} {c}");
    }
    for (v, rot) in g.rotations().into_iter().enumerate() {
        let _ = write!(out, "r {v}");
        for e in rot {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Op<W> {
    Insert { u: usize, v: usize, cap: W, pos_u: usize, pos_v: usize },
    Delete { u: usize, v: usize },
    MaxFlow { s: usize, t: usize },
    Sp { x: usize, y: usize },
}

pub fn parse_ops<W: Scalar>(text: &str) -> Result<Vec<Op<W>>, FormatError> {
    let mut ops = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') || l == "c" || l.starts_with("c ") {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let want = match toks[0] {
            "insert" => 6,
            "delete" | "maxflow" | "sp" => 3,
            other => return Err(perr(line, format!("unknown op `{other}`"))),
        };
        if toks.len() != want {
            return Err(perr(line, format!("`{}` takes {} arguments", toks[0], want - 1)));
        }
        let mut it = toks[1..].iter().copied();
        let a: usize = field(it.next(), line, "vertex")?;
        let b: usize = field(it.next(), line, "vertex")?;
        ops.push(match toks[0] {
            "insert" => Op::Insert {
                u: a,
                v: b,
                cap: field(it.next(), line, "capacity")?,
                pos_u: field(it.next(), line, "position")?,
                pos_v: field(it.next(), line, "position")?,
            },
            "delete" => Op::Delete { u: a, v: b },
            "maxflow" => Op::MaxFlow { s: a, t: b },
            _ => Op::Sp { x: a, y: b },
        });
    }
    Ok(ops)
}

pub fn write_ops<W: Scalar>(ops: &[Op<W>]) -> String {
    let mut out = String::new();
    for op in ops {
        let _ = match op {
            Op::Insert { u, v, cap, pos_u, pos_v } => {
                writeln!(out, "insert {u} {v} {cap} {pos_u} {pos_v}")
            }
            Op::Delete { u, v } => writeln!(out, "delete {u} {v}"),
            Op::MaxFlow { s, t } => writeln!(out, "maxflow {s} {t}"),
            Op::Sp { x, y } => writeln!(out, "sp {x} {y}"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{grid, CapDist};

    #[test]
    fn pg_roundtrip() {
        let g = grid(4, 3, CapDist::Uniform(0, 20), 5);
        let inst = Instance { graph: g, meta: vec!["grid 4 3".into()] };
        let text = write_pg(&inst);
        let back: Instance<i64> = parse_pg(&text).unwrap();
        assert_eq!(write_pg(&back), text);
    }

    #[test]
    fn pg_errors_carry_line_numbers() {
        let bad = "p planar 2 1\ne 0 0 5 3\n";
        match parse_pg::<i64>(bad) {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let bad = "p planar 2 1\ne 0 0 1 x\n";
        assert!(matches!(parse_pg::<i64>(bad), Err(FormatError::Parse { line: 2, .. })));
        let missing = "p planar 2 1\ne 0 0 1 3\nr 0 0\nr 1\n";
        assert!(matches!(parse_pg::<i64>(missing), Err(FormatError::Graph(_))));
    }

    #[test]
    fn ops_roundtrip() {
        let text = "insert 0 3 7 1 0\ndelete 0 1\nmaxflow 0 8\nsp 2 5\n";
        let ops: Vec<Op<i64>> = parse_ops(text).unwrap();
        assert_eq!(ops.len(), 4);
        assert_eq!(write_ops(&ops), text);
        assert!(matches!(parse_ops::<i64>("sp 1\n"), Err(FormatError::Parse { line: 1, .. })));
    }
}
