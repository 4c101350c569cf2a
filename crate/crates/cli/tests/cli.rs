use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_planarcut"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn planarcut")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write_instance(name: &str, gen: &[&str]) -> PathBuf {
    let path = tmp(name);
    let mut args = vec!["generate"];
    args.extend_from_slice(gen);
    args.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn value(o: &Output) -> String {
    stdout(o).lines().find_map(|l| l.strip_prefix("value ").map(str::to_string)).expect("value line")
}

#[test]
fn generate_is_deterministic() {
    let a = run(&["generate", "random", "60", "--caps", "uniform:0:20", "--seed", "9"]);
    let b = run(&["generate", "random", "60", "--caps", "uniform:0:20", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["generate", "random", "60", "--caps", "uniform:0:20", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn wheel_and_grid_values() {
    let w = write_instance("wheel5.pg", &["wheel", "5"]);
    assert_eq!(value(&run(&["mincut", w.to_str().unwrap(), "0", "1"])), "3");
    let g = write_instance("grid2.pg", &["grid", "2", "2"]);
    assert_eq!(value(&run(&["mincut", g.to_str().unwrap(), "0", "3", "--mode", "reif"])), "2");
}

#[test]
fn modes_agree_with_oracle() {
    let p = write_instance("rand80.pg", &["random", "80", "--caps", "uniform:0:20", "--seed", "4"]);
    let p = p.to_str().unwrap();
    let want = value(&run(&["mincut", p, "3", "70", "--mode", "oracle"]));
    for mode in ["reif", "fast", "general"] {
        assert_eq!(value(&run(&["mincut", p, "3", "70", "--mode", mode])), want, "{mode}");
    }
    for mode in ["exact", "layered", "accelerated"] {
        let o = run(&["maxflow", p, "3", "70", "--mode", mode]);
        if o.status.success() {
            assert_eq!(value(&o), want, "{mode}");
        }
    }
}

#[test]
fn maxflow_output_passes_verify() {
    let p = write_instance("rand50.pg", &["random", "50", "--caps", "uniform:1:9", "--seed", "2"]);
    let p = p.to_str().unwrap();
    let o = run(&["maxflow", p, "0", "40"]);
    assert!(o.status.success());
    let flow = tmp("rand50.flow");
    std::fs::write(&flow, &o.stdout).unwrap();
    let v = run(&["verify", p, "0", "40", "--flow", flow.to_str().unwrap()]);
    assert!(v.status.success(), "{}", String::from_utf8_lossy(&v.stderr));
    assert!(stdout(&v).contains("flow feasible and maximum"));
}

#[test]
fn sp_to_self_is_zero_and_certificate_matches() {
    let p = write_instance("grid6.pg", &["grid", "6", "6", "--caps", "uniform:1:9", "--seed", "1"]);
    let p = p.to_str().unwrap();
    assert_eq!(value(&run(&["sp", p, "7", "7"])), "0");
    let want = value(&run(&["sp", p, "0", "35", "--mode", "oracle"]));
    let o = run(&["sp", p, "0", "35", "--certificate"]);
    assert_eq!(value(&o), want);
    let path = stdout(&o).lines().find(|l| l.starts_with("path ")).unwrap().to_string();
    let verts: Vec<&str> = path.split_whitespace().skip(1).collect();
    assert_eq!((verts[0], *verts.last().unwrap()), ("0", "35"));
}

#[test]
fn injected_fault_is_detected() {
    let p = write_instance("grid30.pg", &["grid", "30", "30", "--caps", "uniform:1:20", "--seed", "3"]);
    let o = run(&["verify", p.to_str().unwrap(), "100", "800", "--inject-ddg-fault"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("reproducer"));
}

#[test]
fn replay_script() {
    let p = write_instance("grid3.pg", &["grid", "3", "3"]);
    let ops = tmp("grid3.ops");
    std::fs::write(&ops, "maxflow 0 8\ndelete 0 1\nmaxflow 0 8\nsp 0 8\n").unwrap();
    let o = run(&["replay", p.to_str().unwrap(), ops.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let vals: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(vals, ["value 2", "value 1", "value 4"]);
}

#[test]
fn exit_codes() {
    let bad = tmp("bad.pg");
    std::fs::write(&bad, "this is not a graph\n").unwrap();
    assert_eq!(run(&["mincut", bad.to_str().unwrap(), "0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["mincut", "/nonexistent.pg", "0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let p = write_instance("grid2b.pg", &["grid", "2", "2"]);
    assert_eq!(run(&["mincut", p.to_str().unwrap(), "0", "0"]).status.code(), Some(1));
}

#[test]
fn bench_csv_shape() {
    let o = run(&["bench", "--sizes", "6,7", "--r", "16", "--modes", "reif,fast"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,r,mode,seconds,value,ratio"));
    assert_eq!(lines.count(), 4);
}
