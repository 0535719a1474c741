use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn exe() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_biaffine"));
    c.env_remove("BIAFFINE_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    exe().args(args).output().unwrap()
}

fn tmpdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("biaffine-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn s(p: &Path) -> String {
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_is_byte_identical_across_runs() {
    let d = tmpdir("det");
    let (a, b) = (d.join("a.txt"), d.join("b.txt"));
    for f in [&a, &b] {
        let o = run(&["build", "--p", "5", "--scheme", "M2", "--out", &s(f)]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let la = std::fs::read_to_string(d.join("a.txt.labels")).unwrap();
    assert!(la.starts_with("R0 = 0"));
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn schurian_verdicts() {
    let o = run(&["schurian", "--p", "3", "--scheme", "M4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Schurian: rank 5 = group rank 5\n");
    let o = run(&["schurian", "--p", "3", "--scheme", "M1"]);
    assert!(stdout(&o).starts_with("Non-Schurian: rank 8 < group rank"));
}

#[test]
fn file_round_trip_through_closure_and_aut() {
    let d = tmpdir("rt");
    let m = d.join("m.txt");
    let c = d.join("c.txt");
    assert_eq!(run(&["build", "--p", "3", "--scheme", "M", "--out", &s(&m)]).status.code(), Some(0));
    assert_eq!(run(&["closure", "--input", &s(&m), "--out", &s(&c)]).status.code(), Some(0));
    // a coherent configuration is its own closure
    let g0 = biaffine::ColorGraph::parse_text(&std::fs::read_to_string(&m).unwrap()).unwrap();
    let g1 = biaffine::ColorGraph::parse_text(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert!(g0.same_partition(&g1));
    let o = run(&["aut", "--input", &s(&c)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("order 27\n2-orbit rank 16\n"), "{out}");
    let k: usize = out.lines().nth(3).unwrap().strip_prefix("generators ").unwrap().parse().unwrap();
    assert_eq!(out.lines().skip(4).filter(|l| l.starts_with('(')).count(), k);
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn manifest_records_digests() {
    let d = tmpdir("man");
    let out = d.join("n6.txt");
    let man = d.join("run.json");
    let o = run(&["--manifest", &s(&man), "build", "--p", "5", "--scheme", "N6", "--out", &s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&man).unwrap()).unwrap();
    assert_eq!(v["command"], "build");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["complete"], true);
    assert_eq!(v["parameters"]["p"], "5");
    let digest = v["outputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest, biaffine_cli::manifest::sha256_hex(&std::fs::read(&out).unwrap()));
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["build", "--p", "3", "--scheme", "M", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--p", "9", "--scheme", "M"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--p", "7"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "--name", "mms"]).status.code(), Some(2));
    assert_eq!(run(&["closure", "--input", "/nonexistent/graph.txt"]).status.code(), Some(2));
    let o = exe().args(["build", "--p", "3", "--scheme", "M"]).env("BIAFFINE_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));

    let d = tmpdir("bad");
    let f = d.join("bad.txt");
    std::fs::write(&f, "3 2\n0 1 1\n1 0\n").unwrap();
    assert_eq!(run(&["aut", "--input", &s(&f)]).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn budget_exhaustion_exits_3_with_partial_manifest() {
    let d = tmpdir("budget");
    let m = d.join("m7.txt");
    let man = d.join("run.json");
    assert_eq!(run(&["build", "--p", "7", "--scheme", "M", "--out", &s(&m)]).status.code(), Some(0));
    let o = run(&["--manifest", &s(&man), "caut", "--input", &s(&m), "--budget", "0.05"]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&man).unwrap()).unwrap();
    assert_eq!(v["exit_code"], 3);
    assert_eq!(v["complete"], false);
    assert_eq!(v["inputs"].as_array().unwrap().len(), 1);
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn spectrum_template_mismatch_exits_1() {
    let d = tmpdir("spec");
    let m = d.join("m.txt");
    let t = d.join("t.txt");
    assert_eq!(run(&["build", "--p", "3", "--scheme", "M4", "--out", &s(&m)]).status.code(), Some(0));
    let o = run(&["spectrum", "--input", &s(&m), "--color", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "1\t18"), "{}", stdout(&o));
    std::fs::write(&t, "1 18\n").unwrap();
    let o = run(&["spectrum", "--input", &s(&m), "--color", "0", "--expect", &s(&t)]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&t, "2 18\n").unwrap();
    let o = run(&["spectrum", "--input", &s(&m), "--color", "0", "--expect", &s(&t)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["spectrum", "--input", &s(&m), "--color", "99"]).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn catalog_outputs() {
    let o = run(&["catalog", "--name", "pappus"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = run(&["catalog", "--name", "bosak"]);
    assert_eq!(o.status.code(), Some(0));
    // directed: arc list with 18·4 arcs
    assert!(stdout(&o).starts_with("18 72\n"));
    assert_eq!(run(&["catalog", "--name", "wenger", "--p", "5"]).status.code(), Some(0));
}

#[test]
fn merge_from_subgroup_file_matches_named_subgroup() {
    let d = tmpdir("merge");
    let named = run(&["merge", "--p", "3", "--subgroup", "K1"]);
    assert_eq!(named.status.code(), Some(0));
    // g1 swaps A_i<->C_i, B_i<->D_i, E_i<->F_i in the base color order
    let p = 3usize;
    let (a, b, c, dd, e, f) = (0, p, 2 * p - 1, 3 * p - 1, 4 * p - 2, 5 * p - 2);
    let mut img: Vec<usize> = (0..6 * p - 2).collect();
    for i in 0..p {
        img.swap(a + i, c + i);
        img.swap(e + i, f + i);
    }
    for i in 0..p - 1 {
        img.swap(b + i, dd + i);
    }
    let file = d.join("k1.txt");
    std::fs::write(&file, img.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n").unwrap();
    let from_file = run(&["merge", "--p", "3", "--subgroup", &s(&file)]);
    assert_eq!(from_file.status.code(), Some(0), "{}", String::from_utf8_lossy(&from_file.stderr));
    assert_eq!(named.stdout, from_file.stdout);
    let _ = std::fs::remove_dir_all(d);
}

#[test]
fn reproduce_prints_rows_and_fails_on_errata() {
    let o = run(&["reproduce", "--suite", "appendix1", "--p", "3"]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("PASS tensor M1 p=3")));
    // the M2 table carries printed errors, so the suite reports them and exits 1
    assert!(out.lines().any(|l| l.starts_with("FAIL tensor M2 p=3")));
    assert_eq!(o.status.code(), Some(1));
}
