//! End-to-end runs of the `flipdist` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flipdist::model::{triangulation_to_tree, Triangulation};
use flipdist::search::enumerate_triangulations;

fn flipdist(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flipdist"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// The value of the first `key=` line.
fn field(text: &str, key: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")).map(str::to_string))
}

struct Dir(tempfile::TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn path(&self) -> &Path {
        self.0.path()
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        flipdist(self.path(), args)
    }
}

fn square_pair(d: &Dir) {
    d.file("a.tri", "n=2\ndiagonals=(0,2)\n");
    d.file("b.tri", "n=2\ndiagonals=(1,3)\n");
}

#[test]
fn distance_of_square_pair() {
    let d = Dir::new();
    square_pair(&d);
    let o = d.run(&["distance", "a.tri", "b.tri"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "distance").as_deref(), Some("1"));
    let o = d.run(&["distance", "a.tri", "a.tri"]);
    assert_eq!(field(&stdout(&o), "distance").as_deref(), Some("0"));
    let o = d.run(&["distance", "a.tri", "b.tri", "--path"]);
    assert!(stdout(&o).contains("flip (0,2) -> (1,3)"));
    let o = d.run(&["distance", "a.tri", "b.tri", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,distance\n2,1\n");
}

#[test]
fn tree_route_matches_triangulation_route() {
    let d = Dir::new();
    let all: Vec<Triangulation> = enumerate_triangulations(5).unwrap().collect();
    for (i, j) in [(0, 41), (3, 17), (40, 2), (10, 10)] {
        d.file("x.tri", &all[i].to_text());
        d.file("y.tri", &all[j].to_text());
        d.file("x.tree", &triangulation_to_tree(&all[i]).to_text());
        d.file("y.tree", &triangulation_to_tree(&all[j]).to_text());
        let a = stdout(&d.run(&["distance", "x.tri", "y.tri"]));
        let b = stdout(&d.run(&["distance", "--trees", "x.tree", "y.tree"]));
        assert_eq!(a, b);
    }
}

#[test]
fn distance_errors_map_to_exit_codes() {
    let d = Dir::new();
    square_pair(&d);
    d.file("bad.tri", "n=2\ndiagonals=(0,1)\n");
    assert_eq!(code(&d.run(&["distance", "a.tri", "bad.tri"])), 2);
    assert_eq!(code(&d.run(&["distance", "a.tri", "missing.tri"])), 2);
    d.file("c.tri", "n=3\ndiagonals=(0,2);(0,3)\n");
    assert_eq!(code(&d.run(&["distance", "a.tri", "c.tri"])), 2);
    let fan = |apex| Triangulation::fan(10, apex).unwrap().to_text();
    d.file("f0.tri", &fan(0));
    d.file("f6.tri", &fan(6));
    let o = d.run(&["distance", "f0.tri", "f6.tri", "--node-budget", "5", "--no-fallback"]);
    assert_eq!(code(&o), 3);
    let o = d.run(&["distance", "f0.tri", "f6.tri", "--node-budget", "5"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn bound_and_certificates() {
    let d = Dir::new();
    square_pair(&d);
    let o = d.run(&["bound", "a.tri", "b.tri", "--certificate", "w.cert"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("m*=1 M*=1"));
    let o = d.run(&["bound", "a.tri", "b.tri", "--verify", "w.cert"]);
    assert_eq!(field(&stdout(&o), "bound").as_deref(), Some("1"));
    d.file("zero.cert", "n=2\n");
    let o = d.run(&["bound", "a.tri", "b.tri", "--verify", "zero.cert"]);
    assert_eq!(field(&stdout(&o), "bound").as_deref(), Some("0"));
    d.file("big.cert", "n=2\n0 1 2 2\n");
    let o = d.run(&["bound", "a.tri", "b.tri", "--verify", "big.cert"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("{0,1,2,3}"));
    d.file("junk.cert", "n=2\n0 1 x 2\n");
    assert_eq!(code(&d.run(&["bound", "a.tri", "b.tri", "--verify", "junk.cert"])), 2);
    let o = d.run(&["bound", "a.tri", "b.tri", "--format", "csv"]);
    assert!(stdout(&o).starts_with("section,key,value\nstatus,,optimal\noptimum,,1"));
}

#[test]
fn construct_writes_reparsable_files() {
    let d = Dir::new();
    let o = d.run(&["construct", "-n", "16", "--out-dir", "out"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(field(&text, "histogram").as_deref(), Some("4:4,5:4,6:10"));
    assert_eq!(field(&text, "faces").as_deref(), Some("32"));
    assert_eq!(field(&text, "edges").as_deref(), Some("48"));
    let out = d.path().join("out");
    for name in ["zigzag.tri", "rotated.tri"] {
        let t = fs::read_to_string(out.join(name)).unwrap();
        assert_eq!(Triangulation::parse(&t).unwrap().to_text(), t);
    }
    assert_eq!(fs::read_to_string(out.join("sphere.faces")).unwrap().lines().count(), 32);
    assert!(fs::read_to_string(out.join("sphere.dot")).unwrap().starts_with("graph"));
}

#[test]
fn construct_single_and_strict_failure() {
    let d = Dir::new();
    let o = d.run(&["construct", "-n", "3", "--single"]);
    assert_eq!(stdout(&o), "n=3\ndiagonals=(1,3);(1,4)\n");
    assert_eq!(code(&d.run(&["construct", "-n", "16", "-r", "0"])), 2);
    let o = d.run(&["construct", "-n", "16", "-r", "0", "--relaxed"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "simple").as_deref(), Some("false"));
    assert_eq!(code(&d.run(&["construct", "-n", "8"])), 2);
    let o = d.run(&["construct", "-n", "9", "--format", "csv"]);
    assert!(stdout(&o).lines().count() == 12);
}

#[test]
fn verify_weights_at_sixteen() {
    let d = Dir::new();
    let o = d.run(&["verify-weights", "-n", "16", "--certificate", "w16.cert", "--provenance", "w16.classes"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(field(&text, "total_weight").as_deref(), Some("4"));
    assert_eq!(field(&text, "constant").as_deref(), Some("28"));
    assert_eq!(field(&text, "violations").as_deref(), Some("0"));
    assert_eq!(field(&text, "flows_saturated").as_deref(), Some("18/18"));
    assert_eq!(field(&text, "status").as_deref(), Some("ok"));
    let o = d.run(&["verify-weights", "-n", "16", "--verify", "w16.cert"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "bound").as_deref(), Some("4"));
    let classes = fs::read_to_string(d.path().join("w16.classes")).unwrap();
    assert_eq!(classes.lines().count(), 816);
}

#[test]
fn corrupted_certificate_fails_verification() {
    let d = Dir::new();
    d.run(&["verify-weights", "-n", "16", "--certificate", "w.cert"]);
    let text = fs::read_to_string(d.path().join("w.cert")).unwrap();
    // Raise the first listed weight by 1.
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let fields: Vec<&str> = lines[1].split(' ').collect();
    let value: flipdist::lp::Rational = flipdist::lp::parse_rational(fields[3]).unwrap();
    lines[1] = format!(
        "{} {} {} {}",
        fields[0],
        fields[1],
        fields[2],
        flipdist::lp::format_rational(&(value + flipdist::lp::int(1)))
    );
    d.file("bad.cert", &(lines.join("\n") + "\n"));
    let o = d.run(&["verify-weights", "-n", "16", "--verify", "bad.cert"]);
    assert_eq!(code(&o), 4);
    assert_ne!(field(&stdout(&o), "violations").as_deref(), Some("0"));
    d.file("wrong_n.cert", "n=15\n");
    assert_eq!(code(&d.run(&["verify-weights", "-n", "16", "--verify", "wrong_n.cert"])), 2);
}

#[test]
fn verify_weights_reports_shortfall_at_twenty_five() {
    let d = Dir::new();
    let o = d.run(&["verify-weights", "-n", "25"]);
    assert_eq!(code(&o), 4);
    let text = stdout(&o);
    assert_eq!(field(&text, "total_weight").as_deref(), Some("22"));
    assert_eq!(field(&text, "violations").as_deref(), Some("6"));
    let short: Vec<&str> = text.lines().filter(|l| l.starts_with("unsaturated=")).collect();
    assert_eq!(short.len(), 5);
}

#[test]
fn full_variant_documents_its_failure() {
    let d = Dir::new();
    let o = d.run(&["verify-weights", "-n", "16", "--variant", "full", "--solver-budget", "3"]);
    assert_eq!(code(&o), 4);
    let text = stdout(&o);
    assert!(field(&text, "solver").unwrap().starts_with("failed"));
    assert_eq!(field(&text, "total_weight").as_deref(), Some("26"));
    assert_eq!(field(&text, "variant").as_deref(), Some("full"));
}

#[test]
fn verify_weights_formats_and_limits() {
    let d = Dir::new();
    let o = d.run(&["verify-weights", "-n", "16", "--format", "csv"]);
    assert_eq!(stdout(&o), "i,j,k,l,sum,bound\n");
    let o = d.run(&["verify-weights", "-n", "16", "--format", "dot", "--vertex", "3"]);
    assert!(stdout(&o).starts_with("digraph flow {"));
    assert_eq!(code(&d.run(&["verify-weights", "-n", "41"])), 2);
    assert_eq!(code(&d.run(&["verify-weights", "-n", "16", "-c", "0"])), 2);
    assert_eq!(code(&d.run(&["verify-weights", "-n", "16", "--c-outer", "20"])), 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let d = Dir::new();
    d.file("run.conf", "# desk run\nn=16\nformat=csv\n");
    let o = d.run(&["verify-weights", "--config", "run.conf"]);
    assert_eq!(stdout(&o), "i,j,k,l,sum,bound\n");
    let o = d.run(&["verify-weights", "--config", "run.conf", "--format", "text"]);
    assert_eq!(field(&stdout(&o), "n").as_deref(), Some("16"));
    d.file("bad.conf", "n=16\ncolour=blue\n");
    assert_eq!(code(&d.run(&["verify-weights", "--config", "bad.conf"])), 2);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let d = Dir::new();
    let one = stdout(&d.run(&["verify-weights", "-n", "25", "--threads", "1"]));
    let four = stdout(&d.run(&["verify-weights", "-n", "25", "--threads", "4"]));
    assert_eq!(one, four);
    assert_eq!(code(&d.run(&["verify-weights", "-n", "16", "--threads", "0"])), 2);
}

#[test]
fn diameter_values() {
    let d = Dir::new();
    let o = d.run(&["diameter", "-n", "2"]);
    assert!(stdout(&o).starts_with("n=2 diameter=1 exact=true\n"));
    let o = d.run(&["diameter", "-n", "3"]);
    assert!(stdout(&o).starts_with("n=3 diameter=2 exact=true\n"));
    let o = d.run(&["diameter", "-n", "6", "--sweep", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "n,diameter,exact\n2,1,true\n3,2,true\n4,4,true\n5,5,true\n6,7,true\n"
    );
    assert_eq!(code(&d.run(&["diameter", "-n", "10"])), 2);
    let o = d.run(&["diameter", "-n", "7", "--sampled", "3", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("exact=false"));
}

#[test]
fn convert_round_trip_and_output_file() {
    let d = Dir::new();
    d.file("t.tri", "n=4\ndiagonals=(0,2);(0,3);(3,5)\n");
    let o = d.run(&["convert", "t.tri", "-o", "t.tree"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let o = d.run(&["convert", "t.tree"]);
    assert_eq!(stdout(&o), "n=4\ndiagonals=(0,2);(0,3);(3,5)\n");
    d.file("bad.tree", "((LL)");
    assert_eq!(code(&d.run(&["convert", "bad.tree"])), 2);
    assert_eq!(code(&d.run(&["convert", "t.tri", "--format", "dot"])), 2);
}
