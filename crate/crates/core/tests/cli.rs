use std::path::PathBuf;

use serde_json::Value;
use treeinv::cli::run;
use treeinv::graph6::parse_graph6_records;
use treeinv::tree::parse_edge_list_records;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn treeinv(args: &[&str]) -> Output {
    let mut argv = vec!["treeinv"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn labels(json: &Value) -> Vec<String> {
    json["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e[2].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn invert_p5_json() {
    let p5 = data("p5.txt");
    let o = treeinv(&["invert", "--format", "edge-list", &p5, "--out", "json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(v["m"], 3);
    assert_eq!(v["nu"], 2);
    let edges = v["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 6);
    let find = |u: u64, w: u64| {
        edges
            .iter()
            .find(|e| e[0] == u && e[1] == w)
            .map(|e| e[2].as_str().unwrap().to_string())
    };
    assert_eq!(find(0, 1).as_deref(), Some("2/3"));
    assert_eq!(find(1, 2).as_deref(), Some("1/3"));
    assert_eq!(find(0, 3).as_deref(), Some("-1/3"));
}

#[test]
fn invert_star_and_p2() {
    let o = treeinv(&["invert", &data("star5.txt")]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(o.stdout.trim()).unwrap();
    let l = labels(&v);
    assert_eq!(l.len(), 5);
    assert!(l.iter().all(|x| x == "1/5"));

    let o = treeinv(&["invert", &data("p2.txt")]);
    let v: Value = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(labels(&v), vec!["1/1"]);
}

#[test]
fn invert_tsv_with_float_column() {
    let o = treeinv(&["invert", &data("p5.txt"), "--out", "tsv", "--float"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("# n\t5\n# nu\t2\n# m\t3\n"));
    assert!(o.stdout.contains("1/3"));
    assert!(o.stdout.contains("0.333333"));
    let exact: String = o.stdout.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let b = treeinv::io::matrix_from_tsv(&exact).unwrap();
    assert_eq!(b, treeinv::generalized_inverse(&treeinv::Tree::path(5).unwrap()));
}

#[test]
fn invert_rejects_non_tree() {
    let o = treeinv(&["invert", &data("cycle4.g6")]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_files() {
    let o = treeinv(&["verify", &data("p5.txt")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let report: Value = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(report["failed"], 0);

    let o = treeinv(&["verify", &data("cycle4.g6")]);
    assert_eq!(o.code, 2);

    let o = treeinv(&["verify", "/nonexistent/trees.txt"]);
    assert_eq!(o.code, 2);
}

#[test]
fn verify_batch_keeps_going_past_bad_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.g6");
    std::fs::write(&path, "Bg\nCl\nCh\n").unwrap();
    let o = treeinv(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    let lines: Vec<Value> = o.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["tree_id"], "Bg");
    assert!(lines[1]["error"].is_string());
    assert_eq!(lines[2]["tree_id"], "Ch");
}

#[test]
fn verify_all_trees_of_order_7() {
    let o = treeinv(&["verify", "--all-trees", "7", "--quiet"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stderr.contains("16807 tree(s): 16807 passed, 0 failed"), "{}", o.stderr);
}

#[test]
fn verify_random_is_reproducible() {
    let args = ["verify", "--random", "5", "--n", "30", "--seed", "11"];
    let a = treeinv(&args);
    let b = treeinv(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.lines().count(), 5);
    assert!(treeinv(&["verify", "--random", "5"]).code == 2);
}

#[test]
fn gen_random_matches_golden_file() {
    let o = treeinv(&["gen", "--random", "--n", "20", "--seed", "7"]);
    assert_eq!(o.code, 0);
    let golden = std::fs::read_to_string(data("gen_random_n20_seed7.txt")).unwrap();
    assert_eq!(o.stdout, golden);
    assert!(o.stderr.contains("seed 7"));
}

#[test]
fn gen_exhaustive_counts_and_round_trips() {
    let o = treeinv(&["gen", "--exhaustive", "--n", "4"]);
    assert_eq!(o.code, 0);
    let trees: Vec<_> = parse_edge_list_records(&o.stdout)
        .into_iter()
        .map(|(_, t)| t.unwrap())
        .collect();
    assert_eq!(trees.len(), 16);

    let o = treeinv(&["gen", "--exhaustive", "--n", "5", "--out-format", "graph6"]);
    let trees: Vec<_> = parse_graph6_records(&o.stdout).map(|(_, t)| t.unwrap()).collect();
    assert_eq!(trees.len(), 125);
    let distinct: std::collections::HashSet<_> = trees.iter().map(|t| t.to_edge_list()).collect();
    assert_eq!(distinct.len(), 125);
}

#[test]
fn gen_output_is_byte_identical_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["edge-list", "graph6"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for path in [&a, &b] {
            let o = treeinv(&[
                "gen", "--random", "--n", "33", "--seed", "99", "--count", "4", "--out-format", format, "-o",
                path.to_str().unwrap(),
            ]);
            assert_eq!(o.code, 0);
        }
        let text = std::fs::read_to_string(&a).unwrap();
        assert_eq!(text, std::fs::read_to_string(&b).unwrap());

        let reparsed: Vec<_> = match format {
            "graph6" => parse_graph6_records(&text).map(|(_, t)| t.unwrap()).collect(),
            _ => parse_edge_list_records(&text).into_iter().map(|(_, t)| t.unwrap()).collect(),
        };
        assert_eq!(reparsed.len(), 4);
        let rendered: String = match format {
            "graph6" => reparsed
                .iter()
                .map(|t| format!("{}\n", treeinv::graph6::to_graph6(t).unwrap()))
                .collect(),
            _ => reparsed.iter().map(|t| t.to_edge_list()).collect(),
        };
        assert_eq!(rendered, text);
    }
}

#[test]
fn gen_rejects_tiny_orders_and_bad_flags() {
    assert_eq!(treeinv(&["gen", "--n", "1", "--random"]).code, 2);
    assert_eq!(treeinv(&["gen", "--n", "1", "--exhaustive"]).code, 2);
    assert_eq!(treeinv(&["gen", "--n", "1"]).code, 2);
    assert_eq!(treeinv(&["frobnicate"]).code, 2);
    assert_eq!(treeinv(&["--help"]).code, 0);
}
