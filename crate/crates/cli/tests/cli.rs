use std::process::{Command, Output};

use lrvanish::poly::Poly;
use lrvanish::schur::{expand_product, rewrite_in_beta};
use lrvanish::tableau::TableauJson;
use lrvanish::{EdgeLabeledTableau, Partition};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrvanish")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn vanish_exit_codes() {
    let out = run(&["vanish", "-l", "1", "-m", "1", "-n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("NONVANISHING"));

    let out = run(&["vanish", "-l", "1", "-m", "1", "-n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("VANISHES"));

    let out = run(&["vanish", "-l", "1", "-m", "1", "-n", "1", "--classical"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["vanish", "-l", "1", "-m", "1", "-n", "2", "--classical"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_input_is_a_usage_error() {
    for args in [
        vec!["vanish", "-l", "1,2", "-m", "1", "-n", "1"],
        vec!["vanish", "-l", "x", "-m", "1", "-n", "1"],
        vec!["vanish", "-l", "1", "-m", "1"],
        vec!["dump", "-l", "1", "-m", "-1", "-n", "1"],
        vec!["expand", "-l", "1"],
        vec!["census", "--box", "3by3"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn witness_is_a_valid_lattice_tableau() {
    let out = run(&[
        "vanish", "-l", "2,2,1,1", "-m", "2,2,2,1,1", "-n", "2,2,2,2,2", "--witness", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["vanishes"], false);
    let json: TableauJson = serde_json::from_value(report["witness"].clone()).unwrap();
    let t = EdgeLabeledTableau::from_json(&json).unwrap();
    assert!(t.is_valid(&p(&[2, 2, 2, 1, 1])));
    assert!(t.column_word().is_lattice() && t.row_word().is_lattice());
}

#[test]
fn json_report_round_trips() {
    let out = run(&["vanish", "-l", "2,1", "-m", "2,1", "-n", "3,2", "--crosscheck", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["oracle_nonzero"], true);
    assert_eq!(value["lambda"], serde_json::json!([2, 1]));
    let mut keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "classical",
            "integer_point",
            "lambda",
            "mu",
            "nu",
            "oracle_nonzero",
            "rational_point",
            "vanishes",
            "witness",
            "witness_budget_exceeded"
        ]
    );
    let reparsed: serde_json::Value = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(reparsed, value);
}

#[test]
fn vanish_is_deterministic() {
    let args = ["vanish", "-l", "2,1", "-m", "1,1", "-n", "2,1,1", "--witness", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn expand_single_boxes() {
    let out = run(&["expand", "-l", "1", "-m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "(2): 1\n(1,1): 1\n(1): -1*y2 +1*y3 | beta: 1*b2\n");
    let out = run(&["expand", "-l", "", "-m", ""]);
    assert_eq!(stdout(&out), "(): 1\n");
}

fn library_lines(lambda: &Partition, mu: &Partition) -> String {
    let n = lambda.len() + mu.len();
    let mut terms: Vec<(Partition, Poly)> = expand_product(lambda, mu, n).unwrap().into_iter().collect();
    terms.sort_by(|(a, _), (b, _)| b.size().cmp(&a.size()).then_with(|| b.cmp(a)));
    let plain = |q: &Poly| q.to_string().trim_start_matches('+').to_string();
    terms
        .iter()
        .map(|(nu, c)| {
            if c.is_constant() {
                format!("({nu}): {}\n", plain(c))
            } else {
                format!("({nu}): {} | beta: {}\n", plain(c), plain(&rewrite_in_beta(c).unwrap()))
            }
        })
        .collect()
}

#[test]
fn expand_matches_golden_files() {
    for (l, m, file) in [
        ("2,1", "1", include_str!("golden/expand_21_1.txt")),
        ("2,1", "2,1", include_str!("golden/expand_21_21.txt")),
    ] {
        let out = run(&["expand", "-l", l, "-m", m]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), file, "expand {l} {m}");
        let lambda: Partition = l.parse().unwrap();
        let mu: Partition = m.parse().unwrap();
        assert_eq!(library_lines(&lambda, &mu), file);
    }
}

#[test]
fn expand_budget() {
    assert_eq!(run(&["expand", "-l", "3,3", "-m", "2,2,2"]).status.code(), Some(3));
    assert_eq!(run(&["expand", "-l", "1,1,1,1", "-m", "1,1,1"]).status.code(), Some(3));
    assert_eq!(run(&["expand", "-l", "1,1,1,1", "-m", "1,1,1", "--max-vars", "7"]).status.code(), Some(0));
    assert_eq!(run(&["expand", "-l", "1", "-m", "1", "--vars", "1"]).status.code(), Some(2));
}

#[test]
fn dump_formats() {
    let out = run(&["dump", "-l", "", "-m", "", "-n", ""]);
    assert_eq!(stdout(&out), "# 0 variables, 0 rows\n");

    let out = run(&["dump", "-l", "2,2,1,1", "-m", "2,2,2,1,1", "-n", "2,2,2,2,2", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["num_vars"], 50);

    let out = run(&["dump", "-l", "1", "-m", "1", "-n", "2", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for row in value["rows"].as_array().unwrap() {
        for c in row["coeffs"].as_array().unwrap() {
            assert!((-1..=1).contains(&c.as_i64().unwrap()));
        }
    }
    let text = stdout(&run(&["dump", "-l", "1", "-m", "1", "-n", "2"]));
    assert!(text.contains("B(1,*): +rB[1][1] = 1"), "{text}");
}

#[test]
fn census_small_boxes() {
    let out = run(&["census", "--box", "1x1", "--mu-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 disagreements\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let out = run(&["census", "--box", "2x2", "--mu-max", "3", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 disagreements\n");
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("lambda,mu,nu,lp_feasible,tableau_count_found,oracle_nonzero,agree")
    );
    // 6 partitions in a 2x2 box, 7 of size at most 3.
    assert_eq!(lines.count(), 6 * 7 * 6);
    assert!(csv.contains("\n1,1,1,true,1,true,true\n"), "{csv}");
    assert!(csv.contains("\n1,1,\"1,1\",true,1,true,true\n"), "{csv}");
}
