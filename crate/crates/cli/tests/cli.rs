use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use spqg::io::{parse_partition, read_closure_jsonl, read_matrix_market};
use spqg::named;
use spqg::partition::SpatialPartition;
use spqg::tensor_maps::{s_map, Dims, SizeCap};

fn spqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spqg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = spqg(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn compose_cap_on_cup_leaves_one_loop() {
    let dir = tempfile::tempdir().unwrap();
    let cap = dir.path().join("cap.json");
    let cup = dir.path().join("cup.json");
    fs::write(&cap, spqg::io::partition_to_json(&named::pair(1))).unwrap();
    fs::write(&cup, spqg::io::partition_to_json(&named::cup(1))).unwrap();
    let out = ok(&[
        "op",
        "compose",
        "--upper",
        cap.to_str().unwrap(),
        "--lower",
        cup.to_str().unwrap(),
    ]);
    let mut lines = out.lines();
    assert_eq!(
        parse_partition(lines.next().unwrap()).unwrap(),
        SpatialPartition::empty(1)
    );
    assert_eq!(lines.next(), Some("loops=1"));
}

#[test]
fn op_outputs_reparse() {
    let lp = named::level_pair();
    let cases: Vec<(Vec<&str>, SpatialPartition)> = vec![
        (vec!["op", "involute", "--partition", "@level-pair"], lp.involution()),
        (
            vec!["op", "tensor", "--left", "@id^2", "--right", "@level-pair"],
            named::identity(2).tensor(&lp).unwrap(),
        ),
        (
            vec!["op", "amplify", "--partition", "@cross", "--m", "2"],
            named::cross().amplify(2).unwrap(),
        ),
        (
            vec!["op", "flatten", "--partition", "@level-cross"],
            named::level_cross().flatten(),
        ),
        (
            vec!["op", "stack", "--partition", "@pair", "--partition", "@pair"],
            SpatialPartition::stack(&[named::pair(1), named::pair(1)]).unwrap(),
        ),
        (
            vec!["op", "rotate", "--partition", "@cross", "--corner", "left-upper-down"],
            named::cross().rotate("left-upper-down".parse().unwrap()).unwrap(),
        ),
    ];
    for (args, expected) in cases {
        let text = ok(&args);
        assert_eq!(parse_partition(text.trim()).unwrap(), expected, "{args:?}");
        let mut json_args = args.clone();
        json_args.extend(["--format", "json"]);
        let json = ok(&json_args);
        assert_eq!(parse_partition(json.trim()).unwrap(), expected, "{args:?} json");
    }
}

#[test]
fn classify_gives_the_table_row() {
    let out = ok(&["classify", "@level-pair", "--classes", "all", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let c = &v["classes"];
    assert_eq!(c["resp-levels"], false);
    assert_eq!(c["symm"], true);
    assert_eq!(c["no-diagonal-symm"], true);
    assert_eq!(c["no-geodesic-symm"], false);
    assert_eq!(c["even-cols"], false);

    let text = ok(&["classify", "--partition", "@level-cross"]);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split_whitespace().collect();
    assert_eq!(row, ["no", "yes", "no", "yes", "yes"]);
}

#[test]
fn closure_dump_and_member_queries() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.txt");
    fs::write(&gens, "# the crossing\n@cross\n").unwrap();
    let out = dir.path().join("closure.jsonl");
    ok(&[
        "closure",
        "--gens",
        gens.to_str().unwrap(),
        "--m",
        "1",
        "--max-cols",
        "6",
        "--out",
        out.to_str().unwrap(),
    ]);
    let dump = read_closure_jsonl(std::io::BufReader::new(fs::File::open(&out).unwrap())).unwrap();
    let pairs_on_six = dump.members.iter().filter(|p| p.shape() == (0, 6, 1)).count();
    assert_eq!(pairs_on_six, 15);
    assert_eq!(dump.generators, vec![named::cross()]);

    let member = ok(&["member", "--closure", out.to_str().unwrap(), "--target", "@cross"]);
    assert!(member.starts_with("member"), "{member}");

    let empty = dir.path().join("nc.jsonl");
    ok(&[
        "closure",
        "--m",
        "1",
        "--max-cols",
        "4",
        "--out",
        empty.to_str().unwrap(),
    ]);
    let sep = ok(&["member", "--closure", empty.to_str().unwrap(), "--target", "@cross"]);
    assert_eq!(sep.trim(), "separated by noncrossing");
}

#[test]
fn member_search_finds_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.json");
    fs::write(&gens, r#"["@level-cross"]"#).unwrap();
    let out = ok(&[
        "member",
        "--gens",
        gens.to_str().unwrap(),
        "--m",
        "2",
        "--target",
        "@level-pairs",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "separated");
    assert_eq!(v["class"], "no-geodesic-symm");

    let out = ok(&["member", "--gens", gens.to_str().unwrap(), "--target", "@level-cross"]);
    assert!(out.starts_with("member\n"), "{out}");
}

#[test]
fn product_of_two_noncrossing_categories() {
    let out = ok(&["product", "--max-cols", "4", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let counts = v["counts"].as_array().unwrap();
    let at = |k: u64, l: u64| {
        counts
            .iter()
            .find(|c| c["k"] == k && c["l"] == l)
            .map(|c| c["count"].as_u64().unwrap())
    };
    assert_eq!(at(0, 2), Some(1));
    assert_eq!(at(0, 4), Some(4));
    assert_eq!(at(1, 2), None);
}

#[test]
fn smap_writes_matrix_market() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.mtx");
    ok(&[
        "smap",
        "--partition",
        "@level-pair",
        "--dims",
        "2,2",
        "--out",
        out.to_str().unwrap(),
    ]);
    let m = read_matrix_market(std::io::BufReader::new(fs::File::open(&out).unwrap())).unwrap();
    let d: Dims = "2,2".parse().unwrap();
    assert_eq!(m, s_map(&named::level_pair(), &d, SizeCap::default()).unwrap());
}

#[test]
fn homdim_reads_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let ps = dir.path().join("ps");
    fs::create_dir(&ps).unwrap();
    fs::write(ps.join("a.txt"), "P(0,4;1){l1.1,l2.1|l3.1,l4.1}\n").unwrap();
    fs::write(ps.join("b.txt"), "P(0,4;1){l1.1,l4.1|l2.1,l3.1}\n").unwrap();
    assert_eq!(
        ok(&["homdim", "--partitions", ps.to_str().unwrap(), "--dims", "2"]).trim(),
        "2"
    );
    assert_eq!(
        ok(&["homdim", "--partitions", ps.to_str().unwrap(), "--dims", "1"]).trim(),
        "1"
    );
}

#[test]
fn relations_emit_and_check() {
    let out = ok(&["relations", "emit", "--partition", "@level-cross", "--dims", "2,2"]);
    assert!(out.contains("u(1,2)(2,1) = u(2,1)(1,2)"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model.json");
    let sigma = spqg::relations::MatrixModel::permutation_square(&[1, 0]);
    fs::write(&model, spqg::io::model_to_json(&sigma)).unwrap();
    for name in ["@level-cross", "@level-pair", "@level-four"] {
        let out = ok(&[
            "relations",
            "check",
            "--partition",
            name,
            "--model",
            model.to_str().unwrap(),
        ]);
        assert!(out.contains(" holds: "), "{name}: {out}");
    }
    let scaled = dir.path().join("scaled.json");
    fs::write(&scaled, spqg::io::model_to_json(&sigma.scaled(&spqg::linalg::rat(2)))).unwrap();
    let out = ok(&[
        "relations",
        "check",
        "--partition",
        "@pair^2",
        "--model",
        scaled.to_str().unwrap(),
    ]);
    assert!(out.contains(" fails: "), "{out}");
}

#[test]
fn usage_and_domain_errors_have_distinct_codes() {
    assert_eq!(spqg(&["op", "frobnicate"]).status.code(), Some(2));
    assert_eq!(spqg(&["smap", "--partition", "@pair"]).status.code(), Some(2));
    let bad = spqg(&["op", "compose", "--upper", "@pair", "--lower", "@pair"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error: "));
    assert_eq!(spqg(&["classify", "P(1,1;1){u1.1"]).status.code(), Some(1));
}

#[test]
fn verify_paper_subset() {
    let out = spqg(&["verify-paper", "--only", "2,3", "--threads", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS criterion 2"));
    assert!(text.contains("PASS criterion 3"));
    assert!(text.trim_end().ends_with("2/2 criteria pass"));

    let out = spqg(&["verify-paper", "--only", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], false);
    assert_eq!(v["criteria"][0]["id"], 6);
}
