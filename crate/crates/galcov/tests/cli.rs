use galcov::schema::{check, schema};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("galcov").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = galcov::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const JSON_CASES: [(&str, &[&str]); 12] = [
    ("complex", &["build", "-m", "2", "-n", "3"]),
    (
        "presentation",
        &["relations", "-m", "2", "-n", "3", "--group", "cy-e6"],
    ),
    ("cycles", &["cycles", "-m", "2", "-n", "3"]),
    ("verify", &["verify", "-m", "2", "-n", "3"]),
    ("hom-count", &["hom-count", "-m", "1", "-n", "2"]),
    ("homology", &["homology", "-m", "1", "-n", "2"]),
    ("prove", &["prove", "-m", "2", "-n", "3", "--goal", "chain"]),
    (
        "prove",
        &[
            "prove", "-m", "2", "-n", "4", "--goal", "gamma", "--row", "1",
        ],
    ),
    ("invariants", &["census", "-m", "3", "-n", "4"]),
    ("invariants", &["chern", "-m", "3", "-n", "4"]),
    ("irregularity", &["irregularity", "-m", "1", "-n", "3"]),
    ("sweep", &["sweep", "-m", "2", "-n", "3"]),
];

#[test]
fn json_reports_match_their_schemas() {
    for (name, args) in JSON_CASES {
        let mut a = args.to_vec();
        a.extend(["--format", "json", "--seed", "5"]);
        let (code, out, err) = run(&a);
        assert_eq!(code, 0, "{args:?}: {err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["seed"], 5, "{args:?}");
        let violations = check(&schema(name).unwrap(), &v);
        assert!(violations.is_empty(), "{args:?}: {violations:?}");
    }
}

#[test]
fn reports_are_byte_stable() {
    for (_, args) in JSON_CASES {
        for fmt in ["text", "json"] {
            let mut a = args.to_vec();
            a.extend(["--format", fmt]);
            if args[0] == "relations" && fmt == "text" {
                a.pop();
                a.push("plain");
            }
            let first = run(&a);
            assert_eq!(first, run(&a), "{a:?}");
        }
    }
}

#[test]
fn seed_reaches_every_header() {
    let (_, out, _) = run(&["verify", "-m", "2", "-n", "3", "--seed", "9"]);
    assert!(out.starts_with("# galcov verify m=2 n=3 seed=9\n"));
    let (_, out, _) = run(&[
        "census", "-m", "2", "-n", "3", "--format", "csv", "--seed", "9",
    ]);
    assert!(out.starts_with("# seed=9\n"));
    let (_, out, _) = run(&[
        "relations",
        "-m",
        "1",
        "-n",
        "2",
        "--format",
        "magma",
        "--seed",
        "9",
    ]);
    assert!(out.starts_with("// galcov relations g1 m=1 n=2 seed=9\n"));
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("galcov-cli-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["build", "-m", "1", "-n", "2", "--format", "dot", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(
        written,
        run(&["build", "-m", "1", "-n", "2", "--format", "dot"]).1
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "-m", "2", "-n", "4"]).0, 0);
    let (code, _, err) = run(&["verify", "-m", "0", "-n", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("-m"), "{err}");
    assert_eq!(run(&["verify", "-n", "4"]).0, 2);
    assert_eq!(
        run(&["build", "-m", "2", "-n", "4", "--format", "gap"]).0,
        2
    );
    assert_eq!(
        run(&["relations", "-m", "2", "-n", "4", "--group", "nope"]).0,
        2
    );
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, out, _) = run(&[
        "prove", "-m", "2", "-n", "4", "--goal", "words", "--lhs", "1 2", "--rhs", "2 4",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("REFUTED"));
    let (code, _, err) = run(&["homology", "-m", "1", "-n", "3", "--coset-limit", "10"]);
    assert_eq!(code, 1, "{err}");
}
