use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use ihz::circuit::Circuit;
use ihz::linrel::Subspace;
use ihz::{MatZ, Rat};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(path).unwrap()
}

fn ihz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ihz"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = ihz(args);
    assert_eq!(
        code(&out),
        0,
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

/// Text following the `# name` comment line, up to the next comment.
fn section<'a>(text: &'a str, name: &str) -> &'a str {
    let header = format!("# {name}\n");
    let start = text.find(&header).unwrap() + header.len();
    let rest = &text[start..];
    let end = rest.find("\n#").map_or(rest.len(), |i| i + 1);
    &rest[..end]
}

fn corpus() -> Vec<String> {
    fs::read_to_string(data("circuits.dsl"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

#[test]
fn fraction_product() {
    assert_eq!(ok(&["frac", "mul", "2/3", "3/4"]), "1/2\n");
    assert_eq!(ok(&["frac", "add", "1/2", "1/3"]), "5/6\n");
    assert_eq!(ok(&["frac", "add", "1/2", "-1/2"]), "0\n");
    assert_eq!(ok(&["frac", "mul", "-4/6", "3"]), "-2\n");
}

#[test]
fn fraction_with_zero_denominator() {
    assert_eq!(code(&ihz(&["frac", "mul", "1/0", "2/3"])), 4);
    assert_eq!(code(&ihz(&["frac", "mul", "1/x", "2/3"])), 2);
    // 0/0 denotes the zero relation
    assert_eq!(code(&ihz(&["frac", "mul", "0/0", "0/1"])), 4);
    assert_eq!(ok(&["classify", "coamp(0) ; amp(0)"]), "zero\n");
}

#[test]
fn scalar_cancellation() {
    assert_eq!(ok(&["eq", "amp(2);coamp(2)", "id"]), "equal\n");
}

#[test]
fn unequal_circuits_print_both_relations() {
    let out = ihz(&["eq", "amp(2)", "amp(3)"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("unequal"));
    let left = Subspace::<Rat>::parse(section(&text, "left")).unwrap();
    let right = Subspace::<Rat>::parse(section(&text, "right")).unwrap();
    assert_ne!(left, right);
    // different interfaces are unequal too
    assert_eq!(code(&ihz(&["eq", "add", "dup"])), 1);
}

#[test]
fn kernel_of_a_row() {
    let text = ok(&["kernel", &data("kernel.mat")]);
    assert_eq!(text, "2 1\n1\n2\n");
    assert_eq!(MatZ::parse(&text).unwrap(), MatZ::from_i64(2, 1, &[1, 2]));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&ihz(&["fmt", "add add"])), 2);
    assert_eq!(code(&ihz(&["fmt", "amp("])), 2);
    assert_eq!(code(&ihz(&["frobnicate"])), 2);
    assert_eq!(code(&ihz(&["kernel", "/nonexistent/matrix"])), 2);
    assert_eq!(code(&ihz(&["sem", "add ; add"])), 3);
    assert_eq!(code(&ihz(&["eq", "id", "dup ; dup"])), 3);
    assert_eq!(code(&ihz(&["normalize", "sym ; add ; add"])), 3);
    assert_eq!(code(&ihz(&["classify", "add"])), 4);
    assert_eq!(code(&ihz(&["classify", "id"])), 0);
    assert_eq!(code(&ihz(&["axioms"])), 0);
}

#[test]
fn classification_tags() {
    for (c, tag) in [
        ("del ; codel", "full"),
        ("cozero ; zero", "zero"),
        ("del ; zero", "x_axis"),
        ("cozero ; codel", "y_axis"),
        ("coamp(3) ; amp(2)", "line(3, 2)"),
    ] {
        assert_eq!(ok(&["classify", c]), format!("{tag}\n"), "{c}");
    }
}

#[test]
fn committed_goldens() {
    let mat = |n: &str| data(n);
    let fork = data("fork.dsl");
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["hnf".into(), mat("example.mat")], "hnf_example.txt"),
        (
            vec!["--json".into(), "hnf".into(), mat("example.mat")],
            "hnf_example.json",
        ),
        (vec!["kernel".into(), mat("kernel.mat")], "kernel.txt"),
        (
            vec!["pullback".into(), mat("f.mat"), mat("g.mat")],
            "pullback.txt",
        ),
        (
            vec!["pushout".into(), mat("f.mat"), mat("g.mat")],
            "pushout.txt",
        ),
        (vec!["sem".into(), fork.clone()], "sem_rel.txt"),
        (
            vec!["sem".into(), fork.clone(), "--as".into(), "span".into()],
            "sem_span.txt",
        ),
        (
            vec!["sem".into(), fork.clone(), "--as".into(), "cospan".into()],
            "sem_cospan.txt",
        ),
        (
            vec!["--json".into(), "sem".into(), fork.clone()],
            "sem_rel.json",
        ),
        (vec!["normalize".into(), fork.clone()], "normalize.txt"),
        (
            vec!["normalize".into(), "--cospan".into(), fork],
            "normalize_cospan.txt",
        ),
        (vec!["axioms".into()], "axioms.txt"),
    ];
    for (args, file) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(ok(&args), golden(file), "{file}");
    }
}

#[test]
fn worked_hnf_example() {
    let text = ok(&["hnf", &data("example.mat")]);
    let a = MatZ::parse(&fs::read_to_string(data("example.mat")).unwrap()).unwrap();
    let h = MatZ::parse(section(&text, "H")).unwrap();
    let u = MatZ::parse(section(&text, "U")).unwrap();
    assert_eq!(a.mul(&u).unwrap(), h);
    assert!(text.ends_with("# r = 1\n"));
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["--json", "hnf", &data("example.mat")])).unwrap();
    assert_eq!(json["r"], 1);
    assert_eq!(json["pivot_rows"], serde_json::json!([2, 3, 5]));
    assert_eq!(json["h"]["rows"], 5);
}

#[test]
fn normal_forms_are_equal_to_their_sources() {
    let circuits = corpus();
    assert_eq!(circuits.len(), 50);
    for c in &circuits {
        let n = ok(&["normalize", c]);
        assert_eq!(ok(&["eq", c, n.trim()]), "equal\n", "{c}");
        let k = ok(&["normalize", "--cospan", c]);
        assert_eq!(ok(&["eq", c, k.trim()]), "equal\n", "{c}");
    }
}

#[test]
fn outputs_reparse() {
    let dir = tempfile::tempdir().unwrap();
    for c in corpus().iter().take(20) {
        let printed = ok(&["fmt", c]);
        let parsed = Circuit::parse(&printed).unwrap();
        assert_eq!(parsed, Circuit::parse(c).unwrap());
        // printing is a fixed point
        assert_eq!(ok(&["fmt", printed.trim()]), printed);

        let file = dir.path().join("c.dsl");
        fs::write(&file, c).unwrap();
        let file = file.to_str().unwrap();
        assert_eq!(ok(&["fmt", file]), printed);

        let rel = ok(&["sem", file]);
        let space = Subspace::<Rat>::parse(&rel).unwrap();
        let header = rel.lines().next().unwrap();
        assert!(header.starts_with("# relation "));
        assert_eq!(ok(&["sem", &ok(&["normalize", file])]), rel);

        for domain in ["span", "cospan"] {
            let text = ok(&["sem", file, "--as", domain]);
            let left = MatZ::parse(section(&text, "left")).unwrap();
            let right = MatZ::parse(section(&text, "right")).unwrap();
            assert_eq!(MatZ::parse_many(&text).unwrap(), vec![left, right]);
        }
        let _ = space;
    }
    for cmd in ["pullback", "pushout"] {
        let text = ok(&[cmd, &data("f.mat"), &data("g.mat")]);
        assert_eq!(MatZ::parse_many(&text).unwrap().len(), 2);
    }
    let text = ok(&["hnf", &data("example.mat")]);
    assert_eq!(MatZ::parse_many(&text).unwrap().len(), 2);
}

#[test]
fn matrices_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_ihz"))
        .args(["kernel", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"1 2\n2 -1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "2 1\n1\n2\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["axioms"],
        vec!["--json", "axioms"],
        vec!["axioms", "--seed", "5"],
        vec!["normalize", "dup * dup ; id * sym * id ; add * add"],
    ] {
        assert_eq!(ok(&args), ok(&args));
    }
}

#[test]
fn axiom_json_report() {
    let json: serde_json::Value = serde_json::from_str(&ok(&["--json", "axioms"])).unwrap();
    assert_eq!(json["success"], true);
    let checks = json["checks"].as_array().unwrap();
    assert!(checks.len() > 60);
}
