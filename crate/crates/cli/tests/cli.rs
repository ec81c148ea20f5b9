use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn wagon(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wagon")).args(args).current_dir(dir).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}: {r}"))
}

/// A scratch directory holding every bundled example.
fn examples() -> TempDir {
    let dir = TempDir::new().unwrap();
    let out = wagon(dir.path(), &["examples", "emit", "--out", ".", "coxeter.grp"]);
    assert!(out.status.success());
    let list = wagon(dir.path(), &["examples", "list"]);
    for name in String::from_utf8(list.stdout).unwrap().lines() {
        assert!(wagon(dir.path(), &["examples", "emit", name, "--out", "."]).status.success(), "{name}");
    }
    dir
}

#[test]
fn compile_higman_group() {
    let dir = examples();
    let out = wagon(dir.path(), &["compile", "higman.grp", "--involutions", "", "--out", "out", "--emit", "dot"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let m = r["stats"]["total_length"].as_u64().unwrap();
    let s = r["stats"]["generators"].as_u64().unwrap();
    assert_eq!(r["stats"]["vertices"].as_u64().unwrap(), 3 * m);
    assert_eq!(r["stats"]["edges"].as_u64().unwrap(), 4 * m + s);
    for name in ["vertices_3M", "edges_4M_plus_S", "collegial", "inv_labelling"] {
        assert_eq!(check(&r, name)["pass"], true, "{name}");
    }
    for f in [
        "hypergraph.json",
        "labelling.json",
        "system.json",
        "game.json",
        "solution_group.txt",
        "trace.json",
        "hypergraph.dot",
    ] {
        assert!(dir.path().join("out").join(f).is_file(), "{f}");
    }
    let labelled =
        wagon(dir.path(), &["check", "labelling", "out/hypergraph.json", "--presentation", "out/stage2.collegial.grp"]);
    assert_eq!(labelled.status.code(), Some(0));
}

#[test]
fn compile_two_relator_wheel() {
    let dir = examples();
    let out = wagon(dir.path(), &["compile", "fig3.grp", "--already-involutive", "--skip-collegial-check"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["stats"]["vertices"], 24);
    assert_eq!(r["stats"]["edges"], 37);
    assert_eq!(r["artifacts"].as_array().unwrap().len(), 0);

    // Without the skip flag the non-collegial input is a check failure.
    let out = wagon(dir.path(), &["compile", "fig3.grp"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(check(&report(&out), "collegial")["pass"], false);
}

#[test]
fn compile_rejects_undeclared_generator() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.grp"), "presentation\ngens: a b\nJ: a\nrel: a q\n").unwrap();
    let out = wagon(dir.path(), &["compile", "bad.grp"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4") && err.contains("`q`"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn input_errors_exit_two() {
    let dir = examples();
    for args in [
        &["compile", "missing.grp"][..],
        &["compile", "higman.grp", "--already-involutive"],
        &["compile", "higman.grp", "--k", "a"],
        &["compile", "higman.grp", "--emit", "dot"],
        &["check", "picture", "coxeter.json", "--presentation", "higman.grp"],
        &["examples", "emit", "nope.json"],
        &["frobnicate"],
    ] {
        assert_eq!(wagon(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn coxeter_picture_certifies() {
    let dir = examples();
    let word = "s1 s2 s3 s2 s1 s3 s2 s1 s2 s3";
    let out =
        wagon(dir.path(), &["check", "picture", "coxeter.json", "--presentation", "coxeter.grp", "--certifies", word]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&report(&out), "certifies")["pass"], true);

    let out = wagon(
        dir.path(),
        &["check", "picture", "coxeter.json", "--presentation", "coxeter.grp", "--certifies", "s1 s2"],
    );
    assert_eq!(out.status.code(), Some(1));

    let out = wagon(
        dir.path(),
        &["check", "picture", "coxeter.json", "--presentation", "coxeter.grp", "--out", "d", "--emit", "dot"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(dir.path().join("d/picture.dot")).unwrap().starts_with("graph P {"));
}

#[test]
fn parallel_picture_proves_j() {
    let dir = examples();
    let out = wagon(
        dir.path(),
        &["check", "picture", "parallel.json", "--hypergraph", "parallel.hg.json", "--certifies", "J"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["stats"]["ch_dot_b"], 1);
    let out = wagon(
        dir.path(),
        &["check", "picture", "parallel.json", "--hypergraph", "parallel.hg.json", "--certifies", ""],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sample_morphism_applies() {
    let dir = examples();
    let out = wagon(
        dir.path(),
        &[
            "check",
            "morphism",
            "fig10.json",
            "--src",
            "fig10.h1.json",
            "--dst",
            "fig10.h2.json",
            "--picture",
            "fig11.json",
            "--out",
            "m",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["stats"]["picture_out"], 7);
    assert_eq!(r["stats"]["boundary_out"], "k' e' c'");
    assert!(dir.path().join("m/picture.json").is_file());

    // Swapping source and target cannot be a morphism.
    let out =
        wagon(dir.path(), &["check", "morphism", "fig10.json", "--src", "fig10.h2.json", "--dst", "fig10.h1.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn odd_presentations_are_not_collegial() {
    let dir = examples();
    let out = wagon(dir.path(), &["check", "collegial", "fig3.grp"]);
    assert_eq!(out.status.code(), Some(1));
    let detail = check(&report(&out), "collegial")["detail"].clone();
    assert_eq!(detail["condition"], "odd_adjacency");
    assert!(detail["s"].is_string() && detail["t"].is_string());
    // Odd multiplicities sit next to each other in the Coxeter relations.
    assert_eq!(wagon(dir.path(), &["check", "collegial", "coxeter.grp"]).status.code(), Some(1));
    assert_eq!(wagon(dir.path(), &["compile", "higman.grp", "--out", "c"]).status.code(), Some(0));
    assert_eq!(wagon(dir.path(), &["check", "collegial", "c/stage2.collegial.grp"]).status.code(), Some(0));
}

#[test]
fn cube_with_tail_constellation() {
    let dir = examples();
    let args =
        ["check", "constellation", "--hypergraph", "cube_with_tail.json", "--cycles", "cube_with_tail.cycles.json"];
    let out = wagon(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));

    let path = dir.path().join("cube_with_tail.cycles.json");
    let mut cycles: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    cycles.as_array_mut().unwrap().push(serde_json::json!({
        "name": "C5", "vertices": ["2", "3", "6", "7", "9"], "edges": ["29", "39", "37", "67", "26"]
    }));
    std::fs::write(dir.path().join("five.json"), cycles.to_string()).unwrap();
    let out =
        wagon(dir.path(), &["check", "constellation", "--hypergraph", "cube_with_tail.json", "--cycles", "five.json"]);
    assert_eq!(out.status.code(), Some(1));
    let violations = check(&report(&out), "constellation")["detail"].as_array().unwrap().clone();
    assert!(
        violations.iter().any(|v| v["condition"] == "c" && v["first"] == "C4" && v["second"] == "C5"),
        "{violations:?}"
    );
}

#[test]
fn wheel_constellation() {
    let dir = examples();
    let out = wagon(dir.path(), &["check", "constellation", "--wheel", "higman.grp"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    // One B cycle per relation and one C cycle per letter; 12 relations, 192 letters.
    assert_eq!(r["stats"]["cycles"], 12 + 192);
    assert_eq!(r["stats"]["witnesses"], 12 + 192);

    // Odd multiplicities leave the C cycles without retractions.
    let out = wagon(dir.path(), &["check", "constellation", "--wheel", "coxeter.grp"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn magic_square_analysis() {
    let dir = examples();
    let out = wagon(dir.path(), &["analyze", "--builtin", "magic_square", "--classical-value"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["stats"]["classical_value"], "17/18");
    assert_eq!(r["stats"]["perfect_classical_strategy"], false);

    let out = wagon(dir.path(), &["analyze", "--builtin", "magic_square", "--verify-ops", "pauli.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["stats"]["j_representation"], "-I");
    assert!(check(&r, "operator_solution")["detail"]["relations"].as_f64().unwrap() < 1e-9);

    let out = wagon(dir.path(), &["analyze", "magic_square.json", "--classical-value", "--cap", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["stats"]["classical_value"].is_null());
    assert_eq!(r["stats"]["cap_exceeded"]["cap"], 8);
}

#[test]
fn trivial_system_has_a_strategy() {
    let dir = examples();
    let out = wagon(dir.path(), &["analyze", "trivial.json", "--classical-value"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["stats"]["perfect_classical_strategy"], true);
    assert_eq!(r["stats"]["classical_value"], "1");
    let x = &r["stats"]["assignment"];
    let bit = |k: &str| x[k].as_u64().unwrap();
    assert_eq!((bit("x") + bit("y")) % 2, 0);
    assert_eq!((bit("y") + bit("z")) % 2, 1);

    // The same system as a linear-system file.
    std::fs::write(
        dir.path().join("ls.json"),
        r#"{"vars":["x","y","z"],"rows":[{"v":"p","support":["x","y"],"b":0},{"v":"q","support":["y","z"],"b":1}]}"#,
    )
    .unwrap();
    let out = wagon(dir.path(), &["analyze", "ls.json"]);
    assert_eq!(report(&out)["stats"]["assignment"], *x);
}

fn files(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let bytes = std::fs::read(&p).unwrap();
            (p.file_name().unwrap().into(), bytes)
        })
        .collect();
    out.sort();
    out
}

#[test]
fn reports_are_byte_stable() {
    let dir = examples();
    let a = wagon(dir.path(), &["compile", "higman.grp", "--out", "a"]);
    let b = wagon(dir.path(), &["compile", "higman.grp", "--out", "b"]);
    let strip = |o: &Output, d: &str| String::from_utf8(o.stdout.clone()).unwrap().replace(&format!("{d}/"), "");
    assert_eq!(strip(&a, "a"), strip(&b, "b"));
    assert_eq!(files(&dir.path().join("a")), files(&dir.path().join("b")));
    let again = wagon(dir.path(), &["compile", "higman.grp", "--out", "a"]);
    assert_eq!(a.stdout, again.stdout);
    assert!(report(&a).get("timestamp").is_none());

    let t = wagon(dir.path(), &["compile", "fig3.grp", "--skip-collegial-check", "--timestamps"]);
    assert!(report(&t)["timestamp"].is_u64());

    let c1 = wagon(dir.path(), &["check", "constellation", "--wheel", "fig3.grp"]);
    let c2 = wagon(dir.path(), &["check", "constellation", "--wheel", "fig3.grp"]);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn examples_cover_fixtures() {
    let dir = TempDir::new().unwrap();
    let list = String::from_utf8(wagon(dir.path(), &["examples", "list"]).stdout).unwrap();
    for name in ["coxeter.grp", "fig10.json", "higman.grp", "magic_square.json", "pauli.json", "trivial.json"] {
        assert!(list.lines().any(|l| l == name), "{name}");
    }
    let printed = wagon(dir.path(), &["examples", "emit", "fig3.grp"]);
    assert!(String::from_utf8(printed.stdout).unwrap().starts_with("invpresentation"));
}
