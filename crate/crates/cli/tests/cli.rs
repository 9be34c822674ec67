use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn tgwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tgwa")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_staircase_passes() {
    let o = tgwa(&["verify", path(&problem("staircase.toml"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("config staircase: PASS"));
}

#[test]
fn verify_printed_tuple_fails_with_witnesses() {
    let o = tgwa(&["verify", path(&problem("gl3_printed.toml"))]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("binary (1,2): difference -u2 + 1/2"), "{out}");
    assert!(out.contains("binary (2,3): difference -u1 - 1/2"), "{out}");
}

#[test]
fn verify_forms() {
    let o = tgwa(&["verify", path(&problem("gl3_nonsym.toml"))]);
    assert_eq!(o.status.code(), Some(0));
    let o = tgwa(&["verify", path(&problem("gl3_nonsym.toml")), "--form", "sym"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "alpha = [[1]]\n[tuples.x]\nentries = [\"u1 u1\"]\n").unwrap();
    let o = tgwa(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
    assert_eq!(tgwa(&["verify", "/nonexistent.toml"]).status.code(), Some(2));
    assert_eq!(tgwa(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn classify_gl3() {
    let o = tgwa(&["classify", path(&problem("gl3.toml"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("on {1, 2}") && out.contains("on {2, 3}"), "{out}");
    assert!(out.contains("[configs.piece1]") && out.contains("[configs.piece2]"));
}

#[test]
fn classify_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("record.toml");
    let o = tgwa(&["classify", path(&problem("gl3.toml")), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(tgwa(&["verify", out.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn decode_then_encode() {
    let dir = tempfile::tempdir().unwrap();
    let decoded = dir.path().join("decoded.toml");
    let o = tgwa(&["decode", path(&problem("staircase.toml")), "-o", decoded.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(tgwa(&["verify", decoded.to_str().unwrap()]).status.code(), Some(0));
    let o = tgwa(&["encode", decoded.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lattice = [[3, 2]]"));
}

#[test]
fn symmetrize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sym = dir.path().join("sym.toml");
    let o = tgwa(&["symmetrize", path(&problem("gl3_nonsym.toml")), "-o", sym.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(tgwa(&["verify", sym.to_str().unwrap()]).status.code(), Some(0));
    let o = tgwa(&["symmetrize", "--inverse", sym.to_str().unwrap()]);
    assert!(stdout(&o).contains("\"u1 - 1\""), "{}", stdout(&o));
}

#[test]
fn decompose_reports_supports() {
    let out = stdout(&tgwa(&["decompose", path(&problem("gl3.toml"))]));
    assert!(out.starts_with("2 orbital piece(s)"));
    assert!(out.contains("support: {1, 2}") && out.contains("support: {2, 3}"));
}

#[test]
fn multiquiver_counts() {
    let o = tgwa(&["multiquiver", "--beta", path(&problem("beta_2x3.toml"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("row gcds: 2, 3"));
    assert!(out.contains("orbits: 5 (product of row gcds: 6)"));
    assert_eq!(out.matches("check: PASS").count(), 2);
}

#[test]
fn equivalences() {
    for f in ["equiv_negate.toml", "equiv_swap.toml", "equiv_triangular.toml"] {
        let o = tgwa(&["equiv", path(&problem(f))]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
    }
}

#[test]
fn non_equivalence_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("e.toml");
    fs::write(
        &f,
        "[tuples.a]\nalpha = [[2, -2]]\nentries = [\"u1^2 - 1/4\", \"u1^2 - 1/4\"]\n\
         [tuples.b]\nalpha = [[2, -2]]\nentries = [\"u1^2 - 1/4\", \"u1^2 - 1/4\"]\n\
         [equiv]\na = \"a\"\nb = \"b\"\ng = [[-1]]\n",
    )
    .unwrap();
    let o = tgwa(&["equiv", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gen_random_is_reproducible() {
    let staircase = problem("staircase.toml");
    let args = ["gen-random", path(&staircase), "--orbit", "staircase", "--loops", "3", "--seed", "11"];
    let a = tgwa(&args);
    let b = tgwa(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.toml");
    fs::write(&f, stdout(&a)).unwrap();
    assert_eq!(tgwa(&["verify", f.to_str().unwrap()]).status.code(), Some(0));
    let c = tgwa(&[
        "gen-random",
        path(&staircase),
        "--generator",
        "u1^3 - u1 - (u2+u3)^2 + 1",
        "--pair",
        "1,2",
        "--loops",
        "3",
        "--seed",
        "11",
    ]);
    assert_eq!(stdout(&a), stdout(&c));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fig.svg");
    let o = tgwa(&["render", path(&problem("staircase.toml")), "-o", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = fs::read_to_string(&f).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("stroke-dasharray").count(), 1);
}
