use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn symlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symlab")).args(args).current_dir(dir).output().expect("spawn symlab")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const GRID_RUN: &str = r#"
input = "sets/l.txt"
operator = "minkowski"
family = ["x", "y", "origin"]
schedule = "random seed=11"
max_steps = 6
tol = 1e-9
checks = ["volume_monotone", "mean_width"]

[outputs]
csv = "out/run.csv"
svg = "out/frames/step_{step}.svg"
"#;

fn grid_workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("sets")).unwrap();
    fs::write(dir.path().join("sets/l.txt"), "rep=grid dim=2 h=1\ncell 0 0\ncell 1 0\ncell 2 0\ncell 0 1\ncell 0 2\n").unwrap();
    fs::write(dir.path().join("run.toml"), GRID_RUN).unwrap();
    dir
}

#[test]
fn run_writes_csv_and_frames() {
    let dir = grid_workspace();
    let o = symlab(&["run", "run.toml"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("out/run.csv")).unwrap();
    assert!(csv.starts_with("step,subspace,dh_prev,dh_ref,diameter,volume,mean_width\n"));
    let steps = csv.lines().count() - 1;
    assert!(steps >= 1);
    for s in 0..=steps {
        assert!(dir.path().join(format!("out/frames/step_{s}.svg")).exists(), "frame {s}");
    }
    assert!(stderr(&o).contains("check volume_monotone: PASS"));
}

#[test]
fn identical_configs_give_identical_csv() {
    let dir = grid_workspace();
    assert_eq!(code(&symlab(&["run", "run.toml"], dir.path())), 0);
    let first = fs::read(dir.path().join("out/run.csv")).unwrap();
    assert_eq!(code(&symlab(&["run", "run.toml"], dir.path())), 0);
    assert_eq!(first, fs::read(dir.path().join("out/run.csv")).unwrap());
}

#[test]
fn json_config_and_csv_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let json = r#"{
        "input": "rep=intervals dim=1\ninterval -1 -0.5\ninterval 0.5 1\n",
        "operator": "minkowski", "family": ["origin"], "max_steps": 5, "tol": 1e-9,
        "checks": ["converged", "volume_monotone"]
    }"#;
    fs::write(dir.path().join("c.json"), json).unwrap();
    let o = symlab(&["run", "c.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = String::from_utf8(o.stdout).unwrap();
    // [-1,-½]∪[½,1] is convex after two steps; the third changes nothing
    assert_eq!(out.lines().count(), 1 + 3, "{out}");
    assert!(out.lines().nth(3).unwrap().starts_with("3,0,0,"));
}

#[test]
fn config_errors_exit_one_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.toml"), format!("colour = 1\n{GRID_RUN}")).unwrap();
    let o = symlab(&["run", "bad.toml"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("bad.toml") && stderr(&o).contains("colour"), "{}", stderr(&o));
    let points = GRID_RUN.replace("sets/l.txt", "rep=pointset dim=2\\npoint 0 0\\n");
    fs::write(dir.path().join("fiber.toml"), points.replace("minkowski", "fiber")).unwrap();
    let o = symlab(&["run", "fiber.toml"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("field `operator`"), "{}", stderr(&o));
    assert_eq!(code(&symlab(&["run", "missing.toml"], dir.path())), 1);
}

#[test]
fn failed_invariant_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"
input = "rep=pointset dim=2\npoint -1 0\npoint 1 0\n"
operator = "minkowski"
family = [90]
max_steps = 3
tol = 1e-9
checks = ["converged"]
"#;
    fs::write(dir.path().join("c.toml"), cfg).unwrap();
    let o = symlab(&["run", "c.toml"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("invariant violated: converged"));
}

#[test]
fn demos() {
    let dir = tempfile::tempdir().unwrap();
    let o = symlab(&["demo", "klain-two-point"], dir.path());
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("PASS  two-point example, first symmetral"));
    assert!(!out.contains("FAIL"));
    assert_eq!(code(&symlab(&["demo", "no-such-demo"], dir.path())), 1);
}

#[test]
fn render_and_slices() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p.txt"), "rep=polygon dim=2\npoint 0 0\npoint 2 0\npoint 1 1\n").unwrap();
    assert_eq!(code(&symlab(&["render", "p.txt", "p.svg"], dir.path())), 0);
    let svg = fs::read_to_string(dir.path().join("p.svg")).unwrap();
    assert!(svg.contains("<path"));
    fs::write(dir.path().join("g.txt"), "rep=grid dim=3 h=1\ncell 0 0 0\ncell 0 0 1\ncell 1 1 1\n").unwrap();
    let o = symlab(&["render", "g.txt", "g.svg"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--slice"));
    assert_eq!(code(&symlab(&["render", "g.txt", "g.svg", "--slice", "1"], dir.path())), 0);
    assert_eq!(fs::read_to_string(dir.path().join("g.svg")).unwrap().matches("<rect").count(), 1 + 2);
}

#[test]
fn thread_cap() {
    let run = |v: &str| Command::new(env!("CARGO_BIN_EXE_symlab")).args(["demo", "sfs-gap"]).env("SYMLAB_THREADS", v).output().unwrap();
    assert_eq!(code(&run("1")), 0);
    assert_eq!(code(&run("zero")), 1);
}
