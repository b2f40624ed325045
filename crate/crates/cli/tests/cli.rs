use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahoric")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn verify_passing_suite_exits_zero() {
    let f = config_file("suite coxeter fourier\n");
    let o = run(&["verify", "--config", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("check_id\tanchor\tstatus\twitness\n"));
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().skip(1).all(|l| l.split('\t').nth(2) == Some("PASS")));
}

#[test]
fn verify_failing_check_exits_nonzero() {
    let f = config_file("suite pgl2\nq 2\nprec 6\n");
    let o = run(&["verify", "--config", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("C07\tfixed points: count=2\tPASS"));
}

#[test]
fn usage_errors_exit_two() {
    let f = config_file("suite pgl2\nq 1\n");
    let o = run(&["verify", "--config", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run(&["verify", "--config", "/nonexistent/config"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_selection_is_empty_and_succeeds() {
    let f = config_file("# nothing selected\n");
    let o = run(&["verify", "--config", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "");
}

#[test]
fn duplicate_key_warns_on_stderr() {
    let f = config_file("suite coxeter\nsuite coxeter\n");
    let o = run(&["verify", "--config", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning: line 2"));
}

#[test]
fn report_to_file_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let f = config_file("suite witt springer\nformat text\n");
    let mut outs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.txt"));
        let o = run(&["verify", "--config", f.path().to_str().unwrap(), "--output", path.to_str().unwrap()]);
        assert!(o.status.success());
        outs.push(std::fs::read(path).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    assert!(String::from_utf8(outs[0].clone()).unwrap().contains("Borel fiber: count=q+1: q=3:4 q=5:6: PASS"));
}

#[test]
fn witt_enum_subcommand() {
    let o = run(&["witt", "enum", "--p", "3", "--n", "1", "--algebra", "sl2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("E'0\t5\n"));
    assert!(out.contains("bijection_E'0\ttrue\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("X1\t")).count(), 5);
    let o = run(&["witt", "enum", "--p", "3", "--algebra", "so5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witt_arith_subcommand() {
    let o = run(&["witt", "arith", "--q", "5", "--m", "2", "(1,2)", "(3,4)"]);
    assert_eq!(stdout(&o), "sum\t(4,0)\nproduct\t(3,0)\n");
}

#[test]
fn pgl2_subcommand() {
    let o = run(&["pgl2", "--matrix", "0,1;1@1,0", "--q", "3", "--prec", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("class\tI2(m=0)\n"));
    assert!(out.contains("discriminant\t1\n"));
    assert!(out.contains("fixed_points\t2\n"));
    let o = run(&["pgl2", "--matrix", "0,1;1@1,0", "--q", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn weyl_and_cells_subcommands() {
    let o = run(&["weyl", "--type", "C2", "--word", "s0 s1 s0 s0", "--quotient", "1"]);
    assert_eq!(stdout(&o), "reduced\ts0 s1\nlength\t2\n1\tinf\ninf\t1\n");
    let o = run(&["cells", "--type", "A1", "--den", "2"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["weyl", "--type", "A1", "--word", "s5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reps_fourier_springer_subcommands() {
    let o = run(&["reps"]);
    assert!(stdout(&o).contains("layer 1\tdim 1\t(1,triv)x1"));
    let o = run(&["fourier", "--group", "Z2"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = run(&["springer", "--group", "SL2"]);
    assert!(stdout(&o).contains("reg\tsgn\tcuspidal"));
}
