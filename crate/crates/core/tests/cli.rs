use std::process::{Command, Output};
use zerosample::zeros::{compute_zeros, write_zeros};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerosample")).args(args).env_remove("ZETA_ZEROS_PATH").output().unwrap()
}

#[test]
fn landau_writes_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("landau.csv");
    let o = bin(&["landau", "--x", "2", "--T", "1000", "--zeros", "compute", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 2);
    let fields: Vec<&str> = rows[1].split(',').collect();
    assert_eq!(fields.len(), 7);
    assert_eq!(fields[2], "649");
    let main: f64 = fields[5].parse().unwrap();
    assert!((main + 110.318).abs() < 1e-3);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["thm1", "--char1", "4:1"]).status.code(), Some(1));
    assert_eq!(bin(&["thm2", "--p", "abc"]).status.code(), Some(1));
    assert_eq!(bin(&["landau", "--zeros", "/nonexistent/zeros.txt"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let sparse = dir.path().join("sparse.txt");
    std::fs::write(&sparse, "# coverage 200\n14.13\n21.02\n").unwrap();
    let o = bin(&["landau", "--zeros", sparse.to_str().unwrap(), "--T", "200"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let blocked = dir.path().join("missing-dir").join("out.csv");
    assert_eq!(bin(&["zeros", "--T", "50", "--output", blocked.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn config_errors_name_the_field() {
    let o = bin(&["thm1", "--sigma", "1.5"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("`sigma`"), "{err}");
}

#[test]
fn zero_file_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.txt");
    write_zeros(&compute_zeros(500.0).unwrap(), &path).unwrap();
    let from_env = Command::new(env!("CARGO_BIN_EXE_zerosample"))
        .args(["landau", "--x", "3", "--T", "400"])
        .env("ZETA_ZEROS_PATH", &path)
        .output()
        .unwrap();
    let explicit = bin(&["landau", "--x", "3", "--T", "400", "--zeros", path.to_str().unwrap()]);
    assert_eq!(from_env.status.code(), Some(0));
    assert_eq!(from_env.stdout, explicit.stdout);
}

#[test]
fn thm2_output_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["thm2", "--T", "300,600", "--zeros", "compute"];
    let mut first = args.to_vec();
    first.extend(["--output", a.to_str().unwrap()]);
    let mut second = args.to_vec();
    second.extend(["--serial", "--output", b.to_str().unwrap()]);
    assert_eq!(bin(&first).status.code(), Some(0));
    assert_eq!(bin(&second).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn seed_check_then_afe_verify() {
    let o = bin(&["afe-verify", "--seed-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 325);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}
