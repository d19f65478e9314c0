use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flightdist"))
        .args(args)
        .env_remove("FLIGHTDIST_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn eval_table() {
    let o = run(&["eval", "--grid-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("r,phi,abs_error,regime\n"));
    assert!(!text.contains('\r'));
    let rows = rows(&text);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), 0.0);
    assert_eq!(rows[4][1].parse::<f64>().unwrap(), 1.0);
    // 17 significant digits in scientific notation.
    assert_eq!(rows[2][1].split('e').next().unwrap().len(), 18);
}

#[test]
fn regime_changes_at_junctions() {
    // c1 = 3, c2 = 1, t = 1: m = 1, M = 2, c1 t = 3.
    let o = run(&[
        "eval", "--c1", "3", "--c2", "1", "--r", "1", "--r", "1.000001", "--r", "2", "--r",
        "2.000001", "--r", "3", "--r", "3.000001",
    ]);
    let tags: Vec<String> = rows(&stdout(&o))
        .into_iter()
        .map(|r| r[3].clone())
        .collect();
    assert_eq!(tags, ["G", "H1", "H1", "Q", "Q", "U"]);
}

#[test]
fn output_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = run(&["eval", "--grid-n", "21", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn validate_default_passes() {
    let o = run(&["validate", "--mc-n", "200000"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.contains("continuity at r=1"));
}

#[test]
fn validate_equal_speeds() {
    let o = run(&[
        "validate",
        "--c1",
        "1",
        "--c2",
        "1",
        "--lambda1",
        "1",
        "--lambda2",
        "1",
        "--mc-n",
        "200000",
        "--grid-n",
        "41",
    ]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("continuity at r=1:"));
    assert!(text.contains("continuity at r=2:"));
}

#[test]
fn validate_loose_tolerance_fails() {
    let o = run(&[
        "validate", "--tol", "10", "--mc-n", "10000", "--grid-n", "11",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning: tolerance 10"));
    assert!(stdout(&o).contains("FAIL quadrature tolerance"));
}

#[test]
fn sample_output() {
    let o = run(&["sample", "--mc-n", "1000", "--seed", "5", "--grid-n", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header = text.lines().next().unwrap();
    assert!(
        header.starts_with("# seed=5 n=1000 c1=2 lambda1=1 c2=1 lambda2=2 t=1"),
        "{header}"
    );
    let rows = rows(&text);
    assert_eq!(rows.last().unwrap()[1].parse::<f64>().unwrap(), 1.0);
    assert_eq!(
        text,
        stdout(&run(&[
            "sample", "--mc-n", "1000", "--seed", "5", "--grid-n", "11"
        ]))
    );

    let raw = stdout(&run(&["sample", "--raw", "--mc-n", "1000", "--seed", "5"]));
    assert_eq!(raw.lines().filter(|l| !l.starts_with('#')).count(), 1001);
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "seed = 11\nmc_n = 500\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let seed_of = |o: Output| {
        stdout(&o)
            .lines()
            .next()
            .unwrap()
            .split_whitespace()
            .nth(1)
            .unwrap()
            .to_owned()
    };

    assert_eq!(seed_of(run(&["sample", "--config", cfg])), "seed=11");
    let env = Command::new(env!("CARGO_BIN_EXE_flightdist"))
        .args(["sample", "--config", cfg])
        .env("FLIGHTDIST_SEED", "22")
        .output()
        .unwrap();
    assert_eq!(seed_of(env), "seed=22");
    let flag = Command::new(env!("CARGO_BIN_EXE_flightdist"))
        .args(["sample", "--config", cfg, "--seed", "33"])
        .env("FLIGHTDIST_SEED", "22")
        .output()
        .unwrap();
    assert_eq!(seed_of(flag), "seed=33");
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "c1 = 2\n\nlambda2 = quick\n").unwrap();
    let o = run(&["eval", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("line 3: field 'lambda2'"), "{err}");

    assert_eq!(run(&["eval", "--r", "3.5"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--mc-n", "50"]).status.code(), Some(2));
    assert_eq!(
        run(&["eval", "--config", "/nonexistent/x.conf"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dump_config_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "eval",
        "--c1",
        "0.7",
        "--c2",
        "1.9",
        "--lambda1",
        "0.3",
        "--r",
        "0.5",
        "--r",
        "0.1",
        "--tol",
        "1e-9",
        "--seed",
        "8",
    ];
    let first = stdout(&run(&[&args[..], &["--dump-config"]].concat()));
    assert!(first.contains("c1 = 1.9"));
    assert!(first.contains("r = 0.1, 0.5"));
    let cfg = dir.path().join("dumped.conf");
    fs::write(&cfg, &first).unwrap();
    let second = stdout(&run(&[
        "eval",
        "--config",
        cfg.to_str().unwrap(),
        "--dump-config",
    ]));
    assert_eq!(first, second);

    let a = stdout(&run(&args));
    let b = stdout(&run(&["eval", "--config", cfg.to_str().unwrap()]));
    assert_eq!(a, b);
}
