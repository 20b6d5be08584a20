use std::path::PathBuf;
use std::process::{Command, Output};

fn fcc() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fcc"));
    cmd.env_remove("FCC_BUDGET");
    cmd
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fcc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Writes the binary OR scheme for k = 3, t = 1 and returns its path.
fn or_scheme_file(name: &str) -> PathBuf {
    let path = scratch(name);
    let out = fcc()
        .args(["construct", "or", "--k", "3", "--t", "1", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn construct_writes_scheme_file() {
    let out = fcc()
        .args(["construct", "or", "--k", "2", "--t", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "table 2 2 2\n0 0\n1 1\n1 1\n1 1\n");

    let out = fcc()
        .args(["construct", "rs", "--q", "4", "--k", "2", "--t", "2"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2, "n = 6 does not fit GF(4)");
}

#[test]
fn verify_encode_and_decode_flow() {
    let path = or_scheme_file("or.scheme");
    let run = |args: &[&str]| fcc().args(args).arg("--in").arg(&path).output().unwrap();

    let out = run(&["verify", "--function", "or", "--t", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("PASS"));

    let out = run(&["verify", "--function", "identity", "--t", "1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("FAIL"));

    let out = run(&["encode", "--message", "0 0 1"]);
    assert_eq!(stdout(&out), "0 0 1 1 1\n");

    let out = run(&[
        "decode",
        "--function",
        "or",
        "--t",
        "1",
        "--received",
        "1 0 1 1 1",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("label 1 "));

    let out = run(&[
        "decode",
        "--function",
        "or",
        "--t",
        "1",
        "--received",
        "0 0 0 0 0",
    ]);
    assert_eq!(stdout(&out), "label 0 distance 0 within_radius true\n");

    let out = run(&[
        "decode",
        "--function",
        "or",
        "--t",
        "1",
        "--received",
        "1 1 0 0 0",
    ]);
    assert_eq!(code(&out), 1);

    let out = run(&[
        "decode",
        "--function",
        "or",
        "--t",
        "1",
        "--received",
        "1 1 0 0 0",
        "--strict",
        "false",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).ends_with("within_radius false\n"));
}

#[test]
fn function_file_input() {
    let path = or_scheme_file("or-ff.scheme");
    let ff = scratch("or.fn");
    std::fs::write(&ff, "2 3\n0\n1\n1\n1\n1\n1\n1\n1\n").unwrap();
    let out = fcc()
        .args(["verify", "--t", "1", "--function-file"])
        .arg(&ff)
        .arg("--in")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);

    std::fs::write(&ff, "2 3\n0\n1\n").unwrap();
    let out = fcc()
        .args(["search", "--t", "1", "--function-file"])
        .arg(&ff)
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn search_prints_optimum_and_writes_witness() {
    let out = fcc()
        .args([
            "search",
            "--function",
            "identity",
            "--q",
            "2",
            "--k",
            "2",
            "--t",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3");

    let witness = scratch("witness.scheme");
    let out = fcc()
        .args([
            "search",
            "--function",
            "or",
            "--q",
            "2",
            "--k",
            "3",
            "--t",
            "1",
            "--out",
        ])
        .arg(&witness)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let out = fcc()
        .args(["verify", "--function", "or", "--t", "1", "--in"])
        .arg(&witness)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn budgets_map_to_exit_code_three() {
    let out = fcc()
        .args([
            "search",
            "--function",
            "identity",
            "--q",
            "2",
            "--k",
            "2",
            "--t",
            "1",
            "--budget",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);

    let path = or_scheme_file("or-budget.scheme");
    let verify = || {
        let mut cmd = fcc();
        cmd.args(["verify", "--function", "or", "--t", "1", "--in"])
            .arg(&path);
        cmd
    };
    let out = verify().env("FCC_BUDGET", "4").output().unwrap();
    assert_eq!(code(&out), 3);
    let out = verify()
        .env("FCC_BUDGET", "4")
        .args(["--budget", "1000"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let out = verify().env("FCC_BUDGET", "lots").output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_and_format_errors_exit_two() {
    assert_eq!(code(&fcc().arg("frobnicate").output().unwrap()), 2);
    assert_eq!(
        code(
            &fcc()
                .args(["construct", "rs", "--k", "2", "--t", "1"])
                .output()
                .unwrap()
        ),
        2
    );

    let bad = scratch("bad.scheme");
    std::fs::write(&bad, "table 2 1 1\n0\n").unwrap();
    let out = fcc()
        .args(["verify", "--function", "or", "--t", "1", "--in"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn bounds_output() {
    let out = fcc()
        .args(["bounds", "--q", "2", "--k", "7", "--t", "1", "--csv"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("4.795757"), "{text}");
}

#[test]
fn simulate_is_seeded() {
    let path = scratch("rs.scheme");
    let out = fcc()
        .args([
            "construct",
            "rs",
            "--q",
            "7",
            "--k",
            "3",
            "--t",
            "2",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let sim = || {
        fcc()
            .args([
                "simulate",
                "--function",
                "identity",
                "--t",
                "2",
                "--trials",
                "200",
                "--seed",
                "5",
                "--in",
            ])
            .arg(&path)
            .output()
            .unwrap()
    };
    let a = sim();
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), "200/200 decoded f(u) correctly\n");
    assert_eq!(stdout(&a), stdout(&sim()));
}

#[test]
fn grid_csv_is_byte_identical() {
    let grid = |workers: &str| {
        fcc()
            .args([
                "grid",
                "--qs",
                "2,3,5",
                "--ks",
                "2",
                "--ts",
                "1",
                "--functions",
                "or,identity,threshold:1",
                "--workers",
                workers,
            ])
            .output()
            .unwrap()
    };
    let a = grid("1");
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let text = stdout(&a);
    assert_eq!(stdout(&grid("1")), text);
    assert_eq!(stdout(&grid("4")), text);
    assert!(!text.contains('\r'));

    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "q,k,t,function_name,exact_r,lower_2t,eq2_upper,sphere_packing_r,mds_equality,nodes,seconds"
    );
    assert_eq!(lines.len(), 1 + 9);
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 11);
        if cols[3] == "or" {
            assert_eq!(cols[4], "2", "{line}");
        }
    }
    let id2 = lines
        .iter()
        .find(|l| l.starts_with("2,2,1,identity,"))
        .unwrap();
    assert!(id2.starts_with("2,2,1,identity,3,2,"), "{id2}");
    let id5 = lines
        .iter()
        .find(|l| l.starts_with("5,2,1,identity,"))
        .unwrap();
    let cols: Vec<&str> = id5.split(',').collect();
    assert_eq!((cols[4], cols[8]), ("2", "true"));
}
