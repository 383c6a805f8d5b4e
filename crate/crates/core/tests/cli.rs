use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use saturate::fixtures::LengthTable;

fn saturate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saturate"))
        .args(args)
        .env_remove(saturate::cli::THREADS_ENV)
        .output()
        .expect("spawn saturate")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("lexi11.txt");
    let out = saturate(&["construct", "--algo", "lexi", "--q", "11", "--r", "4", "-o", p(&file)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).trim(), "q=11 r=4 R=3 n=8 d=5 algo=lexi");
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("11 4 3 8 5\n"));
    let quiet = saturate(&["--quiet", "construct", "--algo", "lexi", "--q", "11", "--r", "4", "-o", p(&file)]);
    assert_eq!(code(&quiet), 0);
    assert!(quiet.stdout.is_empty());
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 9);

    let kv = saturate(&["verify", p(&file)]);
    assert_eq!(code(&kv), 0);
    let kv = stdout(&kv);
    assert!(kv.contains("covering_radius=3"), "{kv}");
    assert!(kv.contains("min_distance=5"), "{kv}");

    let csv = saturate(&["verify", "--full", "--csv", p(&file)]);
    assert_eq!(code(&csv), 0);
    let csv = stdout(&csv);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1], "11,4,8,3,5,exhaustive,58881/14641,MDS,true");
}

#[test]
fn verify_rejects_a_truncated_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("lexi7.txt");
    assert_eq!(code(&saturate(&["construct", "--algo", "lexi", "--q", "7", "--r", "4", "-o", p(&file)])), 0);
    let text = fs::read_to_string(&file).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let header = lines[0].replace(" 8 5", " 7 5");
    lines[0] = &header;
    let cut = dir.path().join("cut.txt");
    fs::write(&cut, lines.join("\n")).unwrap();
    let out = saturate(&["verify", p(&cut)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("covering_radius="));
}

#[test]
fn malformed_input_is_a_domain_failure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    fs::write(&file, "7 4 3 2 0\n1 0 0 0\n1 9 0 0\n").unwrap();
    assert_eq!(code(&saturate(&["verify", p(&file)])), 1);
    assert_eq!(code(&saturate(&["verify", p(&dir.path().join("missing.txt"))])), 1);
    let out = dir.path().join("x.txt");
    assert_eq!(code(&saturate(&["construct", "--algo", "lexi", "--q", "6", "--r", "4", "-o", p(&out)])), 1);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&saturate(&[])), 2);
    assert_eq!(code(&saturate(&["construct", "--q", "7"])), 2);
    assert_eq!(code(&saturate(&["sweep", "--algo", "lexi", "--r", "4", "--q-range", "9:2", "-o", "x"])), 2);
    assert_eq!(code(&saturate(&["report", "--registry", "/nonexistent/registry.csv"])), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_saturate"))
        .args(["construct", "--algo", "lexi", "--q", "7", "--r", "4", "-o", "x"])
        .env(saturate::cli::THREADS_ENV, "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert_eq!(code(&saturate(&["--help"])), 0);
}

#[test]
fn greedy_with_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let start = dir.path().join("start.txt");
    fs::write(&start, "11 4 3 2 0\n0 0 0 1\n0 0 1 0\n").unwrap();
    let cfg = dir.path().join("greedy.cfg");
    fs::write(
        &cfg,
        "# two fixed columns, then small pools\nseed=9\nattempts=4\npools=full,5\npool=20\nstart_matrix=start.txt\n",
    )
    .unwrap();
    let file = dir.path().join("dg.txt");
    let out = saturate(&[
        "construct", "--algo", "d-rand-greedy", "--q", "11", "--r", "4", "--config", p(&cfg), "-o", p(&file),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&file).unwrap();
    let cols: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(&cols[..2], ["0 0 0 1", "0 0 1 0"]);
    assert!(text.contains("# algo: d-rand-greedy"));
    assert!(text.contains("# seed: 9"));
    assert_eq!(code(&saturate(&["verify", p(&file)])), 0);

    // the flag overrides the file
    let again = dir.path().join("dg2.txt");
    let out = saturate(&[
        "construct", "--algo", "d-rand-greedy", "--q", "11", "--r", "4", "--config", p(&cfg), "--seed", "10",
        "-o", p(&again),
    ]);
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(&again).unwrap().contains("# seed: 10"));
}

#[test]
fn sweep_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let journal = dir.path().join("journal.csv");
    let j = p(&journal);
    for algo in ["lexi", "invlexi"] {
        let out = saturate(&["sweep", "--algo", algo, "--r", "4", "--q-range", "7:31", "--primes-only", "-o", j]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let out = saturate(&["report", "--registry", j, "--table", "table1"]);
    assert_eq!(code(&out), 0);
    let mut expect = String::from("q,n\n");
    for q in [7u64, 11, 13, 17, 19, 23, 29, 31] {
        expect.push_str(&format!("{q},{}\n", LengthTable::Lexi4.length(q).unwrap()));
    }
    assert_eq!(stdout(&out), expect);

    let t3 = saturate(&["report", "--registry", j, "--table", "table3", "--q-range", "7:7"]);
    assert_eq!(stdout(&t3), "q,n,better\n7,8,0\n");

    let fig = dir.path().join("coeff.dat");
    let out = saturate(&["report", "--registry", j, "--figure", "coeff", "--q-range", "11:31", "-o", p(&fig)]);
    assert_eq!(code(&out), 0);
    let data = fs::read_to_string(&fig).unwrap();
    assert_eq!(data.lines().filter(|l| !l.starts_with('#')).count(), 7);

    let empty = saturate(&["report", "--registry", j, "--table", "table2"]);
    assert_eq!(code(&empty), 1);
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let journal = dir.path().join(name);
        let out = saturate(&[
            "--threads", threads, "sweep", "--algo", "rand-greedy", "--r", "4", "--q-range", "5:13", "--seed", "42",
            "--attempts", "5", "-o", p(&journal),
        ]);
        assert_eq!(code(&out), 0);
        (stdout(&out), fs::read(&journal).unwrap())
    };
    let one = run("1", "a.csv");
    assert_eq!(one, run("3", "b.csv"));
    assert_eq!(one, run("1", "c.csv"));
}
