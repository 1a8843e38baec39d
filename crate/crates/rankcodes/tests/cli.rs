use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankcodes"))
        .args(args)
        .current_dir(dir)
        .env_remove("RANKCODES_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn construct_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["construct", "coset-crc", "-q2", "-m3", "-n3", "-d2", "-r1", "-o", "coset.txt"],
        &["construct", "shell", "-q2", "-m4", "-n3", "-d2", "-r2", "-o", "shell.txt"],
        &["construct", "gabidulin", "-q3", "-m2", "-n2", "-d2", "-o", "gab.txt"],
        &["construct", "coset-crc", "-q2", "-m4", "-n4", "-d3", "-r2", "-o", "coset2.txt"],
    ];
    for args in cases {
        let o = run(dir.path(), args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let file = args.last().unwrap();
        let v = run(dir.path(), &["verify", file, "--sandwich-samples", "200"]);
        assert!(v.status.success(), "{}", stdout(&v));
        assert!(stdout(&v).ends_with("PASS\n"));
    }
    let coset = fs::read_to_string(dir.path().join("coset.txt")).unwrap();
    assert!(coset.starts_with("crc q=2 m=3 n=3 r=1 d=2 count=7 field=gf:p=2,m=3,poly=1011"));
    let shell = fs::read_to_string(dir.path().join("shell.txt")).unwrap();
    assert!(shell.contains("count=105"));
}

#[test]
fn corrupted_codeword_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["construct", "shell", "-q2", "-m3", "-n3", "-d2", "-r2", "-o", "s.txt"]);
    assert!(o.status.success());
    let path = dir.path().join("s.txt");
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // make the first codeword equal to the second: the count claim breaks
    lines[1] = lines[2].clone();
    fs::write(&path, lines.join("\n")).unwrap();
    let v = run(dir.path(), &["verify", "s.txt"]);
    assert_eq!(v.status.code(), Some(4));
    assert!(stdout(&v).contains("FAIL count"));

    // change one entry: the rank changes or the distance drops
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let flipped: String = lines[1]
        .chars()
        .enumerate()
        .map(|(i, c)| if i == 0 { if c == '0' { '1' } else { '0' } } else { c })
        .collect();
    lines[1] = flipped;
    fs::write(&path, lines.join("\n")).unwrap();
    let v = run(dir.path(), &["verify", "s.txt"]);
    assert_eq!(v.status.code(), Some(4));
    let err = String::from_utf8_lossy(&v.stderr);
    assert!(err.starts_with("error kind=verify"), "{err}");
}

#[test]
fn crc_to_cdc_and_back() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["search", "-q2", "-n4", "-r2", "-d2", "--metric", "C"]).status.success());
    let w = "witnesses/C_q2_n4_r2_d2.txt";
    let o = run(dir.path(), &["construct", "cdc-pair-to-crc", "--cols", w, "--rows", w, "-o", "pair.txt"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let pair = fs::read_to_string(dir.path().join("pair.txt")).unwrap();
    // spread pairs give rank distance at least 2 + 2
    assert!(pair.starts_with("crc q=2 m=4 n=4 r=2 d=4 count=5"), "{pair}");
    let o = run(dir.path(), &["construct", "crc-to-cdc", "--in", "pair.txt", "--side", "rows", "-o", "rows.txt"]);
    assert!(o.status.success());
    let rows = fs::read_to_string(dir.path().join("rows.txt")).unwrap();
    assert!(rows.starts_with("cdc q=2 n=4 r=2 d=2 count=5"));
    assert!(run(dir.path(), &["verify", "rows.txt"]).status.success());
}

#[test]
fn search_writes_witnesses_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search", "-q2", "-n4", "-r2", "-d2", "--metric", "C"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "C q=2 n=4 r=2 d=2 value=5 witness=witnesses/C_q2_n4_r2_d2.txt\n");
    let v = run(dir.path(), &["verify", "witnesses/C_q2_n4_r2_d2.txt"]);
    assert!(v.status.success());
    let o = run(dir.path(), &["--jobs", "3", "search", "-q2", "-m3", "-n2", "-r2", "-d1,2,3"]);
    assert!(o.status.success());
    let tsv = fs::read_to_string(dir.path().join("exact-values.tsv")).unwrap();
    let rows: Vec<&str> = tsv.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "R\t2\t3\t2\t2\t1\t42\twitnesses/R_q2_m3_n2_r2_d1.txt",
            "R\t2\t3\t2\t2\t2\t7\twitnesses/R_q2_m3_n2_r2_d2.txt",
            "R\t2\t3\t2\t2\t3\t1\twitnesses/R_q2_m3_n2_r2_d3.txt",
            "C\t2\t0\t4\t2\t2\t5\twitnesses/C_q2_n4_r2_d2.txt",
        ]
    );
}

#[test]
fn jobs_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["search", "-q2", "-m3", "-n3", "-r1", "-d1,2,3", "--no-write"];
    let one = run(dir.path(), &args);
    let mut many_args = vec!["--jobs", "4"];
    many_args.extend(args);
    let many = run(dir.path(), &many_args);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn capacity_and_usage_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search", "-q2", "-m4", "-n4", "-r2", "-d4", "--vertex-budget", "50", "--no-write"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error kind=capacity"));
    let o = run(dir.path(), &["search", "-q2", "-n4", "-r2", "-d2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["asympt", "--nu", "3/4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["asympt", "--nu", "1/4", "--rho", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["construct", "shell", "-q4", "-m2", "-n2", "-d1", "-r1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_csv_schema_and_stability() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bounds", "-q2", "-m4", "-n4", "-r2", "-d4", "--csv"];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,m,n,r,d,bound_name,kind,value,provenance"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.contains(&"2,4,4,2,4,cdc-transfer,upper,5,A_C cdc-singleton"));
    assert!(rows.iter().all(|r| r.starts_with("2,4,4,2,4,")));
    let o = run(dir.path(), &["bounds", "-q2", "-m3", "-n2", "-r2", "-d2"]);
    assert!(stdout(&o).contains("best lower 7, best upper 7"), "{}", stdout(&o));
}

#[test]
fn bounds_use_search_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["bounds", "-q2", "-m4", "-n4", "-r2", "-d4", "--search", "--symmetry"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("best lower 5, best upper 5"), "{}", stdout(&o));
}

#[test]
fn jr_cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run_cached = || {
        Command::new(env!("CARGO_BIN_EXE_rankcodes"))
            .args(["bounds", "-q2", "-m3", "-n3", "-r2", "-d3", "--csv"])
            .current_dir(dir.path())
            .env("RANKCODES_CACHE_DIR", dir.path().join("cache"))
            .output()
            .unwrap()
    };
    let first = run_cached();
    let cache = dir.path().join("cache/jr-cache.tsv");
    let text = fs::read_to_string(&cache).unwrap();
    assert!(text.starts_with("# rankcodes jr-cache v1"));
    let second = run_cached();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read_to_string(&cache).unwrap(), text);
}

#[test]
fn asympt_presets() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["asympt", "--csv", "--delta-steps", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 3 * 5);
    assert!(text.contains("3/4,1/5,0,31/100,31/100,1"));
    let human = run(dir.path(), &["asympt", "--preset", "fig3", "--delta-steps", "2"]);
    assert!(stdout(&human).contains("2rho>=1"));
}

#[test]
fn distro_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["distro", "-q3", "-m3", "-n3", "-d2"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains(" NO"));
}
