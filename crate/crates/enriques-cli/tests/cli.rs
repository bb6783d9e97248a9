//! End-to-end tests of the `enriques` binary: output formats, exit codes,
//! determinism and the on-disk table cache.

use std::process::{Command, Output};

fn enriques(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enriques"))
        .args(args)
        .env_remove("ENRIQUES_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("UTF-8 output")
}

#[test]
fn omega_csv_table() {
    let out = enriques(&["table", "omega", "--gmax", "4", "--qmax", "10", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), ["g", "n", "value_num", "value_den"]);
    let records: Vec<_> = rows.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 4 * 11);
    let get = |g: &str, n: &str| {
        let r = records.iter().find(|r| &r[0] == g && &r[1] == n).unwrap();
        (r[2].to_string(), r[3].to_string())
    };
    assert_eq!(get("1", "1"), ("16".into(), "1".into()));
    assert_eq!(get("1", "4"), ("5264".into(), "1".into()));
    assert_eq!(get("2", "1"), ("-2".into(), "1".into()));
    assert_eq!(get("3", "1"), ("1".into(), "6".into()));
}

#[test]
fn omega_pform_table() {
    let out = enriques(&["table", "omega", "--gmax", "2", "--qmax", "1", "--pform", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("r,n,value_num,value_den\n"));
    assert!(text.contains("\n0,1,12,1\n"));
    assert!(text.contains("\n1,1,2,1\n"));
    assert!(text.contains("\n-1,1,2,1\n"));
}

#[test]
fn vafa_witten_rank_one_table() {
    let out = enriques(&["table", "vw", "--rank", "1", "--nmax", "10", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\n1,0,0,0,-1,1,1,odd,24,1\n"), "{text}");
    assert_eq!(text.lines().count(), 1 + 21);
}

#[test]
fn verify_theta_identity_passes() {
    let out = enriques(&["verify", "theta-identity", "--qmax", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert!(text.contains("theta-identity: PASS"));
}

#[test]
fn verify_json_report() {
    let out = enriques(&["verify", "recursion", "--qmax", "1", "--norm", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["target"], "recursion");
    assert_eq!(v[0]["passed"], true);
    assert!(!v[0]["checks"].as_array().unwrap().is_empty());
}

#[test]
fn series_outputs() {
    let out = enriques(&["series", "a", "--qmax", "4"]);
    assert_eq!(stdout(&out), "1/1 + (16/1)q^(1) + (144/1)q^(2) + (960/1)q^(3) + (5264/1)q^(4) + O(q^(5))\n");
    let out = enriques(&["series", "km-kernel", "--qmax", "1"]);
    assert!(stdout(&out).contains("q^(1/1): 2/1 p^-1 + 12/1 + 2/1 p^1\n"));
    let out = enriques(&["series", "eta-inv12", "--qmax", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap();
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(enriques(&["verify", "no-such-target"]).status.code(), Some(2));
    assert_eq!(enriques(&["table", "omega", "--qmax", "0"]).status.code(), Some(2));
    assert_eq!(enriques(&["table", "omega", "--csv", "--json"]).status.code(), Some(2));
    assert_eq!(enriques(&["verify", "vanishing-lemma", "--rank", "2"]).status.code(), Some(2));
}

#[test]
fn shortfall_exits_three_and_names_the_bound() {
    let out = enriques(&["verify", "genus1-borcherds", "--qmax", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("truncation shortfall"), "{err}");
    assert!(err.contains("bound is 3"), "{err}");
}

#[test]
fn undecidable_check_exits_one() {
    let out = enriques(&["verify", "vanishing-lemma", "--qmax", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("inconclusive"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "omega", "--gmax", "3", "--qmax", "6", "--json"][..],
        &["table", "fkm", "--qmax", "3", "--json"][..],
        &["table", "bps", "--gmax", "2", "--rank", "2", "--csv"][..],
        &["verify", "reflections", "--count", "20"][..],
    ] {
        let a = enriques(args);
        let b = enriques(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "omega", "--gmax", "3", "--qmax", "8", "--csv"];
    let plain = enriques(&args);
    let run_cached = || {
        Command::new(env!("CARGO_BIN_EXE_enriques"))
            .args(args)
            .env("ENRIQUES_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run_cached();
    assert!(dir.path().join("omega_table-g3-n8.json").exists());
    let second = run_cached();
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(plain.stdout, second.stdout);
}

#[test]
fn output_file_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.csv");
    let out = enriques(&["table", "a", "--qmax", "3", "--csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "n,value_num,value_den\n0,1,1\n1,16,1\n2,144,1\n3,960,1\n");
}
