use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chern-galois")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn dump(name: &str) -> String {
    let o = run(&["zoo", "dump", name]);
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

fn temp_doc(text: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

#[test]
fn verify_all_on_z2group_passes() {
    let o = run(&["verify-all", "--zoo", "Z2GROUP"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("    E = [[0,0],[0,1]]\n"));
    assert!(out.contains("[PASS] deg1/chg_0: [1]\n"));
    assert!(out.contains("[PASS] deg1/chg_2: [-1*1@1@1]\n"));
    assert!(out.ends_with("failed)\n"));
}

#[test]
fn non_galois_variant_exits_one_with_rank_defect() {
    let text = dump("Z2GROUP").replace("u1 = u1@x1", "u1 = u1@x0");
    let file = temp_doc(&text);
    let o = run(&["principal", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("dim P⊗_B P = 2 but dim P⊗C = 4"), "{}", stdout(&o));
}

#[test]
fn degree_above_bound_is_an_input_error() {
    let o = run(&["chg", "--zoo", "Z2GROUP", "--corep", "deg1", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degree exceeds --max-degree"));
    let o = run(&["--max-degree", "3", "chg", "--zoo", "Z2GROUP", "--corep", "deg1", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn grouplike_only_needed_for_principal_checks() {
    let text: String = dump("Z2GROUP").lines().filter(|l| !l.starts_with("grouplike")).map(|l| format!("{l}\n")).collect();
    let file = temp_doc(&text);
    let path = file.path().to_str().unwrap();
    assert_eq!(run(&["validate", path]).status.code(), Some(0));
    let o = run(&["principal", path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("grouplike required"));
}

#[test]
fn parse_errors_exit_two_with_line_number() {
    let file = temp_doc("field Q\nalgebra\n  dim 1\n  basis a\n  frobnicate\nend\n");
    let o = run(&["validate", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
    assert_eq!(run(&["validate", "--zoo", "NOPE"]).status.code(), Some(2));
}

#[test]
fn zoo_list_and_dump_round_trip() {
    let o = run(&["zoo", "list"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    for name in stdout(&o).lines() {
        let text = dump(name);
        let file = temp_doc(&text);
        let o = run(&["validate", file.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}");
    }
    assert!(dump("TORUS3").starts_with("field QZETA 3\n"));
}

#[test]
fn unreduced_fractions_are_accepted() {
    let text = dump("Z2GROUP").replace("coact w1 = w1@x1", "coact w1 = 2/2*w1@x1");
    assert!(text.contains("2/2*"));
    let file = temp_doc(&text);
    assert_eq!(run(&["validate", file.path().to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_stable() {
    for args in [["verify-all", "--zoo", "QI"], ["certify", "--zoo", "FUN4"]] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn textbook_normalization_rescales_chg_2() {
    let o = run(&["--normalization", "textbook", "chg", "--zoo", "Z2GROUP", "--corep", "deg1", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[-2*1@1@1]"), "{}", stdout(&o));
}

#[test]
fn timings_go_to_stderr_only() {
    let plain = run(&["principal", "--zoo", "QI"]);
    let timed = run(&["--timings", "principal", "--zoo", "QI"]);
    assert_eq!(plain.stdout, timed.stdout);
    assert!(stderr(&timed).contains(" ms"));
}
