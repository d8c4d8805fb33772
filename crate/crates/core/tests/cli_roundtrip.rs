use std::fs;
use std::path::PathBuf;
use std::process::Command;

use idcolor::cli;
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("idcolor-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn exe(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_idcolor"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn in_process(args: &[&str]) -> cli::Outcome {
    cli::run(std::iter::once("idcolor").chain(args.iter().copied()))
}

#[test]
fn construct_then_verify_across_processes() {
    for (c, s, t) in [
        (3, 2, 2),
        (2, 4, 4),
        (2, 3, 5),
        (3, 5, 17),
        (4, 2, 13),
        (2, 7, 4),
        (5, 3, 120),
    ] {
        let path = scratch(&format!("m-{c}-{s}-{t}.txt"));
        let p = path.to_str().unwrap();
        let (code, doc) = exe(&[
            "construct",
            "--c",
            &c.to_string(),
            "--s",
            &s.to_string(),
            "--t",
            &t.to_string(),
            "--out",
            p,
        ]);
        assert_eq!(code, 0, "construct ({c},{s},{t}): {doc}");
        let (code, doc) = exe(&["verify", p]);
        assert_eq!(code, 0, "verify ({c},{s},{t}): {doc}");
        let v: Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(v["identity"], true);
    }
}

#[test]
fn construct_examples() {
    let path = scratch("two-by-two.txt");
    let p = path.to_str().unwrap();
    assert_eq!(
        exe(&["construct", "--c", "3", "--s", "2", "--t", "2", "--out", p]).0,
        0
    );
    assert_eq!(fs::read_to_string(&path).unwrap(), "3 2 2\n0 1\n0 2\n");

    let (code, doc) = exe(&["construct", "--c", "2", "--s", "2", "--t", "2"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(v["exists"], false);
    assert!(v["error"].is_string());
}

#[test]
fn verify_examples() {
    let full = scratch("full.txt");
    fs::write(&full, "2 4 2\n0 0\n0 1\n1 0\n1 1\n").unwrap();
    let (code, doc) = exe(&["verify", full.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(v["identity"], false);
    assert!(v["witness"]["row_perm"].is_array());

    let good = scratch("good.txt");
    fs::write(&good, "3 2 2\n0 1\n0 2\n").unwrap();
    assert_eq!(exe(&["verify", good.to_str().unwrap()]).0, 0);

    let bad = scratch("bad.txt");
    fs::write(&bad, "2 2 2\n0 1\n0 2\n").unwrap();
    assert_eq!(exe(&["verify", bad.to_str().unwrap()]).0, 2);

    assert_eq!(
        exe(&["verify", scratch("missing.txt").to_str().unwrap()]).0,
        2
    );
}

#[test]
fn witness_reproduces_matrix() {
    let sq = scratch("swap.txt");
    fs::write(&sq, "2 3 3\n0 0 0\n1 0 0\n1 1 0\n").unwrap();
    let o = in_process(&["verify", sq.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let w: idcolor::Automorphism = idcolor::Automorphism {
        row_perm: serde_json::from_value(v["witness"]["row_perm"].clone()).unwrap(),
        col_perm: serde_json::from_value(v["witness"]["col_perm"].clone()).unwrap(),
        part_swap: v["witness"]["part_swap"].as_bool().unwrap(),
    };
    let m: idcolor::ColorMatrix = fs::read_to_string(&sq).unwrap().parse().unwrap();
    assert!(w.preserves(&m));
    assert!(!w.is_identity());
}

#[test]
fn output_is_byte_stable() {
    let cases: [&[&str]; 5] = [
        &["decide", "--c", "3", "--s", "79", "--t", "4"],
        &["construct", "--c", "3", "--s", "6", "--t", "40"],
        &["distnum", "--s", "3", "--t", "3", "--cross-check"],
        &["table", "--c", "3", "--s-min", "1", "--s-max", "30"],
        &["decide", "--c", "1", "--s", "2", "--t", "2"],
    ];
    for args in cases {
        let a = exe(args);
        let b = exe(args);
        assert_eq!(a, b, "{args:?}");
        let inner = in_process(args);
        assert_eq!((inner.code, inner.stdout), a, "{args:?}");
        assert_eq!(a.1.lines().count(), 1);
        serde_json::from_str::<Value>(&a.1).unwrap();
    }
}

#[test]
fn decide_documents_carry_decimal_strings() {
    let t = "49269609804781974438694403402127765863";
    let o = in_process(&["decide", "--c", "3", "--s", "79", "--t", t]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["inputs"]["t"], t);
    assert_eq!(v["recursion_chain"][0][2], t);
    assert_eq!(v["case_label"], "T1-v");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["decide", "--c", "1", "--s", "2", "--t", "2"][..],
        &["decide", "--c", "3", "--s", "0", "--t", "2"],
        &["decide", "--c", "x", "--s", "2", "--t", "2"],
        &["decide", "-c", "3", "--s", "2", "--t", "2"],
        &["table", "--c", "3", "--s-min", "0", "--s-max", "2"],
        &["distnum", "--s", "2"],
        &["frobnicate"],
    ] {
        assert_eq!(in_process(args).code, 2, "{args:?}");
    }
}
