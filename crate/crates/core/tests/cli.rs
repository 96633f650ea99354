use std::process::Command;

use galela::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("galela").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

/// First nonzero entry of a row of coefficient arrays.
fn leading(row: &Value) -> Value {
    row.as_array()
        .unwrap()
        .iter()
        .find(|e| e.as_array().unwrap().iter().any(|c| c != 0))
        .unwrap()
        .clone()
}

#[test]
fn census_formats_agree() {
    let v = json(&["census", "--q", "2", "--s", "4", "--t", "2", "--json"]);
    let orbits = v["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 3);
    assert_eq!(v["totals"]["subspaces"], 35);
    assert_eq!(v["predicted"]["eq3"], "2");
    let spread: Vec<_> = orbits.iter().filter(|o| o["is_spread"] == true).collect();
    assert_eq!(spread.len(), 1);
    assert_eq!(spread[0]["size"], 5);
    assert_eq!(spread[0]["u"], 2);
    for o in orbits {
        let rows = o["representative"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(leading(&rows[0]), serde_json::json!([1]));
    }

    let (_, table, _) = call(&["census", "--q", "2", "--s", "4", "--t", "2", "--table"]);
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert_eq!(rows.len(), orbits.len());
    for (row, o) in rows.iter().zip(orbits) {
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols[1], o["size"].to_string());
        assert_eq!(cols[2], o["u"].to_string());
    }
    let (_, csv, _) = call(&["census", "--q", "2", "--s", "4", "--t", "2", "--csv"]);
    assert_eq!(csv.lines().count(), orbits.len() + 1);
    assert_eq!(
        call(&["census", "--q", "2", "--s", "4", "--t", "2", "--csv", "--json"]).0,
        2
    );
}

#[test]
fn census_over_extension_fields() {
    let v = json(&["census", "--q", "4", "--s", "3", "--t", "2", "--json"]);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 1);
    assert_eq!(v["orbits"][0]["size"], 21);
    assert_eq!(
        leading(&v["orbits"][0]["representative"][0]),
        serde_json::json!([1, 0])
    );
}

#[test]
fn count_and_classify() {
    assert_eq!(
        call(&["count", "--p", "2", "--h", "4", "--m", "2", "--n", "1"]).1,
        "3\n"
    );
    assert_eq!(
        call(&[
            "count",
            "--p",
            "2",
            "--h",
            "4",
            "--m",
            "2",
            "--n",
            "1",
            "--minimal"
        ])
        .1,
        "2\n"
    );
    assert_eq!(
        call(&["count", "--p", "2", "--h", "4", "--m", "2", "--n", "3"]).0,
        2
    );
    assert_eq!(call(&["count", "--p", "2", "--h", "4", "--m", "5"]).0, 2);
    let big = json(&["count", "--p", "3", "--h", "40", "--m", "20", "--json"]);
    assert!(big["count"].as_str().unwrap().len() > 40);

    let v = json(&["classify", "--p", "2", "--h", "4", "--m", "2", "--json"]);
    let classes = v["classes"].as_array().unwrap();
    let mut sizes: Vec<u64> = classes
        .iter()
        .map(|c| c["size"].as_u64().unwrap())
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![5, 15, 15]);
    let (_, table, _) = call(&["classify", "--p", "2", "--h", "4", "--m", "2"]);
    assert_eq!(table.lines().count(), classes.len() + 1);
}

#[test]
fn field_summary() {
    let v = json(&["field", "--p", "2", "--h", "4", "--json"]);
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 0, 0, 1]));
    assert_eq!(v["order"], 16);
    assert_eq!(v["subfields"].as_array().unwrap().len(), 3);
    assert_eq!(call(&["field", "--p", "6", "--h", "2"]).0, 2);
}

#[test]
fn verify_subcommands() {
    let v = json(&[
        "verify",
        "correspondence",
        "--p",
        "2",
        "--h",
        "4",
        "--m",
        "2",
        "--n",
        "1",
    ]);
    assert_eq!(v["classes"], 3);
    assert_eq!(v["minimal_classes"], 2);
    let v = json(&["verify", "lemma1", "--p", "2", "--h", "2", "--r", "3"]);
    assert_eq!(v["pass"], true);
    assert_eq!(
        call(&["verify", "lemma1", "--p", "2", "--h", "8", "--r", "4"]).0,
        3
    );
    let v = json(&[
        "verify",
        "bruckbose",
        "--p",
        "2",
        "--h",
        "4",
        "--n",
        "2",
        "--r",
        "3",
    ]);
    assert_eq!(v["spread_size"], 17);
    assert_eq!(
        call(&["bruckbose", "--p", "2", "--h", "4", "--n", "3", "--r", "3"]).0,
        2
    );
    assert_eq!(
        call(&[
            "bruckbose",
            "--p",
            "2",
            "--h",
            "4",
            "--n",
            "2",
            "--r",
            "3",
            "--m",
            "1"
        ])
        .0,
        2
    );
}

#[test]
fn bruckbose_is_seeded() {
    let args = [
        "bruckbose",
        "--p",
        "2",
        "--h",
        "6",
        "--n",
        "3",
        "--r",
        "4",
        "--m",
        "3",
        "--seed",
        "9",
    ];
    let a = call(&args);
    let b = call(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn binary_honours_cap_environment() {
    let bin = env!("CARGO_BIN_EXE_galela");
    let out = Command::new(bin)
        .args(["census", "--q", "2", "--s", "6", "--t", "3", "--json"])
        .env("GALELA_CAP_SUBSPACES", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin)
        .args(["census", "--q", "2", "--s", "6", "--t", "3", "--json"])
        .env_remove("GALELA_CAP_SUBSPACES")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbits"].as_array().unwrap().len(), 23);
    let out = Command::new(bin)
        .args(["--cap", "0", "count", "--p", "2", "--h", "2", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
