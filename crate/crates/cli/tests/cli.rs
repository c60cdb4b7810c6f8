use std::path::PathBuf;
use std::process::Command;

use fillsurg_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fillsurg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn tsv_map(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('\t'))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[test]
fn torus_5_3_golden() {
    let (code, out, _) = call(&["torus", "5", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("5/3 = [1,1,2]"), "{out}");
    assert!(out.contains("3x1, 2x1"), "{out}");
    assert!(out.contains("m = pq - c = 25/2"), "{out}");
    assert!(out.contains("mu = pq - a_n = 13"), "{out}");
    assert!(out.contains("{3,2}"), "{out}");
}

#[test]
fn torus_tsv_columns() {
    let (code, out, _) = call(&["--tsv", "torus", "3", "5"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    let header: Vec<&str> = lines[0].split('\t').collect();
    let row: Vec<&str> = lines[1].split('\t').collect();
    assert_eq!(header.len(), row.len());
    let get = |k: &str| row[header.iter().position(|h| *h == k).unwrap()];
    assert_eq!(get("p"), "5");
    assert_eq!(get("cf"), "1,1,2");
    assert_eq!(get("mu"), "13");
    assert_eq!(get("m"), "25/2");
    assert_eq!(get("schedule"), "3x1,2x1");
}

#[test]
fn torus_sweep_rows_match_single_calls() {
    let (code, out, _) = call(&["torus", "--max", "12", "--tsv"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    // coprime pairs 2 <= q < p <= 12
    assert_eq!(rows.len(), 34);
    for row in rows.iter().step_by(7) {
        let f: Vec<&str> = row.split('\t').collect();
        let (_, single, _) = call(&["--tsv", "torus", f[0], f[1]]);
        assert_eq!(single.lines().nth(1).unwrap(), *row);
    }
}

#[test]
fn torus_rejects_bad_input() {
    assert_eq!(call(&["torus", "6", "4"]).0, EXIT_USAGE);
    assert_eq!(call(&["torus", "5"]).0, EXIT_USAGE);
    assert_eq!(call(&["torus", "x", "2"]).0, EXIT_USAGE);
    let (code, out, _) = call(&["torus", "7", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("unknot"));
}

#[test]
fn gapset_flags_23() {
    let (code, out, _) = call(&["gapset", "30"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cited list:  {1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 19}"), "{out}");
    assert!(out.contains("computed:    {1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 19, 23}"), "{out}");
    assert!(out.contains("DISCREPANCY: 23"), "{out}");

    let (_, out, _) = call(&["--tsv", "gapset", "20"]);
    assert_eq!(out.lines().nth(1).unwrap().split('\t').next_back(), Some("-"));
}

#[test]
fn certify_pretzel_golden() {
    let path = data("certs/pretzel.cert");
    let (code, out, err) = call(&["certify", &path]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("g = 5"), "{out}");
    assert!(out.contains("r = 17"), "{out}");
    assert!(out.contains("sl = 9"), "{out}");
    assert!(out.contains("disk class {3,2,2}"), "{out}");
    assert!(out.contains("extended"), "{out}");
}

#[test]
fn certify_tsv_round_trip() {
    let path = data("certs/pretzel.cert");
    let (code, out, _) = call(&[
        "--tsv",
        "certify",
        &path,
        "--target",
        "B3: 1 2 2 1 1 2 2 2 2 2 2 2",
    ]);
    assert_eq!(code, EXIT_OK);
    let map = tsv_map(&out);
    let get = |k: &str| map.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str()).unwrap();
    assert_eq!(get("valid"), "true");
    assert_eq!((get("g"), get("r"), get("sl")), ("5", "17", "9"));
    assert_eq!(get("consistent"), "true");

    // The flattened word fed back through `braid` reproduces the invariants.
    let flat = get("flattened").to_string();
    let (code, out, _) = call(&["--tsv", "braid", &flat]);
    assert_eq!(code, EXIT_OK);
    let b = tsv_map(&out);
    let bget = |k: &str| b.iter().find(|(a, _)| a == k).map(|(_, v)| v.clone()).unwrap();
    assert_eq!(bget("components"), "1");
    assert_eq!(bget("self_linking"), "9");
    assert_eq!(bget("positive_genus"), "5");
}

#[test]
fn certify_failures() {
    let (code, out, _) = call(&["certify", r#"{"strands":3,"factors":[]}"#]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.contains("rejected"));
    assert_eq!(call(&["certify", "{not json"]).0, EXIT_USAGE);
    assert_eq!(call(&["certify", "/nonexistent/file.cert"]).0, EXIT_USAGE);
    let path = data("certs/pretzel.cert");
    assert_eq!(call(&["certify", &path, "--target", "B2: 1 1 1"]).0, EXIT_DOMAIN);
}

#[test]
fn diskclass_and_consistent() {
    let (code, out, _) = call(&["--tsv", "diskclass", "3,2,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().nth(1), Some("3,2,2\t17\t5\tfalse"));
    assert_eq!(call(&["diskclass", "3,0"]).0, EXIT_USAGE);

    let (code, out, _) = call(&["--tsv", "consistent", "18", "6"]);
    assert_eq!(code, EXIT_OK);
    let classes: Vec<&str> = out.lines().skip(1).map(|l| l.rsplit('\t').next().unwrap()).collect();
    assert_eq!(classes, ["3,3", "4,1,1"]);
    let (_, out, _) = call(&["consistent", "17", "5"]);
    assert!(out.contains("{3,2,2}"), "{out}");
}

#[test]
fn construct_rules() {
    let (code, out, _) = call(&["--tsv", "construct", "positive-braid", "B3: 1 2 2 1 1 2 2 2 2 2 2 2"]);
    assert_eq!(code, EXIT_OK);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(&row[..4], ["a", "yes", "20", "5"]);

    assert_eq!(call(&["construct", "lens", "--genus", "5", "--coefficient", "18"]).0, EXIT_OK);
    assert_eq!(call(&["construct", "lens", "--genus", "5", "--coefficient", "9"]).0, EXIT_DOMAIN);
    assert_eq!(call(&["construct", "lens", "--genus", "1", "--coefficient", "-1"]).0, EXIT_USAGE);
    assert_eq!(call(&["construct", "cable", "2", "9", "--companion", "4"]).0, EXIT_OK);
    assert_eq!(call(&["construct", "cable", "2", "7", "--companion", "4"]).0, EXIT_DOMAIN);
    assert_eq!(call(&["construct", "cable", "2", "4", "--companion", "4"]).0, EXIT_USAGE);
    let path = data("certs/pretzel.cert");
    assert_eq!(call(&["construct", "satellite", &path, "--companion", "-3"]).0, EXIT_OK);
    assert_eq!(call(&["construct", "positive-braid", "B3: 1 -2"]).0, EXIT_DOMAIN);
}

#[test]
fn shipped_table_verifies() {
    let (code, out, _) = call(&["--tsv", "table"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("# rows 59 yes 48 no 11 failures 0\n"), "{out}");
    let (code, out2, _) = call(&["--tsv", "table", "--catalog", &data("catalog.tsv")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, out2);
}

#[test]
fn table_flags_broken_catalog() {
    let dir = std::env::temp_dir().join(format!("fillsurg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(data("catalog.tsv")).unwrap();
    // Claim an impossible exact value for the trefoil.
    let broken: String = text
        .lines()
        .map(|l| {
            if l.starts_with("3_1\t") {
                l.replacen("\tY\t4\tY\t", "\tY\t3\tY\t", 1)
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    assert_ne!(broken, text.trim_end());
    let path = dir.join("catalog.tsv");
    std::fs::write(&path, broken).unwrap();
    std::fs::create_dir_all(dir.join("certs")).unwrap();
    for entry in std::fs::read_dir(data("certs")).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.join("certs").join(entry.file_name())).unwrap();
    }
    let (code, out, _) = call(&["table", "--catalog", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_DOMAIN, "{out}");
    assert!(out.contains("FAIL"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_and_usage_exit_codes() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("gapset"));
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_fillsurg");
    let ok = Command::new(bin).args(["torus", "5", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("13"));
    let bad = Command::new(bin).args(["torus", "4", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
