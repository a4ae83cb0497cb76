use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use zinbiel_cli::{run, Outcome};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("data/catalog").join(name).display().to_string()
}

fn zb(args: &[&str]) -> Outcome {
    run(std::iter::once("zinbiel").chain(args.iter().copied()))
}

fn schema_check(schema: &str, out: &str) -> Value {
    let text = std::fs::read_to_string(root().join("data/schema").join(format!("{schema}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    assert_eq!(out.lines().count(), 1, "one JSON object per invocation: {out}");
    let value: Value = serde_json::from_str(out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}"));
    if let Err(errors) = compiled.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{schema} schema rejects output:\n{}\n{out}", msgs.join("\n"));
    }
    value
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn check_nf4_holds() {
    let out = zb(&["check", &fixture("nf4.zb")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "Zinbiel identity: holds\n");
}

#[test]
fn nilindex_of_a1_is_five() {
    let out = zb(&["nilindex", &fixture("a1.zb")]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "5\n"));
}

#[test]
fn idempotent_fails_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "idem.zb", "algebra idem\ndim 1\ntable\ne1 * e1 = e1\nend\n");
    let out = zb(&["check", &f]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("violation at (1, 1, 1)"), "{}", out.stdout);
    let out = zb(&["nilindex", &f]);
    assert_eq!(out.code, 1);
    let json = zb(&["--json", "check", &f]);
    let v = schema_check("check", &json.stdout);
    assert_eq!(v["violations"][0]["residual"][0], "-1");
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "bad.zb", "algebra bad\ndim 2\ntable\ne1 * e1 = e2\ne1 * e1 = e2\nend\n");
    let out = zb(&["check", &f]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.zb") && out.stderr.contains("line 5"), "{}", out.stderr);
    let json = zb(&["--json", "shape", &f]);
    assert_eq!(json.code, 2);
    let v = schema_check("error", &json.stdout);
    assert_eq!(v["error"]["line"], 5);
    assert_eq!(zb(&["check", "/no/such/file.zb"]).code, 2);
    assert_eq!(zb(&["frobnicate"]).code, 2);
    assert_eq!(zb(&["gen", "a17"]).code, 2);
    assert_eq!(zb(&["gen", "a8"]).code, 2, "families need --alpha");
    assert_eq!(zb(&["gen", "a15", "--alpha", "1"]).code, 2);
    assert_eq!(zb(&["normalize", "5", "--alpha", "x", "--beta", "1"]).code, 2);
}

#[test]
fn powers_shape_fingerprint_grade() {
    let out = zb(&["powers", &fixture("f2_5.zb")]);
    assert_eq!(out.stdout, "dim A^1 = 5\ndim A^2 = 3\ndim A^3 = 2\ndim A^4 = 1\ndim A^5 = 0\n");
    assert_eq!(zb(&["shape", &fixture("f2_5.zb")]).stdout, "filiform\n");
    assert_eq!(zb(&["shape", &fixture("nf4.zb")]).stdout, "nul-filiform\n");
    assert_eq!(zb(&["shape", &fixture("a7.zb")]).stdout, "other\n");
    let fp = zb(&["fingerprint", &fixture("a1.zb")]);
    assert!(fp.stdout.contains("power_dims: 4 3 2 1 0\n") && fp.stdout.contains("generators: 1\n"));

    // the graded F_5^2 prints as a table file that parses back to F_5^1
    let graded = zb(&["grade", &fixture("f2_5.zb")]);
    assert_eq!(graded.code, 0);
    assert!(graded.stdout.starts_with("# degrees: 1 2 3 4 1\n"));
    let doc = zinbiel::catalog::parse_dsl(&graded.stdout).unwrap();
    assert_eq!(doc.instantiate(&[]).unwrap(), zinbiel::catalog::make_f1(5).unwrap());
}

#[test]
fn gen_matches_fixtures_and_writes_files() {
    assert_eq!(zb(&["gen", "nf", "4"]).stdout, std::fs::read_to_string(fixture("nf4.zb")).unwrap());
    assert_eq!(
        zb(&["gen", "a8", "--alpha", "1/2"]).stdout,
        std::fs::read_to_string(fixture("a8_1-2.zb")).unwrap()
    );
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("f.zb");
    let out = zb(&["gen", "fab", "6", "--alpha", "-1", "--beta", "2/3", "-o", target.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let text = std::fs::read_to_string(&target).unwrap();
    let doc = zinbiel::catalog::parse_dsl(&text).unwrap();
    let expected = zinbiel::catalog::make_filiform(6, &zinbiel::scalar::int(-1), &zinbiel::scalar::rat(2, 3)).unwrap();
    assert_eq!(doc.instantiate(&[]).unwrap(), expected);
}

#[test]
fn normalize_reports_verified_change() {
    let out = zb(&["normalize", "6", "--alpha", "3", "--beta", "4"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("class: F_6^3\nfield: Q\n"), "{}", out.stdout);
    assert!(out.stdout.ends_with("verified: true\n"));
    let q = zb(&["--json", "normalize", "5", "--alpha", "1/2", "--beta", "2"]);
    let v = schema_check("normalize", &q.stdout);
    assert_eq!(v["field"], "Q(sqrt(2))");
    assert_eq!(v["coefficients"]["bn"], "1/2*sqrt(2)");
    assert_eq!(v["verified"], true);
}

#[test]
fn iso_and_verify_change() {
    let a1 = fixture("a1.zb");
    let out = zb(&["iso", &a1, &fixture("a2.zb")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "verdict: NonIsomorphic (fingerprint component `power_dims` differs)\n");
    let same = zb(&["iso", &a1, &fixture("nf4.zb")]);
    assert!(same.stdout.starts_with("verdict: IsomorphicOverQ\n"));
    let modp = zb(&["--json", "iso", &fixture("a10.zb"), &fixture("a11.zb"), "--mod", "2", "--search"]);
    let v = schema_check("iso", &modp.stdout);
    assert_eq!(v["verdict"]["kind"], "isomorphic");
    let v = schema_check("iso", &zb(&["--json", "iso", &fixture("a10.zb"), &fixture("a11.zb")]).stdout);
    assert_eq!(v["verdict"]["kind"], "Inconclusive");
    let illegal = zb(&["iso", &fixture("a8_1-2.zb"), &fixture("a8_2.zb"), "--mod", "2", "--search"]);
    assert_eq!(illegal.code, 2, "1/2 cannot be reduced mod 2");

    let dir = tempfile::tempdir().unwrap();
    // swapping e1 and e2 in A_14 (e2e1 = e4, e2e2 = e3) gives e1e2 = e4, e1e1 = e3
    let swapped = write_temp(&dir, "s.zb", "algebra s\ndim 4\ntable\ne1 * e1 = e3\ne1 * e2 = e4\nend\n");
    let m = write_temp(&dir, "m.txt", "0 1 0 0\n1 0 0 0\n0 0 1 0\n0 0 0 1\n");
    let ok = zb(&["verify-change", &fixture("a14.zb"), &swapped, "--matrix", &m]);
    assert_eq!(ok.code, 0, "{}", ok.stdout);
    let id = write_temp(&dir, "id.txt", "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    assert_eq!(zb(&["verify-change", &fixture("a14.zb"), &swapped, "--matrix", &id]).code, 1);
    let singular = write_temp(&dir, "z.txt", "1 0 0 0\n1 0 0 0\n0 0 1 0\n0 0 0 1\n");
    assert_eq!(zb(&["verify-change", &fixture("a14.zb"), &swapped, "--matrix", &singular]).code, 2);
    let v = schema_check("verify-change", &zb(&["--json", "verify-change", &fixture("a14.zb"), &swapped, "--matrix", &m]).stdout);
    assert_eq!(v["verified"], true);
}

#[test]
fn split_reports() {
    let out = zb(&["split", &fixture("f1_5.zb"), "--mod", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("splits over F_2: I (dim 1) + J (dim 4)\n"), "{}", out.stdout);
    assert_eq!(zb(&["split", &fixture("nf4.zb"), "--mod", "3"]).stdout, "no splitting over F_3\n");
    schema_check("split", &zb(&["--json", "split", &fixture("nf4.zb"), "--mod", "2"]).stdout);
    assert_eq!(zb(&["split", &fixture("nf4.zb"), "--mod", "4"]).code, 2);
}

#[test]
fn catalog_verify_on_shipped_fixtures() {
    let dir = root().join("data/catalog").display().to_string();
    let out = zb(&["catalog", "verify", "--dir", &dir]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("catalog verify: ok\n"));
    assert!(out.stdout.contains("nf4.zb vs a1.zb (known alias):\n    verdict: IsomorphicOverQ\n"), "{}", out.stdout);
    let json = zb(&["--json", "catalog", "verify", "--dir", &dir]);
    let v = schema_check("catalog-verify", &json.stdout);
    assert_eq!(v["ok"], true);
    assert_eq!(v["algebras"].as_array().unwrap().len(), 26);
}

fn copy_catalog(dir: &tempfile::TempDir) {
    for entry in std::fs::read_dir(root().join("data/catalog")).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
}

#[test]
fn catalog_verify_flags_a_duplicate() {
    let dir = tempfile::tempdir().unwrap();
    copy_catalog(&dir);
    let text = std::fs::read_to_string(fixture("a1.zb")).unwrap().replace("algebra A_1", "algebra A_1_again");
    std::fs::write(dir.path().join("zz_copy.zb"), text).unwrap();
    let out = zb(&["catalog", "verify", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("a1.zb vs zz_copy.zb:\n    verdict: IsomorphicOverQ"), "{}", out.stdout);
}

#[test]
fn catalog_verify_needs_every_fixture() {
    let dir = tempfile::tempdir().unwrap();
    copy_catalog(&dir);
    std::fs::remove_file(dir.path().join("a13.zb")).unwrap();
    let out = zb(&["catalog", "verify", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("missing fixture(s): a13.zb"), "{}", out.stderr);
}

#[test]
fn catalog_verify_flags_a_tampered_fixture() {
    let dir = tempfile::tempdir().unwrap();
    copy_catalog(&dir);
    std::fs::write(dir.path().join("a12.zb"), "algebra A_12\ndim 4\ntable\ne1 * e2 = e3\nend\n").unwrap();
    let out = zb(&["catalog", "verify", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("DIFFERS FROM CONSTRUCTOR"));
}

#[test]
fn output_is_deterministic() {
    let dir = root().join("data/catalog").display().to_string();
    for args in [
        vec!["catalog", "verify", "--dir", dir.as_str()],
        vec!["--json", "--threads", "3", "catalog", "verify", "--dir", dir.as_str()],
    ] {
        let first = zb(&args);
        for _ in 0..2 {
            assert_eq!(zb(&args), first);
        }
    }
    let a = zb(&["--threads", "1", "iso", &fixture("a9_2.zb"), &fixture("a16.zb")]);
    let b = zb(&["--threads", "4", "iso", &fixture("a9_2.zb"), &fixture("a16.zb")]);
    assert_eq!(a, b);
}

#[test]
fn json_outputs_follow_schemas() {
    let f = fixture("a3.zb");
    for (schema, args) in [
        ("check", vec!["check", f.as_str()]),
        ("powers", vec!["powers", f.as_str()]),
        ("nilindex", vec!["nilindex", f.as_str()]),
        ("shape", vec!["shape", f.as_str()]),
        ("grade", vec!["grade", f.as_str()]),
        ("fingerprint", vec!["fingerprint", f.as_str()]),
        ("gen", vec!["gen", "f3", "6"]),
        ("iso", vec!["iso", f.as_str(), f.as_str()]),
        ("split", vec!["split", f.as_str(), "--mod", "3"]),
    ] {
        let mut full = vec!["--json"];
        full.extend(args);
        let out = zb(&full);
        assert_eq!(out.code, 0, "{full:?}");
        let v = schema_check(schema, &out.stdout);
        assert_eq!(v["command"], schema);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_zinbiel");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["check", &fixture("nf4.zb")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "Zinbiel identity: holds\n");
    assert_eq!(status(&["check"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
