use std::process::Command;

use nilpotent_dict::output::{ConeOutput, DictOutput, QactOutput};
use serde_json::Value;

fn nildict(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nildict")).args(args).output().expect("binary runs");
    (out.status.success(), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (ok, text) = nildict(&full);
    assert!(ok, "nildict {args:?} failed");
    serde_json::from_str(&text).expect("valid json")
}

#[test]
fn dict_sl2_signs() {
    let pos: DictOutput = json(&["dict", "--group", "sl2r", "--k", "3"]);
    assert_eq!(pos.av.unwrap().to_string(), "K·Eθ*");
    assert_eq!(pos.wf.unwrap().to_string(), "G(R)·-ER*");
    assert_eq!(pos.whittaker.unwrap().to_string(), "w(-ER*)");
    let neg: DictOutput = json(&["dict", "--group", "sl2r", "--k", "-3"]);
    assert_eq!(neg.av.unwrap().to_string(), "K·Fθ*");
    assert_eq!(neg.wf.unwrap().to_string(), "G(R)·ER*");
    assert_eq!(neg.whittaker.unwrap().to_string(), "w(ER*)");
}

#[test]
fn dict_sp4_routes_agree() {
    let rec: DictOutput = json(&["dict", "--group", "sp4r", "--weight", "3,-1"]);
    assert!(rec.is_generic);
    let r = rec.routes.expect("routes reported");
    assert_eq!(r.ks_of_av, r.explicit);
    assert_eq!(r.section, r.explicit);
    let non_generic: DictOutput = json(&["dict", "--group", "sp4r", "--weight", "3,1"]);
    assert!(!non_generic.is_generic);
    assert!(non_generic.wf.is_none());
}

#[test]
fn dict_oracle_confirmation() {
    let (ok, text) = nildict(&["dict", "--group", "sl2r", "--k", "4", "--seed", "9"]);
    assert!(ok);
    assert!(text.contains("oracle conjugate"), "{text}");
}

#[test]
fn appendix_and_torsor() {
    let report: Value = json(&["verify-appendix"]);
    assert_eq!(report["pass"], true);
    for group in ["sl2r", "sp4r"] {
        let t: Value = json(&["torsor", "--group", group]);
        assert_eq!(t["pass"], true);
        for key in ["chambers", "av", "wf", "wh", "q"] {
            assert_eq!(t["counts"][key], 2, "{group} {key}");
        }
    }
}

#[test]
fn cone_and_qact() {
    let c: ConeOutput = json(&["cone", "--group", "sl2r", "--X", "-ER*", "--k", "2"]);
    assert!(c.meets);
    assert_eq!(c.witness.unwrap(), ["2", "0", "0"]);
    let c: ConeOutput = json(&["cone", "--group", "sl2r", "--X", "-ER*", "--k", "5"]);
    assert!(c.meets);
    let c: ConeOutput = json(&["cone", "--group", "sl2r", "--X", "ER*", "--k", "5"]);
    assert!(!c.meets && c.witness.is_none());
    let q: QactOutput = json(&["qact", "--group", "sl2r", "--label", "wf:+"]);
    assert_eq!(q.output.short(), "wf:-");
}

#[test]
fn bad_input_exits_nonzero() {
    assert!(!nildict(&["dict", "--group", "sl2r", "--k", "0"]).0);
    assert!(!nildict(&["dict", "--group", "nope", "--k", "1"]).0);
    assert!(!nildict(&["dict", "--group", "sp4r", "--weight", "3"]).0);
    assert!(!nildict(&["qact", "--group", "sl2r", "--label", "wf:?"]).0);
}

#[test]
fn catalog_validate_flags_corruption() {
    let (ok, text) = nildict(&["catalog-validate"]);
    assert!(ok, "{text}");
    let mut raw: Value = serde_json::from_str(nilpotent_dict::catalog::BUNDLED).unwrap();
    raw["entries"][0]["theta"][0][0] = Value::String("2".into());
    let dir = std::env::temp_dir().join(format!("nildict-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, raw.to_string()).unwrap();
    let (ok, text) = nildict(&["--catalog", path.to_str().unwrap(), "catalog-validate"]);
    assert!(!ok);
    assert!(text.contains("sl2r:") && text.contains("sp4r: ok"), "{text}");
    std::fs::remove_dir_all(&dir).ok();
}
