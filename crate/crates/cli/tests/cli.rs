use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tduality"))
        .args(args)
        .env_remove("TDUALITY_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn group(free_rank: u64, factors: &[u64]) -> Value {
    json!({"free_rank": free_rank, "factors": factors})
}

const POINT_CLASS: &str = r#"{"version":1,"backend":"point","hminus1":{"t":1},"h0":{"z":1},"phi":[[]]}"#;

#[test]
fn lca_dual_swaps_z_and_t() {
    assert_eq!(json_of(&run(&["lca-dual", r#"{"z":1}"#])), json!({"t": 1}));
    let back = json_of(&run(&["lca-dual", r#"{"t":1}"#]));
    assert_eq!(back, json!({"z": 1}));
}

#[test]
fn lca_dual_is_an_involution_on_mixed_groups() {
    let g = r#"{"z":2,"t":1,"r":3,"finite":[2,6]}"#;
    let once = json_of(&run(&["lca-dual", g]));
    assert_eq!(once, json!({"z": 1, "t": 2, "r": 3, "finite": [2, 6]}));
    let twice = json_of(&run(&["lca-dual", &once.to_string()]));
    assert_eq!(twice, serde_json::from_str::<Value>(g).unwrap());
}

#[test]
fn snf_reports_invariant_factors() {
    let v = json_of(&run(&["snf", "[[2,4],[6,8]]"]));
    assert_eq!(v["rank"], 2);
    assert_eq!(v["cokernel"], group(0, &[2, 4]));
}

#[test]
fn ext_of_cyclic_groups() {
    let a = group(0, &[4]).to_string();
    let b = group(0, &[6]).to_string();
    let v = json_of(&run(&["ext", &a, &b]));
    for key in ["hom", "tensor", "ext1", "tor"] {
        assert_eq!(v[key], group(0, &[2]), "{key}");
    }
}

#[test]
fn cyclic_tables_follow_the_periodic_pattern() {
    let v = json_of(&run(&["group-cohomology-tables", "--p", "3", "--max", "6"]));
    assert_eq!(v["weight_modulus"], 2);
    let cyclic = v["cyclic"].as_array().unwrap();
    assert_eq!(cyclic.len(), 7);
    for row in cyclic {
        let i = row["degree"].as_u64().unwrap();
        let expected = match i {
            0 => group(1, &[]),
            _ if i % 2 == 1 => group(0, &[]),
            _ => group(0, &[3]),
        };
        assert_eq!(row["group"], expected, "degree {i}");
        if i > 0 && i % 2 == 0 {
            let weights: Vec<u64> = serde_json::from_value(row["weights"].clone()).unwrap();
            assert!(weights.contains(&(i / 2)), "degree {i}: {weights:?}");
        }
    }
}

#[test]
fn square_tables_degree_four_is_pure_weight_two() {
    let v = json_of(&run(&["group-cohomology-tables", "--p", "5", "--max", "4"]));
    let h4 = &v["square"][4];
    assert_eq!(h4["degree"], 4);
    assert_eq!(h4["weights"], json!([2]));
}

#[test]
fn tables_reject_composite_moduli() {
    let out = run(&["group-cohomology-tables", "--p", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kcomplex_has_one_free_class_in_degree_one() {
    let v = json_of(&run(&["kcomplex", "--qmax", "8"]));
    let rows = v["cohomology"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let expected = if row["degree"] == 1 { group(1, &[]) } else { group(0, &[]) };
        assert_eq!(row["group"], expected);
    }
}

#[test]
fn picard_dual_over_a_point() {
    let v = json_of(&run(&["picard-dual", "--base", "point", POINT_CLASS]));
    assert_eq!(v["certificate"]["dualizable"], true);
    assert_eq!(v["dual"]["hminus1"], json!({"t": 1}));
    assert_eq!(v["dual"]["h0"], json!({"z": 1}));
}

#[test]
fn flagged_class_exits_with_one() {
    let mut class: Value = serde_json::from_str(POINT_CLASS).unwrap();
    class["flagged_non_admissible"] = json!(true);
    let out = run(&["picard-dual", "--base", "point", &class.to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(run(&["snf", "[[1,2"]).status.code(), Some(2));
    assert_eq!(run(&["lca-dual", r#"{"q":1}"#]).status.code(), Some(2));
    let out = run(&["picard-dual", "--base", "point", r#"{"version":1,"backend":"point","hminus1":{"t":1},"h0":{"z":1},"phi":[]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["classify", "--base", "nowhere", "--chern", "{}"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn check_exactness_over_builtin_bases() {
    for (base, h2_gens) in [("torus", 1), ("S2", 1), ("RP2", 1), ("CP2", 1), ("T3", 3)] {
        let chern = json!({"n": 1, "components": [vec![0; h2_gens]]}).to_string();
        let v = json_of(&run(&["check-exactness", "--base", base, "--chern", &chern]));
        assert_eq!(v["exact"], true, "{base}");
    }
}

#[test]
fn hopf_bundle_has_a_single_dual() {
    let v = json_of(&run(&["classify", "--base", "S2", "--chern", r#"{"n":1,"components":[[1]]}"#]));
    assert_eq!(v["dualizable"], true);
    assert_eq!(v["gamma_order"], 1);
    assert_eq!(v["duals"].as_array().unwrap().len(), 1);
    assert_eq!(v["filtration"]["f2h3"], group(1, &[]));
}

#[test]
fn classify_is_reproducible() {
    let args = ["classify", "--base", "T3", "--chern", r#"{"n":1,"components":[[1,0,0]]}"#, "--radius", "1"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_all_passes_and_is_reproducible() {
    let a = run(&["check-all", "--seed", "7"]);
    let b = run(&["check-all", "--seed", "7"]);
    let v = json_of(&a);
    assert_eq!(v["passed"], true, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(v["criteria"].as_array().unwrap().len(), 14);
    assert_eq!(a.stdout, b.stdout);
    let lines = String::from_utf8_lossy(&a.stderr);
    assert_eq!(lines.lines().filter(|l| l.starts_with("PASS")).count(), 14);
}

#[test]
fn out_dir_from_environment_receives_the_report() {
    let dir: PathBuf = std::env::temp_dir().join(format!("tduality-cli-{}", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_tduality"))
        .args(["kcomplex", "--qmax", "3"])
        .env("TDUALITY_OUT_DIR", &dir)
        .output()
        .unwrap();
    let printed = json_of(&out);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("kcomplex.json")).unwrap()).unwrap();
    assert_eq!(printed, written);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn inline_and_file_arguments_agree() {
    let path = std::env::temp_dir().join(format!("tduality-cli-group-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"z":1,"t":2}"#).unwrap();
    let from_file = json_of(&run(&["lca-dual", path.to_str().unwrap()]));
    let inline = json_of(&run(&["lca-dual", r#"{"z":1,"t":2}"#]));
    assert_eq!(from_file, inline);
    std::fs::remove_file(&path).unwrap();
}
