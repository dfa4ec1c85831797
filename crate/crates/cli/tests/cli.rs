use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bitcong")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_elapsed);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

#[test]
fn verify_ordinary_passes() {
    let out = run(&["verify-kummer", "--family", "ordinary:rand", "--field", "GF(2^5)", "--seed", "7", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["bidegree"], serde_json::json!([3, 7]));
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_supersingular_bidegree() {
    let out = run(&["verify-kummer", "--family", "supersingular:0", "--field", "GF(2^6)", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["bidegree"], serde_json::json!([1, 2]));
}

#[test]
fn zero_parameter_is_an_input_error() {
    let out = run(&["verify-kummer", "--family", "ordinary:0,1,1", "--field", "GF(2^5)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a must be nonzero"));
    let out = run(&["verify-kummer", "--family", "ordinary:1,1,1", "--field", "GF(2^"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_config_gives_identical_report() {
    let args = ["count", "--mode", "plane", "--family", "rank1:rand", "--field", "GF(2^4)", "--seed", "11", "--samples", "3"];
    let mut a = json(&run(&args));
    let mut b = json(&run(&args));
    strip_elapsed(&mut a);
    strip_elapsed(&mut b);
    assert_eq!(a, b);
    let mut one: Vec<&str> = args.to_vec();
    one.extend(["--workers", "1"]);
    let mut c = json(&run(&one));
    strip_elapsed(&mut c);
    assert_eq!(a, c);
}

#[test]
fn wall_fixture_ranks_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, rank) in [("I", 3), ("II", 2), ("III", 1), ("IV", 0)] {
        let path = dir.path().join(format!("{kind}.json"));
        let out = run(&["wall", "--kind", kind, "--k-max", "8", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["rank"], rank);
        assert_eq!(v["listed_contained"], true);
    }
}

#[test]
fn unstabilized_wall_exits_3() {
    // only one level fits below k_max
    let out = run(&["wall", "--kind", "I", "--k-max", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["stabilized"], false);
}

#[test]
fn singular_curve_is_rejected() {
    let out = run(&["wall", "--poly", "x^4 + y^4 + z^4 + x^3*y + y^3*z + z^3*x", "--field", "GF(2^3)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn referee_point_count_includes_ray_to_center() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("referee.txt");
    std::fs::write(&path, "w^2*x^2 + w^2*y^2 + w^2*z^2 + x*y^3 + x^3*z\n").unwrap();
    let out = run(&["count", "--mode", "point", "--poly-file", path.to_str().unwrap(), "--field", "GF(2^4)", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    for rep in json(&out)["reports"].as_array().unwrap() {
        // lines through [0,0,0,1] have p12 = p13 = p23 = 0
        let through_center = rep["witnesses"].as_array().unwrap().iter().any(|w| {
            [0, 1, 3].iter().all(|&i| w[i] == "[0,0,0,0]")
        });
        assert!(through_center, "{rep}");
    }
}

#[test]
fn disc_degrees() {
    for d in ["2", "4", "6"] {
        let out = run(&["disc", "--degree", d, "--samples", "50"]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["sqrt_degree"], d.parse::<u64>().unwrap() - 1);
        assert_eq!(v["square_identity"], true);
    }
    assert_eq!(json(&run(&["disc", "--degree", "2"]))["sqrt"], "x1");
    assert_eq!(run(&["disc", "--degree", "9"]).status.code(), Some(2));
}

#[test]
fn fixtures_listing() {
    let out = run(&["fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["wall"].as_array().unwrap().len(), 4);
    assert_eq!(v["cyclic"]["invariant_relation_vanishes"], true);
    assert_eq!(v["referee"]["inseparable_centers"].as_array().unwrap().len(), 1);
}
