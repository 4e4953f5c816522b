use std::io::Write;
use std::process::{Command, Output};

use friable_cli::report::{Body, Report, SCHEMA_VERSION};

fn friable(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_friable"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (Report, String) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = friable(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    (serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn count_examples() {
    let (r, _) = json(&["count", "--x", "10", "--y", "2"]);
    match r.body {
        Body::Count(c) => {
            assert_eq!(c.psi, 4);
            assert_eq!(c.methods_agree, Some(true));
        }
        other => panic!("{other:?}"),
    }
    let (r, _) = json(&["count", "--x", "100", "--y", "100"]);
    assert!(matches!(r.body, Body::Count(ref c) if c.psi == 100));
    assert_eq!(r.schema_version, SCHEMA_VERSION);
}

#[test]
fn count_over_budget() {
    let out = friable(&["count", "--x", "1e12", "--y", "1e6"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("x·ρ(u)") && err.contains("e11"), "{err}");
}

#[test]
fn json_round_trips() {
    for args in [
        &["compare", "--x", "1e6", "--y", "1e3"][..],
        &["saddle", "--x", "1e6", "--y", "1e3"],
        &["constant-l"],
        &["rho", "--u", "3.5"],
        &["g-decompose", "--s", "0.6", "--y", "1000"],
        &["scan-pomerance", "--grid", "x=1e4,1e5;y=2log,1000"],
    ] {
        let (r, text) = json(args);
        let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
        assert_eq!(serde_json::from_str::<Report>(&again).unwrap(), r);
    }
}

#[test]
fn config_is_echoed() {
    let (r, _) = json(&[
        "compare",
        "--x",
        "1e6",
        "--y",
        "1e3",
        "--budget",
        "1e8",
        "--tolerance",
        "sandwich_delta=0.4",
    ]);
    assert_eq!(r.config.subcommand, "compare");
    assert_eq!(r.config.x, Some(1e6));
    assert_eq!(r.config.budget, 1e8);
    assert_eq!(r.config.tolerances["sandwich_delta"], 0.4);
}

#[test]
fn compare_has_all_ratios() {
    let (r, _) = json(&["compare", "--x", "1e6", "--y", "1e3"]);
    let Body::Compare { cells, .. } = r.body else {
        panic!()
    };
    let ratios = &cells[0].report.ratios;
    for k in [
        "x_rho",
        "lambda_debruijn",
        "ht_saddle",
        "x_rho_z",
        "main_formula_sigma",
        "main_formula_alpha",
        "sharp_corrected",
    ] {
        assert!(ratios.contains_key(k), "{k}");
    }
    let (r, _) = json(&["compare", "--x", "1e6", "--y", "40"]);
    let Body::Compare { cells, .. } = r.body else {
        panic!()
    };
    assert!(!cells[0].report.near_boundary);
    let (r, _) = json(&["compare", "--x", "1e6", "--y", "27"]);
    let Body::Compare { cells, .. } = r.body else {
        panic!()
    };
    assert!(cells[0].report.near_boundary);
}

#[test]
fn grid_is_deterministic_and_ordered() {
    let a = friable(&["compare", "--grid", "default", "--format", "csv"]);
    let b = friable(&["compare", "--grid", "default", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let h = rdr.headers().unwrap().clone();
    let (ix, iy) = (
        h.iter().position(|c| c == "report.x").unwrap(),
        h.iter().position(|c| c == "report.y").unwrap(),
    );
    let cells: Vec<(f64, f64)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[ix].parse().unwrap(), r[iy].parse().unwrap())
        })
        .collect();
    assert_eq!(cells.len(), 24);
    assert!(cells.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn constant_l_outputs() {
    let (r, _) = json(&["constant-l"]);
    let Body::ConstantL(l) = r.body else { panic!() };
    assert!((l.value + 0.666217).abs() < 1e-5);
    let (w, _) = json(&["constant-l", "--bracket", "-20", "20"]);
    let Body::ConstantL(lw) = w.body else {
        panic!()
    };
    assert!((lw.value - l.value).abs() < 1e-12);
    let out = friable(&["constant-l", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "L,v_argmax");
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1].split(',').count(), 2);
}

#[test]
fn zeros_check_bundled_and_corrupted() {
    let (r, _) = json(&["zeros-check", "--y", "1000", "--T", "100"]);
    let Body::ZerosCheck(z) = r.body else {
        panic!()
    };
    assert_eq!(z.count, 100);
    assert!(r.violations.is_empty());
    assert!(z.explicit_formula[0].gap <= z.explicit_formula[0].bound);

    let dir = std::env::temp_dir().join(format!("friable-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "14.134725142\n21.022039639\nnot-a-number\n30.424876126").unwrap();
    let out = friable(&["zeros-check", "--zeros-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    let out = friable(&["zeros-check", "--y", "1000", "--T", "1000"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn usage_errors() {
    assert_eq!(friable(&["count", "--x", "10"]).status.code(), Some(2));
    assert_eq!(
        friable(&["count", "--x", "abc", "--y", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        friable(&["count", "--x", "10", "--y", "2", "--tolerance", "nope=1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        friable(&["phase", "--x", "1e6", "--y", "14"]).status.code(),
        Some(2)
    );
    assert_eq!(friable(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn violations_set_exit_status() {
    let out = friable(&[
        "compare",
        "--x",
        "1e6",
        "--y",
        "1e3",
        "--tolerance",
        "sandwich_delta=-0.9",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.violations.iter().any(|v| v.contains("sandwich")));
}

#[test]
fn text_format_lines() {
    let out = friable(&["xi", "--u", "3", "--u", "10", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("# friable xi schema_version=1"));
}
