//! Binary-level tests: exit codes, JSON and CSV round trips, and SVG
//! determinism.

use bianchi_cli::report::{surd_from_json, BoundsJson, Fig6Row, SwanJson, FIG6_HEADER};
use bianchi_core::exact::Surd;
use std::process::Command;

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_bianchi"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn exit_codes() {
    let (_, code) = run(&["bounds", "--disc", "-23"]);
    assert_eq!(code, 0);
    let (msg, code) = run(&["bounds", "--disc", "-21"]);
    assert_eq!(code, 1);
    assert!(msg.contains("-20") && msg.contains("-23"), "nearest hints");
    let (_, code) = run(&["nonsense"]);
    assert_eq!(code, 1);
    // budget exhaustion: tiny cap forces an uncertified partial result
    let (_, code) = run(&["swan", "--disc", "-132", "--cap-sq", "140"]);
    assert_eq!(code, 2);
}

#[test]
fn bounds_json_round_trip() {
    let (s, code) = run(&["bounds", "--disc", "-23", "--format", "json"]);
    assert_eq!(code, 0);
    let parsed: BoundsJson = serde_json::from_str(&s).unwrap();
    assert_eq!(parsed.disc, -23);
    assert_eq!(parsed.delta_norm_sq, 23);
    // exact reconstruction from the term list
    let lower = surd_from_json(&parsed.lower);
    let upper = surd_from_json(&parsed.upper);
    assert_eq!(lower.decimal(12), parsed.lower.decimal);
    assert_eq!(lower.sub(&upper).sign(), -1);
    // reserialization is stable
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(s, again);
}

#[test]
fn swan_json_fields_and_exactness() {
    let (s, code) = run(&["swan", "--disc", "-23", "--format", "json", "--generators"]);
    assert_eq!(code, 0);
    let parsed: SwanJson = serde_json::from_str(&s).unwrap();
    assert_eq!(parsed.disc, -23);
    assert_eq!(parsed.swan_sq, 16);
    assert!(parsed.certified);
    assert!(parsed.generators.as_ref().unwrap().len() >= 3);
    // exact face data: center carried as an integer pair over a denominator
    for f in &parsed.faces {
        assert!(f.norm_mu >= 1);
        assert!(f.center.den >= 1);
    }
    let _ = Surd::from_int(0);
}

#[test]
fn figure6_csv_round_trip_and_header() {
    let (s, code) = run(&[
        "figure6",
        "--max-abs-disc",
        "30",
        "--swan-upto",
        "24",
    ]);
    assert_eq!(code, 0);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), FIG6_HEADER);
    let rows: Vec<Fig6Row> = lines.map(|l| Fig6Row::parse_csv_line(l).unwrap()).collect();
    let discs: Vec<i64> = rows.iter().map(|r| r.disc).collect();
    assert_eq!(
        discs,
        vec![-3, -4, -7, -8, -11, -15, -19, -20, -23, -24],
        "fundamental discriminants below 30"
    );
    // swan column filled for |d| <= 24 here
    for r in &rows {
        assert!(r.swan_sq.is_some(), "d = {}", r.disc);
        assert!(r.log_swan.is_some());
        // re-render equals the parsed row
        assert_eq!(
            Fig6Row::parse_csv_line(&r.to_csv_line()).unwrap(),
            r.clone()
        );
    }
    // J = 1 on every euclidean row
    for r in rows.iter().filter(|r| r.disc >= -11) {
        assert_eq!(r.j, 1);
    }
    // rendered bracket: lower < sqrt(swan) < upper where present
    for r in &rows {
        let lo: f64 = r.lower_val.parse().unwrap();
        let up: f64 = r.upper_val.parse().unwrap();
        assert!(lo < up);
        if let Some(s_sq) = r.swan_sq {
            let s = (s_sq as f64).sqrt();
            assert!(lo < s && s < up, "d = {}", r.disc);
        }
    }
    // LF endings, no CR
    assert!(!s.contains('\r'));
}

#[test]
fn figure6_rejects_tiny_range() {
    let (_, code) = run(&["figure6", "--max-abs-disc", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn figure6_partial_when_budget_exhausted() {
    // a zero-second budget leaves deep floors uncertified; requested Swan
    // columns stay empty and the run reports partial
    let (s, code) = run(&[
        "figure6",
        "--max-abs-disc",
        "135",
        "--swan-upto",
        "132",
        "--budget-secs",
        "0",
    ]);
    assert_eq!(code, 2);
    let empty_swan = s
        .lines()
        .skip(1)
        .filter_map(Fig6Row::parse_csv_line)
        .any(|r| r.swan_sq.is_none());
    assert!(empty_swan, "budget-starved rows leave the column empty");
}

#[test]
fn figure6_j_one_below_twelve() {
    let (s, code) = run(&["figure6", "--max-abs-disc", "12"]);
    assert_eq!(code, 0);
    for line in s.lines().skip(1) {
        let row = Fig6Row::parse_csv_line(line).unwrap();
        assert_eq!(row.j, 1, "d = {}", row.disc);
    }
}

#[test]
fn svg_deterministic_bytes() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("bianchi_test_1.svg");
    let p2 = dir.join("bianchi_test_2.svg");
    let (_, c1) = run(&["swan", "--disc", "-23", "--svg", p1.to_str().unwrap()]);
    let (_, c2) = run(&["swan", "--disc", "-23", "--svg", p2.to_str().unwrap()]);
    assert_eq!((c1, c2), (0, 0));
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b, "SVG output must be byte-identical");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("circle"));
    assert!(text.contains("stroke-dasharray"));
    let _ = std::fs::remove_file(p1);
    let _ = std::fs::remove_file(p2);
}

#[test]
fn jacobsthal_cli_surface() {
    // little on the unit ideal: value 1
    let (s, code) = run(&[
        "jacobsthal", "--disc", "-20", "little", "--ideal", "1,0", "--format", "json",
    ]);
    assert_eq!(code, 0, "{s}");
    assert!(s.contains("\"value\": 1"));
    // malformed ideal: validation error
    let (_, code) = run(&["jacobsthal", "--disc", "-20", "little", "--ideal", "3,1"]);
    assert_eq!(code, 1, "b^2 = d mod 4a must be validated");
    // big at x = 20 for d = -20: at least 3
    let (s, code) = run(&["jacobsthal", "--disc", "-20", "big", "--x", "20", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert!(v["value"].as_u64().unwrap() >= 3);
    // fixedpoint on a PID
    let (s, code) = run(&["jacobsthal", "--disc", "-163", "fixedpoint"]);
    assert_eq!(code, 0);
    assert!(s.contains("value 1"));
}

#[test]
fn singular_cli_surface() {
    let (s, code) = run(&["singular", "--disc", "-11"]);
    assert_eq!(code, 0);
    assert!(s.contains("no singular points"));
    let (s, code) = run(&["singular", "--disc", "-388", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert!(v.as_array().unwrap().len() >= 3);
}
