//! End-to-end command behavior: payload encodings round-trip through the
//! engine parsers, the JSON schema is stable, and worker count does not
//! change oracle results.

use std::fs;
use std::path::PathBuf;

use motivic_cli::output::Status;
use motivic_cli::run;
use motivic_core::catalog::gl_class;
use motivic_core::commuting::gl2_closed_form;
use motivic_core::motclass::MotClass;
use motivic_core::text::{parse_motclass, parse_poly, parse_series};

fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("motivic")
        .chain(args.iter().copied())
        .map(String::from)
        .collect()
}

fn payload_value(args: &[&str]) -> String {
    let result = run(&argv(args));
    assert_eq!(result.status, Status::Ok, "{:?}", result.diagnostics);
    result.payload["value"]
        .as_str()
        .expect("scalar payload")
        .to_string()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("motivic-test-{}-{name}", std::process::id()));
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn class_payload_round_trips() {
    let text = payload_value(&["class", "gl", "--rank", "2"]);
    assert_eq!(text, "q^4 - q^3 - q^2 + q");
    assert_eq!(MotClass::from_poly(parse_poly(&text).unwrap()), gl_class(2));
    // the same value through the JSON envelope
    let result = run(&argv(&["class", "gl", "--rank", "2", "--format", "json"]));
    let json = result.to_json();
    for key in ["command", "status", "payload", "diagnostics"] {
        assert!(json.get(key).is_some(), "missing key {key}");
    }
    let from_json = json["payload"]["value"].as_str().unwrap();
    assert_eq!(parse_poly(from_json).unwrap(), parse_poly(&text).unwrap());
}

#[test]
fn commuting_class_matches_the_closed_form() {
    let text = payload_value(&["commuting", "gl2", "--n", "2"]);
    assert_eq!(parse_motclass(&text).unwrap(), gl2_closed_form(2));
    // [C_2(GL2)] = [GL2] (q^2 - 1) = q(q-1)(q^2-1)^2
    let direct =
        &gl_class(2).as_poly().unwrap() * &motivic_core::poly::QPolynomial::q_pow_minus_one(2);
    assert_eq!(parse_poly(&text).unwrap(), direct);
}

#[test]
fn counts_and_reports() {
    assert_eq!(
        payload_value(&["frobenius", "--group", "S3", "--genus", "2"]),
        "486"
    );
    assert_eq!(
        payload_value(&["kostka", "--mu", "2,1", "--lambda", "1,1,1"]),
        "2"
    );
    assert_eq!(
        payload_value(&[
            "frobenius",
            "--degrees",
            "1,1,2",
            "--order",
            "6",
            "--genus",
            "2"
        ]),
        "486"
    );
    // series payloads parse back
    let result = run(&argv(&["limit", "--group", "U2", "--precision", "8"]));
    assert_eq!(result.status, Status::Ok);
    let limit = result.payload["limit"].as_str().unwrap();
    assert_eq!(
        parse_series(limit).unwrap(),
        MotClass::inv_q_pow(1).expand(8)
    );
    assert_eq!(result.payload["detection"], "exact-window");
}

#[test]
fn gmz2_limit_is_flagged() {
    let result = run(&argv(&["limit", "--group", "GmZ2", "--precision", "6"]));
    assert_eq!(result.status, Status::Ok);
    assert_eq!(result.payload["converged"], true);
    assert_eq!(result.payload["detection"], "geometric-tail");
    assert!(
        !result.diagnostics.is_empty(),
        "mismatch should be surfaced"
    );
}

#[test]
fn decompose_from_file() {
    let path = temp_file(
        "quotients.json",
        r#"{"2": "q^2 + q + 1", "1,1": "q^2 + 2q + 1"}"#,
    );
    let result = run(&argv(&[
        "decompose",
        "--n",
        "2",
        "--quotients",
        path.to_str().unwrap(),
    ]));
    fs::remove_file(&path).ok();
    assert_eq!(result.status, Status::Ok, "{:?}", result.diagnostics);
    let coeffs = &result.payload["coefficients"];
    assert_eq!(
        parse_motclass(coeffs["2"].as_str().unwrap()).unwrap(),
        parse_motclass("q^2 + q + 1").unwrap()
    );
    assert_eq!(
        parse_motclass(coeffs["1,1"].as_str().unwrap()).unwrap(),
        parse_motclass("q").unwrap()
    );
}

#[test]
fn repstab_dichotomy_via_cli() {
    let ok = run(&argv(&[
        "repstab",
        "--class",
        "q^2 - q",
        "--lambda",
        "1",
        "--precision",
        "8",
    ]));
    assert_eq!(ok.status, Status::Ok);
    assert_eq!(ok.payload["converged"], true);
    let bad = run(&argv(&[
        "repstab",
        "--class",
        "2q",
        "--lambda",
        "1",
        "--precision",
        "6",
    ]));
    assert_eq!(bad.status, Status::Ok);
    assert_eq!(bad.payload["converged"], false);
}

#[test]
fn oracle_counts_with_workers() {
    for jobs in ["1", "3"] {
        let result = run(&argv(&[
            "oracle", "surface", "--group", "S3", "--genus", "2", "--jobs", jobs,
        ]));
        assert_eq!(result.status, Status::Ok);
        assert_eq!(result.payload["count"], "486");
        assert_eq!(result.payload["prediction"], "486");
    }
    let result = run(&argv(&[
        "oracle",
        "commuting",
        "--group",
        "gl2",
        "--p",
        "3",
        "--n",
        "2",
    ]));
    assert_eq!(result.payload["count"], "384");
    assert_eq!(result.payload["prediction"], "384");
    let result = run(&argv(&["oracle", "census", "--group", "gl2", "--p", "3"]));
    assert_eq!(result.payload["count"], "8");
    assert_eq!(result.payload["prediction"], "8");
    let result = run(&argv(&["oracle", "sym", "--counts", "2,8", "--n", "2"]));
    assert_eq!(result.payload["count"], "6");
}

#[test]
fn config_file_extends_the_engine() {
    let path = temp_file(
        "config.txt",
        "\
[system gl2-copy]
states = D, J, C, X
w = q - 1 | q^3 - q^2 - q + 1 | q^2 | q^2 + q
v = 1 | 1 | q^2 - q | -q + 1
row = q - 1 | 0 | 0 | 0
row = q - 1 | q^2 - q | 0 | 0
row = q^3 - 2q^2 + q | 0 | q^2 - 1 | 0
row = -q^2 + 2q - 1 | 0 | -q + 1 | q^2 - 2q + 1

[group K4]
order = 4
degrees = 1, 1, 1, 1
commutator_order = 1
generators = (1 2), (3 4)
",
    );
    let config = path.to_str().unwrap();
    let via_config = run(&argv(&[
        "commuting",
        "gl2-copy",
        "--n",
        "3",
        "--config",
        config,
    ]));
    assert_eq!(
        via_config.status,
        Status::Ok,
        "{:?}",
        via_config.diagnostics
    );
    assert_eq!(
        parse_motclass(via_config.payload["value"].as_str().unwrap()).unwrap(),
        gl2_closed_form(3)
    );
    let frob = run(&argv(&[
        "frobenius",
        "--group",
        "K4",
        "--genus",
        "1",
        "--config",
        config,
    ]));
    assert_eq!(frob.payload["value"], "16");
    let surface = run(&argv(&[
        "oracle", "surface", "--group", "K4", "--genus", "1", "--config", config,
    ]));
    fs::remove_file(&path).ok();
    assert_eq!(surface.payload["count"], "16");
}

#[test]
fn config_catalog_entries_are_visible_to_class_lookup() {
    let path = temp_file(
        "classes.txt",
        "\
[class MyTorus]
class = q^2 - 2q + 1
commutator_quotient = q^2 - 2q + 1
derived_subgroup = 1
",
    );
    let result = run(&argv(&[
        "class",
        "MyTorus",
        "--config",
        path.to_str().unwrap(),
    ]));
    fs::remove_file(&path).ok();
    assert_eq!(result.status, Status::Ok, "{:?}", result.diagnostics);
    assert_eq!(result.payload["value"], "q^2 - 2q + 1");
}

#[test]
fn errors_are_reported_with_their_names() {
    let result = run(&argv(&["class", "nosuch"]));
    assert_eq!(result.status, Status::Error);
    assert_eq!(result.exit_code(), 1);
    assert!(result.diagnostics[0].contains("unknown group"));
    let result = run(&argv(&["sym-limit", "--poly", "2q"]));
    assert_eq!(result.status, Status::Error);
    assert!(result.diagnostics[0].contains("stabilize"));
    let result = run(&argv(&[
        "oracle",
        "commuting",
        "--group",
        "gl2",
        "--p",
        "4",
        "--n",
        "2",
    ]));
    assert!(result.diagnostics[0].contains("not prime"));
}

#[test]
fn precision_env_variable_is_honored() {
    // guarded by an explicit flag elsewhere; here the env default drives it
    std::env::set_var("MOTIVIC_PRECISION", "4");
    let result = run(&argv(&["limit", "--group", "U2"]));
    std::env::remove_var("MOTIVIC_PRECISION");
    assert_eq!(result.payload["precision"], 4);
}
