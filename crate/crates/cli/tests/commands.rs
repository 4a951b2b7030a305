use detcone_cli::{run, CommandResult, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &[&str]) -> CommandResult {
    let mut full = vec!["detcone"];
    full.extend_from_slice(args);
    run(full).0
}

fn reparsed(r: &CommandResult) -> Value {
    serde_json::from_str(&r.render(true)).expect("JSON output re-parses")
}

const SZASZ: &str = "h{1,2} + h{1,3} + h{2,3} >= h{1,2,3} + h{1} + h{2} + h{3}";

#[test]
fn prove_hadamard_spelled_as_determinants() {
    let r = cli(&["prove", "--n", "3", "--ineq", "|1|*|2|*|3| >= |1,2,3|"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(reparsed(&r)["verdict"], "proven");
}

#[test]
fn prove_rejects_reversed_szasz() {
    let r = cli(&["prove", "--n", "3", "--ineq", SZASZ]);
    assert_eq!(r.exit_code, EXIT_NEGATIVE);
    let j = reparsed(&r);
    assert_eq!(j["verdict"], "not_provable");
    assert_eq!(j["shannon_complete"], true);
}

#[test]
fn classify_reversed_hadamard() {
    let r = cli(&["classify", "--n", "2", "--ineq", "|1,2| >= |1|*|2|", "--json"]);
    assert_eq!(r.exit_code, EXIT_NEGATIVE);
    let j = reparsed(&r);
    assert_eq!(j["verdict"], "refuted");
    assert_eq!(j["generator"]["kind"], "ray");
    assert_eq!(j["generator_value"], "-1");
    assert_eq!(j["witness"]["matrix"]["n"], 2);
    assert!(j["witness"]["value_bits"].as_f64().unwrap() < 0.0);
}

#[test]
fn refute_echoes_seed_and_is_deterministic() {
    let args = ["refute", "--n", "2", "--ineq", "|1,2| >= |1|*|2|", "--seed", "5", "--budget", "50"];
    let a = cli(&args);
    assert_eq!(a.exit_code, EXIT_OK);
    let j = reparsed(&a);
    assert_eq!(j["verdict"], "refuted");
    assert_eq!(j["seed"], 5);
    assert_eq!(j, reparsed(&cli(&args)));
}

#[test]
fn refute_needs_a_seed() {
    let r = cli(&["refute", "--n", "2", "--ineq", "|1,2| >= |1|*|2|"]);
    assert_eq!(r.exit_code, EXIT_USAGE);
}

#[test]
fn parse_errors_are_usage_errors() {
    assert_eq!(cli(&["prove", "--n", "2", "--ineq", "h{1} > h{2}"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["prove", "--n", "2", "--ineq", "h{3} >= 0"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["prove", "--ineq", "h{1} >= 0"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).exit_code, EXIT_USAGE);
}

#[test]
fn rays_for_two_variables() {
    let r = cli(&["rays", "--n", "2"]);
    assert_eq!(r.exit_code, EXIT_OK);
    let j = reparsed(&r);
    assert_eq!(j["count"], 3);
    assert_eq!(j["rays"].as_array().unwrap().len(), 3);
    assert_eq!(cli(&["rays", "--n", "4"]).exit_code, EXIT_USAGE);
}

#[test]
fn logdet_reads_matrix_file() {
    let path = std::env::temp_dir().join(format!("detcone-logdet-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"n": 2, "rows": [[2, 1], [1, 2]]}"#).unwrap();
    let r = cli(&["logdet", "--matrix", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(r.exit_code, EXIT_OK);
    let j = reparsed(&r);
    assert_eq!(j["n"], 2);
    let joint = j["values"]["1,2"].as_f64().unwrap();
    assert!((joint - 3f64.log2()).abs() < 1e-12);
    assert!((j["values"]["1"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn logdet_rejects_missing_file() {
    assert_eq!(cli(&["logdet", "--matrix", "/nonexistent/k.json"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["logdet"]).exit_code, EXIT_USAGE);
}

#[test]
fn renyi_uniform_exact_is_zero() {
    let r = cli(&["renyi", "--dist", "uniform", "--dim", "2", "--m", "64", "--exact"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(reparsed(&r)["deviation"].as_f64().unwrap(), 0.0);
}

#[test]
fn ingleton_search_small_budget_is_reproducible() {
    let args = ["ingleton-search", "--seed", "3", "--budget", "200", "--workers", "2"];
    let a = cli(&args);
    assert!(a.exit_code == EXIT_OK || a.exit_code == EXIT_NEGATIVE);
    let j = reparsed(&a);
    assert_eq!(j["seed"], 3);
    assert_eq!(j, reparsed(&cli(&args)));
}

#[test]
fn corpus_all_proven() {
    let r = cli(&["corpus"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(reparsed(&r)["all_proven"], true);
}
