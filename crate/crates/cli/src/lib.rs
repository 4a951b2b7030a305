//! Command-line front end for the `detcone` library.
//!
//! Exit codes: 0 when the command reaches its goal (proven, a counterexample
//! found, data produced), 1 for the negative outcome (not provable, refuted,
//! nothing found), 2 for usage and input errors.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use detcone::cone::{
    classify, extreme_rays_cached, prove_determinant_inequality, ray_representations_cached,
    Classification, Generator, ProofOutcome, SHANNON_COMPLETE_UP_TO,
};
use detcone::gausslin::{logdet_rank_function, BlockGaussian, SpdMatrix};
use detcone::quantizer::{renyi_experiment, renyi_uniform_exact, vector_renyi_check, Distribution};
use detcone::rankfn::{hadamard, han, szasz};
use detcone::refuter::{ingleton_violation_search, refute, IngletonOutcome, SearchConfig, SearchOutcome};
use detcone::{dsl, LinearFunctional};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "detcone", version, about = "Prove or refute principal-minor determinant inequalities")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Ground-set size.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Inequality text, e.g. "|1|*|2| >= |1,2|" or "h{1}+h{2}-h{1,2} >= 0".
    #[arg(long, global = true)]
    pub ineq: Option<String>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed; required by every randomized command.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of sampled candidates.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Worker threads (0 = all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Matrix file: {"n": .., "rows": [[..], ..]}.
    #[arg(long, global = true)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Shannon-type certificate for --ineq.
    Prove,
    /// Random search (then local descent) for a matrix violating --ineq.
    Refute,
    /// Proven or refuted with a witness; complete for n <= 3.
    Classify,
    /// Extreme rays of the Shannon cone for n <= 3, with representations.
    Rays,
    /// log2 principal minors of the --matrix file.
    Logdet,
    /// Quantized plug-in entropy against differential entropy.
    Renyi(RenyiArgs),
    /// Search for a Gaussian violating an Ingleton inequality on 4 indices.
    IngletonSearch,
    /// Prove the Hadamard, Szasz and Han families.
    Corpus,
}

#[derive(Debug, Args)]
pub struct RenyiArgs {
    /// gaussian (identity covariance) or uniform (unit cube).
    #[arg(long, default_value = "gaussian")]
    pub dist: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 256)]
    pub m: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    /// Uniform cube only: evaluate the exact quantized pmf, no sampling.
    #[arg(long)]
    pub exact: bool,
    /// Vector blocks, e.g. "2,1": reports every subset of blocks (Σ = I).
    #[arg(long)]
    pub blocks: Option<String>,
}

/// Output of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub json: Value,
    pub text: String,
}

impl CommandResult {
    fn new(exit_code: i32, json: Value, text: String) -> Self {
        CommandResult { exit_code, json, text }
    }

    fn usage(message: impl Into<String>) -> Self {
        let message = message.into();
        CommandResult::new(EXIT_USAGE, json!({"error": message}), format!("error: {message}"))
    }

    /// Text or pretty JSON.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("JSON values serialize")
        } else {
            self.text.clone()
        }
    }
}

type Outcome = Result<CommandResult, CommandResult>;

fn usage_err(e: impl std::fmt::Display) -> CommandResult {
    CommandResult::usage(e.to_string())
}

fn need_n(g: &Global) -> Result<usize, CommandResult> {
    g.n.ok_or_else(|| CommandResult::usage("--n is required"))
}

fn need_seed(g: &Global) -> Result<u64, CommandResult> {
    g.seed
        .ok_or_else(|| CommandResult::usage("--seed is required for randomized commands"))
}

fn functional(g: &Global) -> Result<LinearFunctional, CommandResult> {
    let n = need_n(g)?;
    let src = g
        .ineq
        .as_deref()
        .ok_or_else(|| CommandResult::usage("--ineq is required"))?;
    dsl::parse_functional(src, n).map_err(usage_err)
}

fn search_config(g: &Global, seed: u64, default_budget: usize) -> SearchConfig {
    SearchConfig::new(seed)
        .with_budget(g.budget.unwrap_or(default_budget))
        .with_workers(g.workers.unwrap_or(0))
}

fn matrix_text(k: &SpdMatrix) -> String {
    k.rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:.6}")).collect();
            format!("  [{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_prove(g: &Global) -> Outcome {
    let f = functional(g)?;
    let outcome = prove_determinant_inequality(&f);
    let json = outcome.to_json(f.n());
    Ok(match &outcome {
        ProofOutcome::Proven(c) => {
            let mut text = String::from("proven\n");
            for (id, w) in c.support() {
                text.push_str(&format!("  {w} * {id}\n"));
            }
            CommandResult::new(EXIT_OK, json, text.trim_end().to_string())
        }
        ProofOutcome::NotProvable(_) => {
            let mut text = String::from("not provable by Shannon-type inequalities");
            if f.n() > SHANNON_COMPLETE_UP_TO {
                text.push_str(&format!(" (the test is incomplete for n > {SHANNON_COMPLETE_UP_TO})"));
            }
            CommandResult::new(EXIT_NEGATIVE, json, text)
        }
    })
}

fn cmd_refute(g: &Global) -> Outcome {
    let f = functional(g)?;
    let seed = need_seed(g)?;
    let cfg = search_config(g, seed, 1000);
    Ok(match refute(&f, &cfg).map_err(usage_err)? {
        SearchOutcome::Found(c) => {
            let text = format!(
                "refuted (seed {seed}, candidate {})\nvalue: {} bits\nmatrix:\n{}",
                c.candidate_index,
                c.value_bits,
                matrix_text(&c.matrix)
            );
            let mut json = serde_json::to_value(&c).expect("serializable");
            json["verdict"] = json!("refuted");
            CommandResult::new(EXIT_OK, json, text)
        }
        SearchOutcome::NotFound { candidates } => CommandResult::new(
            EXIT_NEGATIVE,
            json!({"verdict": "not_found", "seed": seed, "candidates": candidates}),
            format!("no violation among {candidates} candidates (seed {seed})"),
        ),
    })
}

fn cmd_classify(g: &Global) -> Outcome {
    let f = functional(g)?;
    let c = classify(&f).map_err(usage_err)?;
    let json = c.to_json();
    Ok(match &c {
        Classification::Proven(cert) => {
            let mut text = String::from("proven\n");
            for (id, w) in cert.support() {
                text.push_str(&format!("  {w} * {id}\n"));
            }
            CommandResult::new(EXIT_OK, json, text.trim_end().to_string())
        }
        Classification::Refuted(r) => {
            let generator = match &r.generator {
                Generator::Phi { index } => format!("scaling direction phi_{index}"),
                Generator::Ray { index, .. } => format!("extreme ray #{index}"),
            };
            let text = format!(
                "refuted\ngenerator: {generator}, value {}\nwitness value: {} bits\nwitness matrix:\n{}",
                detcone::rational::format_rational(&r.generator_value),
                r.witness.value_bits,
                matrix_text(&r.witness.matrix)
            );
            CommandResult::new(EXIT_NEGATIVE, json, text)
        }
    })
}

fn cmd_rays(g: &Global) -> Outcome {
    let n = need_n(g)?;
    let set = extreme_rays_cached(n).map_err(usage_err)?;
    let reps = ray_representations_cached(n).map_err(usage_err)?;
    let entries: Vec<Value> = set
        .rays
        .iter()
        .zip(reps)
        .map(|(r, v)| json!({"ray": r, "config": v}))
        .collect();
    let mut text = format!("{} extreme rays for n = {n}\n", set.rays.len());
    for r in &set.rays {
        let vals: Vec<String> = r.nonempty_values().iter().map(detcone::rational::format_rational).collect();
        text.push_str(&format!("  ({})\n", vals.join(", ")));
    }
    Ok(CommandResult::new(
        EXIT_OK,
        json!({"n": n, "count": set.rays.len(), "rays": entries}),
        text.trim_end().to_string(),
    ))
}

fn cmd_logdet(g: &Global) -> Outcome {
    let path = g
        .matrix
        .as_ref()
        .ok_or_else(|| CommandResult::usage("--matrix FILE is required"))?;
    let src = std::fs::read_to_string(path).map_err(|e| usage_err(format!("{}: {e}", path.display())))?;
    let k: SpdMatrix = serde_json::from_str(&src).map_err(usage_err)?;
    let rf = logdet_rank_function(&k).map_err(usage_err)?;
    let text = rf
        .iter()
        .skip(1)
        .map(|(s, v)| format!("  log2|K_{{{s}}}| = {v}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(CommandResult::new(
        EXIT_OK,
        serde_json::to_value(&rf).expect("serializable"),
        text,
    ))
}

fn cmd_renyi(g: &Global, a: &RenyiArgs) -> Outcome {
    if let Some(blocks) = &a.blocks {
        let seed = need_seed(g)?;
        let sizes: Vec<usize> = blocks
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| usage_err(format!("--blocks: {e}")))?;
        if sizes.contains(&0) {
            return Err(CommandResult::usage("--blocks sizes must be positive"));
        }
        let partition: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i + 1, k))
            .collect();
        let b = BlockGaussian::new(SpdMatrix::identity(partition.len()), partition, sizes.len())
            .map_err(usage_err)?;
        let rows = vector_renyi_check(&b, a.m, a.samples, seed).map_err(usage_err)?;
        let mut text = format!("m = {}, samples = {}, seed = {seed}\n", a.m, a.samples);
        for r in &rows {
            text.push_str(&format!(
                "  {{{}}}: estimate {:.4}, analytic {:.4}, deviation {:+.4}\n",
                r.subset, r.estimate, r.analytic, r.deviation
            ));
        }
        return Ok(CommandResult::new(
            EXIT_OK,
            json!({"m": a.m, "samples": a.samples, "seed": seed, "blocks": sizes, "subsets": rows}),
            text.trim_end().to_string(),
        ));
    }
    let dist = Distribution::from_tag(&a.dist, a.dim).map_err(usage_err)?;
    let (estimate, seed) = if a.exact {
        if !matches!(dist, Distribution::UniformCube { .. }) {
            return Err(CommandResult::usage("--exact applies to --dist uniform only"));
        }
        (renyi_uniform_exact(a.dim, a.m).map_err(usage_err)?, None)
    } else {
        let seed = need_seed(g)?;
        (renyi_experiment(&dist, a.m, a.samples, seed).map_err(usage_err)?, Some(seed))
    };
    let mut json = serde_json::to_value(&estimate).expect("serializable");
    if let Some(seed) = seed {
        json["seed"] = json!(seed);
    }
    let text = format!(
        "H([X]_m) - n log2 m = {:.6}\nanalytic h = {:.6}\ndeviation = {:+.6}{}",
        estimate.h_minus_nlogm,
        estimate.analytic_h,
        estimate.deviation,
        seed.map_or(String::new(), |s| format!("\nseed: {s}"))
    );
    Ok(CommandResult::new(EXIT_OK, json, text))
}

fn cmd_ingleton(g: &Global) -> Outcome {
    let seed = need_seed(g)?;
    let cfg = search_config(g, seed, 100_000);
    let outcome = ingleton_violation_search(&cfg).map_err(usage_err)?;
    Ok(match outcome {
        IngletonOutcome::Found { counterexample, form } => {
            let text = format!(
                "Ingleton {form} violated: {} bits (seed {seed}, candidate {})\nmatrix:\n{}",
                counterexample.value_bits,
                counterexample.candidate_index,
                matrix_text(&counterexample.matrix)
            );
            let mut json = serde_json::to_value(&counterexample).expect("serializable");
            json["verdict"] = json!("found");
            json["form"] = json!(form.to_string());
            CommandResult::new(EXIT_OK, json, text)
        }
        IngletonOutcome::Best(report) => {
            let text = format!(
                "no violation; best value {} bits on {} (seed {seed}, candidate {}, {})",
                report.value_bits, report.form, report.candidate_index, report.provenance
            );
            let mut json = serde_json::to_value(&report).expect("serializable");
            json["verdict"] = json!("best_value");
            CommandResult::new(EXIT_NEGATIVE, json, text)
        }
    })
}

fn corpus_items() -> Vec<(String, LinearFunctional)> {
    let mut items = Vec::new();
    for n in 2..=6 {
        items.push((format!("hadamard({n})"), hadamard(n).expect("valid n")));
    }
    for n in 2..=5 {
        for l in 1..n {
            items.push((format!("szasz({n},{l})"), szasz(n, l).expect("valid l")));
        }
    }
    for n in 2..=5 {
        for l in 1..n {
            items.push((format!("han({n},{l})"), han(n, l).expect("valid l")));
        }
    }
    items
}

fn cmd_corpus() -> Outcome {
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for (name, f) in corpus_items() {
        let t = Instant::now();
        let outcome = prove_determinant_inequality(&f);
        let verified = outcome.certificate().is_some_and(|c| c.verify(&f));
        let secs = t.elapsed().as_secs_f64();
        all &= verified;
        text.push_str(&format!(
            "  {name:<12} {} {secs:.3}s\n",
            if verified { "proven" } else { "FAILED" }
        ));
        rows.push(json!({"name": name, "proven": verified, "seconds": secs}));
    }
    Ok(CommandResult::new(
        if all { EXIT_OK } else { EXIT_NEGATIVE },
        json!({"all_proven": all, "items": rows}),
        text.trim_end().to_string(),
    ))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (CommandResult, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (CommandResult::new(code, json!({"error": e.to_string()}), e.to_string()), false);
        }
    };
    let g = &cli.global;
    let result = match &cli.command {
        Command::Prove => cmd_prove(g),
        Command::Refute => cmd_refute(g),
        Command::Classify => cmd_classify(g),
        Command::Rays => cmd_rays(g),
        Command::Logdet => cmd_logdet(g),
        Command::Renyi(a) => cmd_renyi(g, a),
        Command::IngletonSearch => cmd_ingleton(g),
        Command::Corpus => cmd_corpus(),
    };
    (result.unwrap_or_else(|e| e), g.json)
}
