use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gmak::analysis::{analyze, run_check, AnalysisOptions, AnalysisReport, NetworkSummary};
use gmak::laplacian::{edge_label, tree_constants, RateAssignment};
use gmak::linalg::{parse_rational, to_f64, Rational};
use gmak::network::{analyze_structure, parse_network_with, GeneralizedNetwork};
use gmak::numeric::equilibrium_sample;
use gmak::report::{ConditionReport, Status};

const EXIT_ERROR: u8 = 3;

/// Exact sign-vector and P-matrix certificates for generalized mass-action networks.
#[derive(Parser, Debug)]
#[command(name = "gmak", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every checker and print the full report.
    Analyze {
        file: PathBuf,
        /// Emit one JSON document instead of text.
        #[arg(long)]
        json: bool,
        /// Add a numeric sampling summary with this many trials.
        #[arg(long, alias = "sample", value_name = "TRIALS")]
        samples: Option<usize>,
        /// Omit wall-clock timings, making output reproducible.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a single checker. Exit code 0 holds, 1 fails, 2 inconclusive or not applicable.
    Check {
        condition: String,
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the complex-balanced equilibrium for given rate constants.
    Cbe {
        file: PathBuf,
        /// Rate constants as LABEL=VALUE, comma separated or repeated.
        #[arg(long, required = true, value_delimiter = ',', value_name = "LABEL=VALUE")]
        rates: Vec<String>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Override a declared parameter, NAME=VALUE with a rational value.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Largest |Ω| for image sign-set enumeration.
    #[arg(long, default_value_t = 10)]
    max_omega: usize,
    /// Largest ambient dimension for subspace sign-set enumeration.
    #[arg(long, default_value_t = 10)]
    max_subspace_dim: usize,
    /// Largest orthant dimension swept by the P-matrix conditions.
    #[arg(long, default_value_t = 8)]
    max_orthant_dim: usize,
    /// Largest number of enumerated cycles.
    #[arg(long, default_value_t = 10_000)]
    max_cycles: usize,
    /// Seed for parameter sampling and rate sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stability margin: stable iff max real part < -TOL * (1 + spectral radius).
    #[arg(long, default_value_t = 1e-8)]
    tol_stable: f64,
}

impl Common {
    fn options(&self) -> AnalysisOptions {
        let mut o = AnalysisOptions::default();
        o.caps.max_omega = self.max_omega;
        o.caps.max_subspace_dim = self.max_subspace_dim;
        o.caps.max_orthant_dim = self.max_orthant_dim;
        o.stability.max_cycles = self.max_cycles;
        o.stability.sampling.seed = self.seed;
        o.numeric.tol_stable = self.tol_stable;
        o.seed = self.seed;
        o
    }

    fn load(&self, file: &PathBuf) -> Result<GeneralizedNetwork, String> {
        let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
        let mut overrides = BTreeMap::new();
        for p in &self.params {
            let (name, value) = split_assignment(p)?;
            let v = parse_rational(value).ok_or_else(|| format!("--param {p}: value is not a rational number"))?;
            overrides.insert(name.to_string(), v);
        }
        parse_network_with(&text, &overrides).map_err(|e| format!("{}: {e}", file.display()))
    }
}

fn split_assignment(s: &str) -> Result<(&str, &str), String> {
    s.split_once('=').map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| format!("{s:?} is not NAME=VALUE"))
}

fn parse_value(s: &str) -> Option<Rational> {
    parse_rational(s).or_else(|| s.parse::<f64>().ok().and_then(Rational::from_float))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_summary(s: &NetworkSummary) {
    println!(
        "network: m={} l={} n={} dim S={} dim S~={} delta={} delta~={} weakly reversible={}",
        s.m, s.l, s.n, s.dim_s, s.dim_s_tilde, s.delta, s.delta_tilde, s.weakly_reversible
    );
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Inconclusive => "inconclusive",
        Status::NotApplicable => "not applicable",
    }
}

fn print_check(c: &ConditionReport, verbose: bool) {
    let ms = c.ms.map(|t| format!(" ({t:.1} ms)")).unwrap_or_default();
    println!("{:<18} {}{}", c.name, status_word(c.status), ms);
    if let Some(reason) = c.evidence.get("reason").and_then(|r| r.as_str()) {
        println!("{:<18}   reason: {reason}", "");
    }
    if let Some(cx) = &c.counterexample {
        println!("{:<18}   counterexample: {cx}", "");
    }
    if verbose {
        println!("  criterion: {}", c.anchor);
        println!("  evidence: {}", serde_json::to_string_pretty(&c.evidence).expect("serializable"));
    }
}

fn print_report(r: &AnalysisReport) {
    print_summary(&r.network);
    println!();
    for c in &r.checks {
        print_check(c, false);
    }
    if !r.conclusions.is_empty() {
        println!();
        for c in &r.conclusions {
            println!("conclusion: {c}");
        }
    }
    if let Some(s) = &r.samples {
        println!();
        println!("samples: {s}");
    }
}

fn cmd_analyze(file: &PathBuf, json_out: bool, sample: Option<usize>, no_timing: bool, common: &Common) -> Result<u8, String> {
    let net = common.load(file)?;
    let mut opts = common.options();
    opts.samples = sample;
    opts.timing = !no_timing;
    let report = analyze(&net, &opts);
    if json_out {
        print_json(&json!(report));
    } else {
        print_report(&report);
    }
    Ok(0)
}

fn cmd_check(condition: &str, file: &PathBuf, json_out: bool, no_timing: bool, common: &Common) -> Result<u8, String> {
    let net = common.load(file)?;
    let mut opts = common.options();
    opts.timing = !no_timing;
    let st = analyze_structure(&net);
    let report = run_check(condition, &net, &st, &opts).map_err(|e| e.to_string())?;
    if json_out {
        print_json(&json!(report));
    } else {
        print_check(&report, true);
    }
    Ok(report.status.exit_code() as u8)
}

fn cmd_cbe(file: &PathBuf, rates: &[String], json_out: bool, common: &Common) -> Result<u8, String> {
    let net = common.load(file)?;
    let mut given = BTreeMap::new();
    for r in rates {
        let (name, value) = split_assignment(r)?;
        let v = parse_value(value).ok_or_else(|| format!("--rates {r}: value is not a number"))?;
        given.insert(name.to_string(), v);
    }
    let labels: Vec<String> = (0..net.edges().len()).map(|e| edge_label(&net, e)).collect();
    if let Some(unknown) = given.keys().find(|k| !labels.contains(k)) {
        return Err(format!("--rates: no edge is labeled {unknown:?}"));
    }
    let k = RateAssignment::from_labels(&net, &given).map_err(|e| e.to_string())?;
    let tree = tree_constants(&net, &k).map_err(|e| e.to_string())?;
    let rates_f: Vec<f64> = k.values().iter().map(to_f64).collect();
    let opts = common.options().numeric;
    let s = equilibrium_sample(&net, &rates_f, &opts).map_err(|e| e.to_string())?;
    if json_out {
        print_json(&json!({
            "x_star": net.species().iter().zip(&s.x_star).map(|(n, v)| (n.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "residual_norm": s.residual_norm,
            "spectrum": s.spectrum,
            "stable": s.stable,
            "tree_constants": net.vertices().iter().zip(&tree).map(|(v, k)| (v.name.clone(), json!(k.to_string()))).collect::<serde_json::Map<_, _>>(),
        }));
    } else {
        println!("x*:");
        for (name, v) in net.species().iter().zip(&s.x_star) {
            println!("  {name} = {v:.12e}");
        }
        println!("residual: {:.3e}", s.residual_norm);
        let spec: Vec<String> = s
            .spectrum
            .iter()
            .map(|(re, im)| if *im == 0.0 { format!("{re:.6e}") } else { format!("{re:.6e}{im:+.6e}i") })
            .collect();
        println!("spectrum on S: [{}]", spec.join(", "));
        println!("linearly stable: {}", s.stable);
        println!("tree constants:");
        for (v, kk) in net.vertices().iter().zip(&tree) {
            println!("  {} = {kk}", v.name);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Analyze { file, json, samples, no_timing, common } => cmd_analyze(file, *json, *samples, *no_timing, common),
        Command::Check { condition, file, json, no_timing, common } => cmd_check(condition, file, *json, *no_timing, common),
        Command::Cbe { file, rates, json, common } => cmd_cbe(file, rates, *json, common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
