//! Runs every checker on a network and assembles the versioned report.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::network::{analyze_structure, GeneralizedNetwork, NetworkStructure};
use crate::numeric::{sample_stability, NumericOptions};
use crate::report::{ConditionReport, Status, SCHEMA};
use crate::sign::{
    check_existence, check_exists_unique, check_noother, check_prop_pmatrix, check_prop_s, check_robust,
    check_uniqueness, Caps, NoOtherVariant,
};
use crate::stability::{check_carlson, check_cycle_stability, check_p0plus, StabilityOptions};

/// Condition names, in report order.
pub const CONDITIONS: [&str; 11] = [
    "existence",
    "uniqueness",
    "exists-unique",
    "robust",
    "noother",
    "noother-per-class",
    "prop-pmatrix",
    "prop-s",
    "carlson",
    "p0plus",
    "cycle-stability",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("unknown condition {0:?}")]
    UnknownCondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub caps: Caps,
    pub stability: StabilityOptions,
    pub numeric: NumericOptions,
    /// Number of numeric samples; `None` skips sampling.
    pub samples: Option<usize>,
    pub seed: u64,
    pub timing: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            caps: Caps::default(),
            stability: StabilityOptions::default(),
            numeric: NumericOptions::default(),
            samples: None,
            seed: 0,
            timing: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetworkSummary {
    pub m: usize,
    pub l: usize,
    pub n: usize,
    pub dim_s: usize,
    pub dim_s_tilde: usize,
    pub delta: usize,
    pub delta_tilde: usize,
    pub weakly_reversible: bool,
}

impl NetworkSummary {
    pub fn of(st: &NetworkStructure) -> Self {
        NetworkSummary {
            m: st.m(),
            l: st.l(),
            n: st.n(),
            dim_s: st.s_basis.dim(),
            dim_s_tilde: st.s_tilde_basis.dim(),
            delta: st.delta,
            delta_tilde: st.delta_tilde,
            weakly_reversible: st.weakly_reversible,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub network: NetworkSummary,
    pub checks: Vec<ConditionReport>,
    pub conclusions: Vec<String>,
    pub samples: Option<Value>,
}

impl AnalysisReport {
    pub fn check(&self, name: &str) -> Option<&ConditionReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs the named checker.
pub fn run_check(
    name: &str,
    net: &GeneralizedNetwork,
    st: &NetworkStructure,
    opts: &AnalysisOptions,
) -> Result<ConditionReport, AnalysisError> {
    let caps = &opts.caps;
    let run = || match name {
        "existence" => Some(check_existence(st)),
        "uniqueness" => Some(check_uniqueness(st, caps)),
        "exists-unique" => Some(check_exists_unique(st, caps)),
        "robust" => Some(check_robust(st, caps)),
        "noother" => Some(check_noother(st, NoOtherVariant::Global, caps)),
        "noother-per-class" => Some(check_noother(st, NoOtherVariant::PerClass, caps)),
        "prop-pmatrix" => Some(check_prop_pmatrix(st, caps)),
        "prop-s" => Some(check_prop_s(st, caps)),
        "carlson" => Some(check_carlson(net, st, &opts.stability)),
        "p0plus" => Some(check_p0plus(net, st, &opts.stability)),
        "cycle-stability" => Some(check_cycle_stability(net, st, &opts.stability)),
        _ => None,
    };
    let report = if opts.timing {
        let mut out = None;
        let r = ConditionReport::timed(|| {
            out = run();
            out.clone().unwrap_or_else(|| ConditionReport::new(name, "", Status::NotApplicable))
        });
        out.map(|_| r)
    } else {
        run()
    };
    report.ok_or_else(|| AnalysisError::UnknownCondition(name.to_string()))
}

fn holds(checks: &[ConditionReport], name: &str) -> bool {
    checks.iter().any(|c| c.name == name && c.status == Status::Holds)
}

fn fails(checks: &[ConditionReport], name: &str) -> bool {
    checks.iter().any(|c| c.name == name && c.status == Status::Fails)
}

/// Plain-language consequences of the verdicts.
pub fn conclusions(st: &NetworkStructure, checks: &[ConditionReport]) -> Vec<String> {
    let mut out = Vec::new();
    let exists = holds(checks, "existence");
    let unique = holds(checks, "uniqueness");
    match (exists, unique) {
        (true, true) => out.push("exactly one positive CBE in every stoichiometric class, for all rate constants".into()),
        (true, false) => out.push("a positive CBE exists for all rate constants".into()),
        (false, true) => out.push("at most one positive CBE in every stoichiometric class".into()),
        (false, false) => {}
    }
    if holds(checks, "robust") {
        out.push("uniqueness persists under small perturbations of the kinetic orders".into());
    }
    if holds(checks, "prop-pmatrix") {
        if st.n() <= 2 {
            let subject = if exists { "the (unique) positive CBE" } else { "any positive CBE" };
            out.push(format!("{subject} is diagonally stable, for all rate constants"));
        } else {
            out.push("the negated Jacobian is a P-matrix at every positive CBE, for all rate constants".into());
        }
    }
    if holds(checks, "prop-s") {
        if st.s_basis.dim() <= 2 {
            let subject = if exists { "every positive CBE" } else { "any positive CBE" };
            out.push(format!("{subject} is linearly stable on its stoichiometric class, for all rate constants"));
        } else {
            out.push("the negated Jacobian on S is a P-matrix at every positive CBE, for all rate constants".into());
        }
    }
    if holds(checks, "carlson") {
        out.push("the reduced Jacobian is D-stable on S for all cycle parameters, so every positive CBE is linearly stable".into());
    }
    if fails(checks, "p0plus") {
        out.push("the reduced Jacobian is not D-stable on S for some cycle parameters".into());
    }
    out
}

/// Structure summary, every checker in [`CONDITIONS`] order, conclusions and
/// (optionally) the numeric sampling summary.
pub fn analyze(net: &GeneralizedNetwork, opts: &AnalysisOptions) -> AnalysisReport {
    let st = analyze_structure(net);
    let checks: Vec<ConditionReport> =
        CONDITIONS.iter().map(|c| run_check(c, net, &st, opts).expect("listed condition")).collect();
    let samples = opts.samples.map(|trials| match sample_stability(net, trials, opts.seed, &opts.numeric) {
        Ok(s) => json!({
            "trials": s.trials,
            "seed": s.seed,
            "sampling": s.sampling,
            "stable": s.stable,
            "unstable": s.unstable,
            "invalid": s.invalid,
            "worst_margin": s.worst_margin,
            "max_real": s.max_real,
            "max_residual": s.max_residual,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    });
    AnalysisReport {
        schema: SCHEMA,
        network: NetworkSummary::of(&st),
        conclusions: conclusions(&st, &checks),
        checks,
        samples,
    }
}
