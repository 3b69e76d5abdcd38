//! Principal-minor tests (P, P0, P0⁺, sign symmetry, Carlson's criterion) on
//! exact and λ-parametric matrices, and the stability checkers built on the
//! parametric reduced Jacobian.

mod certificate;

pub use certificate::{
    carlson_check, is_p0_matrix, is_p0_plus, is_p_matrix, is_sign_symmetric, p_subsets, parametric_certificate,
    sample_points, CertStatus, CertificateKind, MinorCertificate, MinorCounterexample, SamplingOptions, Violation,
};

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::laplacian::{enumerate_cycles, parametric_reduced_jacobian, LaplacianError, ParametricMatrix};
use crate::linalg::{Rational, RationalMatrix};
use crate::network::{GeneralizedNetwork, NetworkStructure};
use crate::report::{ConditionReport, Status};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("order {r} is not in 1..={n}")]
    BadOrder { r: usize, n: usize },
    #[error("rank is {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("matrix of size {n} exceeds the minor enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Laplacian(#[from] LaplacianError),
}

/// Settings shared by the network-level stability checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityOptions {
    pub sampling: SamplingOptions,
    pub max_cycles: usize,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        StabilityOptions { sampling: SamplingOptions::default(), max_cycles: crate::laplacian::DEFAULT_MAX_CYCLES }
    }
}

pub const CARLSON_ANCHOR: &str =
    "Carlson: -A sign-symmetric with nonnegative order-r principal minors and a principal P-submatrix of order r = rank A gives D-stability on im A";
pub const P0PLUS_ANCHOR: &str = "D-stability of A on im A requires -A to be P0+ of order rank A";
pub const CYCLE_STABILITY_ANCHOR: &str =
    "single-cycle network: D-stability of Y A Ỹᵀ on S, bracketed by the P0+ necessary condition and Carlson's sufficient condition";

fn status_of(c: &MinorCertificate) -> Status {
    match c.status {
        CertStatus::CertifiedTrue => Status::Holds,
        CertStatus::CertifiedFalse => Status::Fails,
        CertStatus::Inconclusive => Status::Inconclusive,
    }
}

fn report_from(name: &str, anchor: &str, c: &MinorCertificate, symbols: &[String], extra: Value) -> ConditionReport {
    let mut evidence = json!({ "kind": c.kind, "certificate": c.status, "details": c.evidence.clone() });
    if let (Value::Object(e), Value::Object(x)) = (&mut evidence, extra) {
        e.extend(x);
    }
    let mut r = ConditionReport::new(name, anchor, status_of(c)).with_evidence(evidence);
    if let Some(cx) = &c.counterexample {
        r = r.with_counterexample(cx.to_json(symbols));
    }
    r
}

fn not_applicable(name: &str, anchor: &str, reason: String) -> ConditionReport {
    ConditionReport::new(name, anchor, Status::NotApplicable).with_evidence(json!({ "reason": reason }))
}

/// `−𝒥(λ)` and its cycle parameters for a weakly reversible network.
pub fn negated_reduced_jacobian(
    net: &GeneralizedNetwork,
    max_cycles: usize,
) -> Result<ParametricMatrix, StabilityError> {
    let cycles = enumerate_cycles(net, max_cycles)?;
    Ok(parametric_reduced_jacobian(net, &cycles).neg())
}

fn named_sets(net: &GeneralizedNetwork, sets: &[Vec<usize>]) -> Value {
    json!(sets.iter().map(|s| s.iter().map(|&i| net.species()[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Proposition-style necessary condition read contrapositively: if `−𝒥(λ)`
/// fails to be P0⁺ of order `r` at some `λ`, then `𝒥` is not D-stable on its
/// image there. Input is `𝒥` itself.
pub fn necessary_condition_report(j: &ParametricMatrix, r: usize, opts: &SamplingOptions) -> ConditionReport {
    let m = j.neg();
    match parametric_certificate(&m, CertificateKind::P0Plus(r), opts) {
        Ok(c) => {
            let verdict = match c.status {
                CertStatus::CertifiedTrue => "necessary condition passes",
                CertStatus::CertifiedFalse => "necessary condition fails: not D-stable on the image",
                CertStatus::Inconclusive => "necessary condition undecided",
            };
            let rank_drops: Vec<Vec<String>> = sample_points(m.symbols().len(), opts)
                .iter()
                .filter(|p| m.eval(p).rank() != r)
                .map(|p| p.iter().map(ToString::to_string).collect())
                .collect();
            report_from(
                "p0plus",
                P0PLUS_ANCHOR,
                &c,
                m.symbols(),
                json!({ "order": r, "verdict": verdict, "rank_drops": rank_drops }),
            )
        }
        Err(e) => not_applicable("p0plus", P0PLUS_ANCHOR, e.to_string()),
    }
}

/// `−𝒥(λ)` is P0⁺ of order `dim S` for all `λ > 0`.
pub fn check_p0plus(net: &GeneralizedNetwork, st: &NetworkStructure, opts: &StabilityOptions) -> ConditionReport {
    if !st.weakly_reversible {
        return not_applicable("p0plus", P0PLUS_ANCHOR, "network is not weakly reversible".into());
    }
    let r = st.s_basis.dim();
    if r == 0 {
        return not_applicable("p0plus", P0PLUS_ANCHOR, "stoichiometric subspace is zero".into());
    }
    match negated_reduced_jacobian(net, opts.max_cycles) {
        Ok(m) => necessary_condition_report(&m.neg(), r, &opts.sampling),
        Err(e) => not_applicable("p0plus", P0PLUS_ANCHOR, e.to_string()),
    }
}

/// Carlson's criterion on `−𝒥(λ)` with `r = dim S`, for all `λ > 0`.
pub fn check_carlson(net: &GeneralizedNetwork, st: &NetworkStructure, opts: &StabilityOptions) -> ConditionReport {
    if !st.weakly_reversible {
        return not_applicable("carlson", CARLSON_ANCHOR, "network is not weakly reversible".into());
    }
    let r = st.s_basis.dim();
    let m = match negated_reduced_jacobian(net, opts.max_cycles) {
        Ok(m) => m,
        Err(e) => return not_applicable("carlson", CARLSON_ANCHOR, e.to_string()),
    };
    match parametric_certificate(&m, CertificateKind::Carlson(r), &opts.sampling) {
        Ok(c) => {
            let subsets = p_subsets(&c);
            let unit = m.eval(&vec![Rational::one(); m.symbols().len()]);
            let at_unit = match carlson_check(&unit, r) {
                Ok(u) => json!({
                    "certificate": u.status,
                    "p_subset_species": named_sets(net, &p_subsets(&u)),
                }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            report_from(
                "carlson",
                CARLSON_ANCHOR,
                &c,
                m.symbols(),
                json!({
                    "rank": r,
                    "p_subset_species": named_sets(net, &subsets),
                    "parameters": m.symbols(),
                    "at_unit_parameters": at_unit,
                }),
            )
        }
        Err(e) => not_applicable("carlson", CARLSON_ANCHOR, e.to_string()),
    }
}

/// For a single-cycle network `𝒥(λ) = λ Y A_1 Ỹᵀ`, so both bounds are taken
/// at `λ = 1`: holds when Carlson's criterion is certified, fails when the
/// P0⁺ necessary condition fails, inconclusive otherwise.
pub fn check_cycle_stability(
    net: &GeneralizedNetwork,
    st: &NetworkStructure,
    opts: &StabilityOptions,
) -> ConditionReport {
    let name = "cycle-stability";
    if !st.weakly_reversible {
        return not_applicable(name, CYCLE_STABILITY_ANCHOR, "network is not weakly reversible".into());
    }
    let cycles = match enumerate_cycles(net, opts.max_cycles) {
        Ok(c) => c,
        Err(e) => return not_applicable(name, CYCLE_STABILITY_ANCHOR, e.to_string()),
    };
    if cycles.len() != 1 {
        return not_applicable(name, CYCLE_STABILITY_ANCHOR, format!("network has {} cycles, not one", cycles.len()));
    }
    let r = st.s_basis.dim();
    if r == 0 {
        return not_applicable(name, CYCLE_STABILITY_ANCHOR, "stoichiometric subspace is zero".into());
    }
    let m = parametric_reduced_jacobian(net, &cycles).neg().eval(&[Rational::one()]);
    let nec = is_p0_plus(&m, r);
    let suff = carlson_check(&m, r);
    let (nec, suff) = match (nec, suff) {
        (Ok(n), Ok(s)) => (n, s),
        (Err(e), _) | (_, Err(e)) => return not_applicable(name, CYCLE_STABILITY_ANCHOR, e.to_string()),
    };
    let small = if r == m.rows() { small_d_stable(&m) } else { None };
    let status = if suff.is_true() || small == Some(true) {
        Status::Holds
    } else if nec.is_false() || small == Some(false) {
        Status::Fails
    } else {
        Status::Inconclusive
    };
    let matrix: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect();
    let mut report = ConditionReport::new(name, CYCLE_STABILITY_ANCHOR, status).with_evidence(json!({
        "negated_jacobian_at_unit_rates": matrix,
        "necessary_p0plus": nec.status,
        "sufficient_carlson": suff.status,
        "p_subset_species": named_sets(net, &p_subsets(&suff)),
        "scope": "exact when S = R^n has dimension at most two, otherwise a bracket",
    }));
    if let Some(d) = small {
        report.evidence["exact_small_case"] = json!(d);
    }
    if let Some(cx) = nec.counterexample.as_ref().filter(|_| nec.is_false()) {
        report = report.with_counterexample(cx.to_json(&[]));
    }
    report
}

/// Exact D-stability of a full-rank matrix of order one or two:
/// positive diagonal sum, nonnegative diagonal, positive determinant.
fn small_d_stable(m: &RationalMatrix) -> Option<bool> {
    let zero = Rational::zero();
    match m.rows() {
        1 => Some(m[(0, 0)] > zero),
        2 => {
            let (a, b, c, d) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
            Some(*a >= zero && *d >= zero && a + d > zero && a * d - b * c > zero)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::network::{analyze_structure, parse_network};

    fn run(text: &str, f: fn(&GeneralizedNetwork, &NetworkStructure, &StabilityOptions) -> ConditionReport) -> ConditionReport {
        let net = parse_network(text).unwrap();
        let st = analyze_structure(&net);
        f(&net, &st, &StabilityOptions::default())
    }

    #[test]
    fn signaling_carlson_and_p0plus() {
        let c = run(fixtures::SIGNALING, check_carlson);
        assert_eq!(c.status, Status::Holds, "{}", c.evidence);
        assert!(c.evidence["p_subset_species"].as_array().unwrap().contains(&json!(["X", "Y"])));
        assert_eq!(run(fixtures::SIGNALING, check_p0plus).status, Status::Holds);
    }

    #[test]
    fn futile_carlson_fails_for_large_full_cycle_weight() {
        let c = run(fixtures::FUTILE, check_carlson);
        assert_eq!(c.status, Status::Fails, "{}", c.evidence);
        assert_eq!(c.counterexample.as_ref().unwrap()["violation"]["type"], "opposite_minors");
        assert!(c.evidence["p_subset_species"].as_array().unwrap().contains(&json!(["E", "F*", "P"])));
        let unit = &c.evidence["at_unit_parameters"];
        assert_eq!(unit["certificate"], "certified_true");
        assert!(unit["p_subset_species"].as_array().unwrap().contains(&json!(["E", "F*", "P"])));
    }

    #[test]
    fn futile_sign_symmetry_counterexample_rechecks() {
        let net = parse_network(fixtures::FUTILE).unwrap();
        let m = negated_reduced_jacobian(&net, 100).unwrap();
        let c = parametric_certificate(&m, CertificateKind::SignSymmetric, &SamplingOptions::default()).unwrap();
        assert!(c.is_false());
        assert!(c.counterexample.unwrap().recheck(&m));
        let ones = vec![Rational::one(); 3];
        assert!(is_sign_symmetric(&m.eval(&ones)).unwrap().is_true());
    }

    #[test]
    fn futile_reversed_fails_p0plus() {
        let r = run(fixtures::FUTILE_REVERSED, check_p0plus);
        assert_eq!(r.status, Status::Fails, "{}", r.evidence);
        let net = parse_network(fixtures::FUTILE_REVERSED).unwrap();
        let m = negated_reduced_jacobian(&net, 100).unwrap();
        let c = parametric_certificate(&m, CertificateKind::P0Plus(3), &SamplingOptions::default()).unwrap();
        let cx = c.counterexample.unwrap();
        assert!(cx.recheck(&m));
        assert!(matches!(cx.violation, Violation::PrincipalMinor { ref value, .. } if *value < Rational::from_integer(0.into())));
    }

    #[test]
    fn lotka_is_not_sign_symmetric() {
        assert_eq!(run(fixtures::LOTKA, check_carlson).status, Status::Fails);
        let c = run(fixtures::LOTKA, check_cycle_stability);
        assert_eq!(c.status, Status::Holds);
        assert_eq!(c.evidence["exact_small_case"], json!(true));
        let classical = fixtures::LOTKA.replace("alpha = 1/2", "alpha = 1").replace("beta = 1/2", "beta = 1");
        assert_eq!(run(&classical, check_cycle_stability).status, Status::Fails);
        assert_eq!(run(fixtures::SIGNALING, check_cycle_stability).status, Status::NotApplicable);
        assert_eq!(run(fixtures::LOTKA_MAK, check_carlson).status, Status::NotApplicable);
    }

    #[test]
    fn one_by_one_necessary_condition() {
        let j = ParametricMatrix::linear_combination(
            vec!["l".into()],
            &[crate::linalg::RationalMatrix::from_i64_rows(&[&[-1]])],
        );
        let r = necessary_condition_report(&j, 1, &SamplingOptions::default());
        assert_eq!(r.status, Status::Holds);
    }
}
