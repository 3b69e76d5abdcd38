use serde_json::{json, Value};

use super::enumerate::{
    image_closure_witness, image_sign_set, in_lower_closure_of_subspace, realizable_in_subspace,
    sign_set_of_subspace, Region,
};
use super::vector::{ClosureMode, Sign, SignVector};
use super::{Caps, SignError};
use crate::linalg::{orthogonal_basis, Rational, RationalMatrix, SubspaceBasis};
use crate::network::NetworkStructure;
use crate::report::{ConditionReport, Status};

pub(crate) fn rats(v: &[Rational]) -> Value {
    json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn or_not_applicable(name: &str, anchor: &str, r: Result<ConditionReport, SignError>) -> ConditionReport {
    r.unwrap_or_else(|e| {
        ConditionReport::new(name, anchor, Status::NotApplicable).with_evidence(json!({ "reason": e.to_string() }))
    })
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Holds
    } else {
        Status::Fails
    }
}

/// A nonzero common sign vector of `sign(S1)` and `sign(S2)`, with a witness in each.
pub fn common_sign_vector(
    s1: &SubspaceBasis,
    s2: &SubspaceBasis,
    caps: &Caps,
) -> Result<Option<(SignVector, Vec<Rational>, Vec<Rational>)>, SignError> {
    let (small, large, swapped) = if s1.dim() <= s2.dim() { (s1, s2, false) } else { (s2, s1, true) };
    for sigma in sign_set_of_subspace(small, caps)?.nonzero() {
        if let Some(x_large) = realizable_in_subspace(sigma, large)? {
            let x_small = realizable_in_subspace(sigma, small)?.expect("member of the enumerated sign set");
            return Ok(Some(if swapped {
                (sigma.clone(), x_large, x_small)
            } else {
                (sigma.clone(), x_small, x_large)
            }));
        }
    }
    Ok(None)
}

pub const UNIQUENESS_ANCHOR: &str = "at most one complex-balanced equilibrium in every stoichiometric class";
const UNIQUENESS_NOTE: &str =
    "tested as sign(S) ∩ sign(S~⊥) = {0}; the variant with ≠ that appears in some statements of this criterion is not used";

pub fn check_uniqueness(ns: &NetworkStructure, caps: &Caps) -> ConditionReport {
    let name = "uniqueness";
    or_not_applicable(name, UNIQUENESS_ANCHOR, uniqueness_inner(ns, caps, name, UNIQUENESS_ANCHOR))
}

fn uniqueness_inner(
    ns: &NetworkStructure,
    caps: &Caps,
    name: &str,
    anchor: &str,
) -> Result<ConditionReport, SignError> {
    let perp = ns.s_tilde_perp();
    let common = common_sign_vector(&ns.s_basis, &perp, caps)?;
    let evidence = json!({
        "dim_s": ns.s_basis.dim(),
        "dim_s_tilde_perp": perp.dim(),
        "note": UNIQUENESS_NOTE,
    });
    Ok(match common {
        None => ConditionReport::new(name, anchor, Status::Holds).with_evidence(evidence),
        Some((sigma, x, y)) => ConditionReport::new(name, anchor, Status::Fails)
            .with_evidence(evidence)
            .with_counterexample(json!({ "sign": sigma, "in_s": rats(&x), "in_s_tilde_perp": rats(&y) })),
    })
}

pub fn check_existence(ns: &NetworkStructure) -> ConditionReport {
    let ok = ns.delta_tilde == 0 && ns.weakly_reversible;
    let mut r = ConditionReport::new(
        "existence",
        "complex-balanced equilibria exist for all rate constants iff kinetic deficiency is zero and the graph is weakly reversible",
        verdict(ok),
    )
    .with_evidence(json!({ "delta_tilde": ns.delta_tilde, "weakly_reversible": ns.weakly_reversible }));
    if !ok {
        r = r.with_counterexample(json!({
            "delta_tilde_nonzero": ns.delta_tilde != 0,
            "not_weakly_reversible": !ns.weakly_reversible,
        }));
    }
    r
}

/// Only the necessary parts: both deficiencies zero, weak reversibility and the sign intersection.
pub fn check_exists_unique(ns: &NetworkStructure, caps: &Caps) -> ConditionReport {
    let name = "exists-unique";
    let anchor = "necessary parts of existence and uniqueness in every class for all rate constants";
    let inner = || -> Result<ConditionReport, SignError> {
        let sign_part = uniqueness_inner(ns, caps, name, anchor)?;
        let ok = ns.delta == 0 && ns.delta_tilde == 0 && ns.weakly_reversible && sign_part.holds();
        let mut r = ConditionReport::new(name, anchor, verdict(ok)).with_evidence(json!({
            "delta": ns.delta,
            "delta_tilde": ns.delta_tilde,
            "weakly_reversible": ns.weakly_reversible,
            "sign_intersection_trivial": sign_part.holds(),
            "scope": "necessary parts only; the remaining conditions of the full equivalence are not checked",
        }));
        if let Some(c) = sign_part.counterexample {
            r = r.with_counterexample(c);
        } else if !ok {
            r = r.with_counterexample(json!({ "failed_parts": failed_parts(ns) }));
        }
        Ok(r)
    };
    or_not_applicable(name, anchor, inner())
}

pub fn check_robust(ns: &NetworkStructure, caps: &Caps) -> ConditionReport {
    let name = "robust";
    let anchor = "unique complex-balanced equilibrium for all rate constants and all small perturbations of kinetic orders";
    let inner = || -> Result<ConditionReport, SignError> {
        let mut violation = None;
        for sigma in sign_set_of_subspace(&ns.s_basis, caps)?.nonzero() {
            if in_lower_closure_of_subspace(sigma, &ns.s_tilde_basis).is_none() {
                violation = Some(sigma.clone());
                break;
            }
        }
        let inclusion = violation.is_none();
        let ok = ns.weakly_reversible && ns.delta == 0 && ns.delta_tilde == 0 && inclusion;
        let mut r = ConditionReport::new(name, anchor, verdict(ok)).with_evidence(json!({
            "weakly_reversible": ns.weakly_reversible,
            "delta": ns.delta,
            "delta_tilde": ns.delta_tilde,
            "sign_s_in_lower_closure_of_sign_s_tilde": inclusion,
        }));
        if let Some(sigma) = violation {
            r = r.with_counterexample(json!({ "sign_in_s_not_covered": sigma }));
        } else if !ok {
            r = r.with_counterexample(json!({ "failed_parts": failed_parts(ns) }));
        }
        Ok(r)
    };
    or_not_applicable(name, anchor, inner())
}

fn failed_parts(ns: &NetworkStructure) -> Vec<&'static str> {
    let mut v = Vec::new();
    if !ns.weakly_reversible {
        v.push("weak reversibility");
    }
    if ns.delta != 0 {
        v.push("delta = 0");
    }
    if ns.delta_tilde != 0 {
        v.push("delta_tilde = 0");
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoOtherVariant {
    /// `sign(T~) ⊆ sign(T)↕`.
    Global,
    /// `sign((Y~ I_Ω)ᵀ(Σ(S))) ⊆ sign(T)↕`.
    PerClass,
}

/// Nonzero members of `sign(M_left ᵀ(left))` not in `sign(M_right ᵀ(right))↕`.
fn first_uncovered(
    left_m: &RationalMatrix,
    left: &Region,
    right_m: &RationalMatrix,
    right: &Region,
    caps: &Caps,
) -> Result<(usize, Option<SignVector>), SignError> {
    let lhs = image_sign_set(left_m, left, caps)?;
    for t in lhs.nonzero() {
        if image_closure_witness(right_m, right, ClosureMode::Total, t, caps)?.is_none() {
            return Ok((lhs.len(), Some(t.clone())));
        }
    }
    Ok((lhs.len(), None))
}

pub fn check_noother(ns: &NetworkStructure, variant: NoOtherVariant, caps: &Caps) -> ConditionReport {
    let name = match variant {
        NoOtherVariant::Global => "noother",
        NoOtherVariant::PerClass => "noother-per-class",
    };
    let anchor = "no other positive steady states in stoichiometric classes that contain a complex-balanced equilibrium";
    let inner = || -> Result<ConditionReport, SignError> {
        let n = ns.n();
        let left = match variant {
            NoOtherVariant::Global => Region::Full(n),
            NoOtherVariant::PerClass => Region::SigmaOfSubspace(ns.s_basis.clone()),
        };
        let (size, bad) = first_uncovered(&ns.y_tilde_omega(), &left, &ns.y_omega(), &Region::Full(n), caps)?;
        let mut r = ConditionReport::new(name, anchor, verdict(bad.is_none())).with_evidence(json!({
            "omega": ns.omega_pairs,
            "left_sign_vectors": size,
            "inclusion": "nonzero members of the left side lie in the total closure of sign(T)",
        }));
        if let Some(t) = bad {
            r = r.with_counterexample(json!({ "uncovered": t }));
        }
        Ok(r)
    };
    or_not_applicable(name, anchor, inner())
}

/// All `2^s` sign vectors without zero entries.
pub fn open_orthants(s: usize) -> Vec<SignVector> {
    (0..1usize << s)
        .map(|mask| {
            SignVector::new((0..s).map(|i| if mask >> (s - 1 - i) & 1 == 1 { Sign::Plus } else { Sign::Minus }).collect())
        })
        .collect()
}

pub fn check_prop_pmatrix(ns: &NetworkStructure, caps: &Caps) -> ConditionReport {
    let name = "prop-pmatrix";
    let anchor = "the negated Jacobian is a P-matrix at every positive complex-balanced equilibrium";
    let n = ns.n();
    if ns.s_basis.dim() != n || ns.s_tilde_basis.dim() != n {
        return ConditionReport::new(name, anchor, Status::NotApplicable).with_evidence(json!({
            "reason": "requires S = S~ = R^n",
            "dim_s": ns.s_basis.dim(),
            "dim_s_tilde": ns.s_tilde_basis.dim(),
            "n": n,
        }));
    }
    let inner = || -> Result<ConditionReport, SignError> {
        if n > caps.max_orthant_dim {
            return Err(SignError::EnumerationTooLarge {
                what: "orthant dimension".into(),
                size: n,
                cap: caps.max_orthant_dim,
            });
        }
        let id = RationalMatrix::identity(n);
        orthant_sweep(name, anchor, ns, &id, caps, |o| Region::Orthant { basis: id.clone(), signs: o.clone(), closed: false })
    };
    or_not_applicable(name, anchor, inner())
}

/// Sweeps every nonzero sign pattern `ρ` of `R^s`: the open orthants and
/// their lower-dimensional faces `{c : sign(c) = ρ}`. Faces are needed because
/// the P-matrix characterization quantifies over all nonzero vectors, not only
/// those in open orthants. The open-orthant-only verdict is kept as evidence.
fn orthant_sweep<F: Fn(&SignVector) -> Region>(
    name: &str,
    anchor: &str,
    ns: &NetworkStructure,
    basis: &RationalMatrix,
    caps: &Caps,
    left_region: F,
) -> Result<ConditionReport, SignError> {
    let (yo, yto) = (ns.y_omega(), ns.y_tilde_omega());
    let mut checked = 0usize;
    let mut first_open = None;
    let mut first_face = None;
    for rho in SignVector::all(basis.cols()).filter(|r| !r.is_zero()) {
        let open = rho.support().len() == rho.len();
        if first_face.is_some() && !open {
            continue;
        }
        let right = Region::Orthant { basis: basis.clone(), signs: rho.clone(), closed: true };
        let (_, bad) = first_uncovered(&yto, &left_region(&rho), &yo, &right, caps)?;
        checked += 1;
        if let Some(t) = bad {
            let hit = json!({ "orthant": rho, "uncovered": t });
            if open && first_open.is_none() {
                first_open = Some(hit.clone());
            }
            if first_face.is_none() {
                first_face = Some(hit);
            }
        }
    }
    let evidence = json!({
        "omega": ns.omega_pairs,
        "sign_patterns_checked": checked,
        "open_orthants_only_holds": first_open.is_none(),
        "faces_included": true,
    });
    Ok(match first_face {
        None => ConditionReport::new(name, anchor, Status::Holds).with_evidence(evidence),
        Some(c) => ConditionReport::new(name, anchor, Status::Fails).with_evidence(evidence).with_counterexample(c),
    })
}

pub fn check_prop_s(ns: &NetworkStructure, caps: &Caps) -> ConditionReport {
    let name = "prop-s";
    let anchor = "the negated Jacobian restricted to S is a P-matrix at every positive complex-balanced equilibrium";
    let inner = || -> Result<ConditionReport, SignError> {
        let unique = uniqueness_inner(ns, caps, name, anchor)?;
        if !unique.holds() {
            let mut r = ConditionReport::new(name, anchor, Status::Fails)
                .with_evidence(json!({ "sign_intersection_trivial": false }));
            r.counterexample = unique.counterexample;
            return Ok(r);
        }
        let s = ns.s_basis.dim();
        if s == 0 {
            return Ok(ConditionReport::new(name, anchor, Status::Holds)
                .with_evidence(json!({ "sign_intersection_trivial": true, "dim_s": 0, "vacuous": true })));
        }
        if s > caps.max_orthant_dim {
            return Err(SignError::EnumerationTooLarge {
                what: "orthant dimension".into(),
                size: s,
                cap: caps.max_orthant_dim,
            });
        }
        let b = orthogonal_basis(&ns.s_basis)?.matrix();
        let mut r = orthant_sweep(name, anchor, ns, &b, caps, |o| Region::SigmaOfOrthant {
            basis: b.clone(),
            signs: o.clone(),
        })?;
        if let Value::Object(map) = &mut r.evidence {
            map.insert("sign_intersection_trivial".into(), json!(true));
            map.insert(
                "orthogonal_basis".into(),
                json!(b.columns().iter().map(|c| rats(c)).collect::<Vec<_>>()),
            );
        }
        Ok(r)
    };
    or_not_applicable(name, anchor, inner())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::network::{analyze_structure, parse_network, parse_network_with};
    use std::collections::BTreeMap;

    fn ns(src: &str) -> NetworkStructure {
        analyze_structure(&parse_network(src).unwrap())
    }

    fn lotka(alpha_beta: &str) -> NetworkStructure {
        let v = crate::linalg::parse_rational(alpha_beta).unwrap();
        let o: BTreeMap<_, _> = [("alpha".to_string(), v.clone()), ("beta".to_string(), v)].into();
        analyze_structure(&parse_network_with(fixtures::LOTKA, &o).unwrap())
    }

    #[test]
    fn lotka_verdicts() {
        let caps = Caps::default();
        let half = lotka("1/2");
        assert!(check_uniqueness(&half, &caps).holds());
        assert!(check_existence(&half).holds());
        assert!(check_robust(&half, &caps).holds());
        assert!(check_noother(&half, NoOtherVariant::Global, &caps).holds());
        assert!(check_prop_pmatrix(&half, &caps).holds());
        let one = lotka("1");
        let r = check_prop_pmatrix(&one, &caps);
        assert!(r.fails(), "{r:?}");
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn signaling_and_futile_prop_s() {
        let caps = Caps::default();
        let sig = ns(fixtures::SIGNALING);
        assert!(check_uniqueness(&sig, &caps).holds());
        assert!(check_robust(&sig, &caps).fails());
        let r = check_prop_s(&sig, &caps);
        assert!(r.holds(), "{r:?}");
        let fut = ns(fixtures::FUTILE);
        let r = check_prop_s(&fut, &caps);
        assert!(r.fails(), "{r:?}");
    }

    #[test]
    fn sir_verdicts() {
        let caps = Caps::default();
        let sir = ns(fixtures::SIR);
        assert!(check_existence(&sir).fails());
        assert!(check_prop_pmatrix(&sir, &caps).holds());
    }

    #[test]
    fn prop_pmatrix_not_applicable_without_full_rank() {
        let r = check_prop_pmatrix(&ns(fixtures::SIGNALING), &Caps::default());
        assert_eq!(r.status, Status::NotApplicable);
    }

    #[test]
    fn caps_turn_into_not_applicable() {
        let caps = Caps { max_subspace_dim: 1, ..Caps::default() };
        let r = check_uniqueness(&ns(fixtures::FUTILE), &caps);
        assert_eq!(r.status, Status::NotApplicable);
        assert!(r.evidence["reason"].as_str().unwrap().contains("too large"));
    }

    #[test]
    fn zero_stoichiometric_subspace_is_vacuous_for_prop_s() {
        let r = check_prop_s(&ns("species X\nvertex a: X\n"), &Caps::default());
        assert!(r.holds());
        assert_eq!(r.evidence["vacuous"], json!(true));
    }

    #[test]
    fn orthant_listing() {
        let o: Vec<String> = open_orthants(2).iter().map(ToString::to_string).collect();
        assert_eq!(o, ["--", "-+", "+-", "++"]);
        assert_eq!(open_orthants(0).len(), 1);
    }
}
