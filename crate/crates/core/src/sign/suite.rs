use super::enumerate::sign_set_of_subspace;
use super::vector::{ClosureMode, SignSet, SignVector};
use super::{Caps, SignError};
use crate::linalg::SubspaceBasis;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteViolation {
    pub property: &'static str,
    pub detail: String,
}

fn included(left: &SignSet, right: &SignSet, mode: Option<ClosureMode>) -> bool {
    match mode {
        None => left.is_subset(right),
        Some(m) => left.nonzero().all(|s| right.closure_contains(m, s)),
    }
}

fn trivial_intersection(a: &SignSet, b: &SignSet) -> bool {
    a.intersection(b).nonzero().next().is_none()
}

/// Checks the sign-vector alternatives, the orthogonality duality and the
/// chain of implications between inclusion conditions for a pair of
/// subspaces of a common `R^d`. Returns every violated statement.
///
/// Closure inclusions are read over the nonzero members of the left side.
pub fn duality_and_implication_suite(
    s1: &SubspaceBasis,
    s2: &SubspaceBasis,
    caps: &Caps,
) -> Result<Vec<SuiteViolation>, SignError> {
    let d = s1.ambient();
    if s2.ambient() != d {
        return Err(SignError::DimensionMismatch { expected: d, found: s2.ambient() });
    }
    let sign1 = sign_set_of_subspace(s1, caps)?;
    let sign1_perp = sign_set_of_subspace(&s1.orthogonal_complement(), caps)?;
    let sign2 = sign_set_of_subspace(s2, caps)?;
    let sign2_perp = sign_set_of_subspace(&s2.orthogonal_complement(), caps)?;
    let mut out = Vec::new();
    let mut fail = |property: &'static str, detail: String| out.push(SuiteViolation { property, detail });

    for sigma in SignVector::all(d).filter(|s| !s.is_zero()) {
        let a = sign1.contains(&sigma);
        let b = sign1_perp.iter().any(|t| sigma.conformal_overlap(t));
        if a == b {
            fail("minty sign alternative", format!("sigma {sigma}: in S {a}, dual witness {b}"));
        }
        let a = sign1.iter().any(|t| sigma.leq(t));
        let b = sign1_perp.nonzero().any(|t| t.leq(&sigma));
        if a == b {
            fail("minty cover alternative", format!("sigma {sigma}: cover in S {a}, dual below {b}"));
        }
    }

    if sign1_perp != sign1.orthogonal_complement() {
        fail("sign(S⊥) = sign(S)⊥", format!("{} vs {}", sign1_perp.len(), sign1.orthogonal_complement().len()));
    }

    let intersect = trivial_intersection(&sign1, &sign2_perp);
    let overlap_all = sign1.nonzero().all(|s| sign2.iter().any(|t| s.conformal_overlap(t)));
    if intersect != overlap_all {
        fail("intersection equivalence", format!("trivial intersection {intersect}, overlap for all {overlap_all}"));
    }

    let eq = sign1 == sign2;
    let sub = included(&sign1, &sign2, None);
    let lower = included(&sign1, &sign2, Some(ClosureMode::Lower));
    let upper = included(&sign1, &sign2, Some(ClosureMode::Upper));
    let total = included(&sign1, &sign2, Some(ClosureMode::Total));
    let chain = [
        ("equal ⇒ subset", eq, sub),
        ("subset ⇒ lower inclusion", sub, lower),
        ("subset ⇒ upper inclusion", sub, upper),
        ("lower ⇒ total inclusion", lower, total),
        ("upper ⇒ total inclusion", upper, total),
        ("total inclusion ⇒ trivial intersection", total, intersect),
    ];
    for (what, premise, conclusion) in chain {
        if premise && !conclusion {
            fail("closure implication chain", what.to_string());
        }
    }

    if s1.dim() == s2.dim() {
        let dual = trivial_intersection(&sign1_perp, &sign2);
        if dual != intersect {
            fail("equal-dimension intersection duality", format!("{intersect} vs {dual}"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Rational};

    fn col(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn diagonal_line_against_itself() {
        let s = SubspaceBasis::span(2, &[col(&[1, 1])]);
        assert!(duality_and_implication_suite(&s, &s, &Caps::default()).unwrap().is_empty());
    }

    #[test]
    fn full_plane_pair() {
        let s = SubspaceBasis::full(2);
        assert!(duality_and_implication_suite(&s, &s, &Caps::default()).unwrap().is_empty());
    }

    #[test]
    fn line_and_its_complement() {
        let s1 = SubspaceBasis::span(3, &[col(&[1, -1, 0])]);
        let s2 = SubspaceBasis::span(3, &[col(&[1, 1, 0]), col(&[0, 0, 1])]);
        assert!(duality_and_implication_suite(&s1, &s2, &Caps::default()).unwrap().is_empty());
    }
}
