
use super::vector::{ClosureMode, Sign, SignSet, SignVector};
use super::{Caps, SignError};
use crate::linalg::{dot, feasible, Rational, RationalMatrix, SignConstrainedSystem, SubspaceBasis};

fn neg_row(row: &[Rational]) -> Vec<Rational> {
    row.iter().map(|v| -v).collect()
}

/// Adds `sign(row · w) = s`.
pub(crate) fn push_sign(sys: &mut SignConstrainedSystem, s: Sign, row: &[Rational]) {
    match s {
        Sign::Plus => sys.push_strict(row.to_vec()),
        Sign::Minus => sys.push_strict(neg_row(row)),
        Sign::Zero => sys.push_zero(row.to_vec()),
    };
}

/// Adds `sign(row · w) ∈ {0, s}`.
pub(crate) fn push_weak_sign(sys: &mut SignConstrainedSystem, s: Sign, row: &[Rational]) {
    match s {
        Sign::Plus => sys.push_nonneg(row.to_vec()),
        Sign::Minus => sys.push_nonneg(neg_row(row)),
        Sign::Zero => sys.push_zero(row.to_vec()),
    };
}

/// All sign vectors `sign(R w)` for `w` satisfying `base`, each with a witness `w`.
///
/// Depth-first over sign prefixes. A feasible prefix's witness already fixes
/// one child, so only the other two children need a feasibility call.
pub(crate) fn enumerate_signs(
    base: &SignConstrainedSystem,
    rows: &[Vec<Rational>],
) -> Vec<(SignVector, Vec<Rational>)> {
    let mut out = Vec::new();
    let Some(w) = feasible(base).into_witness() else {
        return out;
    };
    let mut prefix = Vec::with_capacity(rows.len());
    descend(base, rows, &mut prefix, w, &mut out);
    out
}

fn descend(
    sys: &SignConstrainedSystem,
    rows: &[Vec<Rational>],
    prefix: &mut Vec<Sign>,
    witness: Vec<Rational>,
    out: &mut Vec<(SignVector, Vec<Rational>)>,
) {
    let depth = prefix.len();
    if depth == rows.len() {
        out.push((SignVector::new(prefix.clone()), witness));
        return;
    }
    let row = &rows[depth];
    let free = Sign::of(&dot(row, &witness));
    for s in [Sign::Minus, Sign::Zero, Sign::Plus] {
        let mut child = sys.clone();
        push_sign(&mut child, s, row);
        let w = if s == free {
            Some(witness.clone())
        } else {
            feasible(&child).into_witness()
        };
        if let Some(w) = w {
            prefix.push(s);
            descend(&child, rows, prefix, w, out);
            prefix.pop();
        }
    }
}

fn check_cap(what: &str, size: usize, cap: usize) -> Result<(), SignError> {
    if size > cap {
        Err(SignError::EnumerationTooLarge { what: what.to_string(), size, cap })
    } else {
        Ok(())
    }
}

/// Decides `σ ∈ sign(span B)`; on success returns `x ∈ span B` with `sign(x) = σ`.
pub fn realizable_in_subspace(
    sigma: &SignVector,
    b: &SubspaceBasis,
) -> Result<Option<Vec<Rational>>, SignError> {
    if sigma.len() != b.ambient() {
        return Err(SignError::DimensionMismatch { expected: b.ambient(), found: sigma.len() });
    }
    let m = b.matrix();
    let mut sys = SignConstrainedSystem::new(b.dim());
    for i in 0..m.rows() {
        push_sign(&mut sys, sigma.get(i), m.row(i));
    }
    Ok(feasible(&sys).into_witness().map(|c| m.mul_vec(&c)))
}

/// `sign(span B)`.
pub fn sign_set_of_subspace(b: &SubspaceBasis, caps: &Caps) -> Result<SignSet, SignError> {
    check_cap("subspace ambient dimension", b.ambient(), caps.max_subspace_dim)?;
    let m = b.matrix();
    let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let found = enumerate_signs(&SignConstrainedSystem::new(b.dim()), &rows);
    Ok(SignSet::from_members(b.ambient(), found.into_iter().map(|(s, _)| s))
        .with_provenance(format!("sign of a {}-dimensional subspace", b.dim())))
}

/// A subset of `R^n` whose image under a linear map is sign-enumerated.
#[derive(Clone, Debug)]
pub enum Region {
    /// `{0} ⊂ R^n`.
    Zero(usize),
    /// `R^n`.
    Full(usize),
    /// `B(O)` (open) or `B(Ō)` (closed) for the orthant `O` of `R^s` with the
    /// given signs; zero entries pin the coordinate to 0.
    Orthant { basis: RationalMatrix, signs: SignVector, closed: bool },
    /// `Σ(B(O)) = sign⁻¹(sign(B(O)))` for an open orthant `O`.
    SigmaOfOrthant { basis: RationalMatrix, signs: SignVector },
    /// `Σ(S) = sign⁻¹(sign(S))`.
    SigmaOfSubspace(SubspaceBasis),
}

/// One convex cone `{P w : w satisfies sys}`.
struct Piece {
    param: RationalMatrix,
    sys: SignConstrainedSystem,
}

fn sign_cone(rho: &SignVector) -> Piece {
    let n = rho.len();
    let id = RationalMatrix::identity(n);
    let mut sys = SignConstrainedSystem::new(n);
    for i in 0..n {
        push_sign(&mut sys, rho.get(i), id.row(i));
    }
    Piece { param: id, sys }
}

fn orthant_system(signs: &SignVector, closed: bool) -> SignConstrainedSystem {
    let s = signs.len();
    let id = RationalMatrix::identity(s);
    let mut sys = SignConstrainedSystem::new(s);
    for i in 0..s {
        if closed {
            push_weak_sign(&mut sys, signs.get(i), id.row(i));
        } else {
            push_sign(&mut sys, signs.get(i), id.row(i));
        }
    }
    sys
}

impl Region {
    pub fn ambient(&self) -> usize {
        match self {
            Region::Zero(n) | Region::Full(n) => *n,
            Region::Orthant { basis, .. } | Region::SigmaOfOrthant { basis, .. } => basis.rows(),
            Region::SigmaOfSubspace(b) => b.ambient(),
        }
    }

    /// Sign vectors realized by points of the region.
    pub fn sign_set(&self, caps: &Caps) -> Result<SignSet, SignError> {
        image_sign_set(&RationalMatrix::identity(self.ambient()), self, caps)
    }

    fn pieces(&self, caps: &Caps) -> Result<Vec<Piece>, SignError> {
        Ok(match self {
            Region::Zero(n) => vec![Piece { param: RationalMatrix::zeros(*n, 0), sys: SignConstrainedSystem::new(0) }],
            Region::Full(n) => {
                vec![Piece { param: RationalMatrix::identity(*n), sys: SignConstrainedSystem::new(*n) }]
            }
            Region::Orthant { basis, signs, closed } => {
                if signs.len() != basis.cols() {
                    return Err(SignError::DimensionMismatch { expected: basis.cols(), found: signs.len() });
                }
                vec![Piece { param: basis.clone(), sys: orthant_system(signs, *closed) }]
            }
            Region::SigmaOfOrthant { basis, signs } => {
                if signs.len() != basis.cols() {
                    return Err(SignError::DimensionMismatch { expected: basis.cols(), found: signs.len() });
                }
                check_cap("orthant-image ambient dimension", basis.rows(), caps.max_subspace_dim)?;
                let rows: Vec<Vec<Rational>> = (0..basis.rows()).map(|i| basis.row(i).to_vec()).collect();
                enumerate_signs(&orthant_system(signs, false), &rows)
                    .into_iter()
                    .map(|(rho, _)| sign_cone(&rho))
                    .collect()
            }
            Region::SigmaOfSubspace(b) => {
                sign_set_of_subspace(b, caps)?.iter().map(sign_cone).collect()
            }
        })
    }
}

/// `sign(Mᵀ(region))`; `M` has `region.ambient()` rows.
pub fn image_sign_set(m: &RationalMatrix, region: &Region, caps: &Caps) -> Result<SignSet, SignError> {
    if m.rows() != region.ambient() {
        return Err(SignError::DimensionMismatch { expected: region.ambient(), found: m.rows() });
    }
    check_cap("image dimension", m.cols(), caps.max_omega)?;
    let mut out = SignSet::new(m.cols(), "image of a region");
    for piece in region.pieces(caps)? {
        let rows = m.transpose().mul(&piece.param);
        let rows: Vec<Vec<Rational>> = (0..rows.rows()).map(|i| rows.row(i).to_vec()).collect();
        for (s, _) in enumerate_signs(&piece.sys, &rows) {
            out.insert(s);
        }
    }
    Ok(out)
}

/// Decides `σ ∈ sign(Mᵀ(region))^mode` by feasibility calls, without
/// enumerating the image. Returns the member `τ` of the image that covers `σ`.
pub fn image_closure_witness(
    m: &RationalMatrix,
    region: &Region,
    mode: ClosureMode,
    sigma: &SignVector,
    caps: &Caps,
) -> Result<Option<SignVector>, SignError> {
    if m.rows() != region.ambient() {
        return Err(SignError::DimensionMismatch { expected: region.ambient(), found: m.rows() });
    }
    if sigma.len() != m.cols() {
        return Err(SignError::DimensionMismatch { expected: m.cols(), found: sigma.len() });
    }
    for piece in region.pieces(caps)? {
        let img = m.transpose().mul(&piece.param);
        let rows: Vec<&[Rational]> = (0..img.rows()).map(|i| img.row(i)).collect();
        let image_sign = |w: &[Rational]| SignVector::of(&img.mul_vec(w));
        let want_lower = mode == ClosureMode::Lower || mode == ClosureMode::Total;
        let want_upper = mode != ClosureMode::Lower;
        let nonzero_required = mode != ClosureMode::Lower;

        if want_lower {
            // τ ≥ σ: strict on supp σ, free elsewhere.
            if sigma.is_zero() && nonzero_required {
                for (j, row) in rows.iter().enumerate() {
                    for s in [Sign::Plus, Sign::Minus] {
                        let mut sys = piece.sys.clone();
                        push_sign(&mut sys, s, row);
                        if let Some(w) = feasible(&sys).into_witness() {
                            let t = image_sign(&w);
                            debug_assert!(t.get(j) != Sign::Zero);
                            return Ok(Some(t));
                        }
                    }
                }
            } else {
                let mut sys = piece.sys.clone();
                for i in sigma.support() {
                    push_sign(&mut sys, sigma.get(i), rows[i]);
                }
                if let Some(w) = feasible(&sys).into_witness() {
                    return Ok(Some(image_sign(&w)));
                }
            }
        }
        if want_upper {
            // Nonzero τ ≤ σ: zero off supp σ, sign in {0, σ_i} on supp, one entry strict.
            let mut sys = piece.sys.clone();
            for (i, row) in rows.iter().enumerate() {
                push_weak_sign(&mut sys, sigma.get(i), row);
            }
            for j in sigma.support() {
                let mut strict = sys.clone();
                push_sign(&mut strict, sigma.get(j), rows[j]);
                if let Some(w) = feasible(&strict).into_witness() {
                    return Ok(Some(image_sign(&w)));
                }
            }
        }
    }
    Ok(None)
}

/// `sign(S) ⊆ sign(T)^↓` tested through feasibility on `T`, one call per member of `sign(S)`.
pub(crate) fn in_lower_closure_of_subspace(
    sigma: &SignVector,
    t: &SubspaceBasis,
) -> Option<Vec<Rational>> {
    let m = t.matrix();
    let mut sys = SignConstrainedSystem::new(t.dim());
    for i in sigma.support() {
        push_sign(&mut sys, sigma.get(i), m.row(i));
    }
    feasible(&sys).into_witness().map(|c| m.mul_vec(&c))
}
