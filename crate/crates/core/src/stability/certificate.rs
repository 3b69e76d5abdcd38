use std::collections::HashMap;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::StabilityError;
use crate::laplacian::{ParametricMatrix, Polynomial};
use crate::linalg::{Rational, RationalMatrix};

/// Which minor condition a certificate speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    P,
    P0,
    P0Plus(usize),
    SignSymmetric,
    Carlson(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    CertifiedTrue,
    CertifiedFalse,
    Inconclusive,
}

/// What went wrong at the counterexample point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A principal minor with the wrong sign (`< 0`, or `≤ 0` when positivity is required).
    PrincipalMinor { set: Vec<usize>, value: Rational },
    /// Symmetrically placed minors of opposite sign.
    OppositeMinors { alpha: Vec<usize>, beta: Vec<usize>, values: (Rational, Rational) },
    /// No principal minor of this order is positive.
    NoPositiveMinor { order: usize },
    /// No principal submatrix of this order is a P-matrix.
    NoPSubmatrix { order: usize },
}

/// A parameter point together with the condition that fails there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorCounterexample {
    pub lambda: Vec<Rational>,
    pub violation: Violation,
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl MinorCounterexample {
    pub fn to_json(&self, symbols: &[String]) -> Value {
        let lambda: serde_json::Map<String, Value> =
            symbols.iter().zip(&self.lambda).map(|(s, v)| (s.clone(), json!(v.to_string()))).collect();
        let violation = match &self.violation {
            Violation::PrincipalMinor { set, value } => {
                json!({"type": "principal_minor", "set": set, "value": value.to_string()})
            }
            Violation::OppositeMinors { alpha, beta, values } => json!({
                "type": "opposite_minors", "alpha": alpha, "beta": beta,
                "values": [values.0.to_string(), values.1.to_string()]
            }),
            Violation::NoPositiveMinor { order } => json!({"type": "no_positive_minor", "order": order}),
            Violation::NoPSubmatrix { order } => json!({"type": "no_p_submatrix", "order": order}),
        };
        json!({"lambda": lambda, "violation": violation})
    }

    /// Re-evaluates the violated condition at `lambda` from scratch.
    pub fn recheck(&self, m: &ParametricMatrix) -> bool {
        let a = m.eval(&self.lambda);
        let n = a.rows();
        match &self.violation {
            Violation::PrincipalMinor { set, value } => {
                a.minor(set, set).map(|v| v == *value && !v.is_positive()).unwrap_or(false)
            }
            Violation::OppositeMinors { alpha, beta, values } => {
                let x = a.minor(alpha, beta);
                let y = a.minor(beta, alpha);
                matches!((x, y), (Ok(x), Ok(y)) if (x.clone(), y.clone()) == *values && (&x * &y).is_negative())
            }
            Violation::NoPositiveMinor { order } => {
                subsets_of_size(n, *order).iter().all(|s| a.minor(s, s).map(|v| !v.is_positive()).unwrap_or(false))
            }
            Violation::NoPSubmatrix { order } => {
                subsets_of_size(n, *order).iter().all(|s| !is_p_numeric(&a, s))
            }
        }
    }
}

/// Outcome of a minor test on a constant or parametric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorCertificate {
    pub kind: CertificateKind,
    pub status: CertStatus,
    pub evidence: Value,
    pub counterexample: Option<MinorCounterexample>,
}

impl MinorCertificate {
    pub fn is_true(&self) -> bool {
        self.status == CertStatus::CertifiedTrue
    }

    pub fn is_false(&self) -> bool {
        self.status == CertStatus::CertifiedFalse
    }
}

/// Parameter points used to search for counterexamples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingOptions {
    pub seed: u64,
    pub random_points: usize,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { seed: 0, random_points: 200 }
    }
}

const GRID: [(i64, i64); 5] = [(1, 8), (1, 2), (1, 1), (2, 1), (8, 1)];
const MAX_GRID_POINTS: usize = 3125;

/// The all-ones point, the grid `{1/8, 1/2, 1, 2, 8}^vars` when it has at
/// most 3125 points, then seeded random positive rationals.
pub fn sample_points(vars: usize, opts: &SamplingOptions) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![Rational::one(); vars]];
    if vars == 0 {
        return out;
    }
    let grid_size = 5usize.checked_pow(vars as u32).filter(|&g| g <= MAX_GRID_POINTS);
    if let Some(g) = grid_size {
        for mut idx in 0..g {
            let mut p = Vec::with_capacity(vars);
            for _ in 0..vars {
                let (a, b) = GRID[idx % 5];
                p.push(Rational::new(a.into(), b.into()));
                idx /= 5;
            }
            out.push(p);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_points {
        out.push((0..vars).map(|_| Rational::new(rng.random_range(1..=64i64).into(), rng.random_range(1..=16i64).into())).collect());
    }
    out
}

pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..(1u64 << n)).filter(|m| m.count_ones() as usize == k).map(mask_to_set).collect()
}

fn mask_to_set(m: u64) -> Vec<usize> {
    (0..64).filter(|&i| m & (1 << i) != 0).collect()
}

fn set_to_mask(s: &[usize]) -> u64 {
    s.iter().fold(0, |m, &i| m | (1 << i))
}

fn is_p_numeric(a: &RationalMatrix, set: &[usize]) -> bool {
    let mask = set_to_mask(set);
    (1u64..(1u64 << a.rows()))
        .filter(|t| t & !mask == 0)
        .all(|t| {
            let s = mask_to_set(t);
            a.minor(&s, &s).map(|v| v.is_positive()).unwrap_or(false)
        })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Need {
    NonNeg,
    Pos,
}

fn certified(p: &Polynomial, need: Need) -> bool {
    match need {
        Need::NonNeg => p.coefficients_nonneg(),
        Need::Pos => p.coefficients_nonneg() && !p.is_zero(),
    }
}

fn violates(v: &Rational, need: Need) -> bool {
    match need {
        Need::NonNeg => v.is_negative(),
        Need::Pos => !v.is_positive(),
    }
}

/// `1` for nonnegative coefficients, `-1` for nonpositive ones, `0` for the
/// zero polynomial, `None` for mixed signs.
fn coefficient_sign(p: &Polynomial) -> Option<i8> {
    if p.is_zero() {
        Some(0)
    } else if p.coefficients_nonneg() {
        Some(1)
    } else if p.neg().coefficients_nonneg() {
        Some(-1)
    } else {
        None
    }
}

fn check_size(m: &ParametricMatrix) -> Result<(), StabilityError> {
    if m.n() > 16 {
        return Err(StabilityError::TooLarge { n: m.n(), cap: 16 });
    }
    Ok(())
}

/// All principal minors keyed by index mask.
fn principal_minors(m: &ParametricMatrix) -> Vec<(u64, Polynomial)> {
    (1u64..(1u64 << m.n()))
        .map(|mask| {
            let s = mask_to_set(mask);
            (mask, m.principal_minor(&s))
        })
        .collect()
}

fn poly_json(p: &Polynomial, symbols: &[String]) -> Value {
    json!(p.display_with(symbols).to_string())
}

/// P, P0 or P0⁺(r) for every parameter value, via coefficient signs, with a
/// sampled counterexample search otherwise.
fn principal_certificate(
    m: &ParametricMatrix,
    kind: CertificateKind,
    opts: &SamplingOptions,
) -> Result<MinorCertificate, StabilityError> {
    check_size(m)?;
    let n = m.n();
    let (need, order) = match kind {
        CertificateKind::P => (Need::Pos, 0),
        CertificateKind::P0 => (Need::NonNeg, 0),
        CertificateKind::P0Plus(r) => {
            if r == 0 || r > n {
                return Err(StabilityError::BadOrder { r, n });
            }
            (Need::NonNeg, r)
        }
        _ => unreachable!("principal kinds only"),
    };
    let minors = principal_minors(m);
    let uncertified: Vec<&(u64, Polynomial)> = minors.iter().filter(|(_, p)| !certified(p, need)).collect();
    let mut witnesses: Vec<Option<u64>> = vec![None; order];
    for (k, w) in witnesses.iter_mut().enumerate() {
        *w = minors
            .iter()
            .find(|(mask, p)| mask.count_ones() as usize == k + 1 && certified(p, Need::Pos))
            .map(|(mask, _)| *mask);
    }
    let syms = m.symbols();
    let witness_json: Vec<Value> = witnesses
        .iter()
        .enumerate()
        .filter_map(|(k, w)| {
            w.map(|mask| {
                let p = &minors.iter().find(|(mm, _)| *mm == mask).expect("present").1;
                json!({"order": k + 1, "set": mask_to_set(mask), "minor": poly_json(p, syms)})
            })
        })
        .collect();
    let mut evidence = json!({
        "principal_minors": minors.len(),
        "certified_by_coefficients": minors.len() - uncertified.len(),
        "method": "coefficient signs",
    });
    if order > 0 {
        evidence["positive_witnesses"] = json!(witness_json);
    }
    if uncertified.is_empty() && witnesses.iter().all(Option::is_some) {
        return Ok(MinorCertificate { kind, status: CertStatus::CertifiedTrue, evidence, counterexample: None });
    }
    let points = sample_points(syms.len(), opts);
    for lambda in &points {
        for (mask, p) in &uncertified {
            let v = p.eval(lambda);
            if violates(&v, need) {
                let violation = Violation::PrincipalMinor { set: mask_to_set(*mask), value: v };
                return Ok(MinorCertificate {
                    kind,
                    status: CertStatus::CertifiedFalse,
                    evidence,
                    counterexample: Some(MinorCounterexample { lambda: lambda.clone(), violation }),
                });
            }
        }
        for (k, w) in witnesses.iter().enumerate() {
            if w.is_none()
                && minors
                    .iter()
                    .filter(|(mask, _)| mask.count_ones() as usize == k + 1)
                    .all(|(_, p)| !p.eval(lambda).is_positive())
            {
                let violation = Violation::NoPositiveMinor { order: k + 1 };
                return Ok(MinorCertificate {
                    kind,
                    status: CertStatus::CertifiedFalse,
                    evidence,
                    counterexample: Some(MinorCounterexample { lambda: lambda.clone(), violation }),
                });
            }
        }
    }
    evidence["uncertified_sets"] = json!(uncertified.iter().map(|(mask, _)| mask_to_set(*mask)).collect::<Vec<_>>());
    evidence["missing_orders"] =
        json!(witnesses.iter().enumerate().filter(|(_, w)| w.is_none()).map(|(k, _)| k + 1).collect::<Vec<_>>());
    evidence["points_sampled"] = json!(points.len());
    Ok(MinorCertificate { kind, status: CertStatus::Inconclusive, evidence, counterexample: None })
}

/// `A[α|β]·A[β|α] ≥ 0` for all equal-size index sets, for every parameter value.
fn sign_symmetry_certificate(m: &ParametricMatrix, opts: &SamplingOptions) -> Result<MinorCertificate, StabilityError> {
    check_size(m)?;
    let n = m.n();
    let mut table: HashMap<u64, HashMap<u64, Polynomial>> = HashMap::new();
    for alpha in 1u64..(1u64 << n) {
        table.insert(alpha, m.minors_of_rows(&mask_to_set(alpha)));
    }
    let mut pairs = 0usize;
    let mut uncertified = Vec::new();
    for alpha in 1u64..(1u64 << n) {
        for beta in alpha + 1..(1u64 << n) {
            if alpha.count_ones() != beta.count_ones() {
                continue;
            }
            pairs += 1;
            let x = &table[&alpha][&beta];
            let y = &table[&beta][&alpha];
            let ok = match (coefficient_sign(x), coefficient_sign(y)) {
                (Some(0), _) | (_, Some(0)) => true,
                (Some(a), Some(b)) if a == b => true,
                _ => x.mul(y).coefficients_nonneg(),
            };
            if !ok {
                uncertified.push((alpha, beta, x, y));
            }
        }
    }
    let mut evidence = json!({
        "pairs": pairs,
        "certified_by_coefficients": pairs - uncertified.len(),
        "method": "coefficient signs",
    });
    let kind = CertificateKind::SignSymmetric;
    if uncertified.is_empty() {
        return Ok(MinorCertificate { kind, status: CertStatus::CertifiedTrue, evidence, counterexample: None });
    }
    let points = sample_points(m.symbols().len(), opts);
    for lambda in &points {
        for (alpha, beta, x, y) in &uncertified {
            let (vx, vy) = (x.eval(lambda), y.eval(lambda));
            if (&vx * &vy).is_negative() {
                let violation =
                    Violation::OppositeMinors { alpha: mask_to_set(*alpha), beta: mask_to_set(*beta), values: (vx, vy) };
                return Ok(MinorCertificate {
                    kind,
                    status: CertStatus::CertifiedFalse,
                    evidence,
                    counterexample: Some(MinorCounterexample { lambda: lambda.clone(), violation }),
                });
            }
        }
    }
    evidence["points_sampled"] = json!(points.len());
    evidence["uncertified_pairs"] =
        json!(uncertified.iter().map(|(a, b, _, _)| [mask_to_set(*a), mask_to_set(*b)]).collect::<Vec<_>>());
    Ok(MinorCertificate { kind, status: CertStatus::Inconclusive, evidence, counterexample: None })
}

/// Hypotheses of Carlson's criterion on `M = −A`: `A` sign-symmetric, all
/// order-`r` principal minors of `M` nonnegative, and some principal
/// `r x r` submatrix of `M` a P-matrix, with `r = rank A`. Every P-submatrix
/// of order `r` is listed. The rank is checked at `λ = 1` and rank drops at
/// sampled points are reported.
fn carlson_certificate(
    m: &ParametricMatrix,
    r: usize,
    opts: &SamplingOptions,
) -> Result<MinorCertificate, StabilityError> {
    check_size(m)?;
    let kind = CertificateKind::Carlson(r);
    let vars = m.symbols().len();
    let found = m.eval(&vec![Rational::one(); vars]).rank();
    if found != r {
        return Err(StabilityError::RankMismatch { expected: r, found });
    }
    let points = sample_points(vars, opts);
    let rank_drops: Vec<Vec<String>> =
        points.iter().filter(|p| m.eval(p).rank() != r).map(|p| strs(p)).collect();

    let ss = sign_symmetry_certificate(m, opts)?;
    let minors = principal_minors(m);
    let order_r: Vec<&(u64, Polynomial)> = minors.iter().filter(|(mask, _)| mask.count_ones() as usize == r).collect();
    let nonneg_uncertified: Vec<&&(u64, Polynomial)> = order_r.iter().filter(|(_, p)| !p.coefficients_nonneg()).collect();
    let positive: HashMap<u64, bool> = minors.iter().map(|(mask, p)| (*mask, certified(p, Need::Pos))).collect();
    let p_subsets: Vec<u64> = order_r
        .iter()
        .map(|(mask, _)| *mask)
        .filter(|&mask| (1u64..=mask).filter(|t| t & !mask == 0 && *t != 0).all(|t| positive[&t]))
        .collect();
    let mut evidence = json!({
        "rank": r,
        "sign_symmetric": ss.status,
        "sign_symmetry": ss.evidence,
        "order_r_minors": order_r.len(),
        "order_r_nonneg_certified": order_r.len() - nonneg_uncertified.len(),
        "p_subsets": p_subsets.iter().map(|&mk| mask_to_set(mk)).collect::<Vec<_>>(),
        "rank_drops": rank_drops,
        "points_sampled": points.len(),
    });
    if ss.is_false() {
        return Ok(MinorCertificate { kind, status: CertStatus::CertifiedFalse, evidence, counterexample: ss.counterexample });
    }
    for lambda in &points {
        for (mask, p) in &nonneg_uncertified {
            let v = p.eval(lambda);
            if v.is_negative() {
                let violation = Violation::PrincipalMinor { set: mask_to_set(*mask), value: v };
                return Ok(MinorCertificate {
                    kind,
                    status: CertStatus::CertifiedFalse,
                    evidence,
                    counterexample: Some(MinorCounterexample { lambda: lambda.clone(), violation }),
                });
            }
        }
        if p_subsets.is_empty() {
            let a = m.eval(lambda);
            if order_r.iter().all(|(mask, _)| !is_p_numeric(&a, &mask_to_set(*mask))) {
                let violation = Violation::NoPSubmatrix { order: r };
                return Ok(MinorCertificate {
                    kind,
                    status: CertStatus::CertifiedFalse,
                    evidence,
                    counterexample: Some(MinorCounterexample { lambda: lambda.clone(), violation }),
                });
            }
        }
    }
    let status = if ss.is_true() && nonneg_uncertified.is_empty() && !p_subsets.is_empty() {
        CertStatus::CertifiedTrue
    } else {
        CertStatus::Inconclusive
    };
    if status == CertStatus::Inconclusive {
        evidence["unresolved"] = json!({
            "sign_symmetry": !ss.is_true(),
            "order_r_minors": nonneg_uncertified.iter().map(|(mask, _)| mask_to_set(*mask)).collect::<Vec<_>>(),
            "p_subset_missing": p_subsets.is_empty(),
        });
    }
    Ok(MinorCertificate { kind, status, evidence, counterexample: None })
}

/// Certificate of `kind` for a λ-parametric matrix, valid for all `λ > 0`.
pub fn parametric_certificate(
    m: &ParametricMatrix,
    kind: CertificateKind,
    opts: &SamplingOptions,
) -> Result<MinorCertificate, StabilityError> {
    match kind {
        CertificateKind::P | CertificateKind::P0 | CertificateKind::P0Plus(_) => principal_certificate(m, kind, opts),
        CertificateKind::SignSymmetric => sign_symmetry_certificate(m, opts),
        CertificateKind::Carlson(r) => carlson_certificate(m, r, opts),
    }
}

fn exact(m: &RationalMatrix, kind: CertificateKind) -> Result<MinorCertificate, StabilityError> {
    if !m.is_square() {
        return Err(StabilityError::NotSquare);
    }
    parametric_certificate(&ParametricMatrix::constant(m), kind, &SamplingOptions::default())
}

/// All principal minors positive.
pub fn is_p_matrix(m: &RationalMatrix) -> Result<MinorCertificate, StabilityError> {
    exact(m, CertificateKind::P)
}

/// All principal minors nonnegative.
pub fn is_p0_matrix(m: &RationalMatrix) -> Result<MinorCertificate, StabilityError> {
    exact(m, CertificateKind::P0)
}

/// P0, and some principal minor of every order up to `r` positive.
pub fn is_p0_plus(m: &RationalMatrix, r: usize) -> Result<MinorCertificate, StabilityError> {
    exact(m, CertificateKind::P0Plus(r))
}

pub fn is_sign_symmetric(m: &RationalMatrix) -> Result<MinorCertificate, StabilityError> {
    exact(m, CertificateKind::SignSymmetric)
}

/// Carlson's criterion with input `M = −A` and `r = rank A`.
pub fn carlson_check(m: &RationalMatrix, r: usize) -> Result<MinorCertificate, StabilityError> {
    exact(m, CertificateKind::Carlson(r))
}

/// Subset index sets of order `r` that are principal P-submatrices, from a
/// Carlson certificate.
pub fn p_subsets(cert: &MinorCertificate) -> Vec<Vec<usize>> {
    serde_json::from_value(cert.evidence["p_subsets"].clone()).unwrap_or_default()
}
