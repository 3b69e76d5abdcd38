//! Floating-point cross-checks: complex-balanced equilibria from the
//! log-linear binomial system, the Jacobian, and its spectrum on `S`.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::laplacian::{enumerate_cycles, LaplacianError, DEFAULT_MAX_CYCLES};
use crate::linalg::to_f64;
use crate::network::{
    analyze_structure, connected_components, is_weakly_reversible, kinetic_order_matrix, stoichiometric_matrix,
    GeneralizedNetwork,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("network is not weakly reversible")]
    NotWeaklyReversible,
    #[error("no CBE for these rates (log-linear residual {residual:e})")]
    NoCbe { residual: f64 },
    #[error("expected {expected} rate constants, found {found}")]
    WrongRateCount { expected: usize, found: usize },
    #[error("rates and concentrations must be positive")]
    NonPositive,
    #[error("basis is not orthonormal (Gram residual {residual:e})")]
    NotOrthonormal { residual: f64 },
    #[error(transparent)]
    Laplacian(#[from] LaplacianError),
}

/// Tolerances for the numeric harness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericOptions {
    /// A spectrum is stable iff its largest real part is below `-tol_stable * (1 + spectral radius)`.
    pub tol_stable: f64,
    pub orthonormal_tol: f64,
    /// Largest relative binomial residual accepted for a CBE.
    pub residual_tol: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { tol_stable: 1e-8, orthonormal_tol: 1e-12, residual_tol: 1e-9 }
    }
}

fn laplacian_f64(net: &GeneralizedNetwork, rates: &[f64]) -> DMatrix<f64> {
    let m = net.m();
    let mut a = DMatrix::zeros(m, m);
    for (e, edge) in net.edges().iter().enumerate() {
        a[(edge.target, edge.source)] += rates[e];
        a[(edge.source, edge.source)] -= rates[e];
    }
    a
}

fn check_rates(net: &GeneralizedNetwork, rates: &[f64]) -> Result<(), NumericError> {
    if rates.len() != net.edges().len() {
        return Err(NumericError::WrongRateCount { expected: net.edges().len(), found: rates.len() });
    }
    if rates.iter().any(|&k| !(k > 0.0)) {
        return Err(NumericError::NonPositive);
    }
    Ok(())
}

/// Tree constants from principal cofactors, in floating point.
pub fn tree_constants_f64(net: &GeneralizedNetwork, rates: &[f64]) -> Result<Vec<f64>, NumericError> {
    check_rates(net, rates)?;
    if !is_weakly_reversible(net) {
        return Err(NumericError::NotWeaklyReversible);
    }
    let a = laplacian_f64(net, rates);
    let mut out = vec![0.0; net.m()];
    for comp in connected_components(net) {
        let p = comp.len();
        for (pos, &i) in comp.iter().enumerate() {
            let rest: Vec<usize> = comp.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &v)| v).collect();
            let sub = DMatrix::from_fn(rest.len(), rest.len(), |r, c| a[(rest[r], rest[c])]);
            let cof = sub.determinant();
            out[i] = if p % 2 == 0 { -cof } else { cof };
        }
    }
    Ok(out)
}

fn chain_edges(net: &GeneralizedNetwork) -> Vec<(usize, usize)> {
    connected_components(net).iter().flat_map(|c| c.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()).collect()
}

fn log_monomial(net: &GeneralizedNetwork, i: usize, ln_x: &[f64]) -> f64 {
    net.vertices()[i].kinetic_order().terms().map(|(s, c)| to_f64(c) * ln_x[s]).sum()
}

/// Largest relative binomial residual `|x^{ỹ(t)}/K_t − x^{ỹ(s)}/K_s| / max(...)`
/// over the chain edges.
pub fn binomial_residual(net: &GeneralizedNetwork, tree: &[f64], x: &[f64]) -> f64 {
    let ln_x: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    chain_edges(net)
        .iter()
        .map(|&(s, t)| {
            let a = (log_monomial(net, t, &ln_x) - tree[t].ln()).exp();
            let b = (log_monomial(net, s, &ln_x) - tree[s].ln()).exp();
            (a - b).abs() / a.max(b)
        })
        .fold(0.0, f64::max)
}

/// Positive CBE for the given rates: the minimum-norm solution of
/// `(Ỹ I_ℰ)ᵀ ln x = I_ℰᵀ ln K_k` over a chain graph `ℰ`, accepted when the
/// binomial residual is below `opts.residual_tol`.
pub fn compute_cbe(net: &GeneralizedNetwork, rates: &[f64], opts: &NumericOptions) -> Result<Vec<f64>, NumericError> {
    let tree = tree_constants_f64(net, rates)?;
    let edges = chain_edges(net);
    let yt = kinetic_order_matrix(net).to_f64();
    let n = net.n();
    if edges.is_empty() || n == 0 {
        return Ok(vec![1.0; n]);
    }
    let a = DMatrix::from_fn(edges.len(), n, |r, c| yt[(c, edges[r].1)] - yt[(c, edges[r].0)]);
    let b = DVector::from_fn(edges.len(), |r, _| tree[edges[r].1].ln() - tree[edges[r].0].ln());
    let svd = a.clone().svd(true, true);
    let ln_x = svd.solve(&b, 1e-12).map_err(|_| NumericError::NoCbe { residual: f64::INFINITY })?;
    let log_residual = (&a * &ln_x - &b).amax();
    let x: Vec<f64> = ln_x.iter().map(|v| v.exp()).collect();
    let residual = binomial_residual(net, &tree, &x);
    if residual > opts.residual_tol || !residual.is_finite() {
        return Err(NumericError::NoCbe { residual: log_residual.max(residual) });
    }
    Ok(x)
}

/// `J(x) = Y A_k diag(x^Ỹ) Ỹᵀ diag(1/x)`.
pub fn jacobian_at(net: &GeneralizedNetwork, rates: &[f64], x: &[f64]) -> Result<DMatrix<f64>, NumericError> {
    check_rates(net, rates)?;
    if x.len() != net.n() || x.iter().any(|&v| !(v > 0.0)) {
        return Err(NumericError::NonPositive);
    }
    let y = stoichiometric_matrix(net).to_f64();
    let yt = kinetic_order_matrix(net).to_f64();
    let ln_x: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let mono = DMatrix::from_diagonal(&DVector::from_fn(net.m(), |i, _| log_monomial(net, i, &ln_x).exp()));
    let inv_x = DMatrix::from_diagonal(&DVector::from_fn(net.n(), |i, _| 1.0 / x[i]));
    Ok(y * laplacian_f64(net, rates) * mono * yt.transpose() * inv_x)
}

/// Right-hand side `Y A_k x^Ỹ`.
pub fn vector_field(net: &GeneralizedNetwork, rates: &[f64], x: &[f64]) -> DVector<f64> {
    let y = stoichiometric_matrix(net).to_f64();
    let ln_x: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let mono = DVector::from_fn(net.m(), |i, _| log_monomial(net, i, &ln_x).exp());
    y * laplacian_f64(net, rates) * mono
}

/// Orthonormal basis of `S` (columns), from a QR factorization of an exact basis.
pub fn orthonormal_basis_of_s(net: &GeneralizedNetwork) -> DMatrix<f64> {
    let st = analyze_structure(net);
    let n = net.n();
    let k = st.s_basis.dim();
    if k == 0 {
        return DMatrix::zeros(n, 0);
    }
    let b = st.s_basis.matrix().to_f64();
    b.qr().q().columns(0, k).into_owned()
}

/// Eigenvalues of `Bᵀ J B` for `B` with orthonormal columns.
pub fn spectrum_on_s(j: &DMatrix<f64>, b: &DMatrix<f64>, opts: &NumericOptions) -> Result<Vec<Complex<f64>>, NumericError> {
    let k = b.ncols();
    if k == 0 {
        return Ok(Vec::new());
    }
    let gram = b.transpose() * b - DMatrix::identity(k, k);
    let residual = gram.amax();
    if residual > opts.orthonormal_tol {
        return Err(NumericError::NotOrthonormal { residual });
    }
    let r = b.transpose() * j * b;
    Ok(r.complex_eigenvalues().iter().copied().collect())
}

/// `(max real part, spectral radius, stable)`; the empty spectrum is stable.
pub fn stability_verdict(spectrum: &[Complex<f64>], opts: &NumericOptions) -> (f64, f64, bool) {
    if spectrum.is_empty() {
        return (f64::NEG_INFINITY, 0.0, true);
    }
    let max_re = spectrum.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let rho = spectrum.iter().map(|z| z.norm()).fold(0.0, f64::max);
    (max_re, rho, max_re < -opts.tol_stable * (1.0 + rho))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquilibriumSample {
    pub rates: Vec<f64>,
    pub x_star: Vec<f64>,
    pub residual_norm: f64,
    /// `(re, im)` pairs.
    pub spectrum: Vec<(f64, f64)>,
    pub max_real: f64,
    pub spectral_radius: f64,
    pub stable: bool,
}

/// CBE, residual and spectrum on `S` for one rate vector.
pub fn equilibrium_sample(
    net: &GeneralizedNetwork,
    rates: &[f64],
    opts: &NumericOptions,
) -> Result<EquilibriumSample, NumericError> {
    let x = compute_cbe(net, rates, opts)?;
    let tree = tree_constants_f64(net, rates)?;
    let residual_norm = binomial_residual(net, &tree, &x);
    let j = jacobian_at(net, rates, &x)?;
    let b = orthonormal_basis_of_s(net);
    let spec = spectrum_on_s(&j, &b, opts)?;
    let (max_real, spectral_radius, stable) = stability_verdict(&spec, opts);
    Ok(EquilibriumSample {
        rates: rates.to_vec(),
        x_star: x,
        residual_norm,
        spectrum: spec.iter().map(|z| (z.re, z.im)).collect(),
        max_real,
        spectral_radius,
        stable,
    })
}

/// How rate constants are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RateSampling {
    /// Each rate log-uniform on `[1e-2, 1e2]`.
    LogUniform,
    /// A random point `x` and a random positive circulation `κ` (sum of
    /// cycle weights), with `k_{i→j} = κ_{ij} / x^{ỹ(i)}`, so `x` is a CBE.
    /// Used when `δ̃ > 0`, where independent rates almost never admit one.
    Circulation,
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Rates for trial `trial`; each trial has its own ChaCha stream, so results
/// do not depend on evaluation order.
pub fn sample_rates(
    net: &GeneralizedNetwork,
    mode: RateSampling,
    seed: u64,
    trial: u64,
) -> Result<Vec<f64>, NumericError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    match mode {
        RateSampling::LogUniform => Ok((0..net.edges().len()).map(|_| log_uniform(&mut rng, 1e-2, 1e2)).collect()),
        RateSampling::Circulation => {
            let cycles = enumerate_cycles(net, DEFAULT_MAX_CYCLES)?;
            let x: Vec<f64> = (0..net.n()).map(|_| log_uniform(&mut rng, 1e-1, 1e1)).collect();
            let ln_x: Vec<f64> = x.iter().map(|v| v.ln()).collect();
            let mut flux = vec![0.0; net.edges().len()];
            for c in &cycles {
                let w = log_uniform(&mut rng, 1e-2, 1e2);
                for (s, t) in c.edges() {
                    let e = net.edge_index(s, t).expect("cycle edge exists");
                    flux[e] += w;
                }
            }
            if flux.iter().any(|&f| f <= 0.0) {
                return Err(NumericError::NotWeaklyReversible);
            }
            Ok(net
                .edges()
                .iter()
                .zip(&flux)
                .map(|(e, f)| f / log_monomial(net, e.source, &ln_x).exp())
                .collect())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSummary {
    pub trials: usize,
    pub seed: u64,
    pub sampling: RateSampling,
    pub stable: usize,
    pub unstable: usize,
    pub invalid: usize,
    /// Largest `max real part / (1 + spectral radius)` over valid samples.
    pub worst_margin: f64,
    /// Largest real part seen over valid samples.
    pub max_real: f64,
    pub max_residual: f64,
    pub samples: Vec<EquilibriumSample>,
}

/// Runs `trials` independent samples. Deterministic given `seed`.
pub fn sample_stability(
    net: &GeneralizedNetwork,
    trials: usize,
    seed: u64,
    opts: &NumericOptions,
) -> Result<SampleSummary, NumericError> {
    if !is_weakly_reversible(net) {
        return Err(NumericError::NotWeaklyReversible);
    }
    let mode = if analyze_structure(net).delta_tilde > 0 { RateSampling::Circulation } else { RateSampling::LogUniform };
    let mut summary = SampleSummary {
        trials,
        seed,
        sampling: mode,
        stable: 0,
        unstable: 0,
        invalid: 0,
        worst_margin: f64::NEG_INFINITY,
        max_real: f64::NEG_INFINITY,
        max_residual: 0.0,
        samples: Vec::with_capacity(trials),
    };
    for trial in 0..trials {
        let rates = sample_rates(net, mode, seed, trial as u64)?;
        match equilibrium_sample(net, &rates, opts) {
            Ok(s) => {
                if s.stable {
                    summary.stable += 1;
                } else {
                    summary.unstable += 1;
                }
                summary.worst_margin = summary.worst_margin.max(s.max_real / (1.0 + s.spectral_radius));
                summary.max_real = summary.max_real.max(s.max_real);
                summary.max_residual = summary.max_residual.max(s.residual_norm);
                summary.samples.push(s);
            }
            Err(NumericError::NoCbe { .. }) => summary.invalid += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::network::parse_network;

    #[test]
    fn two_cycle_mass_action() {
        let net = parse_network("species X\nvertex a: 0\nvertex b: X\nedge a -> b\nedge b -> a\n").unwrap();
        let opts = NumericOptions::default();
        let s = equilibrium_sample(&net, &[1.0, 1.0], &opts).unwrap();
        assert!((s.x_star[0] - 1.0).abs() < 1e-12);
        assert_eq!(s.spectrum.len(), 1);
        assert!((s.spectrum[0].0 + 1.0).abs() < 1e-12);
        let j = jacobian_at(&net, &[1.0, 3.0], &[0.7]).unwrap();
        assert!((j[(0, 0)] + 3.0).abs() < 1e-12);
    }

    #[test]
    fn lotka_half_is_stable_and_classical_is_center() {
        let opts = NumericOptions::default();
        let net = parse_network(fixtures::LOTKA).unwrap();
        let s = sample_stability(&net, 20, 7, &opts).unwrap();
        assert_eq!(s.stable, 20);
        assert!(s.max_residual < 1e-9);
        let mut ov = std::collections::BTreeMap::new();
        ov.insert("alpha".to_string(), crate::linalg::rat(1));
        ov.insert("beta".to_string(), crate::linalg::rat(1));
        let net = crate::network::parse_network_with(fixtures::LOTKA, &ov).unwrap();
        let s = sample_stability(&net, 20, 7, &opts).unwrap();
        assert_eq!(s.stable, 0);
        assert!(s.max_real.abs() <= 1e-8);
    }

    #[test]
    fn sir_uses_circulation_sampling() {
        let net = parse_network(fixtures::SIR).unwrap();
        let s = sample_stability(&net, 10, 1, &NumericOptions::default()).unwrap();
        assert_eq!(s.sampling, RateSampling::Circulation);
        assert_eq!(s.invalid, 0);
    }

    #[test]
    fn inconsistent_rates_have_no_cbe() {
        let net = parse_network(fixtures::SIR).unwrap();
        let r = compute_cbe(&net, &[1.0, 1.0, 1.0, 1.0, 1.0], &NumericOptions::default());
        assert!(matches!(r, Err(NumericError::NoCbe { .. })), "{r:?}");
    }

    #[test]
    fn deterministic_given_seed() {
        let net = parse_network(fixtures::SIGNALING).unwrap();
        let opts = NumericOptions::default();
        assert_eq!(sample_stability(&net, 3, 5, &opts).unwrap(), sample_stability(&net, 3, 5, &opts).unwrap());
    }

    #[test]
    fn empty_subspace_spectrum() {
        let b = DMatrix::<f64>::zeros(2, 0);
        let spec = spectrum_on_s(&DMatrix::zeros(2, 2), &b, &NumericOptions::default()).unwrap();
        assert!(spec.is_empty());
        assert!(stability_verdict(&spec, &NumericOptions::default()).2);
    }
}
