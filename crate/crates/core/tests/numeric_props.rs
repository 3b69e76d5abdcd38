mod common;

use common::{parse, weakly_reversible_network};
use gmak::fixtures;
use gmak::linalg::to_f64;
use gmak::network::{analyze_structure, parse_network_with};
use gmak::numeric::{
    compute_cbe, equilibrium_sample, jacobian_at, orthonormal_basis_of_s, sample_rates, vector_field, NumericOptions,
    RateSampling,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn rates() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 12).prop_map(|v| v.into_iter().map(|e| 10f64.powf(e)).collect())
}

fn point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n).prop_map(|v| v.into_iter().map(|e| 10f64.powf(e)).collect())
}

fn take(pool: &[f64], k: usize) -> Vec<f64> {
    pool.iter().cycle().take(k).copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobian_matches_central_differences((text, pool, x) in (weakly_reversible_network(), rates(), point(3))) {
        let net = parse(&text);
        let k = take(&pool, net.edges().len());
        let x = &x[..net.n()];
        let j = jacobian_at(&net, &k, x).unwrap();
        let scale = j.amax().max(1.0);
        for c in 0..net.n() {
            let h = 1e-6 * x[c];
            let (mut up, mut down) = (x.to_vec(), x.to_vec());
            up[c] += h;
            down[c] -= h;
            let fd = (vector_field(&net, &k, &up) - vector_field(&net, &k, &down)) / (2.0 * h);
            for r in 0..net.n() {
                prop_assert!((fd[r] - j[(r, c)]).abs() <= 1e-5 * scale, "({r},{c}): {} vs {}", fd[r], j[(r, c)]);
            }
        }
    }

    #[test]
    fn jacobian_image_lies_in_s((text, pool, x) in (weakly_reversible_network(), rates(), point(3))) {
        let net = parse(&text);
        let k = take(&pool, net.edges().len());
        let j = jacobian_at(&net, &k, &x[..net.n()]).unwrap();
        let b = orthonormal_basis_of_s(&net);
        let residual = &j - &b * (b.transpose() * &j);
        prop_assert!(residual.amax() <= 1e-9 * j.amax().max(1.0));
    }

    /// With zero kinetic deficiency a CBE exists for all rates, and the set
    /// of CBEs is `x* ∘ exp(S̃⊥)`.
    #[test]
    fn cbe_and_its_kinetic_class(
        (text, pool, shift) in (weakly_reversible_network(), rates(), prop::collection::vec(-1.0f64..1.0, 3))
    ) {
        let net = parse(&text);
        let st = analyze_structure(&net);
        prop_assume!(st.delta_tilde == 0);
        let k = take(&pool, net.edges().len());
        let opts = NumericOptions::default();
        let x = compute_cbe(&net, &k, &opts).unwrap();
        let flux = |p: &[f64]| -> f64 {
            let f = vector_field(&net, &k, p);
            let size: f64 = k.iter().sum::<f64>() * p.iter().fold(1.0f64, |a, v| a.max(*v)).powi(4);
            f.amax() / size.max(1.0)
        };
        prop_assert!(flux(&x) <= 1e-9);
        let perp = st.s_tilde_perp();
        let mut v = vec![0.0; net.n()];
        for (basis, s) in perp.vectors().iter().zip(&shift) {
            let norm: f64 = basis.iter().map(|b| to_f64(b).abs()).sum();
            for (vi, b) in v.iter_mut().zip(basis) {
                *vi += s * to_f64(b) / norm;
            }
        }
        let moved: Vec<f64> = x.iter().zip(&v).map(|(xi, vi)| xi * vi.exp()).collect();
        prop_assert!(flux(&moved) <= 1e-9);
    }
}

/// For a 2x2 P-matrix `M`, `D = diag(1, t)` with `t = -c/b` when `bc < 0` and
/// `t = |c/b|` otherwise makes `M D + D Mᵀ` positive definite.
fn diagonal_stability_witness(m: &DMatrix<f64>) -> Option<f64> {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    if !(a > 0.0 && d > 0.0 && a * d - b * c > 0.0) {
        return None;
    }
    let t = if b == 0.0 || c == 0.0 { 1.0 } else if b * c < 0.0 { -c / b } else { (c / b).abs() };
    let dm = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, t]));
    let sym = m * &dm + &dm * m.transpose();
    let ev = sym.symmetric_eigen().eigenvalues;
    (ev.min() > 0.0).then_some(t)
}

#[test]
fn lotka_jacobians_are_diagonally_stable() {
    let net = parse(fixtures::LOTKA);
    let opts = NumericOptions::default();
    for trial in 0..100 {
        let k = sample_rates(&net, RateSampling::LogUniform, 3, trial).unwrap();
        let x = compute_cbe(&net, &k, &opts).unwrap();
        let m = -jacobian_at(&net, &k, &x).unwrap();
        assert!(diagonal_stability_witness(&m).is_some(), "trial {trial}: {m}");
    }
}

#[test]
fn classical_lotka_is_a_center() {
    let overrides = [("alpha".to_string(), gmak::linalg::rat(1)), ("beta".to_string(), gmak::linalg::rat(1))].into();
    let net = parse_network_with(fixtures::LOTKA, &overrides).unwrap();
    let opts = NumericOptions::default();
    for trial in 0..20 {
        let k = sample_rates(&net, RateSampling::LogUniform, 5, trial).unwrap();
        let s = equilibrium_sample(&net, &k, &opts).unwrap();
        assert!(s.max_real.abs() <= 1e-8, "trial {trial}: {}", s.max_real);
        let m = -jacobian_at(&net, &k, &s.x_star).unwrap();
        // zero diagonal: a P0-matrix but not a P-matrix
        assert!(m[(0, 0)].abs().max(m[(1, 1)].abs()) <= 1e-9 * m.amax());
    }
}

#[test]
fn circulation_rates_admit_the_drawn_point() {
    let net = parse(fixtures::SIR);
    let opts = NumericOptions::default();
    for trial in 0..50 {
        let k = sample_rates(&net, RateSampling::Circulation, 9, trial).unwrap();
        let s = equilibrium_sample(&net, &k, &opts).unwrap();
        assert!(s.residual_norm <= 1e-9, "trial {trial}");
        assert!(vector_field(&net, &k, &s.x_star).amax() <= 1e-8 * k.iter().sum::<f64>());
    }
}
