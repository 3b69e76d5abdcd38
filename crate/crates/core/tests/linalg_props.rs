mod common;

use common::{leibniz_det, matrix, small_rational, square_matrix};
use gmak::linalg::{feasible, rat, Feasibility, RationalMatrix, SignConstrainedSystem, SubspaceBasis};
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn det_matches_leibniz(m in square_matrix(5)) {
        prop_assert_eq!(m.det().unwrap(), leibniz_det(&m));
    }

    #[test]
    fn inverse_exists_iff_det_nonzero(m in square_matrix(4)) {
        let d = m.det().unwrap();
        match m.inverse() {
            Some(inv) => {
                prop_assert!(!d.is_zero());
                prop_assert_eq!(m.mul(&inv), RationalMatrix::identity(m.rows()));
                prop_assert_eq!(inv.det().unwrap() * d, rat(1));
            }
            None => prop_assert!(d.is_zero()),
        }
    }

    #[test]
    fn rank_nullity(m in (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.image_basis().len(), m.rank());
    }

    #[test]
    fn complement_is_orthogonal_and_complementary(
        m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
    ) {
        let s = SubspaceBasis::image_of(&m);
        let perp = s.orthogonal_complement();
        prop_assert_eq!(s.dim() + perp.dim(), s.ambient());
        for u in s.vectors() {
            for v in perp.vectors() {
                prop_assert!(gmak::linalg::dot(u, v).is_zero());
            }
        }
        prop_assert!(perp.orthogonal_complement().same_span(&s));
    }

    #[test]
    fn minor_multilinearity(m in matrix(3, 3), c in small_rational()) {
        let mut scaled = m.clone();
        for j in 0..3 {
            scaled[(1, j)] = &scaled[(1, j)] * &c;
        }
        prop_assert_eq!(scaled.det().unwrap(), m.det().unwrap() * c);
    }

    /// Every answer carries its own proof: a witness that satisfies the
    /// system, or multipliers that re-verify.
    #[test]
    fn feasibility_answers_verify(
        strict in (1usize..=3).prop_flat_map(|v| (Just(v), matrix(2, v))),
        nonneg_rows in 0usize..=2,
        zero_rows in 0usize..=1,
        extra in matrix(3, 3),
    ) {
        let (vars, strict) = strict;
        let take = |k: usize, offset: usize| {
            let rows: Vec<Vec<_>> = (0..k).map(|i| extra.row((i + offset) % 3)[..vars].to_vec()).collect();
            if rows.is_empty() { RationalMatrix::zeros(0, vars) } else { RationalMatrix::from_rows(rows) }
        };
        let sys = SignConstrainedSystem::from_blocks(vars, &strict, &take(nonneg_rows, 0), &take(zero_rows, 2));
        match feasible(&sys) {
            Feasibility::Feasible(z) => prop_assert!(sys.is_satisfied_by(&z)),
            Feasibility::Infeasible(cert) => prop_assert!(cert.verify(&sys)),
        }
    }
}
