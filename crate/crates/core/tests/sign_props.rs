mod common;

use std::collections::BTreeSet;

use common::{positive_rational, subspace, subspace_pair};
use gmak::linalg::{rat, Rational, RationalMatrix, SubspaceBasis};
use gmak::sign::{
    duality_and_implication_suite, image_sign_set, realizable_in_subspace, sign_set_of_subspace, Caps, Region, SignVector,
};
use proptest::prelude::*;

fn signs(v: &[Rational]) -> String {
    SignVector::of(v).to_string()
}

fn combine(b: &SubspaceBasis, c: &[Rational]) -> Vec<Rational> {
    let mut out = vec![rat(0); b.ambient()];
    for (v, ci) in b.vectors().iter().zip(c) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * ci;
        }
    }
    out
}

/// Sign vectors of a subspace of dimension at most two, from explicit points.
///
/// In coefficient space the rows of the basis matrix cut the plane into
/// sectors. The candidate directions include every ray normal to a row plus
/// the four axis rays, so consecutive candidates are less than a half turn
/// apart and the sum of two of them lies inside each sector between them.
fn low_dim_oracle(b: &SubspaceBasis) -> BTreeSet<String> {
    let mut coeffs: Vec<Vec<Rational>> = vec![vec![rat(0); b.dim()]];
    match b.dim() {
        0 => {}
        1 => coeffs.extend([vec![rat(1)], vec![rat(-1)]]),
        2 => {
            let mut dirs: Vec<Vec<Rational>> = vec![
                vec![rat(1), rat(0)],
                vec![rat(-1), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(0), rat(-1)],
            ];
            for i in 0..b.ambient() {
                let (p, q) = (b.vectors()[0][i].clone(), b.vectors()[1][i].clone());
                if p != rat(0) || q != rat(0) {
                    dirs.push(vec![-q.clone(), p.clone()]);
                    dirs.push(vec![q, -p]);
                }
            }
            for u in &dirs {
                coeffs.push(u.clone());
                for v in &dirs {
                    let s = vec![&u[0] + &v[0], &u[1] + &v[1]];
                    if s != vec![rat(0), rat(0)] {
                        coeffs.push(s);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    coeffs.iter().map(|c| signs(&combine(b, c))).collect()
}

fn all_sign_vectors(d: usize) -> Vec<Vec<i8>> {
    (0..3usize.pow(d as u32))
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let s = (k % 3) as i8 - 1;
                    k /= 3;
                    s
                })
                .collect()
        })
        .collect()
}

fn as_string(s: &[i8]) -> String {
    s.iter().map(|x| match x { 1 => '+', -1 => '-', _ => '0' }).collect()
}

fn parse(s: &str) -> Vec<i8> {
    s.chars().map(|c| match c { '+' => 1, '-' => -1, _ => 0 }).collect()
}

fn sign_orthogonal(a: &[i8], b: &[i8]) -> bool {
    let products: Vec<i8> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    products.iter().all(|&p| p == 0) || (products.contains(&1) && products.contains(&-1))
}

/// Brute-force sign set: direct for dimension at most two, otherwise through
/// the orthogonal complement and sign orthogonality.
fn oracle(b: &SubspaceBasis) -> BTreeSet<String> {
    if b.dim() <= 2 {
        return low_dim_oracle(b);
    }
    let perp: Vec<Vec<i8>> = low_dim_oracle(&b.orthogonal_complement()).iter().map(|s| parse(s)).collect();
    all_sign_vectors(b.ambient())
        .into_iter()
        .filter(|s| perp.iter().all(|t| sign_orthogonal(s, t)))
        .map(|s| as_string(&s))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn enumeration_matches_brute_force(b in (1usize..=4).prop_flat_map(subspace)) {
        let got: BTreeSet<String> =
            sign_set_of_subspace(&b, &Caps::default()).unwrap().iter().map(ToString::to_string).collect();
        prop_assert_eq!(got, oracle(&b));
    }

    #[test]
    fn covector_axioms(b in (1usize..=4).prop_flat_map(subspace)) {
        let set = sign_set_of_subspace(&b, &Caps::default()).unwrap();
        prop_assert!(set.contains(&SignVector::zero(b.ambient())));
        prop_assert!(set.is_closed_under_negation());
        for x in set.iter() {
            for y in set.iter() {
                let composed: Vec<_> = x.entries().iter().zip(y.entries())
                    .map(|(a, c)| if a.as_char() == '0' { *c } else { *a })
                    .collect();
                prop_assert!(set.contains(&SignVector::new(composed)), "{} o {}", x, y);
            }
        }
    }

    #[test]
    fn positive_coordinate_scaling_preserves_signs(
        (b, factors) in (1usize..=4).prop_flat_map(|d| (subspace(d), prop::collection::vec(positive_rational(), d)))
    ) {
        let scaled: Vec<Vec<Rational>> =
            b.vectors().iter().map(|v| v.iter().zip(&factors).map(|(x, f)| x * f).collect()).collect();
        let caps = Caps::default();
        prop_assert_eq!(
            sign_set_of_subspace(&SubspaceBasis::span(b.ambient(), &scaled), &caps).unwrap(),
            sign_set_of_subspace(&b, &caps).unwrap()
        );
    }

    /// `B D` maps each open orthant onto the same image as `B`.
    #[test]
    fn positive_column_scaling_preserves_orthant_images(
        (b, factors, orthant) in (1usize..=4).prop_flat_map(subspace)
            .prop_filter("nonzero subspace", |b| b.dim() > 0)
            .prop_flat_map(|b| {
                let k = b.dim();
                (Just(b), prop::collection::vec(positive_rational(), k), prop::collection::vec(prop::bool::ANY, k))
            })
    ) {
        let caps = Caps::default();
        let signs = SignVector::of(&orthant.iter().map(|&p| rat(if p { 1 } else { -1 })).collect::<Vec<_>>());
        let image = |basis: &SubspaceBasis| {
            let region = Region::Orthant { basis: basis.matrix(), signs: signs.clone(), closed: false };
            image_sign_set(&RationalMatrix::identity(basis.ambient()), &region, &caps).unwrap()
        };
        prop_assert_eq!(image(&b.scaled(&factors)), image(&b));
    }

    #[test]
    fn witnesses_realize_their_sign(b in (1usize..=4).prop_flat_map(subspace)) {
        for s in all_sign_vectors(b.ambient()) {
            let sigma = SignVector::of(&s.iter().map(|&x| rat(x as i64)).collect::<Vec<_>>());
            let expected = oracle(&b).contains(&as_string(&s));
            match realizable_in_subspace(&sigma, &b).unwrap() {
                Some(x) => {
                    prop_assert!(expected);
                    prop_assert!(b.contains(&x));
                    prop_assert_eq!(SignVector::of(&x), sigma);
                }
                None => prop_assert!(!expected),
            }
        }
    }
}

proptest! {
    // At least 200 random pairs in ambient dimension at most 4.
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn alternatives_duality_and_implications((s1, s2) in subspace_pair()) {
        let violations = duality_and_implication_suite(&s1, &s2, &Caps::default()).unwrap();
        prop_assert!(violations.is_empty(), "{:?}", violations);
    }
}

#[test]
fn oracle_sanity() {
    let line = SubspaceBasis::span(2, &[vec![rat(1), rat(1)]]);
    assert_eq!(oracle(&line), ["++", "--", "00"].iter().map(|s| s.to_string()).collect());
    let plane = SubspaceBasis::span(3, &[vec![rat(1), rat(-1), rat(0)], vec![rat(0), rat(1), rat(-1)]]);
    // sum-zero plane: zero, or both signs present
    let o = oracle(&plane);
    assert_eq!(o.len(), 1 + 26 - 2 * 7);
    assert!(!o.contains("++0") && !o.contains("+++"));
    let hyper = SubspaceBasis::span(
        4,
        &[vec![rat(1), rat(-1), rat(0), rat(0)], vec![rat(0), rat(1), rat(-1), rat(0)], vec![rat(0), rat(0), rat(1), rat(-1)]],
    );
    assert_eq!(oracle(&hyper).len(), 1 + 80 - 2 * 15);
}
