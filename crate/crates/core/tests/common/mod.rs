#![allow(dead_code)]

use gmak::linalg::{rat, ratio, Rational, RationalMatrix, SubspaceBasis};
use gmak::network::{parse_network, GeneralizedNetwork};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(prop::collection::vec(small_rational(), cols), rows).prop_map(RationalMatrix::from_rows)
}

pub fn square_matrix(max: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

/// Small integer entries make coincidences (parallel rows, zero entries)
/// frequent, which is where sign enumeration is most fragile.
pub fn subspace(d: usize) -> impl Strategy<Value = SubspaceBasis> {
    (0..=d).prop_flat_map(move |k| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, d), k).prop_map(move |vs| {
            let vs: Vec<Vec<Rational>> = vs.into_iter().map(|v| v.into_iter().map(rat).collect()).collect();
            SubspaceBasis::span(d, &vs)
        })
    })
}

pub fn subspace_pair() -> impl Strategy<Value = (SubspaceBasis, SubspaceBasis)> {
    (1usize..=4).prop_flat_map(|d| (subspace(d), subspace(d)))
}

fn complex_text(species: &[&str], coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .zip(species)
        .filter(|(c, _)| **c != 0)
        .map(|(c, s)| if *c == 1 { s.to_string() } else { format!("{c} {s}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Random weakly reversible network as DSL text: one or two components, each
/// a directed cycle through its vertices plus optional extra edges.
/// Stoichiometric coefficients lie in `0..=2`, kinetic orders in `-1..=2`.
pub fn weakly_reversible_network() -> impl Strategy<Value = String> {
    let species = ["A", "B", "C"];
    (1usize..=3, 2usize..=4, prop::bool::ANY)
        .prop_flat_map(move |(n, m, split)| {
            let stoich = prop::collection::vec(prop::collection::vec(0i64..=2, n), m);
            let kinetic = prop::collection::vec(prop::collection::vec(-1i64..=2, n), m);
            let extra = prop::collection::vec((0..m, 0..m), 0..=3);
            (Just(n), Just(m), Just(split && m >= 4), stoich, kinetic, extra)
        })
        .prop_map(move |(n, m, split, stoich, kinetic, extra)| {
            let sp = &species[..n];
            let comps: Vec<Vec<usize>> = if split { vec![vec![0, 1], vec![2, 3]] } else { vec![(0..m).collect()] };
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for c in &comps {
                for w in 0..c.len() {
                    edges.push((c[w], c[(w + 1) % c.len()]));
                }
            }
            let comp_of = |v: usize| comps.iter().position(|c| c.contains(&v)).unwrap();
            for (s, t) in extra {
                if s != t && comp_of(s) == comp_of(t) && !edges.contains(&(s, t)) {
                    edges.push((s, t));
                }
            }
            let mut text = format!("species {}\n", sp.join(" "));
            for v in 0..m {
                text += &format!(
                    "vertex v{v}: {} | {}\n",
                    complex_text(sp, &stoich[v]),
                    complex_text(sp, &kinetic[v])
                );
            }
            for (s, t) in edges {
                text += &format!("edge v{s} -> v{t}\n");
            }
            text
        })
}

pub fn parse(text: &str) -> GeneralizedNetwork {
    parse_network(text).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

/// Leibniz expansion, independent of elimination.
pub fn leibniz_det(m: &RationalMatrix) -> Rational {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = rat(0);
    permutations(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = if inversions % 2 == 0 { rat(1) } else { rat(-1) };
        for (i, &j) in p.iter().enumerate() {
            term *= &m[(i, j)];
        }
        total += term;
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn diag(v: &[Rational]) -> RationalMatrix {
    let mut d = RationalMatrix::zeros(v.len(), v.len());
    for (i, x) in v.iter().enumerate() {
        d[(i, i)] = x.clone();
    }
    d
}

/// Displayed `−𝒥` of a fixture: cycle symbols and, for each symbol, the
/// integer coefficient matrix of that symbol. Each entry is linear in the
/// cycle parameters, so these matrices determine `−𝒥` exactly.
pub struct Display {
    pub symbols: Vec<&'static str>,
    pub coefficients: Vec<RationalMatrix>,
}

/// Entries as `(λ∘, λ23)` coefficient pairs.
pub fn signaling_display() -> Display {
    let e: [[(i64, i64); 4]; 4] = [
        [(1, 1), (-1, -1), (-1, -1), (0, 1)],
        [(-1, -1), (1, 1), (1, 1), (0, -1)],
        [(0, -1), (1, 1), (1, 1), (-1, -1)],
        [(0, 1), (-1, -1), (-1, -1), (1, 1)],
    ];
    let pick = |f: fn(&(i64, i64)) -> i64| {
        RationalMatrix::from_rows(e.iter().map(|r| r.iter().map(|c| rat(f(c))).collect()).collect())
    };
    Display { symbols: vec!["l_c1_c2_c3_c4", "l_c2_c3"], coefficients: vec![pick(|c| c.0), pick(|c| c.1)] }
}

/// Entries as `(λ∘, λ12, λ34)` coefficient triples.
pub fn futile_display() -> Display {
    const O: (i64, i64, i64) = (0, 0, 0);
    const A: (i64, i64, i64) = (1, 1, 0);
    const NA: (i64, i64, i64) = (-1, -1, 0);
    const B: (i64, i64, i64) = (1, 0, 1);
    const NB: (i64, i64, i64) = (-1, 0, -1);
    let e: [[(i64, i64, i64); 6]; 6] = [
        [A, NA, O, O, A, O],
        [NA, A, O, O, NA, O],
        [O, O, B, NB, O, B],
        [O, O, NB, B, O, NB],
        [A, (0, -1, 0), O, (-1, 0, 0), A, O],
        [O, (-1, 0, 0), B, (0, 0, -1), O, B],
    ];
    let pick = |f: fn(&(i64, i64, i64)) -> i64| {
        RationalMatrix::from_rows(e.iter().map(|r| r.iter().map(|c| rat(f(c))).collect()).collect())
    };
    // symbols are listed in the library's cycle order: 1⇄2, full cycle, 3⇄4
    Display {
        symbols: vec!["l_c1_c2", "l_c1_c2_c3_c4", "l_c3_c4"],
        coefficients: vec![pick(|c| c.1), pick(|c| c.0), pick(|c| c.2)],
    }
}

/// Compares a parametric matrix with a displayed one: same symbols, zero at
/// the origin, degree at most one, and the displayed coefficient matrix at
/// every unit vector.
pub fn matches_display(j: &gmak::laplacian::ParametricMatrix, d: &Display) -> Result<(), String> {
    if j.symbols() != d.symbols {
        return Err(format!("symbols {:?} vs {:?}", j.symbols(), d.symbols));
    }
    let v = d.symbols.len();
    for r in 0..j.n() {
        for c in 0..j.n() {
            if j.get(r, c).degree() > 1 {
                return Err(format!("entry ({r},{c}) is not linear"));
            }
        }
    }
    if !j.eval(&vec![rat(0); v]).is_zero() {
        return Err("nonzero constant part".into());
    }
    for (i, expected) in d.coefficients.iter().enumerate() {
        let unit: Vec<Rational> = (0..v).map(|k| rat((k == i) as i64)).collect();
        let got = j.eval(&unit);
        if &got != expected {
            return Err(format!("coefficient of {} differs:\n{got:?}\nvs\n{expected:?}", d.symbols[i]));
        }
    }
    Ok(())
}
