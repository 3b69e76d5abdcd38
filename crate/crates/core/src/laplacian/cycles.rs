use num_traits::{One, Zero};

use super::{laplacian, tree_constants, LaplacianError, ParametricMatrix, RateAssignment};
use crate::linalg::{feasible, Rational, RationalMatrix, SignConstrainedSystem};
use crate::network::{kinetic_order_matrix, stoichiometric_matrix, GeneralizedNetwork};

pub const DEFAULT_MAX_CYCLES: usize = 10_000;

/// A simple directed cycle, rotated so its smallest vertex comes first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Rotates `vertices` into canonical form. Panics on an empty list.
    pub fn new(vertices: Vec<usize>) -> Self {
        let start = (0..vertices.len()).min_by_key(|&i| vertices[i]).expect("nonempty cycle");
        let mut v = vertices[start..].to_vec();
        v.extend_from_slice(&vertices[..start]);
        Cycle { vertices: v }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `(i, next)` along the cycle.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Parameter name `l_<v1>_<v2>_...` built from vertex names.
    pub fn symbol(&self, net: &GeneralizedNetwork) -> String {
        let names: Vec<&str> = self.vertices.iter().map(|&v| net.vertices()[v].name.as_str()).collect();
        format!("l_{}", names.join("_"))
    }
}

/// Every simple directed cycle exactly once, sorted. A cycle is found from its
/// smallest vertex `s` by a depth-first search restricted to vertices `> s`
/// that can still reach `s`.
pub fn enumerate_cycles(net: &GeneralizedNetwork, cap: usize) -> Result<Vec<Cycle>, LaplacianError> {
    let m = net.m();
    let succ = net.successors();
    let mut pred = vec![Vec::new(); m];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    let mut out = Vec::new();
    for s in 0..m {
        let mut reach = vec![false; m];
        reach[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &pred[v] {
                if u > s && !reach[u] {
                    reach[u] = true;
                    stack.push(u);
                }
            }
        }
        let mut path = vec![s];
        let mut on_path = vec![false; m];
        on_path[s] = true;
        search(s, s, &succ, &reach, &mut path, &mut on_path, &mut out, cap)?;
    }
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    s: usize,
    v: usize,
    succ: &[Vec<usize>],
    reach: &[bool],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
    cap: usize,
) -> Result<(), LaplacianError> {
    for &w in &succ[v] {
        if w == s {
            if out.len() == cap {
                return Err(LaplacianError::TooManyCycles { cap });
            }
            out.push(Cycle::new(path.clone()));
        } else if w > s && reach[w] && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            search(s, w, succ, reach, path, on_path, out, cap)?;
            on_path[w] = false;
            path.pop();
        }
    }
    Ok(())
}

/// Laplacian of the cycle with unit labels on an `m`-vertex graph.
pub fn cycle_laplacian(m: usize, cycle: &Cycle) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(m, m);
    for (i, j) in cycle.edges() {
        a[(j, i)] += Rational::one();
        a[(i, i)] -= Rational::one();
    }
    a
}

/// Positive `λ_{k,C}` with `A_k diag(K_k) = Σ_C λ_{k,C} A_C`, found by an
/// exact strict feasibility problem and checked.
pub fn cycle_decomposition(
    net: &GeneralizedNetwork,
    k: &RateAssignment,
    cycles: &[Cycle],
) -> Result<Vec<Rational>, LaplacianError> {
    let kk = tree_constants(net, k)?;
    let m = net.m();
    let mut target = laplacian(net, k);
    for i in 0..m {
        for j in 0..m {
            target[(i, j)] *= &kk[j];
        }
    }
    let lap: Vec<RationalMatrix> = cycles.iter().map(|c| cycle_laplacian(m, c)).collect();
    // Variables (λ_1, ..., λ_c, t): Σ λ_C A_C − t·target = 0 with λ, t > 0.
    let vars = cycles.len() + 1;
    let mut sys = SignConstrainedSystem::new(vars);
    for i in 0..m {
        for j in 0..m {
            let mut row: Vec<Rational> = lap.iter().map(|a| a[(i, j)].clone()).collect();
            row.push(-target[(i, j)].clone());
            if row.iter().any(|v| !v.is_zero()) {
                sys.push_zero(row);
            }
        }
    }
    for v in 0..vars {
        let mut row = vec![Rational::zero(); vars];
        row[v] = Rational::one();
        sys.push_strict(row);
    }
    let z = feasible(&sys).into_witness().ok_or(LaplacianError::NoCycleDecomposition)?;
    let t = z[cycles.len()].clone();
    let lambda: Vec<Rational> = z[..cycles.len()].iter().map(|v| v / &t).collect();
    let mut sum = RationalMatrix::zeros(m, m);
    for (l, a) in lambda.iter().zip(&lap) {
        sum = sum.add(&a.scale(l));
    }
    if sum != target {
        return Err(LaplacianError::NoCycleDecomposition);
    }
    Ok(lambda)
}

/// `𝒥(λ) = Y (Σ_C λ_C A_C) Ỹᵀ` with one free parameter per cycle.
pub fn parametric_reduced_jacobian(net: &GeneralizedNetwork, cycles: &[Cycle]) -> ParametricMatrix {
    let y = stoichiometric_matrix(net);
    let yt = kinetic_order_matrix(net).transpose();
    let symbols: Vec<String> = cycles.iter().map(|c| c.symbol(net)).collect();
    if cycles.is_empty() {
        return ParametricMatrix::zeros(symbols, net.n());
    }
    let mats: Vec<RationalMatrix> = cycles.iter().map(|c| y.mul(&cycle_laplacian(net.m(), c)).mul(&yt)).collect();
    ParametricMatrix::linear_combination(symbols, &mats)
}
