use num_traits::One;

use super::model::GeneralizedNetwork;
use crate::linalg::{Rational, RationalMatrix, SubspaceBasis};

/// Matrices and subspaces derived from a network.
///
/// Column order of `omega_incidence` follows `omega_pairs`: one column
/// `e_j - e_i` per unordered pair `i < j` of vertices in the same connected
/// component, in lexicographic order. The reverse orientation carries the
/// negated sign data, so it is not stored.
#[derive(Clone, Debug)]
pub struct NetworkStructure {
    /// Stoichiometric complexes as columns (`n x m`).
    pub y: RationalMatrix,
    /// Kinetic-order complexes as columns (`n x m`).
    pub y_tilde: RationalMatrix,
    /// Incidence matrix (`m x |E|`).
    pub incidence: RationalMatrix,
    /// Source matrix (`m x |E|`).
    pub source: RationalMatrix,
    pub omega_pairs: Vec<(usize, usize)>,
    pub omega_incidence: RationalMatrix,
    /// Connected components, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    /// Strongly connected components, same conventions.
    pub strong_components: Vec<Vec<usize>>,
    /// Stoichiometric subspace `S = im(Y I_E)`.
    pub s_basis: SubspaceBasis,
    /// Kinetic-order subspace `S~ = im(Y~ I_E)`.
    pub s_tilde_basis: SubspaceBasis,
    pub delta: usize,
    pub delta_tilde: usize,
    pub weakly_reversible: bool,
}

impl NetworkStructure {
    pub fn n(&self) -> usize {
        self.y.rows()
    }

    pub fn m(&self) -> usize {
        self.y.cols()
    }

    /// Number of connected components, `ℓ`.
    pub fn l(&self) -> usize {
        self.components.len()
    }

    /// `Y I_Ω`, whose transpose maps `z` to the stoichiometric evaluation order.
    pub fn y_omega(&self) -> RationalMatrix {
        self.y.mul(&self.omega_incidence)
    }

    /// `Y~ I_Ω`.
    pub fn y_tilde_omega(&self) -> RationalMatrix {
        self.y_tilde.mul(&self.omega_incidence)
    }

    /// `S~⊥ = ker (Y~ I_E)ᵀ`.
    pub fn s_tilde_perp(&self) -> SubspaceBasis {
        self.s_tilde_basis.orthogonal_complement()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&v))
            .expect("every vertex lies in a component")
    }
}

fn reachability(net: &GeneralizedNetwork) -> Vec<Vec<bool>> {
    let adj = net.successors();
    let m = net.m();
    (0..m)
        .map(|s| {
            let mut seen = vec![false; m];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect()
}

fn group_by<F: Fn(usize, usize) -> bool>(m: usize, same: F) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; m];
    let mut out = Vec::new();
    for v in 0..m {
        if assigned[v] {
            continue;
        }
        let comp: Vec<usize> = (v..m).filter(|&w| !assigned[w] && same(v, w)).collect();
        for &w in &comp {
            assigned[w] = true;
        }
        out.push(comp);
    }
    out
}

pub fn connected_components(net: &GeneralizedNetwork) -> Vec<Vec<usize>> {
    let m = net.m();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for e in net.edges() {
        let a = find(&mut parent, e.source);
        let b = find(&mut parent, e.target);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..m).map(|v| find(&mut parent, v)).collect();
    group_by(m, |a, b| roots[a] == roots[b])
}

pub fn strongly_connected_components(net: &GeneralizedNetwork) -> Vec<Vec<usize>> {
    let reach = reachability(net);
    group_by(net.m(), |a, b| reach[a][b] && reach[b][a])
}

/// True iff every connected component is strongly connected.
pub fn is_weakly_reversible(net: &GeneralizedNetwork) -> bool {
    connected_components(net).len() == strongly_connected_components(net).len()
}

pub fn stoichiometric_matrix(net: &GeneralizedNetwork) -> RationalMatrix {
    let cols: Vec<Vec<Rational>> = net.vertices().iter().map(|v| v.stoichiometric.to_vec(net.n())).collect();
    RationalMatrix::from_columns(net.n(), &cols)
}

pub fn kinetic_order_matrix(net: &GeneralizedNetwork) -> RationalMatrix {
    let cols: Vec<Vec<Rational>> = net.vertices().iter().map(|v| v.kinetic_order().to_vec(net.n())).collect();
    RationalMatrix::from_columns(net.n(), &cols)
}

/// Incidence matrix of an arbitrary edge list on `m` vertices.
pub fn incidence_of(m: usize, edges: &[(usize, usize)]) -> RationalMatrix {
    let mut inc = RationalMatrix::zeros(m, edges.len());
    for (j, &(s, t)) in edges.iter().enumerate() {
        inc[(s, j)] = -Rational::one();
        inc[(t, j)] = Rational::one();
    }
    inc
}

pub fn analyze_structure(net: &GeneralizedNetwork) -> NetworkStructure {
    let m = net.m();
    let y = stoichiometric_matrix(net);
    let y_tilde = kinetic_order_matrix(net);
    let edge_pairs: Vec<(usize, usize)> = net.edges().iter().map(|e| (e.source, e.target)).collect();
    let incidence = incidence_of(m, &edge_pairs);
    let mut source = RationalMatrix::zeros(m, edge_pairs.len());
    for (j, &(s, _)) in edge_pairs.iter().enumerate() {
        source[(s, j)] = Rational::one();
    }
    let components = connected_components(net);
    let strong_components = strongly_connected_components(net);
    let mut omega_pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if components.iter().any(|c| c.contains(&i) && c.contains(&j)) {
                omega_pairs.push((i, j));
            }
        }
    }
    let omega_incidence = incidence_of(m, &omega_pairs);
    let s_basis = SubspaceBasis::image_of(&y.mul(&incidence));
    let s_tilde_basis = SubspaceBasis::image_of(&y_tilde.mul(&incidence));
    let l = components.len();
    // m - l = rank(I_E) >= dim S, so the subtractions cannot underflow.
    let delta = m - l - s_basis.dim();
    let delta_tilde = m - l - s_tilde_basis.dim();
    let weakly_reversible = components.len() == strong_components.len();
    NetworkStructure {
        y,
        y_tilde,
        incidence,
        source,
        omega_pairs,
        omega_incidence,
        components,
        strong_components,
        s_basis,
        s_tilde_basis,
        delta,
        delta_tilde,
        weakly_reversible,
    }
}
