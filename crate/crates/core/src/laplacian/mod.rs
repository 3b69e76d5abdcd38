//! Laplacians of labeled graphs, tree constants, the core-Laplacian
//! decomposition, binomial CBE equations, cycle decompositions and the
//! parametric reduced Jacobian.

mod cycles;
mod polynomial;
mod preorder;

pub use cycles::{
    cycle_decomposition, cycle_laplacian, enumerate_cycles, parametric_reduced_jacobian, Cycle, DEFAULT_MAX_CYCLES,
};
pub use polynomial::{ParametricMatrix, Polynomial};
pub use preorder::{chain_graph_from_preorders, TotalPreorder};

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{to_f64, LinalgError, Rational, RationalMatrix};
use crate::network::{connected_components, incidence_of, is_weakly_reversible, GeneralizedNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaplacianError {
    #[error("missing rate constant for edge {edge}")]
    MissingRate { edge: String },
    #[error("rate constant for edge {edge} is not positive")]
    NonPositiveRate { edge: String },
    #[error("expected {expected} rate constants, found {found}")]
    WrongRateCount { expected: usize, found: usize },
    #[error("network is not weakly reversible")]
    NotWeaklyReversible,
    #[error("invalid auxiliary graph: {0}")]
    InvalidAuxiliaryGraph(String),
    #[error("tree constants are not a positive kernel vector")]
    TreeConstantsInconsistent,
    #[error("core Laplacian residual is nonzero")]
    ResidualNonzero,
    #[error("core Laplacian of a chain graph is not nonnegative with positive diagonal")]
    ChainNotNonnegative,
    #[error("concentration vector must be positive")]
    NonPositivePoint,
    #[error("kinetic order {value} is not an integer, exact evaluation impossible")]
    NonIntegerExponent { value: Rational },
    #[error("cycle count exceeds cap {cap}")]
    TooManyCycles { cap: usize },
    #[error("no positive cycle decomposition found")]
    NoCycleDecomposition,
    #[error("preorders are not harmonious at {i}, {j}")]
    NotHarmonious { i: usize, j: usize },
    #[error("preorders have different lengths")]
    PreorderLengthMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Label used for an edge without an explicit rate symbol.
pub fn edge_label(net: &GeneralizedNetwork, edge: usize) -> String {
    let e = &net.edges()[edge];
    match &e.rate {
        Some(r) => r.clone(),
        None => format!("k_{}_{}", net.vertices()[e.source].name, net.vertices()[e.target].name),
    }
}

/// One positive rate constant per edge, in edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateAssignment {
    values: Vec<Rational>,
}

impl RateAssignment {
    pub fn new(net: &GeneralizedNetwork, values: Vec<Rational>) -> Result<Self, LaplacianError> {
        if values.len() != net.edges().len() {
            return Err(LaplacianError::WrongRateCount { expected: net.edges().len(), found: values.len() });
        }
        if let Some(e) = values.iter().position(|v| !v.is_positive()) {
            return Err(LaplacianError::NonPositiveRate { edge: edge_label(net, e) });
        }
        Ok(RateAssignment { values })
    }

    /// Looks each edge up by its label (see [`edge_label`]).
    pub fn from_labels(net: &GeneralizedNetwork, rates: &BTreeMap<String, Rational>) -> Result<Self, LaplacianError> {
        let values = (0..net.edges().len())
            .map(|e| {
                let label = edge_label(net, e);
                rates.get(&label).cloned().ok_or(LaplacianError::MissingRate { edge: label })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(net, values)
    }

    pub fn uniform(net: &GeneralizedNetwork, value: Rational) -> Result<Self, LaplacianError> {
        Self::new(net, vec![value; net.edges().len()])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, edge: usize) -> &Rational {
        &self.values[edge]
    }
}

/// `A_k` with `(A_k)_{ij} = k_{j→i}` off the diagonal and zero column sums.
pub fn laplacian(net: &GeneralizedNetwork, k: &RateAssignment) -> RationalMatrix {
    let m = net.m();
    let mut a = RationalMatrix::zeros(m, m);
    for (e, edge) in net.edges().iter().enumerate() {
        let v = k.get(e);
        a[(edge.target, edge.source)] += v;
        a[(edge.source, edge.source)] -= v;
    }
    a
}

/// Tree constants: per component, `(K_k)_i` is the weight of spanning trees
/// rooted at `i`, computed as `(-1)^{p-1}` times the principal cofactor of
/// the component Laplacian. Checked: `A_k K_k = 0`, all entries positive.
pub fn tree_constants(net: &GeneralizedNetwork, k: &RateAssignment) -> Result<Vec<Rational>, LaplacianError> {
    if !is_weakly_reversible(net) {
        return Err(LaplacianError::NotWeaklyReversible);
    }
    let a = laplacian(net, k);
    let mut out = vec![Rational::zero(); net.m()];
    for comp in connected_components(net) {
        let p = comp.len();
        for (pos, &i) in comp.iter().enumerate() {
            let rest: Vec<usize> = comp.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &v)| v).collect();
            let cof = a.minor(&rest, &rest)?;
            out[i] = if p % 2 == 0 { -cof } else { cof };
        }
    }
    if out.iter().any(|v| !v.is_positive()) || a.mul_vec(&out).iter().any(|v| !v.is_zero()) {
        return Err(LaplacianError::TreeConstantsInconsistent);
    }
    Ok(out)
}

/// A spanning forest on the vertices, one tree per connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    edges: Vec<(usize, usize)>,
    chain: bool,
}

impl AuxiliaryGraph {
    /// Validates the forest against the components of `net`.
    pub fn new(net: &GeneralizedNetwork, edges: Vec<(usize, usize)>) -> Result<Self, LaplacianError> {
        let m = net.m();
        let comps = connected_components(net);
        let mut comp_of = vec![0; m];
        for (c, vs) in comps.iter().enumerate() {
            for &v in vs {
                comp_of[v] = c;
            }
        }
        if edges.len() != m - comps.len() {
            return Err(LaplacianError::InvalidAuxiliaryGraph(format!(
                "expected {} edges, found {}",
                m - comps.len(),
                edges.len()
            )));
        }
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(s, t) in &edges {
            if s >= m || t >= m || s == t {
                return Err(LaplacianError::InvalidAuxiliaryGraph(format!("bad edge {s} -> {t}")));
            }
            if comp_of[s] != comp_of[t] {
                return Err(LaplacianError::InvalidAuxiliaryGraph(format!("edge {s} -> {t} joins two components")));
            }
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            if a == b {
                return Err(LaplacianError::InvalidAuxiliaryGraph(format!("edge {s} -> {t} closes a cycle")));
            }
            parent[a] = b;
        }
        Ok(AuxiliaryGraph { edges, chain: false })
    }

    /// Chain graph: consecutive vertices of each listed order are joined.
    /// `orders` must list every component's vertices exactly once.
    pub fn chain(net: &GeneralizedNetwork, orders: &[Vec<usize>]) -> Result<Self, LaplacianError> {
        let edges = orders.iter().flat_map(|o| o.windows(2).map(|w| (w[0], w[1]))).collect();
        let mut g = Self::new(net, edges)?;
        g.chain = true;
        Ok(g)
    }

    /// Chain following vertex index order within each component.
    pub fn default_chain(net: &GeneralizedNetwork) -> Self {
        Self::chain(net, &connected_components(net)).expect("index order is a valid chain")
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_chain(&self) -> bool {
        self.chain
    }
}

/// Core Laplacian `𝒜` with `A_k diag(K_k) = −I_ℰ 𝒜 I_ℰᵀ`, recovered by the
/// normal equations and checked exactly. For chain graphs the result is also
/// checked to be nonnegative with positive diagonal.
pub fn core_laplacian(
    net: &GeneralizedNetwork,
    k: &RateAssignment,
    aux: &AuxiliaryGraph,
) -> Result<RationalMatrix, LaplacianError> {
    let kk = tree_constants(net, k)?;
    let a = laplacian(net, k);
    let mut diag = RationalMatrix::zeros(net.m(), net.m());
    for (i, v) in kk.iter().enumerate() {
        diag[(i, i)] = v.clone();
    }
    let target = a.mul(&diag);
    let inc = incidence_of(net.m(), aux.edges());
    let gram_inv = inc.transpose().mul(&inc).inverse().ok_or(LaplacianError::ResidualNonzero)?;
    let core = gram_inv.mul(&inc.transpose()).mul(&target).mul(&inc).mul(&gram_inv).neg();
    if inc.mul(&core).mul(&inc.transpose()).neg() != target {
        return Err(LaplacianError::ResidualNonzero);
    }
    if aux.is_chain() {
        let r = core.rows();
        let ok = (0..r).all(|i| (0..r).all(|j| !core[(i, j)].is_negative()) && core[(i, i)].is_positive());
        if !ok {
            return Err(LaplacianError::ChainNotNonnegative);
        }
    }
    Ok(core)
}

fn integer_exponent(v: &Rational) -> Result<i32, LaplacianError> {
    if !v.is_integer() {
        return Err(LaplacianError::NonIntegerExponent { value: v.clone() });
    }
    i32::try_from(v.to_integer()).map_err(|_| LaplacianError::NonIntegerExponent { value: v.clone() })
}

/// Binomial CBE residuals `x^{ỹ(i′)}/K_{i′} − x^{ỹ(i)}/K_i`, one per edge
/// `i → i′` of `aux`, in exact arithmetic. Needs integer kinetic orders.
pub fn cbe_residual_exact(
    net: &GeneralizedNetwork,
    k: &RateAssignment,
    aux: &AuxiliaryGraph,
    x: &[Rational],
) -> Result<Vec<Rational>, LaplacianError> {
    if x.len() != net.n() || x.iter().any(|v| !v.is_positive()) {
        return Err(LaplacianError::NonPositivePoint);
    }
    let kk = tree_constants(net, k)?;
    let monomial = |i: usize| -> Result<Rational, LaplacianError> {
        let mut p = Rational::one();
        for (s, c) in net.vertices()[i].kinetic_order().terms() {
            p *= num_traits::pow::Pow::pow(&x[s], integer_exponent(c)?);
        }
        Ok(p / &kk[i])
    };
    aux.edges().iter().map(|&(s, t)| Ok(monomial(t)? - monomial(s)?)).collect()
}

/// Floating-point version of [`cbe_residual_exact`]; any real kinetic orders.
pub fn cbe_residual(
    net: &GeneralizedNetwork,
    k: &RateAssignment,
    aux: &AuxiliaryGraph,
    x: &[f64],
) -> Result<Vec<f64>, LaplacianError> {
    if x.len() != net.n() || x.iter().any(|&v| !(v > 0.0)) {
        return Err(LaplacianError::NonPositivePoint);
    }
    let kk = tree_constants(net, k)?;
    let monomial = |i: usize| -> f64 {
        let log: f64 = net.vertices()[i].kinetic_order().terms().map(|(s, c)| to_f64(c) * x[s].ln()).sum();
        log.exp() / to_f64(&kk[i])
    };
    Ok(aux.edges().iter().map(|&(s, t)| monomial(t) - monomial(s)).collect())
}
