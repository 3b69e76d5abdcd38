use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::Rational;

/// A formal linear combination of species with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    coefficients: BTreeMap<usize, Rational>,
}

impl Complex {
    pub fn zero() -> Self {
        Complex::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Rational)>>(terms: I) -> Self {
        let mut c = Complex::zero();
        for (s, v) in terms {
            c.add_term(s, v);
        }
        c
    }

    /// Adds `coeff` to the coefficient of `species`, dropping it if the sum vanishes.
    pub fn add_term(&mut self, species: usize, coeff: Rational) {
        let entry = self.coefficients.entry(species).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coefficients.remove(&species);
        }
    }

    pub fn coefficient(&self, species: usize) -> Rational {
        self.coefficients.get(&species).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coefficients.iter().map(|(&s, v)| (s, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Dense coefficient vector over `n` species.
    pub fn to_vec(&self, n: usize) -> Vec<Rational> {
        (0..n).map(|s| self.coefficient(s)).collect()
    }

    pub(crate) fn write_with(&self, species: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, v)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if v.is_one() {
                write!(f, "{}", species[s])?;
            } else {
                write!(f, "{} {}", v, species[s])?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub stoichiometric: Complex,
    /// Explicit kinetic-order complex; `None` means mass-action (same as stoichiometric).
    pub kinetic: Option<Complex>,
}

impl Vertex {
    pub fn kinetic_order(&self) -> &Complex {
        self.kinetic.as_ref().unwrap_or(&self.stoichiometric)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub rate: Option<String>,
}

/// A generalized chemical reaction network: a simple digraph on complexes,
/// each vertex carrying a stoichiometric and a kinetic-order complex.
///
/// Values are validated on construction (see [`GeneralizedNetwork::new`]) and
/// immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedNetwork {
    species: Vec<String>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    parameters: BTreeMap<String, Rational>,
}

impl GeneralizedNetwork {
    /// Validates names, species indices, and graph simplicity.
    pub fn new(
        species: Vec<String>,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        parameters: BTreeMap<String, Rational>,
    ) -> Result<Self, super::NetworkError> {
        use super::NetworkError as E;
        for (i, s) in species.iter().enumerate() {
            if species[..i].contains(s) {
                return Err(E::DuplicateSpecies { line: 0, name: s.clone() });
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].iter().any(|w| w.name == v.name) {
                return Err(E::DuplicateVertex { line: 0, name: v.name.clone() });
            }
            let complexes = std::iter::once(&v.stoichiometric).chain(v.kinetic.as_ref());
            for c in complexes {
                if let Some((s, _)) = c.terms().find(|&(s, _)| s >= species.len()) {
                    return Err(E::UnknownSpecies { line: 0, column: 0, name: format!("#{s}") });
                }
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e.source >= vertices.len() || e.target >= vertices.len() {
                return Err(E::UnknownVertex { line: 0, column: 0, name: format!("#{}", e.source.max(e.target)) });
            }
            if e.source == e.target {
                return Err(E::SelfLoop { line: 0, vertex: vertices[e.source].name.clone() });
            }
            if edges[..i].iter().any(|f| f.source == e.source && f.target == e.target) {
                return Err(E::ParallelEdge {
                    line: 0,
                    from: vertices[e.source].name.clone(),
                    to: vertices[e.target].name.clone(),
                });
            }
        }
        Ok(GeneralizedNetwork { species, vertices, edges, parameters })
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn parameters(&self) -> &BTreeMap<String, Rational> {
        &self.parameters
    }

    /// Number of species, `n`.
    pub fn n(&self) -> usize {
        self.species.len()
    }

    /// Number of vertices, `m`.
    pub fn m(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s == name)
    }

    pub fn edge_index(&self, source: usize, target: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.source == source && e.target == target)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.edges.iter().any(|e| e.source == v)
    }

    /// Adjacency lists of out-neighbours.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.m()];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        adj
    }

    /// Canonical DSL text; parsing it yields an identical network.
    pub fn to_dsl(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GeneralizedNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.species.is_empty() {
            writeln!(f, "species {}", self.species.join(" "))?;
        }
        for (name, value) in &self.parameters {
            writeln!(f, "param {name} = {value}")?;
        }
        for v in &self.vertices {
            write!(f, "vertex {}: ", v.name)?;
            v.stoichiometric.write_with(&self.species, f)?;
            if let Some(k) = &v.kinetic {
                write!(f, " | ")?;
                k.write_with(&self.species, f)?;
            }
            writeln!(f)?;
        }
        for e in &self.edges {
            write!(f, "edge {} -> {}", self.vertices[e.source].name, self.vertices[e.target].name)?;
            if let Some(r) = &e.rate {
                write!(f, " [{r}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
