//! Generalized reaction networks: the data model, the DSL, and derived structure.

mod model;
mod parser;
mod structure;

pub use model::{Complex, Edge, GeneralizedNetwork, Vertex};
pub use parser::{parse_network, parse_network_with};
pub use structure::{
    analyze_structure, connected_components, incidence_of, is_weakly_reversible, kinetic_order_matrix,
    stoichiometric_matrix, strongly_connected_components, NetworkStructure,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: duplicate species {name:?}")]
    DuplicateSpecies { line: usize, name: String },
    #[error("line {line}: duplicate vertex {name:?}")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: duplicate parameter {name:?}")]
    DuplicateParameter { line: usize, name: String },
    #[error("line {line}, column {column}: unknown species {name:?}")]
    UnknownSpecies { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: unknown vertex {name:?}")]
    UnknownVertex { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: unresolved parameter {name:?}")]
    UnresolvedParameter { line: usize, column: usize, name: String },
    #[error("line {line}: self-loop at vertex {vertex:?}")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: parallel edge {from:?} -> {to:?}")]
    ParallelEdge { line: usize, from: String, to: String },
    #[error("parameter override {name:?} does not name a declared parameter")]
    UnknownParameterOverride { name: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{rat, ratio, Rational};
    use std::collections::BTreeMap;

    #[test]
    fn lotka_fixture_shape() {
        let net = parse_network(fixtures::LOTKA).unwrap();
        assert_eq!((net.m(), net.edges().len(), net.n()), (3, 3, 2));
        assert_eq!(net.parameters()["alpha"], ratio(1, 2));
        let v1 = &net.vertices()[0];
        assert!(v1.stoichiometric.is_zero());
        assert_eq!(v1.kinetic_order().coefficient(0), ratio(1, 2));
    }

    #[test]
    fn single_vertex_without_edges() {
        let net = parse_network("vertex z: 0\n").unwrap();
        assert_eq!((net.m(), net.edges().len()), (1, 0));
        assert!(is_weakly_reversible(&net));
    }

    #[test]
    fn rejects_self_loop() {
        let err = parse_network("species X\nvertex v1: X\nedge v1 -> v1\n").unwrap_err();
        assert!(matches!(err, NetworkError::SelfLoop { line: 3, .. }), "{err}");
    }

    #[test]
    fn rejects_parallel_edges_and_duplicates() {
        let src = "species X\nvertex a: X\nvertex b: 0\nedge a -> b\nedge a -> b [k]\n";
        assert!(matches!(parse_network(src), Err(NetworkError::ParallelEdge { line: 5, .. })));
        let src = "species X X\n";
        assert!(matches!(parse_network(src), Err(NetworkError::DuplicateSpecies { .. })));
        let src = "species X\nvertex a: X\nvertex a: 0\n";
        assert!(matches!(parse_network(src), Err(NetworkError::DuplicateVertex { line: 3, .. })));
    }

    #[test]
    fn reports_unresolved_parameter_position() {
        let err = parse_network("species X\nvertex a: 0 | gamma X\n").unwrap_err();
        assert_eq!(
            err,
            NetworkError::UnresolvedParameter { line: 2, column: 15, name: "gamma".into() }
        );
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_network("species X\nvertex a X\n").unwrap_err();
        assert!(matches!(err, NetworkError::Syntax { line: 2, column: 10, .. }), "{err}");
        let err = parse_network("species X\nedge a => b\n").unwrap_err();
        assert!(matches!(err, NetworkError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn coefficient_forms() {
        let net = parse_network("species X Y\nparam a = -3/4\nvertex v: 2X + 1/2 Y | a X + Y + Y\n").unwrap();
        let v = &net.vertices()[0];
        assert_eq!(v.stoichiometric.coefficient(0), rat(2));
        assert_eq!(v.stoichiometric.coefficient(1), ratio(1, 2));
        assert_eq!(v.kinetic_order().coefficient(0), ratio(-3, 4));
        assert_eq!(v.kinetic_order().coefficient(1), rat(2));
    }

    #[test]
    fn parameter_overrides() {
        let mut o = BTreeMap::new();
        o.insert("beta".to_string(), rat(1));
        let net = parse_network_with(fixtures::LOTKA, &o).unwrap();
        assert_eq!(net.parameters()["beta"], rat(1));
        assert_eq!(net.vertices()[1].kinetic_order().coefficient(1), rat(1));
        o.insert("gamma".to_string(), Rational::from_integer(2.into()));
        assert!(matches!(
            parse_network_with(fixtures::LOTKA, &o),
            Err(NetworkError::UnknownParameterOverride { .. })
        ));
    }

    #[test]
    fn structure_of_example_fixtures() {
        let cases = [
            (fixtures::LOTKA, (3, 1, 2, 2, 0, 0)),
            (fixtures::SIGNALING, (4, 1, 2, 3, 1, 0)),
            (fixtures::FUTILE, (4, 1, 3, 3, 0, 0)),
            (fixtures::SIR, (4, 1, 2, 2, 1, 1)),
        ];
        for (src, (m, l, s, st, d, dt)) in cases {
            let ns = analyze_structure(&parse_network(src).unwrap());
            assert_eq!(
                (ns.m(), ns.l(), ns.s_basis.dim(), ns.s_tilde_basis.dim(), ns.delta, ns.delta_tilde),
                (m, l, s, st, d, dt)
            );
            assert!(ns.weakly_reversible);
        }
    }

    #[test]
    fn mass_action_lotka_is_not_weakly_reversible() {
        let net = parse_network(fixtures::LOTKA_MAK).unwrap();
        let ns = analyze_structure(&net);
        assert!(!is_weakly_reversible(&net));
        assert_eq!((ns.m(), ns.l(), ns.s_basis.dim(), ns.delta), (6, 3, 2, 1));
    }

    #[test]
    fn lotka_omega_incidence_matches_pair_order() {
        let ns = analyze_structure(&parse_network(fixtures::LOTKA).unwrap());
        assert_eq!(ns.omega_pairs, vec![(0, 1), (0, 2), (1, 2)]);
        let expected = crate::linalg::RationalMatrix::from_i64_rows(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        assert_eq!(ns.omega_incidence, expected);
        let y_omega = crate::linalg::RationalMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, 1]]);
        assert_eq!(ns.y_omega(), y_omega);
    }

    #[test]
    fn incidence_columns_sum_to_zero() {
        let ns = analyze_structure(&parse_network(fixtures::FUTILE).unwrap());
        for j in 0..ns.incidence.cols() {
            let s: Rational = ns.incidence.column(j).iter().sum();
            assert_eq!(s, rat(0));
            let src = ns.source.column(j);
            assert_eq!(src.iter().filter(|v| **v != rat(0)).count(), 1);
            assert!(src.contains(&rat(1)));
        }
    }

    #[test]
    fn printing_round_trips() {
        for src in fixtures::ALL.iter().map(|(_, s)| s) {
            let net = parse_network(src).unwrap();
            let again = parse_network(&net.to_dsl()).unwrap();
            assert_eq!(net, again);
            assert_eq!(net.to_dsl(), again.to_dsl());
        }
    }
}
