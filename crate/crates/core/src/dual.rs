use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::graph::EdgeGraph;

/// Pseudomanifold status read off the ridge multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PseudomanifoldStatus {
    /// Every ridge lies in exactly two facets.
    Closed,
    /// Every ridge lies in at most two facets, some in one.
    WithBoundary,
    /// Some ridge lies in three or more facets.
    Neither,
}

/// Facet adjacency graph: facets are nodes, two facets are adjacent when
/// they share a ridge.
#[derive(Clone, Debug)]
pub struct DualGraph {
    /// Ridge → indices (into the complex's facet list) of the facets holding it.
    pub ridges: BTreeMap<Vec<usize>, Vec<usize>>,
    /// Unordered facet pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub nodes: usize,
}

impl DualGraph {
    pub fn new(x: &SimplicialComplex) -> Self {
        let ridges = x.ridge_map();
        let mut edges: Vec<(usize, usize)> = ridges
            .values()
            .flat_map(|fs| {
                fs.iter()
                    .enumerate()
                    .flat_map(move |(a, &i)| fs[a + 1..].iter().map(move |&j| (i.min(j), i.max(j))))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self { ridges, edges, nodes: x.num_facets() }
    }

    pub fn status(&self) -> PseudomanifoldStatus {
        let max = self.ridges.values().map(Vec::len).max().unwrap_or(0);
        let has_boundary = self.ridges.values().any(|fs| fs.len() == 1);
        match max {
            0..=2 if has_boundary => PseudomanifoldStatus::WithBoundary,
            0..=2 => PseudomanifoldStatus::Closed,
            _ => PseudomanifoldStatus::Neither,
        }
    }

    pub fn is_weak_pseudomanifold(&self) -> bool {
        self.status() != PseudomanifoldStatus::Neither
    }

    pub fn is_closed(&self) -> bool {
        self.status() == PseudomanifoldStatus::Closed
    }

    pub fn graph(&self) -> EdgeGraph {
        EdgeGraph::from_edges(self.nodes, self.edges.iter().copied())
    }

    pub fn is_connected(&self) -> bool {
        self.nodes > 0 && self.graph().component_ids().iter().all(|&c| c == 0)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.nodes
    }
}

impl SimplicialComplex {
    pub fn dual_graph(&self) -> DualGraph {
        DualGraph::new(self)
    }

    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.dual_graph().is_closed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_boundary_is_k4() {
        let x = SimplicialComplex::from_facets([
            ["1", "2", "3"],
            ["1", "2", "4"],
            ["1", "3", "4"],
            ["2", "3", "4"],
        ])
        .unwrap();
        let g = x.dual_graph();
        assert_eq!(g.edges.len(), 6);
        assert_eq!(g.status(), PseudomanifoldStatus::Closed);
    }

    #[test]
    fn two_triangles_disconnected() {
        let x = SimplicialComplex::from_facets([
            ["1", "2"],
            ["2", "3"],
            ["3", "1"],
            ["4", "5"],
            ["5", "6"],
            ["6", "4"],
        ])
        .unwrap();
        let g = x.dual_graph();
        assert_eq!(g.status(), PseudomanifoldStatus::Closed);
        assert!(!g.is_connected());
    }

    #[test]
    fn square_disc_is_tree() {
        let x = SimplicialComplex::from_facets([["1", "2", "3"], ["1", "3", "4"]]).unwrap();
        let g = x.dual_graph();
        assert_eq!(g.status(), PseudomanifoldStatus::WithBoundary);
        assert!(g.is_tree());
    }
}
