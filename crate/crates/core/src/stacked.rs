//! Stacked balls and spheres.
//!
//! A stacked ball is a pseudomanifold with boundary whose dual graph is a
//! tree; a stacked sphere is the boundary of one. Spheres are recognized two
//! independent ways: through the clique complex of the 1-skeleton, and by
//! repeatedly collapsing a vertex of degree `d + 1` onto the facet spanned by
//! its neighbours until nothing more can be removed.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::dual::PseudomanifoldStatus;
use crate::error::{Error, Result};
use crate::label::VertexLabel;

/// One collapse: `removed_vertex` and its star were replaced by the single
/// facet `replacing_facet` spanned by its neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub removed_vertex: VertexLabel,
    pub replacing_facet: Vec<VertexLabel>,
}

/// Outcome of [`reduce_to_core`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residue: SimplicialComplex,
    pub steps: Vec<ReductionStep>,
}

pub fn is_stacked_ball(x: &SimplicialComplex) -> bool {
    let dual = x.dual_graph();
    dual.status() == PseudomanifoldStatus::WithBoundary && dual.is_tree()
}

/// `true` for the boundary of a simplex: `d + 2` vertices, `d + 2` facets.
pub fn is_standard_sphere(x: &SimplicialComplex) -> bool {
    x.num_vertices() == x.dim() + 2 && x.num_facets() == x.dim() + 2
}

/// Stacked sphere test through the clique complex of the edge graph.
///
/// For `d = 1` every cycle qualifies and for `d = 0` exactly the two-point
/// complex does. Never panics on arbitrary input.
pub fn is_stacked_sphere(x: &SimplicialComplex) -> bool {
    let d = x.dim();
    match d {
        0 => x.num_vertices() == 2,
        1 => x.is_closed_pseudomanifold() && x.is_connected(),
        _ => {
            if !x.is_closed_pseudomanifold() {
                return false;
            }
            let Ok(ball) = x.clique_complex().into_complex() else {
                return false;
            };
            ball.dim() == d + 1
                && is_stacked_ball(&ball)
                && ball.boundary_complex().is_ok_and(|b| b == *x)
        }
    }
}

/// Removes `vertex` (of degree `d + 1`) and replaces its star by the facet
/// spanned by its neighbours.
pub fn reduce_once(x: &SimplicialComplex, vertex: &str) -> Result<SimplicialComplex> {
    let v = x.require_vertex(vertex)?;
    if !x.is_closed_pseudomanifold() {
        return Err(Error::NotClosedPseudomanifold);
    }
    reduce_index(x, v)
}

fn reduce_index(x: &SimplicialComplex, v: usize) -> Result<SimplicialComplex> {
    let d = x.dim();
    let neighbors: BTreeSet<usize> = x
        .facets()
        .iter()
        .filter(|f| f.contains(&v))
        .flat_map(|f| f.iter().copied().filter(|&u| u != v))
        .collect();
    if neighbors.len() != d + 1 {
        return Err(Error::DegreeTooHigh {
            vertex: x.label(v).to_string(),
            degree: neighbors.len(),
            expected: d + 1,
        });
    }
    if x.num_vertices() <= d + 2 {
        return Err(Error::TooFewVertices(x.num_vertices()));
    }
    let sigma: Vec<usize> = neighbors.into_iter().collect();
    if x.facets().contains(&sigma) {
        return Err(Error::WouldCreateDuplicateFacet(x.face_strings(&sigma)));
    }
    let mut facets: Vec<Vec<usize>> =
        x.facets().iter().filter(|f| !f.contains(&v)).cloned().collect();
    facets.push(sigma);
    SimplicialComplex::from_indexed(x.labels(), facets)
}

/// Collapses the lexicographically smallest eligible vertex of degree
/// `d + 1` until none is left. The residue is the standard sphere exactly
/// when the input was a stacked sphere.
pub fn reduce_to_core(x: &SimplicialComplex) -> Reduction {
    let mut current = x.clone();
    let mut steps = Vec::new();
    if !x.is_closed_pseudomanifold() {
        return Reduction { residue: current, steps };
    }
    let d = x.dim();
    'outer: while current.num_vertices() > d + 2 {
        let degrees = current.degrees();
        for (v, &deg) in degrees.iter().enumerate() {
            if deg != d + 1 {
                continue;
            }
            if let Ok(next) = reduce_index(&current, v) {
                let sigma = current
                    .facets()
                    .iter()
                    .filter(|f| f.contains(&v))
                    .flat_map(|f| f.iter().copied())
                    .filter(|&u| u != v)
                    .collect::<BTreeSet<_>>();
                steps.push(ReductionStep {
                    removed_vertex: current.label(v).clone(),
                    replacing_facet: sigma.into_iter().map(|u| current.label(u).clone()).collect(),
                });
                current = next;
                continue 'outer;
            }
        }
        break;
    }
    Reduction { residue: current, steps }
}

/// Stacked sphere test through [`reduce_to_core`].
pub fn is_stacked_sphere_by_reduction(x: &SimplicialComplex) -> bool {
    x.is_closed_pseudomanifold() && is_standard_sphere(&reduce_to_core(x).residue)
}

/// Undoes a reduction: each step, replayed last to first, swaps the
/// replacing facet for the cone over its boundary from the removed vertex.
pub fn expand(residue: &SimplicialComplex, steps: &[ReductionStep]) -> Result<SimplicialComplex> {
    let mut facets: BTreeSet<Vec<VertexLabel>> = residue
        .facet_labels()
        .map(|f| f.into_iter().map(|s| VertexLabel::new(s).expect("valid label")).collect())
        .collect();
    for step in steps.iter().rev() {
        if !facets.remove(&step.replacing_facet) {
            return Err(Error::NotAFacet(
                step.replacing_facet.iter().map(ToString::to_string).collect(),
            ));
        }
        for skip in 0..step.replacing_facet.len() {
            let mut f: Vec<VertexLabel> = step
                .replacing_facet
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, l)| l.clone())
                .collect();
            f.push(step.removed_vertex.clone());
            f.sort();
            facets.insert(f);
        }
    }
    SimplicialComplex::from_labeled_facets(facets.into_iter().collect())
}

/// Vertices of degree `d + 1`.
pub fn minimal_degree_vertices(x: &SimplicialComplex) -> Vec<usize> {
    let d = x.dim();
    x.degrees().into_iter().enumerate().filter(|&(_, k)| k == d + 1).map(|(v, _)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{standard_ball, standard_sphere};

    #[test]
    fn simplex_is_stacked_ball() {
        assert!(is_stacked_ball(&standard_ball(3)));
        let square = SimplicialComplex::from_facets([["1", "2", "3"], ["1", "3", "4"]]).unwrap();
        assert!(is_stacked_ball(&square));
    }

    #[test]
    fn cyclic_dual_graph_is_not_a_ball() {
        // hexagonal disc around a center: dual graph is a 6-cycle
        let disc = SimplicialComplex::from_facets([
            ["0", "1", "2"],
            ["0", "2", "3"],
            ["0", "3", "4"],
            ["0", "4", "5"],
            ["0", "5", "6"],
            ["0", "6", "1"],
        ])
        .unwrap();
        assert!(!is_stacked_ball(&disc));
    }

    #[test]
    fn standard_spheres_are_stacked() {
        for d in 0..6 {
            let s = standard_sphere(d);
            assert!(is_stacked_sphere(&s), "d = {d}");
            let r = reduce_to_core(&s);
            assert!(r.steps.is_empty());
            assert_eq!(r.residue, s);
        }
    }

    #[test]
    fn octahedron_is_not_stacked() {
        let oct = SimplicialComplex::from_facets([
            ["1", "2", "3"],
            ["1", "3", "4"],
            ["1", "4", "5"],
            ["1", "2", "5"],
            ["6", "2", "3"],
            ["6", "3", "4"],
            ["6", "4", "5"],
            ["6", "2", "5"],
        ])
        .unwrap();
        assert!(!is_stacked_sphere(&oct));
        let r = reduce_to_core(&oct);
        assert!(r.steps.is_empty());
        assert_eq!(r.residue.num_vertices(), 6);
    }

    #[test]
    fn reduce_once_errors() {
        let s = standard_sphere(2);
        assert!(matches!(reduce_once(&s, "1"), Err(Error::TooFewVertices(4))));
        let disc = standard_ball(2);
        assert_eq!(reduce_once(&disc, "1"), Err(Error::NotClosedPseudomanifold));
    }

    #[test]
    fn degree_too_high() {
        // octahedron: all degrees are 4 > d + 1 = 3
        let oct = SimplicialComplex::from_facets([
            ["1", "2", "3"],
            ["1", "3", "4"],
            ["1", "4", "5"],
            ["1", "2", "5"],
            ["6", "2", "3"],
            ["6", "3", "4"],
            ["6", "4", "5"],
            ["6", "2", "5"],
        ])
        .unwrap();
        assert!(matches!(reduce_once(&oct, "1"), Err(Error::DegreeTooHigh { degree: 4, .. })));
    }

    #[test]
    fn stacking_twice_then_reducing_twice() {
        // two subdivisions of the 3-simplex boundary: d + 4 = 6 vertices
        let x = SimplicialComplex::from_facets([
            ["1", "2", "5"],
            ["1", "3", "5"],
            ["2", "3", "6"],
            ["2", "5", "6"],
            ["3", "5", "6"],
            ["1", "2", "4"],
            ["1", "3", "4"],
            ["2", "3", "4"],
        ])
        .unwrap();
        assert!(is_stacked_sphere(&x));
        let r = reduce_to_core(&x);
        assert_eq!(r.steps.len(), 2);
        assert!(is_standard_sphere(&r.residue));
        assert_eq!(expand(&r.residue, &r.steps).unwrap(), x);
    }
}
