//! Simplicial homology with ℤ₂ coefficients and combinatorial orientability.

use std::collections::VecDeque;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Boundary operator `∂_j : C_j → C_{j-1}` over GF(2). Rows follow the
/// canonical order of `(j-1)`-faces, columns that of `j`-faces.
pub fn boundary_matrix(x: &SimplicialComplex, j: usize) -> BitMatrix {
    assert!(j >= 1, "boundary_matrix needs j >= 1");
    let rows = x.faces(j - 1);
    let cols = x.faces(j);
    let mut m = BitMatrix::zeros(rows.len(), cols.len());
    let mut ridge = Vec::with_capacity(j);
    for (c, face) in cols.iter().enumerate() {
        for skip in 0..face.len() {
            ridge.clear();
            ridge.extend(face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
            let r = x.face_position(&ridge).expect("faces are closed under subsets");
            m.set(r, c, true);
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientability {
    Orientable,
    NonOrientable,
    /// The complex is not a closed weak pseudomanifold.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub euler: i64,
    pub orientable: Orientability,
    pub connected: bool,
}

/// Betti numbers `β_0..β_d` over ℤ₂.
pub fn betti_numbers(x: &SimplicialComplex) -> Vec<usize> {
    let d = x.dim();
    let f = x.f_vector();
    // ranks[j] = rank ∂_j, with ∂_0 = ∂_{d+1} = 0
    let mut ranks = vec![0; d + 2];
    for (j, r) in ranks.iter_mut().enumerate().take(d + 1).skip(1) {
        *r = boundary_matrix(x, j).rank();
    }
    (0..=d).map(|j| f.0[j] as usize - ranks[j] - ranks[j + 1]).collect()
}

pub fn homology_profile(x: &SimplicialComplex) -> HomologyProfile {
    let betti = betti_numbers(x);
    let orientable = match is_orientable(x) {
        Ok(true) => Orientability::Orientable,
        Ok(false) => Orientability::NonOrientable,
        Err(_) => Orientability::NotApplicable,
    };
    HomologyProfile { connected: betti[0] == 1, euler: x.euler_characteristic(), betti, orientable }
}

/// Order in which the dual graph is walked while propagating orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// Attempts to choose a sign per facet so that every ridge receives opposite
/// induced orientations from its two facets. Returns the signs on success and
/// `None` when some non-tree dual edge disagrees.
pub fn orient(x: &SimplicialComplex, traversal: Traversal) -> Result<Option<Vec<i8>>> {
    let dual = x.dual_graph();
    if !dual.is_closed() {
        return Err(Error::NotClosedPseudomanifold);
    }
    // for each facet: list of (neighbor facet, own ridge position, neighbor ridge position)
    let n = x.num_facets();
    let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for (ridge, fs) in &dual.ridges {
        let (a, b) = (fs[0], fs[1]);
        let pa = missing_position(&x.facets()[a], ridge);
        let pb = missing_position(&x.facets()[b], ridge);
        adj[a].push((b, pa, pb));
        adj[b].push((a, pb, pa));
    }
    let mut sign = vec![0i8; n];
    for root in 0..n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut frontier = VecDeque::from([root]);
        loop {
            let next = match traversal {
                Traversal::BreadthFirst => frontier.pop_front(),
                Traversal::DepthFirst => frontier.pop_back(),
            };
            let Some(f) = next else { break };
            for &(g, pf, pg) in &adj[f] {
                // induced sign on the ridge is sign · (-1)^position
                let want = -sign[f] * parity(pf) * parity(pg);
                if sign[g] == 0 {
                    sign[g] = want;
                    frontier.push_back(g);
                } else if sign[g] != want {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(sign))
}

pub fn is_orientable(x: &SimplicialComplex) -> Result<bool> {
    Ok(orient(x, Traversal::BreadthFirst)?.is_some())
}

fn parity(p: usize) -> i8 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn missing_position(facet: &[usize], ridge: &[usize]) -> usize {
    facet
        .iter()
        .position(|v| !ridge.contains(v))
        .expect("ridge is a proper subset of the facet")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets([["1", "2"], ["2", "3"], ["3", "1"]]).unwrap()
    }

    /// 6-vertex real projective plane.
    fn rp2() -> SimplicialComplex {
        SimplicialComplex::from_facets([
            ["1", "2", "3"],
            ["1", "3", "4"],
            ["1", "4", "5"],
            ["1", "5", "6"],
            ["1", "2", "6"],
            ["2", "3", "5"],
            ["3", "4", "6"],
            ["2", "4", "5"],
            ["3", "5", "6"],
            ["2", "4", "6"],
        ])
        .unwrap()
    }

    #[test]
    fn circle() {
        let t = triangle();
        let m = boundary_matrix(&t, 1);
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(m.rank(), 2);
        let p = homology_profile(&t);
        assert_eq!(p.betti, vec![1, 1]);
        assert_eq!(p.euler, 0);
        assert_eq!(p.orientable, Orientability::Orientable);
        assert!(p.connected);
    }

    #[test]
    fn projective_plane() {
        let p = homology_profile(&rp2());
        assert_eq!(p.betti, vec![1, 1, 1]);
        assert_eq!(p.euler, 1);
        assert_eq!(p.orientable, Orientability::NonOrientable);
        assert_eq!(orient(&rp2(), Traversal::DepthFirst).unwrap(), None);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let x = rp2();
        assert!(boundary_matrix(&x, 1).mul(&boundary_matrix(&x, 2)).is_zero());
    }

    #[test]
    fn not_applicable_with_boundary() {
        let disc = SimplicialComplex::from_facets([["1", "2", "3"]]).unwrap();
        assert_eq!(is_orientable(&disc), Err(Error::NotClosedPseudomanifold));
        let p = homology_profile(&disc);
        assert_eq!(p.orientable, Orientability::NotApplicable);
        assert_eq!(p.betti, vec![1, 0, 0]);
    }
}
