//! Built-in complexes: standard spheres and balls, seeded random stacked
//! spheres, and the 15-vertex 4-manifold `M4_15` obtained from a 30-vertex
//! stacked 4-sphere by three handle additions.
//!
//! Primed vertex names are written with a trailing `p` (`a1'` is `a1p`).

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::prng::{GeneratorSeed, SplitMix64};
use crate::surgery::{handle_addition, is_admissible, VertexBijection};

/// Boundary of the `(d+1)`-simplex on vertices `1..=d+2`.
pub fn standard_sphere(d: usize) -> SimplicialComplex {
    let n = d + 2;
    let facets: Vec<Vec<String>> = (1..=n)
        .map(|skip| (1..=n).filter(|&v| v != skip).map(|v| v.to_string()).collect())
        .collect();
    SimplicialComplex::from_facets(facets).expect("simplex boundary is valid")
}

/// The `d`-simplex on vertices `1..=d+1`.
pub fn standard_ball(d: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets([(1..=d + 1).map(|v| v.to_string())]).expect("one facet")
}

/// Facets of the 30-vertex stacked 5-ball `B5_30`, with their names.
pub const B5_30_FACETS: [(&str, [&str; 6]); 25] = [
    ("delta", ["a1", "a2", "b1", "b2", "c2", "c1"]),
    ("alpha1", ["a1", "a2", "a4", "b1", "b2", "c2"]),
    ("alpha2", ["a1", "a2", "a3", "a4", "b1", "b2"]),
    ("alpha3", ["a1", "a2", "a3", "a4", "a5", "b1"]),
    ("alpha4", ["a2", "a3", "a4", "a5", "b1", "c5p"]),
    ("alpha5", ["a3", "a4", "a5", "b1", "c5p", "c4p"]),
    ("alpha6", ["a3", "a4", "a5", "c3p", "c4p", "c5p"]),
    ("alpha7", ["a3", "a5", "c2p", "c3p", "c4p", "c5p"]),
    ("alpha8", ["c1p", "c2p", "c3p", "c4p", "c5p", "a3"]),
    ("lambda1", ["a1", "a2", "b2", "c1", "c2", "c4"]),
    ("lambda2", ["a1", "a2", "c1", "c2", "c3", "c4"]),
    ("lambda3", ["a1", "c1", "c2", "c3", "c5", "c4"]),
    ("lambda4", ["a1", "c2", "c3", "c4", "c5", "b5p"]),
    ("lambda5", ["a1", "c3", "c4", "c5", "b4p", "b5p"]),
    ("lambda6", ["c3", "c4", "c5", "b3p", "b4p", "b5p"]),
    ("lambda7", ["c3", "c5", "b2p", "b3p", "b4p", "b5p"]),
    ("lambda8", ["b1p", "b2p", "b3p", "b4p", "b5p", "c3"]),
    ("gamma1", ["a2", "b1", "b2", "b4", "c2", "c1"]),
    ("gamma2", ["b1", "b2", "b3", "b4", "c1", "c2"]),
    ("gamma3", ["b1", "b2", "b3", "b4", "b5", "c1"]),
    ("gamma4", ["a5p", "b2", "b3", "b5", "b4", "c1"]),
    ("gamma5", ["a4p", "a5p", "b3", "b4", "b5", "c1"]),
    ("gamma6", ["a3p", "a4p", "a5p", "b3", "b5", "b4"]),
    ("gamma7", ["a2p", "a3p", "a4p", "a5p", "b3", "b5"]),
    ("gamma8", ["a1p", "a2p", "a3p", "a4p", "a5p", "b3"]),
];

const M4_15_FIXTURE: &str = include_str!("../fixtures/m4_15.txt");

pub fn build_b5_30() -> SimplicialComplex {
    SimplicialComplex::from_facets(B5_30_FACETS.iter().map(|(_, f)| f.to_vec()))
        .expect("B5_30 table is valid")
}

/// The stacked 4-sphere bounding `B5_30`.
pub fn build_s4_30() -> SimplicialComplex {
    build_b5_30().boundary_complex().expect("B5_30 has a boundary")
}

/// The three identifications `a_i' -> a_i`, `b_i' -> b_i`, `c_i' -> c_i`.
pub fn m4_15_identifications() -> [VertexBijection; 3] {
    ["a", "b", "c"].map(|letter| {
        VertexBijection::new(
            (1..=5).map(|i| (format!("{letter}{i}p"), format!("{letter}{i}"))).collect::<Vec<_>>(),
        )
        .expect("disjoint facets")
    })
}

/// `M4_15`, built by applying the three identifications to `S4_30` as
/// successive handle additions. Each must be admissible at the moment it
/// is applied.
pub fn build_m4_15() -> SimplicialComplex {
    let mut x = build_s4_30();
    for psi in m4_15_identifications() {
        assert!(is_admissible(&x, &psi).expect("both facets present"), "identification is admissible");
        x = handle_addition(&x, &psi).expect("handle addition succeeds");
    }
    x
}

/// The hand-transcribed 96-facet list of `M4_15`.
pub fn m4_15_fixture() -> SimplicialComplex {
    SimplicialComplex::parse_text(M4_15_FIXTURE).expect("fixture parses")
}

pub fn m4_15_fixture_text() -> &'static str {
    M4_15_FIXTURE
}

/// `B5_30` with the three identifications applied to its facets.
pub fn build_n5_15() -> SimplicialComplex {
    build_b5_30()
        .relabel(|l| crate::label::VertexLabel::new(l.as_str().trim_end_matches('p')).expect("valid"))
        .expect("identification keeps facets distinct")
}

/// Random stacked `d`-sphere on vertices `1..=n`.
///
/// Starts from the standard sphere on `1..=d+2`, facets listed by decreasing
/// omitted vertex. For each new vertex `v = d+3, ..., n`, a facet index `i`
/// is drawn uniformly from the current facet list; facet `i` is replaced by
/// the cone face `(F \ {F[0]}) ∪ {v}`, and the cones `(F \ {F[k]}) ∪ {v}`
/// for `k = 1..=d` are appended in order.
pub fn random_stacked_sphere(d: usize, n: usize, seed: GeneratorSeed) -> Result<SimplicialComplex> {
    stack(d, n, seed, false)
}

/// Like [`random_stacked_sphere`], except that after the first step the facet
/// is drawn uniformly from the `d + 1` facets containing the newest vertex
/// (in list order: the replaced slot, then the appended cones). The dual tree
/// is then close to a path and the edge graph has large diameter, which
/// leaves room for admissible handle additions.
pub fn random_elongated_stacked_sphere(d: usize, n: usize, seed: GeneratorSeed) -> Result<SimplicialComplex> {
    stack(d, n, seed, true)
}

fn stack(d: usize, n: usize, seed: GeneratorSeed, elongated: bool) -> Result<SimplicialComplex> {
    if n < d + 2 {
        return Err(crate::Error::InvalidParameters(format!("need n >= d + 2 (d = {d}, n = {n})")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut facets: Vec<Vec<usize>> = (1..=d + 2)
        .rev()
        .map(|skip| (1..=d + 2).filter(|&v| v != skip).collect())
        .collect();
    let mut newest: Vec<usize> = (0..facets.len()).collect();
    for v in d + 3..=n {
        let i = if elongated { newest[rng.index(newest.len())] } else { rng.index(facets.len()) };
        let old = facets[i].clone();
        let cone = |k: usize| -> Vec<usize> {
            let mut f: Vec<usize> =
                old.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &u)| u).collect();
            f.push(v);
            f
        };
        facets[i] = cone(0);
        newest = vec![i];
        for k in 1..=d {
            newest.push(facets.len());
            facets.push(cone(k));
        }
    }
    SimplicialComplex::from_facets(
        facets.iter().map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>()),
    )
}

/// Looks for an admissible bijection between two disjoint facets of `x`.
/// Facet pairs are visited in seeded random order; for each pair every
/// matching of the vertices is tried. Gives up after `attempts` pairs.
pub fn random_admissible_bijection(
    x: &SimplicialComplex,
    seed: GeneratorSeed,
    attempts: usize,
) -> Option<VertexBijection> {
    let mut rng = SplitMix64::new(seed);
    let graph = x.edge_graph();
    let dist: Vec<Vec<Option<usize>>> = (0..x.num_vertices()).map(|v| graph.distances_from(v)).collect();
    let far = |u: usize, v: usize| dist[u][v].is_none_or(|k| k >= 3);
    let facets = x.facets();
    let mut pairs: Vec<(usize, usize)> = (0..facets.len())
        .flat_map(|i| (0..facets.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .filter(|&(i, j)| facets[i].iter().all(|v| !facets[j].contains(v)))
        .collect();
    rng.shuffle(&mut pairs);
    for &(i, j) in pairs.iter().take(attempts) {
        let (s1, s2) = (&facets[i], &facets[j]);
        let mut chosen = vec![usize::MAX; s1.len()];
        let mut used = vec![false; s2.len()];
        if match_far(s1, s2, 0, &mut chosen, &mut used, &far) {
            let pairs: Vec<(String, String)> = s1
                .iter()
                .zip(&chosen)
                .map(|(&u, &k)| (x.label(u).to_string(), x.label(s2[k]).to_string()))
                .collect();
            return VertexBijection::new(pairs).ok();
        }
    }
    None
}

fn match_far(
    s1: &[usize],
    s2: &[usize],
    at: usize,
    chosen: &mut [usize],
    used: &mut [bool],
    far: &impl Fn(usize, usize) -> bool,
) -> bool {
    if at == s1.len() {
        return true;
    }
    for k in 0..s2.len() {
        if !used[k] && far(s1[at], s2[k]) {
            used[k] = true;
            chosen[at] = k;
            if match_far(s1, s2, at + 1, chosen, used, far) {
                return true;
            }
            used[k] = false;
        }
    }
    false
}
