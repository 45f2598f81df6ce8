//! Automorphisms and isomorphisms by backtracking over refined vertex cells.
//!
//! Vertices are first split by their invariant (degree, sorted degrees of
//! incident edges), where the degree of an edge is the number of vertices in
//! its link. The search then extends a partial map one vertex at a time,
//! checking adjacency, edge degrees and every facet that becomes fully
//! mapped.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::label::VertexLabel;

/// A bijection between vertex sets, sorted by source label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexPermutation {
    mapping: Vec<(VertexLabel, VertexLabel)>,
}

impl VertexPermutation {
    pub fn from_pairs(mut mapping: Vec<(VertexLabel, VertexLabel)>) -> Self {
        mapping.sort();
        Self { mapping }
    }

    pub fn identity(labels: &[VertexLabel]) -> Self {
        Self::from_pairs(labels.iter().map(|l| (l.clone(), l.clone())).collect())
    }

    pub fn mapping(&self) -> &[(VertexLabel, VertexLabel)] {
        &self.mapping
    }

    pub fn apply(&self, v: &str) -> Option<&VertexLabel> {
        self.mapping
            .binary_search_by(|(s, _)| s.as_str().cmp(v))
            .ok()
            .map(|k| &self.mapping[k].1)
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().all(|(s, t)| s == t)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_pairs(
            other
                .mapping
                .iter()
                .map(|(s, t)| (s.clone(), self.apply(t.as_str()).unwrap_or(t).clone()))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::from_pairs(self.mapping.iter().map(|(s, t)| (t.clone(), s.clone())).collect())
    }

    /// Cycles of length at least two, each starting at its smallest label.
    pub fn cycles(&self) -> Vec<Vec<VertexLabel>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (start, _) in &self.mapping {
            if seen.contains(start) {
                continue;
            }
            let mut cycle = vec![start.clone()];
            seen.insert(start.clone());
            let mut cur = self.apply(start.as_str()).expect("bijection");
            while cur != start {
                seen.insert(cur.clone());
                cycle.push(cur.clone());
                cur = self.apply(cur.as_str()).expect("bijection");
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order of the permutation in its group.
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.cycles().iter().fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// Maps the facets of `x` and checks they are exactly the facets of `y`.
    pub fn maps_onto(&self, x: &SimplicialComplex, y: &SimplicialComplex) -> bool {
        if x.num_facets() != y.num_facets() {
            return false;
        }
        let target = y.facet_set();
        x.facet_labels().all(|f| {
            let mut image: Vec<String> = match f.iter().map(|v| self.apply(v).map(ToString::to_string)).collect() {
                Some(image) => image,
                None => return false,
            };
            image.sort();
            target.contains(&image)
        })
    }
}

impl fmt::Display for VertexPermutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let names: Vec<&str> = c.iter().map(VertexLabel::as_str).collect();
            write!(f, "({})", names.join(" "))?;
        }
        Ok(())
    }
}

struct Profile {
    adjacent: Vec<Vec<bool>>,
    edge_degree: Vec<Vec<usize>>,
    invariant: Vec<(usize, Vec<usize>)>,
    facets: HashSet<Vec<usize>>,
}

impl Profile {
    fn new(x: &SimplicialComplex) -> Self {
        let n = x.num_vertices();
        let mut star: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
        for f in x.facets() {
            for (i, &u) in f.iter().enumerate() {
                for &v in &f[i + 1..] {
                    star.entry((u, v)).or_default().extend(f.iter().copied().filter(|&w| w != u && w != v));
                }
            }
        }
        let mut adjacent = vec![vec![false; n]; n];
        let mut edge_degree = vec![vec![0; n]; n];
        for (&(u, v), link) in &star {
            adjacent[u][v] = true;
            adjacent[v][u] = true;
            edge_degree[u][v] = link.len();
            edge_degree[v][u] = link.len();
        }
        let invariant = (0..n)
            .map(|v| {
                let mut incident: Vec<usize> = (0..n).filter(|&u| adjacent[v][u]).map(|u| edge_degree[v][u]).collect();
                incident.sort_unstable();
                (incident.len(), incident)
            })
            .collect();
        Self { adjacent, edge_degree, invariant, facets: x.facets().iter().cloned().collect() }
    }
}

struct Search<'a> {
    x: &'a SimplicialComplex,
    px: Profile,
    py: Profile,
    order: Vec<usize>,
    /// Facets of `x` whose last vertex in `order` sits at each position.
    closing: Vec<Vec<usize>>,
    candidates: Vec<Vec<usize>>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(x: &'a SimplicialComplex, y: &SimplicialComplex) -> Option<Self> {
        let n = x.num_vertices();
        if n != y.num_vertices() || x.f_vector() != y.f_vector() {
            return None;
        }
        let (px, py) = (Profile::new(x), Profile::new(y));
        let mut xs = px.invariant.clone();
        let mut ys = py.invariant.clone();
        xs.sort();
        ys.sort();
        if xs != ys {
            return None;
        }
        let candidates: Vec<Vec<usize>> =
            (0..n).map(|v| (0..n).filter(|&w| py.invariant[w] == px.invariant[v]).collect()).collect();

        // smallest cell first, then the vertex with most already-ordered neighbours
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| {
                    let links = order.iter().filter(|&&u| px.adjacent[u][v]).count();
                    (std::cmp::Reverse(links), candidates[v].len(), v)
                })
                .expect("unplaced vertex");
            placed[next] = true;
            order.push(next);
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut closing = vec![Vec::new(); n];
        for (k, f) in x.facets().iter().enumerate() {
            let last = f.iter().map(|&v| position[v]).max().expect("non-empty facet");
            closing[last].push(k);
        }
        Some(Self { x, px, py, order, closing, candidates, image: vec![None; n], used: vec![false; n] })
    }

    fn consistent(&self, depth: usize, v: usize, w: usize) -> bool {
        for &u in &self.order[..depth] {
            let t = self.image[u].expect("assigned");
            if self.px.adjacent[u][v] != self.py.adjacent[t][w] || self.px.edge_degree[u][v] != self.py.edge_degree[t][w] {
                return false;
            }
        }
        true
    }

    fn facets_close(&self, depth: usize) -> bool {
        self.closing[depth].iter().all(|&k| {
            let mut f: Vec<usize> = self.x.facets()[k].iter().map(|&v| self.image[v].expect("assigned")).collect();
            f.sort_unstable();
            self.py.facets.contains(&f)
        })
    }

    /// Visits every complete map; stops when `visit` returns `false`.
    fn run(&mut self, depth: usize, visit: &mut impl FnMut(&[Option<usize>]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.image);
        }
        let v = self.order[depth];
        for i in 0..self.candidates[v].len() {
            let w = self.candidates[v][i];
            if self.used[w] || !self.consistent(depth, v, w) {
                continue;
            }
            self.image[v] = Some(w);
            self.used[w] = true;
            let go_on = !self.facets_close(depth) || self.run(depth + 1, visit);
            self.image[v] = None;
            self.used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn to_permutation(x: &SimplicialComplex, y: &SimplicialComplex, image: &[Option<usize>]) -> VertexPermutation {
    VertexPermutation::from_pairs(
        image
            .iter()
            .enumerate()
            .map(|(v, w)| (x.label(v).clone(), y.label(w.expect("complete map")).clone()))
            .collect(),
    )
}

/// All facet-preserving vertex permutations, sorted by mapping.
pub fn automorphism_group(x: &SimplicialComplex) -> Vec<VertexPermutation> {
    let mut out = Vec::new();
    if let Some(mut search) = Search::new(x, x) {
        search.run(0, &mut |image| {
            out.push(to_permutation(x, x, image));
            true
        });
    }
    out.sort();
    out
}

/// A bijection carrying the facets of `x` onto those of `y`, if one exists.
pub fn is_isomorphic(x: &SimplicialComplex, y: &SimplicialComplex) -> Option<VertexPermutation> {
    let mut found = None;
    let mut search = Search::new(x, y)?;
    search.run(0, &mut |image| {
        found = Some(to_permutation(x, y, image));
        false
    });
    found
}

/// Subgroup generated by `gens`, as a sorted list.
pub fn closure(gens: &[VertexPermutation], labels: &[VertexLabel]) -> Vec<VertexPermutation> {
    let mut group: BTreeSet<VertexPermutation> = BTreeSet::from([VertexPermutation::identity(labels)]);
    let mut frontier: Vec<VertexPermutation> = group.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p);
            if group.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    group.into_iter().collect()
}

/// A small generating set, chosen greedily in the group's sorted order.
pub fn generators(group: &[VertexPermutation]) -> Vec<VertexPermutation> {
    let Some(first) = group.first() else { return Vec::new() };
    let labels: Vec<VertexLabel> = first.mapping().iter().map(|(s, _)| s.clone()).collect();
    let mut gens = Vec::new();
    let mut span: BTreeSet<VertexPermutation> = BTreeSet::from([VertexPermutation::identity(&labels)]);
    // prefer elements of larger order, which tend to generate more
    let mut by_order: Vec<&VertexPermutation> = group.iter().filter(|p| !p.is_identity()).collect();
    by_order.sort_by_key(|p| std::cmp::Reverse(p.order()));
    for p in by_order {
        if span.len() == group.len() {
            break;
        }
        if !span.contains(p) {
            gens.push(p.clone());
            span = closure(&gens, &labels).into_iter().collect();
        }
    }
    gens
}
