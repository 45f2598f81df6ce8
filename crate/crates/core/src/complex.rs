//! Pure simplicial complexes stored as facet lists.
//!
//! Vertices are kept in a sorted label table and referred to internally by
//! their position in that table, so index order and label order agree. Every
//! facet is a strictly increasing index sequence and the facet list itself is
//! sorted; two complexes with the same facets therefore compare equal and
//! serialize identically.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EdgeGraph;
use crate::label::VertexLabel;

/// Face counts `(f_0, ..., f_d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// Alternating sum `f_0 - f_1 + f_2 - ...`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &f)| if j % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl From<Vec<u64>> for FVector {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

/// A finite pure simplicial complex given by its facets.
pub struct SimplicialComplex {
    labels: Vec<VertexLabel>,
    facets: Vec<Vec<usize>>,
    dim: usize,
    faces: OnceLock<Vec<Vec<Vec<usize>>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            facets: self.facets.clone(),
            dim: self.dim,
            faces: self.faces.clone(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("dim", &self.dim)
            .field("f0", &self.labels.len())
            .field("facets", &self.facet_labels().collect::<Vec<_>>())
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds a complex from vertex-label lists, one per facet.
    pub fn from_facets<I, F, S>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut facets = Vec::new();
        for facet in raw {
            let labels = facet
                .into_iter()
                .map(|s| VertexLabel::new(s.as_ref()))
                .collect::<Result<Vec<_>>>()?;
            facets.push(labels);
        }
        Self::from_labeled_facets(facets)
    }

    pub fn from_labeled_facets(raw: Vec<Vec<VertexLabel>>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut canonical = Vec::with_capacity(raw.len());
        let mut dim = None;
        for mut facet in raw {
            if facet.is_empty() {
                return Err(Error::EmptyInput);
            }
            facet.sort();
            if facet.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertexInFacet(strings(&facet)));
            }
            let d = facet.len() - 1;
            match dim {
                None => dim = Some(d),
                Some(e) if e != d => return Err(Error::MixedDimensions(e, d)),
                _ => {}
            }
            canonical.push(facet);
        }
        canonical.sort();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateFacet(strings(&w[0])));
        }
        let labels: Vec<VertexLabel> =
            canonical.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let index: HashMap<&VertexLabel, usize> =
            labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let facets = canonical
            .iter()
            .map(|f| f.iter().map(|l| index[l]).collect())
            .collect();
        Ok(Self { dim: dim.unwrap_or(0), labels, facets, faces: OnceLock::new() })
    }

    /// Builds a complex over (a subset of) an existing label table. Unused
    /// labels are dropped; facets may arrive in any order.
    pub(crate) fn from_indexed(labels: &[VertexLabel], facets: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_labeled_facets(
            facets
                .into_iter()
                .map(|f| f.into_iter().map(|i| labels[i].clone()).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub(crate) fn require_vertex(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Translates labels to a sorted index face.
    pub fn face_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut face = labels
            .iter()
            .map(|l| self.require_vertex(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        face.sort_unstable();
        face.dedup();
        Ok(face)
    }

    pub fn face_labels(&self, face: &[usize]) -> Vec<&str> {
        face.iter().map(|&v| self.labels[v].as_str()).collect()
    }

    pub(crate) fn face_strings(&self, face: &[usize]) -> Vec<String> {
        face.iter().map(|&v| self.labels[v].to_string()).collect()
    }

    /// Facets as sorted index sequences, in canonical order.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_labels(&self) -> impl Iterator<Item = Vec<&str>> + '_ {
        self.facets.iter().map(|f| self.face_labels(f))
    }

    /// Facets as a set of label tuples, independent of the index table.
    pub fn facet_set(&self) -> BTreeSet<Vec<String>> {
        self.facets.iter().map(|f| self.face_strings(f)).collect()
    }

    fn all_faces(&self) -> &Vec<Vec<Vec<usize>>> {
        self.faces.get_or_init(|| {
            let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); self.dim + 1];
            for facet in &self.facets {
                let n = facet.len();
                for mask in 1u64..(1u64 << n) {
                    let face: Vec<usize> =
                        (0..n).filter(|i| mask >> i & 1 == 1).map(|i| facet[i]).collect();
                    by_dim[face.len() - 1].insert(face);
                }
            }
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
        })
    }

    /// All `j`-faces in canonical (lexicographic) order.
    pub fn faces(&self, j: usize) -> &[Vec<usize>] {
        self.all_faces().get(j).map_or(&[], Vec::as_slice)
    }

    /// Position of a face in the canonical order of its dimension.
    pub fn face_position(&self, face: &[usize]) -> Option<usize> {
        if face.is_empty() {
            return None;
        }
        self.faces(face.len() - 1).binary_search_by(|f| f.as_slice().cmp(face)).ok()
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.face_position(face).is_some()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.all_faces().iter().map(|f| f.len() as u64).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    pub fn edge_graph(&self) -> EdgeGraph {
        EdgeGraph::from_edges(self.num_vertices(), self.faces(1).iter().map(|e| (e[0], e[1])))
    }

    /// Number of vertices adjacent to `v`.
    pub fn degree(&self, v: usize) -> usize {
        let mut nbrs = BTreeSet::new();
        for f in self.facets.iter().filter(|f| f.contains(&v)) {
            nbrs.extend(f.iter().copied().filter(|&u| u != v));
        }
        nbrs.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices()];
        for e in self.faces(1) {
            deg[e[0]] += 1;
            deg[e[1]] += 1;
        }
        deg
    }

    /// Link of a face given by labels.
    pub fn link<S: AsRef<str>>(&self, face: &[S]) -> Result<SimplicialComplex> {
        let names: Vec<String> = face.iter().map(|s| s.as_ref().to_string()).collect();
        let idx = self.face_of(face).map_err(|_| Error::FaceNotPresent(names.clone()))?;
        if idx.len() != face.len() {
            return Err(Error::FaceNotPresent(names));
        }
        self.link_of(&idx)
    }

    /// Link of an index face: `{ σ \ f : f ⊆ σ facet }`.
    pub fn link_of(&self, face: &[usize]) -> Result<SimplicialComplex> {
        let rest: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| is_subset(face, f))
            .map(|f| f.iter().copied().filter(|v| !face.contains(v)).collect())
            .collect();
        if rest.is_empty() || face.is_empty() {
            return Err(Error::FaceNotPresent(self.face_strings(face)));
        }
        if rest[0].is_empty() {
            return Err(Error::EmptyLink(self.face_strings(face)));
        }
        Self::from_indexed(&self.labels, rest)
    }

    /// Induced subcomplex on a set of labels.
    pub fn induced_subcomplex<S: AsRef<str>>(&self, vertices: &[S]) -> Result<FaceSystem> {
        let set = self.face_of(vertices)?;
        Ok(self.induced_on(&set))
    }

    pub(crate) fn induced_on(&self, set: &[usize]) -> FaceSystem {
        let mut inside = vec![false; self.num_vertices()];
        for &v in set {
            inside[v] = true;
        }
        let mut maximal: BTreeSet<Vec<usize>> = BTreeSet::new();
        let pieces: BTreeSet<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&v| inside[v]).collect::<Vec<_>>())
            .filter(|p| !p.is_empty())
            .collect();
        // largest first, so a piece is maximal iff no kept piece contains it
        let mut ordered: Vec<Vec<usize>> = pieces.into_iter().collect();
        ordered.sort_by_key(|p| std::cmp::Reverse(p.len()));
        for p in ordered {
            if !maximal.iter().any(|m| m.len() > p.len() && is_subset(&p, m)) {
                maximal.insert(p);
            }
        }
        FaceSystem::from_parts(&self.labels, maximal.into_iter().collect())
    }

    /// Facets grouped by the ridges they contain.
    pub(crate) fn ridge_map(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (k, f) in self.facets.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for skip in 0..f.len() {
                let ridge: Vec<usize> =
                    f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                map.entry(ridge).or_default().push(k);
            }
        }
        map
    }

    /// Complex generated by the ridges that lie in exactly one facet.
    pub fn boundary_complex(&self) -> Result<SimplicialComplex> {
        let map = self.ridge_map();
        if map.values().any(|fs| fs.len() > 2) {
            return Err(Error::NotPseudomanifoldWithBoundary);
        }
        let ridges: Vec<Vec<usize>> =
            map.into_iter().filter(|(_, fs)| fs.len() == 1).map(|(r, _)| r).collect();
        if ridges.is_empty() {
            return Err(Error::EmptyBoundary);
        }
        Self::from_indexed(&self.labels, ridges)
    }

    /// Complex of all cliques of the edge graph.
    pub fn clique_complex(&self) -> FaceSystem {
        let cliques = self.edge_graph().maximal_cliques();
        FaceSystem::from_parts(&self.labels, cliques)
    }

    /// Edge-graph distance, `None` when the vertices lie in different
    /// components.
    pub fn graph_distance(&self, u: &str, v: &str) -> Result<Option<usize>> {
        let (a, b) = (self.require_vertex(u)?, self.require_vertex(v)?);
        Ok(self.edge_graph().distance(a, b))
    }

    /// Connected components, each as its own complex, ordered by smallest
    /// vertex.
    pub fn components(&self) -> Vec<SimplicialComplex> {
        let comp = self.edge_graph().component_ids();
        let mut groups: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for f in &self.facets {
            groups.entry(comp[f[0]]).or_default().push(f.clone());
        }
        groups
            .into_values()
            .map(|fs| Self::from_indexed(&self.labels, fs).expect("sub-facet list of a valid complex"))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.edge_graph().component_ids().iter().all(|&c| c == 0)
    }

    /// Renames vertices; labels sharing an image are identified. Fails when
    /// the identification collapses a facet or merges two facets.
    pub fn relabel<F>(&self, mut rename: F) -> Result<SimplicialComplex>
    where
        F: FnMut(&VertexLabel) -> VertexLabel,
    {
        let new_labels: Vec<VertexLabel> = self.labels.iter().map(&mut rename).collect();
        let mut seen = BTreeSet::new();
        let mut facets = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let mut img: Vec<VertexLabel> = f.iter().map(|&v| new_labels[v].clone()).collect();
            img.sort();
            if img.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertexInFacet(strings(&img)));
            }
            if !seen.insert(img.clone()) {
                return Err(Error::WouldCreateDuplicateFacet(strings(&img)));
            }
            facets.push(img);
        }
        Self::from_labeled_facets(facets)
    }

    /// Disjoint union; the label sets must not overlap.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if self.dim != other.dim {
            return Err(Error::MixedDimensions(self.dim, other.dim));
        }
        if let Some(l) = other.labels.iter().find(|l| self.index_of(l.as_str()).is_some()) {
            return Err(Error::InvalidParameters(format!("label {l} occurs in both complexes")));
        }
        let facets = self
            .facet_labels()
            .chain(other.facet_labels())
            .map(|f| f.into_iter().map(|s| VertexLabel::new(s).expect("valid label")).collect())
            .collect();
        Self::from_labeled_facets(facets)
    }

    /// Same complex without the listed facets.
    pub fn without_facets(&self, remove: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let keep: Vec<Vec<usize>> =
            self.facets.iter().filter(|f| !remove.contains(f)).cloned().collect();
        Self::from_indexed(&self.labels, keep)
    }

    /// Canonical facet-list text: one facet per line, sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in self.facet_labels() {
            out.push_str(&f.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = FacetDocument { facets: self.facet_labels().map(|f| f.into_iter().map(str::to_string).collect()).collect() };
        serde_json::to_string(&doc).expect("facet document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FacetDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_facets(doc.facets)
    }

    /// Parses the facet-list text format.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut facets: Vec<Vec<VertexLabel>> = Vec::new();
        let mut seen: HashMap<Vec<VertexLabel>, usize> = HashMap::new();
        let mut dim: Option<(usize, usize)> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut facet = Vec::new();
            let mut cols: HashMap<VertexLabel, usize> = HashMap::new();
            for (col, token) in tokens(line) {
                let label = VertexLabel::new(token).map_err(|_| Error::Parse {
                    line: line_no,
                    column: col,
                    message: format!("invalid vertex label {token:?}"),
                })?;
                if cols.insert(label.clone(), col).is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        column: col,
                        message: format!("vertex {token:?} repeated within a facet"),
                    });
                }
                facet.push(label);
            }
            let d = facet.len() - 1;
            match dim {
                None => dim = Some((d, line_no)),
                Some((e, first)) if e != d => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!(
                            "facet of dimension {d}, but line {first} has dimension {e}"
                        ),
                    })
                }
                _ => {}
            }
            let mut key = facet.clone();
            key.sort();
            if let Some(prev) = seen.insert(key, line_no) {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    message: format!("facet repeats line {prev}"),
                });
            }
            facets.push(facet);
        }
        if facets.is_empty() {
            return Err(Error::Parse { line: 1, column: 1, message: "no facets".into() });
        }
        Self::from_labeled_facets(facets)
    }

    /// Parses either format; JSON is recognized by a leading `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FacetDocument {
    facets: Vec<Vec<String>>,
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut start = None;
    let mut out = Vec::new();
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, col + 1)),
            (true, Some((b, c))) => {
                out.push((c, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push((c, &line[b..]));
    }
    out.into_iter()
}

fn strings(labels: &[VertexLabel]) -> Vec<String> {
    labels.iter().map(ToString::to_string).collect()
}

/// `a ⊆ b` for sorted index sequences.
pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// A possibly non-pure simplicial complex kept as its list of maximal faces.
///
/// Induced subcomplexes and clique complexes land here; `into_complex`
/// recovers a [`SimplicialComplex`] when the result is pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSystem {
    labels: Vec<VertexLabel>,
    maximal: Vec<Vec<usize>>,
}

impl FaceSystem {
    pub(crate) fn from_parts(labels: &[VertexLabel], maximal: Vec<Vec<usize>>) -> Self {
        let used: BTreeSet<usize> = maximal.iter().flatten().copied().collect();
        let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut maximal: Vec<Vec<usize>> =
            maximal.into_iter().map(|f| f.into_iter().map(|v| remap[&v]).collect()).collect();
        for f in &mut maximal {
            f.sort_unstable();
        }
        maximal.sort();
        Self { labels: used.into_iter().map(|v| labels[v].clone()).collect(), maximal }
    }

    pub fn empty() -> Self {
        Self { labels: Vec::new(), maximal: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    /// Largest face dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.maximal.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.maximal.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn maximal_faces(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn maximal_face_labels(&self) -> Vec<Vec<&str>> {
        self.maximal.iter().map(|f| f.iter().map(|&v| self.labels[v].as_str()).collect()).collect()
    }

    pub fn contains_labels<S: AsRef<str>>(&self, face: &[S]) -> bool {
        let mut idx = Vec::with_capacity(face.len());
        for s in face {
            match self.labels.binary_search_by(|l| l.as_str().cmp(s.as_ref())) {
                Ok(i) => idx.push(i),
                Err(_) => return false,
            }
        }
        idx.sort_unstable();
        self.maximal.iter().any(|m| is_subset(&idx, m))
    }

    pub fn f_vector(&self) -> FVector {
        if self.is_empty() {
            return FVector::default();
        }
        let d = self.dim().unwrap_or(0);
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); d + 1];
        for m in &self.maximal {
            let n = m.len();
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| m[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        FVector(by_dim.iter().map(|s| s.len() as u64).collect())
    }

    /// The pure complex with these facets.
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        if !self.is_pure() {
            let mut dims: Vec<usize> = self.maximal.iter().map(|f| f.len() - 1).collect();
            dims.sort_unstable();
            return Err(Error::MixedDimensions(dims[0], *dims.last().unwrap()));
        }
        SimplicialComplex::from_indexed(&self.labels, self.maximal)
    }
}
