//! Combinatorial handle surgery.
//!
//! An elementary handle addition removes two facets `σ1`, `σ2` of a closed
//! manifold and identifies each `x ∈ σ1` with `ψ(x) ∈ σ2`, where `ψ` moves
//! every vertex to edge-graph distance at least three. Handle deletion cuts
//! along an induced boundary-of-simplex `S` and caps both sides, inverting
//! an addition. Repeated deletion decomposes a connected member of the class
//! into a stacked sphere plus `β_1` handles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{is_subset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::stacked::{is_stacked_ball, is_stacked_sphere};
use crate::walkup::in_walkup_class;

/// A bijection `ψ : σ1 → σ2` between two disjoint vertex sets, kept sorted
/// by source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexBijection {
    pairs: Vec<(VertexLabel, VertexLabel)>,
}

impl VertexBijection {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(pairs: impl IntoIterator<Item = (S, T)>) -> Result<Self> {
        let pairs = pairs
            .into_iter()
            .map(|(s, t)| Ok((VertexLabel::new(s.as_ref())?, VertexLabel::new(t.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_labels(pairs)
    }

    pub fn from_labels(mut pairs: Vec<(VertexLabel, VertexLabel)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidBijection("no pairs".into()));
        }
        pairs.sort();
        let sources: BTreeSet<&VertexLabel> = pairs.iter().map(|(s, _)| s).collect();
        let targets: BTreeSet<&VertexLabel> = pairs.iter().map(|(_, t)| t).collect();
        if sources.len() != pairs.len() || targets.len() != pairs.len() {
            return Err(Error::InvalidBijection("a vertex occurs twice on one side".into()));
        }
        if let Some(v) = sources.intersection(&targets).next() {
            return Err(Error::InvalidBijection(format!("{v} occurs on both sides")));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(VertexLabel, VertexLabel)] {
        &self.pairs
    }

    /// Source facet, sorted.
    pub fn sigma1(&self) -> Vec<VertexLabel> {
        let mut v: Vec<VertexLabel> = self.pairs.iter().map(|(s, _)| s.clone()).collect();
        v.sort();
        v
    }

    /// Target facet, sorted.
    pub fn sigma2(&self) -> Vec<VertexLabel> {
        let mut v: Vec<VertexLabel> = self.pairs.iter().map(|(_, t)| t.clone()).collect();
        v.sort();
        v
    }

    pub fn image(&self, source: &str) -> Option<&VertexLabel> {
        self.pairs.iter().find(|(s, _)| s.as_str() == source).map(|(_, t)| t)
    }

    /// Renames sources and targets independently.
    pub fn map<F, G>(&self, mut source: F, mut target: G) -> Result<Self>
    where
        F: FnMut(&VertexLabel) -> VertexLabel,
        G: FnMut(&VertexLabel) -> VertexLabel,
    {
        Self::from_labels(self.pairs.iter().map(|(s, t)| (source(s), target(t))).collect())
    }
}

fn facet_index(x: &SimplicialComplex, labels: &[VertexLabel]) -> Result<Vec<usize>> {
    let not_facet = || Error::NotAFacet(labels.iter().map(ToString::to_string).collect());
    let face = x.face_of(labels).map_err(|_| not_facet())?;
    if x.facets().binary_search(&face).is_err() {
        return Err(not_facet());
    }
    Ok(face)
}

/// First pair `(x, ψ(x))` at distance less than three, if any.
fn inadmissible_pair<'a>(
    x: &SimplicialComplex,
    psi: &'a VertexBijection,
) -> Result<Option<&'a (VertexLabel, VertexLabel)>> {
    facet_index(x, &psi.sigma1())?;
    facet_index(x, &psi.sigma2())?;
    let graph = x.edge_graph();
    for pair in psi.pairs() {
        let (s, t) = (x.require_vertex(pair.0.as_str())?, x.require_vertex(pair.1.as_str())?);
        if graph.distance(s, t).is_some_and(|k| k < 3) {
            return Ok(Some(pair));
        }
    }
    Ok(None)
}

/// `true` when every `x ∈ σ1` lies at edge-graph distance at least three from
/// `ψ(x)`.
pub fn is_admissible(x: &SimplicialComplex, psi: &VertexBijection) -> Result<bool> {
    Ok(inadmissible_pair(x, psi)?.is_none())
}

/// Elementary handle addition `X^ψ`.
pub fn handle_addition(x: &SimplicialComplex, psi: &VertexBijection) -> Result<SimplicialComplex> {
    let s1 = facet_index(x, &psi.sigma1())?;
    let s2 = facet_index(x, &psi.sigma2())?;
    if !x.is_closed_pseudomanifold() {
        return Err(Error::NotClosedPseudomanifold);
    }
    if let Some((s, t)) = inadmissible_pair(x, psi)? {
        return Err(Error::NotAdmissible(s.to_string(), t.to_string()));
    }
    let rename: BTreeMap<&VertexLabel, &VertexLabel> = psi.pairs().iter().map(|(s, t)| (s, t)).collect();
    x.without_facets(&[s1, s2])?
        .relabel(|l| rename.get(l).map_or_else(|| l.clone(), |t| (*t).clone()))
        .map_err(|e| match e {
            Error::DuplicateVertexInFacet(f) => Error::WouldCreateDuplicateFacet(f),
            other => other,
        })
}

/// Renames every label of `x2` that collides with `x1` by appending
/// `~k` for the smallest `k >= 2` avoiding all collisions.
fn separate_labels(
    x1: &SimplicialComplex,
    x2: &SimplicialComplex,
) -> Result<(SimplicialComplex, BTreeMap<VertexLabel, VertexLabel>)> {
    let clash = |l: &str| x1.index_of(l).is_some();
    if !x2.labels().iter().any(|l| clash(l.as_str())) {
        return Ok((x2.clone(), BTreeMap::new()));
    }
    let mut k = 2;
    loop {
        let renamed: BTreeMap<VertexLabel, VertexLabel> = x2
            .labels()
            .iter()
            .map(|l| (l.clone(), VertexLabel::new(format!("{l}~{k}")).expect("valid label")))
            .collect();
        let fresh = renamed.values().all(|l| !clash(l.as_str()) && x2.index_of(l.as_str()).is_none());
        if fresh {
            let x2r = x2.relabel(|l| renamed[l].clone())?;
            return Ok((x2r, renamed));
        }
        k += 1;
    }
}

/// Connected sum `X1 # X2` identifying each source `s` (a vertex of `X1`)
/// with its target `t` (a vertex of `X2`). The sources form a facet of `X1`
/// and the targets a facet of `X2`. Labels of `X2` colliding with `X1` are
/// suffixed first, so the pairs may use the same names on both sides.
pub fn connected_sum<S: AsRef<str>, T: AsRef<str>>(
    x1: &SimplicialComplex,
    x2: &SimplicialComplex,
    pairs: &[(S, T)],
) -> Result<SimplicialComplex> {
    let sources: Vec<&str> = pairs.iter().map(|(s, _)| s.as_ref()).collect();
    let targets: Vec<&str> = pairs.iter().map(|(_, t)| t.as_ref()).collect();
    let as_labels = |names: &[&str]| names.iter().map(|&n| VertexLabel::new(n)).collect::<Result<Vec<_>>>();
    facet_index(x1, &as_labels(&sources)?)?;
    facet_index(x2, &as_labels(&targets)?)?;
    let (x2r, renamed) = separate_labels(x1, x2)?;
    let psi = VertexBijection::from_labels(
        pairs
            .iter()
            .map(|(s, t)| {
                let t = VertexLabel::new(t.as_ref())?;
                Ok((VertexLabel::new(s.as_ref())?, renamed.get(&t).cloned().unwrap_or(t)))
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    handle_addition(&x1.disjoint_union(&x2r)?, &psi)
}

/// `X[S]` is the boundary of the simplex on `S`: every proper subset of `S`
/// is a face and `S` is not.
pub(crate) fn induces_standard_sphere(x: &SimplicialComplex, s: &[usize]) -> bool {
    if s.len() < 2 || x.contains_face(s) {
        return false;
    }
    let mut sub = Vec::with_capacity(s.len() - 1);
    (0..s.len()).all(|skip| {
        sub.clear();
        sub.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
        x.contains_face(&sub)
    })
}

fn candidate_sets(x: &SimplicialComplex, v: usize) -> Vec<Vec<usize>> {
    let d = x.dim();
    let Ok(lk) = x.link_of(&[v]) else { return Vec::new() };
    let to_x = |face: &[usize], labels: &[VertexLabel]| -> Vec<usize> {
        let mut s: Vec<usize> =
            face.iter().map(|&i| x.index_of(labels[i].as_str()).expect("link vertex")).collect();
        s.push(v);
        s.sort_unstable();
        s
    };
    let closure = lk.clique_complex();
    if let Ok(ball) = closure.clone().into_complex() {
        if ball.dim() == d && is_stacked_ball(&ball) {
            // interior ridges of the stacked ball spanned by the link
            return ball
                .dual_graph()
                .ridges
                .iter()
                .filter(|(_, fs)| fs.len() == 2)
                .map(|(r, _)| to_x(r, ball.labels()))
                .collect();
        }
    }
    // outside the class: every d-clique of the link graph is a candidate
    let mut out = BTreeSet::new();
    for clique in closure.maximal_faces().iter().filter(|c| c.len() >= d) {
        for_each_subset(clique, d, &mut |sub| {
            out.insert(to_x(sub, closure.labels()));
        });
    }
    out.into_iter().collect()
}

fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f);
}

pub(crate) fn induced_spheres(x: &SimplicialComplex) -> Vec<Vec<usize>> {
    let d = x.dim();
    let degrees = x.degrees();
    let mut found = BTreeSet::new();
    for v in (0..x.num_vertices()).filter(|&v| degrees[v] >= d + 2) {
        for s in candidate_sets(x, v) {
            if !found.contains(&s) && induces_standard_sphere(x, &s) {
                found.insert(s);
            }
        }
    }
    found.into_iter().collect()
}

/// All `(d+1)`-sets `S` with `X[S]` the boundary of the simplex on `S`, in
/// lexicographic order.
pub fn find_induced_standard_spheres(x: &SimplicialComplex) -> Result<Vec<Vec<VertexLabel>>> {
    if x.dim() < 3 {
        return Err(Error::DimensionTooLow(x.dim()));
    }
    Ok(induced_spheres(x).iter().map(|s| s.iter().map(|&v| x.label(v).clone()).collect()).collect())
}

struct Cut {
    result: SimplicialComplex,
    psi: VertexBijection,
    /// Per facet of the input: whether it was moved to the cloned side.
    cloned_side: Vec<bool>,
    clone_of: BTreeMap<VertexLabel, VertexLabel>,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

fn fresh_label(base: &VertexLabel, taken: &BTreeSet<String>) -> VertexLabel {
    (1..)
        .map(|k| format!("{base}~{k}"))
        .find(|l| !taken.contains(l))
        .map(|l| VertexLabel::new(l).expect("valid label"))
        .expect("unbounded search")
}

/// Cuts `y` along the induced sphere `s`. The facets meeting `s` fall into
/// two sides, found by joining facets across every ridge that meets `s`
/// without lying inside it. The side not holding the first such facet gets
/// clones of the `s`-vertices; both sides are then capped.
fn cut(y: &SimplicialComplex, s: &[usize], taken: &BTreeSet<String>) -> Result<Cut> {
    let fail = |why: &str| Error::CutValidationFailed(why.to_string());
    let n = y.num_facets();
    let mut parent: Vec<usize> = (0..n).collect();
    for (ridge, fs) in y.ridge_map() {
        let meets = ridge.iter().any(|v| s.contains(v));
        if meets && !is_subset(&ridge, s) {
            let (a, b) = (find(&mut parent, fs[0]), find(&mut parent, fs[1]));
            parent[a] = b;
        }
    }
    let touching: Vec<usize> =
        (0..n).filter(|&k| y.facets()[k].iter().any(|v| s.contains(v))).collect();
    let roots: BTreeSet<usize> = touching.iter().map(|&k| find(&mut parent, k)).collect();
    if roots.len() != 2 {
        return Err(fail(&format!("expected two sides around the sphere, found {}", roots.len())));
    }
    let keep_root = find(&mut parent, touching[0]);
    let cloned_side: Vec<bool> = (0..n)
        .map(|k| touching.binary_search(&k).is_ok() && find(&mut parent, k) != keep_root)
        .collect();

    let mut taken = taken.clone();
    let mut clone_of = BTreeMap::new();
    for &v in s {
        let c = fresh_label(y.label(v), &taken);
        taken.insert(c.to_string());
        clone_of.insert(y.label(v).clone(), c);
    }
    let mut facets: Vec<Vec<VertexLabel>> = y
        .facets()
        .iter()
        .zip(&cloned_side)
        .map(|(f, &moved)| {
            f.iter()
                .map(|&v| {
                    let l = y.label(v);
                    match clone_of.get(l) {
                        Some(c) if moved => c.clone(),
                        _ => l.clone(),
                    }
                })
                .collect()
        })
        .collect();
    facets.push(s.iter().map(|&v| y.label(v).clone()).collect());
    facets.push(clone_of.values().cloned().collect());
    let result = SimplicialComplex::from_labeled_facets(facets).map_err(|e| fail(&e.to_string()))?;
    let psi = VertexBijection::from_labels(clone_of.iter().map(|(o, c)| (c.clone(), o.clone())).collect())?;

    if !result.is_closed_pseudomanifold() {
        return Err(fail("cut complex is not a closed pseudomanifold"));
    }
    match handle_addition(&result, &psi) {
        Ok(back) if back == *y => {}
        Ok(_) => return Err(fail("re-adding the handle does not restore the input")),
        Err(e) => return Err(fail(&format!("re-adding the handle fails: {e}"))),
    }
    Ok(Cut { result, psi, cloned_side, clone_of })
}

/// Handle deletion along `S`. Returns the cut complex and the bijection
/// (clones → originals) whose handle addition restores `y`.
pub fn handle_deletion<S: AsRef<str>>(
    y: &SimplicialComplex,
    sphere: &[S],
) -> Result<(SimplicialComplex, VertexBijection)> {
    if y.dim() < 3 {
        return Err(Error::DimensionTooLow(y.dim()));
    }
    let names = || sphere.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
    let s = y.face_of(sphere).map_err(|_| Error::NotInducedStandardSphere(names()))?;
    if s.len() != y.dim() + 1 || !induces_standard_sphere(y, &s) {
        return Err(Error::NotInducedStandardSphere(names()));
    }
    if !y.is_closed_pseudomanifold() {
        return Err(Error::NotClosedPseudomanifold);
    }
    let taken = y.labels().iter().map(ToString::to_string).collect();
    let cut = cut(y, &s, &taken)?;
    Ok((cut.result, cut.psi))
}

/// A stacked base sphere plus handles that rebuild a complex.
///
/// Replaying applies each handle in order by [`handle_addition`]; the
/// `relabeling` then maps surviving labels back onto the original ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandleLedger {
    pub base: SimplicialComplex,
    pub handles: Vec<VertexBijection>,
    pub relabeling: BTreeMap<VertexLabel, VertexLabel>,
}

#[derive(Serialize, Deserialize)]
struct HandleWire {
    sigma1: Vec<VertexLabel>,
    sigma2: Vec<VertexLabel>,
    pairs: Vec<(VertexLabel, VertexLabel)>,
}

#[derive(Serialize, Deserialize)]
struct LedgerWire {
    base: Vec<Vec<VertexLabel>>,
    handles: Vec<HandleWire>,
    #[serde(default)]
    relabeling: Vec<(VertexLabel, VertexLabel)>,
}

impl HandleLedger {
    /// Applies the handles to the base, without the final relabeling.
    pub fn replay(&self) -> Result<SimplicialComplex> {
        self.handles.iter().try_fold(self.base.clone(), |x, psi| handle_addition(&x, psi))
    }

    /// Replays and maps labels back to those of the decomposed complex.
    pub fn reconstruct(&self) -> Result<SimplicialComplex> {
        let raw = self.replay()?;
        if self.relabeling.is_empty() {
            return Ok(raw);
        }
        raw.relabel(|l| self.relabeling.get(l).cloned().unwrap_or_else(|| l.clone()))
    }

    pub fn to_json(&self) -> String {
        let wire = LedgerWire {
            base: self
                .base
                .facets()
                .iter()
                .map(|f| f.iter().map(|&v| self.base.label(v).clone()).collect())
                .collect(),
            handles: self
                .handles
                .iter()
                .map(|psi| HandleWire { sigma1: psi.sigma1(), sigma2: psi.sigma2(), pairs: psi.pairs().to_vec() })
                .collect(),
            relabeling: self.relabeling.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        };
        serde_json::to_string_pretty(&wire).expect("ledger serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: LedgerWire = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let base = SimplicialComplex::from_labeled_facets(wire.base)?;
        let mut handles = Vec::with_capacity(wire.handles.len());
        for (k, h) in wire.handles.into_iter().enumerate() {
            let psi = VertexBijection::from_labels(h.pairs)?;
            let (mut s1, mut s2) = (h.sigma1, h.sigma2);
            s1.sort();
            s2.sort();
            if psi.sigma1() != s1 || psi.sigma2() != s2 {
                return Err(Error::Ledger(format!("handle {k}: pairs disagree with sigma1/sigma2")));
            }
            handles.push(psi);
        }
        Ok(Self { base, handles, relabeling: wire.relabeling.into_iter().collect() })
    }
}

/// Follows a chain of renamings to the label currently alive.
fn resolve(rename: &BTreeMap<VertexLabel, VertexLabel>, l: &VertexLabel) -> VertexLabel {
    let mut cur = l;
    while let Some(next) = rename.get(cur) {
        cur = next;
    }
    cur.clone()
}

/// Rewrites a recorded bijection after a later cut of `c` moved some facets
/// onto the cloned side.
fn follow_cut(psi: &VertexBijection, c: &SimplicialComplex, cut: &Cut) -> Result<VertexBijection> {
    let moved = |facet: &[VertexLabel]| -> bool {
        c.face_of(facet)
            .ok()
            .and_then(|f| c.facets().binary_search(&f).ok())
            .is_some_and(|k| cut.cloned_side[k])
    };
    let (m1, m2) = (moved(&psi.sigma1()), moved(&psi.sigma2()));
    let rename = |l: &VertexLabel, on: bool| -> VertexLabel {
        match cut.clone_of.get(l) {
            Some(c) if on => c.clone(),
            _ => l.clone(),
        }
    };
    psi.map(|s| rename(s, m1), |t| rename(t, m2))
}

/// Decomposes a connected member of the class (dimension at least 4) into a
/// stacked sphere and `β_1` handle additions.
///
/// Each round takes a component that is not yet a stacked sphere and deletes
/// the handle along its lexicographically smallest induced sphere; pieces
/// that fall apart go back on the worklist separately. Afterwards the
/// recorded cuts that reconnect the pieces are replayed first, giving the
/// base sphere, and the rest become the ledger's handles.
pub fn kalai_decompose(x: &SimplicialComplex) -> Result<HandleLedger> {
    if x.dim() < 4 {
        return Err(Error::DimensionTooLow(x.dim()));
    }
    if !x.is_connected() || !in_walkup_class(x) {
        return Err(Error::NotWalkup);
    }
    let mut taken: BTreeSet<String> = x.labels().iter().map(ToString::to_string).collect();
    let mut work = VecDeque::from([x.clone()]);
    let mut pieces: Vec<SimplicialComplex> = Vec::new();
    let mut records: Vec<VertexBijection> = Vec::new();
    while let Some(c) = work.pop_front() {
        if is_stacked_sphere(&c) {
            pieces.push(c);
            continue;
        }
        let spheres = induced_spheres(&c);
        let s = spheres.first().ok_or(Error::NotWalkup)?;
        let cut = cut(&c, s, &taken)?;
        taken.extend(cut.clone_of.values().map(ToString::to_string));
        if !in_walkup_class(&cut.result) {
            return Err(Error::CutValidationFailed("handle deletion left the class".into()));
        }
        for r in &mut records {
            *r = follow_cut(r, &c, &cut)?;
        }
        records.push(cut.psi.clone());
        work.extend(cut.result.components());
    }
    assemble(x, pieces, records)
}

fn assemble(
    x: &SimplicialComplex,
    pieces: Vec<SimplicialComplex>,
    records: Vec<VertexBijection>,
) -> Result<HandleLedger> {
    let piece_of = |l: &VertexLabel| pieces.iter().position(|p| p.index_of(l.as_str()).is_some());
    let mut parent: Vec<usize> = (0..pieces.len()).collect();
    let (mut joins, mut handles) = (Vec::new(), Vec::new());
    for (k, psi) in records.iter().enumerate() {
        let (a, b) = (&psi.pairs()[0].0, &psi.pairs()[0].1);
        let (pa, pb) = (
            piece_of(a).ok_or_else(|| Error::CutValidationFailed(format!("{a} not in any piece")))?,
            piece_of(b).ok_or_else(|| Error::CutValidationFailed(format!("{b} not in any piece")))?,
        );
        let (ra, rb) = (find(&mut parent, pa), find(&mut parent, pb));
        if ra != rb {
            parent[ra] = rb;
            joins.push(k);
        } else {
            handles.push(k);
        }
    }

    let mut current = pieces[0].clone();
    for p in &pieces[1..] {
        current = current.disjoint_union(p)?;
    }
    let mut rename: BTreeMap<VertexLabel, VertexLabel> = BTreeMap::new();
    let mut apply = |current: &SimplicialComplex, psi: &VertexBijection| -> Result<(SimplicialComplex, VertexBijection)> {
        let live = psi.map(|s| resolve(&rename, s), |t| resolve(&rename, t))?;
        let next = handle_addition(current, &live)?;
        for (s, t) in live.pairs() {
            rename.insert(s.clone(), t.clone());
        }
        Ok((next, live))
    };
    for &k in &joins {
        current = apply(&current, &records[k])?.0;
    }
    let base = current.clone();
    let mut ledger_handles = Vec::with_capacity(handles.len());
    for &k in &handles {
        let (next, live) = apply(&current, &records[k])?;
        current = next;
        ledger_handles.push(live);
    }

    // every surviving label stands for exactly one original vertex
    let mut relabeling = BTreeMap::new();
    let mut class_members: BTreeMap<VertexLabel, Vec<VertexLabel>> = BTreeMap::new();
    for l in taken_labels(&pieces) {
        class_members.entry(resolve(&rename, &l)).or_default().push(l);
    }
    for l in current.labels() {
        let original = class_members
            .get(l)
            .and_then(|ms| ms.iter().find(|m| x.index_of(m.as_str()).is_some()))
            .ok_or_else(|| Error::CutValidationFailed(format!("{l} has no original vertex")))?;
        if original != l {
            relabeling.insert(l.clone(), original.clone());
        }
    }
    let ledger = HandleLedger { base, handles: ledger_handles, relabeling };
    if ledger.reconstruct()? != *x {
        return Err(Error::CutValidationFailed("replayed ledger differs from the input".into()));
    }
    Ok(ledger)
}

fn taken_labels(pieces: &[SimplicialComplex]) -> Vec<VertexLabel> {
    pieces.iter().flat_map(|p| p.labels().iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::standard_sphere;

    #[test]
    fn bijection_validation() {
        assert!(VertexBijection::new([("a", "b"), ("c", "b")]).is_err());
        assert!(VertexBijection::new([("a", "b"), ("b", "c")]).is_err());
        let empty: [(&str, &str); 0] = [];
        assert!(VertexBijection::new(empty).is_err());
        let psi = VertexBijection::new([("x2", "y1"), ("x1", "y2")]).unwrap();
        assert_eq!(psi.image("x1").unwrap().as_str(), "y2");
        assert_eq!(psi.sigma2().len(), 2);
    }

    #[test]
    fn sum_of_standard_spheres_is_stacked() {
        for d in 1..5 {
            let s = standard_sphere(d);
            let n = d + 2;
            let pairs: Vec<(String, String)> = (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
            let sum = connected_sum(&s, &s, &pairs).unwrap();
            assert_eq!(sum.num_vertices(), d + 3, "d = {d}");
            assert!(is_stacked_sphere(&sum));
        }
    }

    #[test]
    fn not_a_facet() {
        let s = standard_sphere(2);
        let psi = VertexBijection::new([("1", "9"), ("2", "8"), ("3", "7")]).unwrap();
        assert!(matches!(is_admissible(&s, &psi), Err(Error::NotAFacet(_))));
    }

    #[test]
    fn neighbor_images_are_inadmissible() {
        let s = standard_sphere(3);
        let two = s.disjoint_union(&s.relabel(|l| VertexLabel::new(format!("{l}x")).unwrap()).unwrap()).unwrap();
        let ok = VertexBijection::new([("1", "1x"), ("2", "2x"), ("3", "3x"), ("4", "4x")]).unwrap();
        assert!(is_admissible(&two, &ok).unwrap());
    }

    #[test]
    fn induced_sphere_search_requires_dimension_three() {
        assert_eq!(find_induced_standard_spheres(&standard_sphere(2)), Err(Error::DimensionTooLow(2)));
        assert!(find_induced_standard_spheres(&standard_sphere(4)).unwrap().is_empty());
    }

    #[test]
    fn deletion_rejects_non_spheres() {
        let s = standard_sphere(3);
        assert!(matches!(handle_deletion(&s, &["1", "2", "3", "4"]), Err(Error::NotInducedStandardSphere(_))));
        assert!(matches!(handle_deletion(&s, &["1", "2"]), Err(Error::NotInducedStandardSphere(_))));
    }

    #[test]
    fn subsets() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 2]);
    }
}
