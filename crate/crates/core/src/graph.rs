use std::collections::VecDeque;

use crate::bitset::BitSet;

/// Simple undirected graph on `0..n` with bitset adjacency rows.
#[derive(Clone, Debug)]
pub struct EdgeGraph {
    adj: Vec<BitSet>,
}

impl EdgeGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![BitSet::new(n); n];
        for (u, v) in edges {
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        Self { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    /// Component id per vertex; ids are numbered by smallest member.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut next = 0;
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.adj[u].iter() {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// All maximal cliques, each sorted, in lexicographic order. Isolated
    /// vertices come out as singleton cliques.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.bron_kerbosch(&mut current, BitSet::full(n), BitSet::new(n), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        current: &mut Vec<usize>,
        mut candidates: BitSet,
        mut excluded: BitSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if candidates.is_empty() {
            if excluded.is_empty() && !current.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        // pivot: the vertex of P ∪ X with most neighbors in P
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .max_by_key(|&u| self.adj[u].intersection_len(&candidates))
            .expect("candidates non-empty");
        let branch = candidates.difference(&self.adj[pivot]);
        for v in branch.iter() {
            current.push(v);
            self.bron_kerbosch(
                current,
                candidates.intersection(&self.adj[v]),
                excluded.intersection(&self.adj[v]),
                out,
            );
            current.pop();
            candidates.remove(v);
            excluded.insert(v);
        }
    }
}
