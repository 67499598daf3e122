//! Core digraph type and the structural operations everything else builds on.
//!
//! Vertices are `0..n`. Arcs are ordered pairs; loops are allowed, parallel
//! arcs are not. A digraph may optionally carry one [`VertexWord`] label per
//! vertex, which the family constructors use for alphabet words.

use std::collections::BTreeMap;
use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::matrix::{BitMatrix, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("digraph must have at least one vertex")]
    Empty,
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("expected {n} labels, got {got}")]
    LabelCountMismatch { n: usize, got: usize },
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(VertexWord),
    #[error("symbol {sym} outside alphabet of size {alphabet}")]
    SymbolOutOfRange { sym: u8, alphabet: u8 },
    #[error("vertex word must be nonempty")]
    EmptyWord,
    #[error("vertex word may only contain decimal digits")]
    BadWordChar,
    #[error("line digraph requires at least one arc")]
    NoArcs,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
}

/// A word over a finite alphabet `{0, ..., q-1}`, used as a vertex label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexWord(Vec<u8>);

impl VertexWord {
    /// Builds a word, checking every symbol against the alphabet size.
    pub fn new(symbols: impl Into<Vec<u8>>, alphabet: u8) -> Result<Self, DigraphError> {
        let symbols = symbols.into();
        if symbols.is_empty() {
            return Err(DigraphError::EmptyWord);
        }
        for &sym in &symbols {
            if sym >= alphabet {
                return Err(DigraphError::SymbolOutOfRange { sym, alphabet });
            }
        }
        Ok(VertexWord(symbols))
    }

    /// Builds a word without an alphabet bound (the implied alphabet is the
    /// largest symbol plus one). Used when labels come from external files.
    pub fn from_symbols(symbols: impl Into<Vec<u8>>) -> Result<Self, DigraphError> {
        let symbols = symbols.into();
        if symbols.is_empty() {
            return Err(DigraphError::EmptyWord);
        }
        Ok(VertexWord(symbols))
    }

    /// Parses a string of decimal digits, one symbol per digit.
    pub fn parse(s: &str) -> Result<Self, DigraphError> {
        if s.is_empty() {
            return Err(DigraphError::EmptyWord);
        }
        let mut symbols = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c.to_digit(10) {
                Some(d) => symbols.push(d as u8),
                None => return Err(DigraphError::BadWordChar),
            }
        }
        Ok(VertexWord(symbols))
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True iff all symbols are equal.
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            // wide alphabets need a separator to stay unambiguous
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// Count of simple cycles by length, as produced by [`Digraph::cycle_census`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleCensus {
    counts: BTreeMap<usize, u64>,
}

impl CycleCensus {
    pub fn count(&self, len: usize) -> u64 {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    /// Number of loops (cycles of length 1).
    pub fn loops(&self) -> u64 {
        self.count(1)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Nonzero entries in increasing length order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&l, &c)| (l, c))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u64)>) -> Self {
        CycleCensus {
            counts: pairs.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }
}

impl fmt::Display for CycleCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(l, c)| format!("{l}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Directed graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    labels: Option<Vec<VertexWord>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::Empty);
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n {
                return Err(DigraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(DigraphError::VertexOutOfRange { v, n });
            }
            out[u].push(v);
            inn[v].push(u);
        }
        for (u, nbrs) in out.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(DigraphError::DuplicateArc(u, w[0]));
            }
        }
        for nbrs in &mut inn {
            nbrs.sort_unstable();
        }
        Ok(Digraph { out, inn, labels: None })
    }

    /// Attaches one label per vertex; labels must be distinct.
    pub fn with_labels(mut self, labels: Vec<VertexWord>) -> Result<Self, DigraphError> {
        if labels.len() != self.n() {
            return Err(DigraphError::LabelCountMismatch {
                n: self.n(),
                got: labels.len(),
            });
        }
        let mut seen = labels.clone();
        seen.sort();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(DigraphError::DuplicateLabel(w[0].clone()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for (u, nbrs) in self.out.iter().enumerate() {
            for &v in nbrs {
                arcs.push((u, v));
            }
        }
        arcs
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Returns `Some(d)` iff every vertex has in-degree and out-degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.out[0].len();
        for u in 0..self.n() {
            if self.out[u].len() != d || self.inn[u].len() != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn labels(&self) -> Option<&[VertexWord]> {
        self.labels.as_deref()
    }

    pub fn label(&self, u: usize) -> Option<&VertexWord> {
        self.labels.as_ref().map(|l| &l[u])
    }

    pub fn vertex_by_label(&self, w: &VertexWord) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == w)
    }

    /// Label of `u` as a string, falling back to the vertex index.
    pub fn vertex_name(&self, u: usize) -> String {
        match self.label(u) {
            Some(w) => w.to_string(),
            None => u.to_string(),
        }
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.n());
        for (u, v) in self.arcs() {
            m.set(u, v, 1.into());
        }
        m
    }

    pub fn bit_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::new(self.n());
        for (u, v) in self.arcs() {
            m.set(u, v, true);
        }
        m
    }

    /// The converse digraph: every arc reversed, labels kept.
    pub fn converse(&self) -> Digraph {
        Digraph {
            out: self.inn.clone(),
            inn: self.out.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Line digraph: one vertex per arc of `self`, with an arc from (u,v) to
    /// (w,z) iff v = w.
    ///
    /// When `self` is labeled with words of a common length and every arc is
    /// a shift (the tail's word minus its first symbol equals the head's word
    /// minus its last), arc vertices are labeled with the merged word of
    /// length one greater; this makes the line digraph of a word family again
    /// a word family. Otherwise labels are concatenated, and dropped entirely
    /// if that would collide.
    pub fn line_digraph(&self) -> Result<Digraph, DigraphError> {
        let arcs = self.arcs();
        if arcs.is_empty() {
            return Err(DigraphError::NoArcs);
        }
        // index of each original arc in lexicographic order
        let mut index = BTreeMap::new();
        for (i, &a) in arcs.iter().enumerate() {
            index.insert(a, i);
        }
        let mut new_arcs = Vec::new();
        for (i, &(_, v)) in arcs.iter().enumerate() {
            for &z in self.out_neighbors(v) {
                new_arcs.push((i, index[&(v, z)]));
            }
        }
        let g = Digraph::new(arcs.len(), &new_arcs)?;
        let Some(labels) = &self.labels else {
            return Ok(g);
        };
        let len = labels[0].len();
        let uniform = labels.iter().all(|w| w.len() == len);
        let shifted = uniform
            && arcs.iter().all(|&(u, v)| {
                labels[u].symbols()[1..] == labels[v].symbols()[..len - 1]
            });
        let arc_labels: Vec<VertexWord> = arcs
            .iter()
            .map(|&(u, v)| {
                let mut sym = labels[u].symbols().to_vec();
                if shifted {
                    sym.push(labels[v].symbols()[len - 1]);
                } else {
                    sym.extend_from_slice(labels[v].symbols());
                }
                VertexWord(sym)
            })
            .collect();
        let mut sorted = arc_labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(g); // concatenation collided; leave unlabeled
        }
        g.with_labels(arc_labels)
    }

    /// Heuchenne's criterion: `self` is a line digraph iff any two vertices
    /// have out-neighborhoods that are equal or disjoint.
    pub fn is_line_digraph(&self) -> bool {
        let n = self.n();
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (&self.out[u], &self.out[v]);
                if a == b {
                    continue;
                }
                if !sorted_disjoint(a, b) {
                    return false;
                }
            }
        }
        true
    }

    fn bfs_dist(&self, src: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.bfs_dist(0, &self.out).iter().all(Option::is_some)
            && self.bfs_dist(0, &self.inn).iter().all(Option::is_some)
    }

    /// Maximum over ordered vertex pairs of the shortest directed distance.
    pub fn diameter(&self) -> Result<usize, DigraphError> {
        let mut diam = 0;
        for u in 0..self.n() {
            for d in self.bfs_dist(u, &self.out) {
                match d {
                    Some(d) => diam = diam.max(d),
                    None => return Err(DigraphError::NotStronglyConnected),
                }
            }
        }
        Ok(diam)
    }

    fn visit_cycles(&self, max_len: usize, f: &mut impl FnMut(&[usize])) {
        // every simple cycle is rooted at its minimal vertex, so only larger
        // vertices may appear later on the path
        let n = self.n();
        let mut path = Vec::new();
        let mut on_path = vec![false; n];
        for root in 0..n {
            path.push(root);
            on_path[root] = true;
            self.cycle_dfs(root, max_len, &mut path, &mut on_path, f);
            on_path[root] = false;
            path.pop();
        }
    }

    fn cycle_dfs(
        &self,
        root: usize,
        max_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        f: &mut impl FnMut(&[usize]),
    ) {
        let u = *path.last().unwrap();
        for &v in &self.out[u] {
            if v == root {
                f(path);
            } else if v > root && !on_path[v] && path.len() < max_len {
                path.push(v);
                on_path[v] = true;
                self.cycle_dfs(root, max_len, path, on_path, f);
                on_path[v] = false;
                path.pop();
            }
        }
    }

    /// Counts simple directed cycles of each length up to `max_len`.
    pub fn cycle_census(&self, max_len: usize) -> CycleCensus {
        let mut counts = BTreeMap::new();
        self.visit_cycles(max_len, &mut |path: &[usize]| {
            *counts.entry(path.len()).or_insert(0u64) += 1;
        });
        CycleCensus { counts }
    }

    /// All simple directed cycles up to `max_len`, each listed from its
    /// minimal vertex. Deterministic order.
    pub fn simple_cycles(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut cycles = Vec::new();
        self.visit_cycles(max_len, &mut |path: &[usize]| {
            cycles.push(path.to_vec());
        });
        cycles
    }

    /// Entry (u,v) counts directed walks of length exactly `len` from u to v.
    pub fn walk_matrix(&self, len: usize) -> IntMatrix {
        self.adjacency_matrix().pow(len)
    }
}

fn sorted_disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.out == other.out && self.labels == other.labels
    }
}

impl Eq for Digraph {}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?}", self.n(), self.arcs())?;
        if let Some(labels) = &self.labels {
            let names: Vec<String> = labels.iter().map(|w| w.to_string()).collect();
            write!(f, ", labels={names:?}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph::new(n, &arcs).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Digraph::new(0, &[]), Err(DigraphError::Empty));
        assert_eq!(
            Digraph::new(2, &[(0, 2)]),
            Err(DigraphError::VertexOutOfRange { v: 2, n: 2 })
        );
        assert_eq!(
            Digraph::new(2, &[(0, 1), (0, 1)]),
            Err(DigraphError::DuplicateArc(0, 1))
        );
    }

    #[test]
    fn arcs_come_out_sorted() {
        let g = Digraph::new(3, &[(2, 0), (0, 2), (0, 1), (1, 1)]).unwrap();
        assert_eq!(g.arcs(), vec![(0, 1), (0, 2), (1, 1), (2, 0)]);
        assert!(g.has_arc(1, 1));
        assert!(!g.has_arc(1, 0));
        assert_eq!(g.in_neighbors(1), &[0, 1]);
    }

    #[test]
    fn labels_must_be_distinct_and_complete() {
        let g = Digraph::new(2, &[(0, 1)]).unwrap();
        let w = |s: &str| VertexWord::parse(s).unwrap();
        assert!(matches!(
            g.clone().with_labels(vec![w("0")]),
            Err(DigraphError::LabelCountMismatch { .. })
        ));
        assert!(matches!(
            g.clone().with_labels(vec![w("0"), w("0")]),
            Err(DigraphError::DuplicateLabel(_))
        ));
        let g = g.with_labels(vec![w("0"), w("1")]).unwrap();
        assert_eq!(g.vertex_name(1), "1");
        assert_eq!(g.vertex_by_label(&w("1")), Some(1));
    }

    #[test]
    fn converse_is_involution_and_transpose() {
        let g = Digraph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)]).unwrap();
        let c = g.converse();
        assert_eq!(c.converse(), g);
        let (a, at) = (g.adjacency_matrix(), c.adjacency_matrix());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.get(i, j), at.get(j, i));
            }
        }
    }

    #[test]
    fn directed_cycle_is_its_own_line_digraph() {
        let g = cycle(5);
        let l = g.line_digraph().unwrap();
        assert_eq!(l.n(), 5);
        assert!(l.is_line_digraph());
        assert_eq!(l.arc_count(), 5);
        assert_eq!(l.diameter().unwrap(), 4);
    }

    #[test]
    fn heuchenne_rejects_overlapping_out_sets() {
        // out(0) = {1,2} and out(1) = {2} overlap without being equal
        let g = Digraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!g.is_line_digraph());
    }

    #[test]
    fn heuchenne_agrees_with_converse_form() {
        // equal-or-disjoint out-neighborhoods iff the same holds for in
        let g = Digraph::new(4, &[(0, 2), (1, 2), (2, 0), (2, 1), (3, 0), (3, 1)]).unwrap();
        assert_eq!(g.is_line_digraph(), g.converse().is_line_digraph());
    }

    #[test]
    fn line_digraph_labels_shift_words() {
        let w = |s: &str| VertexWord::parse(s).unwrap();
        let g = Digraph::new(2, &[(0, 0), (0, 1), (1, 0), (1, 1)])
            .unwrap()
            .with_labels(vec![w("0"), w("1")])
            .unwrap();
        let l = g.line_digraph().unwrap();
        let names: Vec<String> = (0..4).map(|u| l.vertex_name(u)).collect();
        assert_eq!(names, vec!["00", "01", "10", "11"]);
    }

    #[test]
    fn strong_connectivity_and_diameter() {
        assert!(cycle(6).is_strongly_connected());
        assert_eq!(cycle(6).diameter().unwrap(), 5);
        let path = Digraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_strongly_connected());
        assert_eq!(path.diameter(), Err(DigraphError::NotStronglyConnected));
        let single = Digraph::new(1, &[]).unwrap();
        assert!(single.is_strongly_connected());
        assert_eq!(single.diameter().unwrap(), 0);
    }

    #[test]
    fn cycle_census_counts_rotations_once() {
        let g = cycle(4);
        let census = g.cycle_census(8);
        assert_eq!(census.count(4), 1);
        assert_eq!(census.total(), 1);
        // two loops and a shared 2-cycle
        let h = Digraph::new(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let census = h.cycle_census(2);
        assert_eq!(census.count(1), 2);
        assert_eq!(census.count(2), 1);
        assert_eq!(h.cycle_census(1).count(2), 0);
    }

    #[test]
    fn simple_cycles_start_at_minimal_vertex() {
        let g = Digraph::new(3, &[(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap();
        let cycles = g.simple_cycles(3);
        assert_eq!(cycles, vec![vec![0, 1, 2], vec![1]]);
    }

    #[test]
    fn brute_force_census_cross_check() {
        // complete digraph without loops on 4 vertices:
        // C(4,2) 2-cycles, 2*C(4,3) 3-cycles, 3!/... = 6 4-cycles
        let mut arcs = Vec::new();
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    arcs.push((u, v));
                }
            }
        }
        let g = Digraph::new(4, &arcs).unwrap();
        let census = g.cycle_census(4);
        assert_eq!(census.count(2), 6);
        assert_eq!(census.count(3), 8);
        assert_eq!(census.count(4), 6);
    }

    #[test]
    fn walk_matrix_counts_walks() {
        let g = cycle(3);
        assert_eq!(g.walk_matrix(0), IntMatrix::identity(3));
        assert_eq!(g.walk_matrix(3), IntMatrix::identity(3));
        let g = Digraph::new(2, &[(0, 1), (1, 0), (1, 1)]).unwrap();
        // walks of length 2 from 1 to 1: 1->0->1 and 1->1->1
        assert_eq!(*g.walk_matrix(2).get(1, 1), 2.into());
    }

    #[test]
    fn word_parsing_and_display() {
        assert_eq!(VertexWord::parse("102").unwrap().symbols(), &[1, 0, 2]);
        assert_eq!(VertexWord::parse("102").unwrap().to_string(), "102");
        assert!(VertexWord::parse("").is_err());
        assert!(VertexWord::parse("1a").is_err());
        assert!(VertexWord::new(vec![0, 3], 3).is_err());
        assert!(VertexWord::parse("00").unwrap().is_constant());
        assert!(!VertexWord::parse("010").unwrap().is_constant());
        let wide = VertexWord::from_symbols(vec![3, 12]).unwrap();
        assert_eq!(wide.to_string(), "3.12");
    }
}
