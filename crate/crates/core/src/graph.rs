//! Undirected simple graphs stored as symmetric bit matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eigen::SymMatrix;
use crate::error::{Error, Result};

/// Properties a generator knows to hold by construction.
///
/// Parsers never set the structural flags; they are only asserted by
/// generators whose output is known to have the property.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetadata {
    pub name: String,
    pub regular_degree: Option<usize>,
    pub vertex_transitive: bool,
    pub distance_regular: bool,
}

impl GraphMetadata {
    pub fn named(name: impl Into<String>) -> Self {
        GraphMetadata {
            name: name.into(),
            ..Default::default()
        }
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Each row of the adjacency matrix is a packed bitset of `words` u64 words.
/// Equality compares adjacency only; metadata is ignored.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    meta: Option<GraphMetadata>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name())
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "graphs have at least one vertex");
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            meta: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterOutOfRange("vertex count must be >= 1".into()));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from a predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            for u in 0..v {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { index: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn with_meta(mut self, meta: GraphMetadata) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        match &mut self.meta {
            Some(m) => m.name = name,
            None => self.meta = Some(GraphMetadata::named(name)),
        }
        self
    }

    pub fn meta(&self) -> Option<&GraphMetadata> {
        self.meta.as_ref()
    }

    pub fn name(&self) -> &str {
        self.meta.as_ref().map_or("", |m| m.name.as_str())
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.meta.as_ref().is_some_and(|m| m.vertex_transitive)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Packed neighbourhood of `v` (bit `u` set iff `u ~ v`).
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn m(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |v| (0..v).filter(move |&u| self.has_edge(u, v)).map(move |u| (u, v)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.rows.iter().all(|&w| w == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * (self.n - 1) / 2
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// `J - I - A`. The name gains a `complement of` prefix and only
    /// vertex transitivity survives among the flags.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::from_fn(self.n, |u, v| !self.has_edge(u, v));
        if let Some(meta) = &self.meta {
            g.meta = Some(GraphMetadata {
                name: format!("complement of {}", meta.name),
                regular_degree: None,
                vertex_transitive: meta.vertex_transitive,
                distance_regular: false,
            });
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::ParameterOutOfRange("induced subgraph needs at least one vertex".into()));
        }
        let mut seen = vec![false; self.n];
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { index: v, n: self.n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        Ok(Graph::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j])))
    }

    pub fn adjacency_matrix(&self) -> SymMatrix {
        let mut a = SymMatrix::zeros(self.n);
        for (u, v) in self.edges() {
            a.set(u, v, 1.0);
        }
        a
    }

    /// Adjacency matrix of the complement, `J - I - A`.
    pub fn complement_matrix(&self) -> SymMatrix {
        let mut a = SymMatrix::zeros(self.n);
        for v in 1..self.n {
            for u in 0..v {
                if !self.has_edge(u, v) {
                    a.set(u, v, 1.0);
                }
            }
        }
        a
    }

    /// Applies `perm` as a relabelling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: perm.len() });
        }
        let mut inverse = vec![usize::MAX; self.n];
        for (v, &p) in perm.iter().enumerate() {
            if p >= self.n {
                return Err(Error::VertexOutOfRange { index: p, n: self.n });
            }
            if inverse[p] != usize::MAX {
                return Err(Error::DuplicateVertex(p));
            }
            inverse[p] = v;
        }
        Ok(Graph::from_fn(self.n, |a, b| self.has_edge(inverse[a], inverse[b])))
    }

    /// Parses the edge-list format: a header `n m` followed by `m` lines `u v`.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::EdgeList { line: 1, reason: "missing header".into() })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut g = if n == 0 {
            return Err(Error::EdgeList { line: hline, reason: "vertex count must be >= 1".into() });
        } else {
            Graph::empty(n)
        };
        let mut count = 0;
        for (line, text) in lines {
            let [u, v] = parse_pair(line, text)?;
            g.try_add_edge(u, v).map_err(|e| Error::EdgeList { line, reason: e.to_string() })?;
            count += 1;
        }
        if count != m {
            return Err(Error::EdgeList {
                line: hline,
                reason: format!("header announces {m} edges, found {count}"),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let err = |reason: &str| Error::EdgeList { line, reason: reason.into() };
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("trailing tokens"));
    }
    let a = a.parse().map_err(|_| err("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| err("not a non-negative integer"))?;
    Ok([a, b])
}
