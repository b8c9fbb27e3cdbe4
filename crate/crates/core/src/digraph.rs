//! The complete digraph on `n` vertices, its arcs and directed paths.
//!
//! Vertices are 1-based, so vertex `3` is `v_3`. A
//! [`Decomposition`] is only a *claimed* partition of the arc set; use
//! [`crate::verifier::verify`] to decide whether it actually is one.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A vertex of the complete digraph, numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// An ordered pair of distinct vertices. Ordering is lexicographic on
/// `(tail, head)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Arc {
    /// Builds an arc, rejecting loops.
    pub fn new(tail: u32, head: u32) -> Result<Self> {
        if tail == head {
            return Err(Error::RepeatedVertex { path: vec![tail, head], vertex: tail });
        }
        Ok(Arc { tail: Vertex(tail), head: Vertex(head) })
    }

    pub fn reversed(self) -> Arc {
        Arc { tail: self.head, head: self.tail }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail.0, self.head.0)
    }
}

impl Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.tail.0, self.head.0].serialize(serializer)
    }
}

/// A directed path: at least two pairwise distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DirectedPath(Vec<Vertex>);

impl DirectedPath {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        let raw: Vec<u32> = vertices.iter().map(|v| v.0).collect();
        if vertices.len() < 2 {
            return Err(Error::PathTooShort(raw));
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for v in &vertices {
            if !seen.insert(*v) {
                return Err(Error::RepeatedVertex { path: raw, vertex: v.0 });
            }
        }
        Ok(DirectedPath(vertices))
    }

    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        Self::new(indices.iter().copied().map(Vertex).collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.0).collect()
    }

    /// Number of arcs, one less than the number of vertices.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    /// Always false: a path has at least one arc.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.0.windows(2).map(|w| Arc { tail: w[0], head: w[1] })
    }

    /// The path traversed backwards, `v_m ... v_1`.
    pub fn reversed(&self) -> DirectedPath {
        DirectedPath(self.0.iter().rev().copied().collect())
    }

    /// Applies a vertex relabeling; `perm[i - 1]` is the image of vertex `i`.
    pub fn relabeled(&self, perm: &[u32]) -> DirectedPath {
        DirectedPath(self.0.iter().map(|v| Vertex(perm[v.0 as usize - 1])).collect())
    }
}

impl fmt::Display for DirectedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Arcs of the path given as raw vertex indices, in traversal order.
pub fn arcs_of(indices: &[u32]) -> Result<Vec<Arc>> {
    Ok(DirectedPath::from_indices(indices)?.arcs().collect())
}

/// Every arc of the complete digraph on `n` vertices.
pub fn all_arcs(n: u32) -> Result<BTreeSet<Arc>> {
    if n < 2 {
        return Err(Error::OrderOutOfRange { n, reason: "the complete digraph needs n >= 2" });
    }
    Ok((1..=n)
        .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| Arc { tail: Vertex(u), head: Vertex(v) }))
        .collect())
}

/// A claimed decomposition of the complete digraph into directed paths.
///
/// Construction only checks that every vertex lies in `1..=n`; partition and
/// balance are the verifier's business.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    n: u32,
    paths: Vec<DirectedPath>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDecomposition {
    n: u32,
    paths: Vec<Vec<u32>>,
}

impl Decomposition {
    pub fn new(n: u32, paths: Vec<DirectedPath>) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderOutOfRange { n, reason: "the complete digraph needs n >= 2" });
        }
        for path in &paths {
            if let Some(v) = path.vertices().iter().find(|v| v.0 == 0 || v.0 > n) {
                return Err(Error::VertexOutOfRange { vertex: v.0, n });
            }
        }
        Ok(Decomposition { n, paths })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn paths(&self) -> &[DirectedPath] {
        &self.paths
    }

    pub fn into_paths(self) -> Vec<DirectedPath> {
        self.paths
    }

    /// Relabels every vertex through `perm` (a permutation of `1..=n`).
    pub fn relabeled(&self, perm: &[u32]) -> Result<Decomposition> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=self.n).collect::<Vec<_>>() {
            return Err(Error::Schema(format!("{perm:?} is not a permutation of 1..={}", self.n)));
        }
        Ok(Decomposition { n: self.n, paths: self.paths.iter().map(|p| p.relabeled(perm)).collect() })
    }

    /// Parses the canonical `{"n": .., "paths": [[..], ..]}` document.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDecomposition = serde_json::from_str(text)?;
        let paths = raw.paths.iter().map(|p| DirectedPath::from_indices(p)).collect::<Result<Vec<_>>>()?;
        Decomposition::new(raw.n, paths)
    }

    /// Canonical single-line JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("decomposition serializes");
        out.push('\n');
        out
    }

    /// Graphviz rendering; every arc carries the index of its path as `part`.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph DK{} {{\n", self.n);
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v} [label=\"v{v}\"];");
        }
        for (k, path) in self.paths.iter().enumerate() {
            for arc in path.arcs() {
                let _ = writeln!(out, "  {} -> {} [part={k}];", arc.tail.0, arc.head.0);
            }
        }
        out.push_str("}\n");
        out
    }
}
