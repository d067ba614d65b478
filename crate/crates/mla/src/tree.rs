//! Undirected labeled trees over vertex ids `1..=n`, plus the edge-list
//! text format used for fixtures and CLI input.
//!
//! The edge-list format is one line with `n`, followed by `n - 1` lines
//! `"u v"` (single space, LF line endings, no comments):
//!
//! ```text
//! 5
//! 1 2
//! 2 3
//! 3 4
//! 4 5
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Vertex identifier. Vertices of an `n`-vertex tree are `1..=n`.
pub type VertexId = u32;

/// Errors from tree construction and edge-list parsing.
///
/// `line` is the 1-based line number of the offending input line. When a
/// tree is built from an edge iterator instead of text, edge `i` (1-based)
/// maps to line `i + 1`, matching where it would sit in the text format.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("empty input")]
    Empty,
    #[error("line 1: invalid vertex count")]
    BadVertexCount,
    #[error("vertex count {n} out of range")]
    VertexCountOutOfRange { n: usize },
    #[error("line {line}: malformed edge line")]
    MalformedLine { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge {
        line: usize,
        u: VertexId,
        v: VertexId,
    },
    #[error("line {line}: cycle detected")]
    CycleDetected { line: usize },
    #[error("disconnected input: {missing} missing edge(s)")]
    Disconnected { missing: usize },
}

/// An undirected tree on vertices `1..=n`: exactly `n - 1` edges, connected
/// and acyclic, verified at construction. Immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<VertexId>>,
}

impl Tree {
    /// Build a tree from a vertex count and an edge list.
    ///
    /// Edges are validated in order with a union-find, so the first edge
    /// closing a cycle is the one reported.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, TreeError> {
        if n == 0 || n > (u32::MAX as usize) {
            return Err(TreeError::VertexCountOutOfRange { n });
        }
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut normalized: Vec<(VertexId, VertexId)> = Vec::with_capacity(n.saturating_sub(1));
        let mut dsu = DisjointSet::new(n);

        for (idx, (u, v)) in edges.into_iter().enumerate() {
            let line = idx + 2;
            for &w in &[u, v] {
                if w == 0 || (w as usize) > n {
                    return Err(TreeError::VertexOutOfRange {
                        line,
                        vertex: w as u64,
                        n,
                    });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop { line, vertex: u });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if adj[(a - 1) as usize].contains(&b) {
                return Err(TreeError::DuplicateEdge { line, u: a, v: b });
            }
            if !dsu.union((a - 1) as usize, (b - 1) as usize) {
                return Err(TreeError::CycleDetected { line });
            }
            adj[(a - 1) as usize].push(b);
            adj[(b - 1) as usize].push(a);
            normalized.push((a, b));
        }

        if normalized.len() < n - 1 {
            return Err(TreeError::Disconnected {
                missing: n - 1 - normalized.len(),
            });
        }
        // n - 1 acyclic edges on n vertices form a spanning tree.
        for list in &mut adj {
            list.sort_unstable();
        }
        normalized.sort_unstable();
        Ok(Tree {
            n,
            edges: normalized,
            adj,
        })
    }

    /// Parse the edge-list text format. Errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut segments: Vec<&str> = text.split('\n').map(|l| l.trim_end_matches('\r')).collect();
        // Trailing newlines are fine; blank lines anywhere else are not.
        while segments.len() > 1 && segments.last().is_some_and(|l| l.is_empty()) {
            segments.pop();
        }
        let first = *segments.first().ok_or(TreeError::Empty)?;
        if first.is_empty() {
            return Err(TreeError::Empty);
        }
        let n: usize = first.parse().map_err(|_| TreeError::BadVertexCount)?;
        if n == 0 {
            return Err(TreeError::VertexCountOutOfRange { n });
        }

        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        for (i, content) in segments[1..].iter().enumerate() {
            let line = i + 2;
            if content.is_empty() {
                return Err(TreeError::MalformedLine { line });
            }
            let mut parts = content.split(' ');
            let (u, v) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => (a, b),
                _ => return Err(TreeError::MalformedLine { line }),
            };
            let u: u64 = u.parse().map_err(|_| TreeError::MalformedLine { line })?;
            let v: u64 = v.parse().map_err(|_| TreeError::MalformedLine { line })?;
            for &w in &[u, v] {
                if w == 0 || w > n as u64 {
                    return Err(TreeError::VertexOutOfRange { line, vertex: w, n });
                }
            }
            edges.push((u as VertexId, v as VertexId));
        }
        Tree::new(n, edges)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges normalized as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[(v - 1) as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[(v - 1) as usize].len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v >= 1 && (v as usize) <= self.n
    }

    /// Vertices `1..=n` in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        1..=self.n as VertexId
    }

    /// Render in the edge-list text format (LF endings, trailing newline).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl FromStr for Tree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tree::parse(s)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false if both were already in the same component.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
