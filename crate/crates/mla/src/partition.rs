//! Removing a center vertex from a tree: the resulting subtrees sorted by
//! decreasing size, and centroid selection.

use thiserror::Error;

use crate::tree::{Tree, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {vertex} not in tree")]
    VertexNotInTree { vertex: VertexId },
}

/// One component of `T - v`: its vertices (sorted ascending) and the unique
/// vertex adjacent to the removed center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    pub root: VertexId,
    pub vertices: Vec<VertexId>,
}

impl Subtree {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// The subtrees produced when a center vertex and its edges are removed,
/// sorted by decreasing size; ties are broken by smallest root id.
///
/// Subtree sizes satisfy `n_0 >= n_1 >= ... >= n_k` and sum to `n - 1`.
/// For a single-vertex tree the list is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreePartition {
    pub center: VertexId,
    pub subtrees: Vec<Subtree>,
    n: usize,
}

impl SubtreePartition {
    /// Vertex count of the tree the partition was taken from.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of the last subtree. None for a single-vertex tree.
    pub fn k(&self) -> Option<usize> {
        self.subtrees.len().checked_sub(1)
    }

    /// Subtree sizes in partition order.
    pub fn sizes(&self) -> Vec<usize> {
        self.subtrees.iter().map(|s| s.size()).collect()
    }
}

/// Split `tree` into the components of `T - v`.
pub fn remove_center(tree: &Tree, v: VertexId) -> Result<SubtreePartition, PartitionError> {
    if !tree.contains(v) {
        return Err(PartitionError::VertexNotInTree { vertex: v });
    }
    let mut seen = vec![false; tree.n() + 1];
    seen[v as usize] = true;
    let mut subtrees = Vec::with_capacity(tree.degree(v));
    for &root in tree.neighbors(v) {
        if seen[root as usize] {
            continue;
        }
        let mut vertices = vec![root];
        seen[root as usize] = true;
        let mut queue = vec![root];
        while let Some(u) = queue.pop() {
            for &w in tree.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    vertices.push(w);
                    queue.push(w);
                }
            }
        }
        vertices.sort_unstable();
        subtrees.push(Subtree { root, vertices });
    }
    subtrees.sort_by(|a, b| b.size().cmp(&a.size()).then(a.root.cmp(&b.root)));
    Ok(SubtreePartition {
        center: v,
        subtrees,
        n: tree.n(),
    })
}

/// The vertex minimizing the size of the largest component of `T - v`;
/// ties go to the smallest vertex id.
pub fn centroid(tree: &Tree) -> VertexId {
    let n = tree.n();
    if n == 1 {
        return 1;
    }
    // Iterative subtree-size computation rooted at vertex 1.
    let mut parent = vec![0 as VertexId; n + 1];
    let mut order: Vec<VertexId> = Vec::with_capacity(n);
    let mut stack = vec![1 as VertexId];
    let mut visited = vec![false; n + 1];
    visited[1] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in tree.neighbors(u) {
            if !visited[w as usize] {
                visited[w as usize] = true;
                parent[w as usize] = u;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n + 1];
    for &u in order.iter().rev() {
        if parent[u as usize] != 0 {
            size[parent[u as usize] as usize] += size[u as usize];
        }
    }
    let mut best = (usize::MAX, 0 as VertexId);
    for v in 1..=n as VertexId {
        let mut largest = n - size[v as usize];
        for &w in tree.neighbors(v) {
            if parent[w as usize] == v {
                largest = largest.max(size[w as usize]);
            }
        }
        if largest < best.0 {
            best = (largest, v);
        }
    }
    best.1
}
