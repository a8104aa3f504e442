//! Linear orderings, ordered clique covers, their widths, and the clique cover
//! graph obtained by contracting every clique of a cover.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("ordering of length {len} does not match a graph on {n} vertices")]
    LengthMismatch { len: usize, n: usize },
    #[error("ordering is not a permutation: {0}")]
    NotAPermutation(String),
    #[error("invalid clique cover: {0}")]
    InvalidCover(#[from] CoverDefect),
}

/// Why a list of vertex sets fails to be a clique cover of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverDefect {
    #[error("clique {index} is empty")]
    EmptyClique { index: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {vertex} appears in cliques {first} and {second}")]
    DuplicateVertex { vertex: usize, first: usize, second: usize },
    #[error("vertex {vertex} is uncovered")]
    UncoveredVertex { vertex: usize },
    #[error("class {index} {members} is not a clique: {u} and {v} are not adjacent")]
    NotAClique { index: usize, members: VertexSet, u: usize, v: usize },
}

/// A permutation of the vertices, stored together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearOrdering {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl LinearOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self, LayoutError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(LayoutError::NotAPermutation(format!("entry {v} out of range 0..{n}")));
            }
            if position[v] != usize::MAX {
                return Err(LayoutError::NotAPermutation(format!("vertex {v} repeated")));
            }
            position[v] = i;
        }
        Ok(LinearOrdering { order, position })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrdering { order: (0..n).collect(), position: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Vertices in layout order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Maximum position gap over the edges of `g`; 0 when `g` has no edges.
    pub fn width(&self, g: &Graph) -> Result<usize, LayoutError> {
        if self.len() != g.n() {
            return Err(LayoutError::LengthMismatch { len: self.len(), n: g.n() });
        }
        Ok(g.edges()
            .map(|(u, v)| self.position[u].abs_diff(self.position[v]))
            .max()
            .unwrap_or(0))
    }
}

/// Width of `l` as a layout of `g`.
pub fn ordering_width(g: &Graph, l: &LinearOrdering) -> Result<usize, LayoutError> {
    l.width(g)
}

/// Checks that `cliques` partitions the vertices of `g` into cliques.
pub fn validate_cover(g: &Graph, cliques: &[VertexSet]) -> Result<(), CoverDefect> {
    class_assignment(g, cliques).map(|_| ())
}

// Index of the clique holding each vertex, after full validation.
fn class_assignment(g: &Graph, cliques: &[VertexSet]) -> Result<Vec<usize>, CoverDefect> {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    for (index, clique) in cliques.iter().enumerate() {
        if clique.is_empty() {
            return Err(CoverDefect::EmptyClique { index });
        }
        for v in clique.iter() {
            if v >= n {
                return Err(CoverDefect::VertexOutOfRange { vertex: v, n });
            }
            if class_of[v] != usize::MAX {
                return Err(CoverDefect::DuplicateVertex { vertex: v, first: class_of[v], second: index });
            }
            class_of[v] = index;
        }
    }
    if let Some(vertex) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(CoverDefect::UncoveredVertex { vertex });
    }
    for (index, clique) in cliques.iter().enumerate() {
        let members = clique.to_vec();
        for (i, &u) in members.iter().enumerate() {
            if let Some(&v) = members[i + 1..].iter().find(|&&v| !g.has_edge(u, v)) {
                return Err(CoverDefect::NotAClique { index, members: clique.clone(), u, v });
            }
        }
    }
    Ok(class_of)
}

/// An ordered partition of a graph's vertices into cliques, carrying the
/// graph it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedCliqueCover {
    graph: Arc<Graph>,
    cliques: Vec<VertexSet>,
    class_of: Vec<usize>,
}

impl OrderedCliqueCover {
    pub fn new(graph: Arc<Graph>, cliques: Vec<VertexSet>) -> Result<Self, CoverDefect> {
        let class_of = class_assignment(&graph, &cliques)?;
        Ok(OrderedCliqueCover { graph, cliques, class_of })
    }

    /// Every vertex in its own clique, in index order.
    pub fn singletons(graph: Arc<Graph>) -> Self {
        let cliques = (0..graph.n()).map(|v| VertexSet::from([v])).collect();
        let class_of = (0..graph.n()).collect();
        OrderedCliqueCover { graph, cliques, class_of }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    /// Number of cliques, `t + 1`.
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Index of the clique containing `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// Maximum clique-index gap over the edges of the graph; 0 when every
    /// edge lies inside a clique.
    pub fn width(&self) -> usize {
        self.graph
            .edges()
            .map(|(u, v)| self.class_of[u].abs_diff(self.class_of[v]))
            .max()
            .unwrap_or(0)
    }

    /// The same cliques in reverse order.
    pub fn reversed(&self) -> Self {
        let mut cliques = self.cliques.clone();
        cliques.reverse();
        let last = self.len().saturating_sub(1);
        let class_of = self.class_of.iter().map(|&c| last - c).collect();
        OrderedCliqueCover { graph: Arc::clone(&self.graph), cliques, class_of }
    }

    /// The cliques rearranged so that position `i` holds clique `order[i]`.
    pub fn reordered(&self, order: &LinearOrdering) -> Result<Self, LayoutError> {
        if order.len() != self.len() {
            return Err(LayoutError::LengthMismatch { len: order.len(), n: self.len() });
        }
        let cliques = order.order().iter().map(|&i| self.cliques[i].clone()).collect();
        let class_of = self.class_of.iter().map(|&c| order.position(c)).collect();
        Ok(OrderedCliqueCover { graph: Arc::clone(&self.graph), cliques, class_of })
    }

    /// The clique cover graph: one vertex per clique, in cover order, with an
    /// edge between two cliques whenever some edge of the graph joins them.
    pub fn cover_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .graph
            .edges()
            .map(|(u, v)| (self.class_of[u], self.class_of[v]))
            .filter(|(a, b)| a != b)
            .collect();
        Graph::new(self.len(), &edges).expect("contracted edges are in range and loop-free")
    }
}

/// Width of an ordered clique cover.
pub fn cover_width(c: &OrderedCliqueCover) -> usize {
    c.width()
}

/// The clique cover graph of `c`.
pub fn cover_graph(c: &OrderedCliqueCover) -> Graph {
    c.cover_graph()
}

impl fmt::Display for OrderedCliqueCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cliques.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
