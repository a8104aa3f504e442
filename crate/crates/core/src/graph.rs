//! Undirected simple graphs on vertices `0..n`, clique predicates, clique sums,
//! and the exact scalar parameters ω(G) (clique number) and s(G) (induced star
//! number).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set is not a clique: {u} and {v} are not adjacent")]
    NotAClique { u: usize, v: usize },
    #[error("shared vertex map is not injective at {0}")]
    NotInjective(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} has degree {degree}, above the neighborhood search limit {limit}")]
    DegreeTooLarge { vertex: usize, degree: usize, limit: usize },
}

/// A set of vertex indices, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Checks every member against a graph on `n` vertices.
    pub fn check_range(&self, n: usize) -> Result<(), GraphError> {
        match self.last() {
            Some(v) if v >= n => Err(GraphError::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(members: [usize; N]) -> Self {
        members.into_iter().collect()
    }
}

impl From<&[usize]> for VertexSet {
    fn from(members: &[usize]) -> Self {
        members.iter().copied().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An immutable undirected simple graph.
///
/// Adjacency is stored as sorted neighbor lists; the lists are symmetric and
/// never contain the vertex itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either direction)
    /// collapse into one.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut sets = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        Ok(Graph {
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// True iff every distinct pair of `s` is adjacent.
    pub fn is_clique(&self, s: &VertexSet) -> Result<bool, GraphError> {
        s.check_range(self.n())?;
        Ok(self.first_non_adjacent_pair(s).is_none())
    }

    fn first_non_adjacent_pair(&self, s: &VertexSet) -> Option<(usize, usize)> {
        let members = s.to_vec();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub(crate) fn require_clique(&self, s: &VertexSet) -> Result<(), GraphError> {
        s.check_range(self.n())?;
        match self.first_non_adjacent_pair(s) {
            Some((u, v)) => Err(GraphError::NotAClique { u, v }),
            None => Ok(()),
        }
    }

    /// Neighbor sets as bitmasks. Only valid for graphs with at most 64 vertices.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    /// Size of a largest clique; 0 for the graph with no vertices.
    pub fn clique_number(&self) -> usize {
        let mut best = 0;
        let all: Vec<usize> = (0..self.n()).collect();
        self.grow_clique(0, &all, &mut best);
        best
    }

    // Bron–Kerbosch style growth, keeping only candidates adjacent to the
    // whole current clique and later in vertex order than its last member.
    fn grow_clique(&self, size: usize, candidates: &[usize], best: &mut usize) {
        if size > *best {
            *best = size;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if size + (candidates.len() - i) <= *best {
                return;
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| self.has_edge(v, u))
                .collect();
            self.grow_clique(size + 1, &next, best);
        }
    }

    /// Largest number of leaves of an induced star: the maximum, over all
    /// vertices, of the independence number of the open neighborhood.
    ///
    /// Neighborhoods are searched exactly; degrees above
    /// [`STAR_DEGREE_LIMIT`] are rejected. In practice the search stays fast
    /// up to degree 25 or so.
    pub fn star_number(&self) -> Result<usize, GraphError> {
        if self.n() == 0 {
            return Err(GraphError::Empty);
        }
        let mut best = 0;
        for v in 0..self.n() {
            let nbrs = &self.adj[v];
            if nbrs.len() > STAR_DEGREE_LIMIT {
                return Err(GraphError::DegreeTooLarge {
                    vertex: v,
                    degree: nbrs.len(),
                    limit: STAR_DEGREE_LIMIT,
                });
            }
            if nbrs.len() <= best {
                continue;
            }
            // Adjacency of the neighborhood, relabelled 0..d.
            let local: Vec<u64> = nbrs
                .iter()
                .map(|&a| {
                    nbrs.iter()
                        .enumerate()
                        .filter(|&(_, &b)| self.has_edge(a, b))
                        .fold(0u64, |m, (j, _)| m | (1 << j))
                })
                .collect();
            let full = if nbrs.len() == 64 { u64::MAX } else { (1u64 << nbrs.len()) - 1 };
            best = best.max(max_independent_set(&local, full, 0, best));
        }
        Ok(best)
    }

    /// The subgraph induced on `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> Result<Graph, GraphError> {
        keep.check_range(self.n())?;
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter_map(|(u, v)| Some((*index.get(&u)?, *index.get(&v)?)))
            .collect();
        Graph::new(keep.len(), &edges)
    }
}

/// Largest neighborhood degree accepted by [`Graph::star_number`].
pub const STAR_DEGREE_LIMIT: usize = 64;

// Exact maximum independent set over the vertices in `cands` (bitmask), with
// `adj` the local adjacency masks. Returns the best size found, which is at
// least `best`.
fn max_independent_set(adj: &[u64], cands: u64, size: usize, mut best: usize) -> usize {
    if cands == 0 {
        return best.max(size);
    }
    if size + cands.count_ones() as usize <= best {
        return best;
    }
    // Vertices with no neighbor among the candidates are always taken.
    let mut isolated = 0u64;
    let mut pivot = None;
    let mut pivot_deg = 0;
    let mut rest = cands;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & cands).count_ones();
        if d == 0 {
            isolated |= 1 << v;
        } else if d > pivot_deg {
            pivot_deg = d;
            pivot = Some(v);
        }
    }
    if isolated != 0 {
        return max_independent_set(adj, cands & !isolated, size + isolated.count_ones() as usize, best);
    }
    let v = pivot.expect("non-empty candidate set without isolated vertices has a pivot");
    best = max_independent_set(adj, cands & !(1 << v) & !adj[v], size + 1, best);
    max_independent_set(adj, cands & !(1 << v), size, best)
}

/// Identification of a clique of one graph with a clique of another:
/// pairs `(vertex of g1, vertex of g2)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SharedMap {
    pairs: Vec<(usize, usize)>,
}

impl SharedMap {
    /// Pairs are sorted by their `g1` side; both sides must be repetition-free.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for &(a, b) in &pairs {
            if !left.insert(a) {
                return Err(GraphError::NotInjective(format!("g1 vertex {a} mapped twice")));
            }
            if !right.insert(b) {
                return Err(GraphError::NotInjective(format!("g2 vertex {b} is the image of two vertices")));
            }
        }
        Ok(SharedMap { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn left(&self) -> VertexSet {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn right(&self) -> VertexSet {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

/// The clique sum of two graphs together with the vertex embeddings into it.
///
/// Vertices of `g1` keep their indices. Vertices of `g2` that are not shared
/// are appended after them in `g2` index order. The vertex set of the sum is
/// the union of both vertex sets under the identification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSum {
    pub graph: Graph,
    /// Position in the sum of each `g2` vertex.
    pub from_g2: Vec<usize>,
    /// The shared clique, in the sum's numbering (equal to the `g1` side).
    pub shared: VertexSet,
}

/// Glues `g1` and `g2` along the cliques identified by `shared`.
///
/// An empty `shared` map is a vacuous clique and yields the disjoint union.
pub fn clique_sum(g1: &Graph, g2: &Graph, shared: &SharedMap) -> Result<CliqueSum, GraphError> {
    let left = shared.left();
    let right = shared.right();
    g1.require_clique(&left)?;
    g2.require_clique(&right)?;

    let mut from_g2 = vec![usize::MAX; g2.n()];
    for &(a, b) in shared.pairs() {
        from_g2[b] = a;
    }
    let mut next = g1.n();
    for slot in from_g2.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let edges: Vec<(usize, usize)> = g1
        .edges()
        .chain(g2.edges().map(|(u, v)| (from_g2[u], from_g2[v])))
        .collect();
    Ok(CliqueSum {
        graph: Graph::new(next, &edges)?,
        from_g2,
        shared: left,
    })
}
