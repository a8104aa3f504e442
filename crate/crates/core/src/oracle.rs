//! Exact bandwidth and clique cover width for small graphs, and the check of
//! the inequalities tying them to ω(G) and s(G).
//!
//! Both solvers are deterministic. Among optimal witnesses they return the
//! lexicographically smallest one: orderings compare as vertex sequences,
//! covers as sequences of sorted class lists.

use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::layout::{LinearOrdering, OrderedCliqueCover};

/// Default vertex limit for [`bandwidth_exact`].
pub const DEFAULT_BW_LIMIT: usize = 12;
/// Default vertex limit for [`ccw_exact`].
pub const DEFAULT_CCW_LIMIT: usize = 9;
/// Bitmask representation caps every solver at this many vertices.
pub const HARD_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{solver} solver limit exceeded: graph has {n} vertices, limit is {limit} (raise it explicitly to override)")]
    TooLarge { solver: &'static str, n: usize, limit: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex limits for the exponential solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverLimits {
    pub bandwidth: usize,
    pub ccw: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits { bandwidth: DEFAULT_BW_LIMIT, ccw: DEFAULT_CCW_LIMIT }
    }
}

fn check_size(solver: &'static str, n: usize, limit: usize) -> Result<(), SolveError> {
    if n == 0 {
        return Err(SolveError::Empty);
    }
    let limit = limit.min(HARD_LIMIT);
    if n > limit {
        return Err(SolveError::TooLarge { solver, n, limit });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandwidthResult {
    pub value: usize,
    pub witness: LinearOrdering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcwResult {
    pub value: usize,
    pub witness: OrderedCliqueCover,
}

pub fn bandwidth_exact(g: &Graph) -> Result<BandwidthResult, SolveError> {
    bandwidth_exact_with_limit(g, DEFAULT_BW_LIMIT)
}

pub fn bandwidth_exact_with_limit(g: &Graph, limit: usize) -> Result<BandwidthResult, SolveError> {
    check_size("bandwidth", g.n(), limit)?;
    let (value, order) = Layout::new(g.masks()).minimum(usize::MAX).expect("unbounded search always succeeds");
    Ok(BandwidthResult {
        value,
        witness: LinearOrdering::new(order).expect("search emits permutations"),
    })
}

/// Lexicographically smallest ordering of width at most `k`, if any.
pub fn ordering_within(g: &Graph, k: usize) -> Result<Option<LinearOrdering>, SolveError> {
    check_size("bandwidth", g.n(), HARD_LIMIT)?;
    Ok(Layout::new(g.masks())
        .search(k)
        .map(|order| LinearOrdering::new(order).expect("search emits permutations")))
}

// Bandwidth search on a bitmask graph.
struct Layout {
    adj: Vec<u64>,
    order: Vec<usize>,
    pos: Vec<usize>,
    deadlines: Vec<usize>,
}

impl Layout {
    fn new(adj: Vec<u64>) -> Self {
        let n = adj.len();
        Layout { adj, order: Vec::with_capacity(n), pos: vec![0; n], deadlines: Vec::with_capacity(n) }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    // max over vertices v and radii d of ceil((|ball(v, d)| - 1) / 2d)
    fn lower_bound(&self) -> usize {
        let n = self.n();
        let mut lb = 0;
        for v in 0..n {
            let mut ball = 1u64 << v;
            let mut frontier = ball;
            let mut d = 0;
            loop {
                let next = frontier.iter_ones().fold(0u64, |m, u| m | self.adj[u]) & !ball;
                if next == 0 {
                    break;
                }
                d += 1;
                ball |= next;
                frontier = next;
                lb = lb.max((ball.count_ones() as usize - 1).div_ceil(2 * d));
            }
        }
        lb
    }

    /// Exact bandwidth if it is below `cap`, with the lexicographically
    /// smallest optimal ordering.
    fn minimum(&mut self, cap: usize) -> Option<(usize, Vec<usize>)> {
        let upper = self.n().saturating_sub(1).min(cap.saturating_sub(1));
        if cap == 0 {
            return None;
        }
        (self.lower_bound()..=upper).find_map(|k| self.search(k).map(|o| (k, o)))
    }

    fn search(&mut self, k: usize) -> Option<Vec<usize>> {
        self.order.clear();
        if self.place(k, 0) {
            Some(self.order.clone())
        } else {
            None
        }
    }

    fn place(&mut self, k: usize, placed: u64) -> bool {
        let n = self.n();
        let len = self.order.len();
        if len == n {
            return true;
        }
        for v in 0..n {
            if placed & (1 << v) != 0 {
                continue;
            }
            // Every placed neighbor must stay within reach of position `len`.
            if (self.adj[v] & placed).iter_ones().any(|u| len - self.pos[u] > k) {
                continue;
            }
            let now = placed | (1 << v);
            self.pos[v] = len;
            if !self.deadlines_feasible(k, now, len + 1) {
                continue;
            }
            self.order.push(v);
            if self.place(k, now) {
                return true;
            }
            self.order.pop();
        }
        false
    }

    // Each unplaced vertex with a placed neighbor must land by the earliest
    // such neighbor's position plus `k`; the sorted deadlines must admit
    // distinct slots starting at `next`.
    fn deadlines_feasible(&mut self, k: usize, placed: u64, next: usize) -> bool {
        self.deadlines.clear();
        let full = if self.n() == 64 { u64::MAX } else { (1u64 << self.n()) - 1 };
        for x in (full & !placed).iter_ones() {
            if let Some(u) = (self.adj[x] & placed).iter_ones().min_by_key(|&u| self.pos[u]) {
                self.deadlines.push(self.pos[u] + k);
            }
        }
        self.deadlines.sort_unstable();
        self.deadlines.iter().enumerate().all(|(i, &d)| d >= next + i)
    }
}

trait Ones {
    fn iter_ones(self) -> BitIter;
}

impl Ones for u64 {
    fn iter_ones(self) -> BitIter {
        BitIter(self)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Visits every partition of the vertices into cliques exactly once.
///
/// Vertex 0 opens class 0; each later vertex joins an existing class it is
/// adjacent to in full, or opens a new class. Classes are reported in order of
/// their smallest vertex, as bitmasks.
pub fn for_each_clique_partition(g: &Graph, mut visit: impl FnMut(&[u64])) -> Result<(), SolveError> {
    check_size("clique partition", g.n(), HARD_LIMIT)?;
    let adj = g.masks();
    let mut classes = Vec::with_capacity(g.n());
    partitions(&adj, 0, &mut classes, &mut visit);
    Ok(())
}

fn partitions(adj: &[u64], v: usize, classes: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
    if v == adj.len() {
        visit(classes);
        return;
    }
    for i in 0..classes.len() {
        if classes[i] & !adj[v] == 0 {
            classes[i] |= 1 << v;
            partitions(adj, v + 1, classes, visit);
            classes[i] &= !(1 << v);
        }
    }
    classes.push(1 << v);
    partitions(adj, v + 1, classes, visit);
    classes.pop();
}

fn quotient_masks(adj: &[u64], classes: &[u64]) -> Vec<u64> {
    let reach: Vec<u64> = classes.iter().map(|&c| c.iter_ones().fold(0, |m, v| m | adj[v])).collect();
    (0..classes.len())
        .map(|a| {
            (0..classes.len())
                .filter(|&b| b != a && reach[a] & classes[b] != 0)
                .fold(0u64, |m, b| m | (1 << b))
        })
        .collect()
}

fn class_lists(classes: &[u64], order: &[usize]) -> Vec<Vec<usize>> {
    order.iter().map(|&i| classes[i].iter_ones().collect()).collect()
}

pub fn ccw_exact(g: &Graph) -> Result<CcwResult, SolveError> {
    ccw_exact_with_limit(g, DEFAULT_CCW_LIMIT)
}

/// Minimum width over all ordered clique covers: every clique partition is
/// enumerated and the bandwidth of its clique cover graph minimised.
pub fn ccw_exact_with_limit(g: &Graph, limit: usize) -> Result<CcwResult, SolveError> {
    check_size("clique cover width", g.n(), limit)?;
    let adj = g.masks();
    let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
    for_each_clique_partition(g, |classes| {
        let mut layout = Layout::new(quotient_masks(&adj, classes));
        match &mut best {
            None => {
                let (value, order) = layout.minimum(usize::MAX).expect("unbounded");
                best = Some((value, class_lists(classes, &order)));
            }
            Some((value, witness)) => {
                if let Some((better, order)) = layout.minimum(*value) {
                    *value = better;
                    *witness = class_lists(classes, &order);
                } else if let Some(order) = layout.search(*value) {
                    let candidate = class_lists(classes, &order);
                    if candidate < *witness {
                        *witness = candidate;
                    }
                }
            }
        }
    })?;
    let (value, witness) = best.expect("a graph with vertices has a clique partition");
    let cover = OrderedCliqueCover::new(
        Arc::new(g.clone()),
        witness.into_iter().map(|c| c.into_iter().collect::<VertexSet>()).collect(),
    )
    .expect("enumerated partitions are clique covers");
    debug_assert_eq!(cover.width(), value);
    Ok(CcwResult { value, witness: cover })
}

/// Outcome of the product bound BW ≤ ω·CCW.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductBound {
    Holds,
    Fails,
    /// CCW = 0: the graph is a disjoint union of cliques and the bound is
    /// not tested.
    NotApplicable,
}

/// CCW, BW, ω and s of one graph and the inequalities between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub ccw: usize,
    pub bandwidth: usize,
    pub clique_number: usize,
    pub star_number: usize,
    /// CCW ≤ BW
    pub ccw_at_most_bw: bool,
    /// BW ≤ ω·CCW, when CCW ≥ 1
    pub product: ProductBound,
    /// CCW ≥ ⌈s/2⌉ − 1
    pub star_lower_bound: bool,
}

impl InequalityReport {
    pub fn all_pass(&self) -> bool {
        self.ccw_at_most_bw && self.product != ProductBound::Fails && self.star_lower_bound
    }

    /// ⌈s/2⌉ − 1, which is −1 for edgeless graphs.
    pub fn star_bound(&self) -> i64 {
        self.star_number.div_ceil(2) as i64 - 1
    }
}

pub fn check_inequality_chain(g: &Graph) -> Result<InequalityReport, SolveError> {
    check_inequality_chain_with_limits(g, SolverLimits::default())
}

pub fn check_inequality_chain_with_limits(g: &Graph, limits: SolverLimits) -> Result<InequalityReport, SolveError> {
    let ccw = ccw_exact_with_limit(g, limits.ccw)?.value;
    let bandwidth = bandwidth_exact_with_limit(g, limits.bandwidth)?.value;
    let clique_number = g.clique_number();
    let star_number = g.star_number()?;
    let product = if ccw == 0 {
        ProductBound::NotApplicable
    } else if bandwidth <= clique_number * ccw {
        ProductBound::Holds
    } else {
        ProductBound::Fails
    };
    Ok(InequalityReport {
        ccw,
        bandwidth,
        clique_number,
        star_number,
        ccw_at_most_bw: ccw <= bandwidth,
        product,
        star_lower_bound: ccw as i64 >= star_number.div_ceil(2) as i64 - 1,
    })
}
