//! Graph families and seeded random instances.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError, SharedMap, VertexSet};
use crate::io::Instance;
use crate::oracle::{ccw_exact_with_limit, SolveError, SolverLimits};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The deterministic and random graph families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// The path on `2t + 1` vertices.
    Path { t: usize },
    Complete { n: usize },
    /// `K_{1,leaves}` with the center at vertex 0.
    Star { leaves: usize },
    /// `G(n, p)`: each pair `u < v`, in lexicographic order, is an edge with
    /// probability `p`.
    Random { n: usize, p: f64, seed: u64 },
}

pub fn generate(family: &Family) -> Result<Graph, GenerateError> {
    match *family {
        Family::Path { t } => {
            if t < 1 {
                return Err(GenerateError::InvalidParameter("path needs t >= 1".into()));
            }
            Ok(path(2 * t + 1))
        }
        Family::Complete { n } => Ok(complete(n)),
        Family::Star { leaves } => {
            let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
            Ok(Graph::new(leaves + 1, &edges)?)
        }
        Family::Random { n, p, seed } => {
            check_probability(p)?;
            Ok(random_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed)))
        }
    }
}

fn check_probability(p: f64) -> Result<(), GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    Ok(())
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).expect("path edges are valid")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, &edges).expect("complete graph edges are valid")
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("random edges are valid")
}

/// All cliques of exactly `k` vertices, in lexicographic order.
pub fn cliques_of_size(g: &Graph, k: usize) -> Vec<VertexSet> {
    fn extend(g: &Graph, k: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for v in from..g.n() {
            if current.iter().all(|&u| g.has_edge(u, v)) {
                current.push(v);
                extend(g, k, v + 1, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Parameters for random clique-sum instances.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueSumParams {
    /// Largest vertex count of either side.
    pub max_n: usize,
    /// Shared clique sizes are drawn uniformly from this range.
    pub min_shared: usize,
    pub max_shared: usize,
    pub p: f64,
    /// Only keep instances whose two covers do not both have width 0.
    pub require_positive_width: bool,
    pub limits: SolverLimits,
}

impl Default for CliqueSumParams {
    fn default() -> Self {
        CliqueSumParams {
            max_n: 8,
            min_shared: 1,
            max_shared: 3,
            p: 0.5,
            require_positive_width: true,
            limits: SolverLimits::default(),
        }
    }
}

impl CliqueSumParams {
    pub fn validate(&self) -> Result<(), GenerateError> {
        check_probability(self.p)?;
        if self.min_shared < 1 || self.min_shared > self.max_shared {
            return Err(GenerateError::InvalidParameter(format!(
                "shared size range {}..={} is empty or starts at 0",
                self.min_shared, self.max_shared
            )));
        }
        if self.max_n < self.max_shared.max(2) {
            return Err(GenerateError::InvalidParameter(format!(
                "max_n {} is smaller than the largest shared clique {}",
                self.max_n, self.max_shared
            )));
        }
        if self.max_n > self.limits.ccw {
            return Err(GenerateError::InvalidParameter(format!(
                "max_n {} exceeds the clique cover width limit {}",
                self.max_n, self.limits.ccw
            )));
        }
        Ok(())
    }
}

/// Draws one random clique-sum instance. Side covers are optimal covers
/// returned by the exact clique cover width solver.
pub fn random_clique_sum(params: &CliqueSumParams, rng: &mut impl Rng) -> Result<Instance, GenerateError> {
    params.validate()?;
    loop {
        let k = rng.gen_range(params.min_shared..=params.max_shared);
        let lo = k.max(2);
        let g1 = random_graph(rng.gen_range(lo..=params.max_n), params.p, rng);
        let g2 = random_graph(rng.gen_range(lo..=params.max_n), params.p, rng);
        let (k1, k2) = (cliques_of_size(&g1, k), cliques_of_size(&g2, k));
        if k1.is_empty() || k2.is_empty() {
            continue;
        }
        let left = k1[rng.gen_range(0..k1.len())].to_vec();
        let mut right = k2[rng.gen_range(0..k2.len())].to_vec();
        right.shuffle(rng);
        let shared = SharedMap::new(left.into_iter().zip(right))?;

        let c1 = ccw_exact_with_limit(&g1, params.limits.ccw)?.witness;
        let c2 = ccw_exact_with_limit(&g2, params.limits.ccw)?.witness;
        if params.require_positive_width && c1.width() + c2.width() == 0 {
            continue;
        }
        return Ok(Instance { g1: Arc::clone(c1.graph_arc()), c1, g2: Arc::clone(c2.graph_arc()), c2, shared });
    }
}

/// `count` instances from one seeded stream.
pub fn random_clique_sum_corpus(seed: u64, count: usize, params: &CliqueSumParams) -> Result<Vec<Instance>, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_clique_sum(params, &mut rng)).collect()
}

/// Two copies of `P_{2t+1}` glued at their middle vertices. Returns the two
/// side graphs and the identification.
pub fn paths_at_middle(t: usize) -> Result<(Graph, Graph, SharedMap), GenerateError> {
    let p = generate(&Family::Path { t })?;
    let shared = SharedMap::new([(t, t)])?;
    Ok((p.clone(), p, shared))
}
