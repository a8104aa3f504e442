//! The exact solvers and graph parameters against naive enumeration.

use std::sync::Arc;

use ccw_core::generate::random_graph;
use ccw_core::layout::{LinearOrdering, OrderedCliqueCover};
use ccw_core::oracle::{bandwidth_exact, ccw_exact, for_each_clique_partition};
use ccw_core::{Graph, VertexSet};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::new(n, &edges).unwrap()
    })
}

fn corpus() -> Vec<Graph> {
    let mut graphs: Vec<Graph> = (0..=4).flat_map(all_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in [5, 6] {
        for p in [0.3, 0.5, 0.7] {
            graphs.extend((0..15).map(|_| random_graph(n, p, &mut rng)));
        }
    }
    graphs
}

fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().tuple_combinations().all(|(&u, &v)| g.has_edge(u, v))
}

fn naive_clique_number(g: &Graph) -> usize {
    (0..=g.n()).rev().find(|&k| (0..g.n()).combinations(k).any(|s| is_clique(g, &s))).unwrap()
}

fn naive_star_number(g: &Graph) -> usize {
    (0..g.n())
        .map(|v| {
            let nb = g.neighbors(v).to_vec();
            (0..=nb.len())
                .rev()
                .find(|&k| nb.iter().combinations(k).any(|s| s.iter().tuple_combinations().all(|(&&a, &&b)| !g.has_edge(a, b))))
                .unwrap()
        })
        .max()
        .unwrap_or(0)
}

fn naive_bandwidth(g: &Graph) -> usize {
    (0..g.n())
        .permutations(g.n())
        .map(|order| LinearOrdering::new(order).unwrap().width(g).unwrap())
        .min()
        .unwrap_or(0)
}

// All set partitions as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(v: usize, n: usize, classes: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v == n {
            out.push(classes.clone());
            return;
        }
        for i in 0..classes.len() {
            classes[i].push(v);
            grow(v + 1, n, classes, out);
            classes[i].pop();
        }
        classes.push(vec![v]);
        grow(v + 1, n, classes, out);
        classes.pop();
    }
    let mut out = Vec::new();
    grow(0, n, &mut Vec::new(), &mut out);
    out
}

fn naive_ccw(g: &Graph) -> usize {
    set_partitions(g.n())
        .into_iter()
        .filter(|p| p.iter().all(|c| is_clique(g, c)))
        .flat_map(|p| {
            let k = p.len();
            p.into_iter().permutations(k).map(|classes| {
                let mut class_of = vec![0; g.n()];
                for (i, c) in classes.iter().enumerate() {
                    for &v in c {
                        class_of[v] = i;
                    }
                }
                g.edges().map(|(u, v)| class_of[u].abs_diff(class_of[v])).max().unwrap_or(0)
            })
        })
        .min()
        .unwrap()
}

#[test]
fn clique_number_matches_subset_enumeration() {
    for g in corpus() {
        assert_eq!(g.clique_number(), naive_clique_number(&g), "{g:?}");
    }
}

#[test]
fn star_number_matches_subset_enumeration() {
    for g in corpus().into_iter().filter(|g| g.n() >= 1) {
        assert_eq!(g.star_number().unwrap(), naive_star_number(&g), "{g:?}");
    }
}

#[test]
fn bandwidth_matches_all_permutations() {
    for g in corpus().into_iter().filter(|g| g.n() >= 1) {
        let r = bandwidth_exact(&g).unwrap();
        assert_eq!(r.value, naive_bandwidth(&g), "{g:?}");
        assert_eq!(r.witness.width(&g).unwrap(), r.value);
    }
}

#[test]
fn bandwidth_witness_is_lexicographically_first() {
    for g in all_graphs(4) {
        let r = bandwidth_exact(&g).unwrap();
        let first = (0..4)
            .permutations(4)
            .find(|o| LinearOrdering::new(o.clone()).unwrap().width(&g).unwrap() == r.value)
            .unwrap();
        assert_eq!(r.witness.order(), first.as_slice(), "{g:?}");
    }
}

#[test]
fn ccw_matches_partitions_times_orderings() {
    for g in corpus().into_iter().filter(|g| g.n() >= 1) {
        let r = ccw_exact(&g).unwrap();
        assert_eq!(r.value, naive_ccw(&g), "{g:?}");
        assert_eq!(r.witness.width(), r.value);
        let rebuilt = OrderedCliqueCover::new(Arc::new(g.clone()), r.witness.cliques().to_vec()).unwrap();
        assert_eq!(rebuilt.width(), r.value);
    }
}

#[test]
fn clique_partition_enumeration_is_complete_and_distinct() {
    for g in corpus().into_iter().filter(|g| (1..=5).contains(&g.n())) {
        let mut seen: Vec<Vec<VertexSet>> = Vec::new();
        for_each_clique_partition(&g, |masks| {
            let mut classes: Vec<VertexSet> = masks
                .iter()
                .map(|&m| (0..g.n()).filter(|v| m >> v & 1 == 1).collect())
                .collect();
            classes.sort();
            seen.push(classes);
        })
        .unwrap();
        let mut expected: Vec<Vec<VertexSet>> = set_partitions(g.n())
            .into_iter()
            .filter(|p| p.iter().all(|c| is_clique(&g, c)))
            .map(|p| p.into_iter().map(|c| c.into_iter().collect()).sorted().collect())
            .collect();
        seen.sort();
        expected.sort();
        assert_eq!(seen, expected, "{g:?}");
    }
}
