//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check is exact (tolerance 0). The process exits nonzero if a
//! criterion fails, except for criteria listed in `KNOWN_UNATTAINABLE`, which
//! are still run and reported as FAIL but do not fail the build. See the
//! README for why the edge-span claim is listed there.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use ccw_core::composition::{claim_outcome, compose, three_halves_bound, ClaimOutcome};
use ccw_core::experiment::{rows_to_csv, run_experiment, Corpus, ExperimentConfig};
use ccw_core::generate::{paths_at_middle, random_clique_sum_corpus, random_graph, CliqueSumParams};
use ccw_core::io::{parse_certificate, write_certificate, write_instance};
use ccw_core::layout::{validate_cover, OrderedCliqueCover};
use ccw_core::oracle::{
    bandwidth_exact, ccw_exact, ccw_exact_with_limit, check_inequality_chain, for_each_clique_partition, SolverLimits,
};
use ccw_core::strips::{block_size, crossing_edge};
use ccw_core::{clique_sum, cover_graph, ordering_width, verify_certificate, Graph, Strip, VertexSet};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed of the random clique-sum corpus (criteria 2, 3, 6).
const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 200;
/// Seed of the random graphs for the quotient and separation checks.
const QUOTIENT_SEED: u64 = 5;
const QUOTIENT_GRAPHS: usize = 100;
/// Solver limit for the 13-vertex sum of two copies of P7.
const EXAMPLE_CCW_LIMIT: usize = 13;

/// Criteria that are run and reported but cannot be met as stated.
const KNOWN_UNATTAINABLE: &[u32] = &[3];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::new(n, &edges).unwrap()
    })
}

fn quotient_corpus() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(QUOTIENT_SEED);
    (0..QUOTIENT_GRAPHS)
        .map(|_| {
            let n = rng.gen_range(1..=7);
            let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
            random_graph(n, p, &mut rng)
        })
        .collect()
}

fn clique_partitions(g: &Graph) -> Vec<Vec<VertexSet>> {
    let mut out = Vec::new();
    for_each_clique_partition(g, |masks| {
        out.push(masks.iter().map(|&m| (0..g.n()).filter(|v| m >> v & 1 == 1).collect()).collect());
    })
    .unwrap();
    out
}

fn example_one() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for t in 1..=3 {
        let (p, _, shared) = paths_at_middle(t).unwrap();
        let sum = clique_sum(&p, &p, &shared).unwrap().graph;
        let side = ccw_exact_with_limit(&p, EXAMPLE_CCW_LIMIT).unwrap().value;
        let whole = ccw_exact_with_limit(&sum, EXAMPLE_CCW_LIMIT).unwrap().value;
        pass &= side == 1 && whole == 2;
        notes.push(format!("t={t}: CCW(P{})={side}, CCW(sum)={whole}", 2 * t + 1));
    }
    outcome(pass, notes.join("; "))
}

fn composed_width_bound() -> Outcome {
    let corpus = random_clique_sum_corpus(CORPUS_SEED, CORPUS_SIZE, &CliqueSumParams::default()).unwrap();
    let mut failures = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for (i, inst) in corpus.iter().enumerate() {
        let built = compose(&inst.g1, &inst.c1, &inst.g2, &inst.c2, &inst.shared).unwrap();
        let cert = &built.certificate;
        let bound = three_halves_bound(cert.w1, cert.w2);
        let ok = cert.w1 + cert.w2 >= 1 && cert.achieved <= bound && verify_certificate(cert).is_ok();
        if !ok {
            failures.push(format!("#{i} (w1={}, w2={}, achieved={}, bound={bound})", cert.w1, cert.w2, cert.achieved));
        }
        worst_ratio = worst_ratio.max(cert.achieved as f64 / (cert.w1 + cert.w2) as f64);
    }
    let detail = if failures.is_empty() {
        format!("{CORPUS_SIZE}/{CORPUS_SIZE} within bound and verified; max achieved/(w1+w2) = {worst_ratio:.3}")
    } else {
        format!("{} failures: {}", failures.len(), failures.iter().take(5).join(", "))
    };
    outcome(failures.is_empty(), detail)
}

fn edge_span_claim() -> Outcome {
    let corpus = random_clique_sum_corpus(CORPUS_SEED, CORPUS_SIZE, &CliqueSumParams::default()).unwrap();
    let mut violated = 0;
    let mut first = None;
    for (i, inst) in corpus.iter().enumerate() {
        let built = compose(&inst.g1, &inst.c1, &inst.g2, &inst.c2, &inst.shared).unwrap();
        if let ClaimOutcome::Violated { source, edge, span, bound } = claim_outcome(&built, &inst.c1, &inst.c2) {
            violated += 1;
            first.get_or_insert(format!("#{i}: edge {edge:?} of side {source} spans {span} > {bound}"));
        }
    }
    match first {
        None => outcome(true, format!("{CORPUS_SIZE}/{CORPUS_SIZE} instances within w1 + w2 - 1")),
        Some(example) => outcome(false, format!("{violated}/{CORPUS_SIZE} instances violate; first {example}")),
    }
}

fn inequality_suite() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 2..=5 {
        for g in all_labeled_graphs(n).filter(|g| g.edge_count() >= 1) {
            let r = check_inequality_chain(&g).unwrap();
            checked += 1;
            if !r.all_pass() {
                failures.push(format!("{:?}: {r:?}", g.edges().collect::<Vec<_>>()));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checked} labeled graphs, {} failures{}", failures.len(), failures.first().map(|f| format!(": {f}")).unwrap_or_default()),
    )
}

fn quotient_equivalence() -> Outcome {
    let mut mismatches = Vec::new();
    for (i, g) in quotient_corpus().iter().enumerate() {
        let arc = Arc::new(g.clone());
        let via_quotients = clique_partitions(g)
            .into_iter()
            .map(|classes| {
                let cover = OrderedCliqueCover::new(Arc::clone(&arc), classes).unwrap();
                bandwidth_exact(&cover_graph(&cover)).unwrap().value
            })
            .min()
            .unwrap();
        let direct = ccw_exact(g).unwrap().value;
        if via_quotients != direct {
            mismatches.push(format!("#{i}: quotients {via_quotients}, ccw_exact {direct}"));
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{QUOTIENT_GRAPHS} graphs, {} mismatches{}", mismatches.len(), mismatches.first().map(|m| format!(": {m}")).unwrap_or_default()),
    )
}

// Everything the suite writes out, in a fixed order.
fn suite_output() -> String {
    let mut out = String::new();
    let limits = SolverLimits::default();
    for corpus in [
        Corpus::PathsAtMiddle { t_max: 3 },
        Corpus::RandomCliqueSum { seed: CORPUS_SEED, count: CORPUS_SIZE, params: CliqueSumParams::default() },
    ] {
        out.push_str(&rows_to_csv(&run_experiment(&ExperimentConfig { corpus, limits }).unwrap()));
    }
    for inst in random_clique_sum_corpus(CORPUS_SEED, CORPUS_SIZE, &CliqueSumParams::default()).unwrap() {
        out.push_str(&write_instance(&inst));
        let built = compose(&inst.g1, &inst.c1, &inst.g2, &inst.c2, &inst.shared).unwrap();
        out.push_str(&write_certificate(&built.certificate));
    }
    for g in quotient_corpus() {
        let b = bandwidth_exact(&g).unwrap();
        let c = ccw_exact(&g).unwrap();
        writeln!(out, "{} {:?} {} {:?}", b.value, b.witness.order(), c.value, c.witness.cliques()).unwrap();
    }
    out
}

fn witness_integrity() -> Outcome {
    let mut problems = Vec::new();
    let mut witnesses = 0;
    let mut graphs: Vec<Graph> = quotient_corpus();
    graphs.extend((2..=5).flat_map(all_labeled_graphs).filter(|g| g.edge_count() >= 1));
    for g in &graphs {
        let b = bandwidth_exact(g).unwrap();
        if ordering_width(g, &b.witness).ok() != Some(b.value) {
            problems.push(format!("bandwidth witness of {:?}", g.edges().collect::<Vec<_>>()));
        }
        let c = ccw_exact(g).unwrap();
        if validate_cover(g, c.witness.cliques()).is_err() || ccw_core::cover_width(&c.witness) != c.value {
            problems.push(format!("cover witness of {:?}", g.edges().collect::<Vec<_>>()));
        }
        witnesses += 2;
    }
    let corpus = random_clique_sum_corpus(CORPUS_SEED, CORPUS_SIZE, &CliqueSumParams::default()).unwrap();
    for (i, inst) in corpus.iter().enumerate() {
        for c in [&inst.c1, &inst.c2] {
            if validate_cover(c.graph(), c.cliques()).is_err() || ccw_exact(c.graph()).unwrap().value != c.width() {
                problems.push(format!("side cover of instance #{i}"));
            }
        }
        let cert = compose(&inst.g1, &inst.c1, &inst.g2, &inst.c2, &inst.shared).unwrap().certificate;
        let reread = parse_certificate(&write_certificate(&cert)).unwrap();
        let valid = validate_cover(&reread.graph, &reread.cliques).is_ok()
            && reread.cover().map(|c| c.width()).ok() == Some(cert.achieved)
            && reread == cert;
        if !valid {
            problems.push(format!("certificate of instance #{i}"));
        }
        witnesses += 3;
    }
    let deterministic = suite_output() == suite_output();
    if !deterministic {
        problems.push("two seeded runs differ".into());
    }
    outcome(
        problems.is_empty(),
        format!(
            "{witnesses} witnesses and certificates re-validated, {} problems{}; rerun byte-identical: {deterministic}",
            problems.len(),
            problems.first().map(|p| format!(" (first: {p})")).unwrap_or_default()
        ),
    )
}

fn separation() -> Outcome {
    let mut covers = 0;
    let mut blocks = 0;
    let mut violations = Vec::new();
    for g in quotient_corpus() {
        let arc = Arc::new(g.clone());
        for classes in clique_partitions(&g) {
            let base = OrderedCliqueCover::new(Arc::clone(&arc), classes).unwrap();
            // Each partition in its canonical order and in the order of an
            // optimal layout of its cover graph.
            let best = bandwidth_exact(&cover_graph(&base)).unwrap().witness;
            for c in [base.clone(), base.reordered(&best).unwrap()] {
                covers += 1;
                let size = block_size(&c);
                for start in 0..=c.len().saturating_sub(size) {
                    blocks += 1;
                    if let Some(edge) = crossing_edge(&c, Strip::new(start, size)) {
                        violations.push(format!("{:?} block at {start}: edge {edge:?}", c.cliques()));
                    }
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!("{covers} covers, {blocks} blocks, {} violations{}", violations.len(), violations.first().map(|v| format!(": {v}")).unwrap_or_default()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (1, "example: paths summed at the middle", example_one),
        (2, "composed width within ceil(3/2 (w1 + w2))", composed_width_bound),
        (3, "edge-span claim w1 + w2 - 1", edge_span_claim),
        (4, "inequalities on all graphs with n <= 5", inequality_suite),
        (5, "quotient bandwidth equals clique cover width", quotient_equivalence),
        (6, "witness integrity and determinism", witness_integrity),
        (7, "separation around every block", separation),
    ];
    let mut blocking = 0;
    for (id, name, check) in criteria {
        let started = Instant::now();
        let result = check();
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let verdict = match (result.pass, known) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known unattainable)",
        };
        println!("criterion {id} [{name}]: {verdict} - {} ({:.2?})", result.detail, started.elapsed());
        if !result.pass && !known {
            blocking += 1;
        }
    }
    if blocking > 0 {
        println!("{blocking} blocking criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
