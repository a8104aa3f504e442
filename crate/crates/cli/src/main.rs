use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use ccw_core::composition::{claim_outcome, compose, verify_certificate, ClaimOutcome};
use ccw_core::experiment::{rows_to_csv, run_experiment, Corpus, ExperimentConfig};
use ccw_core::generate::{generate, random_clique_sum_corpus, CliqueSumParams, Family};
use ccw_core::io::{
    parse_certificate, parse_graph, parse_instance, write_bandwidth_result, write_ccw_result, write_certificate,
    write_graph, write_instance,
};
use ccw_core::oracle::{
    bandwidth_exact_with_limit, ccw_exact_with_limit, check_inequality_chain_with_limits, ProductBound, SolverLimits,
    DEFAULT_BW_LIMIT, DEFAULT_CCW_LIMIT,
};
use ccw_core::Graph;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Clique cover width, bandwidth, and covers of clique sums.
#[derive(Parser)]
#[command(name = "ccw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Largest graph the exact bandwidth solver accepts.
    #[arg(long, default_value_t = DEFAULT_BW_LIMIT)]
    limit_bw: usize,
    /// Largest graph the exact clique cover width solver accepts.
    #[arg(long, default_value_t = DEFAULT_CCW_LIMIT)]
    limit_ccw: usize,
}

impl From<Limits> for SolverLimits {
    fn from(l: Limits) -> Self {
        SolverLimits { bandwidth: l.limit_bw, ccw: l.limit_ccw }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Path,
    Complete,
    Star,
    Random,
    RandomCliqueSum,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusKind {
    /// Two copies of P_{2t+1} glued at their middle vertices, t = 1..=t-max.
    Paths,
    /// Seeded random clique sums with optimal side covers.
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph, or clique-sum instances.
    Gen {
        kind: Kind,
        /// Path parameter: the path has 2t + 1 vertices.
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Vertex count for complete and random graphs.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        leaves: usize,
        /// Edge probability for random graphs.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of clique-sum instances, separated by blank lines.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Exact bandwidth with an optimal ordering.
    Bw {
        /// Graph file; standard input when absent or "-".
        input: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Exact clique cover width with an optimal ordered cover.
    Ccw {
        input: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Induced star number.
    Star {
        input: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Compose the covers of an instance into a certificate for the clique sum.
    Compose {
        input: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Check a certificate.
    Verify { input: Option<PathBuf> },
    /// Check CCW <= BW, BW <= omega * CCW and CCW >= ceil(s/2) - 1.
    CheckChain {
        input: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
    /// Compose every instance of a corpus and report CSV.
    Experiment {
        #[arg(long, value_enum, default_value_t = CorpusKind::Random)]
        corpus: CorpusKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        t_max: usize,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        output: Output,
    },
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading standard input")?;
            Ok(text)
        }
    }
}

fn read_graph(path: Option<&Path>) -> Result<Graph> {
    Ok(parse_graph(&read_input(path)?)?)
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

// Runs one subcommand. `Ok(false)` means the command ran but the property it
// checks does not hold.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { kind, t, n, leaves, p, seed, count, limits, output } => {
            let text = match kind {
                Kind::Path => write_graph(&generate(&Family::Path { t })?),
                Kind::Complete => write_graph(&generate(&Family::Complete { n })?),
                Kind::Star => write_graph(&generate(&Family::Star { leaves })?),
                Kind::Random => write_graph(&generate(&Family::Random { n, p, seed })?),
                Kind::RandomCliqueSum => {
                    if count == 0 {
                        bail!("--count must be at least 1");
                    }
                    let params = CliqueSumParams { p, limits: limits.into(), ..CliqueSumParams::default() };
                    random_clique_sum_corpus(seed, count, &params)?
                        .iter()
                        .map(write_instance)
                        .collect::<Vec<_>>()
                        .join("\n")
                }
            };
            emit(&output, &text)?;
            Ok(true)
        }
        Command::Bw { input, limits, output } => {
            let g = read_graph(input.as_deref())?;
            let r = bandwidth_exact_with_limit(&g, limits.limit_bw)?;
            emit(&output, &write_bandwidth_result(r.value, &r.witness))?;
            Ok(true)
        }
        Command::Ccw { input, limits, output } => {
            let g = read_graph(input.as_deref())?;
            let r = ccw_exact_with_limit(&g, limits.limit_ccw)?;
            emit(&output, &write_ccw_result(r.value, &r.witness))?;
            Ok(true)
        }
        Command::Star { input, output } => {
            let g = read_graph(input.as_deref())?;
            emit(&output, &format!("value {}\n", g.star_number()?))?;
            Ok(true)
        }
        Command::Compose { input, output } => {
            let inst = parse_instance(&read_input(input.as_deref())?)?;
            let built = compose(&inst.g1, &inst.c1, &inst.g2, &inst.c2, &inst.shared)?;
            emit(&output, &write_certificate(&built.certificate))?;
            if let ClaimOutcome::Violated { source, edge, span, bound } = claim_outcome(&built, &inst.c1, &inst.c2) {
                eprintln!("note: edge {edge:?} of side {source} spans {span} > {bound} in the interleaved sequence");
            }
            if let Err(defect) = verify_certificate(&built.certificate) {
                eprintln!("certificate rejected: {defect}");
                return Ok(false);
            }
            Ok(true)
        }
        Command::Verify { input } => {
            let cert = parse_certificate(&read_input(input.as_deref())?)?;
            match verify_certificate(&cert) {
                Ok(()) => {
                    println!("ok: width {} within bound {}", cert.achieved, cert.bound);
                    Ok(true)
                }
                Err(defect) => {
                    eprintln!("certificate rejected: {defect}");
                    Ok(false)
                }
            }
        }
        Command::CheckChain { input, limits, output } => {
            let g = read_graph(input.as_deref())?;
            let r = check_inequality_chain_with_limits(&g, limits.into())?;
            let verdict = |ok: bool| if ok { "holds" } else { "FAILS" };
            let product = match r.product {
                ProductBound::Holds => "holds",
                ProductBound::Fails => "FAILS",
                ProductBound::NotApplicable => "not applicable",
            };
            let text = format!(
                "ccw {}\nbw {}\nomega {}\nstar {}\nccw <= bw: {}\nbw <= omega * ccw: {}\nccw >= ceil(s/2) - 1 = {}: {}\n",
                r.ccw,
                r.bandwidth,
                r.clique_number,
                r.star_number,
                verdict(r.ccw_at_most_bw),
                product,
                r.star_bound(),
                verdict(r.star_lower_bound),
            );
            emit(&output, &text)?;
            if !r.all_pass() {
                eprintln!("an inequality fails");
            }
            Ok(r.all_pass())
        }
        Command::Experiment { corpus, seed, count, t_max, limits, output } => {
            let limits: SolverLimits = limits.into();
            let corpus = match corpus {
                CorpusKind::Paths => Corpus::PathsAtMiddle { t_max },
                CorpusKind::Random => {
                    Corpus::RandomCliqueSum { seed, count, params: CliqueSumParams { limits, ..CliqueSumParams::default() } }
                }
            };
            let rows = run_experiment(&ExperimentConfig { corpus, limits })?;
            emit(&output, &rows_to_csv(&rows))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
