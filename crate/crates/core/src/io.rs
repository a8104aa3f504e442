//! Plain-text formats.
//!
//! * Graph: `n m`, then `m` lines `u v` (0-based). Written with `u < v`,
//!   edges in lexicographic order.
//! * Cover: `cover K`, then `K` lines, each the vertices of one clique in
//!   increasing order, cliques in cover order.
//! * Ordering: `order n`, then one line with the vertices in layout order.
//! * Solver result: `value k`, then an ordering or a cover.
//! * Certificate: a graph, a cover, then `w1 k`, `w2 k`, `bound k`,
//!   `achieved k`.
//! * Instance: graph and cover of the first side, graph and cover of the
//!   second side, then `shared k` and `k` lines `a b` identifying vertex `a`
//!   of the first graph with vertex `b` of the second.
//!
//! Readers skip blank lines between records. Writers always end each line
//! with `\n`, so reading then writing canonical text reproduces it exactly.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::composition::WidthCertificate;
use crate::graph::{Graph, GraphError, SharedMap, VertexSet};
use crate::layout::{CoverDefect, LayoutError, LinearOrdering, OrderedCliqueCover};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input, expected {0}")]
    Eof(&'static str),
    #[error("trailing content at line {0}")]
    Trailing(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cover(#[from] CoverDefect),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

/// Cursor over the non-blank lines of a text.
pub struct Reader<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Reader<'a> {
    pub fn new(text: &'a str) -> Self {
        Reader { lines: text.lines().enumerate().peekable() }
    }

    fn next_line(&mut self, what: &'static str) -> Result<(usize, &'a str), FormatError> {
        for (i, line) in self.lines.by_ref() {
            if !line.trim().is_empty() {
                return Ok((i + 1, line));
            }
        }
        Err(FormatError::Eof(what))
    }

    fn numbers<T: FromStr>(&mut self, what: &'static str) -> Result<(usize, Vec<T>), FormatError> {
        let (line, text) = self.next_line(what)?;
        let values = text
            .split_whitespace()
            .map(|tok| {
                tok.parse().map_err(|_| FormatError::Syntax { line, message: format!("expected a number, got {tok:?}") })
            })
            .collect::<Result<Vec<T>, _>>()?;
        Ok((line, values))
    }

    fn pair(&mut self, what: &'static str) -> Result<(usize, usize), FormatError> {
        let (line, v) = self.numbers::<usize>(what)?;
        match v[..] {
            [a, b] => Ok((a, b)),
            _ => Err(FormatError::Syntax { line, message: format!("expected two numbers for {what}") }),
        }
    }

    fn keyed(&mut self, key: &'static str) -> Result<usize, FormatError> {
        let (line, text) = self.next_line(key)?;
        let mut toks = text.split_whitespace();
        match (toks.next(), toks.next(), toks.next()) {
            (Some(k), Some(v), None) if k == key => v
                .parse()
                .map_err(|_| FormatError::Syntax { line, message: format!("bad value {v:?} for {key}") }),
            _ => Err(FormatError::Syntax { line, message: format!("expected `{key} <number>`") }),
        }
    }

    pub fn graph(&mut self) -> Result<Graph, FormatError> {
        let (n, m) = self.pair("graph header `n m`")?;
        let edges = (0..m).map(|_| self.pair("edge `u v`")).collect::<Result<Vec<_>, _>>()?;
        Ok(Graph::new(n, &edges)?)
    }

    pub fn cliques(&mut self) -> Result<Vec<VertexSet>, FormatError> {
        let k = self.keyed("cover")?;
        (0..k)
            .map(|_| {
                let (line, vs) = self.numbers::<usize>("clique line")?;
                let set: VertexSet = vs.iter().copied().collect();
                if set.len() != vs.len() || vs.windows(2).any(|w| w[0] > w[1]) {
                    return Err(FormatError::Syntax { line, message: "clique vertices must be increasing".into() });
                }
                Ok(set)
            })
            .collect()
    }

    pub fn ordering(&mut self) -> Result<LinearOrdering, FormatError> {
        let n = self.keyed("order")?;
        let order = if n == 0 {
            Vec::new()
        } else {
            let (line, order) = self.numbers::<usize>("ordering line")?;
            if order.len() != n {
                return Err(FormatError::Syntax { line, message: format!("expected {n} vertices") });
            }
            order
        };
        Ok(LinearOrdering::new(order)?)
    }

    pub fn shared(&mut self) -> Result<SharedMap, FormatError> {
        let k = self.keyed("shared")?;
        let pairs = (0..k).map(|_| self.pair("shared pair `a b`")).collect::<Result<Vec<_>, _>>()?;
        Ok(SharedMap::new(pairs)?)
    }

    pub fn value(&mut self, key: &'static str) -> Result<usize, FormatError> {
        self.keyed(key)
    }

    pub fn finish(mut self) -> Result<(), FormatError> {
        match self.next_line("") {
            Ok((line, _)) => Err(FormatError::Trailing(line)),
            Err(_) => Ok(()),
        }
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut r = Reader::new(text);
    let g = r.graph()?;
    r.finish()?;
    Ok(g)
}

pub fn write_cliques(cliques: &[VertexSet]) -> String {
    let mut out = format!("cover {}\n", cliques.len());
    for c in cliques {
        let line: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn write_cover(c: &OrderedCliqueCover) -> String {
    write_cliques(c.cliques())
}

/// Reads a cover of `g`.
pub fn parse_cover(text: &str, g: Arc<Graph>) -> Result<OrderedCliqueCover, FormatError> {
    let mut r = Reader::new(text);
    let cliques = r.cliques()?;
    r.finish()?;
    Ok(OrderedCliqueCover::new(g, cliques)?)
}

pub fn write_ordering(l: &LinearOrdering) -> String {
    let line: Vec<String> = l.order().iter().map(|v| v.to_string()).collect();
    if line.is_empty() {
        "order 0\n".to_string()
    } else {
        format!("order {}\n{}\n", l.len(), line.join(" "))
    }
}

pub fn parse_ordering(text: &str) -> Result<LinearOrdering, FormatError> {
    let mut r = Reader::new(text);
    let l = r.ordering()?;
    r.finish()?;
    Ok(l)
}

pub fn write_bandwidth_result(value: usize, witness: &LinearOrdering) -> String {
    format!("value {value}\n{}", write_ordering(witness))
}

pub fn write_ccw_result(value: usize, witness: &OrderedCliqueCover) -> String {
    format!("value {value}\n{}", write_cover(witness))
}

pub fn write_certificate(cert: &WidthCertificate) -> String {
    format!(
        "{}{}w1 {}\nw2 {}\nbound {}\nachieved {}\n",
        write_graph(&cert.graph),
        write_cliques(&cert.cliques),
        cert.w1,
        cert.w2,
        cert.bound,
        cert.achieved
    )
}

/// Reads a certificate without validating its cover; that is the verifier's
/// job.
pub fn parse_certificate(text: &str) -> Result<WidthCertificate, FormatError> {
    let mut r = Reader::new(text);
    let graph = Arc::new(r.graph()?);
    let cliques = r.cliques()?;
    let w1 = r.value("w1")?;
    let w2 = r.value("w2")?;
    let bound = r.value("bound")?;
    let achieved = r.value("achieved")?;
    r.finish()?;
    Ok(WidthCertificate { graph, cliques, w1, w2, bound, achieved })
}

/// Two covered graphs and the identification of their shared clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub g1: Arc<Graph>,
    pub c1: OrderedCliqueCover,
    pub g2: Arc<Graph>,
    pub c2: OrderedCliqueCover,
    pub shared: SharedMap,
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&write_graph(&inst.g1));
    out.push_str(&write_cover(&inst.c1));
    out.push_str(&write_graph(&inst.g2));
    out.push_str(&write_cover(&inst.c2));
    writeln!(out, "shared {}", inst.shared.len()).unwrap();
    for (a, b) in inst.shared.pairs() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut r = Reader::new(text);
    let g1 = Arc::new(r.graph()?);
    let c1 = OrderedCliqueCover::new(Arc::clone(&g1), r.cliques()?)?;
    let g2 = Arc::new(r.graph()?);
    let c2 = OrderedCliqueCover::new(Arc::clone(&g2), r.cliques()?)?;
    let shared = r.shared()?;
    r.finish()?;
    Ok(Instance { g1, c1, g2, c2, shared })
}
