//! Composition of ordered clique covers across a clique sum.
//!
//! Given covers `C1` of `G1` and `C2` of `G2` that share the clique `S`, the
//! construction cuts each cover into blocks around the window holding `S`,
//! interleaves strips that sit at equal distance from those windows, and then
//! pulls `S` out into a clique of its own in the middle of the central
//! interleaved segment. The target is a clique cover of `G1 ⊕ G2` of width
//! at most `⌈3/2 (w(C1) + w(C2))⌉`.
//!
//! The window holding `S` is not always a block: when `S` meets two cliques
//! exactly `w` apart it needs `w + 1` of them, and a standalone `S` can then
//! have more neighbouring cliques than fit within the bound. In that case the
//! construction also tries leaving `S` inside the cliques of one side and
//! keeps the narrowest result; the certificate still records the bound, so a
//! remaining excess is reported rather than hidden.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{clique_sum, CliqueSum, Graph, GraphError, SharedMap, VertexSet};
use crate::layout::{CoverDefect, OrderedCliqueCover};
use crate::strips::{block_size, locate_enclosing_block, partition_around_strip, Strip, StripError, StripPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("cover of side {0} was built for a different graph")]
    CoverGraphMismatch(Source),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Strip(#[from] StripError),
}

/// Which input a clique comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    First,
    Second,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::First => write!(f, "1"),
            Source::Second => write!(f, "2"),
        }
    }
}

/// A clique of one of the input covers, by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedClique {
    pub source: Source,
    pub index: usize,
}

/// `s2[0], s1[0], s2[1], s1[1], …`, with whatever remains of the longer list
/// appended.
pub fn interleave<T: Clone>(s1: &[T], s2: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(s1.len() + s2.len());
    let common = s1.len().min(s2.len());
    for i in 0..common {
        out.push(s2[i].clone());
        out.push(s1[i].clone());
    }
    out.extend_from_slice(&s1[common..]);
    out.extend_from_slice(&s2[common..]);
    out
}

/// The interleaving of a strip of `C1` with a strip of `C2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterleavedStrip {
    pub cliques: Vec<TaggedClique>,
}

impl InterleavedStrip {
    pub fn of(s1: Option<Strip>, s2: Option<Strip>) -> Self {
        let tag = |source, s: Option<Strip>| -> Vec<TaggedClique> {
            s.map(|s| s.range().map(|index| TaggedClique { source, index }).collect())
                .unwrap_or_default()
        };
        InterleavedStrip { cliques: interleave(&tag(Source::First, s1), &tag(Source::Second, s2)) }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }
}

/// How the claimed bound of a certificate was derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRule {
    /// `⌈3/2 (w1 + w2)⌉`
    ThreeHalves,
    /// Both inputs have width 0; extracting the shared clique can still
    /// create edges between neighbouring cliques, so the bound is 1.
    ZeroWidthAdjusted,
    /// Empty shared set: the covers are concatenated and the bound is
    /// `max(w1, w2)`.
    DisjointUnion,
}

/// `⌈3/2 (w1 + w2)⌉`
pub fn three_halves_bound(w1: usize, w2: usize) -> usize {
    (3 * (w1 + w2)).div_ceil(2)
}

/// Where the vertices of the shared clique are put in the composed cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SharedPlacement {
    /// In a clique of their own inside the central segment (or absorbed by
    /// the window clique of a side of width 0).
    Extracted,
    /// Left in the cliques of the given side and removed from the other's.
    KeptIn(Source),
}

/// A cover of a clique sum together with the numbers it is claimed to meet.
///
/// The cover is kept as raw vertex sets so that a certificate read from disk
/// or tampered with can still be represented and rejected by
/// [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthCertificate {
    pub graph: Arc<Graph>,
    pub cliques: Vec<VertexSet>,
    pub w1: usize,
    pub w2: usize,
    pub bound: usize,
    pub achieved: usize,
}

impl WidthCertificate {
    pub fn cover(&self) -> Result<OrderedCliqueCover, CoverDefect> {
        OrderedCliqueCover::new(Arc::clone(&self.graph), self.cliques.clone())
    }

    pub fn rule(&self) -> BoundRule {
        if self.w1 + self.w2 == 0 && self.bound == 1 {
            BoundRule::ZeroWidthAdjusted
        } else if self.bound == self.w1.max(self.w2) && self.bound != three_halves_bound(self.w1, self.w2) {
            BoundRule::DisjointUnion
        } else {
            BoundRule::ThreeHalves
        }
    }
}

/// Every intermediate product of the construction, for inspection.
#[derive(Debug, Clone)]
pub struct Construction {
    pub sum: CliqueSum,
    pub w1: usize,
    pub w2: usize,
    /// Partitions of the two covers around their windows; absent when the
    /// shared set is empty.
    pub partitions: Option<(StripPartition, StripPartition)>,
    /// The interleaved clique sequence before the shared clique is extracted.
    pub sequence: Vec<TaggedClique>,
    /// Segment of `sequence` produced by interleaving the two windows.
    pub central: Range<usize>,
    /// Index in `sequence` before which the shared clique is inserted.
    pub insert_at: Option<usize>,
    /// Where the shared vertices ended up.
    pub placement: SharedPlacement,
    /// Cover width measured before emptied cliques are dropped.
    pub width_before_compaction: usize,
    pub bound_rule: BoundRule,
    pub certificate: WidthCertificate,
}

fn check_cover(g: &Graph, c: &OrderedCliqueCover, side: Source) -> Result<(), ComposeError> {
    if c.graph() != g {
        return Err(ComposeError::CoverGraphMismatch(side));
    }
    Ok(())
}

/// Runs the construction and returns all of its intermediate products.
pub fn compose(
    g1: &Graph,
    c1: &OrderedCliqueCover,
    g2: &Graph,
    c2: &OrderedCliqueCover,
    shared: &SharedMap,
) -> Result<Construction, ComposeError> {
    check_cover(g1, c1, Source::First)?;
    check_cover(g2, c2, Source::Second)?;
    let sum = clique_sum(g1, g2, shared)?;
    let (w1, w2) = (c1.width(), c2.width());

    let (partitions, sequence, central) = if shared.is_empty() {
        let sequence: Vec<TaggedClique> = (0..c1.len())
            .map(|index| TaggedClique { source: Source::First, index })
            .chain((0..c2.len()).map(|index| TaggedClique { source: Source::Second, index }))
            .collect();
        (None, sequence, 0..0)
    } else {
        let p1 = partition_around_strip(c1.len(), block_size(c1), locate_enclosing_block(c1, &shared.left())?)?;
        let p2 = partition_around_strip(c2.len(), block_size(c2), locate_enclosing_block(c2, &shared.right())?)?;
        let (sequence, central) = interleave_partitions(&p1, w1 == 0, &p2, w2 == 0);
        (Some((p1, p2)), sequence, central)
    };

    // A side of width 0 has no edges between its cliques, and the shared set
    // lies inside one of them. That clique is a clique of the sum as well, so
    // it absorbs the shared set instead of sitting next to it.
    let absorbed = match &partitions {
        Some((p1, _)) if w1 == 0 => Some(TaggedClique { source: Source::First, index: p1.block().start }),
        Some((_, p2)) if w2 == 0 => Some(TaggedClique { source: Source::Second, index: p2.block().start }),
        _ => None,
    };
    let translate = |tagged: &TaggedClique| -> VertexSet {
        match tagged.source {
            Source::First => c1.cliques()[tagged.index].iter().collect(),
            Source::Second => c2.cliques()[tagged.index].iter().map(|v| sum.from_g2[v]).collect(),
        }
    };
    let shared_clique = match &absorbed {
        Some(t) => translate(t),
        None => sum.shared.clone(),
    };

    // The shared clique goes in the middle of what remains of the central
    // segment once the absorbed clique is taken out.
    let insert_at = (!shared.is_empty()).then(|| {
        let kept: Vec<usize> = central.clone().filter(|&i| Some(sequence[i]) != absorbed).collect();
        kept.get(kept.len() / 2).copied().unwrap_or(central.end)
    });
    let assemble = |placement: SharedPlacement| -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = Vec::with_capacity(sequence.len() + 1);
        for (i, tagged) in sequence.iter().enumerate() {
            let clique = translate(tagged);
            match placement {
                SharedPlacement::Extracted => {
                    if insert_at == Some(i) {
                        out.push(shared_clique.clone());
                    }
                    if Some(*tagged) != absorbed {
                        out.push(clique.iter().filter(|&v| !shared_clique.contains(v)).collect());
                    }
                }
                SharedPlacement::KeptIn(side) if side == tagged.source => out.push(clique),
                SharedPlacement::KeptIn(_) => {
                    out.push(clique.iter().filter(|&v| !sum.shared.contains(v)).collect())
                }
            }
        }
        if placement == SharedPlacement::Extracted && insert_at == Some(sequence.len()) {
            out.push(shared_clique.clone());
        }
        out
    };
    let (bound_rule, bound) = if shared.is_empty() {
        (BoundRule::DisjointUnion, w1.max(w2))
    } else if w1 + w2 == 0 {
        (BoundRule::ZeroWidthAdjusted, 1)
    } else {
        (BoundRule::ThreeHalves, three_halves_bound(w1, w2))
    };

    // The extracted placement is the construction proper. When its width
    // exceeds the bound (the window holding the shared set can be one clique
    // longer than a block), leaving the shared vertices where one side put
    // them is tried as well and the narrowest of the three is kept.
    let mut placement = SharedPlacement::Extracted;
    let mut uncompacted = assemble(placement);
    let mut width_before_compaction = raw_width(&sum.graph, &uncompacted);
    if !shared.is_empty() && width_before_compaction > bound {
        for side in [Source::First, Source::Second] {
            let candidate = assemble(SharedPlacement::KeptIn(side));
            let width = raw_width(&sum.graph, &candidate);
            if width < width_before_compaction {
                (placement, uncompacted, width_before_compaction) = (SharedPlacement::KeptIn(side), candidate, width);
            }
        }
    }
    let cliques: Vec<VertexSet> = uncompacted.into_iter().filter(|c| !c.is_empty()).collect();

    let graph = Arc::new(sum.graph.clone());
    let cover = OrderedCliqueCover::new(Arc::clone(&graph), cliques.clone())
        .expect("the construction partitions the sum into cliques");
    let achieved = cover.width();
    Ok(Construction {
        sum,
        w1,
        w2,
        partitions,
        sequence,
        central,
        insert_at,
        placement,
        width_before_compaction,
        bound_rule,
        certificate: WidthCertificate { graph, cliques, w1, w2, bound, achieved },
    })
}

// Pairs strips at equal distance from the two windows, walking outward;
// a strip without a partner passes through on its own. The strips of a side
// of width 0 are not paired at all: they go to the two ends of the sequence.
fn interleave_partitions(
    p1: &StripPartition,
    zero1: bool,
    p2: &StripPartition,
    zero2: bool,
) -> (Vec<TaggedClique>, Range<usize>) {
    let pair_up = |a: Vec<Strip>, b: Vec<Strip>| -> Vec<InterleavedStrip> {
        (0..a.len().max(b.len()))
            .map(|d| InterleavedStrip::of(a.get(d).copied(), b.get(d).copied()))
            .collect()
    };
    let paired = |p: &StripPartition, zero: bool, side: fn(&StripPartition) -> Vec<Strip>| {
        if zero {
            Vec::new()
        } else {
            side(p)
        }
    };
    let lefts = |p: &StripPartition| p.left_outward().collect::<Vec<_>>();
    let rights = |p: &StripPartition| p.right_outward().collect::<Vec<_>>();
    let outer = |p: &StripPartition, zero: bool, side: fn(&StripPartition) -> Vec<Strip>, source| {
        let strips = if zero { side(p) } else { Vec::new() };
        strips
            .into_iter()
            .flat_map(|s| s.range())
            .map(move |index| TaggedClique { source, index })
            .collect::<Vec<_>>()
    };

    let mut left = pair_up(paired(p1, zero1, lefts), paired(p2, zero2, lefts));
    left.reverse();
    let right = pair_up(paired(p1, zero1, rights), paired(p2, zero2, rights));

    let mut sequence: Vec<TaggedClique> = Vec::new();
    let mut far_left = outer(p1, zero1, lefts, Source::First);
    far_left.reverse();
    sequence.extend(far_left);
    let mut far_left = outer(p2, zero2, lefts, Source::Second);
    far_left.reverse();
    sequence.extend(far_left);
    sequence.extend(left.into_iter().flat_map(|s| s.cliques));
    let start = sequence.len();
    sequence.extend(InterleavedStrip::of(Some(p1.block()), Some(p2.block())).cliques);
    let central = start..sequence.len();
    sequence.extend(right.into_iter().flat_map(|s| s.cliques));
    sequence.extend(outer(p1, zero1, rights, Source::First));
    sequence.extend(outer(p2, zero2, rights, Source::Second));
    (sequence, central)
}

// Width of a list of classes that may contain empty sets.
fn raw_width(g: &Graph, classes: &[VertexSet]) -> usize {
    let mut class_of = vec![0; g.n()];
    for (i, c) in classes.iter().enumerate() {
        for v in c.iter() {
            class_of[v] = i;
        }
    }
    g.edges().map(|(u, v)| class_of[u].abs_diff(class_of[v])).max().unwrap_or(0)
}

/// Builds a width certificate for a cover of `G1 ⊕ G2` from covers of the
/// two sides.
pub fn compose_covers(
    g1: &Graph,
    c1: &OrderedCliqueCover,
    g2: &Graph,
    c2: &OrderedCliqueCover,
    shared: &SharedMap,
) -> Result<WidthCertificate, ComposeError> {
    compose(g1, c1, g2, c2, shared).map(|c| c.certificate)
}

/// Why a certificate is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateDefect {
    #[error("clique {index} is empty")]
    EmptyClique { index: usize },
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("vertex {vertex} covered twice")]
    DuplicateVertex { vertex: usize },
    #[error("vertex {vertex} is uncovered")]
    UncoveredVertex { vertex: usize },
    #[error("clique {index} is not a clique: {u} and {v} are not adjacent")]
    NotAClique { index: usize, u: usize, v: usize },
    #[error("recorded width {recorded} but the cover has width {actual}")]
    WidthMismatch { recorded: usize, actual: usize },
    #[error("bound violated: achieved width {achieved} exceeds claimed bound {bound}")]
    BoundViolated { achieved: usize, bound: usize },
    #[error("claimed bound {bound} exceeds what inputs of widths {w1} and {w2} allow ({allowed})")]
    BoundTooLoose { bound: usize, w1: usize, w2: usize, allowed: usize },
}

/// Re-checks a certificate from scratch: the cover partitions the composed
/// graph into cliques, its width is the recorded one, that width is within
/// the claimed bound, and the bound is no looser than the inputs permit.
pub fn verify_certificate(cert: &WidthCertificate) -> Result<(), CertificateDefect> {
    let g = &cert.graph;
    let mut class_of: Vec<Option<usize>> = vec![None; g.n()];
    for (index, clique) in cert.cliques.iter().enumerate() {
        if clique.is_empty() {
            return Err(CertificateDefect::EmptyClique { index });
        }
        let members = clique.to_vec();
        for (i, &u) in members.iter().enumerate() {
            let slot = class_of.get_mut(u).ok_or(CertificateDefect::VertexOutOfRange { vertex: u })?;
            if slot.replace(index).is_some() {
                return Err(CertificateDefect::DuplicateVertex { vertex: u });
            }
            for &v in &members[i + 1..] {
                if !g.has_edge(u, v) {
                    return Err(CertificateDefect::NotAClique { index, u, v });
                }
            }
        }
    }
    let class_of: Vec<usize> = class_of
        .iter()
        .enumerate()
        .map(|(vertex, c)| c.ok_or(CertificateDefect::UncoveredVertex { vertex }))
        .collect::<Result<_, _>>()?;

    let mut actual = 0;
    for u in 0..g.n() {
        for &v in g.neighbors(u) {
            actual = actual.max(class_of[u].abs_diff(class_of[v]));
        }
    }
    if actual != cert.achieved {
        return Err(CertificateDefect::WidthMismatch { recorded: cert.achieved, actual });
    }
    if cert.achieved > cert.bound {
        return Err(CertificateDefect::BoundViolated { achieved: cert.achieved, bound: cert.bound });
    }
    let allowed = three_halves_bound(cert.w1, cert.w2).max(1);
    if cert.bound > allowed {
        return Err(CertificateDefect::BoundTooLoose { bound: cert.bound, w1: cert.w1, w2: cert.w2, allowed });
    }
    Ok(())
}

/// Result of checking the edge-span claim on the interleaved sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimOutcome {
    /// Every edge spans at most `bound` positions.
    Holds { max_span: usize, bound: usize },
    /// Both covers have width 0, so no edge crosses between cliques.
    Vacuous,
    Violated { source: Source, edge: (usize, usize), span: usize, bound: usize },
}

impl ClaimOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self, ClaimOutcome::Violated { .. })
    }
}

/// In the interleaved sequence, before the shared clique is extracted, an
/// edge of `G1` (measured between the `C1` cliques holding its ends) or of
/// `G2` (likewise in `C2`) spans at most `w(C1) + w(C2) − 1` positions.
pub fn edge_span_claim_check(
    g1: &Graph,
    c1: &OrderedCliqueCover,
    g2: &Graph,
    c2: &OrderedCliqueCover,
    shared: &SharedMap,
) -> Result<ClaimOutcome, ComposeError> {
    let construction = compose(g1, c1, g2, c2, shared)?;
    Ok(claim_outcome(&construction, c1, c2))
}

/// The claim evaluated on an existing construction.
pub fn claim_outcome(construction: &Construction, c1: &OrderedCliqueCover, c2: &OrderedCliqueCover) -> ClaimOutcome {
    let (w1, w2) = (construction.w1, construction.w2);
    if w1 + w2 == 0 {
        return ClaimOutcome::Vacuous;
    }
    let bound = w1 + w2 - 1;
    let mut position = [vec![0; c1.len()], vec![0; c2.len()]];
    for (at, tagged) in construction.sequence.iter().enumerate() {
        position[tagged.source as usize][tagged.index] = at;
    }
    let mut max_span = 0;
    for (source, cover) in [(Source::First, c1), (Source::Second, c2)] {
        let pos = &position[source as usize];
        for (u, v) in cover.graph().edges() {
            let span = pos[cover.class_of(u)].abs_diff(pos[cover.class_of(v)]);
            if span > bound {
                return ClaimOutcome::Violated { source, edge: (u, v), span, bound };
            }
            max_span = max_span.max(span);
        }
    }
    ClaimOutcome::Holds { max_span, bound }
}
