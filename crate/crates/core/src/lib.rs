//! Clique cover width toolkit.
//!
//! An ordered clique cover partitions the vertices of a graph into cliques
//! `c_0, …, c_t`; its width is the largest index gap `|j − i|` over edges with
//! one end in `c_i` and the other in `c_j`. The clique cover width `CCW(G)` is
//! the smallest width over all ordered clique covers, or equivalently the
//! smallest bandwidth over all graphs obtained by contracting the cliques of a
//! cover.
//!
//! The crate provides:
//!
//! * [`graph`]: simple graphs, clique sums, ω(G) and the induced star number
//!   s(G).
//! * [`layout`]: linear orderings, ordered clique covers, widths, and clique
//!   cover graphs.
//! * [`oracle`]: exact bandwidth and clique cover width for small graphs, and
//!   the inequalities `CCW ≤ BW`, `BW ≤ ω·CCW`, `CCW ≥ ⌈s/2⌉ − 1`.
//! * [`strips`]: strips, blocks, and partitions of a cover around a block.
//! * [`composition`]: the interleaving construction that turns covers of
//!   `G1` and `G2` into a cover of `G1 ⊕ G2` aiming at width
//!   `⌈3/2 (w(C1) + w(C2))⌉`, with an independent certificate verifier.
//! * [`generate`], [`experiment`], [`io`]: instance generators, batch runs
//!   with CSV output, and the text formats.
//!
//! The clique sum glues two graphs along a shared clique; its vertex set is
//! the *union* of the two vertex sets under the identification (some
//! statements of the definition write an intersection there, which cannot be
//! intended since the sum of two paths at their middle vertex has to contain
//! both paths).

pub mod composition;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod io;
pub mod layout;
pub mod oracle;
pub mod strips;

pub use composition::{compose_covers, edge_span_claim_check, interleave, verify_certificate, WidthCertificate};
pub use graph::{clique_sum, Graph, SharedMap, VertexSet};
pub use layout::{cover_graph, cover_width, ordering_width, validate_cover, LinearOrdering, OrderedCliqueCover};
pub use oracle::{bandwidth_exact, ccw_exact, check_inequality_chain};
pub use strips::{locate_enclosing_block, partition_around_block, strip_distance, Strip, StripPartition};
