//! Strips (runs of consecutive cliques in an ordered cover), blocks (strips of
//! exactly `w(C)` cliques), and the partition of a cover into blocks around a
//! designated central strip.
//!
//! Strip sizes are counted in cliques. A cover of width 0 uses block size 1.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::graph::{GraphError, VertexSet};
use crate::layout::OrderedCliqueCover;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StripError {
    #[error("strip {strip} does not fit in a cover of {len} cliques")]
    OutOfRange { strip: Strip, len: usize },
    #[error("strip {strip} has {got} cliques but a block of this cover has {expected}")]
    NotABlock { strip: Strip, got: usize, expected: usize },
    #[error("part index {index} out of range for a partition of {len} parts")]
    PartOutOfRange { index: usize, len: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The cliques `start..start + len` of a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strip {
    pub start: usize,
    pub len: usize,
}

impl Strip {
    pub fn new(start: usize, len: usize) -> Self {
        Strip { start, len }
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.range().contains(&index)
    }
}

impl fmt::Display for Strip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{})", self.start, self.end())
    }
}

/// Number of cliques in a block of `c`: its width, or 1 when the width is 0.
pub fn block_size(c: &OrderedCliqueCover) -> usize {
    c.width().max(1)
}

/// A cover cut into consecutive strips around a central one.
///
/// Every part other than the first and last is a block. The first and last
/// parts hold at most a block's worth of cliques; empty parts are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripPartition {
    parts: Vec<Strip>,
    block_index: usize,
    block_size: usize,
}

impl StripPartition {
    pub fn parts(&self) -> &[Strip] {
        &self.parts
    }

    pub fn block_index(&self) -> usize {
        self.block_index
    }

    pub fn block(&self) -> Strip {
        self.parts[self.block_index]
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Parts left of the central strip, nearest first.
    pub fn left_outward(&self) -> impl Iterator<Item = Strip> + '_ {
        self.parts[..self.block_index].iter().rev().copied()
    }

    /// Parts right of the central strip, nearest first.
    pub fn right_outward(&self) -> impl Iterator<Item = Strip> + '_ {
        self.parts[self.block_index + 1..].iter().copied()
    }

    /// Distance between parts `i` and `j`, `|j - i|`.
    pub fn distance(&self, i: usize, j: usize) -> Result<usize, StripError> {
        for index in [i, j] {
            if index >= self.parts.len() {
                return Err(StripError::PartOutOfRange { index, len: self.parts.len() });
            }
        }
        Ok(i.abs_diff(j))
    }
}

impl fmt::Display for StripPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if i == self.block_index {
                write!(f, "*{part}*")?;
            } else {
                write!(f, "{part}")?;
            }
        }
        Ok(())
    }
}

pub fn strip_distance(p: &StripPartition, i: usize, j: usize) -> Result<usize, StripError> {
    p.distance(i, j)
}

/// Partitions a cover around the block `b`.
///
/// With `k = b.start = p·w + r`, the first `r` cliques form the leading strip,
/// then `p` blocks reach `b`; the cliques after `b` are cut into blocks with a
/// final strip of at most `w` cliques.
pub fn partition_around_block(c: &OrderedCliqueCover, b: Strip) -> Result<StripPartition, StripError> {
    let expected = block_size(c);
    if b.end() > c.len() {
        return Err(StripError::OutOfRange { strip: b, len: c.len() });
    }
    if b.len != expected {
        return Err(StripError::NotABlock { strip: b, got: b.len, expected });
    }
    partition_around_strip(c.len(), expected, b)
}

/// Like [`partition_around_block`], but the central strip may have any
/// nonzero length; the remaining cliques are still cut into blocks of
/// `block_size`.
pub fn partition_around_strip(total: usize, block_size: usize, central: Strip) -> Result<StripPartition, StripError> {
    assert!(block_size >= 1, "block size must be positive");
    if central.end() > total || central.len == 0 {
        return Err(StripError::OutOfRange { strip: central, len: total });
    }
    let mut parts = Vec::with_capacity(total / block_size + 3);
    let lead = central.start % block_size;
    if lead > 0 {
        parts.push(Strip::new(0, lead));
    }
    parts.extend((lead..central.start).step_by(block_size).map(|s| Strip::new(s, block_size)));
    let block_index = parts.len();
    parts.push(central);
    parts.extend(
        (central.end()..total)
            .step_by(block_size)
            .map(|s| Strip::new(s, block_size.min(total - s))),
    );
    Ok(StripPartition { parts, block_index, block_size })
}

/// The strip of `max(w, span)` cliques that contains every clique meeting `s`,
/// where `span` is the length of the shortest such window.
///
/// The window grows rightward from the first clique meeting `s`, and is
/// shifted left when it would run past the end of the cover. Because `s` is a
/// clique, `span` is at most `w + 1`.
pub fn locate_enclosing_block(c: &OrderedCliqueCover, s: &VertexSet) -> Result<Strip, StripError> {
    if s.is_empty() {
        return Err(StripError::EmptySet);
    }
    c.graph().require_clique(s)?;
    let (lo, hi) = s
        .iter()
        .map(|v| c.class_of(v))
        .fold((usize::MAX, 0), |(lo, hi), i| (lo.min(i), hi.max(i)));
    let span = hi - lo + 1;
    let len = c.width().max(span);
    let start = lo.min(c.len() - len);
    Ok(Strip::new(start, len))
}

/// An edge joining a vertex covered before `b` to one covered after it, if
/// there is one.
pub fn crossing_edge(c: &OrderedCliqueCover, b: Strip) -> Option<(usize, usize)> {
    c.graph().edges().find(|&(u, v)| {
        let (a, z) = (c.class_of(u), c.class_of(v));
        (a < b.start && z >= b.end()) || (z < b.start && a >= b.end())
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::Graph;

    fn path_cover(classes: &[&[usize]]) -> OrderedCliqueCover {
        let n = classes.iter().map(|c| c.len()).sum::<usize>();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = Arc::new(Graph::new(n, &edges).unwrap());
        OrderedCliqueCover::new(g, classes.iter().map(|c| VertexSet::from(*c)).collect()).unwrap()
    }

    fn strips(parts: &[(usize, usize)]) -> Vec<Strip> {
        parts.iter().map(|&(s, l)| Strip::new(s, l)).collect()
    }

    #[test]
    fn seven_cliques_block_in_second_slot() {
        let p = partition_around_strip(7, 2, Strip::new(2, 2)).unwrap();
        assert_eq!(p.parts(), strips(&[(0, 2), (2, 2), (4, 2), (6, 1)]));
        assert_eq!(p.block_index(), 1);
    }

    #[test]
    fn leading_remainder_strip() {
        let p = partition_around_strip(5, 2, Strip::new(1, 2)).unwrap();
        assert_eq!(p.parts(), strips(&[(0, 1), (1, 2), (3, 2)]));
        assert_eq!(p.block_index(), 1);
    }

    #[test]
    fn whole_cover_is_one_part() {
        let p = partition_around_strip(3, 3, Strip::new(0, 3)).unwrap();
        assert_eq!(p.parts(), strips(&[(0, 3)]));
        assert_eq!(p.block_index(), 0);
        assert_eq!(p.to_string(), "*[0..3)*");
    }

    #[test]
    fn block_length_is_checked() {
        // P6 as singletons has width 1.
        let c = path_cover(&[&[0], &[1], &[2], &[3], &[4], &[5]]);
        assert!(partition_around_block(&c, Strip::new(2, 1)).is_ok());
        assert_eq!(
            partition_around_block(&c, Strip::new(2, 2)),
            Err(StripError::NotABlock { strip: Strip::new(2, 2), got: 2, expected: 1 })
        );
        assert!(matches!(
            partition_around_block(&c, Strip::new(6, 1)),
            Err(StripError::OutOfRange { .. })
        ));
    }

    #[test]
    fn distances() {
        let p = partition_around_strip(6, 2, Strip::new(2, 2)).unwrap();
        assert_eq!(strip_distance(&p, 1, 1), Ok(0));
        assert_eq!(strip_distance(&p, 0, 2), Ok(2));
        assert_eq!(strip_distance(&p, 2, 0), Ok(2));
        assert!(strip_distance(&p, 0, 3).is_err());
    }

    #[test]
    fn enclosing_block_single_clique() {
        let c = path_cover(&[&[0, 1], &[2, 3], &[4]]);
        assert_eq!(locate_enclosing_block(&c, &VertexSet::from([2])), Ok(Strip::new(1, 1)));
        assert_eq!(locate_enclosing_block(&c, &VertexSet::from([1, 2])), Ok(Strip::new(0, 2)));
        assert_eq!(locate_enclosing_block(&c, &VertexSet::new()), Err(StripError::EmptySet));
        assert!(matches!(
            locate_enclosing_block(&c, &VertexSet::from([0, 2])),
            Err(StripError::Graph(GraphError::NotAClique { .. }))
        ));
    }

    #[test]
    fn enclosing_block_shifts_left_at_the_end() {
        // Triangle-free path, width 1 cover; shared vertex in the last clique.
        let c = path_cover(&[&[0], &[1], &[2]]);
        assert_eq!(locate_enclosing_block(&c, &VertexSet::from([2])), Ok(Strip::new(2, 1)));
    }

    #[test]
    fn enclosing_window_may_exceed_width() {
        // Triangle {2,3,4} covered as {0},{1},{2},{3},{4},{5}: 0-2, 1-3 keep
        // the width at 2 while the shared triangle spans three cliques.
        let g = Arc::new(
            Graph::new(6, &[(0, 2), (1, 3), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap(),
        );
        let c = OrderedCliqueCover::singletons(g);
        assert_eq!(c.width(), 2);
        assert_eq!(locate_enclosing_block(&c, &VertexSet::from([2, 3, 4])), Ok(Strip::new(2, 3)));
    }

    #[test]
    fn blocks_separate_their_sides() {
        let c = path_cover(&[&[0, 1], &[2], &[3, 4], &[5]]);
        for start in 0..c.len() {
            assert_eq!(crossing_edge(&c, Strip::new(start, 1)), None);
        }
        assert_eq!(crossing_edge(&c, Strip::new(1, 0)), Some((1, 2)));
    }
}
