//! Rooted symmetric trees described purely by their daughter degree sequence.
//!
//! A tree with `q` levels is given by `(k_1, ..., k_{q-1})`, where every vertex
//! on level `i` has exactly `k_i` children. Nothing about the tree is stored
//! beyond that sequence and the derived level sizes `h_i` (the vertex count of
//! the subtree rooted at any level-`i` vertex). Vertices are named by the child
//! indices along the path from the root, so the tree never has to be
//! materialised.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("degree entry {position} ({token:?}) is not a base-10 integer")]
    InvalidToken { position: usize, token: String },

    #[error("degree entry {position} is {token}; entries must be positive")]
    NonPositive { position: usize, token: String },

    #[error("degree entry {position} ({token}) exceeds the 64-bit range")]
    EntryTooLarge { position: usize, token: String },

    #[error("subtree size at level {level} does not fit in 64 bits")]
    Capacity { level: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexError {
    #[error("edge index x_{position} = {value} is out of range (must be <= {max})")]
    OutOfRange {
        position: usize,
        value: u64,
        max: u64,
    },

    #[error("vertex sequence has {len} entries but the tree only has {levels} levels")]
    TooDeep { len: usize, levels: usize },

    #[error("the root has no parent")]
    Root,

    #[error("vertex index {index} is out of range for a tree with {vertex_count} vertices")]
    IndexOutOfRange { index: u64, vertex_count: u64 },

    #[error("malformed vertex text {0:?}; expected \"(x1,x2,...)\" or \"()\"")]
    Malformed(String),
}

/// The daughter degree sequence `(k_1, ..., k_{q-1})`. Every entry is at
/// least 1; the terminal `k_q = 0` is implied by the end of the list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence(Vec<u64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u64>) -> Result<Self, ShapeError> {
        if let Some(pos) = degrees.iter().position(|&k| k == 0) {
            return Err(ShapeError::NonPositive {
                position: pos + 1,
                token: "0".to_owned(),
            });
        }
        Ok(Self(degrees))
    }

    /// Parses `"2,3,4"`. Whitespace around entries is ignored and an empty
    /// (or all-whitespace) string is the single-vertex tree.
    pub fn parse(text: &str) -> Result<Self, ShapeError> {
        if text.trim().is_empty() {
            return Ok(Self::default());
        }
        let mut degrees = Vec::new();
        for (i, raw) in text.split(',').enumerate() {
            let position = i + 1;
            let token = raw.trim();
            let digits = token.strip_prefix('+').unwrap_or(token);
            let negative = token.strip_prefix('-');
            if let Some(rest) = negative {
                if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ShapeError::NonPositive {
                        position,
                        token: token.to_owned(),
                    });
                }
            }
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ShapeError::InvalidToken {
                    position,
                    token: token.to_owned(),
                });
            }
            let k: u64 = digits.parse().map_err(|_| ShapeError::EntryTooLarge {
                position,
                token: token.to_owned(),
            })?;
            if k == 0 {
                return Err(ShapeError::NonPositive {
                    position,
                    token: token.to_owned(),
                });
            }
            degrees.push(k);
        }
        Ok(Self(degrees))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Number of levels `q` (one more than the sequence length).
    pub fn levels(&self) -> usize {
        self.0.len() + 1
    }
}

impl FromStr for DegreeSequence {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, values: &[u64]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// A vertex named by its edge sequence `(x_1, ..., x_{r-1})`; the empty
/// sequence is the root. Validity is always relative to a [`TreeShape`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexId(Vec<u64>);

impl VertexId {
    pub fn root() -> Self {
        Self(Vec::new())
    }

    pub fn new(edges: Vec<u64>) -> Self {
        Self(edges)
    }

    pub fn edges(&self) -> &[u64] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based level; the root is on level 1.
    pub fn level(&self) -> usize {
        self.0.len() + 1
    }

    pub fn parent(&self) -> Result<VertexId, VertexError> {
        match self.0.split_last() {
            Some((_, init)) => Ok(Self(init.to_vec())),
            None => Err(VertexError::Root),
        }
    }

    pub fn child(&self, index: u64) -> VertexId {
        let mut edges = Vec::with_capacity(self.0.len() + 1);
        edges.extend_from_slice(&self.0);
        edges.push(index);
        Self(edges)
    }

    pub fn into_edges(self) -> Vec<u64> {
        self.0
    }
}

impl From<Vec<u64>> for VertexId {
    fn from(edges: Vec<u64>) -> Self {
        Self(edges)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_joined(f, &self.0)?;
        f.write_str(")")
    }
}

impl FromStr for VertexId {
    type Err = VertexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || VertexError::Malformed(s.to_owned());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(malformed)?;
        if inner.trim().is_empty() {
            return Ok(Self::root());
        }
        inner
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| malformed()))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

/// A rooted symmetric tree: the degree sequence plus its level sizes
/// `h_1, ..., h_q`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeShape {
    degrees: DegreeSequence,
    level_sizes: Vec<u64>,
    vertex_count: u64,
    edge_count: u64,
}

impl TreeShape {
    /// Computes `h_q = 1` and `h_i = k_i * h_{i+1} + 1` right to left, failing
    /// with [`ShapeError::Capacity`] if any `h_i` leaves the u64 range.
    pub fn new(degrees: DegreeSequence) -> Result<Self, ShapeError> {
        let ks = degrees.as_slice();
        let mut level_sizes = vec![0u64; ks.len() + 1];
        level_sizes[ks.len()] = 1;
        for i in (0..ks.len()).rev() {
            level_sizes[i] = ks[i]
                .checked_mul(level_sizes[i + 1])
                .and_then(|x| x.checked_add(1))
                .ok_or(ShapeError::Capacity { level: i + 1 })?;
        }
        let vertex_count = level_sizes[0];
        Ok(Self {
            degrees,
            level_sizes,
            vertex_count,
            edge_count: vertex_count - 1,
        })
    }

    pub fn from_degrees(degrees: &[u64]) -> Result<Self, ShapeError> {
        Self::new(DegreeSequence::new(degrees.to_vec())?)
    }

    pub fn parse(text: &str) -> Result<Self, ShapeError> {
        Self::new(DegreeSequence::parse(text)?)
    }

    pub fn degrees(&self) -> &DegreeSequence {
        &self.degrees
    }

    /// Number of levels `q`.
    pub fn levels(&self) -> usize {
        self.level_sizes.len()
    }

    /// `k_level` for `1 <= level < q`, and 0 for the last level.
    pub fn degree(&self, level: usize) -> u64 {
        assert!(
            level >= 1 && level <= self.levels(),
            "level {level} out of range"
        );
        self.degrees.as_slice().get(level - 1).copied().unwrap_or(0)
    }

    /// `h_level` for `1 <= level <= q`.
    pub fn level_size(&self, level: usize) -> u64 {
        assert!(
            level >= 1 && level <= self.levels(),
            "level {level} out of range"
        );
        self.level_sizes[level - 1]
    }

    /// `(h_1, ..., h_q)`.
    pub fn level_sizes(&self) -> &[u64] {
        &self.level_sizes
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn is_path(&self) -> bool {
        self.degrees.as_slice().iter().all(|&k| k == 1)
    }

    /// Number of vertices on `level`: `k_1 * ... * k_{level-1}`.
    pub fn level_width(&self, level: usize) -> u64 {
        assert!(
            level >= 1 && level <= self.levels(),
            "level {level} out of range"
        );
        // Bounded by h_1, so the product cannot overflow.
        self.degrees.as_slice()[..level - 1].iter().product()
    }

    /// Returns the level of `v` if every `x_j` lies in `[0, k_j - 1]` and `v`
    /// is no deeper than the last level.
    pub fn validate_vertex(&self, v: &VertexId) -> Result<usize, VertexError> {
        let ks = self.degrees.as_slice();
        if v.edges().len() > ks.len() {
            return Err(VertexError::TooDeep {
                len: v.edges().len(),
                levels: self.levels(),
            });
        }
        for (j, (&x, &k)) in v.edges().iter().zip(ks).enumerate() {
            if x >= k {
                return Err(VertexError::OutOfRange {
                    position: j + 1,
                    value: x,
                    max: k - 1,
                });
            }
        }
        Ok(v.level())
    }

    /// Position of `v` in breadth-first order (root = 0).
    pub fn bfs_index(&self, v: &VertexId) -> Result<u64, VertexError> {
        self.validate_vertex(v)?;
        let ks = self.degrees.as_slice();
        let mut offset = 0u64;
        let mut width = 1u64;
        for &k in &ks[..v.edges().len()] {
            offset += width;
            width *= k;
        }
        let rank = v
            .edges()
            .iter()
            .zip(ks)
            .fold(0u64, |acc, (&x, &k)| acc * k + x);
        Ok(offset + rank)
    }

    /// Inverse of [`TreeShape::bfs_index`].
    pub fn vertex_at(&self, index: u64) -> Result<VertexId, VertexError> {
        if index >= self.vertex_count {
            return Err(VertexError::IndexOutOfRange {
                index,
                vertex_count: self.vertex_count,
            });
        }
        let ks = self.degrees.as_slice();
        let mut rank = index;
        let mut width = 1u64;
        let mut depth = 0;
        while rank >= width {
            rank -= width;
            width *= ks[depth];
            depth += 1;
        }
        let mut edges = vec![0u64; depth];
        for j in (0..depth).rev() {
            edges[j] = rank % ks[j];
            rank /= ks[j];
        }
        Ok(VertexId(edges))
    }

    /// All vertices in breadth-first order: level by level, lexicographic
    /// within a level. Holds one edge sequence at a time.
    pub fn vertices(&self) -> Vertices<'_> {
        Vertices {
            shape: self,
            current: Some(Vec::new()),
            remaining: self.vertex_count,
        }
    }
}

/// Breadth-first cursor over the vertices of a [`TreeShape`].
#[derive(Debug, Clone)]
pub struct Vertices<'a> {
    shape: &'a TreeShape,
    current: Option<Vec<u64>>,
    remaining: u64,
}

impl Vertices<'_> {
    /// Advances the cursor without allocating, handing out a borrowed view.
    pub fn advance(&mut self) -> Option<&[u64]> {
        // The previous item is stepped lazily so the borrow can be returned.
        let ks = self.shape.degrees.as_slice();
        if self.remaining == self.shape.vertex_count {
            self.remaining -= 1;
            return self.current.as_deref();
        }
        let cur = self.current.as_mut()?;
        if !step_odometer(cur, ks) {
            if cur.len() < ks.len() {
                let next = cur.len() + 1;
                cur.clear();
                cur.resize(next, 0);
            } else {
                self.current = None;
                return None;
            }
        }
        self.remaining -= 1;
        self.current.as_deref()
    }
}

/// Mixed-radix increment with radices `ks`; returns false on wrap-around.
fn step_odometer(digits: &mut [u64], ks: &[u64]) -> bool {
    for j in (0..digits.len()).rev() {
        digits[j] += 1;
        if digits[j] < ks[j] {
            return true;
        }
        digits[j] = 0;
    }
    false
}

impl Iterator for Vertices<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        self.advance().map(|e| VertexId(e.to_vec()))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match usize::try_from(self.remaining) {
            Ok(n) => (n, Some(n)),
            Err(_) => (usize::MAX, None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(ks: &[u64]) -> TreeShape {
        TreeShape::from_degrees(ks).unwrap()
    }

    #[test]
    fn parses_degree_sequences() {
        assert_eq!(
            DegreeSequence::parse("2,3,4").unwrap().as_slice(),
            &[2, 3, 4]
        );
        assert_eq!(
            DegreeSequence::parse(" 2 , 3,4 ").unwrap().as_slice(),
            &[2, 3, 4]
        );
        assert!(DegreeSequence::parse("").unwrap().as_slice().is_empty());
        assert_eq!(
            DegreeSequence::parse("2,0,4"),
            Err(ShapeError::NonPositive {
                position: 2,
                token: "0".into()
            })
        );
        assert!(matches!(
            DegreeSequence::parse("2,-1"),
            Err(ShapeError::NonPositive { position: 2, .. })
        ));
        assert!(matches!(
            DegreeSequence::parse("2,x"),
            Err(ShapeError::InvalidToken { position: 2, .. })
        ));
        assert!(matches!(
            DegreeSequence::parse("2,,3"),
            Err(ShapeError::InvalidToken { position: 2, .. })
        ));
        assert!(matches!(
            DegreeSequence::parse("18446744073709551616"),
            Err(ShapeError::EntryTooLarge { position: 1, .. })
        ));
        assert_eq!(DegreeSequence::parse("2,3,4").unwrap().to_string(), "2,3,4");
    }

    #[test]
    fn level_sizes_of_known_shapes() {
        let s = shape(&[2, 3, 4]);
        assert_eq!(s.level_sizes(), &[33, 16, 5, 1]);
        assert_eq!((s.vertex_count(), s.edge_count()), (33, 32));

        let single = shape(&[]);
        assert_eq!(single.level_sizes(), &[1]);
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));

        assert_eq!(shape(&[1; 6]).level_sizes(), &[7, 6, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn capacity_overflow_is_an_error() {
        let err = TreeShape::from_degrees(&[2; 64]).unwrap_err();
        assert!(matches!(err, ShapeError::Capacity { .. }));
        // 2^63 - 1 vertices still fits.
        assert_eq!(shape(&[2; 62]).vertex_count(), u64::MAX >> 1);
        assert!(TreeShape::from_degrees(&[u64::MAX, 2]).is_err());
    }

    #[test]
    fn validates_vertices() {
        let s = shape(&[2, 3, 4]);
        assert_eq!(s.validate_vertex(&VertexId::new(vec![1, 2, 3])), Ok(4));
        assert_eq!(s.validate_vertex(&VertexId::root()), Ok(1));
        assert_eq!(
            s.validate_vertex(&VertexId::new(vec![2])),
            Err(VertexError::OutOfRange {
                position: 1,
                value: 2,
                max: 1
            })
        );
        assert_eq!(
            s.validate_vertex(&VertexId::new(vec![0, 0, 0, 0])),
            Err(VertexError::TooDeep { len: 4, levels: 4 })
        );
    }

    #[test]
    fn parent_drops_last_entry() {
        assert_eq!(
            VertexId::new(vec![1, 2, 3]).parent(),
            Ok(VertexId::new(vec![1, 2]))
        );
        assert_eq!(VertexId::new(vec![0]).parent(), Ok(VertexId::root()));
        assert_eq!(VertexId::root().parent(), Err(VertexError::Root));
    }

    #[test]
    fn vertex_text_form() {
        assert_eq!(VertexId::new(vec![1, 2, 3]).to_string(), "(1,2,3)");
        assert_eq!(VertexId::root().to_string(), "()");
        assert_eq!(
            "(1, 2,3)".parse::<VertexId>(),
            Ok(VertexId::new(vec![1, 2, 3]))
        );
        assert_eq!("()".parse::<VertexId>(), Ok(VertexId::root()));
        assert!("1,2".parse::<VertexId>().is_err());
        assert!("(1,a)".parse::<VertexId>().is_err());
    }

    #[test]
    fn enumerates_in_breadth_first_order() {
        let s = shape(&[2, 3, 4]);
        let first: Vec<String> = s.vertices().take(4).map(|v| v.to_string()).collect();
        assert_eq!(first, ["()", "(0)", "(1)", "(0,0)"]);
        assert_eq!(s.vertices().count(), 33);
        assert_eq!(s.vertices().last(), Some(VertexId::new(vec![1, 2, 3])));
        assert_eq!(s.vertices().nth(32), Some(VertexId::new(vec![1, 2, 3])));
        assert_eq!(s.vertices().nth(5), Some(VertexId::new(vec![0, 2])));

        let single: Vec<_> = shape(&[]).vertices().collect();
        assert_eq!(single, [VertexId::root()]);
    }

    #[test]
    fn bfs_rank_and_unrank() {
        let s = shape(&[2, 3, 4]);
        for (i, v) in s.vertices().enumerate() {
            assert_eq!(s.bfs_index(&v), Ok(i as u64));
            assert_eq!(s.vertex_at(i as u64).as_ref(), Ok(&v));
        }
        assert!(s.vertex_at(33).is_err());
    }

    #[test]
    fn level_widths() {
        let s = shape(&[2, 3, 4]);
        let widths: Vec<u64> = (1..=4).map(|r| s.level_width(r)).collect();
        assert_eq!(widths, [1, 2, 6, 24]);
        assert_eq!(widths.iter().sum::<u64>(), s.vertex_count());
    }
}
