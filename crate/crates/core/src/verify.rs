//! Independent checks on labellings.
//!
//! Nothing here evaluates the closed-form labelling: every check works on a
//! stream of [`LabelRecord`]s, so the same code judges the closed form, a
//! brute-force labelling, or a deliberately corrupted table.

use std::fmt;

use thiserror::Error;

use crate::labelling::{GracefulLabelling, LabelRecord};
use crate::shape::{TreeShape, VertexId, Vertices};

/// Default vertex cap for [`brute_force_graceful`].
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 14;

/// Counterexamples kept per report; the rest are only counted.
pub const MAX_COUNTEREXAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("label stream has {got} records, expected {expected}")]
    StreamLength { expected: u64, got: u64 },

    #[error("record {index} is vertex {got}, expected {expected} in breadth-first order")]
    StreamOrder {
        index: u64,
        expected: VertexId,
        got: VertexId,
    },

    #[error("labelling is not graceful: {0}")]
    NotGraceful(VerificationReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("tree has {vertices} vertices, above the brute-force cap of {cap}")]
    TooLarge { vertices: u64, cap: u64 },
}

/// A fixed-size set of small integers.
#[derive(Debug, Clone)]
pub struct Bitmap {
    words: Vec<u64>,
    len: u64,
}

impl Bitmap {
    pub fn new(len: u64) -> Self {
        let words = usize::try_from(len.div_ceil(64)).expect("bitmap exceeds address space");
        Self {
            words: vec![0; words],
            len,
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Sets bit `i` and returns whether it was already set.
    pub fn test_and_set(&mut self, i: u64) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let word = &mut self.words[(i / 64) as usize];
        let mask = 1u64 << (i % 64);
        let was = *word & mask != 0;
        *word |= mask;
        was
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * std::mem::size_of::<u64>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    DuplicateVertexLabel {
        vertex: VertexId,
        label: u64,
    },
    VertexLabelOutOfRange {
        vertex: VertexId,
        label: u64,
        max: u64,
    },
    DuplicateEdgeLabel {
        child: VertexId,
        label: u64,
    },
    EdgeLabelOutOfRange {
        child: VertexId,
        label: u64,
        max: u64,
    },
    /// The record's edge label disagrees with its own vertex and parent labels.
    InconsistentEdge {
        child: VertexId,
        stated: Option<u64>,
        expected: Option<u64>,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateVertexLabel { vertex, label } => {
                write!(f, "vertex {vertex} repeats vertex label {label}")
            }
            Self::VertexLabelOutOfRange { vertex, label, max } => {
                write!(f, "vertex {vertex} has label {label} outside [0, {max}]")
            }
            Self::DuplicateEdgeLabel { child, label } => {
                write!(f, "edge into {child} repeats edge label {label}")
            }
            Self::EdgeLabelOutOfRange { child, label, max } => {
                write!(f, "edge into {child} has label {label} outside [1, {max}]")
            }
            Self::InconsistentEdge {
                child,
                stated,
                expected,
            } => {
                write!(
                    f,
                    "edge into {child} states {stated:?} but its endpoints give {expected:?}"
                )
            }
        }
    }
}

/// Outcome of a gracefulness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub vertex_labels_distinct: bool,
    pub labels_in_range: bool,
    /// Edge labels are exactly `{1, ..., |E|}`.
    pub edge_label_multiset_complete: bool,
    pub counterexamples: Vec<Counterexample>,
    /// Violations found beyond [`MAX_COUNTEREXAMPLES`].
    pub suppressed: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.vertex_labels_distinct && self.labels_in_range && self.edge_label_multiset_complete
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("graceful");
        }
        write!(
            f,
            "distinct vertex labels: {}, labels in range: {}, edge labels complete: {}",
            self.vertex_labels_distinct, self.labels_in_range, self.edge_label_multiset_complete
        )?;
        if let Some(first) = self.counterexamples.first() {
            write!(f, "; first violation: {first}")?;
        }
        Ok(())
    }
}

/// Closed interval of integers `k` that weakly straddle every edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub lo: u64,
    pub hi: u64,
}

impl KRange {
    pub fn contains(&self, k: u64) -> bool {
        self.lo <= k && k <= self.hi
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeaklyAlphaReport {
    /// All `k` with `min(f(x), f(y)) <= k <= max(f(x), f(y))` on every edge.
    pub feasible_k_range: Option<KRange>,
    /// `h_2` when `k_1 = 2`.
    pub claimed_k: Option<u64>,
    /// Whether `claimed_k` lies in the feasible range.
    pub claim_holds: Option<bool>,
    /// Whether some `k` satisfies `min <= k < max` on every edge.
    pub strict_alpha_feasible: bool,
}

impl WeaklyAlphaReport {
    pub fn feasible(&self) -> bool {
        self.feasible_k_range.is_some()
    }
}

/// Single-pass checker fed one record at a time. Memory is two bitmaps of
/// `|E| + 1` and `|E|` bits plus one cursor over the expected vertex order.
pub struct StreamVerifier<'a> {
    shape: &'a TreeShape,
    expected: Vertices<'a>,
    seen: u64,
    vertex_bits: Bitmap,
    edge_bits: Bitmap,
    report: VerificationReport,
    // Running max of per-edge minima and min of per-edge maxima.
    k_lo: u64,
    k_hi: u64,
}

impl<'a> StreamVerifier<'a> {
    pub fn new(shape: &'a TreeShape) -> Self {
        let edges = shape.edge_count();
        Self {
            shape,
            expected: shape.vertices(),
            seen: 0,
            vertex_bits: Bitmap::new(edges + 1),
            edge_bits: Bitmap::new(edges),
            report: VerificationReport {
                vertex_labels_distinct: true,
                labels_in_range: true,
                edge_label_multiset_complete: true,
                counterexamples: Vec::new(),
                suppressed: 0,
            },
            k_lo: 0,
            k_hi: u64::MAX,
        }
    }

    /// Bytes held by the two presence bitmaps.
    pub fn bitmap_bytes(&self) -> usize {
        self.vertex_bits.size_in_bytes() + self.edge_bits.size_in_bytes()
    }

    fn flag(&mut self, c: Counterexample) {
        if self.report.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.report.counterexamples.push(c);
        } else {
            self.report.suppressed += 1;
        }
    }

    pub fn push(&mut self, record: &LabelRecord) -> Result<(), VerifyError> {
        let index = self.seen;
        let Some(expected) = self.expected.advance() else {
            return Err(VerifyError::StreamLength {
                expected: self.shape.vertex_count(),
                got: index + 1,
            });
        };
        if expected != record.vertex.edges() {
            return Err(VerifyError::StreamOrder {
                index,
                expected: VertexId::new(expected.to_vec()),
                got: record.vertex.clone(),
            });
        }
        self.seen += 1;

        let max = self.shape.edge_count();
        let label = record.label.get();
        if label > max {
            self.report.labels_in_range = false;
            self.flag(Counterexample::VertexLabelOutOfRange {
                vertex: record.vertex.clone(),
                label,
                max,
            });
        } else if self.vertex_bits.test_and_set(label) {
            self.report.vertex_labels_distinct = false;
            self.flag(Counterexample::DuplicateVertexLabel {
                vertex: record.vertex.clone(),
                label,
            });
        }

        let expected_edge = record.parent_label.map(|p| p.distance(record.label));
        if record.vertex.is_root() != record.parent_label.is_none()
            || expected_edge != record.edge_label
        {
            self.report.edge_label_multiset_complete = false;
            self.flag(Counterexample::InconsistentEdge {
                child: record.vertex.clone(),
                stated: record.edge_label.map(|e| e.get()),
                expected: expected_edge.map(|e| e.get()),
            });
            return Ok(());
        }
        let (Some(parent), Some(edge)) = (record.parent_label, expected_edge) else {
            return Ok(());
        };
        let edge = edge.get();
        if edge == 0 || edge > max {
            self.report.edge_label_multiset_complete = false;
            self.flag(Counterexample::EdgeLabelOutOfRange {
                child: record.vertex.clone(),
                label: edge,
                max,
            });
        } else if self.edge_bits.test_and_set(edge - 1) {
            self.report.edge_label_multiset_complete = false;
            self.flag(Counterexample::DuplicateEdgeLabel {
                child: record.vertex.clone(),
                label: edge,
            });
        }
        let (a, b) = (parent.get(), label);
        self.k_lo = self.k_lo.max(a.min(b));
        self.k_hi = self.k_hi.min(a.max(b));
        Ok(())
    }

    /// Ends the stream; fails if fewer than `|V|` records arrived.
    pub fn finish(self) -> Result<(VerificationReport, WeakInterval), VerifyError> {
        if self.seen != self.shape.vertex_count() {
            return Err(VerifyError::StreamLength {
                expected: self.shape.vertex_count(),
                got: self.seen,
            });
        }
        let interval = if self.shape.edge_count() == 0 {
            WeakInterval {
                range: Some(KRange { lo: 0, hi: 0 }),
                strict: true,
            }
        } else {
            let range = (self.k_lo <= self.k_hi).then_some(KRange {
                lo: self.k_lo,
                hi: self.k_hi,
            });
            WeakInterval {
                range,
                strict: self.k_lo < self.k_hi,
            }
        };
        Ok((self.report, interval))
    }
}

/// Weak and strict separator feasibility gathered during a stream pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeakInterval {
    pub range: Option<KRange>,
    pub strict: bool,
}

impl WeakInterval {
    pub fn into_report(self, shape: &TreeShape) -> WeaklyAlphaReport {
        let claimed_k = (shape.levels() >= 2 && shape.degree(1) == 2).then(|| shape.level_size(2));
        WeaklyAlphaReport {
            feasible_k_range: self.range,
            claimed_k,
            claim_holds: claimed_k.map(|k| self.range.is_some_and(|r| r.contains(k))),
            strict_alpha_feasible: self.strict,
        }
    }
}

/// Checks that `records` is a graceful labelling of `shape`.
pub fn verify_graceful<I>(shape: &TreeShape, records: I) -> Result<VerificationReport, VerifyError>
where
    I: IntoIterator<Item = LabelRecord>,
{
    let mut verifier = StreamVerifier::new(shape);
    for record in records {
        verifier.push(&record)?;
    }
    verifier.finish().map(|(report, _)| report)
}

/// Computes the feasible separator interval of a graceful labelling. Fails
/// with [`VerifyError::NotGraceful`] if the labelling is not graceful.
pub fn check_weakly_alpha<I>(
    shape: &TreeShape,
    records: I,
) -> Result<WeaklyAlphaReport, VerifyError>
where
    I: IntoIterator<Item = LabelRecord>,
{
    let mut verifier = StreamVerifier::new(shape);
    for record in records {
        verifier.push(&record)?;
    }
    let (report, interval) = verifier.finish()?;
    if !report.passed() {
        return Err(VerifyError::NotGraceful(report));
    }
    Ok(interval.into_report(shape))
}

/// Backtracking search for a graceful labelling, assigning vertices in
/// breadth-first order and trying labels in increasing order, so the result
/// is the lexicographically first graceful labelling of that order.
pub fn brute_force_graceful(
    shape: &TreeShape,
    cap: u64,
) -> Result<Option<GracefulLabelling>, OracleError> {
    let n = shape.vertex_count();
    if n > cap {
        return Err(OracleError::TooLarge { vertices: n, cap });
    }
    let parents: Vec<usize> = shape
        .vertices()
        .map(|v| match v.parent() {
            Ok(p) => shape.bfs_index(&p).expect("parent is valid") as usize,
            Err(_) => usize::MAX,
        })
        .collect();
    let mut search = Search {
        parents: &parents,
        labels: vec![0; parents.len()],
        vertex_used: vec![false; parents.len()],
        edge_used: vec![false; parents.len()],
    };
    if !search.extend(0) {
        return Ok(None);
    }
    let labels = search.labels.clone();
    Ok(Some(
        GracefulLabelling::from_table(shape.clone(), labels).expect("one label per vertex"),
    ))
}

struct Search<'a> {
    parents: &'a [usize],
    labels: Vec<u64>,
    vertex_used: Vec<bool>,
    edge_used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, i: usize) -> bool {
        let n = self.parents.len();
        if i == n {
            return true;
        }
        for label in 0..n {
            if self.vertex_used[label] {
                continue;
            }
            let edge = if i == 0 {
                None
            } else {
                let d = (self.labels[self.parents[i]] as usize).abs_diff(label);
                if d == 0 || self.edge_used[d] {
                    continue;
                }
                Some(d)
            };
            self.labels[i] = label as u64;
            self.vertex_used[label] = true;
            if let Some(d) = edge {
                self.edge_used[d] = true;
            }
            if self.extend(i + 1) {
                return true;
            }
            self.vertex_used[label] = false;
            if let Some(d) = edge {
                self.edge_used[d] = false;
            }
        }
        false
    }
}

/// The zig-zag labelling `0, n-1, 1, n-2, ...` of a path on `n` vertices,
/// read from one end. Empty for `n = 0`.
pub fn canonical_path_labelling(n: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(n as usize);
    if n == 0 {
        return out;
    }
    let (mut low, mut high) = (0u64, n - 1);
    for i in 0..n {
        if i % 2 == 0 {
            out.push(low);
            low += 1;
        } else {
            out.push(high);
            high -= 1;
        }
    }
    out
}
