//! The closed-form graceful labelling of a rooted symmetric tree.
//!
//! For a vertex `(x_1, ..., x_{r-1})` on level `r`, with `h_i` the level sizes:
//!
//! * `r = 1`: `0`
//! * `r` even: `(k_1 - x_1) h_2 - x_2 h_3 - ... - x_{r-1} h_r - (r - 2) / 2`
//! * `r` odd: `x_1 h_2 + x_2 h_3 + ... + x_{r-1} h_r + (r - 1) / 2`
//!
//! Each label costs `O(r)` with the precomputed `h` table, so whole trees can
//! be labelled as a stream without storing anything per vertex.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::shape::{TreeShape, VertexError, VertexId, Vertices};

/// Trees with more vertices than this keep an evaluation view instead of a
/// materialised label table.
pub const DEFAULT_MATERIALIZE_THRESHOLD: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error(transparent)]
    Vertex(#[from] VertexError),

    #[error("arithmetic left the u64 range while labelling {vertex}")]
    Arithmetic { vertex: VertexId },

    #[error("label table has {got} entries, expected {expected}")]
    TableSize { expected: u64, got: u64 },
}

/// A vertex label `f(v)` in `[0, |E|]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Label(pub u64);

/// An induced edge label `g(uv) = |f(u) - f(v)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EdgeLabel(pub u64);

impl Label {
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn distance(self, other: Label) -> EdgeLabel {
        EdgeLabel(self.0.abs_diff(other.0))
    }
}

impl EdgeLabel {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Labels the vertex `v` of `shape`.
pub fn label_vertex(shape: &TreeShape, v: &VertexId) -> Result<Label, LabelError> {
    shape.validate_vertex(v)?;
    closed_form(shape, v.edges()).ok_or_else(|| LabelError::Arithmetic { vertex: v.clone() })
}

/// `|f(parent) - f(child)|` for a non-root `child`.
pub fn edge_label(shape: &TreeShape, child: &VertexId) -> Result<EdgeLabel, LabelError> {
    let parent = child.parent()?;
    let below = label_vertex(shape, child)?;
    let above = label_vertex(shape, &parent)?;
    Ok(above.distance(below))
}

/// Evaluates the formula on an already validated edge sequence. `None` means
/// an intermediate left the u64 range, which cannot happen for a valid vertex.
fn closed_form(shape: &TreeShape, edges: &[u64]) -> Option<Label> {
    let level = edges.len() + 1;
    let Some((&first, rest)) = edges.split_first() else {
        return Some(Label(0));
    };
    let h = shape.level_sizes();
    // rest[j] pairs with h_{j+3}, i.e. h[j + 2] zero-based.
    let tail = rest
        .iter()
        .zip(&h[2..])
        .try_fold(0u64, |acc, (&x, &hs)| acc.checked_add(x.checked_mul(hs)?))?;
    if level.is_multiple_of(2) {
        let lead = (shape.degree(1) - first).checked_mul(h[1])?;
        lead.checked_sub(tail)?
            .checked_sub((level as u64 - 2) / 2)
            .map(Label)
    } else {
        first
            .checked_mul(h[1])?
            .checked_add(tail)?
            .checked_add((level as u64 - 1) / 2)
            .map(Label)
    }
}

/// One row of a full labelling: a vertex, its label, and (except for the
/// root) its parent's label and the label of the edge to its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelRecord {
    pub vertex: VertexId,
    pub label: Label,
    pub parent_label: Option<Label>,
    pub edge_label: Option<EdgeLabel>,
}

impl LabelRecord {
    pub fn level(&self) -> usize {
        self.vertex.level()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Assignment {
    ClosedForm,
    /// Labels indexed by breadth-first position.
    Table(Vec<u64>),
}

/// A complete vertex-to-label assignment for a shape, either evaluated on
/// demand from the closed form or stored as a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GracefulLabelling {
    shape: TreeShape,
    assignment: Assignment,
}

impl GracefulLabelling {
    /// The closed-form labelling as an evaluation view.
    pub fn closed_form(shape: TreeShape) -> Self {
        Self {
            shape,
            assignment: Assignment::ClosedForm,
        }
    }

    /// The closed-form labelling, materialised when the tree has at most
    /// `threshold` vertices.
    pub fn with_threshold(shape: TreeShape, threshold: u64) -> Self {
        let mut labelling = Self::closed_form(shape);
        if labelling.shape.vertex_count() <= threshold {
            let table = label_all(&labelling.shape).map(|r| r.label.0).collect();
            labelling.assignment = Assignment::Table(table);
        }
        labelling
    }

    /// An arbitrary assignment, given in breadth-first vertex order. Nothing
    /// about gracefulness is checked here.
    pub fn from_table(shape: TreeShape, labels: Vec<u64>) -> Result<Self, LabelError> {
        if labels.len() as u64 != shape.vertex_count() {
            return Err(LabelError::TableSize {
                expected: shape.vertex_count(),
                got: labels.len() as u64,
            });
        }
        Ok(Self {
            shape,
            assignment: Assignment::Table(labels),
        })
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.assignment, Assignment::Table(_))
    }

    pub fn label_of(&self, v: &VertexId) -> Result<Label, LabelError> {
        match &self.assignment {
            Assignment::ClosedForm => label_vertex(&self.shape, v),
            Assignment::Table(t) => Ok(Label(t[self.shape.bfs_index(v)? as usize])),
        }
    }

    /// Labels in breadth-first order.
    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.records().map(|r| r.label)
    }

    pub fn records(&self) -> Records<'_> {
        Records {
            source: RecordSource::Labelling(self),
            cursor: self.shape.vertices(),
            index: 0,
        }
    }

    fn label_at(&self, edges: &[u64], index: u64) -> Label {
        match &self.assignment {
            Assignment::ClosedForm => closed_form(&self.shape, edges)
                .expect("closed-form label of a valid vertex stays within u64"),
            Assignment::Table(t) => Label(t[index as usize]),
        }
    }
}

/// Streams the closed-form labelling of `shape` in breadth-first order.
pub fn label_all(shape: &TreeShape) -> Records<'_> {
    Records {
        source: RecordSource::Shape(shape),
        cursor: shape.vertices(),
        index: 0,
    }
}

/// Record stream in breadth-first order; memory per step is one edge sequence.
pub struct Records<'a> {
    source: RecordSource<'a>,
    cursor: Vertices<'a>,
    index: u64,
}

enum RecordSource<'a> {
    Shape(&'a TreeShape),
    Labelling(&'a GracefulLabelling),
}

impl Iterator for Records<'_> {
    type Item = LabelRecord;

    fn next(&mut self) -> Option<LabelRecord> {
        let index = self.index;
        let edges = self.cursor.advance()?;
        self.index += 1;
        let (shape, labelling) = match self.source {
            RecordSource::Shape(s) => (s, None),
            RecordSource::Labelling(l) => (l.shape(), Some(l)),
        };
        let eval = |e: &[u64], i: u64| match labelling {
            Some(l) => l.label_at(e, i),
            None => {
                closed_form(shape, e).expect("closed-form label of a valid vertex stays within u64")
            }
        };
        let label = eval(edges, index);
        let parent_label = match edges.split_last() {
            None => None,
            Some((_, parent)) => {
                let parent_index = match labelling {
                    Some(l) if l.is_materialized() => parent_bfs_index(shape, edges),
                    _ => 0,
                };
                Some(eval(parent, parent_index))
            }
        };
        Some(LabelRecord {
            vertex: VertexId::new(edges.to_vec()),
            label,
            parent_label,
            edge_label: parent_label.map(|p| p.distance(label)),
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.cursor.size_hint()
    }
}

fn parent_bfs_index(shape: &TreeShape, edges: &[u64]) -> u64 {
    let parent = VertexId::new(edges[..edges.len() - 1].to_vec());
    shape
        .bfs_index(&parent)
        .expect("parent of a valid vertex is valid")
}
