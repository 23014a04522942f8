//! Graceful labelling of rooted symmetric trees.
//!
//! A rooted symmetric tree is fixed by its daughter degree sequence
//! `(k_1, ..., k_{q-1})`. This crate labels every vertex with a closed-form
//! graceful labelling, decodes labels back to vertices, and checks the
//! results against independent oracles.
//!
//! ```
//! use graceful_core::{label_vertex, invert_label, Label, TreeShape, VertexId};
//!
//! let shape = TreeShape::parse("2,3,4").unwrap();
//! let v = VertexId::new(vec![1, 1, 0]);
//! assert_eq!(label_vertex(&shape, &v).unwrap(), Label(10));
//! assert_eq!(invert_label(&shape, Label(10)).unwrap(), v);
//! ```

pub mod cli;
pub mod inverse;
pub mod labelling;
pub mod shape;
pub mod verify;

pub use inverse::{invert_label, trace_inversion, DecodeState, InverseError};
pub use labelling::{
    edge_label, label_all, label_vertex, EdgeLabel, GracefulLabelling, Label, LabelError,
    LabelRecord,
};
pub use shape::{DegreeSequence, ShapeError, TreeShape, VertexError, VertexId};
pub use verify::{
    brute_force_graceful, canonical_path_labelling, check_weakly_alpha, verify_graceful,
    OracleError, VerificationReport, VerifyError, WeaklyAlphaReport,
};
