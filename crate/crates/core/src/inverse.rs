//! Decoding a label back to its vertex.
//!
//! Two division chains run side by side. The even chain starts from
//! `m' = k_1 h_2 - m` and recovers the digits of an even-level vertex; the odd
//! chain starts from `m` itself and recovers the digits of an odd-level vertex.
//! Levels are tested in order 2, 3, 4, ... with the chains alternating, and
//! each test past level 2 is two Euclidean divisions: the running remainder by
//! `h_{r-1}`, then (remainder - 1) by `h_r`. The first zero remainder fixes the
//! level and the chain's quotients are the edge sequence.

use thiserror::Error;

use crate::labelling::Label;
use crate::shape::{TreeShape, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("label {label} is out of range; labels of this tree lie in [0, {max}]")]
    OutOfRange { label: u64, max: u64 },

    /// One of the decoding invariants did not hold. Only reachable through a
    /// bug, since every label in range has exactly one preimage.
    #[error("decoding label {label} broke an invariant at level {level}: {reason}")]
    Consistency {
        label: u64,
        level: usize,
        reason: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chain {
    Even,
    Odd,
}

/// Quotients produced so far by one chain and its running remainder.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainState {
    pub digits: Vec<u64>,
    pub remainder: u64,
}

/// Snapshot of the decoder after testing one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeState {
    pub m: u64,
    /// `k_1 h_2 - m`; zero for the single-vertex tree.
    pub m_prime: u64,
    /// The level tested by the step that produced this snapshot.
    pub level: usize,
    pub even: ChainState,
    pub odd: ChainState,
    /// Set on the final snapshot: the chain whose remainder reached zero.
    pub resolved: Option<Chain>,
}

impl DecodeState {
    /// The decoded vertex, once resolved.
    pub fn vertex(&self) -> Option<VertexId> {
        match self.resolved? {
            Chain::Even => Some(VertexId::new(self.even.digits.clone())),
            Chain::Odd if self.level == 1 => Some(VertexId::root()),
            Chain::Odd => Some(VertexId::new(self.odd.digits.clone())),
        }
    }
}

/// Returns the unique vertex labelled `m`.
pub fn invert_label(shape: &TreeShape, m: Label) -> Result<VertexId, InverseError> {
    let mut last = None;
    decode(shape, m.0, |s| last = Some(s))?;
    Ok(last
        .and_then(|s| s.vertex())
        .expect("decode always ends on a resolved snapshot"))
}

/// Every intermediate decoder state for `m`, one per level tested. The last
/// entry is resolved and agrees with [`invert_label`].
pub fn trace_inversion(shape: &TreeShape, m: Label) -> Result<Vec<DecodeState>, InverseError> {
    let mut trace = Vec::new();
    decode(shape, m.0, |s| trace.push(s))?;
    Ok(trace)
}

fn decode(
    shape: &TreeShape,
    m: u64,
    mut emit: impl FnMut(DecodeState),
) -> Result<(), InverseError> {
    let max = shape.edge_count();
    if m > max {
        return Err(InverseError::OutOfRange { label: m, max });
    }
    if m == 0 {
        emit(DecodeState {
            m,
            m_prime: max,
            level: 1,
            even: ChainState::default(),
            odd: ChainState::default(),
            resolved: Some(Chain::Odd),
        });
        return Ok(());
    }

    // |E| = k_1 h_2, so m' >= 0 by the range check above.
    let m_prime = max - m;
    let mut even = ChainState {
        digits: Vec::new(),
        remainder: m_prime,
    };
    let mut odd = ChainState {
        digits: Vec::new(),
        remainder: m,
    };
    let fail = |level, reason| InverseError::Consistency {
        label: m,
        level,
        reason,
    };

    for level in 2..=shape.levels() {
        let h_r = shape.level_size(level);
        let chain = if level == 2 {
            even.digits.push(m_prime / h_r);
            even.remainder = m_prime % h_r;
            Chain::Even
        } else {
            let (state, chain) = if level % 2 == 0 {
                (&mut even, Chain::Even)
            } else {
                (&mut odd, Chain::Odd)
            };
            let h_prev = shape.level_size(level - 1);
            let (q, r) = (state.remainder / h_prev, state.remainder % h_prev);
            if r == 0 {
                return Err(fail(
                    level,
                    "remainder before the subtract-one step was zero",
                ));
            }
            state.digits.push(q);
            state.digits.push((r - 1) / h_r);
            state.remainder = (r - 1) % h_r;
            chain
        };

        let done = match chain {
            Chain::Even => even.remainder == 0,
            Chain::Odd => odd.remainder == 0,
        };
        let snapshot = DecodeState {
            m,
            m_prime,
            level,
            even: even.clone(),
            odd: odd.clone(),
            resolved: done.then_some(chain),
        };
        if done {
            let vertex = snapshot.vertex().expect("resolved");
            if shape.validate_vertex(&vertex).is_err() {
                return Err(fail(level, "decoded digit outside its child range"));
            }
            emit(snapshot);
            return Ok(());
        }
        emit(snapshot);
    }
    Err(fail(shape.levels(), "no zero remainder by the last level"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(ks: &[u64]) -> TreeShape {
        TreeShape::from_degrees(ks).unwrap()
    }

    #[test]
    fn decodes_known_labels() {
        let s = shape(&[2, 3, 4]);
        assert_eq!(invert_label(&s, Label(32)), Ok(VertexId::new(vec![0])));
        assert_eq!(
            invert_label(&s, Label(10)),
            Ok(VertexId::new(vec![1, 1, 0]))
        );
        assert_eq!(invert_label(&s, Label(0)), Ok(VertexId::root()));
        assert_eq!(
            invert_label(&s, Label(40)),
            Err(InverseError::OutOfRange { label: 40, max: 32 })
        );
    }

    #[test]
    fn deepest_path_vertex() {
        let s = shape(&[1; 6]);
        assert_eq!(invert_label(&s, Label(3)), Ok(VertexId::new(vec![0; 6])));
    }

    #[test]
    fn traces() {
        let s = shape(&[2, 3, 4]);

        let t = trace_inversion(&s, Label(32)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].level, 2);
        assert_eq!(t[0].even.remainder, 0);
        assert_eq!(t[0].resolved, Some(Chain::Even));

        // m' = 22 = 1*16 + 6; m = 10 = 0*16 + 10 -> 9 = 1*5 + 4;
        // 6 = 1*5 + 1 -> 0 = 0*1 + 0.
        let t = trace_inversion(&s, Label(10)).unwrap();
        let levels: Vec<usize> = t.iter().map(|d| d.level).collect();
        assert_eq!(levels, [2, 3, 4]);
        assert_eq!(
            t[0].even,
            ChainState {
                digits: vec![1],
                remainder: 6
            }
        );
        assert_eq!(
            t[1].odd,
            ChainState {
                digits: vec![0, 1],
                remainder: 4
            }
        );
        let last = t.last().unwrap();
        assert_eq!(
            last.even,
            ChainState {
                digits: vec![1, 1, 0],
                remainder: 0
            }
        );
        assert_eq!(last.vertex(), Some(VertexId::new(vec![1, 1, 0])));
        assert!(t[..2].iter().all(|d| d.resolved.is_none()));

        let t = trace_inversion(&shape(&[]), Label(0)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].vertex(), Some(VertexId::root()));
    }
}
