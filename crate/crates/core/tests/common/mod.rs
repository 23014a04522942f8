//! Shape generators and oracles shared by the integration tests. None of
//! these call into the labelling or decoding code under test.

#![allow(dead_code)]

use graceful_core::{TreeShape, VertexId};

/// Every degree sequence with at most `max_len` entries drawn from `entries`
/// and at most `max_vertices` vertices, shortest first.
pub fn sweep(max_len: usize, entries: &[u64], max_vertices: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for &k in entries {
                let mut s: Vec<u64> = seq.clone();
                s.push(k);
                next.push(s);
            }
        }
        // Appending an entry never shrinks the tree, so pruning is safe.
        next.retain(|s| expanded_vertex_count(s) <= max_vertices);
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The acceptance sweep: q <= 6 levels, entries in {1, 2, 3}, |V| <= 400.
pub fn small_sweep() -> Vec<Vec<u64>> {
    sweep(5, &[1, 2, 3], 400)
}

/// Every degree sequence (any positive entries) with at most `limit` vertices.
pub fn all_shapes_up_to(limit: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    if limit < 2 {
        return out;
    }
    for k in 1..limit {
        for rest in all_shapes_up_to((limit - 1) / k) {
            let mut s = vec![k];
            s.extend(rest);
            out.push(s);
        }
    }
    out
}

/// `h_i = 1 + k_i + k_i k_{i+1} + ... + k_i ... k_{q-1}` evaluated as the
/// explicit sum of products, for all levels.
pub fn expanded_level_sizes(ks: &[u64]) -> Vec<u64> {
    (0..=ks.len())
        .map(|i| {
            let mut total = 1u64;
            let mut product = 1u64;
            for &k in &ks[i..] {
                product *= k;
                total += product;
            }
            total
        })
        .collect()
}

pub fn expanded_vertex_count(ks: &[u64]) -> u64 {
    expanded_level_sizes(ks)[0]
}

/// An explicit tree: vertices in breadth-first order with parent indices,
/// built by expanding children level by level.
pub struct ExplicitTree {
    pub ids: Vec<VertexId>,
    pub parent: Vec<Option<usize>>,
}

pub fn explicit_tree(ks: &[u64]) -> ExplicitTree {
    let mut ids = vec![VertexId::root()];
    let mut parent = vec![None];
    let mut level_start = 0;
    for &k in ks {
        let level_end = ids.len();
        for p in level_start..level_end {
            for x in 0..k {
                let child = ids[p].child(x);
                ids.push(child);
                parent.push(Some(p));
            }
        }
        level_start = level_end;
    }
    ExplicitTree { ids, parent }
}

/// Naive weak-separator scan: all k in [0, max_label] with
/// min <= k <= max on every edge.
pub fn naive_weak_ks(labels: &[u64], parent: &[Option<usize>]) -> Vec<u64> {
    let max_label = labels.iter().copied().max().unwrap_or(0);
    (0..=max_label)
        .filter(|&k| {
            parent.iter().enumerate().all(|(i, p)| match p {
                None => true,
                Some(p) => {
                    let (a, b) = (labels[i], labels[*p]);
                    a.min(b) <= k && k <= a.max(b)
                }
            })
        })
        .collect()
}

/// Plain set-based gracefulness test on an explicit labelling.
pub fn is_graceful(labels: &[u64], parent: &[Option<usize>]) -> bool {
    let edges = labels.len() as u64 - 1;
    let mut vs: Vec<u64> = labels.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != labels.len() || vs.iter().any(|&l| l > edges) {
        return false;
    }
    let mut es: Vec<u64> = parent
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| labels[i].abs_diff(labels[p])))
        .collect();
    es.sort_unstable();
    es == (1..=edges).collect::<Vec<_>>()
}

pub fn shape(ks: &[u64]) -> TreeShape {
    TreeShape::from_degrees(ks).unwrap()
}
