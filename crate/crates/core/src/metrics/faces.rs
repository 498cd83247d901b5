//! Skeleton, diameter and the f-vector, all from vertex-facet incidences.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::Polytope;

/// Face counts `f_0 .. f_{n-1}`; `f_{-1} = f_n = 1` are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `sum_{i=-1}^{n} (-1)^i f_i` with the implicit end entries.
    pub fn euler_sum(&self) -> i128 {
        let n = self.0.len() as i64;
        let mut s: i128 = -1;
        for (i, &f) in self.0.iter().enumerate() {
            let term = i128::from(f);
            s += if i % 2 == 0 { term } else { -term };
        }
        s + if n % 2 == 0 { 1 } else { -1 }
    }
}

/// Facet vertex sets over vertex ordinals (positions in `vertex_indices()`).
pub(crate) fn facet_vertex_sets(p: &Polytope) -> (Vec<usize>, Vec<FixedBitSet>) {
    let verts = p.vertex_indices();
    let mut ordinal = vec![usize::MAX; p.lattice_points().len()];
    for (o, &v) in verts.iter().enumerate() {
        ordinal[v] = o;
    }
    let sets = p
        .facets()
        .into_iter()
        .map(|f| {
            let mut b = FixedBitSet::with_capacity(verts.len());
            for v in f.incident_vertices {
                b.insert(ordinal[v]);
            }
            b
        })
        .collect();
    (verts, sets)
}

/// Edges as pairs of vertex ordinals.
///
/// `{v, w}` is an edge iff the vertices common to every facet containing
/// both are exactly `v` and `w`.
pub fn skeleton(p: &Polytope) -> Vec<(usize, usize)> {
    let (verts, facet_sets) = facet_vertex_sets(p);
    let nv = verts.len();
    if p.dim() == 0 {
        return Vec::new();
    }
    let mut facets_of: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(facet_sets.len()); nv];
    for (fi, set) in facet_sets.iter().enumerate() {
        for v in set.ones() {
            facets_of[v].insert(fi);
        }
    }
    let mut edges = Vec::new();
    for v in 0..nv {
        for w in v + 1..nv {
            let mut common = facets_of[v].clone();
            common.intersect_with(&facets_of[w]);
            let mut acc = FixedBitSet::with_capacity(nv);
            acc.insert_range(..);
            for f in common.ones() {
                acc.intersect_with(&facet_sets[f]);
                if acc.count_ones(..) == 2 {
                    break;
                }
            }
            if acc.count_ones(..) == 2 {
                edges.push((v, w));
            }
        }
    }
    edges
}

/// Largest graph distance between two vertices.
pub fn diameter(edges: &[(usize, usize)], n_vertices: usize) -> Result<usize> {
    let mut adj = vec![Vec::new(); n_vertices];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut best = 0;
    for start in 0..n_vertices {
        let mut dist = vec![usize::MAX; n_vertices];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return Err(Error::internal("polytope skeleton is disconnected"));
        }
        best = best.max(dist.into_iter().max().unwrap_or(0));
    }
    Ok(best)
}

/// Default cap on the number of faces enumerated by [`f_vector`].
pub const DEFAULT_FACE_LIMIT: usize = 20_000_000;

/// Counts faces by dimension.
///
/// Faces of dimension `d - 1` are the inclusion-maximal proper intersections
/// of a `d`-face with the facets, deduplicated by vertex set. Vertex sets are
/// held as 128-bit masks, so at most 128 vertices are supported.
pub fn f_vector(p: &Polytope, face_limit: usize) -> Result<FVector> {
    let n = p.dim();
    if n == 0 {
        return Ok(FVector(Vec::new()));
    }
    let (verts, facet_sets) = facet_vertex_sets(p);
    if verts.len() > 128 {
        return Err(Error::capability(format!(
            "face enumeration supports at most 128 vertices, polytope has {}",
            verts.len()
        )));
    }
    let masks: Vec<u128> = facet_sets
        .iter()
        .map(|s| s.ones().fold(0u128, |m, v| m | 1u128 << v))
        .collect();
    let mut counts = vec![0u64; n];
    let mut level: Vec<u128> = {
        let mut seen: HashSet<u128> = HashSet::new();
        masks.iter().copied().filter(|m| seen.insert(*m)).collect()
    };
    counts[n - 1] = level.len() as u64;
    let mut total = level.len();
    for d in (0..n - 1).rev() {
        let mut next: HashSet<u128> = HashSet::new();
        let mut cands: Vec<u128> = Vec::new();
        for &face in &level {
            cands.clear();
            for &f in &masks {
                let c = face & f;
                if c != 0 && c != face {
                    cands.push(c);
                }
            }
            cands.sort_unstable_by_key(|c| std::cmp::Reverse(c.count_ones()));
            cands.dedup();
            let mut kept: Vec<u128> = Vec::new();
            for &c in &cands {
                if !kept.iter().any(|&k| c & k == c) {
                    kept.push(c);
                }
            }
            next.extend(kept);
        }
        total += next.len();
        if total > face_limit {
            return Err(Error::capability(format!(
                "more than {face_limit} faces; raise the face limit to enumerate"
            )));
        }
        counts[d] = next.len() as u64;
        level = next.into_iter().collect();
    }
    Ok(FVector(counts))
}
