use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::frames::perm::Perm;
use crate::lattice::linalg::{vec_mul, IntMatrix};
use crate::lattice::{normalize_sign, short_vectors, LatticeGram, ShadowFilter};

/// Orthogonality graph on `±` pairs of norm-3 vectors.
///
/// Vertices are sign-normalized and kept in the sorted order of
/// `short_vectors`; adjacency rows are bitsets.
#[derive(Clone, Debug)]
pub struct FrameGraph {
    lattice: LatticeGram,
    vertices: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u32>,
    adj: Vec<Vec<u64>>,
    filtered: usize,
    filter_applied: bool,
}

pub fn build_gamma(l: &LatticeGram) -> Result<FrameGraph> {
    build_gamma_with(l, true)
}

/// With `shadow_filter` off every norm-3 vector is a vertex.
pub fn build_gamma_with(l: &LatticeGram, shadow_filter: bool) -> Result<FrameGraph> {
    let filter = if shadow_filter {
        ShadowFilter::new(l)?
    } else {
        None
    };
    let mut vertices = Vec::new();
    let mut filtered = 0;
    for v in short_vectors(l, 3)? {
        if v.norm != 3 {
            continue;
        }
        if filter.as_ref().is_some_and(|f| !f.survives(&v.coords)) {
            filtered += 1;
            continue;
        }
        vertices.push(v.coords);
    }
    let m = vertices.len();
    let words = m.div_ceil(64);
    let pair: Vec<Vec<i128>> = vertices.iter().map(|v| l.pairing(v)).collect();
    let mut adj = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in i + 1..m {
            let s: i128 = pair[i]
                .iter()
                .zip(&vertices[j])
                .map(|(&a, &b)| a * i128::from(b))
                .sum();
            if s == 0 {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let index = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i as u32))
        .collect();
    Ok(FrameGraph {
        lattice: l.clone(),
        vertices,
        index,
        adj,
        filtered,
        filter_applied: filter.is_some(),
    })
}

impl FrameGraph {
    pub fn lattice(&self) -> &LatticeGram {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: u32) -> &[i64] {
        &self.vertices[i as usize]
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn neighbors(&self, i: u32) -> &[u64] {
        &self.adj[i as usize]
    }

    pub fn adjacent(&self, i: u32, j: u32) -> bool {
        self.adj[i as usize][j as usize / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: u32) -> usize {
        self.adj[i as usize]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len() as u32)
            .map(|i| self.degree(i))
            .sum::<usize>()
            / 2
    }

    /// Norm-3 vectors removed by the shadow filter.
    pub fn filtered_count(&self) -> usize {
        self.filtered
    }

    pub fn filter_applied(&self) -> bool {
        self.filter_applied
    }

    /// Vertex index of `±v`, if it is a vertex.
    pub fn vertex_of(&self, v: &[i64]) -> Option<u32> {
        let mut w = v.to_vec();
        normalize_sign(&mut w);
        self.index.get(&w).copied()
    }

    /// Permutations of the vertices induced by lattice automorphisms `x ↦ x·A`.
    pub fn vertex_action(&self, gens: &[IntMatrix]) -> Result<Vec<Perm>> {
        gens.iter()
            .map(|a| {
                self.vertices
                    .iter()
                    .map(|v| {
                        let img = vec_mul(v, a)?;
                        self.vertex_of(&img).ok_or_else(|| {
                            Error::Validation(
                                "automorphism does not preserve the vertex set".into(),
                            )
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{d_n_plus, e8, z_n};

    #[test]
    fn vertex_counts() {
        assert_eq!(build_gamma(&e8()).unwrap().len(), 0);
        let z4 = build_gamma(&z_n(4)).unwrap();
        assert_eq!(z4.len(), 16);
        assert!(!z4.filter_applied());
        let d = build_gamma(&d_n_plus(12).unwrap()).unwrap();
        assert_eq!(d.len(), 1024);
        assert!(d.filter_applied());
        assert_eq!(d.filtered_count(), 0);
    }

    #[test]
    fn adjacency_is_orthogonality() {
        let g = build_gamma(&z_n(4)).unwrap();
        let l = g.lattice().clone();
        for i in 0..g.len() as u32 {
            for j in 0..g.len() as u32 {
                let orth = l.inner(g.vertex(i), g.vertex(j)) == 0;
                assert_eq!(g.adjacent(i, j), orth && i != j);
            }
        }
        // each (1,1,1,0)-type vector is orthogonal to 6 others up to sign
        assert!((0..16).all(|i| g.degree(i) == 6));
    }
}
