//! Orthogonal decomposition into indecomposable summands.
//!
//! A vector `v` is decomposable when `v = x + y` with `x, y ≠ 0` and
//! `(x, y) = 0`. Every indecomposable vector lies in a single irreducible
//! summand, and two indecomposables with nonzero inner product lie in the
//! same one, so the summands are the connected components of the
//! non-orthogonality graph on indecomposable vectors of norm at most the
//! largest diagonal entry of a reduced basis.

use crate::error::Result;
use crate::lattice::linalg::{hnf, mul, transpose};
use crate::lattice::neighbor::Sublattice;
use crate::lattice::{short_vectors, LatticeGram};
use crate::util::UnionFind;

/// Summands of `l`, largest rank first; bases are in the coordinates of `l`.
pub fn decompose_lattice(l: &LatticeGram) -> Result<Vec<Sublattice>> {
    let (_, red) = l.lll()?;
    let cap = (0..red.rank()).map(|i| red.entry(i, i)).max().unwrap_or(0);
    let vs = short_vectors(l, cap)?;
    let pair: Vec<Vec<i128>> = vs.iter().map(|v| l.pairing(&v.coords)).collect();
    let dot = |i: usize, w: &[i64]| -> i128 {
        pair[i]
            .iter()
            .zip(w)
            .map(|(&a, &b)| a * i128::from(b))
            .sum()
    };
    // vs is sorted by norm, so the smaller x come first
    let indec: Vec<usize> = (0..vs.len())
        .filter(|&i| {
            let nv = i128::from(vs[i].norm);
            !vs.iter()
                .enumerate()
                .take_while(|(_, x)| i128::from(x.norm) < nv)
                .any(|(j, x)| {
                    let p = dot(j, &vs[i].coords);
                    p.abs() == i128::from(x.norm)
                })
        })
        .collect();
    let m = indec.len();
    let mut uf = UnionFind::new(m);
    for a in 0..m {
        for b in a + 1..m {
            if dot(indec[a], &vs[indec[b]].coords) != 0 {
                uf.union(a, b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Vec<i64>>)> = Vec::new();
    for a in 0..m {
        let r = uf.find(a);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(vs[indec[a]].coords.clone()),
            None => groups.push((r, vec![vs[indec[a]].coords.clone()])),
        }
    }
    let mut out = Vec::with_capacity(groups.len());
    for (_, g) in groups {
        let basis = hnf(&g)?;
        let gram = mul(&mul(&basis, l.gram())?, &transpose(&basis))?;
        out.push(Sublattice {
            lattice: LatticeGram::new(gram)?,
            basis,
            denom: 1,
        });
    }
    out.sort_by_key(|p| std::cmp::Reverse(p.lattice.rank()));
    Ok(out)
}
