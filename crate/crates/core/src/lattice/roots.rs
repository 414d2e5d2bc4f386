//! Root systems of integral lattices.
//!
//! Norm-1 and norm-2 vectors of an integral lattice form a root system
//! whose components are `Bₖ` (a `Zᵏ` summand) or simply laced. Positive
//! roots are the `±` representatives with first nonzero coordinate
//! positive, which is a positive system for the lexicographic order.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{short_vectors, LatticeGram};
use crate::util::{factorial, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    D,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootComponent {
    pub kind: RootType,
    pub rank: usize,
    /// Number of roots, both signs.
    pub roots: usize,
}

impl RootComponent {
    fn classify(rank: usize, roots: usize, has_short: bool) -> Result<Self> {
        let k = rank;
        let kind = if has_short {
            RootType::B
        } else if roots == k * (k + 1) {
            RootType::A
        } else if k >= 4 && roots == 2 * k * (k - 1) {
            RootType::D
        } else if matches!((k, roots), (6, 72) | (7, 126) | (8, 240)) {
            RootType::E
        } else {
            return Err(Error::Validation(format!(
                "no root system of rank {k} has {roots} roots"
            )));
        };
        Ok(Self { kind, rank, roots })
    }

    pub fn weyl_order(&self) -> BigUint {
        let k = self.rank;
        match self.kind {
            RootType::A => factorial(k + 1),
            RootType::B => (BigUint::one() << k) * factorial(k),
            RootType::D => (BigUint::one() << (k - 1)) * factorial(k),
            RootType::E => match k {
                6 => 51_840u32.into(),
                7 => 2_903_040u32.into(),
                _ => 696_729_600u32.into(),
            },
        }
    }
}

impl fmt::Display for RootComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

/// Multiset of irreducible components, largest rank first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemLabel {
    pub components: Vec<RootComponent>,
}

impl RootSystemLabel {
    pub fn root_count(&self) -> usize {
        self.components.iter().map(|c| c.roots).sum()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for RootSystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.components.len() {
            let c = &self.components[i];
            let mut j = i;
            while j < self.components.len() && self.components[j] == *c {
                j += 1;
            }
            parts.push(if j - i > 1 {
                format!("{c}^{}", j - i)
            } else {
                c.to_string()
            });
            i = j;
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Simple roots and components.
#[derive(Clone, Debug)]
pub(crate) struct RootData {
    pub simple: Vec<Vec<i64>>,
    pub components: Vec<RootComponent>,
}

impl RootData {
    pub fn weyl_order(&self) -> BigUint {
        self.components
            .iter()
            .fold(BigUint::one(), |acc, c| acc * c.weyl_order())
    }

    pub fn label(&self) -> RootSystemLabel {
        let mut components = self.components.clone();
        components.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.kind.cmp(&b.kind)));
        RootSystemLabel { components }
    }
}

/// Root data of the vectors whose norm lies in `norms` (a subset of {1, 2}).
pub(crate) fn root_data(l: &LatticeGram, norms: &[i64]) -> Result<RootData> {
    let max = norms.iter().copied().max().unwrap_or(0);
    let positive: Vec<Vec<i64>> = short_vectors(l, max)?
        .into_iter()
        .filter(|v| norms.contains(&v.norm))
        .map(|v| v.coords)
        .collect();
    let set: HashSet<&[i64]> = positive.iter().map(|v| v.as_slice()).collect();
    let mut diff = vec![0i64; l.rank()];
    let simple: Vec<Vec<i64>> = positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|s| {
                if std::ptr::eq(*r, s) {
                    return false;
                }
                for ((d, a), b) in diff.iter_mut().zip(r.iter()).zip(s) {
                    *d = a - b;
                }
                set.contains(diff.as_slice())
            })
        })
        .cloned()
        .collect();
    let m = simple.len();
    let mut uf = UnionFind::new(m);
    for i in 0..m {
        for j in i + 1..m {
            if l.inner(&simple[i], &simple[j]) != 0 {
                uf.union(i, j);
            }
        }
    }
    let mut roots_of = vec![0usize; m];
    let mut short_in = vec![false; m];
    for r in &positive {
        let owner = (0..m)
            .find(|&i| l.inner(r, &simple[i]) != 0)
            .ok_or_else(|| Error::Validation("root orthogonal to every simple root".into()))?;
        let c = uf.find(owner);
        roots_of[c] += 2;
        if l.norm(r) == 1 {
            short_in[c] = true;
        }
    }
    let mut comp_index = vec![usize::MAX; m];
    let mut components = Vec::new();
    for i in 0..m {
        let c = uf.find(i);
        if comp_index[c] == usize::MAX {
            comp_index[c] = components.len();
            let rank = (0..m).filter(|&j| uf.find(j) == c).count();
            components.push(RootComponent::classify(rank, roots_of[c], short_in[c])?);
        }
    }
    Ok(RootData { simple, components })
}

/// ADE type of the norm-2 vectors.
pub fn root_system(l: &LatticeGram) -> Result<RootSystemLabel> {
    Ok(root_data(l, &[2])?.label())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{d_n, d_n_plus, e8, z_n};

    #[test]
    fn e8_is_e8() {
        let r = root_system(&e8()).unwrap();
        assert_eq!(r.to_string(), "E8");
        assert_eq!(r.root_count(), 240);
    }

    #[test]
    fn d12_plus_pair() {
        let l = d_n_plus(12).unwrap();
        let r = root_system(&l.direct_sum(&l)).unwrap();
        assert_eq!(r.to_string(), "D12^2");
        assert_eq!(r.root_count(), 528);
    }

    #[test]
    fn small_cases() {
        assert_eq!(root_system(&z_n(1)).unwrap().to_string(), "∅");
        assert_eq!(root_system(&z_n(2)).unwrap().to_string(), "A1^2");
        assert_eq!(root_system(&z_n(3)).unwrap().to_string(), "A3");
        assert_eq!(root_system(&d_n(5)).unwrap().to_string(), "D5");
    }

    #[test]
    fn z_n_with_short_roots_is_b_n() {
        let d = root_data(&z_n(5), &[1, 2]).unwrap();
        assert_eq!(d.label().to_string(), "B5");
        assert_eq!(d.weyl_order(), BigUint::from(3840u32));
        assert_eq!(d.simple.len(), 5);
    }

    #[test]
    fn root_counts_match_formulas() {
        for l in [e8(), d_n(6), d_n_plus(12).unwrap(), z_n(7)] {
            let r = root_system(&l).unwrap();
            let c = crate::lattice::norm_counts(&l, 2).unwrap();
            assert_eq!(r.root_count() as u64, c[2]);
        }
    }
}
