//! Even sublattice and shadow of an odd unimodular lattice.
//!
//! Shadow vectors are handled in half-coordinates: `u ∈ Zⁿ` stands for the
//! vector `u/2` of `L ⊗ Q`, and `u` lies in the shadow exactly when
//! `u ≡ w (mod 2)` for a characteristic vector `w`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::lattice::enumerate::coset_vectors;
use crate::lattice::linalg::IntMatrix;
use crate::lattice::{LatticeGram, LatticeVector};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShadowDecomposition {
    /// Basis of the even sublattice `L₀`, in coordinates of `L`.
    pub l0_basis: IntMatrix,
    /// An odd vector of `L`, so `L₂ = rep + L₀`.
    pub l2_rep: Vec<i64>,
    /// Half-coordinates of representatives of `L₁` and `L₃`.
    pub l1_rep: Vec<i64>,
    pub l3_rep: Vec<i64>,
    /// A characteristic vector `w` (0/1 coordinates): `(w,x) ≡ (x,x) mod 2`.
    pub characteristic: Vec<i64>,
}

/// Solves `G y ≡ diag(G) (mod 2)`.
fn characteristic(l: &LatticeGram) -> Result<Vec<i64>> {
    let n = l.rank();
    let mut a: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut r: Vec<u8> = (0..n).map(|j| l.entry(i, j).rem_euclid(2) as u8).collect();
            r.push(l.entry(i, i).rem_euclid(2) as u8);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| a[i][c] == 1)
            .ok_or_else(|| invalid("Gram matrix is singular mod 2"))?;
        a.swap(c, p);
        let pr = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && row[c] == 1 {
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x ^= y;
                }
            }
        }
    }
    Ok(a.iter().map(|r| i64::from(r[n])).collect())
}

pub fn shadow(l: &LatticeGram) -> Result<ShadowDecomposition> {
    if l.is_even() {
        return Err(invalid(
            "the shadow is defined for odd lattices; input is even",
        ));
    }
    if !l.is_unimodular() {
        return Err(invalid("the shadow needs a unimodular lattice"));
    }
    let n = l.rank();
    let w = characteristic(l)?;
    let p = (0..n)
        .find(|&i| l.entry(i, i) % 2 != 0)
        .expect("odd lattice has an odd basis vector");
    let mut l0_basis = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = vec![0; n];
        if i == p {
            r[p] = 2;
        } else {
            r[i] = 1;
            if l.entry(i, i) % 2 != 0 {
                r[p] = 1;
            }
        }
        l0_basis.push(r);
    }
    let mut l2_rep = vec![0; n];
    l2_rep[p] = 1;
    let mut l3_rep = w.clone();
    l3_rep[p] += 2;
    Ok(ShadowDecomposition {
        l0_basis,
        l2_rep,
        l1_rep: w.clone(),
        l3_rep,
        characteristic: w,
    })
}

impl ShadowDecomposition {
    pub fn l0(&self, l: &LatticeGram) -> Result<LatticeGram> {
        l.transform(&self.l0_basis)
    }

    /// Smallest `4·(a,a)` over shadow vectors `a`.
    pub fn min_norm_times4(&self, l: &LatticeGram) -> Result<i64> {
        // w itself bounds the minimum
        let cap = i64::try_from(l.norm(&self.characteristic))
            .map_err(|_| crate::Error::Overflow("shadow norm"))?;
        Ok(coset_vectors(l, &self.characteristic, cap)?
            .first()
            .map_or(cap, |v| v.norm))
    }
}

/// Shadow vectors `a = u/2` with `4(a,a) ≤ bound4`, one per `±` pair;
/// `norm` holds `4(a,a)` and `coords` holds `u`.
pub fn shadow_vectors(l: &LatticeGram, bound4: i64) -> Result<Vec<LatticeVector>> {
    let s = shadow(l)?;
    coset_vectors(l, &s.characteristic, bound4)
}

/// The filter applies to odd unimodular lattices of rank divisible by 12.
pub fn shadow_filter_active(l: &LatticeGram) -> bool {
    l.rank() > 0 && l.rank().is_multiple_of(12) && !l.is_even() && l.is_unimodular()
}

/// Precomputed shadow vectors of norm `n/12`.
///
/// Any shadow vector is `(1/6)Σ aᵢfᵢ` with odd `aᵢ` in the coordinates of a
/// 3-frame, so a shadow vector of norm `n/12` has `(a, fᵢ) = ±1/2` for every
/// frame vector. A norm-3 `v` with `(a, v) = ±3/2` for such an `a` is
/// therefore in no frame. At rank 24 this is exactly the condition
/// `v = a − b` with `a ∈ L₁`, `b ∈ L₃`, `(a,a) = (b,b) = 2`, `(a,b) = 1/2`.
pub struct ShadowFilter {
    pairings: Vec<Vec<i128>>,
}

impl ShadowFilter {
    /// Returns `None` when the filter does not apply.
    pub fn new(l: &LatticeGram) -> Result<Option<Self>> {
        if !shadow_filter_active(l) {
            return Ok(None);
        }
        let target = (l.rank() / 3) as i64;
        let vs = shadow_vectors(l, target)?;
        let pairings = vs
            .iter()
            .filter(|u| u.norm == target)
            .map(|u| l.pairing(&u.coords))
            .collect();
        Ok(Some(Self { pairings }))
    }

    pub fn witnesses(&self) -> usize {
        self.pairings.len()
    }

    /// `true` if `v` may lie in a 3-frame.
    pub fn survives(&self, v: &[i64]) -> bool {
        // (u/2, v) = ±3/2  ⇔  uᵀGv = ±3
        !self.pairings.iter().any(|gu| {
            let s: i128 = gu.iter().zip(v).map(|(&a, &b)| a * i128::from(b)).sum();
            s == 3 || s == -3
        })
    }
}

/// `true` iff the norm-3 vector `v` survives the shadow filter.
pub fn shadow_filter(l: &LatticeGram, v: &[i64]) -> Result<bool> {
    if l.norm(v) != 3 {
        return Err(invalid("the shadow filter is defined for norm-3 vectors"));
    }
    Ok(ShadowFilter::new(l)?.is_none_or(|f| f.survives(v)))
}
