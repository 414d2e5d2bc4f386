//! Fincke–Pohst enumeration with exact integer arithmetic.
//!
//! The quadratic form is written through the integral Gram–Schmidt data of
//! an LLL-reduced basis as `Q(x) = Σ_k t_k² / (d_k d_{k+1})` with
//! `t_k = d_{k+1} x_k + Σ_{j>k} λ_{jk} x_j`, so every bound is an integer
//! square-root of an exact fraction.

use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::linalg::{integral_gram_schmidt, inverse_rational, to_big, vec_mul, IntMatrix};
use crate::lattice::{normalize_sign, LatticeGram, LatticeVector};

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub node_budget: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            node_budget: 500_000_000,
        }
    }
}

struct Enumerator<'a> {
    n: usize,
    d: Vec<i128>,
    lambda: Vec<Vec<i128>>,
    residue: Option<&'a [i64]>,
    x: Vec<i64>,
    nodes: u64,
    budget: u64,
}

fn ovf() -> Error {
    Error::Overflow("enumeration bound exceeds i128")
}

impl Enumerator<'_> {
    fn run(
        &mut self,
        k: usize,
        rp: i128,
        rq: i128,
        top_zero: bool,
        out: &mut dyn FnMut(&[i64]),
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(format!(
                "short-vector enumeration visited more than {} nodes",
                self.budget
            )));
        }
        let dk = self.d[k];
        let d1 = self.d[k + 1];
        let dd = dk.checked_mul(d1).ok_or_else(ovf)?;
        let mut s: i128 = 0;
        for j in k + 1..self.n {
            if self.x[j] != 0 {
                s = s
                    .checked_add(
                        self.lambda[j][k]
                            .checked_mul(i128::from(self.x[j]))
                            .ok_or_else(ovf)?,
                    )
                    .ok_or_else(ovf)?;
            }
        }
        let bound = rp.checked_mul(dd).ok_or_else(ovf)? / rq;
        let r = bound.sqrt();
        let mut lo = Integer::div_ceil(&(-r - s), &d1);
        let hi = Integer::div_floor(&(r - s), &d1);
        if top_zero {
            lo = lo.max(0);
        }
        if let Some(res) = self.residue {
            if (lo - i128::from(res[k])).rem_euclid(2) != 0 {
                lo += 1;
            }
        }
        let step = if self.residue.is_some() { 2 } else { 1 };
        let mut xv = lo;
        while xv <= hi {
            let t = d1 * xv + s;
            let num = rp.checked_mul(dd).ok_or_else(ovf)? - t * t * rq;
            let den = rq.checked_mul(dd).ok_or_else(ovf)?;
            let g = num.gcd(&den).max(1);
            self.x[k] = i64::try_from(xv).map_err(|_| ovf())?;
            let zero_here = top_zero && xv == 0;
            if k == 0 {
                if !zero_here {
                    out(&self.x);
                }
            } else {
                self.run(k - 1, num / g, den / g, zero_here, out)?;
            }
            xv += step;
        }
        self.x[k] = 0;
        Ok(())
    }
}

/// Calls `f` on one representative of each `±` pair of nonzero vectors
/// `x` with `xᵀGx ≤ bound` (and `x ≡ residue mod 2` when given), in the
/// coordinates of `l`. Order is unspecified.
fn enumerate(
    l: &LatticeGram,
    bound: i64,
    residue: Option<&[i64]>,
    opts: EnumOptions,
    f: &mut dyn FnMut(Vec<i64>),
) -> Result<()> {
    let n = l.rank();
    if n == 0 || bound <= 0 {
        return Ok(());
    }
    let (h, red) = l.lll()?;
    let gs = integral_gram_schmidt(&to_big(red.gram()))?;
    let to_i = |x: &num_bigint::BigInt| x.to_i128().ok_or_else(ovf);
    let d = gs.d.iter().map(to_i).collect::<Result<Vec<_>>>()?;
    let lambda = gs
        .lambda
        .iter()
        .map(|r| r.iter().map(to_i).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let red_residue = match residue {
        Some(c) => Some(residue_in_reduced(c, &h)?),
        None => None,
    };
    let mut e = Enumerator {
        n,
        d,
        lambda,
        residue: red_residue.as_deref(),
        x: vec![0; n],
        nodes: 0,
        budget: opts.node_budget,
    };
    let mut err = None;
    e.run(
        n - 1,
        i128::from(bound),
        1,
        true,
        &mut |x| match vec_mul(x, &h) {
            Ok(v) => f(v),
            Err(e) => err = Some(e),
        },
    )?;
    err.map_or(Ok(()), Err)
}

fn residue_in_reduced(c: &[i64], h: &IntMatrix) -> Result<Vec<i64>> {
    let inv = inverse_rational(h).ok_or(Error::Validation("singular basis change".into()))?;
    let hinv: IntMatrix = inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| q.to_integer().to_i64().ok_or_else(ovf))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(vec_mul(c, &hinv)?
        .into_iter()
        .map(|x| x.rem_euclid(2))
        .collect())
}

fn finish(l: &LatticeGram, mut raw: Vec<Vec<i64>>, scale_div: i128) -> Result<Vec<LatticeVector>> {
    let mut out = Vec::with_capacity(raw.len());
    for v in raw.iter_mut() {
        normalize_sign(v);
    }
    for v in raw {
        let q = l.norm(&v);
        debug_assert_eq!(q % scale_div, 0);
        let norm = i64::try_from(q / scale_div).map_err(|_| ovf())?;
        out.push(LatticeVector { norm, coords: v });
    }
    out.sort_unstable();
    Ok(out)
}

/// All vectors with `0 < (x,x) ≤ max_norm`, one per `±` pair (first
/// nonzero coordinate positive), sorted by norm then coordinates.
pub fn short_vectors(l: &LatticeGram, max_norm: i64) -> Result<Vec<LatticeVector>> {
    short_vectors_with(l, max_norm, EnumOptions::default())
}

pub fn short_vectors_with(
    l: &LatticeGram,
    max_norm: i64,
    opts: EnumOptions,
) -> Result<Vec<LatticeVector>> {
    let mut raw = Vec::new();
    enumerate(l, max_norm, None, opts, &mut |v| raw.push(v))?;
    finish(l, raw, 1)
}

/// Vectors `u ≡ residue (mod 2)` with `uᵀGu ≤ bound`, one per `±` pair.
/// The reported `norm` is `uᵀGu` itself.
pub fn coset_vectors(l: &LatticeGram, residue: &[i64], bound: i64) -> Result<Vec<LatticeVector>> {
    let mut raw = Vec::new();
    enumerate(l, bound, Some(residue), EnumOptions::default(), &mut |v| {
        raw.push(v)
    })?;
    finish(l, raw, 1)
}

/// Smallest nonzero norm.
pub fn min_norm(l: &LatticeGram) -> Result<i64> {
    let (_, red) = l.lll()?;
    let cap = (0..red.rank()).map(|i| red.entry(i, i)).min().unwrap_or(0);
    Ok(short_vectors(l, cap)?.first().map_or(0, |v| v.norm))
}

/// Number of vectors of minimal norm (both signs).
pub fn kissing_number(l: &LatticeGram) -> Result<u64> {
    let m = min_norm(l)?;
    Ok(2 * short_vectors(l, m)?.iter().filter(|v| v.norm == m).count() as u64)
}

/// `counts[i]` = number of vectors of norm `i` (both signs) for `1 ≤ i ≤ max`; `counts[0] = 1`.
pub fn norm_counts(l: &LatticeGram, max: i64) -> Result<Vec<u64>> {
    let mut c = vec![0u64; max.max(0) as usize + 1];
    c[0] = 1;
    for v in short_vectors(l, max)? {
        c[v.norm as usize] += 2;
    }
    Ok(c)
}
