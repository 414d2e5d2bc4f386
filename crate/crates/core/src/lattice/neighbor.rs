use crate::error::{invalid, Error, Result};
use crate::lattice::linalg::{hnf, mul, transpose, IntMatrix};
use crate::lattice::LatticeGram;

/// A lattice spanned inside an ambient space: basis rows are ambient
/// coordinates divided by `denom`.
#[derive(Clone, Debug)]
pub struct Sublattice {
    pub lattice: LatticeGram,
    pub basis: IntMatrix,
    pub denom: i64,
}

fn exact_div(m: IntMatrix, s: i64) -> Result<IntMatrix> {
    m.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    if x % s == 0 {
                        Ok(x / s)
                    } else {
                        Err(Error::Validation(format!(
                            "generated lattice is not integral (entry {x}/{s})"
                        )))
                    }
                })
                .collect()
        })
        .collect()
}

/// Lattice spanned by integer vectors `gens` under the inner product `x·y / scale`.
pub fn span_euclidean(gens: &[Vec<i64>], scale: i64) -> Result<Sublattice> {
    let basis = hnf(gens)?;
    let g = exact_div(mul(&basis, &transpose(&basis))?, scale)?;
    Ok(Sublattice {
        lattice: LatticeGram::new(g)?,
        basis,
        denom: 1,
    })
}

/// Lattice spanned by `gens / denom`, coordinates taken in the basis of `l`.
pub fn span_in_lattice(l: &LatticeGram, gens: &[Vec<i64>], denom: i64) -> Result<Sublattice> {
    let basis = hnf(gens)?;
    if basis.len() != gens.first().map_or(0, |g| g.len()) {
        return Err(invalid("generators do not span a full-rank lattice"));
    }
    let g = exact_div(
        mul(&mul(&basis, l.gram())?, &transpose(&basis))?,
        denom * denom,
    )?;
    Ok(Sublattice {
        lattice: LatticeGram::new(g)?,
        basis,
        denom,
    })
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: i64, p: i64) -> i64 {
    (1..p)
        .find(|&x| (a.rem_euclid(p) * x) % p == 1)
        .expect("unit mod p")
}

/// Kneser `p`-neighbor `⟨{x ∈ L : (x,v) ≡ 0 mod p}, v/p⟩`.
///
/// For odd `p` with `p | (v,v)` but `p² ∤ (v,v)`, `v` is first replaced by
/// `v + p·t·e_i` for a basis vector `e_i` with `(e_i, v) ≢ 0`, choosing `t`
/// to make the norm divisible by `p²`. For `p = 2` no such correction
/// exists and `(v,v) ≡ 0 (mod 4)` is required.
pub fn p_neighbor(l: &LatticeGram, v: &[i64], p: u64) -> Result<LatticeGram> {
    Ok(p_neighbor_with_basis(l, v, p)?.lattice)
}

pub fn p_neighbor_with_basis(l: &LatticeGram, v: &[i64], p: u64) -> Result<Sublattice> {
    let n = l.rank();
    if v.len() != n {
        return Err(invalid(format!(
            "vector of length {} in a rank-{n} lattice",
            v.len()
        )));
    }
    if !is_prime(p) || p > 1 << 20 {
        return Err(invalid(format!("{p} is not a supported prime")));
    }
    let pi = p as i64;
    let pw = i128::from(pi);
    if v.iter().all(|&x| x % pi == 0) {
        return Err(invalid("v lies in pL"));
    }
    let mut v = v.to_vec();
    let nv = l.norm(&v);
    if nv % pw != 0 {
        return Err(invalid(format!("(v,v) = {nv} is not divisible by {p}")));
    }
    let pairing = |v: &[i64]| -> Vec<i64> {
        l.pairing(v)
            .iter()
            .map(|&x| x.rem_euclid(pw) as i64)
            .collect()
    };
    let f = pairing(&v);
    let Some(q) = f.iter().position(|&x| x != 0) else {
        return Err(invalid(
            "(x,v) ≡ 0 mod p for every x; the lattice is not p-unimodular",
        ));
    };
    if nv % (pw * pw) != 0 {
        if p == 2 {
            return Err(invalid(format!(
                "(v,v) = {nv} must be divisible by 4 for p = 2"
            )));
        }
        let m = ((nv / pw).rem_euclid(pw)) as i64;
        let t = (-m * inv_mod(2 * f[q], pi)).rem_euclid(pi);
        v[q] += pi * t;
        debug_assert_eq!(l.norm(&v) % (pw * pw), 0);
    }
    let fq_inv = inv_mod(f[q], pi);
    let mut gens = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut g = vec![0i64; n];
        if i == q {
            g[q] = pi * pi;
        } else {
            g[i] = pi;
            g[q] = -pi * ((f[i] * fq_inv) % pi);
        }
        gens.push(g);
    }
    gens.push(v);
    span_in_lattice(l, &gens, pi)
}
