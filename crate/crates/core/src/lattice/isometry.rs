//! Isometries and automorphism groups.
//!
//! Two routes. When the norm-1 and norm-2 vectors span the space, every
//! isometry is a Weyl group element times a map sending simple roots to
//! simple roots, so it is enough to try the Gram-preserving bijections of
//! the simple roots and keep those whose linear extension is integral.
//! Otherwise a Plesken–Souvignier style backtrack assigns images to the
//! vectors of an LLL-reduced basis, choosing among short vectors with the
//! right norm and inner products.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::linalg::{identity, inverse_rational, mul, transpose, IntMatrix};
use crate::lattice::roots::{root_data, RootData};
use crate::lattice::{norm_counts, short_vectors, LatticeGram};
use crate::util::UnionFind;

#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    pub node_budget: u64,
    pub max_diagram_maps: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        Self {
            node_budget: 20_000_000,
            max_diagram_maps: 2_000_000,
        }
    }
}

/// Integer matrix `U` with `U·G₂·Uᵀ = G₁`: row `i` holds the image of the
/// `i`-th basis vector of the first lattice in the basis of the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryWitness {
    pub matrix: IntMatrix,
}

impl IsometryWitness {
    pub fn verify(&self, l1: &LatticeGram, l2: &LatticeGram) -> bool {
        let u = &self.matrix;
        if u.len() != l1.rank() || l1.rank() != l2.rank() {
            return false;
        }
        let Ok(p) = mul(&mul(u, l2.gram()).unwrap_or_default(), &transpose(u)) else {
            return false;
        };
        p == l1.gram() && crate::lattice::linalg::det(u).magnitude().is_one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    RootSystem,
    Backtrack,
}

/// Generators act on row coordinate vectors: `x ↦ x·A`, with `A G Aᵀ = G`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeAutGroup {
    pub generators: Vec<IntMatrix>,
    #[serde(with = "crate::serde_big")]
    pub order: BigUint,
    pub method: Method,
}

// ---------------------------------------------------------------------------
// root route

struct RootFrame {
    data: RootData,
    cartan: Vec<Vec<i64>>,
    order: Vec<usize>,
}

fn root_frame(l: &LatticeGram) -> Result<Option<RootFrame>> {
    let data = root_data(l, &[1, 2])?;
    if data.simple.len() != l.rank() {
        return Ok(None);
    }
    let m = data.simple.len();
    let cartan: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| l.inner(&data.simple[i], &data.simple[j]) as i64)
                .collect()
        })
        .collect();
    // breadth-first within each component so every new root touches an assigned one
    let mut order = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    for s in 0..m {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(a) = q.pop_front() {
            order.push(a);
            for b in 0..m {
                if !seen[b] && cartan[a][b] != 0 {
                    seen[b] = true;
                    q.push_back(b);
                }
            }
        }
    }
    Ok(Some(RootFrame {
        data,
        cartan,
        order,
    }))
}

/// `D·S⁻¹` as integers plus `D`.
fn scaled_inverse(s: &[Vec<i64>]) -> Result<(Vec<Vec<i128>>, i128)> {
    let inv = inverse_rational(s)
        .ok_or_else(|| Error::Validation("simple roots are dependent".into()))?;
    let mut d = num_bigint::BigInt::one();
    for r in &inv {
        for x in r {
            d = d.lcm(x.denom());
        }
    }
    let dd = d
        .to_i128()
        .ok_or(Error::Overflow("simple root determinant"))?;
    let a = inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    (x.numer() * (&d / x.denom()))
                        .to_i128()
                        .ok_or(Error::Overflow("scaled inverse entry"))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok((a, dd))
}

/// Enumerates Gram-preserving bijections `σ` from the simple roots of `f1`
/// to those of `f2`; `visit` returns `true` to stop.
fn diagram_maps(
    f1: &RootFrame,
    f2: &RootFrame,
    limit: u64,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<()> {
    let m = f1.order.len();
    let mut sigma = vec![usize::MAX; m];
    let mut used = vec![false; m];
    let mut count = 0u64;
    fn rec(
        t: usize,
        f1: &RootFrame,
        f2: &RootFrame,
        sigma: &mut [usize],
        used: &mut [bool],
        count: &mut u64,
        limit: u64,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        let m = sigma.len();
        if t == m {
            *count += 1;
            if *count > limit {
                return Err(Error::BudgetExceeded(format!(
                    "more than {limit} diagram maps"
                )));
            }
            return visit(sigma);
        }
        let a = f1.order[t];
        for c in 0..m {
            if used[c] || f2.cartan[c][c] != f1.cartan[a][a] {
                continue;
            }
            let ok = f1.order[..t]
                .iter()
                .all(|&b| f2.cartan[c][sigma[b]] == f1.cartan[a][b]);
            if !ok {
                continue;
            }
            sigma[a] = c;
            used[c] = true;
            if rec(t + 1, f1, f2, sigma, used, count, limit, visit)? {
                return Ok(true);
            }
            used[c] = false;
            sigma[a] = usize::MAX;
        }
        Ok(false)
    }
    rec(0, f1, f2, &mut sigma, &mut used, &mut count, limit, visit)?;
    Ok(())
}

/// `S₁⁻¹ · S₂σ` if integral.
fn extend_map(ainv: &[Vec<i128>], d: i128, s2: &[Vec<i64>], sigma: &[usize]) -> Option<IntMatrix> {
    let n = ainv.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s: i128 = 0;
            for k in 0..n {
                let a = ainv[i][k];
                if a != 0 {
                    s += a * i128::from(s2[sigma[k]][j]);
                }
            }
            if s % d != 0 {
                return None;
            }
            out[i][j] = i64::try_from(s / d).ok()?;
        }
    }
    Some(out)
}

fn reflection(l: &LatticeGram, r: &[i64]) -> IntMatrix {
    let n = l.rank();
    let rr = l.norm(r);
    let gr = l.pairing(r);
    let mut m = identity(n);
    for i in 0..n {
        let c = 2 * gr[i] / rr;
        for j in 0..n {
            m[i][j] -= (c * i128::from(r[j])) as i64;
        }
    }
    m
}

// ---------------------------------------------------------------------------
// backtrack route

struct VectorSet {
    vecs: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    pair: Vec<Vec<i128>>,
    by_norm: HashMap<i64, Vec<usize>>,
}

fn vector_set(l: &LatticeGram, max: i64) -> Result<VectorSet> {
    let mut vecs = Vec::new();
    let mut by_norm: HashMap<i64, Vec<usize>> = HashMap::new();
    for v in short_vectors(l, max)? {
        let neg: Vec<i64> = v.coords.iter().map(|x| -x).collect();
        for w in [v.coords, neg] {
            by_norm.entry(v.norm).or_default().push(vecs.len());
            vecs.push(w);
        }
    }
    let index = vecs
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let pair = vecs.iter().map(|v| l.pairing(v)).collect();
    Ok(VectorSet {
        vecs,
        index,
        pair,
        by_norm,
    })
}

struct Backtrack<'a> {
    src: &'a LatticeGram,
    dst: &'a VectorSet,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn candidates(&self, images: &[usize]) -> Vec<usize> {
        let k = images.len();
        let norm = self.src.entry(k, k);
        let Some(pool) = self.dst.by_norm.get(&norm) else {
            return Vec::new();
        };
        pool.iter()
            .copied()
            .filter(|&c| {
                let v = &self.dst.vecs[c];
                images.iter().enumerate().all(|(j, &im)| {
                    let s: i128 = self.dst.pair[im]
                        .iter()
                        .zip(v)
                        .map(|(&a, &b)| a * i128::from(b))
                        .sum();
                    s == i128::from(self.src.entry(k, j))
                })
            })
            .collect()
    }

    fn extend(&mut self, images: &mut Vec<usize>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(format!(
                "isometry search visited more than {} nodes",
                self.budget
            )));
        }
        if images.len() == self.src.rank() {
            return Ok(true);
        }
        for c in self.candidates(images) {
            images.push(c);
            if self.extend(images)? {
                return Ok(true);
            }
            images.pop();
        }
        Ok(false)
    }
}

fn reduced_with_inverse(l: &LatticeGram) -> Result<(IntMatrix, IntMatrix, LatticeGram)> {
    let (h, red) = l.lll()?;
    let inv =
        inverse_rational(&h).ok_or_else(|| Error::Validation("singular basis change".into()))?;
    let hinv = inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| {
                    q.to_integer()
                        .to_i64()
                        .ok_or(Error::Overflow("basis change"))
                })
                .collect()
        })
        .collect::<Result<IntMatrix>>()?;
    Ok((h, hinv, red))
}

fn max_diag(l: &LatticeGram) -> i64 {
    (0..l.rank()).map(|i| l.entry(i, i)).max().unwrap_or(0)
}

fn backtrack_iso(
    l1: &LatticeGram,
    l2: &LatticeGram,
    opts: IsoOptions,
) -> Result<Option<IntMatrix>> {
    let (_, h1inv, r1) = reduced_with_inverse(l1)?;
    let (h2, _, r2) = reduced_with_inverse(l2)?;
    let vs = vector_set(&r2, max_diag(&r1))?;
    let mut bt = Backtrack {
        src: &r1,
        dst: &vs,
        nodes: 0,
        budget: opts.node_budget,
    };
    let mut images = Vec::new();
    if !bt.extend(&mut images)? {
        return Ok(None);
    }
    let m: IntMatrix = images.iter().map(|&i| vs.vecs[i].clone()).collect();
    Ok(Some(mul(&mul(&h1inv, &m)?, &h2)?))
}

fn backtrack_aut(l: &LatticeGram, opts: IsoOptions) -> Result<LatticeAutGroup> {
    let n = l.rank();
    let (h, hinv, red) = reduced_with_inverse(l)?;
    let vs = vector_set(&red, max_diag(&red))?;
    let unit = |i: usize| -> usize {
        let mut e = vec![0i64; n];
        e[i] = 1;
        vs.index[&e]
    };
    let base: Vec<usize> = (0..n).map(unit).collect();
    let mut bt = Backtrack {
        src: &red,
        dst: &vs,
        nodes: 0,
        budget: opts.node_budget,
    };
    let mut gens_red: Vec<IntMatrix> = Vec::new();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut orbit_lengths = vec![0usize; n];
    for i in (0..n).rev() {
        let prefix = base[..i].to_vec();
        let cands = bt.candidates(&prefix);
        let mut uf = UnionFind::new(vs.vecs.len());
        for p in &perms {
            for (a, &b) in p.iter().enumerate() {
                uf.union(a, b);
            }
        }
        let mut failed: Vec<usize> = Vec::new();
        for &g in &cands {
            if uf.find(g) == uf.find(base[i]) || failed.iter().any(|&f| uf.find(f) == uf.find(g)) {
                continue;
            }
            let mut images = prefix.clone();
            images.push(g);
            if bt.extend(&mut images)? {
                let m: IntMatrix = images.iter().map(|&k| vs.vecs[k].clone()).collect();
                let p = permutation_of(&m, &vs)?;
                for (a, &b) in p.iter().enumerate() {
                    uf.union(a, b);
                }
                perms.push(p);
                gens_red.push(m);
            } else {
                failed.push(g);
            }
        }
        let r = uf.find(base[i]);
        orbit_lengths[i] = cands.iter().filter(|&&c| uf.find(c) == r).count();
    }
    let generators = gens_red
        .iter()
        .map(|m| mul(&mul(&hinv, m)?, &h))
        .collect::<Result<Vec<_>>>()?;
    let order = orbit_lengths.iter().fold(BigUint::one(), |acc, &o| acc * o);
    Ok(LatticeAutGroup {
        generators,
        order,
        method: Method::Backtrack,
    })
}

fn permutation_of(m: &IntMatrix, vs: &VectorSet) -> Result<Vec<usize>> {
    vs.vecs
        .iter()
        .map(|v| {
            let img = crate::lattice::linalg::vec_mul(v, m)?;
            vs.index.get(&img).copied().ok_or_else(|| {
                Error::Validation("automorphism does not preserve short vectors".into())
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// public entry points

pub fn is_isomorphic(l1: &LatticeGram, l2: &LatticeGram) -> Result<Option<IsometryWitness>> {
    is_isomorphic_with(l1, l2, IsoOptions::default())
}

pub fn is_isomorphic_with(
    l1: &LatticeGram,
    l2: &LatticeGram,
    opts: IsoOptions,
) -> Result<Option<IsometryWitness>> {
    if l1.rank() != l2.rank() || l1.det() != l2.det() || l1.is_even() != l2.is_even() {
        return Ok(None);
    }
    let found = match (root_frame(l1)?, root_frame(l2)?) {
        (Some(f1), Some(f2)) => {
            if f1.data.label() != f2.data.label() {
                return Ok(None);
            }
            let (ainv, d) = scaled_inverse(&f1.data.simple)?;
            let mut found = None;
            diagram_maps(&f1, &f2, opts.max_diagram_maps, &mut |sigma| {
                found = extend_map(&ainv, d, &f2.data.simple, sigma);
                Ok(found.is_some())
            })?;
            found
        }
        (None, None) => {
            let cap = max_diag(&l1.lll()?.1).max(max_diag(&l2.lll()?.1));
            if norm_counts(l1, cap)? != norm_counts(l2, cap)? {
                return Ok(None);
            }
            backtrack_iso(l1, l2, opts)?
        }
        _ => return Ok(None),
    };
    match found {
        None => Ok(None),
        Some(matrix) => {
            let w = IsometryWitness { matrix };
            if !w.verify(l1, l2) {
                return Err(Error::Validation(
                    "isometry witness failed verification".into(),
                ));
            }
            Ok(Some(w))
        }
    }
}

pub fn automorphism_group(l: &LatticeGram) -> Result<LatticeAutGroup> {
    automorphism_group_with(l, IsoOptions::default())
}

pub fn automorphism_group_with(l: &LatticeGram, opts: IsoOptions) -> Result<LatticeAutGroup> {
    match root_frame(l)? {
        Some(f) => root_aut(l, &f, opts),
        None => backtrack_aut(l, opts),
    }
}

/// Always uses the backtrack search, whatever the root system.
pub fn automorphism_group_backtrack(l: &LatticeGram, opts: IsoOptions) -> Result<LatticeAutGroup> {
    backtrack_aut(l, opts)
}

fn root_aut(l: &LatticeGram, f: &RootFrame, opts: IsoOptions) -> Result<LatticeAutGroup> {
    let n = l.rank();
    let (ainv, d) = scaled_inverse(&f.data.simple)?;
    let mut extra: Vec<IntMatrix> = Vec::new();
    let mut count = 0u64;
    let id = identity(n);
    diagram_maps(f, f, opts.max_diagram_maps, &mut |sigma| {
        if let Some(m) = extend_map(&ainv, d, &f.data.simple, sigma) {
            count += 1;
            if m != id {
                extra.push(m);
            }
        }
        Ok(false)
    })?;
    let mut generators: Vec<IntMatrix> = f.data.simple.iter().map(|r| reflection(l, r)).collect();
    generators.extend(extra);
    let order = f.data.weyl_order() * count;
    Ok(LatticeAutGroup {
        generators,
        order,
        method: Method::RootSystem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{d_n, d_n_plus, e8, z_n};

    fn is_aut(l: &LatticeGram, a: &IntMatrix) -> bool {
        IsometryWitness { matrix: a.clone() }.verify(l, l)
    }

    #[test]
    fn z4_both_routes() {
        let l = z_n(4);
        let a = automorphism_group(&l).unwrap();
        assert_eq!(a.method, Method::RootSystem);
        assert_eq!(a.order, BigUint::from(384u32));
        let b = automorphism_group_backtrack(&l, IsoOptions::default()).unwrap();
        assert_eq!(b.order, BigUint::from(384u32));
        assert!(a
            .generators
            .iter()
            .chain(&b.generators)
            .all(|g| is_aut(&l, g)));
    }

    #[test]
    fn e8_both_routes() {
        let l = e8();
        let a = automorphism_group(&l).unwrap();
        assert_eq!(a.order, BigUint::from(696_729_600u32));
        let b = automorphism_group_backtrack(&l, IsoOptions::default()).unwrap();
        assert_eq!(b.order, a.order);
        assert!(b.generators.iter().all(|g| is_aut(&l, g)));
    }

    #[test]
    fn d4_both_routes() {
        let l = d_n(4);
        let a = automorphism_group(&l).unwrap();
        assert_eq!(a.order, BigUint::from(1152u32));
        let b = automorphism_group_backtrack(&l, IsoOptions::default()).unwrap();
        assert_eq!(b.order, a.order);
    }

    #[test]
    fn d12_plus_order() {
        let l = d_n_plus(12).unwrap();
        let a = automorphism_group(&l).unwrap();
        // W(D12) = 2^11·12!, the diagram flip swaps the spinor cosets
        assert_eq!(a.order, (BigUint::one() << 11) * crate::util::factorial(12));
        assert!(a.generators.iter().all(|g| is_aut(&l, g)));
    }

    #[test]
    fn e8_is_not_z8() {
        assert!(is_isomorphic(&e8(), &z_n(8)).unwrap().is_none());
    }

    #[test]
    fn witness_for_rebased_lattice() {
        let l = d_n_plus(12).unwrap();
        // an arbitrary unimodular change of basis
        let mut u = identity(12);
        for i in 0..11 {
            u[i][i + 1] = if i % 2 == 0 { 1 } else { -2 };
        }
        let l2 = l.transform(&u).unwrap();
        let w = is_isomorphic(&l2, &l).unwrap().expect("isomorphic");
        assert!(w.verify(&l2, &l));
    }

    #[test]
    fn rootless_backtrack_iso() {
        // rank-2 hexagonal-free example without roots: Gram [[3,1],[1,3]]
        let l = LatticeGram::new(vec![vec![3, 1], vec![1, 3]]).unwrap();
        let l2 = l.transform(&[vec![1, 1], vec![0, 1]]).unwrap();
        let w = is_isomorphic(&l, &l2).unwrap().expect("same lattice");
        assert!(w.verify(&l, &l2));
        let a = automorphism_group(&l).unwrap();
        assert_eq!(a.method, Method::Backtrack);
        // dihedral of order 4: ±1 and the swap of the two basis vectors
        assert_eq!(a.order, BigUint::from(4u32));
        let other = LatticeGram::new(vec![vec![3, 0], vec![0, 3]]).unwrap();
        assert!(is_isomorphic(&l, &other).unwrap().is_none());
    }
}
