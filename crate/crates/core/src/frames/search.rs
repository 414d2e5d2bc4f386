//! Orbit representatives of `n`-cliques of the frame graph.
//!
//! Vertex orbits of `Aut(L)` are ordered by their smallest vertex. For the
//! representative `r` of orbit `o` we list the cliques that contain `r` and
//! avoid orbits before `o`; every `Aut(L)`-orbit of cliques whose smallest
//! vertex orbit is `o` meets this set. Inside it, two cliques are in the
//! same orbit exactly when they are joined by generators of `Stab(r)` or by
//! a transversal element moving another vertex of `K` in the orbit of `r`
//! onto `r`.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::construction::Frame;
use crate::error::{Error, Result};
use crate::frames::graph::FrameGraph;
use crate::frames::perm::{Perm, StabChain};
use crate::lattice::{automorphism_group, LatticeAutGroup};
use crate::util::{thread_count, UnionFind};

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub node_budget: u64,
    /// Worker threads; `None` follows `SDKIT_THREADS`.
    pub threads: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            node_budget: 2_000_000_000,
            threads: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FrameOrbit {
    pub frame: Frame,
    /// Sorted vertex indices.
    pub clique: Vec<u32>,
    /// Number of frames in the `Aut(L)`-orbit.
    pub orbit_size: BigUint,
}

#[derive(Clone, Debug)]
pub struct FrameEnumeration {
    pub orbits: Vec<FrameOrbit>,
    /// Order of the group induced on vertices (`|Aut(L)|/2` when the
    /// norm-3 vectors span).
    pub vertex_group_order: BigUint,
    pub vertex_orbits: usize,
    /// Cliques listed across all representatives.
    pub cliques_listed: u64,
}

struct Budget<'a> {
    nodes: &'a AtomicU64,
    limit: u64,
}

impl Budget<'_> {
    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExceeded(format!(
                "clique search visited more than {} nodes",
                self.limit
            )));
        }
        Ok(())
    }
}

fn count_bits(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn bits(b: &[u64]) -> impl Iterator<Item = u32> + '_ {
    b.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros();
            w &= w - 1;
            Some(wi as u32 * 64 + t)
        })
    })
}

/// Clears bits `0..=v`.
fn clear_upto(b: &mut [u64], v: u32) {
    let (w, r) = ((v / 64) as usize, v % 64);
    for x in &mut b[..w] {
        *x = 0;
    }
    b[w] &= if r == 63 { 0 } else { !0u64 << (r + 1) };
}

/// Extends `clique` by `need` vertices taken from `cand` in increasing order.
/// `scratch` holds one candidate buffer per remaining depth.
fn extend(
    g: &FrameGraph,
    clique: &mut Vec<u32>,
    cand: &[u64],
    need: usize,
    scratch: &mut [Vec<u64>],
    budget: &Budget,
    out: &mut dyn FnMut(&[u32]),
) -> Result<()> {
    budget.tick()?;
    if need == 0 {
        out(clique);
        return Ok(());
    }
    if need == 1 {
        for v in bits(cand) {
            clique.push(v);
            out(clique);
            clique.pop();
        }
        return Ok(());
    }
    let (next, deeper) = scratch.split_first_mut().expect("scratch depth");
    let mut left = count_bits(cand);
    for v in bits(cand) {
        if left < need {
            break;
        }
        left -= 1;
        let nb = g.neighbors(v);
        let mut cnt = 0;
        let vw = (v / 64) as usize;
        for (i, x) in next.iter_mut().enumerate() {
            *x = if i < vw { 0 } else { cand[i] & nb[i] };
            cnt += x.count_ones() as usize;
        }
        next[vw] &= if v % 64 == 63 {
            0
        } else {
            !0u64 << (v % 64 + 1)
        };
        if cnt + 1 >= need {
            clique.push(v);
            extend(g, clique, next, need - 1, deeper, budget, out)?;
            clique.pop();
        }
    }
    Ok(())
}

fn scratch_for(g: &FrameGraph, depth: usize) -> Vec<Vec<u64>> {
    vec![vec![0u64; g.len().div_ceil(64)]; depth]
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or_else(thread_count))
        .build()
        .map_err(|e| Error::Validation(format!("thread pool: {e}")))
}

/// Sorted cliques of size `n` containing `r` whose other vertices lie in `allowed`.
fn cliques_through(
    g: &FrameGraph,
    r: u32,
    allowed: &[u64],
    n: usize,
    budget: &Budget,
) -> Result<Vec<Vec<u32>>> {
    let start: Vec<u64> = g
        .neighbors(r)
        .iter()
        .zip(allowed)
        .map(|(a, b)| a & b)
        .collect();
    if n == 1 {
        return Ok(vec![vec![r]]);
    }
    let firsts: Vec<u32> = bits(&start).collect();
    let parts: Vec<Result<Vec<Vec<u32>>>> = firsts
        .par_iter()
        .map(|&v| {
            let mut cand = start.clone();
            clear_upto(&mut cand, v);
            for (c, nb) in cand.iter_mut().zip(g.neighbors(v)) {
                *c &= nb;
            }
            let mut found = Vec::new();
            let mut clique = vec![r, v];
            let mut scratch = scratch_for(g, n);
            extend(
                g,
                &mut clique,
                &cand,
                n - 2,
                &mut scratch,
                budget,
                &mut |k| {
                    let mut k = k.to_vec();
                    k.sort_unstable();
                    found.push(k);
                },
            )?;
            Ok(found)
        })
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    all.sort_unstable();
    Ok(all)
}

/// Number of all `n`-cliques, without any symmetry reduction.
pub fn count_cliques(g: &FrameGraph, opts: SearchOptions) -> Result<u64> {
    let n = g.lattice().rank();
    let nodes = AtomicU64::new(0);
    let budget = Budget {
        nodes: &nodes,
        limit: opts.node_budget,
    };
    pool(opts.threads)?.install(|| {
        let counts: Vec<Result<u64>> = (0..g.len() as u32)
            .into_par_iter()
            .map(|v| {
                let mut cand: Vec<u64> = g.neighbors(v).to_vec();
                clear_upto(&mut cand, v);
                let mut c = 0u64;
                let mut scratch = scratch_for(g, n);
                extend(
                    g,
                    &mut vec![v],
                    &cand,
                    n - 1,
                    &mut scratch,
                    &budget,
                    &mut |_| c += 1,
                )?;
                Ok(c)
            })
            .collect();
        counts.into_iter().sum()
    })
}

/// Orbit representatives of frames under `Aut(L)`.
pub fn enumerate_frames(g: &FrameGraph) -> Result<FrameEnumeration> {
    let aut = automorphism_group(g.lattice())?;
    enumerate_frames_with(g, &aut, SearchOptions::default())
}

pub fn enumerate_frames_with(
    g: &FrameGraph,
    aut: &LatticeAutGroup,
    opts: SearchOptions,
) -> Result<FrameEnumeration> {
    let gens = g.vertex_action(&aut.generators)?;
    pool(opts.threads)?.install(|| enumerate_inner(g, &gens, opts))
}

fn enumerate_inner(g: &FrameGraph, gens: &[Perm], opts: SearchOptions) -> Result<FrameEnumeration> {
    let n = g.lattice().rank();
    let m = g.len();
    let nodes = AtomicU64::new(0);
    let budget = Budget {
        nodes: &nodes,
        limit: opts.node_budget,
    };
    let mut uf = UnionFind::new(m);
    for p in gens {
        for (a, &b) in p.iter().enumerate() {
            uf.union(a, b as usize);
        }
    }
    // orbit index by smallest member; UnionFind keeps the smaller root
    let mut orbit_of = vec![usize::MAX; m];
    let mut reps: Vec<u32> = Vec::new();
    for v in 0..m {
        let root = uf.find(v);
        if root == v {
            orbit_of[v] = reps.len();
            reps.push(v as u32);
        } else {
            orbit_of[v] = orbit_of[root];
        }
    }
    let words = m.div_ceil(64);
    let mut vertex_group_order = None;
    let mut orbits = Vec::new();
    let mut listed = 0u64;
    for (o, &r) in reps.iter().enumerate() {
        let mut allowed = vec![0u64; words];
        for v in 0..m {
            if orbit_of[v] >= o {
                allowed[v / 64] |= 1 << (v % 64);
            }
        }
        let cliques = cliques_through(g, r, &allowed, n, &budget)?;
        listed += cliques.len() as u64;
        if cliques.is_empty() {
            continue;
        }
        let chain = StabChain::new(m, gens, &[r]);
        if vertex_group_order.is_none() {
            vertex_group_order = Some(chain.order());
        }
        let orbit_r = chain.basic_orbit(0).len();
        let stab = chain.stabilizer_generators(1);
        let lookup = |k: &[u32]| -> Result<usize> {
            cliques
                .binary_search_by(|c| c.as_slice().cmp(k))
                .map_err(|_| Error::Validation("clique set is not closed under the group".into()))
        };
        let mut cu = UnionFind::new(cliques.len());
        let mut img = Vec::with_capacity(n);
        for (ci, k) in cliques.iter().enumerate() {
            for s in &stab {
                img.clear();
                img.extend(k.iter().map(|&v| s[v as usize]));
                img.sort_unstable();
                cu.union(ci, lookup(&img)?);
            }
            for &u in k {
                if u == r || orbit_of[u as usize] != o {
                    continue;
                }
                let t = chain.to_base(0, u).expect("u is in the orbit of r");
                img.clear();
                img.extend(k.iter().map(|&v| t[v as usize]));
                img.sort_unstable();
                cu.union(ci, lookup(&img)?);
            }
        }
        let mut size = vec![0u64; cliques.len()];
        for ci in 0..cliques.len() {
            size[cu.find(ci)] += 1;
        }
        for ci in 0..cliques.len() {
            if cu.find(ci) != ci {
                continue;
            }
            let k = &cliques[ci];
            let mult = k.iter().filter(|&&v| orbit_of[v as usize] == o).count() as u64;
            let total = BigUint::from(orbit_r) * size[ci];
            // |orbit(K)|·mult = |orbit(r)|·#{K' ∋ r in the orbit}
            if &total % mult != BigUint::from(0u32) {
                return Err(Error::Validation(
                    "orbit bookkeeping is inconsistent".into(),
                ));
            }
            orbits.push(FrameOrbit {
                frame: Frame {
                    vectors: k.iter().map(|&v| g.vertex(v).to_vec()).collect(),
                },
                clique: k.clone(),
                orbit_size: total / mult,
            });
        }
    }
    let vertex_group_order = match vertex_group_order {
        Some(o) => o,
        None => StabChain::new(m.max(1), gens, &[]).order(),
    };
    Ok(FrameEnumeration {
        orbits,
        vertex_group_order,
        vertex_orbits: reps.len(),
        cliques_listed: listed,
    })
}
