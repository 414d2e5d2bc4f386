//! Monomial equivalence and automorphism groups of ternary codes.
//!
//! A code is encoded as a coloured graph on the `2n` signed coordinates
//! `(i, ±1)` plus one vertex per codeword of a spanning, monomially
//! invariant test set (all codewords up to the least weight at which they
//! span the code). Graph isomorphisms that respect the point/word split are
//! exactly the monomial maps carrying one test set onto the other.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::{weight_distribution, MonomialTransform, PackedWord, TernaryCode, MAX_ENUM_DIM};
use crate::refine::{Budget, ColoredGraph, SearchTree};

/// Largest test set turned into graph vertices.
const MAX_TEST_WORDS: usize = 200_000;

#[derive(Clone, Copy, Debug)]
pub struct EquivOptions {
    pub node_budget: u64,
}

impl Default for EquivOptions {
    fn default() -> Self {
        Self {
            node_budget: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutGroupDescription {
    pub generators: Vec<MonomialTransform>,
    #[serde(with = "crate::serde_big")]
    pub order: BigUint,
}

struct CodeGraph {
    graph: ColoredGraph,
    threshold: usize,
}

fn code_graph(code: &TernaryCode) -> Result<CodeGraph> {
    let (n, k) = (code.length(), code.dimension());
    if k > MAX_ENUM_DIM {
        return Err(Error::DimensionTooLarge {
            dim: k,
            limit: MAX_ENUM_DIM,
        });
    }
    let mut by_weight: Vec<Vec<PackedWord>> = vec![Vec::new(); n + 1];
    code.for_each_codeword(|w| {
        if w != PackedWord::ZERO {
            by_weight[w.weight() as usize].push(w);
        }
    })?;
    let mut words: Vec<PackedWord> = Vec::new();
    let mut echelon: Vec<(usize, Vec<u8>)> = Vec::new();
    let mut threshold = 0;
    for (wt, class) in by_weight.iter().enumerate() {
        if echelon.len() == k {
            break;
        }
        if class.is_empty() {
            continue;
        }
        threshold = wt;
        for w in class {
            insert_echelon(&mut echelon, w.to_digits(n));
            words.push(*w);
        }
        if words.len() > MAX_TEST_WORDS {
            return Err(Error::BudgetExceeded(format!(
                "{} test codewords of weight ≤ {wt} exceed {MAX_TEST_WORDS}",
                words.len()
            )));
        }
    }
    words.sort_unstable();

    let points = 2 * n;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); points + words.len()];
    for i in 0..n {
        adj[2 * i].push(2 * i as u32 + 1);
        adj[2 * i + 1].push(2 * i as u32);
    }
    let mut colors = vec![0u64; points];
    for (j, w) in words.iter().enumerate() {
        let v = points + j;
        colors.push(1 + u64::from(w.weight()));
        for i in 0..n {
            let p = match w.get(i) {
                1 => 2 * i,
                2 => 2 * i + 1,
                _ => continue,
            };
            adj[v].push(p as u32);
            adj[p].push(v as u32);
        }
    }
    Ok(CodeGraph {
        graph: ColoredGraph::new(adj, colors, points),
        threshold,
    })
}

fn insert_echelon(basis: &mut Vec<(usize, Vec<u8>)>, mut w: Vec<u8>) {
    use crate::gf3::{add, mul, neg};
    for (p, row) in basis.iter() {
        let c = w[*p];
        if c != 0 {
            let f = neg(c);
            for (x, &r) in w.iter_mut().zip(row) {
                *x = add(*x, mul(f, r));
            }
        }
    }
    if let Some(p) = w.iter().position(|&x| x != 0) {
        if w[p] == 2 {
            for x in w.iter_mut() {
                *x = mul(*x, 2);
            }
        }
        for (_, row) in basis.iter_mut() {
            let c = row[p];
            if c != 0 {
                let f = neg(c);
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = add(*x, mul(f, r));
                }
            }
        }
        basis.push((p, w));
    }
}

fn maps_into(from: &TernaryCode, to: &TernaryCode, t: &MonomialTransform) -> bool {
    from.generator().iter().all(|r| to.contains(&t.apply(r)))
}

pub fn automorphism_group(code: &TernaryCode) -> Result<AutGroupDescription> {
    automorphism_group_with(code, EquivOptions::default())
}

pub fn automorphism_group_with(
    code: &TernaryCode,
    opts: EquivOptions,
) -> Result<AutGroupDescription> {
    let n = code.length();
    if code.dimension() == 0 || code.dimension() == n {
        return Ok(full_monomial_group(n));
    }
    let cg = code_graph(code)?;
    let tree = SearchTree::new(&cg.graph);
    let mut verify = |m: &[usize]| {
        MonomialTransform::from_signed_points(m).is_some_and(|t| maps_into(code, code, &t))
    };
    let res = tree.automorphisms(&mut verify, &mut Budget::new(opts.node_budget))?;
    let generators = res
        .generators
        .iter()
        .map(|g| MonomialTransform::from_signed_points(g).expect("verified generator"))
        .collect();
    let order = res
        .orbit_lengths
        .iter()
        .fold(BigUint::one(), |acc, &o| acc * o);
    Ok(AutGroupDescription { generators, order })
}

/// The zero code and the full space are fixed by every monomial map.
fn full_monomial_group(n: usize) -> AutGroupDescription {
    let mut generators = Vec::new();
    if n >= 1 {
        let mut signs = vec![1u8; n];
        signs[0] = 2;
        generators.push(MonomialTransform::diagonal(signs).expect("valid"));
    }
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        generators.push(MonomialTransform::new(swap, vec![1; n]).expect("valid"));
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        generators.push(MonomialTransform::new(cycle, vec![1; n]).expect("valid"));
    }
    let order = (BigUint::one() << n) * crate::util::factorial(n);
    AutGroupDescription { generators, order }
}

/// Returns `P` with `c1 · P = c2`, or `None` when the codes are inequivalent.
pub fn are_equivalent(c1: &TernaryCode, c2: &TernaryCode) -> Result<Option<MonomialTransform>> {
    are_equivalent_with(c1, c2, EquivOptions::default())
}

pub fn are_equivalent_with(
    c1: &TernaryCode,
    c2: &TernaryCode,
    opts: EquivOptions,
) -> Result<Option<MonomialTransform>> {
    let n = c1.length();
    if n != c2.length() || c1.dimension() != c2.dimension() {
        return Ok(None);
    }
    if c1.dimension() == 0 || c1.dimension() == n {
        return Ok(Some(MonomialTransform::identity(n)));
    }
    if weight_distribution(c1)? != weight_distribution(c2)? {
        return Ok(None);
    }
    let g1 = code_graph(c1)?;
    let g2 = code_graph(c2)?;
    if g1.threshold != g2.threshold {
        return Ok(None);
    }
    // Group orders are a cheap complete-search invariant, and orbits of
    // Aut(c2) prune the first branching level.
    let aut1 = automorphism_group_with(c1, opts)?;
    let aut2 = automorphism_group_with(c2, opts)?;
    if aut1.order != aut2.order {
        return Ok(None);
    }
    let mut orbits = crate::util::UnionFind::new(2 * n);
    for g in &aut2.generators {
        for p in 0..2 * n {
            orbits.union(p, g.signed_point_image(p));
        }
    }
    let reps: Vec<bool> = (0..2 * n).map(|p| orbits.find(p) == p).collect();
    let tree = SearchTree::new(&g1.graph);
    let mut verify = |m: &[usize]| {
        MonomialTransform::from_signed_points(m).is_some_and(|t| maps_into(c1, c2, &t))
    };
    let found = tree.find_isomorphism(
        &g2.graph,
        Some(&reps),
        &mut verify,
        &mut Budget::new(opts.node_budget),
    )?;
    Ok(found.map(|m| MonomialTransform::from_signed_points(&m).expect("verified mapping")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3::monomial::tests::random_transform;
    use crate::gf3::{e4, e4_power, g12};
    use std::collections::HashSet;

    /// All 2^n·n! monomial maps, for small n.
    fn all_monomials(n: usize) -> Vec<MonomialTransform> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut out = Vec::new();
        for p in perms(n) {
            for s in 0..(1u32 << n) {
                let signs = (0..n)
                    .map(|i| if s >> i & 1 == 1 { 2 } else { 1 })
                    .collect();
                out.push(MonomialTransform::new(p.clone(), signs).unwrap());
            }
        }
        out
    }

    #[test]
    fn e4_automorphisms_match_brute_force() {
        let c = e4();
        let brute = all_monomials(4)
            .into_iter()
            .filter(|t| c.transform(t) == c)
            .count();
        assert_eq!(brute, 48);
        let aut = automorphism_group(&c).unwrap();
        assert_eq!(aut.order, BigUint::from(48u32));
        for g in &aut.generators {
            assert_eq!(c.transform(g), c);
        }
    }

    #[test]
    fn g12_group_order() {
        let aut = automorphism_group(&g12()).unwrap();
        assert_eq!(aut.order, BigUint::from(190_080u32));
    }

    #[test]
    fn e4_power_group_order_is_wreath_product() {
        let aut = automorphism_group(&e4_power(3)).unwrap();
        assert_eq!(aut.order, BigUint::from(48u64.pow(3) * 6));
    }

    #[test]
    fn equivalence_witness_maps_codewords_exactly() {
        for seed in 0..10 {
            let c = e4_power(2);
            let p = random_transform(8, seed);
            let d = c.transform(&p);
            let w = are_equivalent(&c, &d).unwrap().expect("equivalent");
            let mut img = HashSet::new();
            c.for_each_codeword(|x| {
                img.insert(w.apply(&x.to_digits(8)));
            })
            .unwrap();
            let mut target = HashSet::new();
            d.for_each_codeword(|x| {
                target.insert(x.to_digits(8));
            })
            .unwrap();
            assert_eq!(img, target);
        }
    }

    #[test]
    fn mismatched_weights_are_inequivalent() {
        let c = g12();
        let d = e4_power(3);
        assert!(are_equivalent(&c, &d).unwrap().is_none());
    }

    #[test]
    fn extremal_length24_codes_are_told_apart() {
        use crate::gf3::{p24, qr24};
        let q = qr24();
        assert!(are_equivalent(&q, &p24()).unwrap().is_none());
        let moved = q.transform(&random_transform(24, 7));
        let w = are_equivalent(&q, &moved).unwrap().expect("equivalent");
        assert_eq!(q.transform(&w), moved);
    }
}
