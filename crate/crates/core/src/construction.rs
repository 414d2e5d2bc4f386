//! Construction A over GF(3) and the even neighbors of the resulting lattices.
//!
//! Irrational scalings are avoided by keeping integer ambient coordinates
//! together with a scale `s`: a row `x` stands for the vector `x/√s`, so
//! inner products are `x·y / s`. `A₃(C)` uses `s = 3`; the straight and
//! twisted neighbors use `s = 12`, where `𝟏/(2√3)` becomes the all-ones
//! row and an element `x/√3` of `A₃(C)` becomes `2x`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf3::{reduce, weight_distribution, MonomialTransform, TernaryCode};
use crate::lattice::linalg::{hnf, mul, solve_integral, transpose, IntMatrix};
use crate::lattice::{
    is_isomorphic, norm_counts, shadow, span_euclidean, span_in_lattice, LatticeGram,
};

/// A lattice with an integral embedding: basis rows are ambient integer
/// vectors, and the geometric inner product is the dot product over `scale`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScaledLattice {
    pub lattice: LatticeGram,
    pub basis: IntMatrix,
    pub scale: i64,
}

/// `n` pairwise orthogonal vectors of norm 3, in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frame {
    pub vectors: Vec<Vec<i64>>,
}

impl Frame {
    pub fn validate(&self, l: &LatticeGram) -> Result<()> {
        let n = l.rank();
        if self.vectors.len() != n || self.vectors.iter().any(|v| v.len() != n) {
            return Err(invalid(format!(
                "a frame of a rank-{n} lattice needs {n} vectors of length {n}"
            )));
        }
        for i in 0..n {
            for j in i..n {
                let want = if i == j { 3 } else { 0 };
                let got = l.inner(&self.vectors[i], &self.vectors[j]);
                if got != want {
                    return Err(Error::Validation(format!(
                        "(f{}, f{}) = {got}, expected {want}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_self_dual(code: &TernaryCode) -> Result<()> {
    if code.is_self_dual() {
        Ok(())
    } else {
        Err(Error::NotSelfDual)
    }
}

fn lift(row: &[u8]) -> Vec<i64> {
    row.iter().map(|&x| i64::from(x)).collect()
}

/// `A₃(C) = {x ∈ Zⁿ : x mod 3 ∈ C} / √3` with its embedding at scale 3.
pub fn a3_scaled(code: &TernaryCode) -> Result<ScaledLattice> {
    check_self_dual(code)?;
    let n = code.length();
    let mut gens: Vec<Vec<i64>> = code.generator().iter().map(|r| lift(r)).collect();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 3;
        gens.push(e);
    }
    let s = span_euclidean(&gens, 3)?;
    Ok(ScaledLattice {
        lattice: s.lattice,
        basis: s.basis,
        scale: 3,
    })
}

pub fn a3(code: &TernaryCode) -> Result<LatticeGram> {
    Ok(a3_scaled(code)?.lattice)
}

/// The frame `√3·eᵢ` of `A₃(C)`.
pub fn standard_frame(a: &ScaledLattice) -> Result<Frame> {
    let n = a.lattice.rank();
    let targets: IntMatrix = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 3;
            e
        })
        .collect();
    let x = solve_integral(&transpose(&a.basis), &transpose(&targets))
        .ok_or_else(|| Error::Validation("3eᵢ is not in the lattice".into()))?;
    Ok(Frame {
        vectors: transpose(&x),
    })
}

/// The code `{((x, fᵢ) mod 3)ᵢ : x ∈ L}`.
pub fn pi_frame(l: &LatticeGram, frame: &Frame) -> Result<TernaryCode> {
    frame.validate(l)?;
    let n = l.rank();
    let gf: Vec<Vec<i128>> = frame.vectors.iter().map(|f| l.pairing(f)).collect();
    // π_F(b_k) = ((b_k, f_i) mod 3) = (G f_i)_k
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|k| gf.iter().map(|g| reduce((g[k] % 3) as i64)).collect())
        .collect();
    let code = TernaryCode::span(n, &rows)?;
    if !code.is_self_dual() {
        return Err(Error::Validation(
            "frame projection is not self-dual; is the lattice unimodular?".into(),
        ));
    }
    Ok(code)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub alpha1: u64,
    pub alpha2: u64,
    pub beta3: u64,
    pub beta6: u64,
    pub holds: bool,
}

/// Counts norm-1 and norm-2 vectors of `A₃(C)` and compares with
/// `α₁ = β₃`, `α₂ = β₆ + 3β₃`.
pub fn lemma1_check(code: &TernaryCode) -> Result<Lemma1Report> {
    let l = a3(code)?;
    let c = norm_counts(&l, 2)?;
    let w = weight_distribution(code)?;
    let (alpha1, alpha2, beta3, beta6) = (c[1], c[2], w.beta(3), w.beta(6));
    Ok(Lemma1Report {
        alpha1,
        alpha2,
        beta3,
        beta6,
        holds: alpha1 == beta3 && alpha2 == beta6 + 3 * beta3,
    })
}

/// The even sublattice `B₃(C)` of `A₃(C)`, at scale 3.
pub fn b3_scaled(code: &TernaryCode) -> Result<ScaledLattice> {
    let a = a3_scaled(code)?;
    let s = shadow(&a.lattice)?;
    let basis = hnf(&mul(&s.l0_basis, &a.basis)?)?;
    let lattice = s.l0(&a.lattice)?;
    debug_assert_eq!(lattice.det(), 4.into());
    Ok(ScaledLattice {
        lattice,
        basis,
        scale: 3,
    })
}

pub fn b3(code: &TernaryCode) -> Result<LatticeGram> {
    Ok(b3_scaled(code)?.lattice)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NeighborLabel {
    /// `⟨𝟏/(2√3), B₃(C)⟩`
    Straight,
    /// `⟨𝟏/(2√3) − e₁, B₃(C)⟩`
    Twisted,
    /// `L₀ ∪ L₁` for the shadow coset of `w/2`
    Coset1,
    /// `L₀ ∪ L₃` for the other shadow coset
    Coset3,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Neighbor {
    pub label: NeighborLabel,
    pub lattice: LatticeGram,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NeighborPair {
    pub first: Neighbor,
    pub second: Neighbor,
}

/// Straight and twisted neighbors at scale 12.
pub fn straight_twisted_scaled(code: &TernaryCode) -> Result<(ScaledLattice, ScaledLattice)> {
    let n = code.length();
    if n == 0 || !n.is_multiple_of(12) {
        return Err(invalid(format!(
            "straight/twisted neighbors need n ≡ 0 (mod 12), got {n}"
        )));
    }
    if !code.contains_all_ones() {
        return Err(invalid("the all-ones word is not in the code"));
    }
    let b = b3_scaled(code)?;
    let doubled: IntMatrix = b
        .basis
        .iter()
        .map(|r| r.iter().map(|x| 2 * x).collect())
        .collect();
    let build = |glue: Vec<i64>| -> Result<ScaledLattice> {
        let mut gens = doubled.clone();
        gens.push(glue);
        let s = span_euclidean(&gens, 12)?;
        Ok(ScaledLattice {
            lattice: s.lattice,
            basis: s.basis,
            scale: 12,
        })
    };
    let ones = vec![1i64; n];
    let mut twist = ones.clone();
    // e₁ = √3·(1,0,…,0) is 6·(1,0,…,0)/(2√3)
    twist[0] -= 6;
    Ok((build(ones)?, build(twist)?))
}

pub fn straight_twisted(code: &TernaryCode) -> Result<NeighborPair> {
    let (s, t) = straight_twisted_scaled(code)?;
    Ok(NeighborPair {
        first: Neighbor {
            label: NeighborLabel::Straight,
            lattice: s.lattice,
        },
        second: Neighbor {
            label: NeighborLabel::Twisted,
            lattice: t.lattice,
        },
    })
}

/// The two lattices `L₀ ∪ L₁` and `L₀ ∪ L₃`; even unimodular when the
/// rank is divisible by 8.
pub fn even_neighbors(l: &LatticeGram) -> Result<NeighborPair> {
    let n = l.rank();
    if n == 0 || !n.is_multiple_of(8) {
        return Err(invalid(format!(
            "even neighbors need rank ≡ 0 (mod 8), got {n}"
        )));
    }
    let s = shadow(l)?;
    let half: IntMatrix = s
        .l0_basis
        .iter()
        .map(|r| r.iter().map(|x| 2 * x).collect())
        .collect();
    let build = |rep: &[i64]| -> Result<LatticeGram> {
        let mut gens = half.clone();
        gens.push(rep.to_vec());
        Ok(span_in_lattice(l, &gens, 2)?.lattice)
    };
    Ok(NeighborPair {
        first: Neighbor {
            label: NeighborLabel::Coset1,
            lattice: build(&s.l1_rep)?,
        },
        second: Neighbor {
            label: NeighborLabel::Coset3,
            lattice: build(&s.l3_rep)?,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub full_weight: u64,
    /// Full-weight codewords whose coordinate product is −1.
    pub negative: u64,
    pub first_negative: Option<Vec<u8>>,
}

/// Checks that every full-weight codeword has coordinate product 1.
pub fn admissible(code: &TernaryCode) -> Result<AdmissibilityReport> {
    let n = code.length();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let (mut total, mut neg) = (0u64, 0u64);
    let mut first = None;
    code.for_each_codeword(|w| {
        if w.support() == full {
            total += 1;
            if w.twos.count_ones() % 2 == 1 {
                neg += 1;
                if first.is_none() {
                    first = Some(w.to_digits(n));
                }
            }
        }
    })?;
    Ok(AdmissibilityReport {
        admissible: neg == 0,
        full_weight: total,
        negative: neg,
        first_negative: first,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionReport {
    /// Product of the entries of `v` as ±1.
    pub product: i8,
    /// Which neighbor of `C·P` the lattice `L_S(C)·P` should equal.
    pub expected: NeighborLabel,
    /// `L_S(C)·P` equals the expected lattice as a set of vectors.
    pub equal: bool,
    /// `is_isomorphic` agrees.
    pub isomorphic: bool,
    pub admissible: bool,
}

/// With `P = diag(v)` for a full-weight codeword `v`, checks that
/// `L_S(C)·P` is `L_S(C·P)` when `∏vᵢ = 1` and `L_T(C·P)` otherwise.
pub fn proposition_check(code: &TernaryCode, v: &[u8]) -> Result<PropositionReport> {
    let n = code.length();
    if v.len() != n || v.contains(&0) {
        return Err(invalid("v must be a full-weight word of the code's length"));
    }
    if !code.contains(v) {
        return Err(invalid("v is not a codeword"));
    }
    let p = MonomialTransform::diagonal(v.to_vec())
        .ok_or_else(|| invalid("v has entries outside GF(3)"))?;
    let product: i8 = if v.iter().filter(|&&x| x == 2).count() % 2 == 0 {
        1
    } else {
        -1
    };
    let (ls, _) = straight_twisted_scaled(code)?;
    let (ls_p, lt_p) = straight_twisted_scaled(&code.transform(&p))?;
    let moved: IntMatrix = ls
        .basis
        .iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .map(|(&x, &s)| if s == 2 { -x } else { x })
                .collect()
        })
        .collect();
    let moved = hnf(&moved)?;
    let (expected, target) = if product == 1 {
        (NeighborLabel::Straight, &ls_p)
    } else {
        (NeighborLabel::Twisted, &lt_p)
    };
    let equal = moved == target.basis;
    let isomorphic = is_isomorphic(&ls.lattice, &target.lattice)?.is_some();
    Ok(PropositionReport {
        product,
        expected,
        equal,
        isomorphic,
        admissible: admissible(code)?.admissible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3::{are_equivalent, e4, e4_power, g12};
    use crate::lattice::{d_n_plus, min_norm, root_system, z_n};

    #[test]
    fn a3_of_e4_is_z4() {
        let l = a3(&e4()).unwrap();
        assert!(l.is_unimodular());
        let w = is_isomorphic(&l, &z_n(4)).unwrap().expect("A3(E4) = Z4");
        assert!(w.verify(&l, &z_n(4)));
    }

    #[test]
    fn a3_of_golay_is_d12_plus() {
        let l = a3(&g12()).unwrap();
        assert_eq!(min_norm(&l).unwrap(), 2);
        assert!(is_isomorphic(&l, &d_n_plus(12).unwrap()).unwrap().is_some());
    }

    #[test]
    fn not_self_dual_rejected() {
        let c = TernaryCode::from_strs(&["1100"]).unwrap();
        assert!(matches!(a3(&c), Err(Error::NotSelfDual)));
    }

    #[test]
    fn lemma1_small() {
        let r = lemma1_check(&e4()).unwrap();
        assert_eq!((r.alpha1, r.alpha2, r.beta3, r.beta6), (8, 24, 8, 0));
        assert!(r.holds);
        let r = lemma1_check(&g12()).unwrap();
        assert_eq!((r.alpha1, r.alpha2, r.beta6), (0, 264, 264));
        assert!(r.holds);
    }

    #[test]
    fn standard_frame_round_trip() {
        for c in [e4(), g12(), e4_power(2), e4().direct_sum(&g12())] {
            let a = a3_scaled(&c).unwrap();
            let f = standard_frame(&a).unwrap();
            let back = pi_frame(&a.lattice, &f).unwrap();
            // the standard frame recovers C itself, not just an equivalent code
            assert_eq!(back, c);
        }
    }

    #[test]
    fn z4_frame_gives_e4() {
        let l = z_n(4);
        let f = Frame {
            vectors: vec![
                vec![1, 1, 1, 0],
                vec![1, -1, 0, 1],
                vec![1, 0, -1, -1],
                vec![0, 1, -1, 1],
            ],
        };
        let c = pi_frame(&l, &f).unwrap();
        assert!(are_equivalent(&c, &e4()).unwrap().is_some());
        let bad = Frame {
            vectors: vec![
                vec![1, 1, 1, 0],
                vec![1, 1, 0, 1],
                vec![1, 0, -1, -1],
                vec![0, 1, -1, 1],
            ],
        };
        assert!(pi_frame(&l, &bad).is_err());
    }

    #[test]
    fn b3_is_index_two() {
        let b = b3(&e4()).unwrap();
        assert!(b.is_even());
        assert_eq!(b.det(), 4.into());
        assert_eq!(root_system(&b).unwrap().to_string(), "D4");
    }

    #[test]
    fn straight_twisted_rejects_bad_input() {
        assert!(straight_twisted(&e4()).is_err());
        // E4³ has length 12 but does not contain 𝟏
        let c = e4_power(3);
        assert!(!c.contains_all_ones());
        assert!(straight_twisted(&c).is_err());
    }

    /// An equivalent copy of the Golay code containing 𝟏.
    fn golay_with_ones() -> TernaryCode {
        let c = g12();
        let mut v = None;
        c.for_each_codeword(|w| {
            if v.is_none() && w.weight() == 12 {
                v = Some(w.to_digits(12));
            }
        })
        .unwrap();
        let c = c.transform(&MonomialTransform::diagonal(v.unwrap()).unwrap());
        assert!(c.contains_all_ones());
        c
    }

    #[test]
    fn golay_neighbors_are_unimodular() {
        let p = straight_twisted(&golay_with_ones()).unwrap();
        for l in [&p.first.lattice, &p.second.lattice] {
            assert!(l.is_unimodular());
        }
    }

    #[test]
    fn even_neighbors_of_z8() {
        let p = even_neighbors(&z_n(8)).unwrap();
        for nb in [&p.first, &p.second] {
            assert!(nb.lattice.is_even() && nb.lattice.is_unimodular());
            assert_eq!(root_system(&nb.lattice).unwrap().to_string(), "E8");
        }
        assert!(even_neighbors(&z_n(4)).is_err());
    }

    #[test]
    fn golay_full_weight_words() {
        let r = admissible(&g12()).unwrap();
        assert_eq!(r.full_weight, 24);
        assert_eq!(r.admissible, r.negative == 0);
    }

    #[test]
    fn proposition_identity_word() {
        let r = proposition_check(&golay_with_ones(), &[1; 12]).unwrap();
        assert_eq!(r.product, 1);
        assert!(r.equal && r.isomorphic);
    }
}
