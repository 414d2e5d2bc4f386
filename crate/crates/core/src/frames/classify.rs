use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::construction::{a3, pi_frame, Frame};
use crate::error::{Error, Result};
use crate::frames::graph::build_gamma_with;
use crate::frames::search::{enumerate_frames_with, SearchOptions};
use crate::gf3::{
    are_equivalent, automorphism_group as code_aut, decompose, mass_check, minimum_weight,
    t_statistic, weight_distribution, MassEntry, MassReport, TernaryCode,
};
use crate::lattice::{automorphism_group, decompose_lattice, is_isomorphic, min_norm, LatticeGram};
use crate::util::{big_to_string, factorial};

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub shadow_filter: bool,
    /// Classify orthogonal summands separately when the lattice has no
    /// norm-1 vectors.
    pub blockwise: bool,
    /// Re-check pairwise inequivalence of the emitted codes.
    pub verify_inequivalence: bool,
    pub search: SearchOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            shadow_filter: true,
            blockwise: true,
            verify_inequivalence: true,
            search: SearchOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifiedCode {
    pub code: TernaryCode,
    pub aut_order: BigUint,
    pub beta3: u64,
    pub beta6: u64,
    pub decomposable: bool,
    /// A frame with this code; absent for blockwise results.
    pub frame: Option<Frame>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifyMethod {
    Direct,
    Blockwise,
}

#[derive(Clone, Debug)]
pub struct LatticeClassification {
    pub lattice: String,
    pub rank: usize,
    pub codes: Vec<ClassifiedCode>,
    pub method: ClassifyMethod,
    pub lattice_decomposable: bool,
}

/// One code row of a persisted report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRow {
    pub genmat: Vec<String>,
    pub aut_order: String,
    pub beta3: u64,
    pub beta6: u64,
    pub decomposable: bool,
}

/// Persisted per-lattice report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub lattice: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub codes: Vec<CodeRow>,
    pub mass_contribution: String,
}

impl ClassifiedCode {
    fn new(code: TernaryCode, frame: Option<Frame>) -> Result<Self> {
        let w = weight_distribution(&code)?;
        let aut_order = code_aut(&code)?.order;
        let decomposable = decompose(&code).len() > 1;
        Ok(Self {
            aut_order,
            beta3: w.beta(3),
            beta6: w.beta(6),
            decomposable,
            frame,
            code,
        })
    }

    fn sort_key(&self) -> (u64, u64, BigUint, Vec<String>) {
        (
            self.beta3,
            self.beta6,
            self.aut_order.clone(),
            self.code.rows_as_strings(),
        )
    }
}

impl LatticeClassification {
    /// `Σ 2ⁿ n! / #Aut(C)`.
    pub fn mass_contribution(&self) -> BigUint {
        let group = (BigUint::one() << self.rank) * factorial(self.rank);
        self.codes
            .iter()
            .map(|c| &group / &c.aut_order)
            .fold(BigUint::zero(), |a, b| a + b)
    }

    pub fn report(&self) -> ClassificationReport {
        ClassificationReport {
            lattice: self.lattice.clone(),
            n: self.codes.len(),
            codes: self
                .codes
                .iter()
                .map(|c| CodeRow {
                    genmat: c.code.rows_as_strings(),
                    aut_order: big_to_string(&c.aut_order),
                    beta3: c.beta3,
                    beta6: c.beta6,
                    decomposable: c.decomposable,
                })
                .collect(),
            mass_contribution: big_to_string(&self.mass_contribution()),
        }
    }
}

pub fn classify_lattice(name: &str, l: &LatticeGram) -> Result<LatticeClassification> {
    classify_lattice_with(name, l, ClassifyOptions::default())
}

pub fn classify_lattice_with(
    name: &str,
    l: &LatticeGram,
    opts: ClassifyOptions,
) -> Result<LatticeClassification> {
    if !l.is_unimodular() {
        return Err(Error::Validation(format!("{name} is not unimodular")));
    }
    let parts = decompose_lattice(l)?;
    let lattice_decomposable = parts.len() > 1;
    let use_blocks = lattice_decomposable && opts.blockwise && min_norm(l)? >= 2;
    let mut codes = if use_blocks {
        let blocks: Vec<LatticeGram> = parts.into_iter().map(|p| p.lattice).collect();
        blockwise(name, &blocks, opts)?
    } else {
        direct(l, opts)?
    };
    codes.sort_by_key(|c| c.sort_key());
    let method = if use_blocks {
        ClassifyMethod::Blockwise
    } else {
        ClassifyMethod::Direct
    };
    if opts.verify_inequivalence {
        for i in 0..codes.len() {
            for j in i + 1..codes.len() {
                if are_equivalent(&codes[i].code, &codes[j].code)?.is_some() {
                    return Err(Error::Validation(format!(
                        "codes {i} and {j} of {name} are equivalent"
                    )));
                }
            }
        }
    }
    if l.rank() <= 12 {
        for c in &codes {
            if is_isomorphic(&a3(&c.code)?, l)?.is_none() {
                return Err(Error::Validation(format!(
                    "a code found for {name} does not give back the lattice"
                )));
            }
        }
    }
    Ok(LatticeClassification {
        lattice: name.to_string(),
        rank: l.rank(),
        codes,
        method,
        lattice_decomposable,
    })
}

fn direct(l: &LatticeGram, opts: ClassifyOptions) -> Result<Vec<ClassifiedCode>> {
    let g = build_gamma_with(l, opts.shadow_filter)?;
    if g.len() < l.rank() {
        return Ok(Vec::new());
    }
    let aut = automorphism_group(l)?;
    let e = enumerate_frames_with(&g, &aut, opts.search)?;
    let mut out = Vec::with_capacity(e.orbits.len());
    for o in e.orbits {
        let code = pi_frame(l, &o.frame)?;
        let c = ClassifiedCode::new(code, Some(o.frame))?;
        // the frame stabilizer is Aut(C)
        if &c.aut_order * &o.orbit_size != aut.order {
            return Err(Error::Validation(format!(
                "orbit size {} and #Aut(C) = {} do not multiply to #Aut(L) = {}",
                o.orbit_size, c.aut_order, aut.order
            )));
        }
        out.push(c);
    }
    Ok(out)
}

/// Frames of a sum of lattices without norm-1 vectors are unions of frames
/// of the summands, so the codes are direct sums of summand codes, taken
/// as multisets over isomorphic summands.
fn blockwise(
    name: &str,
    blocks: &[LatticeGram],
    opts: ClassifyOptions,
) -> Result<Vec<ClassifiedCode>> {
    // group isomorphic summands
    let mut classes: Vec<(LatticeGram, usize)> = Vec::new();
    for b in blocks {
        let mut placed = false;
        for (rep, count) in classes.iter_mut() {
            if rep.rank() == b.rank() && is_isomorphic(rep, b)?.is_some() {
                *count += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((b.clone(), 1));
        }
    }
    // a summand without enough norm-3 vectors rules out every frame, so
    // check all of them before any expensive search
    for (rep, _) in &classes {
        if build_gamma_with(rep, opts.shadow_filter)?.len() < rep.rank() {
            return Ok(Vec::new());
        }
    }
    let mut partial: Vec<TernaryCode> = vec![TernaryCode::zero(0)];
    for (i, (rep, count)) in classes.iter().enumerate() {
        let sub = classify_lattice_with(
            &format!("{name}/{i}"),
            rep,
            ClassifyOptions {
                blockwise: false,
                ..opts
            },
        )?;
        if sub.codes.is_empty() {
            return Ok(Vec::new());
        }
        let k = sub.codes.len();
        let mut next = Vec::new();
        for choice in multisets(k, *count) {
            let mut block = TernaryCode::zero(0);
            for c in choice {
                block = block.direct_sum(&sub.codes[c].code);
            }
            for p in &partial {
                next.push(p.direct_sum(&block));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|c| ClassifiedCode::new(c, None))
        .collect()
}

/// Non-decreasing sequences of length `m` over `0..k`.
fn multisets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(k, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, m, 0, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LengthReport {
    pub length: usize,
    pub lattices: Vec<ClassificationReport>,
    pub mass: MassReport,
    /// `(i, T_i)` as reduced fractions.
    pub t: Vec<(usize, String)>,
    /// For codes of minimum weight at least 6: code decomposable iff
    /// lattice decomposable.
    pub decomposition_consistent: bool,
}

/// Classifies every lattice of `catalog` and checks the total mass.
pub fn classify_length(
    n: usize,
    catalog: &[(String, LatticeGram)],
    opts: ClassifyOptions,
) -> Result<LengthReport> {
    let mut lattices = Vec::new();
    let mut entries = Vec::new();
    let mut consistent = true;
    for (name, l) in catalog {
        if l.rank() != n {
            return Err(Error::Validation(format!(
                "{name} has rank {}, expected {n}",
                l.rank()
            )));
        }
        let c = classify_lattice_with(name, l, opts)?;
        for code in &c.codes {
            if minimum_weight(&code.code)?.is_some_and(|d| d >= 6)
                && code.decomposable != c.lattice_decomposable
            {
                consistent = false;
            }
            entries.push(MassEntry {
                code: code.code.clone(),
                aut_order: code.aut_order.clone(),
            });
        }
        lattices.push(c.report());
    }
    let mass = mass_check(&entries, n)?;
    let max_i = entries
        .iter()
        .map(|e| weight_distribution(&e.code).map(|w| w.beta(3) / 2))
        .collect::<Result<Vec<_>>>()?;
    let top = max_i.into_iter().max().unwrap_or(0) as usize;
    let t = (0..=top)
        .map(|i| Ok((i, t_statistic(&entries, i)?.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(LengthReport {
        length: n,
        lattices,
        mass,
        t,
        decomposition_consistent: consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3::e4;
    use crate::lattice::{e8, z_n};

    #[test]
    fn multisets_count() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(1, 2), vec![vec![0, 0]]);
    }

    #[test]
    fn z4_gives_e4() {
        let c = classify_lattice("Z4", &z_n(4)).unwrap();
        assert_eq!(c.codes.len(), 1);
        assert_eq!(c.codes[0].aut_order, BigUint::from(48u32));
        assert!(are_equivalent(&c.codes[0].code, &e4()).unwrap().is_some());
        let r = c.report();
        assert_eq!(r.n, 1);
        assert_eq!(r.mass_contribution, "8");
    }

    #[test]
    fn e8_sum_has_no_codes() {
        let l = e8().direct_sum(&e8());
        // even lattices have no norm-3 vectors at all
        assert!(classify_lattice("E8+E8", &l).unwrap().codes.is_empty());
    }

    #[test]
    fn length4_mass() {
        let r = classify_length(4, &[("Z4".into(), z_n(4))], ClassifyOptions::default()).unwrap();
        assert!(r.mass.pass);
        assert_eq!(r.mass.total, "8");
    }
}
