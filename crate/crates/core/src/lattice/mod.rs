//! Integral lattices given by Gram matrices.

mod builtin;
mod decompose;
mod enumerate;
mod isometry;
pub mod linalg;
mod neighbor;
mod roots;
mod shadow;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{d8_pair_plus, d_n, d_n_plus, e8, z_n};
pub use decompose::decompose_lattice;
pub use enumerate::{
    coset_vectors, kissing_number, min_norm, norm_counts, short_vectors, short_vectors_with,
    EnumOptions,
};
pub use isometry::{
    automorphism_group, automorphism_group_backtrack, automorphism_group_with, is_isomorphic,
    is_isomorphic_with, IsoOptions, IsometryWitness, LatticeAutGroup, Method,
};
pub use linalg::IntMatrix;
pub use neighbor::{
    p_neighbor, p_neighbor_with_basis, span_euclidean, span_in_lattice, Sublattice,
};
pub use roots::{root_system, RootComponent, RootSystemLabel, RootType};
pub use shadow::{
    shadow, shadow_filter, shadow_filter_active, shadow_vectors, ShadowDecomposition, ShadowFilter,
};

/// An integral lattice given by the Gram matrix of a basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeGram {
    rows: Vec<Vec<i64>>,
}

/// Integer coordinates in the basis of a lattice, with the norm cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub norm: i64,
    pub coords: Vec<i64>,
}

impl LatticeGram {
    /// Validates symmetry and positive definiteness.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Validation(format!(
                    "Gram row {i} has {} entries, expected {n}",
                    r.len()
                )));
            }
            for j in 0..i {
                if r[j] != rows[j][i] {
                    return Err(Error::Validation(format!(
                        "Gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        linalg::integral_gram_schmidt(&linalg::to_big(&rows))?;
        Ok(Self { rows })
    }

    pub(crate) fn new_unchecked(rows: Vec<Vec<i64>>) -> Self {
        Self { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, row) in self.rows.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            let t: i128 = row
                .iter()
                .zip(y)
                .map(|(&g, &b)| i128::from(g) * i128::from(b))
                .sum();
            s += i128::from(x[i]) * t;
        }
        s
    }

    pub fn norm(&self, x: &[i64]) -> i128 {
        self.inner(x, x)
    }

    /// `G·x`, the inner products of `x` with the basis vectors.
    pub fn pairing(&self, x: &[i64]) -> Vec<i128> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .map(|(&g, &b)| i128::from(g) * i128::from(b))
                    .sum()
            })
            .collect()
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&self.rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_one()
    }

    /// Even iff every diagonal entry is even.
    pub fn is_even(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn direct_sum(&self, other: &LatticeGram) -> LatticeGram {
        let (a, b) = (self.rank(), other.rank());
        let mut rows = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            rows[i][..a].copy_from_slice(&self.rows[i]);
        }
        for i in 0..b {
            rows[a + i][a..].copy_from_slice(&other.rows[i]);
        }
        Self { rows }
    }

    /// Gram matrix of the basis whose rows are `u` in this basis: `U G Uᵀ`.
    pub fn transform(&self, u: &[Vec<i64>]) -> Result<LatticeGram> {
        let g = linalg::mul(&linalg::mul(u, &self.rows)?, &linalg::transpose(u))?;
        LatticeGram::new(g)
    }

    /// LLL-reduced Gram together with the basis change `H` (reduced basis = `H` · this basis).
    pub fn lll(&self) -> Result<(IntMatrix, LatticeGram)> {
        let (h, g) = linalg::lll_gram(&self.rows)?;
        Ok((h, LatticeGram::new_unchecked(g)))
    }

    /// Lattice file body: `n` followed by the Gram rows.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.rank());
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the lattice file format; `#` lines are comments. Returns the
    /// lattice and the `# name:` header if present.
    pub fn parse(text: &str) -> Result<(LatticeGram, Option<String>)> {
        let mut name = None;
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let t = raw.trim();
            if let Some(c) = t.strip_prefix('#') {
                if let Some(v) = c.trim().strip_prefix("name:") {
                    name = Some(v.trim().to_string());
                }
                continue;
            }
            if !t.is_empty() {
                lines.push((i + 1, raw));
            }
        }
        let Some(&(l0, first)) = lines.first() else {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                msg: "empty lattice file".into(),
            });
        };
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: l0,
            column: col_of(first, first.trim()),
            msg: format!("expected the rank, got {:?}", first.trim()),
        })?;
        if lines.len() != n + 1 {
            return Err(Error::Parse {
                line: lines.last().map_or(l0, |l| l.0),
                column: 1,
                msg: format!("expected {n} Gram rows, found {}", lines.len() - 1),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for &(ln, raw) in &lines[1..] {
            let mut row = Vec::with_capacity(n);
            for tok in raw.split_whitespace() {
                let x: i64 = tok.parse().map_err(|_| Error::Parse {
                    line: ln,
                    column: col_of(raw, tok),
                    msg: format!("bad integer {tok:?}"),
                })?;
                row.push(x);
            }
            if row.len() != n {
                return Err(Error::Parse {
                    line: ln,
                    column: 1,
                    msg: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        Ok((LatticeGram::new(rows)?, name))
    }
}

fn col_of(line: &str, tok: &str) -> usize {
    let off = tok.as_ptr() as usize - line.as_ptr() as usize;
    line[..off].chars().count() + 1
}

impl fmt::Debug for LatticeGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeGram{:?}", self.rows)
    }
}

/// Negates `x` if needed so its first nonzero entry is positive.
pub fn normalize_sign(x: &mut [i64]) {
    if x.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        for c in x.iter_mut() {
            *c = -*c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let l = e8();
        let (back, name) = LatticeGram::parse(&format!("# name: E8\n{}", l.to_text())).unwrap();
        assert_eq!(back, l);
        assert_eq!(name.as_deref(), Some("E8"));
    }

    #[test]
    fn asymmetric_gram_is_rejected() {
        assert!(matches!(
            LatticeGram::new(vec![vec![2, 1], vec![0, 2]]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            LatticeGram::parse("2\n2 1\n0 2\n"),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn indefinite_gram_is_rejected() {
        assert!(LatticeGram::new(vec![vec![1, 2], vec![2, 1]]).is_err());
    }

    #[test]
    fn parse_error_position() {
        match LatticeGram::parse("2\n1 0\n0 x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parity_and_det() {
        assert!(e8().is_even() && e8().is_unimodular());
        let z = z_n(4);
        assert!(!z.is_even() && z.is_unimodular());
        assert_eq!(d_n(4).det(), BigInt::from(4));
    }
}
