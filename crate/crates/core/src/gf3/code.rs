use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::gf3::{add, mul, neg, MonomialTransform, PackedWord};

/// A linear code over GF(3), stored as its reduced row echelon generator.
///
/// Two codes compare equal exactly when they are the same subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryCode {
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl TernaryCode {
    /// Builds a code from a generator matrix whose rows must be linearly
    /// independent over GF(3).
    pub fn from_generator(n: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let code = Self::span(n, rows)?;
        if code.dimension() != rows.len() {
            return Err(Error::Validation(format!(
                "generator rows are dependent: {} rows, rank {}",
                rows.len(),
                code.dimension()
            )));
        }
        Ok(code)
    }

    /// The subspace spanned by `rows`, which may be dependent.
    pub fn span(n: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut m = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n {
                return Err(invalid(format!(
                    "row of length {} in a length-{n} code",
                    r.len()
                )));
            }
            if let Some(&x) = r.iter().find(|&&x| x > 2) {
                return Err(invalid(format!("entry {x} is not in GF(3)")));
            }
            m.push(r.clone());
        }
        let pivots = rref(&mut m, n);
        m.truncate(pivots.len());
        Ok(Self { n, rows: m, pivots })
    }

    /// Parses `"1021"`-style rows.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|r| {
                r.bytes()
                    .map(|b| match b {
                        b'0'..=b'2' => Ok(b - b'0'),
                        _ => Err(invalid(format!("bad digit {:?}", b as char))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator(n, &parsed)
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0u8; n];
                r[i] = 1;
                r
            })
            .collect();
        Self {
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Rows of the reduced echelon generator matrix.
    pub fn generator(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut w = word.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                let f = neg(c);
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = add(*x, mul(f, r));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn dual(&self) -> TernaryCode {
        let is_pivot = {
            let mut v = vec![false; self.n];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let mut rows = Vec::with_capacity(self.n - self.dimension());
        for q in (0..self.n).filter(|&q| !is_pivot[q]) {
            let mut h = vec![0u8; self.n];
            h[q] = 1;
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                h[p] = neg(row[q]);
            }
            rows.push(h);
        }
        Self::span(self.n, &rows).expect("dual rows are well formed")
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.n && self.is_self_orthogonal()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i..].iter().all(|b| dot(a, b) == 0))
    }

    pub fn direct_sum(&self, other: &TernaryCode) -> TernaryCode {
        let n = self.n + other.n;
        let mut rows = Vec::with_capacity(self.dimension() + other.dimension());
        for r in &self.rows {
            let mut v = r.clone();
            v.resize(n, 0);
            rows.push(v);
        }
        for r in &other.rows {
            let mut v = vec![0u8; self.n];
            v.extend_from_slice(r);
            rows.push(v);
        }
        Self::span(n, &rows).expect("direct sum rows are well formed")
    }

    /// `C · P`
    pub fn transform(&self, p: &MonomialTransform) -> TernaryCode {
        assert_eq!(p.len(), self.n, "transform length mismatch");
        let rows: Vec<Vec<u8>> = self.rows.iter().map(|r| p.apply(r)).collect();
        Self::span(self.n, &rows).expect("transformed rows are well formed")
    }

    /// Rows packed into bit masks, for codes of length at most 64.
    pub fn packed_rows(&self) -> Result<Vec<PackedWord>> {
        if self.n > 64 {
            return Err(invalid(format!(
                "length {} exceeds the packed-word limit 64",
                self.n
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| PackedWord::from_digits(r))
            .collect())
    }

    /// Visits every codeword in ternary Gray-code order over the message
    /// space; each step adds one generator row to the previous word.
    pub fn for_each_codeword(&self, mut f: impl FnMut(PackedWord)) -> Result<()> {
        let rows = self.packed_rows()?;
        let k = rows.len();
        let total = 3usize
            .checked_pow(k as u32)
            .ok_or(Error::DimensionTooLarge { dim: k, limit: 39 })?;
        let mut word = PackedWord::ZERO;
        f(word);
        for t in 1..total {
            let mut i = 0;
            let mut s = t;
            while s % 3 == 0 {
                s /= 3;
                i += 1;
            }
            word = word.add(rows[i]);
            f(word);
        }
        Ok(())
    }

    pub fn contains_all_ones(&self) -> bool {
        self.contains(&vec![1u8; self.n])
    }

    /// Generator of the code restricted (punctured) to `coords`, in order.
    pub fn restrict(&self, coords: &[usize]) -> TernaryCode {
        let rows: Vec<Vec<u8>> = self
            .rows
            .iter()
            .map(|r| coords.iter().map(|&c| r[c]).collect())
            .collect();
        Self::span(coords.len(), &rows).expect("restricted rows are well formed")
    }

    /// Renders rows as digit strings.
    pub fn rows_as_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| char::from(b'0' + x)).collect())
            .collect()
    }

    /// Code file body: `n k` followed by the echelon generator rows.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.dimension());
        for r in self.rows_as_strings() {
            s.push_str(&r);
            s.push('\n');
        }
        s
    }

    /// Parses the code file format. `#` lines are comments and a
    /// `# name:` line names the code. Rows may contain spaces.
    pub fn parse(text: &str) -> Result<(TernaryCode, Option<String>)> {
        let mut name = None;
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let t = raw.trim();
            if let Some(c) = t.strip_prefix('#') {
                if let Some(v) = c.trim().strip_prefix("name:") {
                    name = Some(v.trim().to_string());
                }
            } else if !t.is_empty() {
                lines.push((i + 1, raw));
            }
        }
        let parse_err = |line, column, msg: String| Error::Parse { line, column, msg };
        let Some(&(l0, header)) = lines.first() else {
            return Err(parse_err(1, 1, "empty code file".into()));
        };
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| {
                    parse_err(l0, 1, format!("expected `n k`, got {:?}", header.trim()))
                })
            })
            .collect::<Result<_>>()?;
        let [n, k] = dims[..] else {
            return Err(parse_err(
                l0,
                1,
                format!("expected `n k`, got {:?}", header.trim()),
            ));
        };
        if lines.len() != k + 1 {
            return Err(parse_err(
                lines.last().map_or(l0, |l| l.0),
                1,
                format!("expected {k} generator rows, found {}", lines.len() - 1),
            ));
        }
        let mut rows = Vec::with_capacity(k);
        for &(ln, raw) in &lines[1..] {
            let mut row = Vec::with_capacity(n);
            for (col, ch) in raw.chars().enumerate() {
                match ch {
                    '0'..='2' => row.push(ch as u8 - b'0'),
                    c if c.is_whitespace() => {}
                    c => {
                        return Err(parse_err(
                            ln,
                            col + 1,
                            format!("{c:?} is not a GF(3) digit"),
                        ))
                    }
                }
            }
            if row.len() != n {
                return Err(parse_err(
                    ln,
                    1,
                    format!("expected {n} digits, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        Ok((Self::from_generator(n, &rows)?, name))
    }
}

impl fmt::Debug for TernaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryCode[{}, {}]", self.n, self.dimension())?;
        for r in self.rows_as_strings() {
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

pub fn dot(a: &[u8], b: &[u8]) -> u8 {
    let s: u32 = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| u32::from(x) * u32::from(y))
        .sum();
    (s % 3) as u8
}

/// In-place reduced row echelon form; returns pivot columns. Zero rows end
/// up at the bottom.
pub(crate) fn rref(m: &mut [Vec<u8>], n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, p);
        if m[r][col] == 2 {
            for x in m[r].iter_mut() {
                *x = mul(*x, 2);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = neg(row[col]);
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = add(*x, mul(f, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}
