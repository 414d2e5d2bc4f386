use crate::error::{invalid, Result};
use crate::lattice::linalg::identity;
use crate::lattice::neighbor::span_euclidean;
use crate::lattice::LatticeGram;

pub fn z_n(n: usize) -> LatticeGram {
    LatticeGram::new_unchecked(identity(n))
}

fn dn_rows(n: usize, scale: i64) -> Vec<Vec<i64>> {
    let mut rows = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let mut r = vec![0; n];
        r[i] = scale;
        r[i + 1] = -scale;
        rows.push(r);
    }
    let mut r = vec![0; n];
    r[n - 2] = scale;
    r[n - 1] = scale;
    rows.push(r);
    rows
}

/// The checkerboard lattice `{x ∈ Zⁿ : Σx even}`.
pub fn d_n(n: usize) -> LatticeGram {
    assert!(n >= 2, "D_n needs n >= 2");
    span_euclidean(&dn_rows(n, 1), 1)
        .expect("D_n is integral")
        .lattice
}

/// `Dₙ ∪ (Dₙ + (½,…,½))`; integral for `n ≡ 0 (mod 4)`.
pub fn d_n_plus(n: usize) -> Result<LatticeGram> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(invalid(format!(
            "D_n^+ is integral only for n ≡ 0 (mod 4), got {n}"
        )));
    }
    let mut gens = dn_rows(n, 2);
    gens.push(vec![1; n]);
    Ok(span_euclidean(&gens, 4)?.lattice)
}

pub fn e8() -> LatticeGram {
    d_n_plus(8).expect("n = 8")
}

/// `(D₈ ⊕ D₈)⁺` with glue `(s, v)` and `(v, s)`: odd unimodular of rank 16.
pub fn d8_pair_plus() -> LatticeGram {
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for r in dn_rows(8, 2) {
        let mut a = r.clone();
        a.extend([0; 8]);
        gens.push(a);
        let mut b = vec![0; 8];
        b.extend(r);
        gens.push(b);
    }
    let s = [1i64; 8];
    let v = [2i64, 0, 0, 0, 0, 0, 0, 0];
    gens.push(s.iter().chain(&v).copied().collect());
    gens.push(v.iter().chain(&s).copied().collect());
    span_euclidean(&gens, 4).expect("glue is integral").lattice
}
