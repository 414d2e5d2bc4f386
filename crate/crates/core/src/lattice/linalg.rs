//! Exact integer and rational matrix routines used by the lattice code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn from_big(m: &[Vec<BigInt>]) -> Result<IntMatrix> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or(Error::Overflow("matrix entry exceeds i64"))
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

pub fn transpose(m: &[Vec<i64>]) -> IntMatrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j]).collect())
        .collect()
}

/// `a · b` with overflow checking.
pub fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<IntMatrix> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix shape mismatch");
            (0..cols)
                .map(|j| {
                    let s: i128 = (0..inner)
                        .map(|k| i128::from(row[k]) * i128::from(b[k][j]))
                        .sum();
                    i64::try_from(s).map_err(|_| Error::Overflow("matrix product exceeds i64"))
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(x: &[i64], m: &[Vec<i64>]) -> Result<Vec<i64>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            let s: i128 = x
                .iter()
                .zip(m)
                .map(|(&a, r)| i128::from(a) * i128::from(r[j]))
                .sum();
            i64::try_from(s).map_err(|_| Error::Overflow("vector image exceeds i64"))
        })
        .collect()
}

/// Bareiss fraction-free determinant.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row Hermite normal form of the lattice spanned by the rows of `m`;
/// returns the nonzero rows (a basis of the row lattice).
pub fn hnf(m: &[Vec<i64>]) -> Result<IntMatrix> {
    from_big(&hnf_big(to_big(m)))
}

pub fn hnf_big(mut a: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // gcd-combine every lower row into row r
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            if a[r][c].is_zero() {
                a.swap(r, i);
                continue;
            }
            let (x, y) = (a[r][c].clone(), a[i][c].clone());
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (xg, yg) = (&x / &g, &y / &g);
            let (top, bot): (Vec<BigInt>, Vec<BigInt>) = a[r]
                .iter()
                .zip(&a[i])
                .map(|(p, q)| (&s * p + &t * q, &xg * q - &yg * p))
                .unzip();
            a[r] = top;
            a[i] = bot;
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let piv = a[r][c].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&piv);
            if !q.is_zero() {
                let row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&row) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Exact inverse over the rationals, or `None` when singular.
pub fn inverse_rational(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `a⁻¹ · b` when it is an integer matrix.
pub fn solve_integral(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<IntMatrix> {
    let inv = inverse_rational(a)?;
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = Vec::with_capacity(inv.len());
    for row in &inv {
        let mut r = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut s = BigRational::zero();
            for (k, x) in row.iter().enumerate() {
                if b[k][j] != 0 {
                    s += x * BigRational::from_integer(b[k][j].into());
                }
            }
            if !s.is_integer() {
                return None;
            }
            r.push(s.to_integer().to_i64()?);
        }
        out.push(r);
    }
    Some(out)
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<i64>]) -> usize {
    hnf_big(to_big(m)).len()
}

/// Integral LLL data for a positive definite Gram matrix: leading minors
/// `d[0..=n]` and the scaled Gram–Schmidt coefficients `λ[k][j] = d[j+1]·μ[k][j]`.
pub struct GsData {
    pub d: Vec<BigInt>,
    pub lambda: Vec<Vec<BigInt>>,
}

pub fn integral_gram_schmidt(g: &[Vec<BigInt>]) -> Result<GsData> {
    let n = g.len();
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::one();
    let mut lambda = vec![vec![BigInt::zero(); n]; n];
    for k in 0..n {
        gs_row(g, &mut d, &mut lambda, k)?;
    }
    Ok(GsData { d, lambda })
}

fn gs_row(g: &[Vec<BigInt>], d: &mut [BigInt], lambda: &mut [Vec<BigInt>], k: usize) -> Result<()> {
    for j in 0..=k {
        let mut u = g[k][j].clone();
        for i in 0..j {
            u = (&d[i + 1] * &u - &lambda[k][i] * &lambda[j][i]) / &d[i];
        }
        if j < k {
            lambda[k][j] = u;
        } else {
            if !u.is_positive() {
                return Err(Error::Validation(
                    "Gram matrix is not positive definite".into(),
                ));
            }
            d[k + 1] = u;
        }
    }
    Ok(())
}

/// Integral LLL (δ = 99/100) on a Gram matrix. Returns `(H, G')` with
/// `G' = H G Hᵀ` and `H` unimodular.
pub fn lll_gram(gram: &[Vec<i64>]) -> Result<(IntMatrix, IntMatrix)> {
    let n = gram.len();
    let mut g = to_big(gram);
    let mut h: Vec<Vec<BigInt>> = to_big(&identity(n));
    if n <= 1 {
        return Ok((identity(n), gram.to_vec()));
    }
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::one();
    let mut lambda = vec![vec![BigInt::zero(); n]; n];
    gs_row(&g, &mut d, &mut lambda, 0)?;
    let mut kmax = 0;
    let mut k = 1;
    while k < n {
        if k > kmax {
            kmax = k;
            gs_row(&g, &mut d, &mut lambda, k)?;
        }
        redi(&mut g, &mut h, &d, &mut lambda, k, k - 1);
        let lhs = BigInt::from(100) * &d[k + 1] * &d[k - 1];
        let rhs = BigInt::from(99) * &d[k] * &d[k]
            - BigInt::from(100) * &lambda[k][k - 1] * &lambda[k][k - 1];
        if lhs < rhs {
            swapi(&mut g, &mut h, &mut d, &mut lambda, k, kmax);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                redi(&mut g, &mut h, &d, &mut lambda, k, l);
            }
            k += 1;
        }
    }
    Ok((from_big(&h)?, from_big(&g)?))
}

fn redi(
    g: &mut [Vec<BigInt>],
    h: &mut [Vec<BigInt>],
    d: &[BigInt],
    lambda: &mut [Vec<BigInt>],
    k: usize,
    l: usize,
) {
    let two_l: BigInt = &lambda[k][l] * 2;
    if two_l.abs() <= d[l + 1] {
        return;
    }
    // q = round(λ / d)
    let q = (&two_l + &d[l + 1]).div_floor(&(&d[l + 1] * 2));
    let hl = h[l].clone();
    for (x, y) in h[k].iter_mut().zip(&hl) {
        *x -= &q * y;
    }
    let n = g.len();
    let gkk = &g[k][k] - &q * &g[k][l] * 2 + &q * &q * &g[l][l];
    for i in 0..n {
        if i != k {
            let v = &g[k][i] - &q * &g[l][i];
            g[k][i] = v.clone();
            g[i][k] = v;
        }
    }
    g[k][k] = gkk;
    lambda[k][l] -= &q * &d[l + 1];
    for i in 0..l {
        let v = &q * &lambda[l][i];
        lambda[k][i] -= v;
    }
}

fn swapi(
    g: &mut [Vec<BigInt>],
    h: &mut [Vec<BigInt>],
    d: &mut [BigInt],
    lambda: &mut [Vec<BigInt>],
    k: usize,
    kmax: usize,
) {
    h.swap(k, k - 1);
    g.swap(k, k - 1);
    for row in g.iter_mut() {
        row.swap(k, k - 1);
    }
    for j in 0..k - 1 {
        let t = lambda[k][j].clone();
        lambda[k][j] = lambda[k - 1][j].clone();
        lambda[k - 1][j] = t;
    }
    let lam = lambda[k][k - 1].clone();
    let b = (&d[k - 1] * &d[k + 1] + &lam * &lam) / &d[k];
    for i in k + 1..=kmax {
        let t = lambda[i][k].clone();
        lambda[i][k] = (&d[k + 1] * &lambda[i][k - 1] - &lam * &t) / &d[k];
        lambda[i][k - 1] = (&b * &t + &lam * &lambda[i][k]) / &d[k + 1];
    }
    d[k] = b;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_construction_a_generators() {
        // E4 lifts plus 3·unit vectors span an index-9 sublattice of Z^4
        let m = vec![
            vec![1, 0, 2, 1],
            vec![0, 1, 2, 2],
            vec![3, 0, 0, 0],
            vec![0, 3, 0, 0],
            vec![0, 0, 3, 0],
            vec![0, 0, 0, 3],
        ];
        let h = hnf(&m).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(det(&h).abs(), BigInt::from(9));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(det(&[vec![2, 1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn lll_keeps_gram_and_is_unimodular() {
        // a skewed basis of Z^3
        let b = vec![vec![1, 5, 7], vec![0, 1, 9], vec![0, 0, 1]];
        let g = mul(&b, &transpose(&b)).unwrap();
        let (h, red) = lll_gram(&g).unwrap();
        assert_eq!(mul(&mul(&h, &g).unwrap(), &transpose(&h)).unwrap(), red);
        assert_eq!(det(&h).abs(), BigInt::one());
        for i in 0..3 {
            assert_eq!(red[i][i], 1);
        }
    }

    #[test]
    fn integral_solve() {
        let a = vec![vec![2, 0], vec![0, 1]];
        assert_eq!(
            solve_integral(&a, &[vec![4, 2], vec![1, 1]]),
            Some(vec![vec![2, 1], vec![1, 1]])
        );
        assert_eq!(solve_integral(&a, &[vec![1, 0], vec![0, 1]]), None);
    }
}
