use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::gf3::{decompose, weight_distribution, TernaryCode};
use crate::util::{big_to_string, factorial};

/// Number of distinct self-dual codes of length `n`:
/// `N(n) = 2 ∏_{i=1}^{(n−2)/2} (3^i + 1)`.
pub fn mass_number(n: usize) -> Result<BigUint> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(invalid(format!(
            "self-dual ternary codes need n ≡ 0 (mod 4), got {n}"
        )));
    }
    let mut acc = BigUint::from(2u32);
    let mut pow = BigUint::one();
    for _ in 1..=(n - 2) / 2 {
        pow *= 3u32;
        acc *= &pow + 1u32;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct MassEntry {
    pub code: TernaryCode,
    pub aut_order: BigUint,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MassReport {
    pub length: usize,
    /// `2^n n! / #Aut` per code, decimal.
    pub contributions: Vec<String>,
    pub total: String,
    pub expected: String,
    pub pass: bool,
}

/// Sums `2^n · n! / #Aut(C)` and compares with `N(n)`.
pub fn mass_check(entries: &[MassEntry], n: usize) -> Result<MassReport> {
    let expected = mass_number(n)?;
    let group = (BigUint::one() << n) * factorial(n);
    let mut total = BigRational::zero();
    let mut contributions = Vec::with_capacity(entries.len());
    for e in entries {
        if e.code.length() != n {
            return Err(invalid(format!(
                "code of length {} in a length-{n} mass check",
                e.code.length()
            )));
        }
        if e.aut_order.is_zero() {
            return Err(invalid("automorphism group order 0"));
        }
        let c = BigRational::new(group.clone().into(), e.aut_order.clone().into());
        contributions.push(rational_to_string(&c));
        total += c;
    }
    let pass = total == BigRational::from_integer(expected.clone().into());
    Ok(MassReport {
        length: n,
        contributions,
        total: rational_to_string(&total),
        expected: big_to_string(&expected),
        pass,
    })
}

/// `T_i = Σ 1/#Aut(C)` over indecomposable codes with exactly `2i`
/// codewords of weight 3.
pub fn t_statistic(entries: &[MassEntry], i: usize) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for e in entries {
        if decompose(&e.code).len() != 1 {
            continue;
        }
        if weight_distribution(&e.code)?.beta(3) != 2 * i as u64 {
            continue;
        }
        sum += BigRational::new(1.into(), e.aut_order.clone().into());
    }
    Ok(sum)
}

fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
