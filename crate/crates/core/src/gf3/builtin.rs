//! Named codes used throughout the library and its tests.

use std::sync::OnceLock;

use crate::gf3::{neg, weight_distribution, TernaryCode};

/// The self-dual [4,2,3] code.
pub fn e4() -> TernaryCode {
    TernaryCode::from_strs(&["1021", "0122"]).expect("valid generator")
}

/// Direct sum of `m` copies of E₄.
pub fn e4_power(m: usize) -> TernaryCode {
    let mut c = TernaryCode::zero(0);
    for _ in 0..m {
        c = c.direct_sum(&e4());
    }
    c
}

/// Extended ternary Golay code [12,6,6], realised as the symmetry code for q = 5.
pub fn g12() -> TernaryCode {
    symmetry_code(5)
}

/// Pless symmetry code of length 24 (q = 11).
pub fn p24() -> TernaryCode {
    static CODE: OnceLock<TernaryCode> = OnceLock::new();
    CODE.get_or_init(|| symmetry_code(11)).clone()
}

/// Extended quadratic residue code of length 24 (p = 23).
pub fn qr24() -> TernaryCode {
    static CODE: OnceLock<TernaryCode> = OnceLock::new();
    CODE.get_or_init(|| extended_qr(23)).clone()
}

/// The [24,12,6] code with generator `(G11 O; O P13; glue)`; its twisted
/// even neighbor has root system A₂₄.
pub fn eq2_code() -> TernaryCode {
    const G11: [&str; 5] = [
        "10000201221",
        "01000210122",
        "00100221012",
        "00010222101",
        "00001212210",
    ];
    const P13: [&str; 6] = [
        "1000002212001",
        "0100001012202",
        "0010002010221",
        "0001001022021",
        "0000101220201",
        "0000011210022",
    ];
    let zeros = |k: usize| "0".repeat(k);
    let mut rows: Vec<String> = G11.iter().map(|r| format!("{r}{}", zeros(13))).collect();
    rows.extend(P13.iter().map(|r| format!("{}{r}", zeros(11))));
    rows.push("000000111111101000001000".to_string());
    let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    TernaryCode::from_strs(&refs).expect("valid generator")
}

fn quadratic_character(a: i64, q: i64) -> u8 {
    let a = a.rem_euclid(q);
    if a == 0 {
        0
    } else if (1..q).any(|x| (x * x) % q == a) {
        1
    } else {
        2
    }
}

/// `[I | S]` with `S` the bordered Paley matrix of order `q + 1`;
/// self-dual because `S Sᵀ = qI ≡ −I (mod 3)` for `q ≡ −1 (mod 3)`.
fn symmetry_code(q: i64) -> TernaryCode {
    let m = (q + 1) as usize;
    let border = quadratic_character(-1, q);
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut r = vec![0u8; 2 * m];
        r[i] = 1;
        for j in 0..m {
            r[m + j] = match (i, j) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => border,
                _ => quadratic_character(j as i64 - i as i64, q),
            };
        }
        rows.push(r);
    }
    TernaryCode::from_generator(2 * m, &rows).expect("identity block gives full rank")
}

/// Searches the span of cyclic shifts of `a·δ₀ + b·[residues] + c·[non-residues]`
/// for a code of dimension `(p+1)/2`, then extends by a weighted parity
/// coordinate, keeping the first candidate that is self-dual with the
/// largest minimum weight.
fn extended_qr(p: usize) -> TernaryCode {
    let target = p.div_ceil(2);
    let mut best: Option<(usize, TernaryCode)> = None;
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                let seed: Vec<u8> = (0..p)
                    .map(|i| match quadratic_character(i as i64, p as i64) {
                        0 => a,
                        1 => b,
                        _ => c,
                    })
                    .collect();
                let shifts: Vec<Vec<u8>> = (0..p)
                    .map(|s| (0..p).map(|i| seed[(i + p - s) % p]).collect())
                    .collect();
                let Ok(cyclic) = TernaryCode::span(p, &shifts) else {
                    continue;
                };
                if cyclic.dimension() != target {
                    continue;
                }
                for lambda in 1..3u8 {
                    let rows: Vec<Vec<u8>> = cyclic
                        .generator()
                        .iter()
                        .map(|r| {
                            let s = r.iter().map(|&x| u32::from(x)).sum::<u32>() % 3;
                            let mut v = r.clone();
                            v.push(crate::gf3::mul(neg(s as u8), lambda));
                            v
                        })
                        .collect();
                    let ext = TernaryCode::span(p + 1, &rows).expect("well formed");
                    if !ext.is_self_dual() {
                        continue;
                    }
                    let d = weight_distribution(&ext)
                        .ok()
                        .and_then(|w| w.minimum_weight())
                        .unwrap_or(0);
                    if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
                        best = Some((d, ext));
                    }
                }
            }
        }
    }
    best.expect("an extended QR code exists for p ≡ −1 (mod 12)")
        .1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3::{is_extremal, weight_distribution};

    #[test]
    fn e4_rows_are_as_printed() {
        assert_eq!(e4().rows_as_strings(), vec!["1021", "0122"]);
    }

    #[test]
    fn g12_is_extremal_self_dual() {
        let c = g12();
        assert!(c.is_self_dual());
        assert_eq!(weight_distribution(&c).unwrap().minimum_weight(), Some(6));
    }

    #[test]
    fn eq2_code_contains_glue_row_and_is_self_dual() {
        let c = eq2_code();
        assert_eq!(c.length(), 24);
        assert!(c.is_self_dual());
        let glue: Vec<u8> = "000000111111101000001000"
            .bytes()
            .map(|b| b - b'0')
            .collect();
        assert!(c.contains(&glue));
        assert!(!is_extremal(&c).unwrap());
        assert_eq!(weight_distribution(&c).unwrap().minimum_weight(), Some(6));
    }

    #[test]
    fn length24_extremal_codes() {
        for c in [qr24(), p24()] {
            assert!(c.is_self_dual());
            assert!(is_extremal(&c).unwrap());
        }
    }
}
