//! Ternary codes: duals, weights, monomial equivalence, automorphisms,
//! decomposition and mass bookkeeping.

mod builtin;
mod code;
mod decompose;
mod equiv;
mod mass;
mod monomial;
mod weight;

pub use builtin::{e4, e4_power, eq2_code, g12, p24, qr24};
pub use code::{dot, TernaryCode};
pub use decompose::{decompose, Component};
pub use equiv::{are_equivalent, automorphism_group, AutGroupDescription, EquivOptions};
pub use mass::{mass_check, mass_number, t_statistic, MassEntry, MassReport};
pub use monomial::MonomialTransform;
pub use weight::{
    is_extremal, minimum_weight, weight_distribution, WeightDistribution, MAX_ENUM_DIM,
};

#[inline]
pub fn add(a: u8, b: u8) -> u8 {
    let s = a + b;
    if s >= 3 {
        s - 3
    } else {
        s
    }
}

#[inline]
pub fn mul(a: u8, b: u8) -> u8 {
    (a * b) % 3
}

#[inline]
pub fn neg(a: u8) -> u8 {
    if a == 0 {
        0
    } else {
        3 - a
    }
}

/// Maps an integer to its residue in {0,1,2}.
#[inline]
pub fn reduce(x: i64) -> u8 {
    x.rem_euclid(3) as u8
}

/// A word of length ≤ 64 in bit-sliced form: `ones` marks coordinates
/// equal to 1, `twos` marks coordinates equal to 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedWord {
    pub ones: u64,
    pub twos: u64,
}

impl PackedWord {
    pub const ZERO: PackedWord = PackedWord { ones: 0, twos: 0 };

    pub fn from_digits(d: &[u8]) -> Self {
        let mut w = Self::ZERO;
        for (i, &x) in d.iter().enumerate() {
            match x {
                1 => w.ones |= 1 << i,
                2 => w.twos |= 1 << i,
                _ => {}
            }
        }
        w
    }

    pub fn to_digits(self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.get(i)).collect()
    }

    #[inline]
    pub fn get(self, i: usize) -> u8 {
        if self.ones >> i & 1 == 1 {
            1
        } else if self.twos >> i & 1 == 1 {
            2
        } else {
            0
        }
    }

    #[inline]
    pub fn add(self, b: PackedWord) -> PackedWord {
        let za = !(self.ones | self.twos);
        let zb = !(b.ones | b.twos);
        PackedWord {
            ones: (za & b.ones) | (self.ones & zb) | (self.twos & b.twos),
            twos: (za & b.twos) | (self.twos & zb) | (self.ones & b.ones),
        }
    }

    #[inline]
    pub fn neg(self) -> PackedWord {
        PackedWord {
            ones: self.twos,
            twos: self.ones,
        }
    }

    #[inline]
    pub fn support(self) -> u64 {
        self.ones | self.twos
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.support().count_ones()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn packed_add_matches_digitwise(a in proptest::collection::vec(0u8..3, 20),
                                        b in proptest::collection::vec(0u8..3, 20)) {
            let s = PackedWord::from_digits(&a).add(PackedWord::from_digits(&b));
            let expect: Vec<u8> = a.iter().zip(&b).map(|(&x, &y)| add(x, y)).collect();
            prop_assert_eq!(s.to_digits(20), expect);
        }
    }
}
