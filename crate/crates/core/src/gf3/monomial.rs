use serde::{Deserialize, Serialize};

use crate::gf3::mul;

/// A signed permutation of coordinates: `x ↦ xP` sends coordinate `i` to
/// position `perm[i]` multiplied by `signs[i]` (1 or 2 = −1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialTransform {
    perm: Vec<usize>,
    signs: Vec<u8>,
}

impl MonomialTransform {
    pub fn new(perm: Vec<usize>, signs: Vec<u8>) -> Option<Self> {
        let n = perm.len();
        if signs.len() != n || signs.iter().any(|&s| s != 1 && s != 2) {
            return None;
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(Self { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn diagonal(signs: Vec<u8>) -> Option<Self> {
        Self::new((0..signs.len()).collect(), signs)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[u8] {
        &self.signs
    }

    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        let mut y = vec![0u8; x.len()];
        for (i, &v) in x.iter().enumerate() {
            y[self.perm[i]] = mul(v, self.signs[i]);
        }
        y
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &MonomialTransform) -> MonomialTransform {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let signs = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| mul(s, other.signs[p]))
            .collect();
        MonomialTransform { perm, signs }
    }

    pub fn inverse(&self) -> MonomialTransform {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            // sign² = 1 over GF(3)
            signs[self.perm[i]] = self.signs[i];
        }
        MonomialTransform { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    pub fn order(&self) -> u64 {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = g.then(self);
            k += 1;
        }
        k
    }

    /// Image of signed point `2i + (s−1)` (coordinate `i` carrying value `s`).
    pub(crate) fn signed_point_image(&self, point: usize) -> usize {
        let i = point / 2;
        let s = (point % 2) as u8 + 1;
        2 * self.perm[i] + (mul(s, self.signs[i]) - 1) as usize
    }

    pub(crate) fn from_signed_points(images: &[usize]) -> Option<Self> {
        let n = images.len() / 2;
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (images[2 * i], images[2 * i + 1]);
            if a / 2 != b / 2 || a == b {
                return None;
            }
            perm.push(a / 2);
            signs.push((a % 2) as u8 + 1);
        }
        Self::new(perm, signs)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    pub(crate) fn random_transform(n: usize, seed: u64) -> MonomialTransform {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let signs = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        MonomialTransform::new(perm, signs).unwrap()
    }

    proptest! {
        #[test]
        fn group_laws(seed in 0u64..1000, x in proptest::collection::vec(0u8..3, 7)) {
            let a = random_transform(7, seed);
            let b = random_transform(7, seed + 7919);
            prop_assert_eq!(a.then(&b).apply(&x), b.apply(&a.apply(&x)));
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert!(a.inverse().then(&a).is_identity());
        }
    }

    #[test]
    fn signed_points_round_trip() {
        let a = random_transform(6, 3);
        let images: Vec<usize> = (0..12).map(|p| a.signed_point_image(p)).collect();
        assert_eq!(MonomialTransform::from_signed_points(&images).unwrap(), a);
    }

    #[test]
    fn order_of_sign_flip() {
        let t = MonomialTransform::diagonal(vec![2, 1, 1]).unwrap();
        assert_eq!(t.order(), 2);
    }
}
