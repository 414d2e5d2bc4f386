use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::TernaryCode;

/// Largest dimension for which full codeword enumeration is attempted.
pub const MAX_ENUM_DIM: usize = 16;

/// Codeword counts `β_0..β_n` by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution(pub Vec<u64>);

impl WeightDistribution {
    pub fn beta(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Least positive weight with a nonzero count.
    pub fn minimum_weight(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &b)| b > 0)
            .map(|(i, _)| i)
    }

    pub fn max_weight(&self) -> usize {
        self.0.iter().rposition(|&b| b > 0).unwrap_or(0)
    }
}

pub fn weight_distribution(code: &TernaryCode) -> Result<WeightDistribution> {
    let k = code.dimension();
    if k > MAX_ENUM_DIM {
        return Err(Error::DimensionTooLarge {
            dim: k,
            limit: MAX_ENUM_DIM,
        });
    }
    let mut counts = vec![0u64; code.length() + 1];
    code.for_each_codeword(|w| counts[w.weight() as usize] += 1)?;
    Ok(WeightDistribution(counts))
}

pub fn minimum_weight(code: &TernaryCode) -> Result<Option<usize>> {
    Ok(weight_distribution(code)?.minimum_weight())
}

/// `d = 3⌊n/12⌋ + 3` for a self-dual code.
pub fn is_extremal(code: &TernaryCode) -> Result<bool> {
    if !code.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let bound = 3 * (code.length() / 12) + 3;
    Ok(minimum_weight(code)? == Some(bound))
}
