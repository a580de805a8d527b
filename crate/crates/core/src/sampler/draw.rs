use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Chooses an index from exact probabilities using a uniform 64-bit draw
/// `u`. The interval `[0, 2^64)` is cut at the cumulative sums, so index
/// `i` is returned for `u` with `C_{i-1} <= u / 2^64 < C_i`. The comparison
/// is done in integers over a common denominator; the only deviation from
/// the exact distribution is the rounding of each cut to the 2^64 grid.
pub fn pick(probs: &[Rational], u: u64) -> Result<usize> {
    if probs.is_empty() {
        return Err(Error::InvalidInput("no sites to choose from".into()));
    }
    if let Some(p) = probs.iter().find(|p| p.is_negative()) {
        return Err(Error::InvalidInput(format!("negative probability {p}")));
    }
    let common = probs.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let target = BigInt::from(u) * &common;
    let mut cumulative = BigInt::zero();
    let mut chosen = None;
    for (i, p) in probs.iter().enumerate() {
        cumulative += p.numer() * (&common / p.denom());
        if chosen.is_none() && target < (&cumulative << 64) {
            chosen = Some(i);
        }
    }
    if cumulative != common {
        return Err(Error::Consistency(format!(
            "site probabilities sum to {}, not 1",
            Rational::new(cumulative, common)?
        )));
    }
    Ok(chosen.expect("u < 2^64 lies below the final cut"))
}
