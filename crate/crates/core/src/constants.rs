//! Volume sums over subsets of the naturals and their decimal digits.
//!
//! Every sum here is an exact partial sum over the members up to some bound.
//! The limits (the constant for the naturals and its relatives) are
//! approached from below; no tail is extrapolated.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{decimal_render, e_interval};
use crate::error::Result;
use crate::metrics::euclidean_volume;
use crate::numsys::{SubsetKind, SubsetSpec};
use crate::sequence::PolytopeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeSum {
    pub subset: SubsetKind,
    pub upto: u64,
    #[serde(with = "rational_string")]
    pub value: BigRational,
    pub terms: usize,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

/// Running sums `(M, sum_{members <= M} vol(P_M))`, one entry per member.
pub fn volume_partial_sums(subset: &SubsetSpec, upto: u64) -> Result<Vec<(u64, BigRational)>> {
    let mut seq = PolytopeSequence::new(subset.clone());
    let mut acc = BigRational::zero();
    let mut out = Vec::new();
    seq.advance_to(upto, |m, p| {
        acc += euclidean_volume(p);
        out.push((m, acc.clone()));
        Ok(())
    })?;
    Ok(out)
}

/// Sum of the Euclidean volumes of the subset's polytopes over its members
/// up to `upto`, each member's polytope built from the members below it.
pub fn volume_sum(subset: &SubsetSpec, upto: u64) -> Result<VolumeSum> {
    let sums = volume_partial_sums(subset, upto)?;
    Ok(VolumeSum {
        subset: subset.kind(),
        upto,
        terms: sums.len(),
        value: sums.last().map_or_else(BigRational::zero, |(_, v)| v.clone()),
    })
}

/// Truncated decimal digits of the naturals' partial sum up to `upto`.
///
/// This is a partial sum; the limit is larger.
pub fn rho_digits(upto: u64, digits: usize) -> Result<String> {
    Ok(decimal_render(&volume_sum(&SubsetSpec::naturals(), upto)?.value, digits))
}

/// `value / e` truncated to `digits` fractional digits.
///
/// `e` is enclosed in a rational interval which is tightened until both ends
/// of the quotient interval truncate to the same digits, so every printed
/// digit is exact for the given partial sum.
pub fn ratio_to_e(value: &BigRational, digits: usize) -> String {
    let mut k = digits as u64 + 8;
    loop {
        let (lo, hi) = e_interval(k);
        let a = decimal_render(&(value / &hi), digits);
        if value.is_zero() || a == decimal_render(&(value / &lo), digits) {
            return a;
        }
        k += 8;
    }
}

/// Whether `|value - e| <= bound`, decided with an enclosure of `e`.
pub fn within_of_e(value: &BigRational, bound: &BigRational) -> bool {
    let (lo, hi) = e_interval(60);
    value >= &(&hi - bound) && value <= &(&lo + bound)
}

/// Outcome of the digit-stability heuristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stability {
    pub upto: u64,
    pub compared_with: u64,
    /// Leading fractional digits that agree between the two partial sums.
    pub stable_digits: usize,
}

/// Bound used as the comparison point: `ceil(1.25 * upto)`.
pub fn stability_reference(upto: u64) -> u64 {
    upto + upto.div_ceil(4)
}

/// Heuristic digit claim: the fractional digits of the partial sum at
/// `upto` that do not change when `upto` grows by a quarter. Not a proof.
pub fn stable_digits(subset: &SubsetSpec, upto: u64, max_digits: usize) -> Result<Stability> {
    let further = stability_reference(upto);
    let sums = volume_partial_sums(subset, further)?;
    let at = |n: u64| {
        sums.iter()
            .take_while(|(m, _)| *m <= n)
            .last()
            .map_or_else(BigRational::zero, |(_, v)| v.clone())
    };
    let a = decimal_render(&at(upto), max_digits);
    let b = decimal_render(&at(further), max_digits);
    let common = a.chars().zip(b.chars()).take_while(|(x, y)| x == y).count();
    let point = a.find('.').unwrap_or(a.len());
    Ok(Stability {
        upto,
        compared_with: further,
        stable_digits: common.saturating_sub(point + 1).min(max_digits),
    })
}

/// The fitted curve `2 (ln N_v)^sqrt(n)` relating volume to vertex count.
/// Floating point, for plotting only.
pub fn correlation_estimate(n_vertices: u64, n: usize) -> f64 {
    2.0 * (n_vertices as f64).ln().powf((n as f64).sqrt())
}

/// Exact value of `sum_{j=0}^{k} 1/j!`.
pub fn exp_partial_sum(k: u64) -> BigRational {
    let mut fact = BigInt::from(1);
    let mut acc = BigRational::zero();
    for j in 0..=k {
        if j > 0 {
            fact *= j;
        }
        acc += BigRational::new(BigInt::from(1), fact.clone());
    }
    acc
}
