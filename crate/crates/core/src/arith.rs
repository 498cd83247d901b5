//! Exact integer and rational kernel.
//!
//! Everything here is exact: determinants and ranks use fraction-free
//! elimination, decimals are produced by long division, and the only
//! approximation of `e` is an explicit two-sided rational interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Determinant of a square integer matrix by Bareiss elimination.
///
/// The empty (0 x 0) matrix has determinant 1.
pub fn int_det(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let k = m.len();
    if m.iter().any(|row| row.len() != k) {
        return Err(Error::domain(format!("determinant of a non-square {k}-row matrix")));
    }
    if k == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for col in 0..k - 1 {
        if a[col][col].is_zero() {
            match (col + 1..k).find(|&r| !a[r][col].is_zero()) {
                Some(r) => {
                    a.swap(col, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in col + 1..k {
            for j in col + 1..k {
                let v = &a[i][j] * &a[col][col] - &a[i][col] * &a[col][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    let det = a[k - 1][k - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Convenience wrapper over [`int_det`] for machine-integer input.
pub fn int_det_i64(m: &[Vec<i64>]) -> Result<BigInt> {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    int_det(&big)
}

/// Rank of an integer matrix (rows may have any common length).
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in col + 1..cols {
                let v = &a[i][j] * &a[r][col] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// Affine rank of a point set: the dimension of its affine hull, or `None`
/// for the empty set.
pub fn affine_rank(points: &[&[i64]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let rows: Vec<Vec<i64>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&rows))
}

/// The primitive integer generator of a one-dimensional right kernel.
///
/// Returns `None` unless the kernel of `rows` (each of length `cols`) has
/// dimension exactly one. The sign is normalized so the first non-zero
/// entry is positive.
pub fn primitive_kernel_vector(rows: &[Vec<i64>], cols: usize) -> Option<Vec<BigInt>> {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); cols];
    v[free] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][free].clone();
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    Some(ints)
}

/// Decimal expansion of `q` truncated toward zero after `digits` fractional
/// digits. Negative values carry a leading `-`.
pub fn decimal_render(q: &BigRational, digits: usize) -> String {
    let mut out = String::new();
    if q.is_negative() {
        out.push('-');
    }
    let num = q.numer().abs();
    let den = q.denom().clone();
    let (int_part, rem) = num.div_rem(&den);
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        let scaled = rem * BigInt::from(10u32).pow(digits as u32) / den;
        let frac = scaled.to_string();
        for _ in frac.len()..digits {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(t, k)` as the falling-factorial polynomial in `t`; valid for negative `t`.
pub fn binomial(t: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(t) - i;
    }
    num / factorial(k as u64)
}

/// Rational bounds `lo < e < hi` from the partial sum up to `1/k!` and the
/// tail bound `2/(k+1)!`.
pub fn e_interval(k: u64) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut fact = BigInt::one();
    for j in 0..=k {
        if j > 0 {
            fact *= j;
        }
        lo += BigRational::new(BigInt::one(), fact.clone());
    }
    fact *= k + 1;
    let hi = &lo + BigRational::new(BigInt::from(2), fact);
    (lo, hi)
}

/// Smallest `k` whose tail bound `2/(k+1)!` is below `10^-(digits+2)`.
fn e_terms_for(digits: usize) -> u64 {
    let target = BigInt::from(10u32).pow(digits as u32 + 2);
    let mut fact = BigInt::one();
    let mut k = 0u64;
    loop {
        fact *= k + 1;
        // 2/(k+1)! < 10^-(d+2)  <=>  2 * 10^(d+2) < (k+1)!
        if &target * 2 < fact {
            return k;
        }
        k += 1;
    }
}

/// The first `digits` fractional digits of `e`, truncated.
///
/// Digits are only returned once both ends of the enclosing interval
/// truncate to the same string.
pub fn e_digits(digits: usize) -> String {
    let mut k = e_terms_for(digits);
    loop {
        let (lo, hi) = e_interval(k);
        let a = decimal_render(&lo, digits);
        if a == decimal_render(&hi, digits) {
            return a;
        }
        k += 4;
    }
}
