//! Lattice-point counting in dilates of a polytope, and the h*-vector.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::hull::Polytope;

/// Coefficients `h_0* .. h_n*` of the Ehrhart series numerator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HStarVector(pub Vec<u64>);

impl HStarVector {
    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&h| h != 0).unwrap_or(0)
    }

    /// Coefficients up to the degree, as printed in tables.
    pub fn trimmed(&self) -> &[u64] {
        &self.0[..=self.degree().min(self.0.len().saturating_sub(1))]
    }

    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&h| u128::from(h)).sum()
    }
}

/// Enumerator for integer points with `a.x <= rhs` over a box.
struct Region {
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// `tail[r][k]`: smallest value of `sum_{j >= k} a_rj x_j` over the box.
    tail: Vec<Vec<i64>>,
}

impl Region {
    fn new(p: &Polytope, t: i64, shrink: i64) -> Result<Region> {
        let n = p.dim();
        let verts = p.vertices();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in &verts {
            for k in 0..n {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        let scale = |x: i64| {
            x.checked_mul(t)
                .ok_or_else(|| Error::capability("dilated coordinates overflow 64 bits"))
        };
        let lo = lo.into_iter().map(scale).collect::<Result<Vec<_>>>()?;
        let hi = hi.into_iter().map(scale).collect::<Result<Vec<_>>>()?;
        let facets = p.facets();
        let mut rows = Vec::with_capacity(facets.len());
        let mut rhs = Vec::with_capacity(facets.len());
        let mut tail = Vec::with_capacity(facets.len());
        for f in facets {
            let b = scale(f.offset)? - shrink;
            let mut acc = vec![0i64; n + 1];
            for k in (0..n).rev() {
                let a = f.normal[k];
                acc[k] = acc[k + 1] + (a * lo[k]).min(a * hi[k]);
            }
            rows.push(f.normal);
            rhs.push(b);
            tail.push(acc);
        }
        Ok(Region {
            rows,
            rhs,
            lo,
            hi,
            tail,
        })
    }

    fn count(&self) -> u128 {
        let n = self.lo.len();
        if n == 0 {
            return 1;
        }
        let mut partial = vec![0i64; self.rows.len()];
        self.descend(0, &mut partial)
    }

    fn descend(&self, k: usize, partial: &mut [i64]) -> u128 {
        let n = self.lo.len();
        let (mut lo, mut hi) = (self.lo[k], self.hi[k]);
        for (r, row) in self.rows.iter().enumerate() {
            let a = row[k];
            let room = self.rhs[r] - partial[r] - self.tail[r][k + 1];
            if a > 0 {
                hi = hi.min(room.div_euclid(a));
            } else if a < 0 {
                lo = lo.max(-(room.div_euclid(-a)));
            } else if room < 0 {
                return 0;
            }
            if lo > hi {
                return 0;
            }
        }
        if k + 1 == n {
            return (hi - lo + 1) as u128;
        }
        let mut total = 0;
        for x in lo..=hi {
            for (r, row) in self.rows.iter().enumerate() {
                partial[r] += row[k] * x;
            }
            total += self.descend(k + 1, partial);
            for (r, row) in self.rows.iter().enumerate() {
                partial[r] -= row[k] * x;
            }
        }
        total
    }
}

fn check_dim(p: &Polytope, dim_limit: usize) -> Result<()> {
    if p.dim() > dim_limit {
        return Err(Error::capability(format!(
            "lattice-point enumeration is limited to dimension {dim_limit}, polytope has dimension {}",
            p.dim()
        )));
    }
    Ok(())
}

/// `|tP ∩ Z^n|`, by depth-first enumeration of coordinates with interval
/// pruning. Refuses polytopes above `dim_limit`.
pub fn ehrhart_count(p: &Polytope, t: u64, dim_limit: usize) -> Result<BigInt> {
    check_dim(p, dim_limit)?;
    let t = i64::try_from(t).map_err(|_| Error::domain("dilation factor too large"))?;
    Ok(BigInt::from(Region::new(p, t, 0)?.count()))
}

/// Integer points strictly inside `p`.
pub fn interior_lattice_count(p: &Polytope) -> Result<u128> {
    if p.dim() == 0 {
        return Ok(0);
    }
    Ok(Region::new(p, 1, 1)?.count())
}

/// Solves `L(t) = sum_j h_j C(t + n - j, n)` for `t = 0..=n`.
pub fn h_star(p: &Polytope, dim_limit: usize) -> Result<HStarVector> {
    let n = p.dim();
    check_dim(p, dim_limit)?;
    let mut h: Vec<BigInt> = Vec::with_capacity(n + 1);
    for t in 0..=n {
        let mut v = ehrhart_count(p, t as u64, dim_limit)?;
        for (j, hj) in h.iter().enumerate() {
            v -= hj * binomial((t + n - j) as i64, n as u32);
        }
        if v.is_negative() {
            return Err(Error::internal(format!("h*_{t} = {v} is negative")));
        }
        h.push(v);
    }
    let h = h
        .into_iter()
        .map(|v| {
            u64::try_from(v).map_err(|e| Error::internal(format!("h* entry too large: {e}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    if h.first() != Some(&1) {
        return Err(Error::internal(format!("h*_0 = {:?}, expected 1", h.first())));
    }
    Ok(HStarVector(h))
}
