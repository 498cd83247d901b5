//! Growing a subset's polytope one member at a time.
//!
//! For the naturals this is the step from `P(N-1)` to `P(N)`: a member whose
//! only new prime is itself (a prime `p`, or `p^h` for power subsets) cones
//! the current polytope to an apex on a fresh axis; any other member is an
//! ordinary insertion. Members that would introduce a new prime in any other
//! way force a batch rebuild over the members so far.

use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::numsys::{exponent_vector_in, factorize, member_points, SubsetSpec};

#[derive(Debug, Clone)]
pub struct PolytopeSequence {
    subset: SubsetSpec,
    basis: Vec<u64>,
    members: Vec<u64>,
    poly: Option<Polytope>,
}

impl PolytopeSequence {
    pub fn new(subset: SubsetSpec) -> Self {
        PolytopeSequence {
            subset,
            basis: Vec::new(),
            members: Vec::new(),
            poly: None,
        }
    }

    pub fn subset(&self) -> &SubsetSpec {
        &self.subset
    }

    /// The primes spanning the current axes, ascending.
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn last_member(&self) -> Option<u64> {
        self.members.last().copied()
    }

    pub fn polytope(&self) -> Option<&Polytope> {
        self.poly.as_ref()
    }

    pub fn into_polytope(self) -> Option<Polytope> {
        self.poly
    }

    /// Adds the next member, which must exceed every member so far.
    pub fn push(&mut self, m: u64) -> Result<()> {
        if self.last_member().is_some_and(|last| m <= last) || m == 0 {
            return Err(Error::domain(format!("member {m} out of order")));
        }
        self.members.push(m);
        let factors = factorize(m);
        let fresh: Vec<(u64, u32)> = factors
            .iter()
            .copied()
            .filter(|(p, _)| !self.basis.contains(p))
            .collect();
        let poly = match self.poly.take() {
            None if m == 1 => Polytope::point(1),
            Some(poly) if fresh.is_empty() => {
                let mut poly = poly;
                let point = exponent_vector_in(m, &self.basis)?;
                poly.insert_point(m, point.coords())?;
                poly
            }
            Some(poly)
                if factors.len() == 1
                    && fresh.len() == 1
                    && self.basis.last().is_none_or(|&q| q < fresh[0].0) =>
            {
                let (p, h) = fresh[0];
                self.basis.push(p);
                poly.pyramid(m, i64::from(h))?
            }
            _ => self.rebuild()?,
        };
        self.poly = Some(poly);
        Ok(())
    }

    fn rebuild(&mut self) -> Result<Polytope> {
        let list = SubsetSpec::explicit(self.members.clone())?;
        let cloud = member_points(&list, *self.members.last().unwrap_or(&1))?;
        self.basis = cloud.basis.clone();
        Polytope::from_points(
            cloud.ambient_dim(),
            cloud.members.iter().map(|(m, v)| (*m, v.coords())),
        )
        .map_err(|e| match e {
            Error::Internal(msg) => Error::domain(format!(
                "subset polytope is not full-dimensional in its prime axes: {msg}"
            )),
            other => other,
        })
    }

    /// Advances through every subset member up to `n`, calling `visit` after
    /// each one with the member and the polytope it completes.
    pub fn advance_to(
        &mut self,
        n: u64,
        mut visit: impl FnMut(u64, &Polytope) -> Result<()>,
    ) -> Result<()> {
        let after = self.last_member().unwrap_or(0);
        for m in self.subset.members_up_to(n)? {
            if m <= after {
                continue;
            }
            self.push(m)?;
            if let Some(p) = &self.poly {
                visit(m, p)?;
            }
        }
        Ok(())
    }
}

/// The polytope of `subset` for `N`: the hull of its members in `[1, N]`.
pub fn subset_polytope(subset: &SubsetSpec, n: u64) -> Result<Polytope> {
    let mut seq = PolytopeSequence::new(subset.clone());
    seq.advance_to(n, |_, _| Ok(()))?;
    seq.into_polytope()
        .ok_or_else(|| Error::domain(format!("subset {subset} has no members up to {n}")))
}

/// `P(N)` for the naturals.
pub fn natural_polytope(n: u64) -> Result<Polytope> {
    subset_polytope(&SubsetSpec::naturals(), n)
}
