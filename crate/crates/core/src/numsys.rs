//! Primes, exponent vectors and the subsets of the naturals whose members
//! become lattice points.
//!
//! A natural `M` maps to the vector of exponents of the first `n` primes in
//! its factorization. The subset presets decide which naturals contribute a
//! point; the ambient dimension of a subset's cloud is the number of primes
//! dividing at least one selected member.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound for sieving.
pub const DEFAULT_SIEVE_BOUND: u64 = 10_000;

/// Eratosthenes sieve with an explicit bound.
#[derive(Debug, Clone)]
pub struct Sieve {
    bound: u64,
    composite: Vec<bool>,
}

impl Sieve {
    pub fn new(bound: u64) -> Self {
        let len = bound as usize + 1;
        let mut composite = vec![false; len.max(2)];
        composite[0] = true;
        composite[1] = true;
        let mut i = 2;
        while i * i < len {
            if !composite[i] {
                let mut j = i * i;
                while j < len {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        Sieve { bound, composite }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.bound {
            Err(Error::capability(format!(
                "{n} exceeds the sieve bound {}",
                self.bound
            )))
        } else {
            Ok(())
        }
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.check(n)?;
        Ok(!self.composite[n as usize])
    }

    pub fn primes_up_to(&self, n: u64) -> Result<Vec<u64>> {
        self.check(n)?;
        Ok((2..=n).filter(|&k| !self.composite[k as usize]).collect())
    }

    pub fn prime_count(&self, n: u64) -> Result<usize> {
        self.check(n)?;
        Ok((2..=n).filter(|&k| !self.composite[k as usize]).count())
    }
}

fn sieve_for(n: u64) -> Result<Sieve> {
    if n > DEFAULT_SIEVE_BOUND {
        return Err(Error::capability(format!(
            "{n} exceeds the sieve bound {DEFAULT_SIEVE_BOUND}"
        )));
    }
    Ok(Sieve::new(n.max(1)))
}

pub fn primes_up_to(n: u64) -> Result<Vec<u64>> {
    sieve_for(n)?.primes_up_to(n)
}

/// The prime counting function, which is also the dimension of `P(N)`.
pub fn prime_count(n: u64) -> Result<usize> {
    sieve_for(n)?.prime_count(n)
}

/// The first `n` primes, by trial division (independent of the sieve bound).
pub fn first_primes(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    let mut k = 2u64;
    while out.len() < n {
        if out.iter().take_while(|&&p| p * p <= k).all(|&p| !k.is_multiple_of(p)) {
            out.push(k);
        }
        k += 1;
    }
    out
}

/// Factorization as ascending `(prime, exponent)` pairs, by trial division.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Exponents of consecutive primes in the factorization of a natural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Multiplies the exponents back against `basis`.
    pub fn reconstruct(&self, basis: &[u64]) -> u64 {
        self.0
            .iter()
            .zip(basis)
            .map(|(&e, &p)| p.pow(e as u32))
            .product()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// The lattice point of `m` with respect to the first `n` primes.
pub fn exponent_vector(m: u64, n: usize) -> Result<ExponentVector> {
    if m == 0 {
        return Err(Error::domain("0 has no exponent vector"));
    }
    let basis = first_primes(n);
    exponent_vector_in(m, &basis)
}

/// The lattice point of `m` in coordinates indexed by `basis` (ascending primes).
pub fn exponent_vector_in(m: u64, basis: &[u64]) -> Result<ExponentVector> {
    if m == 0 {
        return Err(Error::domain("0 has no exponent vector"));
    }
    let mut coords = vec![0i64; basis.len()];
    for (p, e) in factorize(m) {
        match basis.iter().position(|&q| q == p) {
            Some(i) => coords[i] = i64::from(e),
            None => {
                return Err(Error::domain(format!(
                    "{m} has prime factor {p} outside the basis of {} primes",
                    basis.len()
                )))
            }
        }
    }
    Ok(ExponentVector(coords))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetKind {
    Naturals,
    OneAndPrimes,
    OneEvensOddPrimes,
    TwoAndOdds,
    Squares,
    Cubes,
    ExplicitList,
}

impl SubsetKind {
    pub const PRESETS: [SubsetKind; 6] = [
        SubsetKind::Naturals,
        SubsetKind::OneAndPrimes,
        SubsetKind::OneEvensOddPrimes,
        SubsetKind::TwoAndOdds,
        SubsetKind::Squares,
        SubsetKind::Cubes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubsetKind::Naturals => "naturals",
            SubsetKind::OneAndPrimes => "one-and-primes",
            SubsetKind::OneEvensOddPrimes => "one-evens-odd-primes",
            SubsetKind::TwoAndOdds => "two-and-odds",
            SubsetKind::Squares => "squares",
            SubsetKind::Cubes => "cubes",
            SubsetKind::ExplicitList => "explicit-list",
        }
    }
}

impl fmt::Display for SubsetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubsetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::PRESETS
            .into_iter()
            .chain([SubsetKind::ExplicitList])
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown subset `{s}`")))
    }
}

/// Which naturals contribute lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetSpec {
    kind: SubsetKind,
    list: Vec<u64>,
}

impl SubsetSpec {
    pub fn preset(kind: SubsetKind) -> Self {
        assert!(kind != SubsetKind::ExplicitList, "explicit lists need members");
        SubsetSpec { kind, list: Vec::new() }
    }

    pub fn naturals() -> Self {
        Self::preset(SubsetKind::Naturals)
    }

    /// An explicit ascending list; zero and duplicates are rejected.
    pub fn explicit(mut list: Vec<u64>) -> Result<Self> {
        if list.contains(&0) {
            return Err(Error::domain("explicit subset contains 0"));
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        if list.len() != before {
            return Err(Error::domain("explicit subset contains duplicates"));
        }
        Ok(SubsetSpec {
            kind: SubsetKind::ExplicitList,
            list,
        })
    }

    /// Reads one natural per line; blank lines and `#` comments are skipped.
    pub fn from_list_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        let mut list = Vec::new();
        let mut last = 0u64;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: u64 = line.parse().map_err(|_| {
                Error::domain(format!("{}:{}: not a natural: `{line}`", path.display(), i + 1))
            })?;
            if v <= last && !list.is_empty() {
                return Err(Error::domain(format!(
                    "{}:{}: list must be strictly ascending",
                    path.display(),
                    i + 1
                )));
            }
            last = v;
            list.push(v);
        }
        Self::explicit(list)
    }

    pub fn kind(&self) -> SubsetKind {
        self.kind
    }

    /// Members of an explicit list; empty for presets.
    pub fn list(&self) -> &[u64] {
        &self.list
    }

    /// Stable identifier: the preset name, or the name with its members.
    pub fn key(&self) -> String {
        if self.kind == SubsetKind::ExplicitList {
            let m: Vec<String> = self.list.iter().map(u64::to_string).collect();
            format!("{}:{}", self.kind, m.join(","))
        } else {
            self.kind.to_string()
        }
    }

    /// Selected members in `[1, n]`, ascending.
    pub fn members_up_to(&self, n: u64) -> Result<Vec<u64>> {
        Ok(match self.kind {
            SubsetKind::Naturals => (1..=n).collect(),
            SubsetKind::OneAndPrimes => {
                let sieve = sieve_for(n)?;
                (1..=n)
                    .filter(|&m| m == 1 || sieve.is_prime(m).unwrap_or(false))
                    .collect()
            }
            SubsetKind::OneEvensOddPrimes => {
                let sieve = sieve_for(n)?;
                (1..=n)
                    .filter(|&m| m == 1 || m % 2 == 0 || sieve.is_prime(m).unwrap_or(false))
                    .collect()
            }
            SubsetKind::TwoAndOdds => (1..=n).filter(|&m| m == 2 || m % 2 == 1).collect(),
            SubsetKind::Squares => powers_up_to(n, 2),
            SubsetKind::Cubes => powers_up_to(n, 3),
            SubsetKind::ExplicitList => self.list.iter().copied().filter(|&m| m <= n).collect(),
        })
    }
}

fn powers_up_to(n: u64, e: u32) -> Vec<u64> {
    (1u64..)
        .map(|k| k.checked_pow(e).unwrap_or(u64::MAX))
        .take_while(|&v| v <= n)
        .collect()
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())
    }
}

/// Members of a subset up to some `N`, mapped to lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCloud {
    /// Ascending primes spanning the coordinate axes.
    pub basis: Vec<u64>,
    pub members: Vec<(u64, ExponentVector)>,
}

impl PointCloud {
    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn points(&self) -> impl Iterator<Item = &[i64]> {
        self.members.iter().map(|(_, v)| v.coords())
    }
}

/// Lattice points of the subset members in `[1, n]`.
///
/// The ambient dimension is the number of primes dividing at least one
/// member; for the naturals this is `pi(n)`.
pub fn member_points(subset: &SubsetSpec, n: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    let members = subset.members_up_to(n)?;
    let mut basis: Vec<u64> = members
        .iter()
        .flat_map(|&m| factorize(m).into_iter().map(|(p, _)| p))
        .collect();
    basis.sort_unstable();
    basis.dedup();
    let members = members
        .into_iter()
        .map(|m| Ok((m, exponent_vector_in(m, &basis)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointCloud { basis, members })
}
