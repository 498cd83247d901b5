//! Invariants of a polytope: volumes, skeleton, faces, width and Ehrhart data.

mod faces;
mod lattice;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::numsys::{SubsetKind, SubsetSpec};
use crate::sequence::subset_polytope;

pub use faces::{diameter, f_vector, skeleton, FVector, DEFAULT_FACE_LIMIT};
pub use lattice::{ehrhart_count, h_star, interior_lattice_count, HStarVector};

/// Default dimension cap for lattice-point enumeration.
pub const DEFAULT_ENUMERATION_DIM_LIMIT: usize = 10;

/// Environment variable overriding [`DEFAULT_ENUMERATION_DIM_LIMIT`].
pub const ENUM_DIM_LIMIT_VAR: &str = "NUMTOPE_ENUM_DIM_LIMIT";

/// `n!` times the Euclidean volume; 1 for a point.
pub fn normalized_volume(p: &Polytope) -> BigInt {
    BigInt::from(p.normalized_volume())
}

pub fn euclidean_volume(p: &Polytope) -> BigRational {
    BigRational::new(normalized_volume(p), factorial(p.dim() as u64))
}

/// Largest lattice width `max a.v - min a.v` over the primitive facet
/// normals `a`.
pub fn facet_width(p: &Polytope) -> Result<i64> {
    let verts = p.vertices();
    let mut best: Option<i128> = None;
    for f in p.facets() {
        let dots = verts.iter().map(|v| {
            v.iter()
                .zip(&f.normal)
                .map(|(&x, &a)| i128::from(x) * i128::from(a))
                .sum::<i128>()
        });
        let (lo, hi) = dots.fold((i128::MAX, i128::MIN), |(lo, hi), d| (lo.min(d), hi.max(d)));
        best = Some(best.map_or(hi - lo, |b| b.max(hi - lo)));
    }
    let w = best.ok_or_else(|| Error::domain("facet width of a point is undefined"))?;
    i64::try_from(w).map_err(|_| Error::capability("facet width overflows 64 bits"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricsConfig {
    pub enumeration_dim_limit: usize,
    /// Compute the h*-vector and interior count when the dimension allows.
    pub ehrhart: bool,
    /// Compute the f-vector.
    pub faces: bool,
    pub face_limit: usize,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            enumeration_dim_limit: DEFAULT_ENUMERATION_DIM_LIMIT,
            ehrhart: false,
            faces: false,
            face_limit: DEFAULT_FACE_LIMIT,
        }
    }
}

impl MetricsConfig {
    /// Defaults, with the enumeration limit taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = MetricsConfig::default();
        if let Ok(v) = std::env::var(ENUM_DIM_LIMIT_VAR) {
            cfg.enumeration_dim_limit = v
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("{ENUM_DIM_LIMIT_VAR}={v:?} is not a count")))?;
        }
        Ok(cfg)
    }
}

/// One row of polytope properties. Cells that are blank for a single point
/// are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsRecord {
    #[serde(rename = "N")]
    pub n: u64,
    pub subset: SubsetKind,
    pub dim: usize,
    pub diameter: Option<usize>,
    #[serde(rename = "Vol", with = "as_string")]
    pub normalized_volume: BigInt,
    #[serde(rename = "vol", with = "as_string")]
    pub euclidean_volume: BigRational,
    pub n_vertices: usize,
    pub n_edges: Option<usize>,
    pub n_facets: Option<usize>,
    pub facet_width: Option<i64>,
    pub n_lattice_points: usize,
    #[serde(default)]
    pub n_interior_points: Option<u64>,
    #[serde(default)]
    pub h_star: Option<HStarVector>,
    #[serde(default)]
    pub f_vector: Option<FVector>,
}

mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

/// Builds the polytope of `subset` at `n` and measures it.
pub fn metrics_record(subset: &SubsetSpec, n: u64, cfg: &MetricsConfig) -> Result<MetricsRecord> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    let p = subset_polytope(subset, n)?;
    metrics_record_of(subset.kind(), n, &p, cfg)
}

pub fn metrics_record_of(
    subset: SubsetKind,
    n: u64,
    p: &Polytope,
    cfg: &MetricsConfig,
) -> Result<MetricsRecord> {
    let dim = p.dim();
    let n_vertices = p.n_vertices();
    let (diam, n_edges, n_facets, width) = if dim == 0 {
        (None, None, None, None)
    } else {
        let edges = skeleton(p);
        (
            Some(diameter(&edges, n_vertices)?),
            Some(edges.len()),
            Some(p.n_facets()),
            Some(facet_width(p)?),
        )
    };
    let (n_interior_points, h) = if cfg.ehrhart && dim <= cfg.enumeration_dim_limit {
        let interior = u64::try_from(interior_lattice_count(p)?)
            .map_err(|_| Error::capability("interior count overflows 64 bits"))?;
        (Some(interior), Some(h_star(p, cfg.enumeration_dim_limit)?))
    } else {
        (None, None)
    };
    let fv = if cfg.faces {
        Some(f_vector(p, cfg.face_limit)?)
    } else {
        None
    };
    Ok(MetricsRecord {
        n,
        subset,
        dim,
        diameter: diam,
        normalized_volume: normalized_volume(p),
        euclidean_volume: euclidean_volume(p),
        n_vertices,
        n_edges,
        n_facets,
        facet_width: width,
        n_lattice_points: p.lattice_points().len(),
        n_interior_points,
        h_star: h,
        f_vector: fv,
    })
}
