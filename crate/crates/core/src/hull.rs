//! Exact incremental convex hull of integer points in any dimension.
//!
//! The engine keeps three structures in step:
//!
//! - the H-representation: one primitive outward inequality `a.x <= b` per
//!   facet, together with the set of input points lying on it;
//! - a simplicial boundary complex, each boundary simplex tagged with the
//!   facet whose hyperplane carries it and linked to its neighbours across
//!   every ridge;
//! - the placing triangulation of the interior, whose cells never change once
//!   created.
//!
//! Inserting a point beyond the hull cones it over every visible boundary
//! simplex. A horizon ridge between a visible facet `F` and a facet `G` that
//! the point is strictly beneath yields the new facet
//! `(b_G - a_G.x) a_F + (a_F.x - b_F) a_G`, the unique member of the pencil
//! through `F ∩ G` containing the point. When the point lies on `G` the new
//! boundary simplex simply joins `G`. Points on the boundary only join the
//! incidence sets, so the vertex set is exactly the extreme points.
//!
//! Simplex volumes never need a determinant: a cell `conv(σ, x)` has
//! normalized volume `(a.x - b) * w(σ)`, where `w(σ)` is the lattice-relative
//! volume of the boundary simplex inside its facet hyperplane, and a new
//! boundary simplex inherits `w = vol(cell) / height` of the cell vertex
//! opposite it.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::numsys::PointCloud;

/// Where a point sits relative to a polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// What [`Polytope::insert_point`] did with a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    /// Coincides with an existing lattice point; nothing recorded.
    Duplicate,
    Interior,
    Boundary,
    /// The point was beyond at least one facet and the hull grew.
    Extended,
}

/// A facet inequality `normal . x <= offset` with its incidences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices (into [`Polytope::lattice_points`]) of the vertices on the facet.
    pub incident_vertices: Vec<usize>,
    /// Indices of every lattice point on the facet, vertices included.
    pub incident_points: Vec<usize>,
}

/// A full-dimensional cell of the triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    /// `|det(v1 - v0, ..., vn - v0)|`.
    pub normalized_volume: u64,
}

#[derive(Debug, Clone)]
struct FacetSlot {
    normal: Vec<i64>,
    offset: i64,
    points: FixedBitSet,
    simplices: Vec<u32>,
    alive: bool,
}

#[derive(Debug, Clone)]
struct BoundarySimplex {
    verts: Vec<u32>,
    /// `nbr[k]` shares the ridge that omits `verts[k]`.
    nbr: Vec<u32>,
    facet: u32,
    /// The cell having this simplex as a face.
    cell: u32,
    /// Normalized volume relative to the lattice of the facet hyperplane.
    rel_volume: u64,
    alive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Link {
    Cell(u32),
    Boundary(u32),
}

#[derive(Debug, Clone)]
struct Cell {
    verts: Vec<u32>,
    /// `links[k]` is across the face that omits `verts[k]`.
    links: Vec<Link>,
    volume: u64,
}

/// A full-dimensional lattice polytope under construction or complete.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    points: Vec<Vec<i64>>,
    labels: Vec<u64>,
    index: HashMap<Vec<i64>, u32>,
    facets: Vec<FacetSlot>,
    free_facets: Vec<u32>,
    boundary: Vec<BoundarySimplex>,
    free_boundary: Vec<u32>,
    cells: Vec<Cell>,
    vertex_flags: FixedBitSet,
}

fn dot(a: &[i64], x: &[i64]) -> i128 {
    a.iter().zip(x).map(|(&p, &q)| i128::from(p) * i128::from(q)).sum()
}

fn slack(f: &FacetSlot, x: &[i64]) -> i128 {
    dot(&f.normal, x) - i128::from(f.offset)
}

fn to_i64(v: i128, what: &str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::capability(format!("{what} overflows 64 bits")))
}

fn bitset_with(len: usize, ones: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(len);
    for i in ones {
        b.insert(i);
    }
    b
}

impl Polytope {
    /// The 0-dimensional polytope consisting of the origin of `R^0`.
    pub fn point(label: u64) -> Self {
        let mut vertex_flags = FixedBitSet::with_capacity(1);
        vertex_flags.insert(0);
        let mut index = HashMap::new();
        index.insert(Vec::new(), 0);
        Polytope {
            dim: 0,
            points: vec![Vec::new()],
            labels: vec![label],
            index,
            facets: Vec::new(),
            free_facets: Vec::new(),
            boundary: Vec::new(),
            free_boundary: Vec::new(),
            cells: vec![Cell {
                verts: vec![0],
                links: Vec::new(),
                volume: 1,
            }],
            vertex_flags,
        }
    }

    /// The simplex spanned by `dim + 1` affinely independent points.
    pub fn from_simplex(points: Vec<Vec<i64>>, labels: Vec<u64>) -> Result<Self> {
        let n = points.len().checked_sub(1).ok_or_else(|| Error::domain("empty simplex"))?;
        if labels.len() != points.len() || points.iter().any(|p| p.len() != n) {
            return Err(Error::domain(format!(
                "a {n}-simplex needs {} points of length {n}",
                n + 1
            )));
        }
        if n == 0 {
            return Ok(Polytope::point(labels[0]));
        }
        let diffs: Vec<Vec<i64>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
            .collect();
        let det = arith::int_det_i64(&diffs)?.abs();
        if det.is_zero() {
            return Err(Error::domain("simplex points are affinely dependent"));
        }
        let det = det
            .to_u64()
            .ok_or_else(|| Error::capability("simplex volume overflows 64 bits"))?;

        let mut facets = Vec::with_capacity(n + 1);
        let mut boundary = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let others: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            let base = &points[others[0]];
            let rows: Vec<Vec<i64>> = others[1..]
                .iter()
                .map(|&j| points[j].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let kernel = arith::primitive_kernel_vector(&rows, n)
                .ok_or_else(|| Error::internal("simplex facet has no unique normal"))?;
            let mut normal = kernel
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::capability("facet normal overflows 64 bits")))
                .collect::<Result<Vec<i64>>>()?;
            let mut offset = dot(&normal, base);
            let mut opposite = dot(&normal, &points[i]);
            if opposite > offset {
                normal.iter_mut().for_each(|x| *x = -*x);
                offset = -offset;
                opposite = -opposite;
            }
            let height = (offset - opposite) as u64;
            if det % height != 0 {
                return Err(Error::internal("simplex volume not divisible by facet height"));
            }
            facets.push(FacetSlot {
                normal,
                offset: to_i64(offset, "facet offset")?,
                points: bitset_with(n + 1, others.iter().copied()),
                simplices: vec![i as u32],
                alive: true,
            });
            boundary.push(BoundarySimplex {
                verts: others.iter().map(|&j| j as u32).collect(),
                nbr: others.iter().map(|&j| j as u32).collect(),
                facet: i as u32,
                cell: 0,
                rel_volume: det / height,
                alive: true,
            });
        }
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut poly = Polytope {
            dim: n,
            points,
            labels,
            index,
            facets,
            free_facets: Vec::new(),
            boundary,
            free_boundary: Vec::new(),
            cells: vec![Cell {
                verts: (0..=n as u32).collect(),
                links: (0..=n as u32).map(Link::Boundary).collect(),
                volume: det,
            }],
            vertex_flags: FixedBitSet::new(),
        };
        poly.refresh_vertices();
        Ok(poly)
    }

    /// Hull of points given in insertion order, each with a label.
    ///
    /// The starting simplex is formed greedily: scanning in order, keep each
    /// point that raises the affine rank. All other points are then inserted
    /// in order. Coincident points are dropped.
    pub fn from_points<'a>(
        dim: usize,
        points: impl IntoIterator<Item = (u64, &'a [i64])>,
    ) -> Result<Self> {
        let mut seen: HashSet<&[i64]> = HashSet::new();
        let mut all: Vec<(u64, &[i64])> = Vec::new();
        for (label, p) in points {
            if p.len() != dim {
                return Err(Error::domain(format!(
                    "point of length {} in a {dim}-dimensional cloud",
                    p.len()
                )));
            }
            if seen.insert(p) {
                all.push((label, p));
            }
        }
        if all.is_empty() {
            return Err(Error::domain("empty point cloud"));
        }
        let mut span = AffineSpan::new(all[0].1);
        let mut chosen = vec![0usize];
        for (i, (_, p)) in all.iter().enumerate().skip(1) {
            if chosen.len() == dim + 1 {
                break;
            }
            if span.try_add(p) {
                chosen.push(i);
            }
        }
        if chosen.len() != dim + 1 {
            return Err(Error::internal(format!(
                "points span only {} of {dim} dimensions",
                chosen.len() - 1
            )));
        }
        let mut poly = Polytope::from_simplex(
            chosen.iter().map(|&i| all[i].1.to_vec()).collect(),
            chosen.iter().map(|&i| all[i].0).collect(),
        )?;
        let mut in_simplex = vec![false; all.len()];
        for &i in &chosen {
            in_simplex[i] = true;
        }
        for (i, (label, p)) in all.iter().enumerate() {
            if !in_simplex[i] {
                poly.insert_point(*label, p)?;
            }
        }
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Every point handed to the polytope, in insertion order.
    pub fn lattice_points(&self) -> &[Vec<i64>] {
        &self.points
    }

    /// The label (usually the represented natural) of each lattice point.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn point_index(&self, x: &[i64]) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn is_vertex(&self, i: usize) -> bool {
        self.vertex_flags.contains(i)
    }

    pub fn vertex_indices(&self) -> Vec<usize> {
        self.vertex_flags.ones().collect()
    }

    pub fn vertices(&self) -> Vec<&[i64]> {
        self.vertex_flags.ones().map(|i| self.points[i].as_slice()).collect()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_flags.count_ones(..)
    }

    pub fn n_facets(&self) -> usize {
        self.facets.iter().filter(|f| f.alive).count()
    }

    /// Facets sorted by `(normal, offset)`.
    pub fn facets(&self) -> Vec<Facet> {
        let mut out: Vec<Facet> = self
            .facets
            .iter()
            .filter(|f| f.alive)
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset,
                incident_vertices: f.points.ones().filter(|&i| self.is_vertex(i)).collect(),
                incident_points: f.points.ones().collect(),
            })
            .collect();
        out.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));
        out
    }

    pub fn triangulation(&self) -> Vec<Simplex> {
        self.cells
            .iter()
            .map(|c| Simplex {
                vertices: c.verts.iter().map(|&v| v as usize).collect(),
                normalized_volume: c.volume,
            })
            .collect()
    }

    /// Sum of the normalized volumes of the triangulation cells.
    pub fn normalized_volume(&self) -> u128 {
        self.cells.iter().map(|c| u128::from(c.volume)).sum()
    }

    /// Number of boundary simplices in the maintained boundary complex.
    pub fn boundary_simplex_count(&self) -> usize {
        self.boundary.iter().filter(|s| s.alive).count()
    }

    pub fn locate(&self, x: &[i64]) -> Result<Location> {
        if x.len() != self.dim {
            return Err(Error::domain(format!(
                "point of length {} against a {}-dimensional polytope",
                x.len(),
                self.dim
            )));
        }
        if self.dim == 0 {
            return Ok(Location::Boundary);
        }
        let mut on = false;
        for f in self.facets.iter().filter(|f| f.alive) {
            match slack(f, x) {
                s if s > 0 => return Ok(Location::Outside),
                0 => on = true,
                _ => {}
            }
        }
        Ok(if on { Location::Boundary } else { Location::Interior })
    }

    /// Adds a point, growing the hull when it lies beyond a facet.
    pub fn insert_point(&mut self, label: u64, x: &[i64]) -> Result<Insertion> {
        if x.len() != self.dim {
            return Err(Error::domain(format!(
                "point of length {} inserted into a {}-dimensional polytope",
                x.len(),
                self.dim
            )));
        }
        if self.index.contains_key(x) {
            return Ok(Insertion::Duplicate);
        }
        let slacks: Vec<i128> = self
            .facets
            .iter()
            .map(|f| if f.alive { slack(f, x) } else { 0 })
            .collect();
        let xi = self.push_point(label, x);
        let visible: Vec<usize> = (0..self.facets.len())
            .filter(|&f| self.facets[f].alive && slacks[f] > 0)
            .collect();
        let coplanar: Vec<usize> = (0..self.facets.len())
            .filter(|&f| self.facets[f].alive && slacks[f] == 0)
            .collect();
        for &f in &coplanar {
            self.facets[f].points.insert(xi as usize);
        }
        if visible.is_empty() {
            return Ok(if coplanar.is_empty() {
                Insertion::Interior
            } else {
                Insertion::Boundary
            });
        }
        self.extend_beyond(xi, &slacks, &visible)?;
        self.refresh_vertices();
        Ok(Insertion::Extended)
    }

    fn push_point(&mut self, label: u64, x: &[i64]) -> u32 {
        let xi = self.points.len();
        self.points.push(x.to_vec());
        self.labels.push(label);
        self.index.insert(x.to_vec(), xi as u32);
        for f in self.facets.iter_mut() {
            f.points.grow(xi + 1);
        }
        self.vertex_flags.grow(xi + 1);
        xi as u32
    }

    fn extend_beyond(&mut self, xi: u32, slacks: &[i128], visible: &[usize]) -> Result<()> {
        let n = self.dim;
        let is_visible = |f: u32| slacks[f as usize] > 0;

        let vis_simplices: Vec<u32> = visible
            .iter()
            .flat_map(|&f| self.facets[f].simplices.iter().copied())
            .collect();

        // Cone x over every visible boundary simplex.
        let mut cell_of: HashMap<u32, u32> = HashMap::with_capacity(vis_simplices.len());
        for &s in &vis_simplices {
            let sigma = &self.boundary[s as usize];
            let height = u64::try_from(slacks[sigma.facet as usize])
                .map_err(|_| Error::capability("facet height overflows 64 bits"))?;
            let volume = height
                .checked_mul(sigma.rel_volume)
                .ok_or_else(|| Error::capability("cell volume overflows 64 bits"))?;
            let c = self.cells.len() as u32;
            let mut verts = sigma.verts.clone();
            verts.push(xi);
            let mut links = vec![Link::Cell(u32::MAX); n + 1];
            links[n] = Link::Cell(sigma.cell);
            let old = sigma.cell as usize;
            let slot = self.cells[old]
                .links
                .iter()
                .position(|&l| l == Link::Boundary(s))
                .ok_or_else(|| Error::internal("cell lost its boundary link"))?;
            self.cells[old].links[slot] = Link::Cell(c);
            self.cells.push(Cell { verts, links, volume });
            cell_of.insert(s, c);
        }

        let mut new_facet_of: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pending: HashMap<Vec<u32>, (u32, usize)> = HashMap::new();
        for &s in &vis_simplices {
            let c = cell_of[&s];
            for k in 0..n {
                let tau = self.boundary[s as usize].nbr[k];
                let tau_facet = self.boundary[tau as usize].facet;
                if is_visible(tau_facet) {
                    self.cells[c as usize].links[k] = Link::Cell(cell_of[&tau]);
                    continue;
                }
                let sigma_facet = self.boundary[s as usize].facet;
                let facet = if slacks[tau_facet as usize] == 0 {
                    tau_facet
                } else {
                    match new_facet_of.get(&(sigma_facet, tau_facet)) {
                        Some(&f) => f,
                        None => {
                            let f = self.pencil_facet(sigma_facet, tau_facet, slacks, xi)?;
                            new_facet_of.insert((sigma_facet, tau_facet), f);
                            f
                        }
                    }
                };
                let opposite = self.boundary[s as usize].verts[k];
                let fs = &self.facets[facet as usize];
                let height = i128::from(fs.offset) - dot(&fs.normal, &self.points[opposite as usize]);
                let cell_volume = self.cells[c as usize].volume;
                if height <= 0 || i128::from(cell_volume) % height != 0 {
                    return Err(Error::internal(format!(
                        "inconsistent facet height {height} for cell volume {cell_volume}"
                    )));
                }
                let rel_volume = (i128::from(cell_volume) / height) as u64;

                let mut verts: Vec<u32> = self.boundary[s as usize].verts.clone();
                verts.remove(k);
                let ridge = verts.clone();
                verts.push(xi);
                let mut nbr = vec![u32::MAX; n];
                nbr[n - 1] = tau;
                let nu = self.alloc_boundary(BoundarySimplex {
                    verts,
                    nbr,
                    facet,
                    cell: c,
                    rel_volume,
                    alive: true,
                });
                let tslot = self.boundary[tau as usize]
                    .nbr
                    .iter()
                    .position(|&t| t == s)
                    .ok_or_else(|| Error::internal("boundary adjacency is not symmetric"))?;
                self.boundary[tau as usize].nbr[tslot] = nu;
                self.cells[c as usize].links[k] = Link::Boundary(nu);
                self.facets[facet as usize].simplices.push(nu);

                for j in 0..n - 1 {
                    let mut key = ridge.clone();
                    key.remove(j);
                    match pending.remove(&key) {
                        Some((other, oslot)) => {
                            self.boundary[nu as usize].nbr[j] = other;
                            self.boundary[other as usize].nbr[oslot] = nu;
                        }
                        None => {
                            pending.insert(key, (nu, j));
                        }
                    }
                }
            }
        }
        if !pending.is_empty() {
            return Err(Error::internal("unmatched ridges after cone step"));
        }

        for &s in &vis_simplices {
            self.boundary[s as usize].alive = false;
            self.free_boundary.push(s);
        }
        for &f in visible {
            let slot = &mut self.facets[f];
            slot.alive = false;
            slot.simplices = Vec::new();
            slot.points = FixedBitSet::new();
            self.free_facets.push(f as u32);
        }
        Ok(())
    }

    /// The facet through the ridge `F ∩ G` that contains the new point.
    fn pencil_facet(&mut self, f: u32, g: u32, slacks: &[i128], xi: u32) -> Result<u32> {
        let df = slacks[f as usize];
        let dg = -slacks[g as usize];
        let (ff, gg) = (&self.facets[f as usize], &self.facets[g as usize]);
        let raw: Vec<i128> = ff
            .normal
            .iter()
            .zip(&gg.normal)
            .map(|(&a, &b)| dg * i128::from(a) + df * i128::from(b))
            .collect();
        let raw_offset = dg * i128::from(ff.offset) + df * i128::from(gg.offset);
        let g_all = raw.iter().fold(0i128, |acc, &v| acc.gcd(&v));
        if g_all == 0 || raw_offset % g_all != 0 {
            return Err(Error::internal("degenerate pencil facet"));
        }
        let normal = raw
            .iter()
            .map(|&v| to_i64(v / g_all, "facet normal"))
            .collect::<Result<Vec<i64>>>()?;
        let offset = to_i64(raw_offset / g_all, "facet offset")?;
        let mut points = ff.points.clone();
        points.intersect_with(&gg.points);
        points.grow(self.points.len());
        points.insert(xi as usize);
        let slot = FacetSlot {
            normal,
            offset,
            points,
            simplices: Vec::new(),
            alive: true,
        };
        Ok(match self.free_facets.pop() {
            Some(id) => {
                self.facets[id as usize] = slot;
                id
            }
            None => {
                self.facets.push(slot);
                (self.facets.len() - 1) as u32
            }
        })
    }

    fn alloc_boundary(&mut self, s: BoundarySimplex) -> u32 {
        match self.free_boundary.pop() {
            Some(id) => {
                self.boundary[id as usize] = s;
                id
            }
            None => {
                self.boundary.push(s);
                (self.boundary.len() - 1) as u32
            }
        }
    }

    /// A point is a vertex iff the facets through it meet only in that point.
    fn refresh_vertices(&mut self) {
        let np = self.points.len();
        let mut flags = FixedBitSet::with_capacity(np);
        if self.dim == 0 {
            flags.insert(0);
            self.vertex_flags = flags;
            return;
        }
        let mut acc: Vec<Option<FixedBitSet>> = vec![None; np];
        for f in self.facets.iter().filter(|f| f.alive) {
            for p in f.points.ones() {
                match &mut acc[p] {
                    Some(a) => a.intersect_with(&f.points),
                    slot @ None => *slot = Some(f.points.clone()),
                }
            }
        }
        for (p, a) in acc.iter().enumerate() {
            if a.as_ref().is_some_and(|a| a.count_ones(..) == 1) {
                flags.insert(p);
            }
        }
        self.vertex_flags = flags;
    }

    /// Pyramid over `self` with apex at the unit point of a new last axis.
    pub fn extend_dimension_with_apex(&self, label: u64) -> Result<Polytope> {
        self.pyramid(label, 1)
    }

    /// Pyramid over `self` with apex `height * e_{n+1}`.
    ///
    /// The base becomes the facet `-x_{n+1} <= 0`, every old facet `a.x <= b`
    /// is tilted to pass through the apex, and the triangulation is the old
    /// one coned to the apex, so the normalized volume is multiplied by
    /// `height`.
    pub fn pyramid(&self, label: u64, height: i64) -> Result<Polytope> {
        if height <= 0 {
            return Err(Error::domain("pyramid height must be positive"));
        }
        let n = self.dim;
        if n == 0 {
            return Polytope::from_simplex(vec![vec![0], vec![height]], vec![self.labels[0], label]);
        }
        let mut points: Vec<Vec<i64>> = self
            .points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.push(0);
                q
            })
            .collect();
        let ai = points.len() as u32;
        let mut apex = vec![0; n];
        apex.push(height);
        points.push(apex);
        let np = points.len();
        let mut labels = self.labels.clone();
        labels.push(label);
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();

        let base_facet = self.facets.len() as u32;
        let base_of = |cell: u32| self.boundary.len() as u32 + cell;

        let mut gains = vec![1u64; self.facets.len()];
        let mut facets = Vec::with_capacity(self.facets.len() + 1);
        for (fi, f) in self.facets.iter().enumerate() {
            if !f.alive {
                facets.push(FacetSlot {
                    normal: Vec::new(),
                    offset: 0,
                    points: FixedBitSet::new(),
                    simplices: Vec::new(),
                    alive: false,
                });
                continue;
            }
            let mut raw: Vec<i128> = f.normal.iter().map(|&a| i128::from(height) * i128::from(a)).collect();
            raw.push(i128::from(f.offset));
            let raw_offset = i128::from(height) * i128::from(f.offset);
            let g = raw.iter().fold(0i128, |acc, &v| acc.gcd(&v));
            gains[fi] = g as u64;
            let mut pts = f.points.clone();
            pts.grow(np);
            pts.insert(ai as usize);
            facets.push(FacetSlot {
                normal: raw
                    .iter()
                    .map(|&v| to_i64(v / g, "facet normal"))
                    .collect::<Result<Vec<_>>>()?,
                offset: to_i64(raw_offset / g, "facet offset")?,
                points: pts,
                simplices: f.simplices.clone(),
                alive: true,
            });
        }
        let mut base_normal = vec![0; n];
        base_normal.push(-1);
        facets.push(FacetSlot {
            normal: base_normal,
            offset: 0,
            points: bitset_with(np, 0..ai as usize),
            simplices: (0..self.cells.len() as u32).map(base_of).collect(),
            alive: true,
        });

        let mut boundary = Vec::with_capacity(self.boundary.len() + self.cells.len());
        for s in &self.boundary {
            if !s.alive {
                boundary.push(s.clone());
                continue;
            }
            let mut verts = s.verts.clone();
            verts.push(ai);
            let mut nbr = s.nbr.clone();
            nbr.push(base_of(s.cell));
            boundary.push(BoundarySimplex {
                verts,
                nbr,
                facet: s.facet,
                cell: s.cell,
                rel_volume: s.rel_volume * gains[s.facet as usize],
                alive: true,
            });
        }
        for (ci, c) in self.cells.iter().enumerate() {
            boundary.push(BoundarySimplex {
                verts: c.verts.clone(),
                nbr: c
                    .links
                    .iter()
                    .map(|l| match *l {
                        Link::Cell(o) => base_of(o),
                        Link::Boundary(s) => s,
                    })
                    .collect(),
                facet: base_facet,
                cell: ci as u32,
                rel_volume: c.volume,
                alive: true,
            });
        }

        let h = height as u64;
        let cells = self
            .cells
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let mut verts = c.verts.clone();
                verts.push(ai);
                let mut links = c.links.clone();
                links.push(Link::Boundary(base_of(ci as u32)));
                Ok(Cell {
                    verts,
                    links,
                    volume: c
                        .volume
                        .checked_mul(h)
                        .ok_or_else(|| Error::capability("cell volume overflows 64 bits"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut poly = Polytope {
            dim: n + 1,
            points,
            labels,
            index,
            facets,
            free_facets: self.free_facets.clone(),
            boundary,
            free_boundary: self.free_boundary.clone(),
            cells,
            vertex_flags: FixedBitSet::new(),
        };
        poly.refresh_vertices();
        Ok(poly)
    }

    /// Exhaustive consistency check of the internal structures.
    ///
    /// Verifies facet inequalities and incidences against every lattice
    /// point, primitivity, boundary-complex adjacency symmetry, that every
    /// boundary simplex lies on its facet, and that relative volumes agree
    /// with a determinant recomputation for each cell. Quadratic or worse;
    /// intended for tests.
    pub fn audit(&self) -> Result<()> {
        let bad = |m: String| Err(Error::internal(m));
        for (fi, f) in self.facets.iter().enumerate().filter(|(_, f)| f.alive) {
            let g = f.normal.iter().fold(0i64, |acc, &v| acc.gcd(&v));
            if g != 1 {
                return bad(format!("facet {fi} normal {:?} is not primitive", f.normal));
            }
            for (pi, p) in self.points.iter().enumerate() {
                let s = slack(f, p);
                if s > 0 {
                    return bad(format!("point {pi} violates facet {fi}"));
                }
                if (s == 0) != f.points.contains(pi) {
                    return bad(format!("facet {fi} incidence wrong for point {pi}"));
                }
            }
            let on: Vec<&[i64]> = f.points.ones().map(|i| self.points[i].as_slice()).collect();
            if arith::affine_rank(&on) != Some(self.dim - 1) {
                return bad(format!("facet {fi} incidences do not span a hyperplane"));
            }
            for &s in &f.simplices {
                let b = &self.boundary[s as usize];
                if !b.alive || b.facet != fi as u32 {
                    return bad(format!("facet {fi} lists stale simplex {s}"));
                }
            }
        }
        for (si, s) in self.boundary.iter().enumerate().filter(|(_, s)| s.alive) {
            let f = &self.facets[s.facet as usize];
            if !f.alive {
                return bad(format!("simplex {si} on dead facet"));
            }
            for &v in &s.verts {
                if slack(f, &self.points[v as usize]) != 0 {
                    return bad(format!("simplex {si} vertex {v} off its facet"));
                }
            }
            for (k, &t) in s.nbr.iter().enumerate() {
                let other = &self.boundary[t as usize];
                if !other.alive || !other.nbr.contains(&(si as u32)) {
                    return bad(format!("simplex {si} neighbour {t} not symmetric"));
                }
                let mut ridge = s.verts.clone();
                ridge.remove(k);
                if !ridge.iter().all(|v| other.verts.contains(v)) {
                    return bad(format!("simplex {si} and {t} do not share a ridge"));
                }
            }
            let cell = &self.cells[s.cell as usize];
            if !s.verts.iter().all(|v| cell.verts.contains(v)) {
                return bad(format!("simplex {si} not a face of its cell"));
            }
            let opp = cell.verts.iter().find(|v| !s.verts.contains(v)).copied();
            if let Some(opp) = opp {
                let h = i128::from(f.offset) - dot(&f.normal, &self.points[opp as usize]);
                if h <= 0 || h * i128::from(s.rel_volume) != i128::from(cell.volume) {
                    return bad(format!("simplex {si} relative volume inconsistent"));
                }
            }
        }
        for (ci, c) in self.cells.iter().enumerate() {
            if self.dim > 0 {
                let v0 = &self.points[c.verts[0] as usize];
                let rows: Vec<Vec<i64>> = c.verts[1..]
                    .iter()
                    .map(|&v| self.points[v as usize].iter().zip(v0).map(|(a, b)| a - b).collect())
                    .collect();
                let det = arith::int_det_i64(&rows)?.abs();
                if det != c.volume.into() {
                    return bad(format!("cell {ci} volume {} but |det| {det}", c.volume));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Location::Interior => "interior",
            Location::Boundary => "boundary",
            Location::Outside => "outside",
        })
    }
}

/// Incremental affine-rank tracker over rationals (row echelon basis).
struct AffineSpan {
    origin: Vec<i64>,
    rows: Vec<(usize, Vec<num_rational::BigRational>)>,
}

impl AffineSpan {
    fn new(origin: &[i64]) -> Self {
        AffineSpan {
            origin: origin.to_vec(),
            rows: Vec::new(),
        }
    }

    fn try_add(&mut self, p: &[i64]) -> bool {
        use num_rational::BigRational;
        let mut v: Vec<BigRational> = p
            .iter()
            .zip(&self.origin)
            .map(|(a, b)| BigRational::from_integer((a - b).into()))
            .collect();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone() / &row[*pivot];
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

/// Convex hull of a point cloud, inserting members in ascending order.
pub fn build_hull(cloud: &PointCloud) -> Result<Polytope> {
    Polytope::from_points(
        cloud.ambient_dim(),
        cloud.members.iter().map(|(m, v)| (*m, v.coords())),
    )
}
